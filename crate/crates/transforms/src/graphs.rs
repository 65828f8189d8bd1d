//! Bicoloured graphs on labelled white vertices, identified with multisets of hyperedges.

use itertools::Itertools;
use sym_core::{factorial, Rational};

/// A hyperedge: the weakly increasing list of white vertices it touches (with multiplicity).
pub type Hyperedge = Vec<usize>;

/// A graph in canonical form: hyperedges sorted. `special` marks one hyperedge by position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BicolouredGraph {
    pub n: usize,
    pub hyperedges: Vec<Hyperedge>,
    pub special: Option<usize>,
}

impl BicolouredGraph {
    pub fn new(n: usize, mut hyperedges: Vec<Hyperedge>) -> Self {
        for h in &mut hyperedges {
            h.sort_unstable();
        }
        hyperedges.sort();
        BicolouredGraph { n, hyperedges, special: None }
    }

    /// `∏_J m_J! ∏_I ∏_i f_I(i)!`.
    pub fn automorphisms(&self) -> u64 {
        let mut aut: u64 = 1;
        let mut edges: Vec<(bool, &Hyperedge)> =
            self.hyperedges.iter().enumerate().map(|(p, h)| (self.special == Some(p), h)).collect();
        edges.sort();
        for (_, group) in &edges.iter().chunk_by(|e| *e) {
            aut *= fact(group.count());
        }
        for h in &self.hyperedges {
            for (_, group) in &h.iter().chunk_by(|i| **i) {
                aut *= fact(group.count());
            }
        }
        aut
    }

    pub fn aut_rational(&self) -> Rational {
        Rational::from_integer(self.automorphisms().into())
    }

    /// `Σ_I (#I - 1)`.
    pub fn excess(&self) -> usize {
        self.hyperedges.iter().map(|h| h.len() - 1).sum()
    }

    /// Number of half-edges at each white vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for h in &self.hyperedges {
            for &i in h {
                d[i] += 1;
            }
        }
        d
    }

    pub fn is_connected(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for h in &self.hyperedges {
            for w in h.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[a] = b;
            }
        }
        let root = find(&mut parent, 0);
        (0..self.n).all(|i| find(&mut parent, i) == root)
    }

    /// First Betti number `#edges - #vertices + 1`.
    pub fn betti(&self) -> isize {
        let edges: usize = self.hyperedges.iter().map(Vec::len).sum();
        edges as isize - (self.n + self.hyperedges.len()) as isize + 1
    }
}

fn fact(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// Multisets of `[n]` with cardinality in `2..=max`.
fn hyperedge_types(n: usize, max: usize) -> Vec<Hyperedge> {
    (2..=max).flat_map(|s| (0..n).combinations_with_replacement(s)).collect()
}

/// Connected graphs on `n` white vertices with `Σ_I (#I - 1) ≤ bound` and `#I ≥ 2`,
/// each isomorphism class once. For `n = 1` the graph without hyperedges is included.
pub fn enumerate_graphs(n: usize, bound: usize) -> Vec<BicolouredGraph> {
    assert!(n >= 1);
    let types = hyperedge_types(n, bound + 1);
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(types: &[Hyperedge], start: usize, budget: usize, current: &mut Vec<Hyperedge>, n: usize, out: &mut Vec<BicolouredGraph>) {
        let g = BicolouredGraph::new(n, current.clone());
        if g.is_connected() {
            out.push(g);
        }
        for t in start..types.len() {
            let cost = types[t].len() - 1;
            if cost <= budget {
                current.push(types[t].clone());
                rec(types, t, budget - cost, current, n, out);
                current.pop();
            }
        }
    }
    rec(&types, 0, bound, &mut current, n, &mut out);
    out
}

/// Trees of `𝒢_{0,n}`: sets of hyperedges that are sets of size `≥ 2` with `Σ (#I - 1) = n - 1`, connected.
pub fn enumerate_trees(n: usize) -> Vec<BicolouredGraph> {
    if n == 1 {
        return vec![BicolouredGraph::new(1, vec![])];
    }
    let subsets: Vec<Hyperedge> = (2..=n).flat_map(|s| (0..n).combinations(s)).collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(subs: &[Hyperedge], start: usize, budget: usize, current: &mut Vec<Hyperedge>, n: usize, out: &mut Vec<BicolouredGraph>) {
        if budget == 0 {
            let g = BicolouredGraph::new(n, current.clone());
            if g.is_connected() {
                out.push(g);
            }
            return;
        }
        for t in start..subs.len() {
            let cost = subs[t].len() - 1;
            if cost <= budget {
                current.push(subs[t].clone());
                rec(subs, t + 1, budget - cost, current, n, out);
                current.pop();
            }
        }
    }
    rec(&subsets, 0, n - 1, &mut current, n, &mut out);
    out
}

/// Trees of `𝒢_{0,n}` with vertex valencies `r_i + 1`.
pub fn trees_with_valencies(n: usize, valencies: &[usize]) -> Vec<BicolouredGraph> {
    enumerate_trees(n).into_iter().filter(|t| t.degrees() == valencies).collect()
}

/// Trees with one special hyperedge: either a designated existing hyperedge, or an added
/// univalent hyperedge `{i}`. Special hyperedges are never subject to the kernel shift.
pub fn enumerate_special_trees(n: usize) -> Vec<BicolouredGraph> {
    let mut out = Vec::new();
    for t in enumerate_trees(n) {
        for p in 0..t.hyperedges.len() {
            let mut s = t.clone();
            s.special = Some(p);
            out.push(s);
        }
        for i in 0..n {
            let mut h = t.hyperedges.clone();
            h.push(vec![i]);
            let mut s = BicolouredGraph::new(n, h);
            s.special = s.hyperedges.iter().position(|e| e == &vec![i]);
            out.push(s);
        }
    }
    out
}

/// Trees with univalent leaves: a tree of `𝒢_{0,n}` with `ℓ_i` leaves at vertex `i`;
/// `#Aut = ∏ ℓ_i!`.
pub fn leaf_tree_automorphisms(leaves: &[usize]) -> Rational {
    leaves.iter().map(|&l| factorial(l)).product()
}
