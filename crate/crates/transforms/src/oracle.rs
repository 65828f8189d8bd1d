//! Brute-force evaluation of `ζ ∗ φ∨` on the one-block elements `(1_d, π_λ)`.
//!
//! Every strict factorization `(1_d, π_λ) = (0_α, α)·(ℬ, β)` is enumerated; the result is
//! a tally of the multisets of block types of `(ℬ, β)`, evaluated on any cumulant table.

use crate::partition_function::set_partitions;
use rayon::prelude::*;
use series_core::CoefficientTable;
use std::collections::BTreeMap;
use sym_core::{int, Partition, Permutation, Rational};

/// Multiset of block types (sorted) with its number of factorizations.
pub type Tally = BTreeMap<Vec<Partition>, u64>;

fn cycles(img: &[u8]) -> Vec<Vec<u8>> {
    let d = img.len();
    let mut seen = vec![false; d];
    let mut out = Vec::new();
    for s in 0..d {
        if !seen[s] {
            let mut c = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                c.push(x as u8);
                x = img[x] as usize;
            }
            out.push(c);
        }
    }
    out
}

fn find(p: &mut [u8], x: u8) -> u8 {
    let mut r = x;
    while p[r as usize] != r {
        r = p[r as usize];
    }
    let mut y = x;
    while p[y as usize] != r {
        let nx = p[y as usize];
        p[y as usize] = r;
        y = nx;
    }
    r
}

fn union(p: &mut [u8], a: u8, b: u8) -> bool {
    let (ra, rb) = (find(p, a), find(p, b));
    if ra != rb {
        p[ra as usize] = rb;
        true
    } else {
        false
    }
}

/// Set partitions of `c` items with exactly `b` blocks, by block count.
fn partitions_by_blocks(c: usize) -> Vec<Vec<Vec<usize>>> {
    let mut by = vec![Vec::new(); c + 1];
    for rgs in set_partitions(c) {
        let nb = rgs.iter().max().map_or(0, |m| m + 1);
        by[nb].push(rgs);
    }
    by
}

/// Tally of the strict factorizations of `(1_d, π_λ)` with a minimal left factor.
pub fn genus0_tally(lambda: &Partition) -> Tally {
    let d = lambda.size();
    let l = lambda.len();
    let pi: Vec<u8> = Permutation::canonical(lambda).raw().to_vec();
    let rgs_tables: Vec<Vec<Vec<Vec<usize>>>> = (0..=d).map(partitions_by_blocks).collect();
    let perms: Vec<Vec<u8>> = Permutation::all(d).map(|p| p.raw().to_vec()).collect();
    perms
        .par_iter()
        .fold(Tally::new, |mut acc, alpha| {
            // β = α^{-1} π
            let mut ainv = vec![0u8; d];
            for (i, &a) in alpha.iter().enumerate() {
                ainv[a as usize] = i as u8;
            }
            let beta: Vec<u8> = (0..d).map(|i| ainv[pi[i] as usize]).collect();
            let ca = cycles(alpha);
            let cb = cycles(&beta);
            let abs_a = d - ca.len();
            let abs_b = d - cb.len();
            let num = d as i64 - l as i64 + 2 + abs_a as i64 - abs_b as i64;
            if num <= 0 || num % 2 != 0 {
                return acc;
            }
            let nb = (num / 2) as usize;
            if nb > cb.len() {
                return acc;
            }
            // components of 0_α ∨ 0_β, merged by at most #cycles(β) - nb block merges
            let mut base: Vec<u8> = (0..d as u8).collect();
            let mut comps = d;
            for c in ca.iter().chain(cb.iter()) {
                for w in c.windows(2) {
                    if union(&mut base, w[0], w[1]) {
                        comps -= 1;
                    }
                }
            }
            if comps > 1 + (cb.len() - nb) {
                return acc;
            }
            for rgs in &rgs_tables[cb.len()][nb] {
                let mut p = base.clone();
                let mut left = comps;
                let mut first = vec![u8::MAX; nb];
                for (ci, &b) in rgs.iter().enumerate() {
                    let rep = cb[ci][0];
                    if first[b] == u8::MAX {
                        first[b] = rep;
                    } else if union(&mut p, first[b], rep) {
                        left -= 1;
                    }
                }
                if left != 1 {
                    continue;
                }
                let mut blocks = vec![Vec::new(); nb];
                for (ci, &b) in rgs.iter().enumerate() {
                    blocks[b].push(cb[ci].len());
                }
                let mut key: Vec<Partition> = blocks.into_iter().map(Partition::new).collect();
                key.sort();
                *acc.entry(key).or_insert(0) += 1;
            }
            acc
        })
        .reduce(Tally::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        })
}

/// `Σ count · ∏_B κ_{0;B}`.
pub fn evaluate_genus0(tally: &Tally, cumulants: &CoefficientTable) -> Rational {
    let mut s = int(0);
    for (key, &c) in tally {
        let mut term = int(c as i64);
        for b in key {
            term *= cumulants.get(0, b.parts());
            if term == int(0) {
                break;
            }
        }
        s += term;
    }
    s
}

/// Genus-`½` coefficient: one block carries `κ_{½;B}`, the others `κ_{0;B}`.
pub fn evaluate_half(tally: &Tally, cumulants: &CoefficientTable) -> Rational {
    let mut s = int(0);
    for (key, &c) in tally {
        // dual numbers a + ħ b with ħ² = 0
        let (mut a, mut b) = (int(c as i64), int(0));
        for blk in key {
            let (k0, k1) = (cumulants.get(0, blk.parts()), cumulants.get(1, blk.parts()));
            b = &a * &k1 + &b * &k0;
            a *= k0;
        }
        s += b;
    }
    s
}

/// Tallies for every `λ` with `ℓ(λ) = n`, `|λ| ≤ degree`.
pub fn tallies(n: usize, degree: usize) -> BTreeMap<Partition, Tally> {
    crate::fixtures::monomials(n, degree)
        .into_iter()
        .map(|k| {
            let l = Partition::new(k);
            let t = genus0_tally(&l);
            (l, t)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{catalan, gue_cumulants};

    #[test]
    fn gue_noncrossing_pairings() {
        let t = gue_cumulants(8);
        for k in 1..=4 {
            let tally = genus0_tally(&Partition::new(vec![2 * k]));
            assert_eq!(evaluate_genus0(&tally, &t), catalan(k));
        }
    }

    #[test]
    fn all_ones_counts_noncrossing_partitions() {
        // with κ ≡ 1 on one-cycle blocks the n = 1 moment counts NC(d)
        let mut t = CoefficientTable::new(Some(5));
        for k in 1..=5 {
            t.set(0, &[k], int(1));
        }
        for d in 1..=5 {
            let tally = genus0_tally(&Partition::new(vec![d]));
            assert_eq!(evaluate_genus0(&tally, &t), catalan(d));
        }
    }
}
