//! Topological partition functions `Z(λ)` and their link to coefficient tables and to
//! multiplicative functions on partitioned permutations.

use crate::TransformError;
use ps_core::{MultiplicativeFunction, PartitionedPermutation, PsFn, SetPartition, PS_BOUND};
use series_core::CoefficientTable;
use std::collections::BTreeMap;
use sym_core::{partitions, HbarSeries, Partition, Permutation, Ring};

/// `Z(λ)` for all `λ ⊢ d ≤ d_max`, each value truncated at `ħ^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct PartitionFunction {
    pub d_max: usize,
    pub order: i32,
    pub values: BTreeMap<Partition, HbarSeries>,
}

/// `|(1_d, π_λ)| = d + ℓ(λ) - 2`.
pub fn connected_colength(lambda: &Partition) -> i32 {
    (lambda.size() + lambda.len()) as i32 - 2
}

/// Set partitions of `{0, …, l-1}` as restricted growth strings.
pub fn set_partitions(l: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; l];
    fn rec(i: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == rgs.len() {
            out.push(rgs.clone());
            return;
        }
        for b in 0..=max + 1 {
            rgs[i] = b;
            rec(i + 1, max.max(b), rgs, out);
        }
    }
    if l == 0 {
        return vec![vec![]];
    }
    rgs[0] = 0;
    rec(1, 0, &mut rgs, &mut out);
    out
}

/// The sub-partitions cut out by a set partition of the parts of `λ`.
fn block_types(lambda: &Partition, rgs: &[usize]) -> Vec<Partition> {
    let nb = rgs.iter().max().map_or(0, |m| m + 1);
    let mut blocks = vec![Vec::new(); nb];
    for (p, &b) in lambda.parts().iter().zip(rgs) {
        blocks[b].push(*p);
    }
    blocks.into_iter().map(Partition::new).collect()
}

impl PartitionFunction {
    pub fn get(&self, lambda: &Partition) -> HbarSeries {
        if lambda.is_empty() {
            return HbarSeries::one_to(self.order);
        }
        self.values.get(lambda).cloned().unwrap_or_else(|| HbarSeries::zero_to(self.order))
    }

    /// `φ(μ) = Σ_g ħ^{|μ| + ℓ(μ) - 2 + 2g} F_{g;μ}` and `Z(λ) = Σ_{set partitions of the cycles} ∏ φ`.
    pub fn from_table(t: &CoefficientTable, d_max: usize, order: i32) -> Result<Self, TransformError> {
        if let Some(d) = t.degree {
            if d < d_max {
                return Err(TransformError::Missing(format!("table known to degree {d}, degree {d_max} requested")));
            }
        }
        let mut phi: BTreeMap<Partition, HbarSeries> = BTreeMap::new();
        for (g2, k, v) in t.entries() {
            let mu = Partition::new(k.to_vec());
            if mu.size() > d_max {
                continue;
            }
            let e = connected_colength(&mu) + g2 as i32;
            let s = phi.entry(mu).or_insert_with(|| HbarSeries::zero_to(order));
            *s = s.add(&HbarSeries::monomial(v.clone(), e, order));
        }
        let mut values = BTreeMap::new();
        for d in 1..=d_max {
            for lambda in partitions(d) {
                let mut z = HbarSeries::zero_to(order);
                for rgs in set_partitions(lambda.len()) {
                    let mut term = HbarSeries::one_to(order);
                    for b in block_types(&lambda, &rgs) {
                        match phi.get(&b) {
                            Some(s) => term = term.mul(s),
                            None => {
                                term = HbarSeries::zero_to(order);
                                break;
                            }
                        }
                    }
                    z = z.add(&term);
                }
                values.insert(lambda, z);
            }
        }
        Ok(PartitionFunction { d_max, order, values })
    }

    /// Connected parts `φ(λ)`, by subtracting the disconnected set partitions.
    pub fn connected(&self) -> BTreeMap<Partition, HbarSeries> {
        let mut phi: BTreeMap<Partition, HbarSeries> = BTreeMap::new();
        let mut lambdas: Vec<Partition> = self.values.keys().cloned().collect();
        lambdas.sort_by_key(|l| (l.len(), l.size()));
        for lambda in lambdas {
            let mut s = self.get(&lambda);
            for rgs in set_partitions(lambda.len()) {
                if rgs.iter().all(|&b| b == 0) {
                    continue;
                }
                let mut term = HbarSeries::one_to(self.order);
                for b in block_types(&lambda, &rgs) {
                    term = term.mul(&phi[&b]);
                }
                s = s.sub(&term);
            }
            phi.insert(lambda, s);
        }
        phi
    }

    /// Reads `F_{g;λ} = [ħ^{d + ℓ - 2 + 2g}] φ(λ)` for every doubled genus with `2g ≤ g2_max`
    /// that the truncation order determines.
    pub fn to_table(&self, g2_max: u32) -> Result<CoefficientTable, TransformError> {
        let mut t = CoefficientTable::new(Some(self.d_max));
        for (lambda, s) in self.connected() {
            let c = connected_colength(&lambda);
            if s.valuation() < c {
                return Err(TransformError::Input(format!("Z({lambda:?}) has a term below ħ^{c}")));
            }
            for g2 in 0..=g2_max {
                let e = c + g2 as i32;
                if e > self.order {
                    break;
                }
                if let Ok(v) = s.coeff(e) {
                    t.set(g2, lambda.parts(), v);
                }
            }
        }
        Ok(t)
    }

    pub fn truncate(&self, order: i32) -> Self {
        PartitionFunction {
            d_max: self.d_max,
            order,
            values: self.values.iter().map(|(k, v)| (k.clone(), v.truncate(order))).collect(),
        }
    }

    /// `order` large enough to see every genus up to `g2_max` at degree `d_max`.
    pub fn order_for(d_max: usize, g2_max: u32) -> i32 {
        (2 * d_max as i32 - 2).max(0) + g2_max as i32
    }
}

/// `Φ_{Z,ħ}` on `PS(d)`: multiplicative over blocks with the connected parts of `Z`.
pub fn phi_from_z(z: &PartitionFunction, d: usize) -> Result<PsFn<HbarSeries>, TransformError> {
    let mut m = MultiplicativeFunction::<sym_core::Rational>::new();
    let g2_max = z.order.max(0) as u32;
    let t = z.to_table(g2_max)?;
    for (g2, k, v) in t.entries() {
        m.set(Partition::new(k.to_vec()), g2, v.clone());
    }
    Ok(m.hbar_lift(d, z.order, PS_BOUND)?)
}

/// `Z(λ) = Σ_{𝒜 ≥ 0_λ} Φ(𝒜, π_λ)` for `λ ⊢ d`.
pub fn z_from_phi(phi: &PsFn<HbarSeries>, d: usize) -> BTreeMap<Partition, HbarSeries> {
    let order = phi.hbar_order().unwrap_or(sym_core::EXACT);
    let mut out = BTreeMap::new();
    for lambda in partitions(d) {
        let pi = Permutation::canonical(&lambda);
        let mut s = HbarSeries::zero_to(order);
        for a in SetPartition::orbits(&pi).coarsenings() {
            let x = PartitionedPermutation::new_unchecked(a, pi.clone());
            s = s.add(&phi.get(&x));
        }
        out.insert(lambda, s);
    }
    out
}

/// Assembles `Z` from per-degree values.
pub fn from_degrees(parts: Vec<BTreeMap<Partition, HbarSeries>>, order: i32) -> PartitionFunction {
    let d_max = parts.len();
    let values = parts.into_iter().flatten().collect();
    PartitionFunction { d_max, order, values }
}

/// `true` when both functions agree at every `λ` up to `ħ^order`.
pub fn agree(a: &PartitionFunction, b: &PartitionFunction, order: i32) -> bool {
    let keys: std::collections::BTreeSet<&Partition> = a.values.keys().chain(b.values.keys()).collect();
    keys.into_iter().all(|l| a.get(l).agrees_up_to(&b.get(l), order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ps_core::PsElement;
    use sym_core::{int, rat};

    #[test]
    fn set_partition_counts() {
        let counts: Vec<usize> = (0..6).map(|l| set_partitions(l).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52]);
    }

    #[test]
    fn single_block_grading() {
        let mut t = CoefficientTable::new(Some(3));
        t.set(0, &[1], rat(3, 2));
        let z = PartitionFunction::from_table(&t, 3, 6).unwrap();
        let phi = phi_from_z(&z, 1).unwrap();
        let x = PartitionedPermutation::unit(1);
        assert_eq!(phi.get(&x), HbarSeries::monomial(rat(3, 2), 0, 6));
        // Z((1,1)) = φ(1)^2, no connected part
        assert_eq!(z.get(&Partition::new(vec![1, 1])), HbarSeries::monomial(rat(9, 4), 0, 6));
        assert_eq!(z.get(&Partition::empty()), HbarSeries::one_to(6));
        assert_eq!(z.to_table(6).unwrap(), t);
    }

    #[test]
    fn phi_z_round_trip() {
        let mut t = CoefficientTable::new(Some(3));
        t.set(0, &[2], int(1));
        t.set(1, &[1], rat(-1, 3));
        t.set(0, &[1, 1], int(2));
        t.set(2, &[2, 1], int(5));
        t.set(0, &[1], int(1));
        let z = PartitionFunction::from_table(&t, 3, 6).unwrap();
        for d in 1..=3 {
            let phi = phi_from_z(&z, d).unwrap();
            let back = z_from_phi(&phi, d);
            for (l, v) in back {
                assert_eq!(v, z.get(&l), "{l:?}");
            }
        }
        assert_eq!(z.to_table(2).unwrap(), t);
    }
}
