//! Partitioned permutations `(𝒜, α)` and surfaced permutations `(𝒜, α, g)`.

use crate::set_partition::SetPartition;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use sym_core::{Partition, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ElementError {
    #[error("cycles of {perm} are not contained in the blocks of {partition}")]
    NotRefined { partition: String, perm: String },
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("genus map has {got} entries but the partition has {blocks} blocks")]
    GenusShape { got: usize, blocks: usize },
    #[error("degree {0} exceeds the enumeration bound {1}")]
    BoundExceeded(usize, usize),
}

/// Common interface for the two kinds of elements the convolutions run over.
pub trait PsElement: Clone + Eq + Ord + std::hash::Hash + Send + Sync + fmt::Debug {
    fn degree(&self) -> usize;
    fn unit(d: usize) -> Self;
    fn product_extended(&self, other: &Self) -> Self;
    fn product_strict(&self, other: &Self) -> Option<Self>;
    /// Colength including doubled genus, as an integer.
    fn total_colength(&self) -> usize;
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartitionedPermutation {
    pub partition: SetPartition,
    pub perm: Permutation,
}

impl PartitionedPermutation {
    pub fn new(partition: SetPartition, perm: Permutation) -> Result<Self, ElementError> {
        if partition.degree() != perm.degree() {
            return Err(ElementError::SizeMismatch(partition.degree(), perm.degree()));
        }
        if !SetPartition::orbits(&perm).leq(&partition) {
            return Err(ElementError::NotRefined { partition: partition.to_string(), perm: perm.to_string() });
        }
        Ok(PartitionedPermutation { partition, perm })
    }

    pub fn new_unchecked(partition: SetPartition, perm: Permutation) -> Self {
        PartitionedPermutation { partition, perm }
    }

    /// `(0_α, α)`.
    pub fn minimal(perm: Permutation) -> Self {
        PartitionedPermutation { partition: SetPartition::orbits(&perm), perm }
    }

    /// `(1_d, α)`.
    pub fn connected(perm: Permutation) -> Self {
        let d = perm.degree();
        PartitionedPermutation { partition: SetPartition::coarsest(d), perm }
    }

    pub fn degree(&self) -> usize {
        self.perm.degree()
    }

    /// `|(𝒜, α)| = 2|𝒜| - |α|`.
    pub fn colength(&self) -> usize {
        2 * self.partition.colength() - self.perm.colength()
    }

    pub fn is_minimal(&self) -> bool {
        self.partition.num_blocks() == self.perm.num_cycles()
    }

    /// Cycle types of `α` restricted to each block, in block order.
    pub fn block_types(&self) -> Vec<Partition> {
        let mut parts: Vec<Vec<usize>> = vec![Vec::new(); self.partition.num_blocks()];
        for c in self.perm.cycles() {
            parts[self.partition.block_of(c[0])].push(c.len());
        }
        parts.into_iter().map(Partition::new).collect()
    }

    /// `(𝒜 ∨ ℬ, α∘β)`.
    pub fn product_extended(&self, other: &Self) -> Self {
        PartitionedPermutation {
            partition: self.partition.join_unchecked(&other.partition),
            perm: self.perm.compose_unchecked(&other.perm),
        }
    }

    /// Defined only when colengths add.
    pub fn product_strict(&self, other: &Self) -> Option<Self> {
        let p = self.product_extended(other);
        (p.colength() == self.colength() + other.colength()).then_some(p)
    }
}

impl PsElement for PartitionedPermutation {
    fn degree(&self) -> usize {
        self.degree()
    }
    fn unit(d: usize) -> Self {
        PartitionedPermutation { partition: SetPartition::finest(d), perm: Permutation::identity(d) }
    }
    fn product_extended(&self, other: &Self) -> Self {
        PartitionedPermutation::product_extended(self, other)
    }
    fn product_strict(&self, other: &Self) -> Option<Self> {
        PartitionedPermutation::product_strict(self, other)
    }
    fn total_colength(&self) -> usize {
        self.colength()
    }
}

impl fmt::Debug for PartitionedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.partition, self.perm)
    }
}

/// Every `(𝒜, α)` with `0_α ≤ 𝒜`, grouped by permutation in lexicographic order.
pub fn enumerate_ps(d: usize, bound: usize) -> Result<Vec<PartitionedPermutation>, ElementError> {
    if d > bound {
        return Err(ElementError::BoundExceeded(d, bound));
    }
    let mut out = Vec::new();
    for perm in Permutation::all(d) {
        for partition in SetPartition::orbits(&perm).coarsenings() {
            out.push(PartitionedPermutation { partition, perm: perm.clone() });
        }
    }
    Ok(out)
}

/// Default bound on `d` for whole-table enumerations.
pub const PS_BOUND: usize = 6;

/// Surfaced permutation; `genus2[b]` is twice the genus of block `b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfacedPermutation {
    pub base: PartitionedPermutation,
    pub genus2: Vec<u32>,
}

impl SurfacedPermutation {
    pub fn new(base: PartitionedPermutation, genus2: Vec<u32>) -> Result<Self, ElementError> {
        if genus2.len() != base.partition.num_blocks() {
            return Err(ElementError::GenusShape { got: genus2.len(), blocks: base.partition.num_blocks() });
        }
        Ok(SurfacedPermutation { base, genus2 })
    }

    pub fn genus_zero(base: PartitionedPermutation) -> Self {
        let n = base.partition.num_blocks();
        SurfacedPermutation { base, genus2: vec![0; n] }
    }

    pub fn degree(&self) -> usize {
        self.base.degree()
    }

    /// `|(𝒜, α)| + Σ 2g(A)`.
    pub fn colength(&self) -> usize {
        self.base.colength() + self.genus2.iter().sum::<u32>() as usize
    }

    /// All genera integral.
    pub fn is_even(&self) -> bool {
        self.genus2.iter().all(|g| g % 2 == 0)
    }

    pub fn total_genus2(&self) -> u32 {
        self.genus2.iter().sum()
    }

    /// Per-block colength contributions of `(𝒜, α)` restricted to the blocks of `outer`.
    fn restricted_colengths(base: &PartitionedPermutation, genus2: &[u32], outer: &SetPartition) -> Vec<i64> {
        let mut out = vec![0i64; outer.num_blocks()];
        let mut seen = vec![false; base.partition.num_blocks()];
        for i in 0..base.degree() {
            let c = outer.block_of(i);
            out[c] += 1;
            let b = base.partition.block_of(i);
            if !seen[b] {
                seen[b] = true;
                out[c] += genus2[b] as i64 - 2;
            }
        }
        for cyc in base.perm.cycles() {
            out[outer.block_of(cyc[0])] += 1;
        }
        // 2(|C| - #blocks) - (|C| - #cycles) = |C| - 2#blocks + #cycles
        out
    }

    /// `⊙` with the genus of each block of the join as in the block-additivity rule.
    pub fn product_extended(&self, other: &Self) -> Self {
        let base = self.base.product_extended(&other.base);
        let outer = &base.partition;
        let a = Self::restricted_colengths(&self.base, &self.genus2, outer);
        let b = Self::restricted_colengths(&other.base, &other.genus2, outer);
        let zeros = vec![0u32; outer.num_blocks()];
        let c = Self::restricted_colengths(&base, &zeros, outer);
        let genus2 = (0..outer.num_blocks())
            .map(|k| {
                let v = a[k] + b[k] - c[k];
                debug_assert!(v >= 0);
                v as u32
            })
            .collect();
        SurfacedPermutation { base, genus2 }
    }

    /// Product keeping only factorizations that create no genus.
    pub fn product_strict(&self, other: &Self) -> Option<Self> {
        let base = self.base.product_strict(&other.base)?;
        let mut genus2 = vec![0u32; base.partition.num_blocks()];
        for (b, &g) in self.genus2.iter().enumerate() {
            let first = self.base.partition.blocks()[b][0];
            genus2[base.partition.block_of(first)] += g;
        }
        for (b, &g) in other.genus2.iter().enumerate() {
            let first = other.base.partition.blocks()[b][0];
            genus2[base.partition.block_of(first)] += g;
        }
        Some(SurfacedPermutation { base, genus2 })
    }

    /// Cycle types and doubled genera per block.
    pub fn block_data(&self) -> Vec<(Partition, u32)> {
        self.base.block_types().into_iter().zip(self.genus2.iter().copied()).collect()
    }
}

impl PsElement for SurfacedPermutation {
    fn degree(&self) -> usize {
        self.degree()
    }
    fn unit(d: usize) -> Self {
        SurfacedPermutation::genus_zero(PartitionedPermutation::unit(d))
    }
    fn product_extended(&self, other: &Self) -> Self {
        SurfacedPermutation::product_extended(self, other)
    }
    fn product_strict(&self, other: &Self) -> Option<Self> {
        SurfacedPermutation::product_strict(self, other)
    }
    fn total_colength(&self) -> usize {
        self.colength()
    }
}

impl fmt::Debug for SurfacedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {:?})", self.base.partition, self.base.perm, self.genus2)
    }
}

#[derive(Serialize, Deserialize)]
struct SurfacedJson {
    partition: SetPartition,
    perm: Permutation,
    genus2: BTreeMap<String, u32>,
}

impl Serialize for SurfacedPermutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let genus2 = self
            .genus2
            .iter()
            .enumerate()
            .filter(|(_, &g)| g > 0)
            .map(|(b, &g)| (b.to_string(), g))
            .collect();
        SurfacedJson { partition: self.base.partition.clone(), perm: self.base.perm.clone(), genus2 }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SurfacedPermutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = SurfacedJson::deserialize(d)?;
        let base = PartitionedPermutation::new(j.partition, j.perm).map_err(D::Error::custom)?;
        let mut genus2 = vec![0u32; base.partition.num_blocks()];
        for (k, g) in j.genus2 {
            let b: usize = k.parse().map_err(D::Error::custom)?;
            if b >= genus2.len() {
                return Err(D::Error::custom(format!("block index {b} out of range")));
            }
            genus2[b] = g;
        }
        Ok(SurfacedPermutation { base, genus2 })
    }
}

/// Every surfaced permutation of `[d]` with total doubled genus at most `g2_max`.
pub fn enumerate_surfaced(d: usize, g2_max: u32, bound: usize) -> Result<Vec<SurfacedPermutation>, ElementError> {
    let mut out = Vec::new();
    for base in enumerate_ps(d, bound)? {
        let n = base.partition.num_blocks();
        let mut g = vec![0u32; n];
        fn rec(i: usize, left: u32, g: &mut Vec<u32>, base: &PartitionedPermutation, out: &mut Vec<SurfacedPermutation>) {
            if i == g.len() {
                out.push(SurfacedPermutation { base: base.clone(), genus2: g.clone() });
                return;
            }
            for v in 0..=left {
                g[i] = v;
                rec(i + 1, left - v, g, base, out);
            }
            g[i] = 0;
        }
        rec(0, g2_max, &mut g, &base, &mut out);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(d: usize, blocks: &[Vec<usize>], cycles: &[&[usize]]) -> PartitionedPermutation {
        PartitionedPermutation::new(
            SetPartition::from_blocks(d, blocks).unwrap(),
            Permutation::from_cycles(d, cycles).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn sizes() {
        let sizes: Vec<usize> = (0..=5).map(|d| enumerate_ps(d, 6).unwrap().len()).collect();
        assert_eq!(sizes, vec![1, 1, 3, 13, 73, 501]);
        assert!(enumerate_ps(7, 6).is_err());
    }

    #[test]
    fn strict_products_d2() {
        let full_swap = pp(2, &[vec![0, 1]], &[&[1, 2]]);
        let full_id = pp(2, &[vec![0, 1]], &[]);
        let sq = full_swap.product_strict(&full_swap).unwrap();
        assert_eq!(sq, full_id);
        assert!(full_id.product_strict(&full_swap).is_none());
        assert_eq!(full_id.product_extended(&full_swap), full_swap);
        let unit = PartitionedPermutation::unit(2);
        assert_eq!(unit.product_strict(&full_swap), Some(full_swap.clone()));
    }

    #[test]
    fn rejects_unrefined() {
        let r = PartitionedPermutation::new(
            SetPartition::finest(2),
            Permutation::from_cycles(2, &[&[1, 2]]).unwrap(),
        );
        assert!(r.is_err());
    }

    #[test]
    fn surfaced_genus_creation() {
        let swap = SurfacedPermutation::genus_zero(pp(2, &[vec![0, 1]], &[&[1, 2]]));
        let sq = swap.product_extended(&swap);
        assert_eq!(sq.base, pp(2, &[vec![0, 1]], &[]));
        assert_eq!(sq.genus2, vec![0]);
        let full_id = SurfacedPermutation::genus_zero(pp(2, &[vec![0, 1]], &[]));
        let created = full_id.product_extended(&swap);
        assert_eq!(created.base, pp(2, &[vec![0, 1]], &[&[1, 2]]));
        assert_eq!(created.genus2, vec![2]);
        assert!(full_id.product_strict(&swap).is_none());
    }

    #[test]
    fn surfaced_half_genus_adds() {
        let a = SurfacedPermutation::new(pp(3, &[vec![0, 1], vec![2]], &[&[1, 2]]), vec![1, 0]).unwrap();
        let b = SurfacedPermutation::genus_zero(PartitionedPermutation::minimal(
            Permutation::from_cycles(3, &[&[2, 3]]).unwrap(),
        ));
        let p = a.product_strict(&b).unwrap();
        assert_eq!(p.genus2, vec![1]);
        assert_eq!(a.product_extended(&b), p);
        assert_eq!(p.colength(), a.colength() + b.colength());
    }

    #[test]
    fn surfaced_json_shape() {
        let a = SurfacedPermutation::new(pp(3, &[vec![0, 1], vec![2]], &[&[1, 2]]), vec![0, 1]).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"partition":[[1,2],[3]],"perm":[2,1,3],"genus2":{"1":1}}"#);
        let back: SurfacedPermutation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }
}
