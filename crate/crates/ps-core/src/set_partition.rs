//! Set partitions of `[d]` as canonical block-index arrays.

use serde::{Deserialize, Serialize};
use std::fmt;
use sym_core::Permutation;

/// Element `i` lies in block `block[i]`; blocks are numbered by least element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    block: Vec<u8>,
    count: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SetPartitionError {
    #[error("blocks {0:?} do not partition [{1}]")]
    NotAPartition(Vec<Vec<usize>>, usize),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
}

impl SetPartition {
    /// Canonicalizes an arbitrary labelling.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut map: Vec<(usize, u8)> = Vec::new();
        let mut block = Vec::with_capacity(labels.len());
        for &l in labels {
            let id = match map.iter().find(|(k, _)| *k == l) {
                Some(&(_, id)) => id,
                None => {
                    let id = map.len() as u8;
                    map.push((l, id));
                    id
                }
            };
            block.push(id);
        }
        SetPartition { block, count: map.len() as u8 }
    }

    /// From 0-indexed blocks.
    pub fn from_blocks(d: usize, blocks: &[Vec<usize>]) -> Result<Self, SetPartitionError> {
        let mut labels = vec![usize::MAX; d];
        for (b, blk) in blocks.iter().enumerate() {
            if blk.is_empty() {
                return Err(SetPartitionError::NotAPartition(blocks.to_vec(), d));
            }
            for &i in blk {
                if i >= d || labels[i] != usize::MAX {
                    return Err(SetPartitionError::NotAPartition(blocks.to_vec(), d));
                }
                labels[i] = b;
            }
        }
        if labels.contains(&usize::MAX) {
            return Err(SetPartitionError::NotAPartition(blocks.to_vec(), d));
        }
        Ok(Self::from_labels(&labels))
    }

    /// `0_{id}`: all singletons.
    pub fn finest(d: usize) -> Self {
        SetPartition { block: (0..d as u8).collect(), count: d as u8 }
    }

    /// `1_d`: one block (empty for `d = 0`).
    pub fn coarsest(d: usize) -> Self {
        SetPartition { block: vec![0; d], count: (d > 0) as u8 }
    }

    /// `0_σ`: the orbits of `σ`.
    pub fn orbits(sigma: &Permutation) -> Self {
        let d = sigma.degree();
        let mut labels = vec![usize::MAX; d];
        for (c, cyc) in sigma.cycles().iter().enumerate() {
            for &x in cyc {
                labels[x] = c;
            }
        }
        Self::from_labels(&labels)
    }

    pub fn degree(&self) -> usize {
        self.block.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.count as usize
    }

    /// `|𝒜| = d - #𝒜`.
    pub fn colength(&self) -> usize {
        self.degree() - self.num_blocks()
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.block[i] as usize
    }

    pub fn labels(&self) -> &[u8] {
        &self.block
    }

    /// Blocks as sorted 0-indexed lists, ordered by least element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (i, &b) in self.block.iter().enumerate() {
            out[b as usize].push(i);
        }
        out
    }

    pub fn is_finest(&self) -> bool {
        self.num_blocks() == self.degree()
    }

    /// Smallest common coarsening.
    pub fn join(&self, other: &SetPartition) -> Result<SetPartition, SetPartitionError> {
        if self.degree() != other.degree() {
            return Err(SetPartitionError::SizeMismatch(self.degree(), other.degree()));
        }
        Ok(self.join_unchecked(other))
    }

    pub fn join_unchecked(&self, other: &SetPartition) -> SetPartition {
        let d = self.degree();
        let mut parent: Vec<usize> = (0..d).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut union = |firsts: &mut Vec<usize>, labels: &[u8]| {
            firsts.clear();
            firsts.resize(d, usize::MAX);
            for (i, &b) in labels.iter().enumerate() {
                let b = b as usize;
                if firsts[b] == usize::MAX {
                    firsts[b] = i;
                } else {
                    let (ra, rb) = (find(&mut parent, firsts[b]), find(&mut parent, i));
                    if ra != rb {
                        parent[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
        };
        let mut scratch = Vec::new();
        union(&mut scratch, &self.block);
        union(&mut scratch, &other.block);
        let labels: Vec<usize> = (0..d).map(|i| find(&mut parent, i)).collect();
        Self::from_labels(&labels)
    }

    /// Refinement order: every block of `self` lies inside a block of `other`.
    pub fn leq(&self, other: &SetPartition) -> bool {
        if self.degree() != other.degree() {
            return false;
        }
        let mut image = vec![u8::MAX; self.num_blocks()];
        for (i, &b) in self.block.iter().enumerate() {
            let t = other.block[i];
            let slot = &mut image[b as usize];
            if *slot == u8::MAX {
                *slot = t;
            } else if *slot != t {
                return false;
            }
        }
        true
    }

    /// All set partitions of `[d]` (restricted growth strings).
    pub fn all(d: usize) -> Vec<SetPartition> {
        let mut out = Vec::new();
        let mut cur = vec![0usize; d];
        fn rec(i: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<SetPartition>) {
            if i == cur.len() {
                out.push(SetPartition::from_labels(cur));
                return;
            }
            for b in 0..=max {
                cur[i] = b;
                rec(i + 1, if b == max { max + 1 } else { max }, cur, out);
            }
        }
        if d == 0 {
            return vec![SetPartition::coarsest(0)];
        }
        rec(0, 0, &mut cur, &mut out);
        out
    }

    /// All partitions `ℬ ≥ self`.
    pub fn coarsenings(&self) -> Vec<SetPartition> {
        SetPartition::all(self.num_blocks())
            .into_iter()
            .map(|q| {
                let labels: Vec<usize> = self.block.iter().map(|&b| q.block[b as usize] as usize).collect();
                SetPartition::from_labels(&labels)
            })
            .collect()
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, b) in self.blocks().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, x) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

/// JSON form: list of sorted 1-indexed blocks.
impl Serialize for SetPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let blocks: Vec<Vec<usize>> =
            self.blocks().into_iter().map(|b| b.into_iter().map(|x| x + 1).collect()).collect();
        blocks.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SetPartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let blocks = Vec::<Vec<usize>>::deserialize(d)?;
        let n: usize = blocks.iter().map(|b| b.len()).sum();
        if blocks.iter().flatten().any(|&x| x == 0) {
            return Err(serde::de::Error::custom("set partition elements are 1-indexed"));
        }
        let zero: Vec<Vec<usize>> = blocks.iter().map(|b| b.iter().map(|x| x - 1).collect()).collect();
        SetPartition::from_blocks(n, &zero).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn joins() {
        let a = SetPartition::from_blocks(4, &[vec![0, 1], vec![2], vec![3]]).unwrap();
        let b = SetPartition::from_blocks(4, &[vec![0], vec![1, 2], vec![3]]).unwrap();
        let j = a.join(&b).unwrap();
        assert_eq!(j.blocks(), vec![vec![0, 1, 2], vec![3]]);
        assert_eq!(SetPartition::finest(4).join(&a).unwrap(), a);
        assert_eq!(a.join(&SetPartition::coarsest(4)).unwrap(), SetPartition::coarsest(4));
        assert!(a.leq(&j) && b.leq(&j) && !j.leq(&a));
        assert!(a.join(&SetPartition::finest(3)).is_err());
    }

    #[test]
    fn orbits_example() {
        let s = Permutation::from_cycles(6, &[&[1, 2, 6], &[3, 5], &[4]]).unwrap();
        let o = SetPartition::orbits(&s);
        assert_eq!(o.to_string(), "{{1,2,6},{3,5},{4}}");
    }

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..=7).map(|d| SetPartition::all(d).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52, 203, 877]);
        let a = SetPartition::from_blocks(4, &[vec![0, 1], vec![2], vec![3]]).unwrap();
        let c = a.coarsenings();
        assert_eq!(c.len(), 5);
        assert!(c.iter().all(|x| a.leq(x)));
    }
}
