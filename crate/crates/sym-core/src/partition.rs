//! Integer partitions.

use crate::rational::{factorial, Rational};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a partition: {0:?}")]
pub struct PartitionError(pub Vec<usize>);

impl TryFrom<Vec<usize>> for Partition {
    type Error = PartitionError;
    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        if v.contains(&0) {
            return Err(PartitionError(v));
        }
        Ok(Partition::new(v))
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl Partition {
    /// Sorts the parts into weakly decreasing order; zero parts are dropped.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiplicity `m_j` of the part `j`.
    pub fn multiplicity(&self, j: usize) -> usize {
        self.0.iter().filter(|&&p| p == j).count()
    }

    /// `z(λ) = ∏ λ_i ∏_j m_j!`.
    pub fn z(&self) -> Rational {
        let mut acc = Rational::from_integer(BigInt::from(1));
        for &p in &self.0 {
            acc *= Rational::from_integer(BigInt::from(p));
        }
        let mut i = 0;
        while i < self.0.len() {
            let j = self.0[i..].iter().take_while(|&&p| p == self.0[i]).count();
            acc *= factorial(j);
            i += j;
        }
        acc
    }

    /// Colength `d - ℓ` of any permutation of this cycle type.
    pub fn colength(&self) -> usize {
        self.size() - self.len()
    }

    /// Contents `j - i` of the boxes of the Young diagram (0-indexed rows and columns).
    pub fn contents(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.size());
        for (i, &p) in self.0.iter().enumerate() {
            for j in 0..p {
                out.push(j as i64 - i as i64);
            }
        }
        out
    }

    /// Union of two partitions as multisets of parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Partition::new(v)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `d` in reverse-lexicographic order.
pub fn partitions(d: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `d` with exactly `n` parts, in reverse-lexicographic order.
pub fn partitions_with_length(d: usize, n: usize) -> Vec<Partition> {
    partitions(d).into_iter().filter(|p| p.len() == n).collect()
}
