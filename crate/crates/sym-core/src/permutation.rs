//! Permutations of `[d]`, stored 0-indexed; serialized 1-indexed in one-line notation.

use crate::partition::Partition;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u8>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PermutationError {
    #[error("images {0:?} do not form a bijection")]
    NotBijective(Vec<usize>),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("degree {0} exceeds the supported maximum of 255")]
    TooLarge(usize),
}

impl Permutation {
    pub fn identity(d: usize) -> Self {
        Permutation((0..d as u8).collect())
    }

    /// Builds from 0-indexed images.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermutationError> {
        let d = images.len();
        if d > 255 {
            return Err(PermutationError::TooLarge(d));
        }
        let mut seen = vec![false; d];
        for &i in &images {
            if i >= d || seen[i] {
                return Err(PermutationError::NotBijective(images));
            }
            seen[i] = true;
        }
        Ok(Permutation(images.into_iter().map(|i| i as u8).collect()))
    }

    /// Builds from 1-indexed one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Self, PermutationError> {
        if images.contains(&0) {
            return Err(PermutationError::NotBijective(images.to_vec()));
        }
        Self::from_images(images.iter().map(|&i| i - 1).collect())
    }

    /// Builds from 1-indexed cycles; unlisted points are fixed.
    pub fn from_cycles(d: usize, cycles: &[&[usize]]) -> Result<Self, PermutationError> {
        let mut img: Vec<usize> = (0..d).collect();
        let mut seen = vec![false; d];
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                let b = c[(k + 1) % c.len()];
                if a == 0 || a > d || b == 0 || b > d || seen[a - 1] {
                    return Err(PermutationError::NotBijective(c.to_vec()));
                }
                seen[a - 1] = true;
                img[a - 1] = b - 1;
            }
        }
        Self::from_images(img)
    }

    pub fn transposition(d: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(d);
        p.0.swap(a, b);
        p
    }

    /// The canonical permutation with consecutive-block cycles `(1..λ_1)(λ_1+1..)...`.
    pub fn canonical(lambda: &Partition) -> Self {
        let d = lambda.size();
        let mut img = vec![0u8; d];
        let mut start = 0;
        for &p in lambda.parts() {
            for k in 0..p {
                img[start + k] = (start + (k + 1) % p) as u8;
            }
            start += p;
        }
        Permutation(img)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i as usize).collect()
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i as usize + 1).collect()
    }

    pub fn raw(&self) -> &[u8] {
        &self.0
    }

    pub fn from_raw(raw: Vec<u8>) -> Self {
        Permutation(raw)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermutationError> {
        if self.degree() != other.degree() {
            return Err(PermutationError::SizeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose_unchecked(other))
    }

    pub fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Permutation(inv)
    }

    /// Cycles as lists of 0-indexed points, each starting at its least element,
    /// ordered by least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for s in 0..d {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                c.push(x);
                x = self.0[x] as usize;
            }
            out.push(c);
        }
        out
    }

    pub fn num_cycles(&self) -> usize {
        let d = self.degree();
        let mut seen = [false; 256];
        let mut n = 0;
        for s in 0..d {
            if seen[s] {
                continue;
            }
            n += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
            }
        }
        n
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::new(self.cycles().iter().map(|c| c.len()).collect())
    }

    /// `|σ| = d - #cycles`.
    pub fn colength(&self) -> usize {
        self.degree() - self.num_cycles()
    }

    /// Cycle type of the restriction to an invariant subset.
    pub fn cycle_type_on(&self, subset: &[usize]) -> Partition {
        let mut parts = Vec::new();
        let mut seen: Vec<usize> = Vec::new();
        for &s in subset {
            if seen.contains(&s) {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            loop {
                seen.push(x);
                len += 1;
                x = self.0[x] as usize;
                if x == s {
                    break;
                }
            }
            parts.push(len);
        }
        Partition::new(parts)
    }

    /// All permutations of `[d]` in lexicographic order of images.
    pub fn all(d: usize) -> AllPermutations {
        AllPermutations { next: Some((0..d as u8).collect()) }
    }

    /// Streams the conjugacy class `C_λ`.
    pub fn conjugacy_class(lambda: &Partition) -> impl Iterator<Item = Permutation> {
        let target = lambda.clone();
        Self::all(lambda.size()).filter(move |p| p.cycle_type() == target)
    }
}

/// Lexicographic permutation generator; each call to [`Permutation::all`] is independent.
pub struct AllPermutations {
    next: Option<Vec<u8>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;
    fn next(&mut self) -> Option<Permutation> {
        let cur = self.next.take()?;
        let mut v = cur.clone();
        let n = v.len();
        let mut i = n;
        let mut found = false;
        while i > 1 {
            i -= 1;
            if v[i - 1] < v[i] {
                found = true;
                break;
            }
        }
        if found {
            let pivot = i - 1;
            let mut j = n - 1;
            while v[j] <= v[pivot] {
                j -= 1;
            }
            v.swap(pivot, j);
            v[i..].reverse();
            self.next = Some(v);
        }
        Some(Permutation(cur))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "()");
        }
        for c in self.cycles() {
            write!(f, "(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.one_line().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Permutation::from_one_line(&v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions;

    #[test]
    fn canonical_and_types() {
        let p = Permutation::canonical(&Partition::new(vec![2, 1]));
        assert_eq!(p.to_string(), "(1 2)(3)");
        let q = Permutation::canonical(&Partition::new(vec![3]));
        assert_eq!(q.to_string(), "(1 2 3)");
        assert!(Permutation::canonical(&Partition::new(vec![1, 1, 1])).is_identity());
        for d in 0..=8 {
            for l in partitions(d) {
                assert_eq!(Permutation::canonical(&l).cycle_type(), l);
            }
        }
    }

    #[test]
    fn worked_example_cycle_type() {
        let s = Permutation::from_cycles(6, &[&[1, 2, 6], &[3, 5], &[4]]).unwrap();
        assert_eq!(s.cycle_type(), Partition::new(vec![3, 2, 1]));
        assert_eq!(s.colength(), 3);
    }

    #[test]
    fn group_laws() {
        let t = Permutation::transposition(2, 0, 1);
        assert!(t.compose(&t).unwrap().is_identity());
        let c = Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap();
        assert_eq!(c.colength(), 2);
        assert!(c.compose(&c.inverse()).unwrap().is_identity());
        assert!(c.compose(&Permutation::identity(2)).is_err());
        // (12)∘(23) sends 3 to 2, 2 to 1... check composition order.
        let a = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[2, 3]]).unwrap();
        assert_eq!(a.compose(&b).unwrap().apply(2), 0);
    }

    #[test]
    fn class_sizes() {
        for d in 0..=6 {
            let total: usize = partitions(d)
                .iter()
                .map(|l| Permutation::conjugacy_class(l).count())
                .sum();
            assert_eq!(total, (1..=d).product::<usize>());
        }
        assert_eq!(Permutation::conjugacy_class(&Partition::new(vec![3, 1])).count(), 8);
        assert_eq!(Permutation::conjugacy_class(&Partition::new(vec![2, 1])).count(), 3);
        let n331 = Permutation::conjugacy_class(&Partition::new(vec![3, 3, 1])).count();
        assert_eq!(crate::rational::int(5040 / n331 as i64), Partition::new(vec![3, 3, 1]).z());
    }

    #[test]
    fn serde_one_line() {
        let p = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        assert_eq!(p.one_line(), vec![2, 1, 3]);
        assert_eq!(Permutation::from_one_line(&[2, 1, 3]).unwrap(), p);
        assert!(Permutation::from_one_line(&[1, 1]).is_err());
    }

    #[test]
    fn restricted_cycle_type() {
        let s = Permutation::from_cycles(5, &[&[1, 3], &[2], &[4, 5]]).unwrap();
        assert_eq!(s.cycle_type_on(&[0, 1, 2]), Partition::new(vec![2, 1]));
    }
}
