//! Irreducible characters of S(d) by the Murnaghan–Nakayama rule, and content polynomials.

use crate::hbar::HbarSeries;
use crate::partition::{partitions, Partition};
use crate::rational::{int, Ring};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("character arguments have different sizes: {0} vs {1}")]
pub struct SizeMismatch(pub usize, pub usize);

/// `χ^λ(μ)`.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<i64, SizeMismatch> {
    if lambda.size() != mu.size() {
        return Err(SizeMismatch(lambda.size(), mu.size()));
    }
    let mut memo = HashMap::new();
    Ok(mn(&beta_set(lambda), mu.parts(), &mut memo))
}

/// Beta-numbers `λ_i + (ℓ - i)`, strictly decreasing.
fn beta_set(lambda: &Partition) -> Vec<usize> {
    let l = lambda.len();
    lambda.parts().iter().enumerate().map(|(i, &p)| p + l - 1 - i).collect()
}

fn mn(beta: &[usize], mu: &[usize], memo: &mut HashMap<(Vec<usize>, Vec<usize>), i64>) -> i64 {
    let Some((&k, rest)) = mu.split_first() else {
        return 1;
    };
    let key = (beta.to_vec(), mu.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut total = 0i64;
    for (idx, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let nb = b - k;
        let height = beta.iter().filter(|&&x| x > nb && x < b).count();
        let mut next: Vec<usize> = beta.to_vec();
        next[idx] = nb;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&next, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// Full character table of S(d): `table[i][j] = χ^{λ_i}(μ_j)` over [`partitions`] order.
pub fn character_table(d: usize) -> CharacterTable {
    let parts = partitions(d);
    let mut memo = HashMap::new();
    let values = parts
        .iter()
        .map(|l| {
            let b = beta_set(l);
            parts.iter().map(|m| mn(&b, m.parts(), &mut memo)).collect()
        })
        .collect();
    CharacterTable { partitions: parts, values }
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub partitions: Vec<Partition>,
    pub values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn index(&self, p: &Partition) -> Option<usize> {
        self.partitions.iter().position(|q| q == p)
    }
}

/// `∏_{(i,j)∈λ} (1 + ħ(j - i))`, truncated at `ħ^K`.
pub fn content_polynomial(lambda: &Partition, k: i32) -> HbarSeries {
    let mut acc = HbarSeries::one_to(k);
    for c in lambda.contents() {
        let factor = HbarSeries::from_coeffs(0, vec![int(1), int(c)], k);
        acc = acc.mul(&factor);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn basic_values() {
        for m in partitions(4) {
            assert_eq!(character(&p(&[4]), &m).unwrap(), 1);
        }
        assert_eq!(character(&p(&[1, 1]), &p(&[2])).unwrap(), -1);
        assert_eq!(character(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(character(&p(&[2, 1]), &p(&[3])).unwrap(), -1);
        assert_eq!(character(&p(&[2, 2]), &p(&[2, 2])).unwrap(), 2);
        assert!(character(&p(&[2]), &p(&[1])).is_err());
    }

    #[test]
    fn orthogonality() {
        for d in 1..=6 {
            let t = character_table(d);
            for (j, mu) in t.partitions.iter().enumerate() {
                let s: i64 = t.values.iter().map(|row| row[j] * row[j]).sum();
                assert_eq!(Rational::from_integer(s.into()), mu.z());
            }
            for a in 0..t.partitions.len() {
                for b in 0..t.partitions.len() {
                    let mut s = Rational::zero();
                    for (j, mu) in t.partitions.iter().enumerate() {
                        s += Rational::from_integer((t.values[a][j] * t.values[b][j]).into()) / mu.z();
                    }
                    assert_eq!(s, if a == b { int(1) } else { int(0) });
                }
            }
        }
    }

    #[test]
    fn contents() {
        assert_eq!(content_polynomial(&p(&[1]), 4), HbarSeries::one_to(4));
        let c2 = content_polynomial(&p(&[2]), 4);
        assert_eq!(c2.coeff(1).unwrap(), int(1));
        let c21 = content_polynomial(&p(&[2, 1]), 4);
        assert_eq!(c21.coeff(0).unwrap(), int(1));
        assert_eq!(c21.coeff(1).unwrap(), int(0));
        assert_eq!(c21.coeff(2).unwrap(), int(-1));
        assert_eq!(c21.coeff(3).unwrap(), int(0));
    }
}
