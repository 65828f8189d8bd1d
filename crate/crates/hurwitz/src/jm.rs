//! Group-algebra oracle: Jucys–Murphy elements in `ℤ[S(d)]`.

use crate::{HurwitzError, Kind};
use std::collections::HashMap;
use sym_core::{Partition, Permutation, Rational};

pub const JM_BOUND: usize = 6;

/// Dense integer vectors over `S(d)` indexed by the lexicographic order of [`Permutation::all`].
struct GroupAlgebra {
    perms: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

type Element = Vec<i128>;

impl GroupAlgebra {
    fn new(d: usize) -> Self {
        let perms: Vec<Permutation> = Permutation::all(d).collect();
        let index = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        GroupAlgebra { perms, index }
    }

    fn zero(&self) -> Element {
        vec![0; self.perms.len()]
    }

    fn identity(&self) -> Element {
        let mut e = self.zero();
        e[self.index[&Permutation::identity(self.perms[0].degree())]] = 1;
        e
    }

    /// `x · g` for a sum of group elements `g` (right multiplication).
    fn mul_right_sparse(&self, x: &Element, gs: &[Permutation]) -> Element {
        let mut out = self.zero();
        for (i, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for g in gs {
                out[self.index[&self.perms[i].compose_unchecked(g)]] += c;
            }
        }
        out
    }

    fn class_sum(&self, lambda: &Partition) -> Vec<Permutation> {
        Permutation::conjugacy_class(lambda).collect()
    }
}

/// `J_k = Σ_{i<k} (i k)`, 1-indexed `k ≥ 2`.
fn jm(d: usize, k: usize) -> Vec<Permutation> {
    (0..k - 1).map(|i| Permutation::transposition(d, i, k - 1)).collect()
}

/// `e_r` (strict) or `h_r` (weak) of `J_2, …, J_d` for `r ≤ max_r`.
fn symmetric_functions(ga: &GroupAlgebra, d: usize, weak: bool, max_r: usize) -> Vec<Element> {
    let mut acc: Vec<Element> = (0..=max_r).map(|r| if r == 0 { ga.identity() } else { ga.zero() }).collect();
    for k in 2..=d {
        let j = jm(d, k);
        let mut next = acc.clone();
        for r in 1..=max_r {
            let src = if weak { &next[r - 1] } else { &acc[r - 1] };
            let add = ga.mul_right_sparse(src, &j);
            for (a, b) in next[r].iter_mut().zip(add) {
                *a += b;
            }
        }
        acc = next;
    }
    acc
}

/// `(1/d!) [id] C_λ C_ν X_r` with `X_r = e_r` or `h_r` of the Jucys–Murphy elements.
pub fn jucys_murphy_oracle(lambda: &Partition, nu: &Partition, kind: Kind, r: usize) -> Result<Rational, HurwitzError> {
    let d = lambda.size();
    if d > JM_BOUND {
        return Err(HurwitzError::BoundExceeded { d, bound: JM_BOUND });
    }
    if nu.size() != d {
        return Err(HurwitzError::SizeMismatch(d, nu.size()));
    }
    let weak = match kind {
        Kind::Strict => false,
        Kind::Weak => true,
        Kind::FreeSingle => return Err(HurwitzError::Unsupported("the Jucys-Murphy oracle covers strict and weak only")),
    };
    let ga = GroupAlgebra::new(d);
    let x = symmetric_functions(&ga, d, weak, r).pop().unwrap();
    let cl = ga.class_sum(lambda);
    let cn = ga.class_sum(nu);
    let mut total: i128 = 0;
    for s in &cl {
        for t in &cn {
            let g = s.compose_unchecked(t).inverse();
            total += x[ga.index[&g]];
        }
    }
    let fact: i128 = (1..=d as i128).product();
    Ok(Rational::new(total.into(), fact.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::{strict_monotone_count, weakly_monotone_count};
    use sym_core::partitions;

    #[test]
    fn matches_enumeration() {
        for d in 1..=4 {
            for l in partitions(d) {
                for n in partitions(d) {
                    for r in 0..=3 {
                        assert_eq!(
                            jucys_murphy_oracle(&l, &n, Kind::Strict, r).unwrap(),
                            strict_monotone_count(&l, &n, r)
                        );
                    }
                }
            }
        }
        for l in partitions(3) {
            for n in partitions(3) {
                for r in 0..=4 {
                    assert_eq!(jucys_murphy_oracle(&l, &n, Kind::Weak, r).unwrap(), weakly_monotone_count(&l, &n, r));
                }
            }
        }
    }

    #[test]
    fn elementary_vanishes_past_degree() {
        let l = Partition::new(vec![2, 1]);
        for n in partitions(3) {
            assert_eq!(jucys_murphy_oracle(&l, &n, Kind::Strict, 3).unwrap(), Rational::from_integer(0.into()));
        }
        assert!(jucys_murphy_oracle(&Partition::new(vec![7]), &Partition::new(vec![7]), Kind::Strict, 1).is_err());
    }
}
