//! Enumeration of monotone transposition sequences and free single factorizations.

use crate::Kind;
use std::collections::BTreeMap;
use sym_core::{Partition, Permutation, Rational};

/// Per `(ν, r)` counts of sequences `τ_1, …, τ_r` with `π_λ τ_1 ⋯ τ_r ∈ C_ν`.
pub type Tally = BTreeMap<(Partition, usize), u64>;

/// Cycle type of a permutation given as raw images.
fn cycle_type(images: &[u8]) -> Partition {
    let d = images.len();
    let mut seen = 0u64;
    let mut parts = Vec::new();
    for s in 0..d {
        if seen >> s & 1 == 1 {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while seen >> x & 1 == 0 {
            seen |= 1 << x;
            x = images[x] as usize;
            len += 1;
        }
        parts.push(len);
    }
    Partition::new(parts)
}

/// Depth-first walk over monotone sequences; `weak` allows repeated maxima.
fn walk(cur: &mut Vec<u8>, depth: usize, min_b: usize, weak: bool, max_r: usize, tally: &mut Tally) {
    *tally.entry((cycle_type(cur), depth)).or_insert(0) += 1;
    if depth == max_r {
        return;
    }
    let d = cur.len();
    for b in min_b..d {
        for a in 0..b {
            cur.swap(a, b);
            walk(cur, depth + 1, if weak { b } else { b + 1 }, weak, max_r, tally);
            cur.swap(a, b);
        }
    }
}

/// Counts for fixed `α = π_λ`, over all `ν` and `r ≤ max_r`.
pub fn monotone_tally(lambda: &Partition, weak: bool, max_r: usize) -> Tally {
    let mut cur = Permutation::canonical(lambda).raw().to_vec();
    let mut tally = Tally::new();
    let max_r = if weak { max_r } else { max_r.min(lambda.size().saturating_sub(1)) };
    walk(&mut cur, 0, 1, weak, max_r, &mut tally);
    tally
}

/// Counts of `ψ` with `|ψ| = r` and `π_λ ∘ ψ ∈ C_ν`.
pub fn free_single_tally(lambda: &Partition) -> Tally {
    let pi = Permutation::canonical(lambda);
    let mut tally = Tally::new();
    for psi in Permutation::all(lambda.size()) {
        let prod = pi.compose_unchecked(&psi);
        *tally.entry((prod.cycle_type(), psi.colength())).or_insert(0) += 1;
    }
    tally
}

pub fn tally(lambda: &Partition, kind: Kind, max_r: usize) -> Tally {
    match kind {
        Kind::Strict => monotone_tally(lambda, false, max_r),
        Kind::Weak => monotone_tally(lambda, true, max_r),
        Kind::FreeSingle => free_single_tally(lambda),
    }
}

fn normalized(lambda: &Partition, nu: &Partition, r: usize, kind: Kind) -> Rational {
    if lambda.size() != nu.size() {
        return Rational::from_integer(0.into());
    }
    let t = tally(lambda, kind, r);
    let c = t.get(&(nu.clone(), r)).copied().unwrap_or(0);
    Rational::from_integer(c.into()) / lambda.z()
}

/// `H^<_r(λ, ν)`.
pub fn strict_monotone_count(lambda: &Partition, nu: &Partition, r: usize) -> Rational {
    normalized(lambda, nu, r, Kind::Strict)
}

/// `H^≤_r(λ, ν)`.
pub fn weakly_monotone_count(lambda: &Partition, nu: &Partition, r: usize) -> Rational {
    normalized(lambda, nu, r, Kind::Weak)
}

/// `H^|_r(λ, ν)`.
pub fn free_single_count(lambda: &Partition, nu: &Partition, r: usize) -> Rational {
    normalized(lambda, nu, r, Kind::FreeSingle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use sym_core::{partitions, rat};

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn small_counts() {
        assert_eq!(strict_monotone_count(&p(&[2]), &p(&[1, 1]), 1), rat(1, 2));
        assert_eq!(weakly_monotone_count(&p(&[2]), &p(&[1, 1]), 1), rat(1, 2));
        assert_eq!(weakly_monotone_count(&p(&[1, 1]), &p(&[1, 1]), 2), rat(1, 2));
        for l in partitions(3) {
            for n in partitions(3) {
                let r0 = if l == n { l.z().recip() } else { rat(0, 1) };
                assert_eq!(strict_monotone_count(&l, &n, 0), r0);
                assert_eq!(weakly_monotone_count(&l, &n, 0), r0);
                assert_eq!(free_single_count(&l, &n, 0), r0);
                for r in 3..6 {
                    assert_eq!(strict_monotone_count(&l, &n, r), rat(0, 1));
                }
            }
        }
    }

    #[test]
    fn free_single_three_cycles() {
        // π = (123); ψ a transposition gives a transposition, never a 3-cycle.
        assert_eq!(free_single_count(&p(&[3]), &p(&[3]), 1), rat(0, 1));
        assert_eq!(free_single_count(&p(&[3]), &p(&[2, 1]), 1), rat(1, 1));
    }

    #[test]
    fn strict_sequence_total_is_factorial() {
        for d in 1..=6 {
            let t = monotone_tally(&p(&vec![1; d]), false, d);
            let total: u64 = t.values().sum();
            assert_eq!(total, (1..=d as u64).product::<u64>());
        }
    }
}
