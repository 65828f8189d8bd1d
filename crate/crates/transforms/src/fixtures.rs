//! GUE fixture, the pairing-by-genus oracle and random coefficient tables.

use itertools::Itertools;
use rand::Rng;
use series_core::CoefficientTable;
use sym_core::{int, partitions, Rational};

/// The only nonzero cumulant is `κ_{0;2} = 1`.
pub fn gue_cumulants(degree: usize) -> CoefficientTable {
    let mut t = CoefficientTable::new(Some(degree));
    if degree >= 2 {
        t.set(0, &[2], int(1));
    }
    t
}

/// Pairings of the sides of a `2k`-gon counted by the genus of the glued surface: entry `g`
/// of the result is the number of pairings of genus `g`.
pub fn pairings_by_genus(k: usize) -> Vec<u64> {
    let n = 2 * k;
    let mut counts = vec![0u64; k / 2 + 1];
    let mut pairing = vec![usize::MAX; n];
    fn rec(pairing: &mut Vec<usize>, counts: &mut Vec<u64>, k: usize) {
        let n = pairing.len();
        let Some(a) = pairing.iter().position(|&p| p == usize::MAX) else {
            // vertices are the cycles of γ∘σ with γ the rotation
            let mut seen = vec![false; n];
            let mut v = 0;
            for s in 0..n {
                if !seen[s] {
                    v += 1;
                    let mut x = s;
                    while !seen[x] {
                        seen[x] = true;
                        x = (pairing[x] + 1) % n;
                    }
                }
            }
            // 2 - 2g = V - k + 1
            let g = (k + 1 - v) / 2;
            counts[g] += 1;
            return;
        };
        for b in a + 1..n {
            if pairing[b] == usize::MAX {
                pairing[a] = b;
                pairing[b] = a;
                rec(pairing, counts, k);
                pairing[a] = usize::MAX;
                pairing[b] = usize::MAX;
            }
        }
    }
    if k == 0 {
        return vec![1];
    }
    rec(&mut pairing, &mut counts, k);
    counts
}

/// GUE moments `F_{g;2k}` from the pairing oracle, `n = 1` only, for `2g ≤ g2_max`.
pub fn gue_moments_one_point(degree: usize, g2_max: u32) -> CoefficientTable {
    let mut t = CoefficientTable::new(Some(degree));
    for k in 1..=degree / 2 {
        for (g, c) in pairings_by_genus(k).into_iter().enumerate() {
            if 2 * g as u32 <= g2_max {
                t.set(2 * g as u32, &[2 * k], int(c as i64));
            }
        }
    }
    t
}

/// `n`-th Catalan number.
pub fn catalan(n: usize) -> Rational {
    // C(2n, n)/(n + 1)
    let mut c = int(1);
    for i in 0..n {
        c = c * int(2 * (2 * i as i64 + 1)) / int(i as i64 + 2);
    }
    c
}

/// Random table to `degree`: every `(g2, k)` with `g2 ∈ genera`, `ℓ(k) ≤ max_len` gets a small
/// rational, zero with probability `sparsity`.
pub fn random_table<R: Rng>(rng: &mut R, degree: usize, genera: &[u32], max_len: usize, sparsity: f64) -> CoefficientTable {
    let mut t = CoefficientTable::new(Some(degree));
    for &g2 in genera {
        for d in 1..=degree {
            for lambda in partitions(d).into_iter().filter(|l| l.len() <= max_len) {
                if rng.gen_bool(sparsity) {
                    continue;
                }
                let v = Rational::new(rng.gen_range(-4i64..=4).into(), rng.gen_range(1i64..=3).into());
                t.set(g2, lambda.parts(), v);
            }
        }
    }
    t
}

/// All weakly decreasing `k` with `n` positive parts and `Σ k ≤ degree`.
pub fn monomials(n: usize, degree: usize) -> Vec<Vec<usize>> {
    (n..=degree).flat_map(|d| partitions(d).into_iter().filter(|l| l.len() == n).map(|l| l.parts().to_vec())).collect_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairings_match_harer_zagier() {
        assert_eq!(pairings_by_genus(1), vec![1]);
        assert_eq!(pairings_by_genus(2), vec![2, 1]);
        assert_eq!(pairings_by_genus(3), vec![5, 10]);
        assert_eq!(pairings_by_genus(4), vec![14, 70, 21]);
        let total: u64 = pairings_by_genus(5).iter().sum();
        assert_eq!(total, 945);
    }

    #[test]
    fn catalan_numbers() {
        let c: Vec<Rational> = (0..6).map(catalan).collect();
        assert_eq!(c, [1, 1, 2, 5, 14, 42].map(int));
    }
}
