use proptest::prelude::*;
use std::collections::BTreeMap;
use sym_core::*;

fn class_sizes(d: usize) -> BTreeMap<Partition, usize> {
    let mut m = BTreeMap::new();
    for s in Permutation::all(d) {
        *m.entry(s.cycle_type()).or_insert(0) += 1;
    }
    m
}

#[test]
fn class_sizes_match_centralizer_orders() {
    for d in 0..=6 {
        for (mu, count) in class_sizes(d) {
            assert_eq!(factorial(d) / mu.z(), int(count as i64), "{mu:?}");
        }
    }
}

#[test]
fn characters_are_orthonormal_over_the_group() {
    for d in 1..=5 {
        let t = character_table(d);
        let sizes = class_sizes(d);
        for (i, _) in t.partitions.iter().enumerate() {
            for (j, _) in t.partitions.iter().enumerate() {
                let s: i64 = t
                    .partitions
                    .iter()
                    .enumerate()
                    .map(|(c, mu)| sizes[mu] as i64 * t.values[i][c] * t.values[j][c])
                    .sum();
                let expected = if i == j { factorial(d) } else { int(0) };
                assert_eq!(int(s), expected);
            }
        }
    }
}

#[test]
fn content_polynomial_is_the_normalized_class_sum() {
    // Σ_σ ħ^{|σ|} χ^λ(σ) / dim λ
    for d in 1..=5 {
        let t = character_table(d);
        let id = t.index(&Partition::new(vec![1; d])).unwrap();
        for (i, lambda) in t.partitions.iter().enumerate() {
            let mut acc = HbarSeries::zero_to(d as i32);
            for s in Permutation::all(d) {
                let c = t.values[i][t.index(&s.cycle_type()).unwrap()];
                acc.add_term(s.colength() as i32, &rat(c, t.values[i][id]));
            }
            assert_eq!(acc, content_polynomial(lambda, d as i32), "{lambda:?}");
        }
    }
}

#[test]
fn partitions_by_length_cover_all_partitions() {
    for d in 0..=10 {
        let total: usize = (0..=d).map(|n| partitions_with_length(d, n).len()).sum();
        assert_eq!(total, partitions(d).len());
    }
    assert_eq!(partitions(10).len(), 42);
}

proptest! {
    #[test]
    fn falling_factorial_at_negative_argument(k in 1i64..12, r in 0usize..8) {
        let sign = if r % 2 == 0 { int(1) } else { int(-1) };
        prop_assert_eq!(falling(-k, r), sign * factorial(r + k as usize - 1) / factorial(k as usize - 1));
    }

    #[test]
    fn rational_text_round_trip(n in -10_000i64..10_000, d in 1i64..500) {
        let q = rat(n, d);
        prop_assert_eq!(parse_rational(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn hbar_series_inverse(c in prop::collection::vec(-5i64..5, 1..6), k in 2i32..8) {
        let mut coeffs: Vec<Rational> = c.iter().map(|&x| int(x)).collect();
        coeffs[0] = int(c[0].abs() + 1);
        let s = HbarSeries::from_coeffs(0, coeffs, k);
        let inv = s.inverse().unwrap();
        prop_assert_eq!(s.mul(&inv), HbarSeries::one_to(k));
    }
}
