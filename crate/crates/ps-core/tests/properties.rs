use proptest::prelude::*;
use ps_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use sym_core::{int, partitions, rat, HbarSeries, Permutation, Rational, Ring};

fn random_function(d: usize, seed: u64) -> PsFn<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = PsFunction::zero(d);
    for x in enumerate_ps(d, PS_BOUND).unwrap() {
        if rng.gen_bool(0.6) {
            f.set(x, rat(rng.gen_range(-5..=5), rng.gen_range(1..=3)));
        }
    }
    f
}

fn random_multiplicative(max_d: usize, g2_max: u32, seed: u64) -> MultiplicativeFunction<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = MultiplicativeFunction::new();
    for d in 1..=max_d {
        for l in partitions(d) {
            for g2 in 0..=g2_max {
                m.set(l.clone(), g2, rat(rng.gen_range(-4..=4), rng.gen_range(1..=2)));
            }
        }
    }
    m
}

#[test]
fn ps_sizes_frozen() {
    let sizes: Vec<usize> = (0..=6).map(|d| enumerate_ps(d, PS_BOUND).unwrap().len()).collect();
    assert_eq!(sizes, vec![1, 1, 3, 13, 73, 501, 4051]);
}

#[test]
fn colength_defect_is_even_and_nonnegative() {
    for d in 0..=4 {
        let all = enumerate_ps(d, PS_BOUND).unwrap();
        for x in &all {
            for y in &all {
                let z = x.product_extended(y);
                let (a, b, c) = (x.colength(), y.colength(), z.colength());
                assert!(c <= a + b);
                assert_eq!((a + b - c) % 2, 0);
            }
        }
    }
}

#[test]
fn colength_is_block_additive() {
    for x in enumerate_ps(4, PS_BOUND).unwrap() {
        let sum: usize = x.block_types().iter().map(|l| 2 * (l.size() - 1) - l.colength()).sum();
        assert_eq!(sum, x.colength());
    }
}

#[test]
fn surfaced_strict_matches_ps_strict() {
    let all = enumerate_ps(3, PS_BOUND).unwrap();
    for x in &all {
        for y in &all {
            let sx = SurfacedPermutation::genus_zero(x.clone());
            let sy = SurfacedPermutation::genus_zero(y.clone());
            let s = sx.product_strict(&sy);
            assert_eq!(s.as_ref().map(|s| s.base.clone()), x.product_strict(y));
            if let Some(s) = s {
                assert_eq!(s.total_genus2(), 0);
                assert_eq!(sx.product_extended(&sy), s);
            }
        }
    }
}

#[test]
fn surfaced_genus_bounds_and_colength() {
    let all = enumerate_surfaced(3, 1, PS_BOUND).unwrap();
    for x in &all {
        for y in &all {
            let z = x.product_extended(y);
            assert_eq!(z.colength(), x.colength() + y.colength());
            assert!(z.total_genus2() >= x.total_genus2() + y.total_genus2());
            assert_eq!((z.total_genus2() - x.total_genus2() - y.total_genus2()) % 2, 0);
        }
    }
}

#[test]
fn evenness_preserved() {
    let all = enumerate_surfaced(3, 2, PS_BOUND).unwrap();
    let even: Vec<_> = all.iter().filter(|x| x.is_even()).collect();
    for x in &even {
        for y in &even {
            assert!(x.product_extended(y).is_even());
        }
    }
}

#[test]
fn multiplicative_reconstruction() {
    let m = random_multiplicative(4, 0, 7);
    let f = m.to_ps(4, PS_BOUND).unwrap();
    assert!(is_multiplicative(&f, PS_BOUND).unwrap());
    for x in enumerate_ps(4, PS_BOUND).unwrap() {
        let prod = x.block_types().iter().fold(int(1), |acc, l| acc * m.get(l, 0));
        assert_eq!(f.get(&x), prod);
    }
}

#[test]
fn leading_order_is_the_strict_product() {
    let k = 8;
    let m = random_multiplicative(3, 2, 11);
    let phi = m.hbar_lift(3, k, PS_BOUND).unwrap();
    let conv = zeta_hbar(3, k).convolve(&phi, ConvolutionKind::Extended).unwrap();
    let lead = conv.leading_order().unwrap();
    let expected = zeta(3).convolve(&phi.leading_order().unwrap(), ConvolutionKind::Strict).unwrap();
    assert_eq!(lead, expected);
}

#[test]
fn hbar_grading_matches_surfaced_convolution() {
    let k = 8;
    let m = random_multiplicative(3, 2, 5);
    let phi = m.hbar_lift(3, k, PS_BOUND).unwrap();
    let conv = zeta_hbar(3, k).convolve(&phi, ConvolutionKind::Extended).unwrap();
    let phi_s = m.to_surfaced(3, 2, PS_BOUND).unwrap();
    let conv_s = zeta_surfaced(3).convolve(&phi_s, ConvolutionKind::Extended).unwrap();
    for s in 0..=2u32 {
        let slice = conv.order_slice(s as i32).unwrap();
        let mut expected: BTreeMap<PartitionedPermutation, Rational> = BTreeMap::new();
        for (x, v) in conv_s.support().filter(|(x, _)| x.total_genus2() == s) {
            *expected.entry(x.base.clone()).or_insert_with(|| int(0)) += v;
        }
        assert_eq!(slice, PsFunction::from_map(3, expected), "slice {s}");
    }
}

#[test]
fn moebius_hbar_to_order_seven() {
    let k = 7;
    let m = moebius_hbar(3, k).unwrap();
    let prod = m.convolve(&zeta_hbar(3, k), ConvolutionKind::Extended).unwrap().truncate(k);
    assert_eq!(prod, delta_hbar(3, k));
    assert!(prod.support().all(|(_, v)| v.order() == k));
}

#[test]
fn moebius_extended_leading_order() {
    let m = moebius_hbar(3, 6).unwrap();
    let mu = moebius(3, PS_BOUND).unwrap();
    assert_eq!(m.leading_order().unwrap(), mu);
}

#[test]
fn unit_law() {
    let f = random_function(3, 3);
    assert_eq!(f.convolve(&delta(3), ConvolutionKind::Strict).unwrap(), f);
    assert_eq!(delta(3).convolve(&f, ConvolutionKind::Strict).unwrap(), f);
    assert_eq!(f.convolve(&delta(3), ConvolutionKind::Extended).unwrap(), f);
}

#[test]
fn zeta_hbar_values() {
    let z = zeta_hbar(3, 5);
    let c = PartitionedPermutation::minimal(Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap());
    assert_eq!(z.get(&c), HbarSeries::monomial(int(1), 2, 5));
    let merged = PartitionedPermutation::new(
        SetPartition::coarsest(3),
        Permutation::from_cycles(3, &[&[1, 2]]).unwrap(),
    )
    .unwrap();
    assert!(z.get(&merged).is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn convolutions_are_associative(a in 0u64..1000, b in 0u64..1000, c in 0u64..1000) {
        let (f, g, h) = (random_function(3, a), random_function(3, b), random_function(3, c));
        for kind in [ConvolutionKind::Strict, ConvolutionKind::Extended] {
            let l = f.convolve(&g, kind).unwrap().convolve(&h, kind).unwrap();
            let r = f.convolve(&g.convolve(&h, kind).unwrap(), kind).unwrap();
            prop_assert_eq!(l, r);
        }
    }

    #[test]
    fn multiplicative_functions_commute(a in 0u64..1000, b in 0u64..1000) {
        let f = random_multiplicative(4, 0, a).to_ps(4, PS_BOUND).unwrap();
        let g = random_multiplicative(4, 0, b).to_ps(4, PS_BOUND).unwrap();
        let fg = f.convolve(&g, ConvolutionKind::Strict).unwrap();
        prop_assert_eq!(&fg, &g.convolve(&f, ConvolutionKind::Strict).unwrap());
        prop_assert!(is_multiplicative(&fg, PS_BOUND).unwrap());
    }

    #[test]
    fn set_partition_json_round_trip(seed in 0u64..500) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let labels: Vec<usize> = (0..6).map(|_| rng.gen_range(0..4)).collect();
        let p = SetPartition::from_labels(&labels);
        let s = serde_json::to_string(&p).unwrap();
        let back: SetPartition = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, p);
    }
}
