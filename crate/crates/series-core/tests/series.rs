use proptest::prelude::*;
use series_core::*;
use sym_core::{int, rat, Rational};

fn series_from(c: &[(i64, i64)], prec: usize) -> PowerSeries {
    let mut v = vec![int(1)];
    v.extend(c.iter().map(|&(p, q)| rat(p, q)));
    PowerSeries::new(v, prec)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn lagrange_back_substitution(c in prop::collection::vec((-5i64..=5, 1i64..=4), 12)) {
        let g = series_from(&c, 13);
        let sub = Substitution::new(&g, 1).unwrap();
        // X(w(X)) = X
        let back = sub.x.compose(&sub.inverse).unwrap();
        prop_assert_eq!(back.truncate(13), PowerSeries::var(13));
        // w(X)/X = C(w(X))
        let lhs = g.compose(&sub.inverse).unwrap();
        prop_assert_eq!(lhs.truncate(12), sub.ratio.truncate(12));
    }

    #[test]
    fn table_json_round_trip(entries in prop::collection::vec((0u32..3, prop::collection::vec(1usize..4, 1..4), -9i64..9, 1i64..5), 0..12)) {
        let mut t = CoefficientTable::new(Some(12));
        for (g2, k, p, q) in entries {
            t.set(g2, &k, rat(p, q));
        }
        prop_assert_eq!(CoefficientTable::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn table_series_round_trip(entries in prop::collection::vec((prop::collection::vec(1usize..4, 3), -9i64..9), 0..8)) {
        let mut t = CoefficientTable::new(Some(9));
        for (k, p) in entries {
            t.set(0, &k, int(p));
        }
        let s = t.npoint(0, 3, 9, false).unwrap();
        prop_assert_eq!(CoefficientTable::from_series(&s, 0, Some(9)).unwrap(), t);
    }
}

#[test]
fn genus0_operator_low_orders() {
    let g = series_from(&[(0, 1), (1, 1)], 9);
    let sub = Substitution::new(&g, 1).unwrap();
    let l = Layout::new(1, false);
    let f = MultiSeries::embed(l, Sector::Ascending, 0, &PowerSeries::monomial(int(1), 2, 9));
    let o0 = apply_genus0(&sub, &f, 0, 0, 1).unwrap();
    let expect = MultiSeries::embed(l, Sector::Ascending, 0, &sub.p.mul(&PowerSeries::monomial(int(1), 2, 9)));
    assert_eq!(o0.terms(), expect.terms());
    // O_1 f = P θ (P/C · f)
    let o1 = apply_genus0(&sub, &f, 0, 1, 1).unwrap();
    let inner = sub.p.mul(&sub.y_inv_pow(1)).mul(&PowerSeries::monomial(int(1), 2, 9));
    let expect = sub.p.mul(&inner.theta());
    assert_eq!(o1.terms(), MultiSeries::embed(l, Sector::Ascending, 0, &expect).terms());
    let d1 = apply_genus0(&sub, &f, 0, 1, -1).unwrap();
    assert_eq!(d1.terms(), MultiSeries::embed(l, Sector::Ascending, 0, &expect.neg()).terms());
}

#[test]
fn vertex_operator_reduces_to_genus0() {
    // At the lowest ħ-order the full operator on u^{r+1} f is O_r f.
    let g = series_from(&[(1, 2), (1, 1), (-1, 3)], 8);
    let sub = Substitution::new(&g, 1).unwrap();
    let table = CoefficientTable::new(Some(7));
    let l = Layout::new(1, true);
    let caps = l.degree_caps(7);
    let ctx = VertexContext::new(&sub, &table, 1, l, caps.clone(), 0);
    let l0 = Layout::new(1, false);
    for r in 0..3 {
        let mut f = MultiSeries::zero(l, Sector::Ascending, caps.clone(), 1);
        f.add_term(vec![1, 1, r + 1], int(1));
        let out = ctx.apply(&f, 0).unwrap();
        let plain = MultiSeries::embed(l0, Sector::Ascending, 0, &PowerSeries::monomial(int(1), 1, 8));
        let want = apply_genus0(&sub, &plain, 0, r as usize, 1).unwrap();
        for (m, c) in want.terms() {
            if m[1] <= 7 {
                assert_eq!(out.coefficient(&[0, m[1], 0]).unwrap(), *c, "r={r} exp={}", m[1]);
            }
        }
        let extra: Vec<_> = out.terms().keys().filter(|m| m[0] != 0).collect();
        assert!(extra.is_empty());
    }
}

#[test]
fn truncation_is_reported() {
    let t = CoefficientTable::new(Some(3));
    assert!(matches!(t.npoint(0, 2, 5, false), Err(SeriesError::Truncation(_))));
    let p = PowerSeries::new(vec![int(1); 3], 3);
    assert!(p.coeff(3).is_err());
    let z: Rational = p.coeff(2).unwrap();
    assert_eq!(z, int(1));
}

#[test]
fn dual_substitution_inverts_forward() {
    let g = series_from(&[(0, 1), (1, 1)], 11);
    let fwd = Substitution::new(&g, 1).unwrap();
    // moments y(X) = w(X)/X
    let m = fwd.ratio.clone();
    let dual = Substitution::new(&m, -1).unwrap();
    assert_eq!(dual.x.truncate(11), fwd.inverse.truncate(11));
    assert_eq!(dual.inverse.truncate(11), fwd.x.truncate(11));
    let prod = dual.p.compose(&fwd.x).unwrap().mul(&fwd.p);
    assert_eq!(prod.truncate(10), PowerSeries::one(10));
}
