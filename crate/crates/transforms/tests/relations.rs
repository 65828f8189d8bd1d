use ps_core::{delta_hbar, zeta_hbar};
use series_core::CoefficientTable;
use sym_core::{int, Partition};
use transforms::fixtures::{catalan, gue_cumulants, pairings_by_genus};
use transforms::*;

fn hurwitz_cfg(degree: usize, g2_max: u32) -> TransformConfig {
    TransformConfig { degree, hbar: None, g2_max, route: Route::Hurwitz }
}

#[test]
fn gue_moments_through_every_route() {
    let t = gue_cumulants(6);
    let h = transform(&t, Direction::C2m, &hurwitz_cfg(6, 2)).unwrap();
    for route in [Route::Convolution, Route::Schur, Route::Formula] {
        let other = transform(&t, Direction::C2m, &TransformConfig { route, ..hurwitz_cfg(6, 2) }).unwrap();
        assert_eq!(other, h.filtered(|_, k| route != Route::Formula || k.len() <= FORMULA_MAX_POINTS), "{route:?}");
    }
    assert_eq!(h.get(0, &[6]), catalan(3));
    assert_eq!(h.get(2, &[4]), int(1));
    assert_eq!(h.get(2, &[6]), int(10));
}

#[test]
fn gue_genus_one_to_degree_eight() {
    let t = gue_cumulants(8);
    let rel = Relation::forward(&t, 8).unwrap();
    let g = rel.sector(2, 1).unwrap();
    for k in 2..=4 {
        assert_eq!(g.get(2, &[2 * k]), int(pairings_by_genus(k)[1] as i64));
    }
    let s = CoefficientTable::from_series(&rel.specialized11().unwrap(), 2, Some(8)).unwrap();
    assert_eq!(s, g);
}

#[test]
fn catalan_moments_give_gaussian_cumulants() {
    let mut m = CoefficientTable::new(Some(8));
    for k in 1..=4 {
        m.set(0, &[2 * k], catalan(k));
    }
    let c = Relation::dual(&m, 8).unwrap().sector(0, 1).unwrap();
    assert_eq!(c, gue_cumulants(8));
}

#[test]
fn zeta_is_the_image_of_delta() {
    for d in 1..=3 {
        let phi = convolution_forward(&delta_hbar(d, 4)).unwrap();
        assert_eq!(phi, zeta_hbar(d, 4));
    }
}

#[test]
fn degree_one_partition_function_is_fixed() {
    let mut t = CoefficientTable::new(Some(1));
    t.set(0, &[1], int(3));
    t.set(2, &[1], int(5));
    let z = PartitionFunction::from_table(&t, 1, 4).unwrap();
    assert_eq!(master_forward(&z).unwrap(), z);
    assert_eq!(z.get(&Partition::new(vec![])), sym_core::HbarSeries::one_to(4));
}

#[test]
fn insufficient_degree_is_a_truncation_error() {
    let t = gue_cumulants(4);
    let e = transform(&t, Direction::C2m, &hurwitz_cfg(6, 0)).unwrap_err();
    assert!(e.is_truncation());
    let e = Relation::forward(&t, 6).err().unwrap();
    assert!(e.is_truncation());
}

#[test]
fn closed_two_point_matches_trees() {
    let t = gue_cumulants(8);
    let rel = Relation::forward(&t, 8).unwrap();
    let a = CoefficientTable::from_series(&rel.special02().unwrap(), 0, Some(8)).unwrap();
    let b = rel.sector(0, 2).unwrap();
    assert_eq!(a, b);
    // ⟨tr a², tr a²⟩ for GUE is 2
    assert_eq!(b.get(0, &[2, 2]), int(2));
}

#[test]
fn graph_route_covers_genus_zero() {
    let t = gue_cumulants(6);
    let rel = Relation::forward(&t, 6).unwrap();
    for n in 1..=3 {
        let g = CoefficientTable::from_series(&rel.graph_series(0, n).unwrap(), 0, Some(6)).unwrap();
        assert_eq!(g, rel.sector(0, n).unwrap(), "n = {n}");
    }
}

#[test]
fn route_names_parse() {
    for r in [Route::Hurwitz, Route::Convolution, Route::Schur, Route::Formula] {
        assert_eq!(r.name().parse::<Route>().unwrap(), r);
    }
    assert!("nope".parse::<Route>().is_err());
    assert_eq!("m2c".parse::<Direction>().unwrap(), Direction::M2c);
}
