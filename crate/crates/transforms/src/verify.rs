//! Verification suites: every check is an exact comparison, reported case by case.

use crate::fixtures::{catalan, gue_cumulants, monomials, pairings_by_genus, random_table};
use crate::oracle::{evaluate_genus0, tallies};
use crate::relations::one_point;
use crate::{
    master_forward, master_inverse, moebius_route, schur_oracle, transform, convolution_route, Direction,
    PartitionFunction, Relation, Route, TransformConfig, TransformError,
};
use hurwitz::{verify_orthogonality, HurwitzTable, Kind};
use ps_core::{
    delta, delta_hbar, moebius, moebius_hbar, zeta, zeta_hbar, zeta_surfaced, ConvolutionKind, MultiplicativeFunction,
    PartitionedPermutation, PsElement, PsFn, SurfacedPermutation, PS_BOUND,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use series_core::CoefficientTable;
use sym_core::{int, partitions, Partition, Permutation, Rational, Ring};

/// Suite names accepted by [`run_suite`].
pub const SUITES: &[&str] = &[
    "orthogonality",
    "harnad-orlov",
    "equivalence",
    "genus0-trees",
    "all-genus",
    "specialized",
    "infinitesimal",
    "gue",
    "dual-roundtrip",
    "moebius",
];

#[derive(Clone, Debug, Serialize)]
pub struct Case {
    pub input: Value,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub cases: Vec<Case>,
}

impl Report {
    fn new(suite: &str) -> Self {
        Report { suite: suite.to_string(), cases: Vec::new() }
    }

    pub fn pass(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| !c.pass).count()
    }

    fn check(&mut self, input: Value, expected: impl ToString, got: impl ToString) {
        let (expected, got) = (expected.to_string(), got.to_string());
        let pass = expected == got;
        self.cases.push(Case { input, expected, got, pass });
    }

    fn check_bool(&mut self, input: Value, what: &str, ok: bool) {
        self.cases.push(Case {
            input,
            expected: what.to_string(),
            got: if ok { what.to_string() } else { format!("not {what}") },
            pass: ok,
        });
    }

    /// One case per coefficient of `keys` in sector `g2`.
    fn compare(&mut self, label: Value, expected: &CoefficientTable, got: &CoefficientTable, g2: u32, keys: &[Vec<usize>]) {
        for k in keys {
            let mut input = label.clone();
            input["g2"] = json!(g2);
            input["k"] = json!(k);
            self.check(input, expected.get(g2, k), got.get(g2, k));
        }
    }
}

/// Suite parameters; `None` picks the suite's default.
#[derive(Clone, Debug, Default)]
pub struct VerifyParams {
    pub d: Option<usize>,
    pub hbar: Option<i32>,
    pub n: Option<usize>,
    pub degree: Option<usize>,
    pub samples: Option<usize>,
    pub seed: u64,
}

impl VerifyParams {
    fn rng(&self, sample: usize) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(1_000_003).wrapping_add(sample as u64))
    }
}

pub fn run_suite(name: &str, p: &VerifyParams) -> Result<Report, TransformError> {
    match name {
        "orthogonality" => orthogonality(p.d.unwrap_or(5), p.hbar.unwrap_or(8).max(0) as usize),
        "harnad-orlov" => harnad_orlov(p.d.unwrap_or(4), p.hbar.unwrap_or(3).max(0) as usize),
        "equivalence" => equivalence(p),
        "genus0-trees" => genus0_trees(p),
        "all-genus" => all_genus(p),
        "specialized" => specialized(p),
        "infinitesimal" => infinitesimal(p),
        "gue" => gue(p.degree.unwrap_or(10)),
        "dual-roundtrip" => dual_roundtrip(p),
        "moebius" => moebius_suite(p.d.unwrap_or(4), p.hbar.unwrap_or(6)),
        _ => Err(TransformError::Input(format!("unknown suite {name:?}; expected one of {}", SUITES.join(", ")))),
    }
}

fn keys_up_to(n_max: usize, degree: usize) -> Vec<Vec<usize>> {
    (1..=n_max).flat_map(|n| monomials(n, degree)).collect()
}

/// `Σ_ρ z(λ)H^<(λ,ρ) z(ρ)H^≤(ρ,ν) = δ_{λν}` both ways, for every `d ≤ d_max`.
pub fn orthogonality(d_max: usize, hbar: usize) -> Result<Report, TransformError> {
    let mut r = Report::new("orthogonality");
    for d in 1..=d_max {
        let o = verify_orthogonality(d, hbar)?;
        for res in o.residuals {
            r.cases.push(Case {
                input: json!({"d": d, "hbar": hbar, "identity": res.identity, "lambda": res.lambda, "nu": res.nu}),
                expected: format!("0 + O(h^{})", hbar + 1),
                got: res.residual,
                pass: res.pass,
            });
        }
    }
    Ok(r)
}

/// Strictly monotone and free single Hurwitz numbers coincide.
pub fn harnad_orlov(d_max: usize, r_max: usize) -> Result<Report, TransformError> {
    let mut r = Report::new("harnad-orlov");
    for d in 1..=d_max {
        let strict = HurwitzTable::cached(d, Kind::Strict, d)?;
        let free = HurwitzTable::cached(d, Kind::FreeSingle, d)?;
        for l in partitions(d) {
            for n in partitions(d) {
                for k in 0..=r_max {
                    r.check(json!({"lambda": l, "nu": n, "r": k}), strict.get(&l, &n, k), free.get(&l, &n, k));
                }
            }
        }
    }
    Ok(r)
}

fn first_difference(a: &PartitionFunction, b: &PartitionFunction) -> String {
    if a == b {
        return "equal".into();
    }
    for (l, v) in &a.values {
        let w = b.get(l);
        if *v != w {
            return format!("differs at {l:?}: {v} vs {w}");
        }
    }
    "differs".into()
}

/// The Hurwitz, convolution, Möbius, weak-Hurwitz and Schur routes agree on random partition functions.
pub fn equivalence(p: &VerifyParams) -> Result<Report, TransformError> {
    let d = p.d.unwrap_or(4);
    let k = p.hbar.unwrap_or(6);
    let mut r = Report::new("equivalence");
    for s in 0..p.samples.unwrap_or(20) {
        let t = random_table(&mut p.rng(s), d, &[0, 1, 2, 3, 4], d, 0.3);
        let zv = PartitionFunction::from_table(&t, d, k)?;
        let z = master_forward(&zv)?;
        let input = |route: &str| json!({"sample": s, "d": d, "hbar": k, "route": route});
        r.check(input("convolution"), "equal", first_difference(&z, &convolution_route(&zv)?));
        r.check(input("schur"), "equal", first_difference(&z, &schur_oracle(&zv, false)?));
        r.check(input("weak-hurwitz inverse"), "equal", first_difference(&zv, &master_inverse(&z)?));
        r.check(input("moebius"), "equal", first_difference(&zv, &moebius_route(&z)?));
        r.check(input("schur inverse"), "equal", first_difference(&zv, &schur_oracle(&z, true)?));
    }
    Ok(r)
}

fn show(f: &series_core::PowerSeries) -> String {
    let c: Vec<String> = f.coeffs().iter().map(|c| c.to_string()).collect();
    format!("[{}] + O(w^{})", c.join(", "), f.prec())
}

fn genus0_sample(p: &VerifyParams, s: usize, degree: usize, n_max: usize) -> CoefficientTable {
    random_table(&mut p.rng(s), degree, &[0], n_max, 0.3)
}

/// `C(X M(X)) = M(X)` for the genus-zero one-point functions.
fn check_one_point(r: &mut Report, input: Value, cumulants: &CoefficientTable, moments: &CoefficientTable, degree: usize) -> Result<(), TransformError> {
    let c = one_point(cumulants, 0, degree);
    let m = one_point(moments, 0, degree);
    let arg = series_core::PowerSeries::var(degree + 1).mul(&m).truncate(degree + 1);
    let lhs = c.compose(&arg)?;
    r.check(input, show(&m), show(&lhs));
    Ok(())
}

/// `(M_2 + X_1X_2/(X_1-X_2)^2)` at `X = w/C(w)` equals `P(w_1)P(w_2)(C_2 + w_1w_2/(w_1-w_2)^2)`.
fn check_two_point(r: &mut Report, input: Value, cumulants: &CoefficientTable, moments: &CoefficientTable, degree: usize) -> Result<(), TransformError> {
    let rel = Relation::forward(cumulants, degree)?;
    let lhs = moments.shifted_npoint(0, 2, degree)?;
    let back = rel.sub.y_inv_pow(1);
    let lhs = lhs.substitute(0, &back)?.substitute(1, &back)?;
    let rhs = cumulants
        .shifted_npoint(0, 2, degree)?
        .mul_univariate(0, &rel.sub.p)?
        .mul_univariate(1, &rel.sub.p)?;
    let diff = lhs.sub(&rhs.with_caps(lhs.caps()))?;
    r.check(input, "0", if diff.is_zero() { "0".to_string() } else { format!("{} nonzero terms", diff.len()) });
    Ok(())
}

/// Tree and coefficient formulas against the brute-force `ζ ∗ φ∨` oracle.
pub fn genus0_trees(p: &VerifyParams) -> Result<Report, TransformError> {
    let n_max = p.n.unwrap_or(4);
    let degree = p.degree.unwrap_or(8);
    let mut r = Report::new("genus0-trees");
    let oracle: Vec<_> = (1..=n_max).map(|n| tallies(n, degree)).collect();
    for s in 0..p.samples.unwrap_or(10) {
        let t = genus0_sample(p, s, degree, n_max);
        let rel = Relation::forward(&t, degree)?;
        let mut brute = CoefficientTable::new(Some(degree));
        for per_n in &oracle {
            for (l, tally) in per_n {
                brute.set(0, l.parts(), evaluate_genus0(tally, &t));
            }
        }
        for n in 1..=n_max {
            let keys = monomials(n, degree);
            let tree = CoefficientTable::from_series(&rel.genus0_series(n)?, 0, Some(degree))?;
            let coef = rel.genus0_coefficients(n)?;
            r.compare(json!({"sample": s, "n": n, "route": "tree"}), &brute, &tree, 0, &keys);
            r.compare(json!({"sample": s, "n": n, "route": "coefficient"}), &brute, &coef, 0, &keys);
        }
        check_one_point(&mut r, json!({"sample": s, "identity": "C(X M(X)) = M(X)"}), &t, &brute, degree)?;
        if n_max >= 2 {
            check_two_point(&mut r, json!({"sample": s, "identity": "two-point relation"}), &t, &brute, degree)?;
        }
    }
    Ok(r)
}

/// Graph sums against the Hurwitz route, the closed `(0,1)`/`(0,2)` forms and one extra graph layer.
pub fn all_genus(p: &VerifyParams) -> Result<Report, TransformError> {
    let d = p.d.unwrap_or(5);
    let mut r = Report::new("all-genus");
    let sectors = [(0u32, 2usize), (2, 1), (1, 1), (1, 2), (2, 2), (0, 3)];
    for s in 0..p.samples.unwrap_or(3) {
        let t = random_table(&mut p.rng(s), d, &[0, 1, 2], 3, 0.3);
        let cfg = TransformConfig { degree: d, hbar: None, g2_max: 2, route: Route::Hurwitz };
        let h = transform(&t, Direction::C2m, &cfg)?;
        let rel = Relation::forward(&t, d)?;
        for &(g2, n) in &sectors {
            let keys = monomials(n, d);
            let g = CoefficientTable::from_series(&rel.graph_series(g2, n)?, g2, Some(d))?;
            r.compare(json!({"sample": s, "g2": g2, "n": n, "route": "graph"}), &h, &g, g2, &keys);
            let more = CoefficientTable::from_series(&rel.graph_series_with(g2, n, 1)?, g2, Some(d))?;
            r.check(json!({"sample": s, "g2": g2, "n": n, "check": "extra graph layer"}), "no contribution", if more == g { "no contribution" } else { "contributes" });
        }
        let s02 = CoefficientTable::from_series(&rel.special02()?, 0, Some(d))?;
        r.compare(json!({"sample": s, "route": "special02"}), &h, &s02, 0, &monomials(2, d));
        let s01 = CoefficientTable::from_series(&rel.special01()?, 0, Some(d))?;
        r.compare(json!({"sample": s, "route": "special01"}), &h, &s01, 0, &monomials(1, d));
    }
    Ok(r)
}

/// The closed `(0,3)` and `(1,1)` forms against the general routes, on GUE and random input.
pub fn specialized(p: &VerifyParams) -> Result<Report, TransformError> {
    let d = p.degree.unwrap_or(6);
    let mut r = Report::new("specialized");
    let mut inputs = vec![("gue".to_string(), gue_cumulants(d))];
    for s in 0..p.samples.unwrap_or(5) {
        inputs.push((format!("random {s}"), random_table(&mut p.rng(s), d, &[0, 2], 3, 0.3)));
    }
    for (name, t) in &inputs {
        let rel = Relation::forward(t, d)?;
        let s03 = CoefficientTable::from_series(&rel.specialized03()?, 0, Some(d))?;
        let s11 = CoefficientTable::from_series(&rel.specialized11()?, 2, Some(d))?;
        let tree = CoefficientTable::from_series(&rel.genus0_series(3)?, 0, Some(d))?;
        let graph = CoefficientTable::from_series(&rel.graph_series(2, 1)?, 2, Some(d))?;
        r.compare(json!({"input": name, "form": "(0,3)", "against": "tree"}), &tree, &s03, 0, &monomials(3, d));
        r.compare(json!({"input": name, "form": "(1,1)", "against": "graph"}), &graph, &s11, 2, &monomials(1, d));
        if d <= hurwitz::TABLE_BOUND {
            let cfg = TransformConfig { degree: d, hbar: None, g2_max: 2, route: Route::Hurwitz };
            let h = transform(t, Direction::C2m, &cfg)?;
            r.compare(json!({"input": name, "form": "(0,3)", "against": "hurwitz"}), &h, &s03, 0, &monomials(3, d));
            r.compare(json!({"input": name, "form": "(1,1)", "against": "hurwitz"}), &h, &s11, 2, &monomials(1, d));
        }
        let moments = rel.table(0, 3)?;
        let dual = Relation::dual(&moments, d)?;
        let d03 = CoefficientTable::from_series(&dual.specialized03()?, 0, Some(d))?;
        r.compare(json!({"input": name, "form": "(0,3) dual", "against": "cumulants"}), t, &d03, 0, &monomials(3, d));
    }
    Ok(r)
}

/// Genus-`½` moments `F_{½;λ}` by strict surfaced convolution `ζ ⊛ κ`.
pub fn surfaced_half_moments(cumulants: &CoefficientTable, d: usize, n_max: usize) -> Result<CoefficientTable, TransformError> {
    let mut kappa = MultiplicativeFunction::<Rational>::new();
    for (g2, k, v) in cumulants.entries() {
        if g2 <= 1 && k.iter().sum::<usize>() <= d {
            kappa.set(Partition::new(k.to_vec()), g2, v.clone());
        }
    }
    let mut out = CoefficientTable::new(Some(d));
    for deg in 1..=d {
        let f = kappa.to_surfaced(deg, 1, PS_BOUND)?;
        let m = zeta_surfaced(deg).convolve(&f, ConvolutionKind::Strict)?;
        for l in partitions(deg).into_iter().filter(|l| l.len() <= n_max) {
            let x = SurfacedPermutation::new(PartitionedPermutation::connected(Permutation::canonical(&l)), vec![1])
                .map_err(|e| TransformError::Input(e.to_string()))?;
            out.set(1, l.parts(), m.get(&x));
        }
    }
    Ok(out)
}

/// The genus-`½` relation: the one-point identity to high degree and special trees against the surfaced oracle.
pub fn infinitesimal(p: &VerifyParams) -> Result<Report, TransformError> {
    let degree = p.degree.unwrap_or(10);
    let d = p.d.unwrap_or(5);
    let n_max = p.n.unwrap_or(2);
    let mut r = Report::new("infinitesimal");
    for s in 0..p.samples.unwrap_or(3) {
        // one-point identity G_{½,1}(X) = P(w) G∨_{½,1}(w)
        let t = random_table(&mut p.rng(s), degree, &[0, 1], 1, 0.2);
        let rel = Relation::forward(&t, degree)?;
        let half = rel.half_genus_coefficients(1)?;
        let lhs = one_point(&half, 1, degree).compose(&rel.sub.x)?;
        let rhs = rel.sub.p.mul(&one_point(&t, 1, degree));
        r.check(json!({"sample": s, "identity": "one-point genus 1/2", "degree": degree}), show(&rhs), show(&lhs));

        let t = random_table(&mut p.rng(s), d, &[0, 1], n_max, 0.3);
        let rel = Relation::forward(&t, d)?;
        let brute = surfaced_half_moments(&t, d, n_max)?;
        for n in 1..=n_max {
            let keys = monomials(n, d);
            let tree = CoefficientTable::from_series(&rel.half_genus_series(n)?, 1, Some(d))?;
            let coef = rel.half_genus_coefficients(n)?;
            r.compare(json!({"sample": s, "n": n, "route": "special trees"}), &brute, &tree, 1, &keys);
            r.compare(json!({"sample": s, "n": n, "route": "coefficient"}), &brute, &coef, 1, &keys);
        }
        let even = t.filtered(|g2, _| g2 == 0);
        let rel = Relation::forward(&even, d)?;
        let zero = (1..=n_max).map(|n| rel.half_genus_coefficients(n)).collect::<Result<Vec<_>, _>>()?;
        r.check_bool(json!({"sample": s, "check": "no genus-1/2 cumulants"}), "zero", zero.iter().all(|z| z.entries().all(|(_, _, v)| *v == int(0))));
    }
    Ok(r)
}

/// Gaussian fixture: Catalan numbers in genus zero and pairing counts in genus one.
pub fn gue(degree: usize) -> Result<Report, TransformError> {
    let mut r = Report::new("gue");
    let t = gue_cumulants(degree);
    let rel = Relation::forward(&t, degree)?;
    let g0 = rel.sector(0, 1)?;
    for k in 1..=degree {
        let expected = if k % 2 == 0 { catalan(k / 2) } else { int(0) };
        r.check(json!({"g2": 0, "k": [k], "route": "formula"}), expected, g0.get(0, &[k]));
    }
    let g1 = rel.sector(2, 1)?;
    for k in 1..=degree {
        let expected = if k % 2 == 0 { pairings_by_genus(k / 2).get(1).map_or(int(0), |&c| int(c as i64)) } else { int(0) };
        r.check(json!({"g2": 2, "k": [k], "route": "formula"}), expected, g1.get(2, &[k]));
    }
    let d = degree.min(hurwitz::TABLE_BOUND);
    let cfg = TransformConfig { degree: d, hbar: None, g2_max: 2, route: Route::Hurwitz };
    let h = transform(&t.truncated(d), Direction::C2m, &cfg)?;
    for k in 1..=d {
        r.check(json!({"g2": 0, "k": [k], "route": "hurwitz"}), g0.get(0, &[k]), h.get(0, &[k]));
        r.check(json!({"g2": 2, "k": [k], "route": "hurwitz"}), g1.get(2, &[k]), h.get(2, &[k]));
    }
    check_one_point(&mut r, json!({"identity": "C(X M(X)) = M(X)"}), &t, &g0, degree)?;
    Ok(r)
}

/// Cumulants to moments and back, on random genus-zero tables and the Gaussian pair.
pub fn dual_roundtrip(p: &VerifyParams) -> Result<Report, TransformError> {
    let degree = p.degree.unwrap_or(8);
    let n_max = p.n.unwrap_or(3);
    let mut r = Report::new("dual-roundtrip");
    let keys = keys_up_to(n_max, degree);
    for s in 0..p.samples.unwrap_or(5) {
        let t = genus0_sample(p, s, degree, n_max);
        let moments = Relation::forward(&t, degree)?.table(0, n_max)?;
        let back = Relation::dual(&moments, degree)?;
        let tree = back.table(0, n_max)?;
        r.compare(json!({"sample": s, "route": "tree"}), &t, &tree, 0, &keys);
        let mut coef = CoefficientTable::new(Some(degree));
        for n in 1..=n_max {
            coef = coef.add(&back.genus0_coefficients(n)?);
        }
        r.compare(json!({"sample": s, "route": "coefficient"}), &t, &coef, 0, &keys);
    }
    let mut cat = CoefficientTable::new(Some(degree));
    for k in 1..=degree / 2 {
        cat.set(0, &[2 * k], catalan(k));
    }
    let c = Relation::dual(&cat, degree)?.sector(0, 1)?;
    r.compare(json!({"input": "catalan moments"}), &gue_cumulants(degree), &c, 0, &monomials(1, degree));
    let m = Relation::forward(&gue_cumulants(degree), degree)?.sector(0, 1)?;
    r.compare(json!({"input": "gaussian cumulants"}), &cat, &m, 0, &monomials(1, degree));
    Ok(r)
}

fn is_delta<V: Ring>(f: &PsFn<V>, delta: &PsFn<V>) -> bool {
    let unit = <PartitionedPermutation as PsElement>::unit(f.degree());
    f.support().all(|(x, v)| if *x == unit { *v == delta.get(x) } else { v.is_zero() }) && f.get(&unit) == delta.get(&unit)
}

/// `μ ∗ ζ = δ` on `PS(d)` and `μ_ħ ⊛ ζ_ħ = δ` up to `ħ^k` on `PS(3)`.
pub fn moebius_suite(d_max: usize, k: i32) -> Result<Report, TransformError> {
    let mut r = Report::new("moebius");
    for d in 1..=d_max {
        let m = moebius(d, PS_BOUND)?;
        let prod = m.convolve(&zeta(d), ConvolutionKind::Strict)?;
        r.check_bool(json!({"d": d, "identity": "mu * zeta = delta"}), "delta", is_delta(&prod, &delta(d)));
        let prod = zeta(d).convolve(&m, ConvolutionKind::Strict)?;
        r.check_bool(json!({"d": d, "identity": "zeta * mu = delta"}), "delta", is_delta(&prod, &delta(d)));
    }
    let d = d_max.min(3);
    let prod = moebius_hbar(d, k)?.convolve(&zeta_hbar(d, k), ConvolutionKind::Extended)?.truncate(k);
    r.check_bool(json!({"d": d, "hbar": k, "identity": "mu_hbar ⊛ zeta_hbar = delta"}), "delta", is_delta(&prod, &delta_hbar(d, k)));
    Ok(r)
}

/// Runs several suites into one report each.
pub fn run_all(names: &[&str], p: &VerifyParams) -> Result<Vec<Report>, TransformError> {
    names.iter().map(|n| run_suite(n, p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("nope", &VerifyParams::default()), Err(TransformError::Input(_))));
    }

    #[test]
    fn small_suites_pass() {
        assert!(orthogonality(3, 4).unwrap().pass());
        assert!(moebius_suite(3, 4).unwrap().pass());
        assert!(gue(6).unwrap().pass());
    }
}
