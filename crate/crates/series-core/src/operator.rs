//! The change of variables, the vertex operators, the `n = 1` correction and the hyperedge weights.
//!
//! Every operator takes a `sign`: `+1` for the moment-from-cumulant direction
//! and `-1` for the dual direction, which flips `v` in the operator weight.

use crate::multi::{Layout, MultiSeries, Sector, UNBOUNDED};
use crate::power::{inv_sigma_even_coeffs, sigma_even_coeffs, sigma_ratio_coeffs, PowerSeries};
use crate::table::CoefficientTable;
use crate::SeriesError;
use itertools::Itertools;
use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;
use sym_core::{factorial, int, Rational, Ring};

/// The change of variables attached to a one-point series `y = 1 + O(w)`.
///
/// Forward (`sign = 1`): `X = w/y(w)`. Dual (`sign = -1`): the new variable is `w = X·y(X)`.
/// In both cases `P = d ln(var) / d ln(new)` and the operators evaluate at `y`.
#[derive(Clone, Debug)]
pub struct Substitution {
    /// The one-point series the operators are evaluated at.
    pub y: PowerSeries,
    pub sign: i64,
    /// The new variable as a series in the old one.
    pub x: PowerSeries,
    pub p: PowerSeries,
    /// The old variable as a series in the new one.
    pub inverse: PowerSeries,
    /// `inverse / new`, the factor used when substituting monomials.
    pub ratio: PowerSeries,
    inv_pows: Vec<PowerSeries>,
}

impl Substitution {
    /// `y` known modulo `var^{D+1}` gives every series to the same precision.
    pub fn new(y: &PowerSeries, sign: i64) -> Result<Self, SeriesError> {
        if y.coeff_unchecked(0) != int(1) {
            return Err(SeriesError::Valuation("one-point series must have constant term 1".into()));
        }
        let prec = y.prec();
        let yinv = y.inverse()?;
        let c = if sign > 0 { yinv.clone() } else { y.clone() };
        // x = w c(w) is known one order beyond c
        let x_ext = c.shift_up(1);
        let x = x_ext.truncate(prec);
        // θx/x = 1 + θc/c
        let p = PowerSeries::one(prec).add(&c.theta().mul(&c.inverse()?)).inverse()?;
        let inverse_ext = x_ext.lagrange_invert()?;
        let ratio = inverse_ext.shift_down(1)?;
        let inverse = inverse_ext.truncate(prec);
        Ok(Substitution { y: y.clone(), sign, x, p, inverse, ratio, inv_pows: vec![PowerSeries::one(prec), yinv] })
    }

    pub fn prec(&self) -> usize {
        self.y.prec()
    }

    /// `y^{-k}`.
    pub fn y_inv_pow(&self, k: usize) -> PowerSeries {
        if k < self.inv_pows.len() {
            return self.inv_pows[k].clone();
        }
        self.y.powi(-(k as i64)).expect("y(0) = 1")
    }

    /// `(P w∂_w)^m` applied to a power series.
    pub fn p_theta_pow(&self, f: &PowerSeries, m: usize) -> PowerSeries {
        let mut g = f.clone();
        for _ in 0..m {
            g = self.p.mul(&g.theta());
        }
        g
    }
}

/// Coefficients in `v` of `∏_{a < r} (sign·v - a)`: `(∂_y + sign·v/y)^r · 1 = y^{-r} Σ_m c_m v^m`.
pub fn falling_poly(r: usize, sign: i64) -> Vec<Rational> {
    let mut p = vec![int(1)];
    for a in 0..r {
        let mut q = vec![int(0); p.len() + 1];
        for (m, c) in p.iter().enumerate() {
            q[m + 1] += c * int(sign);
            q[m] -= c * int(a as i64);
        }
        p = q;
    }
    p
}

/// `P · θ` applied to variable `i`.
fn p_theta(f: &MultiSeries, i: usize, p: &PowerSeries) -> Result<MultiSeries, SeriesError> {
    f.theta(i).mul_univariate(i, p)
}

/// Genus-zero operator `O_r(w_i) f = Σ_m (P w∂)^m P · c_{r,m} y^{-r} f`.
pub fn apply_genus0(sub: &Substitution, f: &MultiSeries, i: usize, r: usize, sign: i64) -> Result<MultiSeries, SeriesError> {
    let c = falling_poly(r, sign);
    let base = f.mul_univariate(i, &sub.p.mul(&sub.y_inv_pow(r)))?;
    let top = c.len() - 1;
    let mut acc = base.scale(&c[top]);
    for m in (0..top).rev() {
        acc = p_theta(&acc, i, &sub.p)?.add(&base.scale(&c[m]))?;
    }
    Ok(acc)
}

/// Polynomials in `ħ`, `v`, `y^{-1}`: key `(a, b, k)` for `ħ^a v^b y^{-k}`.
type Sym = BTreeMap<(i32, i32, i32), Rational>;

fn sym_mul(a: &Sym, b: &Sym, hcap: i32) -> Sym {
    let mut out = Sym::new();
    for ((a1, b1, k1), c1) in a {
        for ((a2, b2, k2), c2) in b {
            if a1 + a2 > hcap {
                continue;
            }
            *out.entry((a1 + a2, b1 + b2, k1 + k2)).or_insert_with(|| int(0)) += c1 * c2;
        }
    }
    out.retain(|_, c| !Ring::is_zero(c));
    out
}

/// `exp(sign · v (S - 1) ln y)` with `S = ς(ħ v ∂_y)/ς(ħ ∂_y)`, to `ħ^hcap`.
fn exp_sym(sign: i64, hcap: i32) -> Sym {
    let terms = (hcap.max(0) / 2 + 1) as usize;
    let t = sigma_ratio_coeffs(terms);
    let mut q = Sym::new();
    for j in 1..terms {
        // ∂_y^{2j} ln y = -(2j-1)! y^{-2j}
        let f = -factorial(2 * j - 1) * int(sign);
        for (e, c) in t[j].iter().enumerate() {
            if !Ring::is_zero(c) {
                *q.entry((2 * j as i32, e as i32 + 1, 2 * j as i32)).or_insert_with(|| int(0)) += c * &f;
            }
        }
    }
    let mut out = Sym::new();
    out.insert((0, 0, 0), int(1));
    let mut pow = out.clone();
    let mut p = 1;
    loop {
        pow = sym_mul(&pow, &q, hcap);
        if pow.is_empty() {
            break;
        }
        let inv = factorial(p).recip();
        for (k, c) in &pow {
            *out.entry(*k).or_insert_with(|| int(0)) += c * &inv;
        }
        p += 1;
    }
    out.retain(|_, c| !Ring::is_zero(c));
    out
}

/// `(∂_y + sign · v/y)` on a symbolic polynomial.
fn sym_step(a: &Sym, sign: i64) -> Sym {
    let mut out = Sym::new();
    for ((h, b, k), c) in a {
        if *k != 0 {
            *out.entry((*h, *b, k + 1)).or_insert_with(|| int(0)) -= c * int(*k as i64);
        }
        *out.entry((*h, b + 1, k + 1)).or_insert_with(|| int(0)) += c * int(sign);
    }
    out.retain(|_, c| !Ring::is_zero(c));
    out
}

/// Evaluation context for the all-genus operator weights on a fixed layout.
pub struct VertexContext<'a> {
    pub sub: &'a Substitution,
    /// One-point tables `G_{g,1}` for `g > 0` are read from here.
    pub table: &'a CoefficientTable,
    pub sign: i64,
    pub layout: Layout,
    pub caps: Vec<i64>,
    /// ħ-precision of the operator factors (they have ħ-valuation zero).
    pub slack: i32,
    b_hat: Mutex<HashMap<usize, MultiSeries>>,
    a_sym: Mutex<Vec<Sym>>,
}

impl<'a> VertexContext<'a> {
    pub fn new(sub: &'a Substitution, table: &'a CoefficientTable, sign: i64, layout: Layout, caps: Vec<i64>, slack: i32) -> Self {
        assert!(layout.with_u);
        let a0 = exp_sym(sign, slack);
        VertexContext {
            sub,
            table,
            sign,
            layout,
            caps,
            slack,
            b_hat: Mutex::new(HashMap::new()),
            a_sym: Mutex::new(vec![a0]),
        }
    }

    fn capped(&self, hcap: i64) -> Vec<i64> {
        let mut c = self.caps.clone();
        c[0] = hcap;
        c
    }

    /// `u ς(ħ u w∂_w)` applied to a series in `w_i`, within the ħ cap.
    fn u_sigma(&self, f: &MultiSeries, i: usize, subtract_one: bool) -> MultiSeries {
        let s = sigma_even_coeffs((self.slack.max(0) / 2 + 1) as usize);
        let l = self.layout;
        let g = f.apply_diagonal_with(i, UNBOUNDED, |k| {
            s.iter()
                .enumerate()
                .filter(|(j, _)| !(subtract_one && *j == 0))
                .map(|(j, c)| (2 * j as i32, 2 * j as i32 + 1, c * int(k as i64).pow(2 * j as i32)))
                .collect()
        });
        debug_assert!(l.with_u);
        g
    }

    /// `B̂_i = exp(E_i) / ς(ħ u_i)` where `E = u[ς(ħuθ) - 1](y - 1) + Σ_{g>0} ħ^{2g} u ς(ħuθ) G_{g,1}`.
    pub fn b_hat(&self, i: usize) -> Result<MultiSeries, SeriesError> {
        if let Some(b) = self.b_hat.lock().unwrap().get(&i) {
            return Ok(b.clone());
        }
        let l = self.layout;
        let s = self.slack as i64;
        let cm1 = self.sub.y.sub(&PowerSeries::one(self.sub.prec()));
        let base = MultiSeries::embed(l, Sector::Ascending, i, &cm1).with_caps(&self.capped(s));
        let mut e = self.u_sigma(&base, i, true);
        let deg = self.sub.prec() - 1;
        for g2 in self.table.genera().into_iter().filter(|&g| g > 0 && g as i64 <= s) {
            let mut one = MultiSeries::zero(l, Sector::Ascending, self.capped(s), 0);
            for (k, v) in self.table.sector(g2, 1) {
                if k[0] <= deg {
                    let mut m = vec![0; l.dims()];
                    m[0] = g2 as i32;
                    m[l.w(i)] = k[0] as i32;
                    one.add_term(m, v.clone());
                }
            }
            self.table.get_checked(g2, &[deg])?;
            e = e.add(&self.u_sigma(&one, i, false))?;
        }
        let mut ex = MultiSeries::one(l).with_caps(&self.capped(s));
        let mut pow = ex.clone();
        let mut p = 1usize;
        loop {
            pow = pow.mul(&e)?;
            if pow.is_zero() {
                break;
            }
            ex = ex.add(&pow.scale(&factorial(p).recip()))?;
            p += 1;
        }
        let inv = inv_sigma_even_coeffs((s.max(0) / 2 + 1) as usize);
        let mut is = MultiSeries::zero(l, Sector::Ascending, self.capped(s), 0);
        for (j, c) in inv.iter().enumerate() {
            let mut m = vec![0; l.dims()];
            m[0] = 2 * j as i32;
            m[l.u(i)] = 2 * j as i32;
            is.add_term(m, c.clone());
        }
        let b = ex.mul(&is)?;
        self.b_hat.lock().unwrap().insert(i, b.clone());
        Ok(b)
    }

    /// `A_r = (∂_y + sign v/y)^r exp(sign v(S - 1) ln y)` as a symbolic polynomial.
    fn a_sym(&self, r: usize) -> Sym {
        let mut cache = self.a_sym.lock().unwrap();
        while cache.len() <= r {
            let next = sym_step(cache.last().unwrap(), self.sign);
            cache.push(next);
        }
        cache[r].clone()
    }

    /// `[v^m] A_r |_{y(w_i)}`, grouped by `m`.
    fn a_series(&self, i: usize, r: usize) -> BTreeMap<i32, MultiSeries> {
        let l = self.layout;
        let sym = self.a_sym(r);
        let mut by_m: BTreeMap<i32, BTreeMap<(i32, i32), Rational>> = BTreeMap::new();
        for ((a, b, k), c) in sym {
            by_m.entry(b).or_default().insert((a, k), c);
        }
        let mut pows: HashMap<i32, PowerSeries> = HashMap::new();
        let mut out = BTreeMap::new();
        for (m, parts) in by_m {
            let mut s = MultiSeries::zero(l, Sector::Ascending, self.capped(self.slack as i64), 0);
            for ((a, k), c) in parts {
                let ck = pows.entry(k).or_insert_with(|| self.sub.y_inv_pow(k as usize));
                for (e, q) in ck.coeffs().iter().enumerate() {
                    let mut mono = vec![0; l.dims()];
                    mono[0] = a;
                    mono[l.w(i)] = e as i32;
                    s.add_term(mono, &c * q);
                }
            }
            let s = s.with_caps(MultiSeries::embed(l, Sector::Ascending, i, &self.sub.p).caps());
            out.insert(m, s);
        }
        out
    }

    /// The operator weight of the `i`-th white vertex applied to `f`; the output has no `u_i`.
    pub fn apply(&self, f: &MultiSeries, i: usize) -> Result<MultiSeries, SeriesError> {
        let g = self.b_hat(i)?.mul(f)?;
        let top = g.u_degree(i);
        let mut caps = g.caps().to_vec();
        caps[self.layout.u(i)] = UNBOUNDED;
        let zero = MultiSeries::zero(self.layout, g.sector(), caps, g.hbar_valuation());
        let mut h: BTreeMap<i32, MultiSeries> = BTreeMap::new();
        for r in 0..top.max(0) {
            let gr = g.u_coefficient(i, r + 1)?;
            if gr.is_zero() {
                continue;
            }
            for (m, a) in self.a_series(i, r as usize) {
                let t = a.mul(&gr)?;
                let slot = h.entry(m).or_insert_with(|| zero.clone());
                *slot = slot.add(&t)?;
            }
        }
        let top_m = h.keys().max().copied().unwrap_or(0);
        let p = &self.sub.p;
        let mut acc = zero.clone();
        for m in (0..=top_m).rev() {
            let hm = h.get(&m).cloned().unwrap_or_else(|| zero.clone());
            acc = if m == top_m { acc.add(&hm.mul_univariate(i, p)?)? } else { p_theta(&acc, i, p)?.add(&hm.mul_univariate(i, p)?)? };
        }
        Ok(acc.shift_hbar(-1))
    }
}

/// Weight of the hyperedge with slots `slots` (sorted white-vertex indices, repeats allowed):
/// `∏_slots ħ u ς(ħ u w∂) G̃_{#I}(w_I)` with genus contributions up to ħ-degree `2#I - 2 + slack`.
pub fn hyperedge_weight(
    table: &CoefficientTable,
    layout: Layout,
    slots: &[usize],
    caps: &[i64],
    slack: i32,
) -> Result<MultiSeries, SeriesError> {
    let m = slots.len();
    assert!(layout.with_u && m >= 1 && slots.windows(2).all(|w| w[0] <= w[1]));
    let base_val = 2 * m as i32 - 2;
    let hcap = base_val + slack;
    let mut c = caps.to_vec();
    c[0] = hcap as i64;
    let mut out = MultiSeries::zero(layout, Sector::Ascending, c.clone(), base_val as i64);
    let s = sigma_even_coeffs((slack.max(0) / 2 + 1) as usize);
    let deg_need = caps[1 + slots[m - 1]];
    if table.degree.is_some_and(|d| (d as i64) < deg_need) {
        return Err(SeriesError::Truncation(format!("table known to degree {} but degree {deg_need} needed", table.degree.unwrap())));
    }
    let push = |h: i32, ks: &[i32], coeff: &Rational, out: &mut MultiSeries| {
        // distribute ς-orders over the slots
        let budget = (hcap - h - m as i32) / 2;
        if budget < 0 {
            return;
        }
        let choices: Vec<Vec<usize>> = (0..m).map(|_| (0..=budget as usize).collect()).collect();
        for js in choices.into_iter().multi_cartesian_product() {
            let tot: usize = js.iter().sum();
            if tot as i32 > budget {
                continue;
            }
            let mut mono = vec![0; layout.dims()];
            mono[0] = h + m as i32 + 2 * tot as i32;
            let mut q = coeff.clone();
            for (slot, (&i, &j)) in slots.iter().zip(&js).enumerate() {
                mono[layout.w(i)] += ks[slot];
                mono[layout.u(i)] += 1 + 2 * j as i32;
                if j > 0 {
                    q *= &s[j] * int(ks[slot] as i64).pow(2 * j as i32);
                }
            }
            out.add_term(mono, q);
        }
    };
    if m == 0 {
        return Ok(out);
    }
    for g2 in table.genera() {
        let h = g2 as i32 - 2 + m as i32;
        if h + m as i32 > hcap {
            continue;
        }
        for (k, v) in table.sector(g2, m) {
            for perm in k.iter().copied().permutations(m).unique() {
                let ks: Vec<i32> = perm.iter().map(|&x| x as i32).collect();
                push(h, &ks, v, &mut out);
            }
        }
    }
    if m == 2 && slots[0] != slots[1] {
        let depth = (slots[0]..slots[1]).map(|l| caps[1 + l]).min().unwrap();
        for k in 1..=depth.max(0) as i32 {
            push(0, &[k, -k], &int(k as i64), &mut out);
        }
    }
    Ok(out)
}

/// Genus-zero hyperedge weight `G_{0,#I}(w_I)` on distinct slots, shifted for `#I = 2` when `shifted`;
/// a single slot gives the one-point entries without the constant.
pub fn genus0_hyperedge(
    table: &CoefficientTable,
    layout: Layout,
    slots: &[usize],
    caps: &[i64],
    g2: u32,
    shifted: bool,
) -> Result<MultiSeries, SeriesError> {
    let m = slots.len();
    assert!(!layout.with_u && slots.windows(2).all(|w| w[0] < w[1]));
    let deg_need = caps[1 + slots[m - 1]];
    if table.degree.is_some_and(|d| (d as i64) < deg_need) {
        return Err(SeriesError::Truncation(format!("table known to degree {} but degree {deg_need} needed", table.degree.unwrap())));
    }
    let mut out = MultiSeries::zero(layout, Sector::Ascending, caps.to_vec(), 0);
    for (k, v) in table.sector(g2, m) {
        for perm in k.iter().copied().permutations(m).unique() {
            let mut mono = vec![0; layout.dims()];
            for (&i, &e) in slots.iter().zip(&perm) {
                mono[layout.w(i)] = e as i32;
            }
            out.add_term(mono, v.clone());
        }
    }
    if shifted && g2 == 0 && m == 2 {
        out = out.add(&MultiSeries::kernel(layout, slots[0], slots[1], caps.to_vec())?)?;
    }
    Ok(out)
}

/// `Δ_g = [ħ^{2g}] Σ_{m ≥ 0} (P w∂)^m ([v^{m+1}] exp(sign v(S-1) ln y) · P w∂ y)`.
/// With `extend` the `m = -1` term, identified with `y`, is included.
pub fn delta_correction(sub: &Substitution, sign: i64, g2: u32, extend: bool) -> PowerSeries {
    let prec = sub.prec();
    let mut out = if extend && g2 == 0 { sub.y.clone() } else { PowerSeries::zero(prec) };
    if g2 % 2 == 1 {
        return out;
    }
    let sym = exp_sym(sign, g2 as i32);
    let pc = sub.p.mul(&sub.y.theta());
    let mut by_m: BTreeMap<i32, PowerSeries> = BTreeMap::new();
    for ((a, b, k), c) in sym {
        if a != g2 as i32 || b == 0 {
            continue;
        }
        let e = by_m.entry(b - 1).or_insert_with(|| PowerSeries::zero(prec));
        *e = e.add(&sub.y_inv_pow(k as usize).scale(&c));
    }
    for (m, e) in by_m {
        out = out.add(&sub.p_theta_pow(&e.mul(&pc), m as usize));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use sym_core::rat;

    fn gue() -> PowerSeries {
        PowerSeries::new(vec![int(1), int(0), int(1)], 13)
    }

    #[test]
    fn substitution_gue() {
        let s = Substitution::new(&gue(), 1).unwrap();
        assert_eq!(s.p.coeff(2).unwrap(), int(2));
        // θ ln X · P = 1
        let xprime_over = s.x.theta().mul(&s.x.shift_down(1).unwrap().inverse().unwrap());
        let dlnx = xprime_over.shift_down(1).unwrap();
        assert_eq!(dlnx.mul(&s.p).truncate(12), PowerSeries::one(12));
        // P = (1 + w²)/(1 - w²)
        let closed = PowerSeries::new(vec![int(1), int(0), int(1)], 13).mul(&PowerSeries::new(vec![int(1), int(0), int(-1)], 13).inverse().unwrap());
        assert_eq!(s.p, closed);
        assert_eq!(s.ratio.coeff(4).unwrap(), int(2));
        assert_eq!(Substitution::new(&PowerSeries::one(5), 1).unwrap().p, PowerSeries::one(5));
    }

    #[test]
    fn falling() {
        assert_eq!(falling_poly(0, 1), vec![int(1)]);
        assert_eq!(falling_poly(1, 1), vec![int(0), int(1)]);
        assert_eq!(falling_poly(2, 1), vec![int(0), int(-1), int(1)]);
        assert_eq!(falling_poly(2, -1), vec![int(0), int(1), int(1)]);
    }

    #[test]
    fn exp_sym_orders() {
        let e = exp_sym(1, 2);
        // v (t_1(v)) ħ² (-1) y^{-2} with t_1 = (v² - 1)/24
        assert_eq!(e.get(&(2, 1, 2)), Some(&rat(1, 24)));
        assert_eq!(e.get(&(2, 3, 2)), Some(&rat(-1, 24)));
        assert_eq!(e.get(&(0, 0, 0)), Some(&int(1)));
    }

    #[test]
    fn delta_trivial_genus0() {
        let s = Substitution::new(&gue(), 1).unwrap();
        assert_eq!(delta_correction(&s, 1, 0, true), gue());
        assert_eq!(delta_correction(&s, 1, 0, false), PowerSeries::zero(13));
        assert_eq!(delta_correction(&s, 1, 1, false), PowerSeries::zero(13));
    }

    #[test]
    fn diagonal_hyperedge_lowest_order() {
        let mut t = CoefficientTable::new(None);
        t.set(0, &[1, 1], int(1));
        let l = Layout::new(1, true);
        let caps = l.degree_caps(4);
        let w = hyperedge_weight(&t, l, &[0, 0], &caps, 0).unwrap();
        // ħ^{0}·(ħu)²·w²
        assert_eq!(w.coefficient(&[2, 2, 2]).unwrap(), int(1));
        assert_eq!(w.len(), 1);
        let w = hyperedge_weight(&t, l, &[0, 0], &caps, 2).unwrap();
        // ς(ħu)² at order ħ²: 2/24
        assert_eq!(w.coefficient(&[4, 2, 4]).unwrap(), rat(1, 12));
    }
}
