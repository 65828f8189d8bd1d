//! Functional relations between the `n`-point functions of `Z = 𝖣Z∨`: the genus-zero tree
//! and coefficient formulas, the all-genus graph sum, the genus-`½` special trees and the
//! specialized `(0,3)` and `(1,1)` expressions. The dual direction flips `sign`.

use crate::graphs::{enumerate_graphs, enumerate_special_trees, enumerate_trees, BicolouredGraph};
use crate::TransformError;
use rayon::prelude::*;
use series_core::{
    apply_genus0, delta_correction, genus0_hyperedge, hyperedge_weight, CoefficientTable, Layout, MultiSeries,
    PowerSeries, Sector, Substitution, VertexContext,
};
use std::collections::HashMap;
use sym_core::{factorial, falling, int, rat, Rational, Ring};

/// A table together with the change of variables it induces.
pub struct Relation<'a> {
    pub table: &'a CoefficientTable,
    /// `1` computes moments from cumulants, `-1` cumulants from moments.
    pub sign: i64,
    pub degree: usize,
    pub sub: Substitution,
}

/// `1 + Σ_k F_{g;k} w^k` (the constant only in genus zero), known modulo `w^{degree+1}`.
pub fn one_point(table: &CoefficientTable, g2: u32, degree: usize) -> PowerSeries {
    let mut c = vec![int(0); degree + 1];
    if g2 == 0 {
        c[0] = int(1);
    }
    for (k, v) in table.sector(g2, 1) {
        if k[0] <= degree {
            c[k[0]] = v.clone();
        }
    }
    PowerSeries::new(c, degree + 1)
}

fn layout_caps(n: usize, with_u: bool, degree: usize) -> (Layout, Vec<i64>) {
    let l = Layout::new(n, with_u);
    let c = l.degree_caps(degree as i64);
    (l, c)
}

/// Drops the `u` slots of a `u`-free series.
fn strip_u(s: &MultiSeries) -> Result<MultiSeries, TransformError> {
    let l = Layout::new(s.layout().n, false);
    let map: Vec<usize> = (0..l.n).collect();
    Ok(s.relabel(l, &map)?)
}

impl<'a> Relation<'a> {
    pub fn new(table: &'a CoefficientTable, sign: i64, degree: usize) -> Result<Self, TransformError> {
        if let Some(d) = table.degree {
            if d < degree {
                return Err(TransformError::Series(series_core::SeriesError::Truncation(format!(
                    "table known to degree {d}, degree {degree} requested"
                ))));
            }
        }
        let sub = Substitution::new(&one_point(table, 0, degree), sign)?;
        Ok(Relation { table, sign, degree, sub })
    }

    pub fn forward(cumulants: &'a CoefficientTable, degree: usize) -> Result<Self, TransformError> {
        Self::new(cumulants, 1, degree)
    }

    pub fn dual(moments: &'a CoefficientTable, degree: usize) -> Result<Self, TransformError> {
        Self::new(moments, -1, degree)
    }

    fn substitute_all(&self, s: &MultiSeries) -> Result<MultiSeries, TransformError> {
        let mut out = s.clone();
        for i in 0..s.layout().n {
            out = out.substitute(i, &self.sub.ratio)?;
        }
        Ok(out)
    }

    fn unshift(&self, s: MultiSeries, n: usize) -> Result<MultiSeries, TransformError> {
        if n != 2 {
            return Ok(s);
        }
        let k = MultiSeries::kernel(s.layout(), 0, 1, s.caps().to_vec())?;
        Ok(s.sub(&k)?)
    }

    /// `G_{0,1}` of the target, `y(inverse)` in the new variable.
    pub fn genus0_one_point(&self) -> Result<MultiSeries, TransformError> {
        let g = self.sub.y.compose(&self.sub.inverse)?;
        let l = Layout::new(1, false);
        Ok(MultiSeries::embed(l, Sector::Ascending, 0, &g).with_caps(&l.degree_caps(self.degree as i64)))
    }

    /// Genus-zero tree formula with the shifted two-point function on mixed pairs.
    pub fn genus0_series(&self, n: usize) -> Result<MultiSeries, TransformError> {
        if n == 1 {
            return self.genus0_one_point();
        }
        let (l, caps) = layout_caps(n, false, self.degree);
        let trees = enumerate_trees(n);
        let parts: Result<Vec<MultiSeries>, TransformError> = trees
            .par_iter()
            .map(|t| {
                let mut f = MultiSeries::one(l).with_caps(&caps);
                for h in &t.hyperedges {
                    f = f.mul(&genus0_hyperedge(self.table, l, h, &caps, 0, true)?)?;
                }
                for (i, d) in t.degrees().into_iter().enumerate() {
                    f = apply_genus0(&self.sub, &f, i, d - 1, self.sign)?;
                }
                Ok(f)
            })
            .collect();
        let mut total = MultiSeries::zero(l, Sector::Ascending, caps, 0);
        for p in parts? {
            total = total.add(&p)?;
        }
        let out = self.unshift(self.substitute_all(&total)?, n)?;
        out.assert_no_negative()?;
        Ok(out)
    }

    /// `k!/(k-r)!` forward, `(-1)^r (r+k-1)!/(k-1)!` dual.
    fn coefficient_factor(&self, k: usize, r: usize) -> Rational {
        if self.sign > 0 {
            falling(k as i64, r)
        } else {
            let s = if r % 2 == 1 { int(-1) } else { int(1) };
            s * factorial(r + k - 1) / factorial(k - 1)
        }
    }

    /// `F_k = [w^k] Σ_T Σ_ℓ ∏ c(k_i, r_i)/ℓ_i! · Y_T ∏ (y - 1)^{ℓ_i}` with `r_i = deg_i + ℓ_i - 1`,
    /// for products `Y_T` with vertex degrees `deg`.
    fn coefficient_sum(&self, n: usize, pieces: &[(MultiSeries, Vec<usize>)]) -> CoefficientTable {
        let d = self.degree;
        let l = self.sub.y.sub(&PowerSeries::one(d + 1));
        let mut lpow = vec![PowerSeries::one(d + 1)];
        for e in 1..=d {
            lpow.push(lpow[e - 1].mul(&l));
        }
        let lambda = |k: usize, dg: usize, j: i32| -> Rational {
            if j < 0 || j as usize > d {
                return int(0);
            }
            let j = j as usize;
            let mut s = int(0);
            for ell in (1usize.saturating_sub(dg))..=j {
                let c = lpow[ell].coeff_unchecked(j);
                if Ring::is_zero(&c) {
                    continue;
                }
                s += self.coefficient_factor(k, dg + ell - 1) / factorial(ell) * c;
            }
            s
        };
        let monos = crate::fixtures::monomials(n, d);
        let values: Vec<(Vec<usize>, Rational)> = monos
            .par_iter()
            .map(|k| {
                let mut memo: HashMap<(usize, usize, i32), Rational> = HashMap::new();
                let mut total = int(0);
                for (y, degs) in pieces {
                    for (e, c) in y.w_terms() {
                        let mut term = c.clone();
                        for i in 0..n {
                            let key = (k[i], degs[i], k[i] as i32 - e[i]);
                            let v = memo.entry(key).or_insert_with(|| lambda(key.0, key.1, key.2)).clone();
                            term *= v;
                            if Ring::is_zero(&term) {
                                break;
                            }
                        }
                        total += term;
                    }
                }
                (k.clone(), total)
            })
            .collect();
        let mut t = CoefficientTable::new(Some(d));
        for (k, v) in values {
            t.set(0, &k, v);
        }
        t
    }

    fn tree_products(&self, n: usize, trees: &[BicolouredGraph], special_g2: Option<u32>) -> Result<Vec<(MultiSeries, Vec<usize>)>, TransformError> {
        let (l, caps) = layout_caps(n, false, self.degree);
        trees
            .par_iter()
            .map(|t| {
                let mut f = MultiSeries::one(l).with_caps(&caps);
                for (p, h) in t.hyperedges.iter().enumerate() {
                    let w = match (special_g2, t.special) {
                        (Some(g2), Some(s)) if s == p => genus0_hyperedge(self.table, l, h, &caps, g2, false)?,
                        _ => genus0_hyperedge(self.table, l, h, &caps, 0, true)?,
                    };
                    f = f.mul(&w)?;
                }
                Ok((f, t.degrees()))
            })
            .collect()
    }

    /// Genus-zero coefficient formula: trees with univalent leaves carrying `y - 1`.
    pub fn genus0_coefficients(&self, n: usize) -> Result<CoefficientTable, TransformError> {
        let pieces = self.tree_products(n, &enumerate_trees(n), None)?;
        Ok(self.coefficient_sum(n, &pieces))
    }

    /// Genus-`½` relation through trees with one special hyperedge of genus `½`.
    pub fn half_genus_series(&self, n: usize) -> Result<MultiSeries, TransformError> {
        let (l, caps) = layout_caps(n, false, self.degree);
        let trees = enumerate_special_trees(n);
        let pieces = self.tree_products(n, &trees, Some(1))?;
        let mut total = MultiSeries::zero(l, Sector::Ascending, caps, 0);
        for (f, degs) in pieces {
            let mut f = f;
            for (i, d) in degs.into_iter().enumerate() {
                f = apply_genus0(&self.sub, &f, i, d - 1, self.sign)?;
            }
            total = total.add(&f)?;
        }
        let out = self.substitute_all(&total)?;
        out.assert_no_negative()?;
        Ok(out)
    }

    /// Coefficient form of the genus-`½` relation; entries are stored under genus `½`.
    pub fn half_genus_coefficients(&self, n: usize) -> Result<CoefficientTable, TransformError> {
        let pieces = self.tree_products(n, &enumerate_special_trees(n), Some(1))?;
        let t = self.coefficient_sum(n, &pieces);
        let mut out = CoefficientTable::new(t.degree);
        for (_, k, v) in t.entries() {
            out.set(1, k, v.clone());
        }
        Ok(out)
    }

    /// All-genus graph sum `δ_{n,1}Δ_g + [ħ^{2g-2+n}] Σ_Γ ∏ O(w_i) ∏ c(u_I, w_I) / #Aut(Γ)`,
    /// including graphs up to `extra` layers beyond the grading bound.
    /// `(0,1)` has no graphs and is [`Self::special01`].
    pub fn graph_series_with(&self, g2: u32, n: usize, extra: usize) -> Result<MultiSeries, TransformError> {
        if (g2, n) == (0, 1) {
            return self.special01();
        }
        let t = g2 as i32 - 2 + n as i32;
        let bound = ((g2 as usize + 2 * n).saturating_sub(2)) / 2 + extra;
        let (l, caps) = layout_caps(n, true, self.degree);
        let graphs = enumerate_graphs(n, bound);
        let max_slack = graphs.iter().map(|g| slack(g, t)).max().unwrap_or(0).max(0);
        let contexts: Vec<VertexContext> =
            (0..=max_slack).map(|s| VertexContext::new(&self.sub, self.table, self.sign, l, caps.clone(), s)).collect();
        let parts: Result<Vec<MultiSeries>, TransformError> = graphs
            .par_iter()
            .filter(|g| slack(g, t) >= 0)
            .map(|g| {
                let s = slack(g, t);
                let mut f = MultiSeries::one(l);
                for h in &g.hyperedges {
                    f = f.mul(&hyperedge_weight(self.table, l, h, &caps, s)?)?;
                }
                if g.hyperedges.is_empty() {
                    f = f.with_caps(&caps).truncate_hbar(s as i64);
                }
                for i in 0..n {
                    f = contexts[s as usize].apply(&f, i)?;
                }
                let c = f.hbar_coefficient(t)?;
                Ok(c.scale(&(int(1) / g.aut_rational())))
            })
            .collect();
        let mut total = MultiSeries::zero(l, Sector::Ascending, caps, 0);
        for p in parts? {
            total = total.add(&p)?;
        }
        let mut total = strip_u(&total)?;
        if n == 1 {
            let delta = delta_correction(&self.sub, self.sign, g2, false);
            total = total.add(&MultiSeries::embed(total.layout(), Sector::Ascending, 0, &delta))?;
        }
        let out = self.substitute_all(&total)?;
        let out = if g2 == 0 { self.unshift(out, n)? } else { out };
        out.assert_no_negative()?;
        Ok(out)
    }

    pub fn graph_series(&self, g2: u32, n: usize) -> Result<MultiSeries, TransformError> {
        self.graph_series_with(g2, n, 0)
    }

    /// `Δ_0` with the `m = -1` term: the genus-zero one-point function.
    pub fn special01(&self) -> Result<MultiSeries, TransformError> {
        let d = delta_correction(&self.sub, self.sign, 0, true);
        let g = d.compose(&self.sub.inverse)?;
        let l = Layout::new(1, false);
        Ok(MultiSeries::embed(l, Sector::Ascending, 0, &g).with_caps(&l.degree_caps(self.degree as i64)))
    }

    /// `P(w_1)P(w_2)(G_{0,2}(w_1,w_2) + w_1w_2/(w_1-w_2)^2) - X_1X_2/(X_1-X_2)^2`.
    pub fn special02(&self) -> Result<MultiSeries, TransformError> {
        let (l, caps) = layout_caps(2, false, self.degree);
        let k = genus0_hyperedge(self.table, l, &[0, 1], &caps, 0, true)?;
        let f = k.mul_univariate(0, &self.sub.p)?.mul_univariate(1, &self.sub.p)?;
        self.unshift(self.substitute_all(&f)?, 2)
    }

    /// The `(0,3)` function from the four trees: the three-point hyperedge, and for each centre `i`
    /// `± ∏_{j≠i} P_j · P_i w_i∂_i (P_i/y_i ∏_{j≠i} G̃_{0,2}(w_i,w_j))`, the sign being the direction.
    pub fn specialized03(&self) -> Result<MultiSeries, TransformError> {
        let (l, caps) = layout_caps(3, false, self.degree);
        let p = &self.sub.p;
        let pairs = |i: usize, j: usize| {
            let s = if i < j { [i, j] } else { [j, i] };
            genus0_hyperedge(self.table, l, &s, &caps, 0, true)
        };
        let inner = p.mul(&self.sub.y_inv_pow(1)).scale(&int(self.sign));
        let mut all = genus0_hyperedge(self.table, l, &[0, 1, 2], &caps, 0, false)?;
        for a in 0..3 {
            all = all.mul_univariate(a, p)?;
        }
        for i in 0..3 {
            let others: Vec<usize> = (0..3).filter(|&j| j != i).collect();
            let prod = pairs(i, others[0])?.mul(&pairs(i, others[1])?)?;
            let h = prod.mul_univariate(i, &inner)?.theta(i).mul_univariate(i, p)?;
            all = all.add(&h.mul_univariate(others[0], p)?.mul_univariate(others[1], p)?)?;
        }
        self.substitute_all(&all)
    }

    /// The five-term `(1,1)` expression in `w`, substituted to the new variable; cumulant input only.
    pub fn specialized11(&self) -> Result<MultiSeries, TransformError> {
        if self.sign < 0 {
            return Err(TransformError::Input("the (1,1) closed form is stated for cumulants to moments".into()));
        }
        let d = self.degree;
        let p = &self.sub.p;
        let y = &self.sub.y;
        let yinv = self.sub.y_inv_pow(1);
        let yinv2 = self.sub.y_inv_pow(2);
        let pt = |f: &PowerSeries| p.mul(&f.theta());
        let g11 = one_point(self.table, 2, d);
        let mut diag = vec![int(0); d + 1];
        for (k, v) in self.table.sector(0, 2) {
            if k[0] + k[1] <= d {
                let mult = if k[0] == k[1] { 1 } else { 2 };
                diag[k[0] + k[1]] += v * int(mult);
            }
        }
        let diag = PowerSeries::new(diag, d + 1);
        let t1 = p.mul(&g11);
        let t2 = pt(&p.mul(&yinv)).scale(&rat(-1, 24));
        let h = p.mul(&yinv2).mul(&y.theta().theta());
        let t3 = pt(&pt(&h).sub(&h)).scale(&rat(1, 24));
        let t4 = pt(&p.mul(&yinv).mul(&diag)).scale(&rat(1, 2));
        let q = pt(y).mul(&yinv2);
        let t5 = pt(&pt(&q)).sub(&q).scale(&rat(-1, 24));
        let w = t1.add(&t2).add(&t3).add(&t4).add(&t5);
        let g = w.compose(&self.sub.inverse)?;
        let l = Layout::new(1, false);
        Ok(MultiSeries::embed(l, Sector::Ascending, 0, &g).with_caps(&l.degree_caps(d as i64)))
    }

    /// The `(g, n)` sector of the target table: trees in genus zero, the graph sum otherwise.
    pub fn sector(&self, g2: u32, n: usize) -> Result<CoefficientTable, TransformError> {
        let s = if g2 == 0 { self.genus0_series(n)? } else { self.graph_series(g2, n)? };
        Ok(CoefficientTable::from_series(&s, g2, Some(self.degree))?)
    }

    /// Every sector with `2g ≤ g2_max` and `n ≤ n_max`.
    pub fn table(&self, g2_max: u32, n_max: usize) -> Result<CoefficientTable, TransformError> {
        let mut out = CoefficientTable::new(Some(self.degree));
        for g2 in 0..=g2_max {
            for n in 1..=n_max.min(self.degree) {
                out = out.add(&self.sector(g2, n)?);
            }
        }
        Ok(out)
    }
}

fn slack(g: &BicolouredGraph, t: i32) -> i32 {
    let v: i32 = g.hyperedges.iter().map(|h| 2 * h.len() as i32 - 2).sum::<i32>() - g.n as i32;
    t - v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{catalan, gue_cumulants};

    #[test]
    fn gue_one_point_is_catalan() {
        let t = gue_cumulants(10);
        let m = Relation::forward(&t, 10).unwrap().sector(0, 1).unwrap();
        for k in 1..=5 {
            assert_eq!(m.get(0, &[2 * k]), catalan(k));
            assert_eq!(m.get(0, &[2 * k - 1]), int(0));
        }
    }

    #[test]
    fn one_point_closed_form_matches_trees() {
        let mut t = CoefficientTable::new(Some(6));
        t.set(0, &[1], int(2));
        t.set(0, &[3], rat(-1, 2));
        t.set(0, &[1, 2], int(1));
        let rel = Relation::forward(&t, 6).unwrap();
        assert_eq!(CoefficientTable::from_series(&rel.special01().unwrap(), 0, Some(6)).unwrap(), rel.sector(0, 1).unwrap());
    }

    #[test]
    fn genus_one_closed_form_rejects_moment_input() {
        let t = gue_cumulants(4);
        assert!(Relation::dual(&t, 4).unwrap().specialized11().is_err());
    }

    #[test]
    fn three_point_closed_form_on_gue() {
        let t = gue_cumulants(6);
        let rel = Relation::forward(&t, 6).unwrap();
        let s = CoefficientTable::from_series(&rel.specialized03().unwrap(), 0, Some(6)).unwrap();
        assert_eq!(s, rel.sector(0, 3).unwrap());
        // ⟨tr a², tr a², tr a²⟩ for GUE is 8
        assert_eq!(s.get(0, &[2, 2, 2]), int(8));
    }
}
