//! Truncated multivariate Laurent series in `ħ, w_1, …, w_n` and optionally `u_1, …, u_n`.
//!
//! Truncation is recorded as caps on a fixed family of linear gradings:
//! the ħ-degree, the prefix sums `e_1 + … + e_j` of the `w`-exponents
//! (suffix sums in the descending sector) and the individual `u`-degrees.
//! A series with caps `c` is exact modulo the monomials that exceed at least
//! one cap. Every monomial that can occur has nonnegative prefix sums and
//! `u`-degrees; the ħ-degree lower bound is tracked explicitly, since `ħ^{-1}`
//! occurs in one-point functions.

use crate::power::PowerSeries;
use crate::SeriesError;
use std::collections::{BTreeMap, HashMap};
use sym_core::{int, HbarSeries, Rational, Ring};

/// Cap meaning "no truncation".
pub const UNBOUNDED: i64 = i64::MAX / 4;

/// Expansion domain of the kernels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sector {
    /// `|w_1| < … < |w_n|`.
    Ascending,
    /// `|w_1| > … > |w_n|`.
    Descending,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Layout {
    pub n: usize,
    pub with_u: bool,
}

impl Layout {
    pub fn new(n: usize, with_u: bool) -> Self {
        Layout { n, with_u }
    }

    /// Exponent vector length: `ħ`, then `w_i`, then `u_i`.
    pub fn dims(&self) -> usize {
        1 + self.n + if self.with_u { self.n } else { 0 }
    }

    pub fn w(&self, i: usize) -> usize {
        1 + i
    }

    pub fn u(&self, i: usize) -> usize {
        debug_assert!(self.with_u);
        1 + self.n + i
    }

    /// Caps for outputs of total `w`-degree at most `deg` with every exponent positive.
    pub fn degree_caps(&self, deg: i64) -> Vec<i64> {
        let mut c = vec![UNBOUNDED; self.dims()];
        for j in 0..self.n {
            c[1 + j] = deg - (self.n - 1 - j) as i64;
        }
        c
    }

    pub fn unbounded(&self) -> Vec<i64> {
        vec![UNBOUNDED; self.dims()]
    }
}

type Mono = Vec<i32>;

#[derive(Clone, Debug, PartialEq)]
pub struct MultiSeries {
    layout: Layout,
    sector: Sector,
    caps: Vec<i64>,
    hval: i64,
    terms: BTreeMap<Mono, Rational>,
}

fn grades(layout: &Layout, sector: Sector, e: &[i32]) -> Vec<i64> {
    let mut g = Vec::with_capacity(layout.dims());
    g.push(e[0] as i64);
    let n = layout.n;
    match sector {
        Sector::Ascending => {
            let mut s = 0i64;
            for j in 0..n {
                s += e[1 + j] as i64;
                g.push(s);
            }
        }
        Sector::Descending => {
            let mut tail = vec![0i64; n];
            let mut s = 0i64;
            for j in (0..n).rev() {
                s += e[1 + j] as i64;
                tail[j] = s;
            }
            g.extend(tail);
        }
    }
    for &x in &e[1 + n..] {
        g.push(x as i64);
    }
    g
}

fn within(g: &[i64], caps: &[i64]) -> bool {
    g.iter().zip(caps).all(|(a, c)| a <= c)
}

fn sat(a: i64, b: i64) -> i64 {
    a.saturating_add(b).min(UNBOUNDED)
}

impl MultiSeries {
    /// Zero modulo `caps`; `hval` bounds the ħ-degree of the unknown part.
    pub fn zero(layout: Layout, sector: Sector, caps: Vec<i64>, hval: i64) -> Self {
        assert_eq!(caps.len(), layout.dims());
        MultiSeries { layout, sector, caps, hval, terms: BTreeMap::new() }
    }

    pub fn exact_zero(layout: Layout) -> Self {
        Self::zero(layout, Sector::Ascending, layout.unbounded(), UNBOUNDED)
    }

    pub fn constant(layout: Layout, c: Rational) -> Self {
        let mut s = Self::zero(layout, Sector::Ascending, layout.unbounded(), 0);
        s.add_term(vec![0; layout.dims()], c);
        s
    }

    pub fn one(layout: Layout) -> Self {
        Self::constant(layout, int(1))
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, Rational)>>(
        layout: Layout,
        sector: Sector,
        caps: Vec<i64>,
        hval: i64,
        terms: I,
    ) -> Self {
        let mut s = Self::zero(layout, sector, caps, hval);
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s
    }

    /// Adds `c · m` unless `m` lies beyond the caps.
    pub fn add_term(&mut self, m: Mono, c: Rational) {
        debug_assert_eq!(m.len(), self.layout.dims());
        if Ring::is_zero(&c) || !within(&grades(&self.layout, self.sector, &m), &self.caps) {
            return;
        }
        if (m[0] as i64) < self.hval {
            self.hval = m[0] as i64;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if Ring::is_zero(o.get()) {
                    o.remove();
                }
            }
        }
    }

    /// A univariate series in `w_i`, embedded.
    pub fn embed(layout: Layout, sector: Sector, i: usize, f: &PowerSeries) -> Self {
        let mut caps = layout.unbounded();
        let p = f.prec() as i64 - 1;
        for j in 0..layout.n {
            let covers = match sector {
                Sector::Ascending => j >= i,
                Sector::Descending => j <= i,
            };
            if covers {
                caps[1 + j] = p;
            }
        }
        let mut s = Self::zero(layout, sector, caps, 0);
        for (k, c) in f.coeffs().iter().enumerate() {
            let mut m = vec![0; layout.dims()];
            m[layout.w(i)] = k as i32;
            s.add_term(m, c.clone());
        }
        s
    }

    /// `Σ_{k ≥ 1} k w_i^k w_j^{-k}` in the ascending sector, within `caps`.
    pub fn kernel(layout: Layout, i: usize, j: usize, caps: Vec<i64>) -> Result<Self, SeriesError> {
        if i >= j || j >= layout.n {
            return Err(SeriesError::Kernel(i, j));
        }
        let depth = (i..j).map(|l| caps[1 + l]).min().unwrap_or(UNBOUNDED);
        if depth >= UNBOUNDED {
            return Err(SeriesError::Truncation("kernel needs a finite cap on its prefix sums".into()));
        }
        let mut s = Self::zero(layout, Sector::Ascending, caps, 0);
        for k in 1..=depth.max(0) {
            let mut m = vec![0; layout.dims()];
            m[layout.w(i)] = k as i32;
            m[layout.w(j)] = -(k as i32);
            s.add_term(m, int(k));
        }
        Ok(s)
    }

    /// `Σ_{k ≥ 1} k w_j^k w_i^{-k}` for `i < j`: the same kernel expanded in the descending sector.
    pub fn kernel_descending(layout: Layout, i: usize, j: usize, caps: Vec<i64>) -> Result<Self, SeriesError> {
        if i >= j || j >= layout.n {
            return Err(SeriesError::Kernel(i, j));
        }
        let depth = (i + 1..=j).map(|l| caps[1 + l]).min().unwrap_or(UNBOUNDED);
        if depth >= UNBOUNDED {
            return Err(SeriesError::Truncation("kernel needs a finite cap on its suffix sums".into()));
        }
        let mut s = Self::zero(layout, Sector::Descending, caps, 0);
        for k in 1..=depth.max(0) {
            let mut m = vec![0; layout.dims()];
            m[layout.w(j)] = k as i32;
            m[layout.w(i)] = -(k as i32);
            s.add_term(m, int(k));
        }
        Ok(s)
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn caps(&self) -> &[i64] {
        &self.caps
    }

    /// Lower bound for the ħ-degree of every term, known or not.
    pub fn hbar_valuation(&self) -> i64 {
        self.hval
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, o: &Self) -> Result<(), SeriesError> {
        if self.layout != o.layout {
            return Err(SeriesError::Layout);
        }
        let trivial = |s: &Self| s.terms.keys().all(|m| m[1..=s.layout.n].iter().all(|&e| e == 0));
        if self.sector != o.sector && !trivial(self) && !trivial(o) {
            return Err(SeriesError::Sector);
        }
        Ok(())
    }

    fn joint_sector(&self, o: &Self) -> Sector {
        if self.terms.keys().all(|m| m[1..=self.layout.n].iter().all(|&e| e == 0)) {
            o.sector
        } else {
            self.sector
        }
    }

    /// Coefficient of a full exponent vector; errors beyond the caps.
    pub fn coefficient(&self, m: &[i32]) -> Result<Rational, SeriesError> {
        if !within(&grades(&self.layout, self.sector, m), &self.caps) {
            return Err(SeriesError::Truncation(format!("monomial {m:?} lies beyond the caps {:?}", self.caps)));
        }
        Ok(self.terms.get(m).cloned().unwrap_or_else(|| int(0)))
    }

    /// The ħ-series multiplying `w^k` (and `u^0`).
    pub fn coefficient_series(&self, k: &[i32]) -> HbarSeries {
        let n = self.layout.n;
        let order = self.caps[0].min(sym_core::EXACT as i64) as i32;
        HbarSeries::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| &m[1..=n] == k && m[1 + n..].iter().all(|&x| x == 0))
                .map(|(m, c)| (m[0], c.clone())),
            order,
        )
    }

    pub fn add(&self, o: &Self) -> Result<Self, SeriesError> {
        self.check(o)?;
        let caps = self.caps.iter().zip(&o.caps).map(|(a, b)| *a.min(b)).collect();
        let mut s = Self::zero(self.layout, self.joint_sector(o), caps, self.hval.min(o.hval));
        for (m, c) in self.terms.iter().chain(o.terms.iter()) {
            s.add_term(m.clone(), c.clone());
        }
        Ok(s)
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        for c in s.terms.values_mut() {
            *c = -&*c;
        }
        s
    }

    pub fn sub(&self, o: &Self) -> Result<Self, SeriesError> {
        self.add(&o.neg())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if Ring::is_zero(q) {
            return Self::zero(self.layout, self.sector, self.caps.clone(), self.hval);
        }
        let mut s = self.clone();
        for c in s.terms.values_mut() {
            *c *= q;
        }
        s
    }

    pub fn mul(&self, o: &Self) -> Result<Self, SeriesError> {
        self.check(o)?;
        let sector = self.joint_sector(o);
        let caps: Vec<i64> = (0..self.caps.len())
            .map(|k| {
                let (va, vb) = if k == 0 { (self.hval, o.hval) } else { (0, 0) };
                sat(self.caps[k], vb).min(sat(o.caps[k], va))
            })
            .collect();
        let hval = sat(self.hval, o.hval);
        let ga: Vec<(&Mono, &Rational, Vec<i64>)> =
            self.terms.iter().map(|(m, c)| (m, c, grades(&self.layout, sector, m))).collect();
        let gb: Vec<(&Mono, &Rational, Vec<i64>)> =
            o.terms.iter().map(|(m, c)| (m, c, grades(&o.layout, sector, m))).collect();
        let mut acc: HashMap<Mono, Rational> = HashMap::new();
        let dims = self.layout.dims();
        for (ma, ca, ua) in &ga {
            'inner: for (mb, cb, ub) in &gb {
                for k in 0..caps.len() {
                    if ua[k] + ub[k] > caps[k] {
                        continue 'inner;
                    }
                }
                let m: Mono = (0..dims).map(|d| ma[d] + mb[d]).collect();
                let p = *ca * *cb;
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(p);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += p,
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !Ring::is_zero(c)).collect();
        Ok(MultiSeries { layout: self.layout, sector, caps, hval, terms })
    }

    /// Product with a univariate series in `w_i`.
    pub fn mul_univariate(&self, i: usize, f: &PowerSeries) -> Result<Self, SeriesError> {
        self.mul(&Self::embed(self.layout, self.sector, i, f))
    }

    /// Intersects the caps with `caps` and drops what falls outside.
    pub fn with_caps(&self, caps: &[i64]) -> Self {
        let caps: Vec<i64> = self.caps.iter().zip(caps).map(|(a, b)| *a.min(b)).collect();
        let mut s = Self::zero(self.layout, self.sector, caps, self.hval);
        for (m, c) in &self.terms {
            s.add_term(m.clone(), c.clone());
        }
        s
    }

    /// `w_i ∂_{w_i}`.
    pub fn theta(&self, i: usize) -> Self {
        let d = self.layout.w(i);
        let mut s = self.clone();
        s.terms = self
            .terms
            .iter()
            .filter(|(m, _)| m[d] != 0)
            .map(|(m, c)| (m.clone(), c * int(m[d] as i64)))
            .collect();
        s
    }

    /// Replaces each `w_i^k` by `w_i^k · Σ c ħ^a u_i^b` over the triples `(a, b, c)` of `eig(k)`; `a, b ≥ 0`.
    /// `order` is the ħ-truncation of the eigenvalue series relative to its own terms.
    pub fn apply_diagonal_with<F>(&self, i: usize, order: i64, eig: F) -> Self
    where
        F: Fn(i32) -> Vec<(i32, i32, Rational)>,
    {
        let d = self.layout.w(i);
        let mut caps = self.caps.clone();
        caps[0] = caps[0].min(sat(self.hval, order));
        let mut s = Self::zero(self.layout, self.sector, caps, self.hval);
        let mut memo: HashMap<i32, Vec<(i32, i32, Rational)>> = HashMap::new();
        for (m, c) in &self.terms {
            let ev = memo.entry(m[d]).or_insert_with(|| eig(m[d]));
            for (a, b, q) in ev.iter() {
                debug_assert!(*a >= 0 && *b >= 0);
                let mut m2 = m.clone();
                m2[0] += a;
                if *b != 0 {
                    m2[self.layout.u(i)] += b;
                }
                s.add_term(m2, c * q);
            }
        }
        s
    }

    /// Multiplies the coefficient of `w_i^k` by the ħ-series `eig(k)`.
    pub fn apply_diagonal<F>(&self, i: usize, eig: F) -> Result<Self, SeriesError>
    where
        F: Fn(i32) -> HbarSeries,
    {
        let d = self.layout.w(i);
        let mut order = UNBOUNDED;
        let mut memo: HashMap<i32, HbarSeries> = HashMap::new();
        for m in self.terms.keys() {
            let e = memo.entry(m[d]).or_insert_with(|| eig(m[d]));
            if e.valuation() < 0 {
                return Err(SeriesError::Valuation("diagonal eigenvalues must be ħ-power series".into()));
            }
            if !e.is_exact() {
                order = order.min(e.order() as i64);
            }
        }
        Ok(self.apply_diagonal_with(i, order, |k| {
            memo.get(&k).map(|e| e.terms().map(|(a, c)| (a, 0, c.clone())).collect()).unwrap_or_default()
        }))
    }

    /// `[u_i^r]`.
    pub fn u_coefficient(&self, i: usize, r: i32) -> Result<Self, SeriesError> {
        let d = self.layout.u(i);
        if r as i64 > self.caps[d] {
            return Err(SeriesError::Truncation(format!("[u_{}^{r}] beyond cap {}", i + 1, self.caps[d])));
        }
        let mut caps = self.caps.clone();
        caps[d] = UNBOUNDED;
        let mut s = Self::zero(self.layout, self.sector, caps, self.hval);
        for (m, c) in &self.terms {
            if m[d] == r {
                let mut m2 = m.clone();
                m2[d] = 0;
                s.add_term(m2, c.clone());
            }
        }
        Ok(s)
    }

    /// Largest `u_i`-degree present.
    pub fn u_degree(&self, i: usize) -> i32 {
        let d = self.layout.u(i);
        self.terms.keys().map(|m| m[d]).max().unwrap_or(0)
    }

    /// `[ħ^t]`, an ħ-free series.
    pub fn hbar_coefficient(&self, t: i32) -> Result<Self, SeriesError> {
        if t as i64 > self.caps[0] {
            return Err(SeriesError::Truncation(format!("[ħ^{t}] of a series known to ħ^{}", self.caps[0])));
        }
        let mut caps = self.caps.clone();
        caps[0] = UNBOUNDED;
        let mut s = Self::zero(self.layout, self.sector, caps, 0);
        for (m, c) in &self.terms {
            if m[0] == t {
                let mut m2 = m.clone();
                m2[0] = 0;
                s.add_term(m2, c.clone());
            }
        }
        Ok(s)
    }

    /// Multiplies by `ħ^k`.
    pub fn shift_hbar(&self, k: i32) -> Self {
        let mut s = self.clone();
        s.caps[0] = sat(s.caps[0], k as i64);
        s.hval = sat(s.hval, k as i64);
        s.terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m2 = m.clone();
                m2[0] += k;
                (m2, c.clone())
            })
            .collect();
        s
    }

    /// Lowers the ħ cap to `cap`.
    pub fn truncate_hbar(&self, cap: i64) -> Self {
        let mut caps = self.caps.clone();
        caps[0] = caps[0].min(cap);
        self.with_caps(&caps)
    }

    /// Substitutes `w_i = X_i R(X_i)` for `R = 1 + O(X)`: each `w_i^e` becomes `X_i^e R(X_i)^e`.
    pub fn substitute(&self, i: usize, ratio: &PowerSeries) -> Result<Self, SeriesError> {
        if ratio.coeff_unchecked(0) != int(1) {
            return Err(SeriesError::Valuation("substitution ratio must start with 1".into()));
        }
        let d = self.layout.w(i);
        let mut caps = self.caps.clone();
        let p = ratio.prec() as i64 - 1;
        for j in 0..self.layout.n {
            let covers = match self.sector {
                Sector::Ascending => j >= i,
                Sector::Descending => j <= i,
            };
            if covers {
                caps[1 + j] = caps[1 + j].min(p);
            }
        }
        let mut s = Self::zero(self.layout, self.sector, caps, self.hval);
        let mut memo: HashMap<i32, PowerSeries> = HashMap::new();
        for (m, c) in &self.terms {
            let e = m[d];
            if let std::collections::hash_map::Entry::Vacant(v) = memo.entry(e) {
                v.insert(ratio.powi(e as i64)?);
            }
            for (t, q) in memo[&e].coeffs().iter().enumerate() {
                if Ring::is_zero(q) {
                    continue;
                }
                let mut m2 = m.clone();
                m2[d] += t as i32;
                s.add_term(m2, c * q);
            }
        }
        Ok(s)
    }

    /// Smallest `w`-exponent present (0 for the zero series).
    pub fn min_w_exponent(&self) -> i32 {
        let n = self.layout.n;
        self.terms.keys().flat_map(|m| m[1..=n].iter().copied()).min().unwrap_or(0).min(0)
    }

    /// Errors when a negative `w`-exponent survives.
    pub fn assert_no_negative(&self) -> Result<(), SeriesError> {
        if self.min_w_exponent() < 0 {
            return Err(SeriesError::NegativeExponent);
        }
        Ok(())
    }

    /// The `w`- (and `u`-) part of each term at ħ-degree `t`, keyed by its `w`-exponents.
    pub fn w_terms(&self) -> impl Iterator<Item = (&[i32], &Rational)> + '_ {
        let n = self.layout.n;
        self.terms.iter().map(move |(m, c)| (&m[1..=n], c))
    }

    /// Re-expresses an ħ-free, `u`-free series in a layout with more variables or with `u`s,
    /// placing variable `k` of `self` at position `map[k]`.
    pub fn relabel(&self, target: Layout, map: &[usize]) -> Result<Self, SeriesError> {
        if map.len() != self.layout.n {
            return Err(SeriesError::Layout);
        }
        if self.sector == Sector::Descending || map.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SeriesError::Sector);
        }
        let mut caps = target.unbounded();
        caps[0] = self.caps[0];
        for (k, &t) in map.iter().enumerate() {
            caps[1 + t] = self.caps[1 + k];
        }
        if self.layout.with_u && target.with_u {
            for (k, &t) in map.iter().enumerate() {
                caps[target.u(t)] = self.caps[self.layout.u(k)];
            }
        }
        let mut s = Self::zero(target, Sector::Ascending, caps, self.hval);
        for (m, c) in &self.terms {
            let mut m2 = vec![0; target.dims()];
            m2[0] = m[0];
            for (k, &t) in map.iter().enumerate() {
                m2[1 + t] = m[1 + k];
                if self.layout.with_u {
                    if !target.with_u {
                        if m[self.layout.u(k)] != 0 {
                            return Err(SeriesError::Layout);
                        }
                    } else {
                        m2[target.u(t)] = m[self.layout.u(k)];
                    }
                }
            }
            s.add_term(m2, c.clone());
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lay(n: usize) -> Layout {
        Layout::new(n, false)
    }

    fn mono(h: i32, w: &[i32]) -> Vec<i32> {
        let mut m = vec![h];
        m.extend_from_slice(w);
        m
    }

    #[test]
    fn products_and_operators() {
        let l = lay(1);
        let a = MultiSeries::embed(l, Sector::Ascending, 0, &PowerSeries::new(vec![int(1), int(1)], 6));
        let b = MultiSeries::embed(l, Sector::Ascending, 0, &PowerSeries::new(vec![int(1), int(-1)], 6));
        let p = a.mul(&b).unwrap();
        assert_eq!(p.coefficient(&mono(0, &[2])).unwrap(), int(-1));
        assert_eq!(p.coefficient(&mono(0, &[1])).unwrap(), int(0));
        assert!(p.coefficient(&mono(0, &[6])).is_err());
        let f = MultiSeries::embed(l, Sector::Ascending, 0, &PowerSeries::new(vec![int(0), int(2), int(3)], 6));
        assert_eq!(f.theta(0).coefficient(&mono(0, &[2])).unwrap(), int(6));
    }

    #[test]
    fn sigma_eigenvector() {
        let l = Layout::new(1, true);
        let mut w3 = MultiSeries::zero(l, Sector::Ascending, l.unbounded(), 0);
        w3.add_term(vec![0, 3, 0], int(1));
        let s = crate::power::sigma_even_coeffs(3);
        let out = w3.apply_diagonal_with(0, 4, |k| {
            (0..3).map(|j| (2 * j as i32, 2 * j as i32, &s[j] * int((k as i64).pow(2 * j as u32)))).collect()
        });
        assert_eq!(out.coefficient(&[0, 3, 0]).unwrap(), int(1));
        assert_eq!(out.coefficient(&[2, 3, 2]).unwrap(), sym_core::rat(9, 24));
        assert!(out.coefficient(&[6, 3, 6]).is_err());
    }

    #[test]
    fn kernel_coefficients_and_sectors() {
        let l = lay(2);
        let caps = l.degree_caps(6);
        let k = MultiSeries::kernel(l, 0, 1, caps.clone()).unwrap();
        assert_eq!(k.coefficient(&mono(0, &[1, -1])).unwrap(), int(1));
        assert_eq!(k.coefficient(&mono(0, &[3, -3])).unwrap(), int(3));
        assert!(MultiSeries::kernel(l, 1, 0, caps.clone()).is_err());
        let d = MultiSeries::kernel_descending(l, 0, 1, l.unbounded().iter().enumerate().map(|(i, c)| if i == 1 || i == 2 { 5 } else { *c }).collect()).unwrap();
        assert!(k.add(&d).is_err());
        // (w1 - w2)^2 K = w1 w2 in both sectors, away from the truncation edge.
        for (ker, sector) in [(k, Sector::Ascending), (d, Sector::Descending)] {
            let mut sq = MultiSeries::zero(l, sector, l.unbounded(), 0);
            sq.add_term(mono(0, &[2, 0]), int(1));
            sq.add_term(mono(0, &[1, 1]), int(-2));
            sq.add_term(mono(0, &[0, 2]), int(1));
            let prod = sq.mul(&ker).unwrap();
            for (m, c) in prod.terms() {
                let edge = m[1].abs() >= 4 || m[2].abs() >= 4;
                if !edge {
                    assert_eq!((m.as_slice(), c), (mono(0, &[1, 1]).as_slice(), &int(1)));
                }
            }
        }
    }

    #[test]
    fn hbar_tracking() {
        let l = lay(1);
        let mut a = MultiSeries::zero(l, Sector::Ascending, l.unbounded().iter().enumerate().map(|(i, c)| if i == 0 { 3 } else { *c }).collect(), -1);
        a.add_term(mono(-1, &[0]), int(1));
        a.add_term(mono(1, &[1]), int(2));
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq.caps()[0], 2);
        assert_eq!(sq.coefficient(&mono(0, &[1])).unwrap(), int(4));
        assert!(sq.hbar_coefficient(3).is_err());
        assert_eq!(sq.hbar_coefficient(-2).unwrap().coefficient(&mono(0, &[0])).unwrap(), int(1));
    }

    #[test]
    fn substitution_matches_composition() {
        // w = X(1+X): w^2 → X^2 (1+X)^2
        let l = lay(1);
        let mut f = MultiSeries::zero(l, Sector::Ascending, l.degree_caps(5), 0);
        f.add_term(mono(0, &[2]), int(1));
        let r = PowerSeries::new(vec![int(1), int(1)], 8);
        let g = f.substitute(0, &r).unwrap();
        assert_eq!(g.coefficient(&mono(0, &[3])).unwrap(), int(2));
        assert_eq!(g.coefficient(&mono(0, &[4])).unwrap(), int(1));
    }
}
