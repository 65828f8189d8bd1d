//! Univariate truncated power series over ℚ.

use crate::SeriesError;
use sym_core::{int, Rational, Ring};

/// `Σ_{k < prec} c_k w^k + O(w^prec)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
    prec: usize,
}

impl PowerSeries {
    pub fn new(mut coeffs: Vec<Rational>, prec: usize) -> Self {
        coeffs.truncate(prec);
        let mut s = PowerSeries { coeffs, prec };
        s.trim();
        s
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Ring::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn zero(prec: usize) -> Self {
        PowerSeries { coeffs: Vec::new(), prec }
    }

    pub fn one(prec: usize) -> Self {
        Self::constant(int(1), prec)
    }

    pub fn constant(c: Rational, prec: usize) -> Self {
        Self::new(vec![c], prec)
    }

    pub fn monomial(c: Rational, k: usize, prec: usize) -> Self {
        let mut v = vec![int(0); k + 1];
        v[k] = c;
        Self::new(v, prec)
    }

    /// The variable `w`.
    pub fn var(prec: usize) -> Self {
        Self::monomial(int(1), 1, prec)
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn coeff(&self, k: usize) -> Result<Rational, SeriesError> {
        if k >= self.prec {
            return Err(SeriesError::Truncation(format!("[w^{k}] of a series known mod w^{}", self.prec)));
        }
        Ok(self.coeff_unchecked(k))
    }

    pub fn coeff_unchecked(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(|| int(0))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !Ring::is_zero(c)).unwrap_or(self.prec)
    }

    pub fn truncate(&self, prec: usize) -> Self {
        Self::new(self.coeffs.clone(), prec.min(self.prec))
    }

    pub fn add(&self, o: &Self) -> Self {
        let prec = self.prec.min(o.prec);
        let v = (0..prec.min(self.coeffs.len().max(o.coeffs.len())))
            .map(|k| self.coeff_unchecked(k) + o.coeff_unchecked(k))
            .collect();
        Self::new(v, prec)
    }

    pub fn neg(&self) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|c| -c).collect(), prec: self.prec }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * q).collect(), self.prec)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let prec = (self.prec + o.valuation()).min(o.prec + self.valuation());
        let len = prec.min((self.coeffs.len() + o.coeffs.len()).saturating_sub(1));
        let mut v = vec![int(0); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Ring::is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(len.saturating_sub(i)) {
                v[i + j] += a * b;
            }
        }
        Self::new(v, prec)
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let c0 = self.coeff_unchecked(0);
        if Ring::is_zero(&c0) {
            return Err(SeriesError::Valuation("inverse of a series without constant term".into()));
        }
        let inv0 = c0.recip();
        let mut out = vec![inv0.clone()];
        for k in 1..self.prec {
            let mut s = int(0);
            for j in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                s += &self.coeffs[j] * &out[k - j];
            }
            out.push(-s * &inv0);
        }
        Ok(Self::new(out, self.prec))
    }

    /// `f^e` for any integer `e`; negative powers need a nonzero constant term.
    pub fn powi(&self, e: i64) -> Result<Self, SeriesError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Self::one(self.prec);
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&sq);
            }
            n >>= 1;
            if n > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// `w ∂_w`.
    pub fn theta(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().map(|(k, c)| c * int(k as i64)).collect(), self.prec)
    }

    /// `∂_w`.
    pub fn derivative(&self) -> Self {
        let v = self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * int(k as i64)).collect();
        Self::new(v, self.prec.saturating_sub(1))
    }

    /// Divides by `w^k`; the first `k` coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self, SeriesError> {
        if self.valuation() < k {
            return Err(SeriesError::Valuation(format!("series not divisible by w^{k}")));
        }
        Ok(Self::new(self.coeffs.iter().skip(k).cloned().collect(), self.prec.saturating_sub(k)))
    }

    pub fn shift_up(&self, k: usize) -> Self {
        let mut v = vec![int(0); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v, self.prec + k)
    }

    /// `f(g(w))` for `g = O(w)`.
    pub fn compose(&self, g: &Self) -> Result<Self, SeriesError> {
        if !Ring::is_zero(&g.coeff_unchecked(0)) {
            return Err(SeriesError::Valuation("inner series must vanish at 0".into()));
        }
        let gv = g.valuation().max(1);
        let prec = (self.prec * gv).min(g.prec);
        let mut acc = Self::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).truncate(prec).add(&Self::constant(c.clone(), prec));
        }
        Ok(acc.truncate(prec))
    }

    /// `log f` for `f = 1 + O(w)`.
    pub fn ln(&self) -> Result<Self, SeriesError> {
        if self.coeff_unchecked(0) != int(1) {
            return Err(SeriesError::Valuation("log needs constant term 1".into()));
        }
        // θ log f = θf / f
        let q = self.theta().mul(&self.inverse()?);
        let v = q.coeffs.iter().enumerate().map(|(k, c)| if k == 0 { int(0) } else { c / int(k as i64) }).collect();
        Ok(Self::new(v, self.prec))
    }

    /// `exp f` for `f = O(w)`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !Ring::is_zero(&self.coeff_unchecked(0)) {
            return Err(SeriesError::Valuation("exp needs vanishing constant term".into()));
        }
        // θE = E θf
        let tf = self.theta();
        let mut e = vec![int(1)];
        for k in 1..self.prec {
            let mut s = int(0);
            for j in 1..=k {
                s += tf.coeff_unchecked(j) * &e[k - j];
            }
            e.push(s / int(k as i64));
        }
        Ok(Self::new(e, self.prec))
    }

    /// Compositional inverse of `X(w) = w + O(w²)`: returns `w(X)` with the same precision.
    pub fn lagrange_invert(&self) -> Result<Self, SeriesError> {
        if !Ring::is_zero(&self.coeff_unchecked(0)) || self.coeff_unchecked(1) != int(1) {
            return Err(SeriesError::Valuation("Lagrange inversion needs X = w + O(w^2)".into()));
        }
        let phi = self.shift_down(1)?.inverse()?;
        let mut v = vec![int(0)];
        let mut pw = PowerSeries::one(phi.prec);
        for n in 1..self.prec {
            pw = pw.mul(&phi);
            v.push(pw.coeff_unchecked(n - 1) / int(n as i64));
        }
        Ok(Self::new(v, self.prec))
    }
}

/// `ς(x) = sinh(x/2)/(x/2) = Σ_j x^{2j} / (4^j (2j+1)!)`: coefficients `s_0, s_1, …` of `x^{2j}`.
pub fn sigma_even_coeffs(terms: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(terms);
    let mut fact = int(1);
    let mut four = int(1);
    for j in 0..terms {
        if j > 0 {
            fact *= int((2 * j) as i64) * int((2 * j + 1) as i64);
            four *= int(4);
        }
        out.push((&fact * &four).recip());
    }
    out
}

/// Even-indexed coefficients of `1/ς(x)`.
pub fn inv_sigma_even_coeffs(terms: usize) -> Vec<Rational> {
    let s = sigma_even_coeffs(terms);
    let ser = PowerSeries::new(s, terms);
    ser.inverse().expect("ς(0) = 1").coeffs().to_vec().into_iter().chain(std::iter::repeat(int(0))).take(terms).collect()
}

/// `ς` as an ħ-series: `Σ_{2j ≤ k} s_j ħ^{2j}` known to `ħ^k`.
pub fn sigma_series(k: usize) -> sym_core::HbarSeries {
    let s = sigma_even_coeffs(k / 2 + 1);
    sym_core::HbarSeries::from_terms(s.into_iter().enumerate().map(|(j, c)| (2 * j as i32, c)), k as i32)
}

/// Coefficients `t_j(v)` (polynomials in `v`, constant first) of `ς(vx)/ς(x) = Σ_j t_j(v) x^{2j}`.
pub fn sigma_ratio_coeffs(terms: usize) -> Vec<Vec<Rational>> {
    let s = sigma_even_coeffs(terms);
    let inv = inv_sigma_even_coeffs(terms);
    (0..terms)
        .map(|j| {
            // t_j(v) = Σ_{a+b=j} s_a v^{2a} inv_b
            let mut p = vec![int(0); 2 * j + 1];
            for a in 0..=j {
                p[2 * a] += &s[a] * &inv[j - a];
            }
            p
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use sym_core::rat;

    fn ps(v: &[i64], prec: usize) -> PowerSeries {
        PowerSeries::new(v.iter().map(|&x| int(x)).collect(), prec)
    }

    #[test]
    fn arithmetic() {
        assert_eq!(ps(&[1, 1], 8).mul(&ps(&[1, -1], 8)), ps(&[1, 0, -1], 8));
        assert_eq!(ps(&[0, 1, 2, 3], 6).theta(), ps(&[0, 1, 4, 9], 6));
        let f = ps(&[1, 2, 0, 5], 9);
        assert_eq!(f.mul(&f.inverse().unwrap()), PowerSeries::one(9));
        assert_eq!(f.powi(-2).unwrap().mul(&f.powi(2).unwrap()), PowerSeries::one(9));
        let g = ps(&[0, 1, 3], 9);
        assert_eq!(g.exp().unwrap().ln().unwrap(), g);
    }

    #[test]
    fn sigma() {
        let s = sigma_even_coeffs(3);
        assert_eq!(s, vec![int(1), rat(1, 24), rat(1, 1920)]);
        let h = sigma_series(12);
        for e in (1..=11).step_by(2) {
            assert_eq!(h.coeff(e).unwrap(), int(0));
        }
        let t = sigma_ratio_coeffs(3);
        assert_eq!(t[0], vec![int(1)]);
        assert_eq!(t[1], vec![rat(-1, 24), int(0), rat(1, 24)]);
    }

    #[test]
    fn catalan_inversion() {
        // X = w / (1 + w²)
        let x = ps(&[0, 1], 12).mul(&ps(&[1, 0, 1], 12).inverse().unwrap());
        let w = x.lagrange_invert().unwrap();
        assert_eq!(w, ps(&[0, 1, 0, 1, 0, 2, 0, 5, 0, 14, 0, 42], 12));
        assert_eq!(x.compose(&w).unwrap(), PowerSeries::var(12));
        assert_eq!(PowerSeries::var(7).lagrange_invert().unwrap(), PowerSeries::var(7));
        assert!(ps(&[0, 2], 5).lagrange_invert().is_err());
    }
}
