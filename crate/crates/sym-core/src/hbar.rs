//! Truncated Laurent series in ħ with exact rational coefficients.
//!
//! A series stores the coefficients of `ħ^floor, ħ^(floor+1), ...` and an
//! `order`: every exponent `<= order` is known exactly, nothing above it is.
//! Exact polynomials carry [`EXACT`] as their order.

use crate::rational::{int, Rational, Ring};
use std::fmt;

/// Order marker for series that are exact polynomials.
pub const EXACT: i32 = i32::MAX / 4;

#[derive(Clone, Debug)]
pub struct HbarSeries {
    floor: i32,
    coeffs: Vec<Rational>,
    order: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("coefficient of hbar^{requested} requested but series is only known up to hbar^{order}")]
pub struct TruncationError {
    pub requested: i32,
    pub order: i32,
}

fn sat(a: i32, b: i32) -> i32 {
    a.saturating_add(b).min(EXACT)
}

impl HbarSeries {
    pub fn zero_to(order: i32) -> Self {
        HbarSeries { floor: 0, coeffs: Vec::new(), order }
    }

    pub fn exact_zero() -> Self {
        Self::zero_to(EXACT)
    }

    pub fn constant(c: Rational, order: i32) -> Self {
        Self::monomial(c, 0, order)
    }

    pub fn one_to(order: i32) -> Self {
        Self::constant(int(1), order)
    }

    /// `c ħ^e`, truncated at `order`.
    pub fn monomial(c: Rational, e: i32, order: i32) -> Self {
        if e > order {
            return Self::zero_to(order);
        }
        let mut s = HbarSeries { floor: e, coeffs: vec![c], order };
        s.normalize();
        s
    }

    /// Polynomial `Σ c_i ħ^(floor+i)` truncated at `order`.
    pub fn from_coeffs(floor: i32, coeffs: Vec<Rational>, order: i32) -> Self {
        let mut s = HbarSeries { floor, coeffs, order };
        s.normalize();
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, Rational)>>(terms: I, order: i32) -> Self {
        let mut s = Self::zero_to(order);
        for (e, c) in terms {
            s.add_term(e, &c);
        }
        s
    }

    fn normalize(&mut self) {
        let top = self.order as i64 - self.floor as i64 + 1;
        if top <= 0 {
            self.coeffs.clear();
        } else if (self.coeffs.len() as i64) > top {
            self.coeffs.truncate(top as usize);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.floor = 0;
        } else if lead > 0 {
            self.coeffs.drain(..lead);
            self.floor += lead as i32;
        }
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order >= EXACT
    }

    /// Lowest exponent with a nonzero coefficient, or `order + 1` if none is known.
    pub fn valuation(&self) -> i32 {
        if self.coeffs.is_empty() {
            sat(self.order, 1)
        } else {
            self.floor
        }
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn degree(&self) -> Option<i32> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.floor + self.coeffs.len() as i32 - 1)
        }
    }

    pub fn coeff(&self, e: i32) -> Result<Rational, TruncationError> {
        if e > self.order {
            return Err(TruncationError { requested: e, order: self.order });
        }
        Ok(self.coeff_unchecked(e))
    }

    /// Coefficient of `ħ^e`; exponents above the order read as zero.
    pub fn coeff_unchecked(&self, e: i32) -> Rational {
        let i = e as i64 - self.floor as i64;
        if i < 0 || i >= self.coeffs.len() as i64 {
            Rational::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.floor + i as i32, c))
    }

    pub fn add_term(&mut self, e: i32, c: &Rational) {
        if e > self.order || c.is_zero() {
            return;
        }
        if self.coeffs.is_empty() {
            self.floor = e;
            self.coeffs.push(c.clone());
            return;
        }
        if e < self.floor {
            let shift = (self.floor - e) as usize;
            let mut v = vec![Rational::zero(); shift];
            v.append(&mut self.coeffs);
            self.coeffs = v;
            self.floor = e;
        }
        let i = (e - self.floor) as usize;
        if i >= self.coeffs.len() {
            self.coeffs.resize(i + 1, Rational::zero());
        }
        self.coeffs[i] += c;
        self.normalize();
    }

    pub fn truncate(&self, order: i32) -> Self {
        let mut s = self.clone();
        s.order = s.order.min(order);
        s.normalize();
        s
    }

    /// Multiplies by `ħ^k`.
    pub fn shift(&self, k: i32) -> Self {
        HbarSeries { floor: self.floor + k, coeffs: self.coeffs.clone(), order: sat(self.order, k) }
    }

    /// Substitutes ħ → −ħ.
    pub fn negate_hbar(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if (self.floor + i as i32).rem_euclid(2) == 1 { -c } else { c.clone() })
            .collect();
        HbarSeries { floor: self.floor, coeffs, order: self.order }
    }

    /// Multiplicative inverse; requires a nonzero lowest coefficient known to the order.
    pub fn inverse(&self) -> Option<Self> {
        if self.coeffs.is_empty() {
            return None;
        }
        let v = self.floor;
        let rel = if self.is_exact() { None } else { Some(self.order - v) };
        let rel = rel?;
        let a0 = self.coeffs[0].clone();
        let n = rel as usize + 1;
        let mut b = vec![Rational::zero(); n];
        b[0] = a0.recip();
        for k in 1..n {
            let mut s = Rational::zero();
            for j in 1..=k {
                if j < self.coeffs.len() {
                    s += &self.coeffs[j] * &b[k - j];
                }
            }
            b[k] = -s * &b[0];
        }
        Some(HbarSeries::from_coeffs(-v, b, rel - v))
    }

    /// True if both series agree on every exponent up to `k`.
    pub fn agrees_up_to(&self, other: &Self, k: i32) -> bool {
        if self.order < k || other.order < k {
            return false;
        }
        let lo = self.floor.min(other.floor);
        (lo..=k).all(|e| self.coeff_unchecked(e) == other.coeff_unchecked(e))
    }

    /// Equal on the common range of known exponents.
    pub fn compatible(&self, other: &Self) -> bool {
        let k = self.order.min(other.order);
        let lo = self.floor.min(other.floor);
        let hi = k.min(self.degree().unwrap_or(lo).max(other.degree().unwrap_or(lo)));
        (lo..=hi).all(|e| self.coeff_unchecked(e) == other.coeff_unchecked(e))
    }
}

impl PartialEq for HbarSeries {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.floor == other.floor && self.coeffs == other.coeffs
            || (self.order == other.order && self.coeffs.is_empty() && other.coeffs.is_empty())
    }
}

impl Ring for HbarSeries {
    fn zero() -> Self {
        Self::exact_zero()
    }
    fn one() -> Self {
        Self::one_to(EXACT)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        if self.coeffs.is_empty() {
            return other.truncate(order);
        }
        if other.coeffs.is_empty() {
            return self.truncate(order);
        }
        let floor = self.floor.min(other.floor);
        let top = self.degree().unwrap().max(other.degree().unwrap()).min(order);
        if top < floor {
            return Self::zero_to(order);
        }
        let coeffs = (floor..=top)
            .map(|e| self.coeff_unchecked(e) + other.coeff_unchecked(e))
            .collect();
        HbarSeries::from_coeffs(floor, coeffs, order)
    }
    fn mul(&self, other: &Self) -> Self {
        let order = sat(self.order, other.valuation()).min(sat(other.order, self.valuation()));
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero_to(order);
        }
        let floor = self.floor + other.floor;
        let len = ((order as i64 - floor as i64 + 1).max(0) as usize)
            .min(self.coeffs.len() + other.coeffs.len() - 1);
        let mut coeffs = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len || a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        HbarSeries::from_coeffs(floor, coeffs, order)
    }
    fn neg(&self) -> Self {
        HbarSeries { floor: self.floor, coeffs: self.coeffs.iter().map(|c| -c).collect(), order: self.order }
    }
    fn scale(&self, q: &Rational) -> Self {
        let mut s = HbarSeries { floor: self.floor, coeffs: self.coeffs.iter().map(|c| c * q).collect(), order: self.order };
        s.normalize();
        s
    }
    fn from_rational(q: Rational) -> Self {
        Self::constant(q, EXACT)
    }
}

impl fmt::Display for HbarSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})h")?,
                _ => write!(f, "({c})h^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        if !self.is_exact() {
            write!(f, " + O(h^{})", self.order + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn poly(floor: i32, c: &[i64], order: i32) -> HbarSeries {
        HbarSeries::from_coeffs(floor, c.iter().map(|&x| int(x)).collect(), order)
    }

    #[test]
    fn product_tracks_order() {
        let a = poly(0, &[1, 1], 5);
        let b = poly(-1, &[1, 0, 2], 3);
        let p = a.mul(&b);
        assert_eq!(p.order(), 3);
        assert_eq!(p.coeff(-1).unwrap(), int(1));
        assert_eq!(p.coeff(0).unwrap(), int(1));
        assert_eq!(p.coeff(1).unwrap(), int(2));
        assert_eq!(p.coeff(2).unwrap(), int(2));
        assert!(p.coeff(4).is_err());
    }

    #[test]
    fn inverse_of_geometric() {
        let a = poly(0, &[1, -1], 6);
        let inv = a.inverse().unwrap();
        for e in 0..=6 {
            assert_eq!(inv.coeff(e).unwrap(), int(1));
        }
        let b = poly(1, &[2, 1], 5);
        let p = b.mul(&b.inverse().unwrap());
        assert_eq!(p.coeff(0).unwrap(), int(1));
        for e in 1..=p.order() {
            assert_eq!(p.coeff(e).unwrap(), int(0));
        }
    }

    #[test]
    fn add_and_cancel() {
        let a = poly(0, &[1, 2, 3], EXACT);
        let b = poly(0, &[-1, -2, -3], 7);
        let s = a.add(&b);
        assert!(Ring::is_zero(&s));
        assert_eq!(s.order(), 7);
        assert_eq!(s.valuation(), 8);
    }

    #[test]
    fn negate_hbar_flips_odd() {
        let a = poly(-1, &[1, 1, 1], EXACT);
        let n = a.negate_hbar();
        assert_eq!(n.coeff(-1).unwrap(), int(-1));
        assert_eq!(n.coeff(0).unwrap(), int(1));
        assert_eq!(n.coeff(1).unwrap(), int(-1));
        assert_eq!(a.scale(&rat(1, 2)).coeff(0).unwrap(), rat(1, 2));
    }
}
