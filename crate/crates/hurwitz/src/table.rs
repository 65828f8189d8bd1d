//! Hurwitz tables, their ħ-series, on-disk cache and the orthogonality check.

use crate::count::tally;
use crate::{HurwitzError, Kind};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Mutex;
use sym_core::rational::as_string;
use sym_core::{int, partitions, HbarSeries, Partition, Rational, Ring, EXACT};

/// Largest `d` accepted for whole-table construction.
pub const TABLE_BOUND: usize = 6;

static CACHE_LOCK: Mutex<()> = Mutex::new(());

#[derive(Clone, Debug, PartialEq)]
pub struct HurwitzTable {
    pub d: usize,
    pub kind: Kind,
    /// Largest `r` tabulated; every `r` up to it is complete.
    pub max_r: usize,
    pub values: BTreeMap<(Partition, Partition, usize), Rational>,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    lambda: Partition,
    nu: Partition,
    r: usize,
    #[serde(with = "as_string")]
    value: Rational,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    d: usize,
    kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hbar: Option<usize>,
    entries: Vec<EntryJson>,
}

impl HurwitzTable {
    /// Tabulates every `(λ, ν, r)` with `r ≤ max_r` (strict and free single stop at `d - 1`).
    pub fn build(d: usize, kind: Kind, max_r: usize) -> Result<Self, HurwitzError> {
        if d > TABLE_BOUND {
            return Err(HurwitzError::BoundExceeded { d, bound: TABLE_BOUND });
        }
        let max_r = match kind {
            Kind::Weak => max_r,
            _ => max_r.min(d.saturating_sub(1)),
        };
        let rows: Vec<_> = partitions(d)
            .into_par_iter()
            .map(|lambda| {
                let z = lambda.z();
                let t = tally(&lambda, kind, max_r);
                t.into_iter()
                    .filter(|((_, r), _)| *r <= max_r)
                    .map(|((nu, r), c)| ((lambda.clone(), nu, r), Rational::from_integer(c.into()) / &z))
                    .collect::<Vec<_>>()
            })
            .collect();
        Ok(HurwitzTable { d, kind, max_r, values: rows.into_iter().flatten().collect() })
    }

    pub fn get(&self, lambda: &Partition, nu: &Partition, r: usize) -> Rational {
        self.values.get(&(lambda.clone(), nu.clone(), r)).cloned().unwrap_or_else(|| int(0))
    }

    /// `H^<(λ,ν) = Σ ħ^r H^<_r`, `H^≤ = Σ (-ħ)^r H^≤_r` (to `ħ^max_r`), `H^| = Σ ħ^r H^|_r`.
    pub fn series(&self, lambda: &Partition, nu: &Partition) -> HbarSeries {
        let order = match self.kind {
            Kind::Weak => self.max_r as i32,
            _ => EXACT,
        };
        let sign = |r: usize| if self.kind == Kind::Weak && r % 2 == 1 { int(-1) } else { int(1) };
        HbarSeries::from_terms((0..=self.max_r).map(|r| (r as i32, sign(r) * self.get(lambda, nu, r))), order)
    }

    pub fn to_json(&self) -> String {
        let entries = self
            .values
            .iter()
            .map(|((l, n, r), v)| EntryJson { lambda: l.clone(), nu: n.clone(), r: *r, value: v.clone() })
            .collect();
        let hbar = (self.kind == Kind::Weak).then_some(self.max_r);
        serde_json::to_string_pretty(&TableJson { d: self.d, kind: self.kind, hbar, entries }).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, HurwitzError> {
        let t: TableJson = serde_json::from_str(s).map_err(|e| HurwitzError::Format(e.to_string()))?;
        let max_r = t.hbar.unwrap_or(t.d.saturating_sub(1));
        let mut values = BTreeMap::new();
        for e in t.entries {
            if e.lambda.size() != t.d || e.nu.size() != t.d {
                return Err(HurwitzError::Format(format!("entry {} / {} does not have size {}", e.lambda, e.nu, t.d)));
            }
            values.insert((e.lambda, e.nu, e.r), e.value);
        }
        Ok(HurwitzTable { d: t.d, kind: t.kind, max_r, values })
    }

    fn cache_path(d: usize, kind: Kind, max_r: usize) -> Option<PathBuf> {
        let dir = std::env::var_os("FREEHOP_CACHE")?;
        let name = match kind {
            Kind::Weak => format!("{}-d{d}-r{max_r}.json", kind.name()),
            _ => format!("{}-d{d}.json", kind.name()),
        };
        Some(PathBuf::from(dir).join(name))
    }

    /// Like [`HurwitzTable::build`], reading and writing `$FREEHOP_CACHE` when set.
    pub fn cached(d: usize, kind: Kind, max_r: usize) -> Result<Self, HurwitzError> {
        if d > TABLE_BOUND {
            return Err(HurwitzError::BoundExceeded { d, bound: TABLE_BOUND });
        }
        let max_r = match kind {
            Kind::Weak => max_r,
            _ => d.saturating_sub(1),
        };
        let Some(path) = Self::cache_path(d, kind, max_r) else {
            return Self::build(d, kind, max_r);
        };
        if let Ok(s) = std::fs::read_to_string(&path) {
            if let Ok(t) = Self::from_json(&s) {
                if t.d == d && t.kind == kind && t.max_r == max_r {
                    return Ok(t);
                }
            }
        }
        let t = Self::build(d, kind, max_r)?;
        let _guard = CACHE_LOCK.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        std::fs::write(&tmp, t.to_json())?;
        std::fs::rename(&tmp, &path)?;
        Ok(t)
    }
}

/// Generating series of a single pair.
pub fn hurwitz_series(lambda: &Partition, nu: &Partition, kind: Kind, k: usize) -> Result<HbarSeries, HurwitzError> {
    if lambda.size() != nu.size() {
        return Err(HurwitzError::SizeMismatch(lambda.size(), nu.size()));
    }
    let d = lambda.size();
    let max_r = if kind == Kind::Weak { k } else { d.saturating_sub(1) };
    let t = tally(lambda, kind, max_r);
    let z = lambda.z();
    let order = if kind == Kind::Weak { k as i32 } else { EXACT };
    let terms = t.into_iter().filter(|((n, r), _)| n == nu && *r <= max_r).map(|((_, r), c)| {
        let v = Rational::from_integer(c.into()) / &z;
        (r as i32, if kind == Kind::Weak && r % 2 == 1 { -v } else { v })
    });
    let s = HbarSeries::from_terms(terms, order);
    Ok(if kind == Kind::Weak { s } else { s.truncate(order) })
}

#[derive(Clone, Debug, Serialize)]
pub struct Residual {
    pub identity: &'static str,
    pub lambda: Partition,
    pub nu: Partition,
    pub residual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrthogonalityReport {
    pub d: usize,
    pub hbar: usize,
    pub residuals: Vec<Residual>,
    pub pass: bool,
}

/// Checks `Σ_ρ z(λ)H^<(λ,ρ) z(ρ)H^≤(ρ,ν) = δ_{λν}` and the reversed product up to `ħ^k`.
pub fn verify_orthogonality(d: usize, k: usize) -> Result<OrthogonalityReport, HurwitzError> {
    let strict = HurwitzTable::cached(d, Kind::Strict, d)?;
    let weak = HurwitzTable::cached(d, Kind::Weak, k)?;
    let parts = partitions(d);
    let ko = k as i32;
    let a: Vec<Vec<HbarSeries>> = parts
        .iter()
        .map(|l| parts.iter().map(|n| strict.series(l, n).scale(&l.z()).truncate(ko)).collect())
        .collect();
    let b: Vec<Vec<HbarSeries>> =
        parts.iter().map(|l| parts.iter().map(|n| weak.series(l, n).scale(&l.z())).collect()).collect();
    let mut residuals = Vec::new();
    for (name, x, y) in [("strict*weak", &a, &b), ("weak*strict", &b, &a)] {
        for (i, l) in parts.iter().enumerate() {
            for (j, n) in parts.iter().enumerate() {
                let mut s = HbarSeries::zero_to(ko);
                for m in 0..parts.len() {
                    s = s.add(&x[i][m].mul(&y[m][j]));
                }
                if i == j {
                    s = s.sub(&HbarSeries::one_to(ko));
                }
                let s = s.truncate(ko);
                residuals.push(Residual {
                    identity: name,
                    lambda: l.clone(),
                    nu: n.clone(),
                    pass: s.is_zero() && s.order() >= ko,
                    residual: s.to_string(),
                });
            }
        }
    }
    let pass = residuals.iter().all(|r| r.pass);
    Ok(OrthogonalityReport { d, hbar: k, residuals, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use sym_core::rat;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn series_examples() {
        assert_eq!(hurwitz_series(&p(&[1]), &p(&[1]), Kind::Strict, 3).unwrap(), HbarSeries::one_to(EXACT));
        let s = hurwitz_series(&p(&[2]), &p(&[1, 1]), Kind::Strict, 3).unwrap();
        assert_eq!(s, HbarSeries::monomial(rat(1, 2), 1, EXACT));
        let w = hurwitz_series(&p(&[2]), &p(&[2]), Kind::Weak, 3).unwrap();
        assert_eq!(w, HbarSeries::from_terms([(0, rat(1, 2)), (2, rat(1, 2))], 3));
    }

    #[test]
    fn orthogonality_small() {
        for d in 1..=3 {
            assert!(verify_orthogonality(d, 6).unwrap().pass);
        }
    }

    #[test]
    fn json_round_trip() {
        let t = HurwitzTable::build(3, Kind::Weak, 3).unwrap();
        let back = HurwitzTable::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
        let t = HurwitzTable::build(4, Kind::Strict, 9).unwrap();
        assert_eq!(t.max_r, 3);
        assert_eq!(HurwitzTable::from_json(&t.to_json()).unwrap(), t);
        assert!(HurwitzTable::build(7, Kind::Strict, 1).is_err());
    }
}
