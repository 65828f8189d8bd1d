//! Genus-graded coefficient tables `F_{g;k_1,…,k_n}` and their `n`-point series.

use crate::multi::{Layout, MultiSeries, Sector};
use crate::SeriesError;
use itertools::Itertools;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use sym_core::rational::as_string;
use sym_core::{int, Rational, Ring};

/// Symmetric table keyed by doubled genus and the weakly decreasing tuple `k`.
///
/// `degree` is the largest total degree `Σ k_i` the table is complete for;
/// `None` means every absent entry is an exact zero.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CoefficientTable {
    pub degree: Option<usize>,
    entries: BTreeMap<(u32, Vec<usize>), Rational>,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    g2: u32,
    k: Vec<usize>,
    #[serde(with = "as_string")]
    value: Rational,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    degree: Option<usize>,
    entries: Vec<EntryJson>,
}

fn sorted(k: &[usize]) -> Vec<usize> {
    let mut v = k.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

impl CoefficientTable {
    pub fn new(degree: Option<usize>) -> Self {
        CoefficientTable { degree, entries: BTreeMap::new() }
    }

    pub fn get(&self, g2: u32, k: &[usize]) -> Rational {
        self.entries.get(&(g2, sorted(k))).cloned().unwrap_or_else(|| int(0))
    }

    /// Like [`CoefficientTable::get`] but errors beyond the table's degree.
    pub fn get_checked(&self, g2: u32, k: &[usize]) -> Result<Rational, SeriesError> {
        let d: usize = k.iter().sum();
        if self.degree.is_some_and(|deg| d > deg) {
            return Err(SeriesError::Truncation(format!("table known to degree {} but degree {d} requested", self.degree.unwrap())));
        }
        Ok(self.get(g2, k))
    }

    pub fn set(&mut self, g2: u32, k: &[usize], v: Rational) {
        assert!(k.iter().all(|&x| x > 0), "exponents must be positive");
        let key = (g2, sorted(k));
        if Ring::is_zero(&v) {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, v);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, &[usize], &Rational)> + '_ {
        self.entries.iter().map(|((g, k), v)| (*g, k.as_slice(), v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Doubled genera present.
    pub fn genera(&self) -> Vec<u32> {
        self.entries.keys().map(|(g, _)| *g).unique().collect()
    }

    /// Entries of one `(g, n)` sector.
    pub fn sector(&self, g2: u32, n: usize) -> impl Iterator<Item = (&[usize], &Rational)> + '_ {
        self.entries.iter().filter(move |((g, k), _)| *g == g2 && k.len() == n).map(|((_, k), v)| (k.as_slice(), v))
    }

    /// Keeps the entries satisfying `keep(g2, k)`.
    pub fn filtered<F: Fn(u32, &[usize]) -> bool>(&self, keep: F) -> Self {
        CoefficientTable {
            degree: self.degree,
            entries: self.entries.iter().filter(|((g, k), _)| keep(*g, k)).map(|(a, b)| (a.clone(), b.clone())).collect(),
        }
    }

    /// Lowers the completeness degree and drops entries above it.
    pub fn truncated(&self, degree: usize) -> Self {
        let degree = self.degree.map_or(degree, |d| d.min(degree));
        let mut t = self.filtered(|_, k| k.iter().sum::<usize>() <= degree);
        t.degree = Some(degree);
        t
    }

    /// Entry-wise sum; the degree is the smaller of the two.
    pub fn add(&self, o: &Self) -> Self {
        let degree = match (self.degree, o.degree) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, None) => a,
            (None, b) => b,
        };
        let mut t = self.clone();
        t.degree = degree;
        for ((g, k), v) in &o.entries {
            let s = t.get(*g, k) + v;
            t.set(*g, k, s);
        }
        if let Some(d) = degree {
            t = t.truncated(d);
        }
        t
    }

    pub fn to_json(&self) -> String {
        let entries = self.entries.iter().map(|((g2, k), v)| EntryJson { g2: *g2, k: k.clone(), value: v.clone() }).collect();
        serde_json::to_string_pretty(&TableJson { degree: self.degree, entries }).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, SeriesError> {
        let t: TableJson = serde_json::from_str(s).map_err(|e| SeriesError::Format(e.to_string()))?;
        let mut out = CoefficientTable::new(t.degree);
        for e in t.entries {
            if e.k.is_empty() || e.k.contains(&0) {
                return Err(SeriesError::Format(format!("entry key {:?} must be a nonempty list of positive integers", e.k)));
            }
            let key = (e.g2, sorted(&e.k));
            if let Some(prev) = out.entries.get(&key) {
                if *prev != e.value {
                    return Err(SeriesError::Format(format!("conflicting values for g2={} k={:?}", e.g2, e.k)));
                }
            }
            if t.degree.is_some_and(|d| e.k.iter().sum::<usize>() > d) {
                return Err(SeriesError::Format(format!("entry k={:?} exceeds the declared degree", e.k)));
            }
            out.set(e.g2, &e.k, e.value);
        }
        Ok(out)
    }

    /// `G_{g,n}(w_1, …, w_n)` within degree `deg` (caps of [`Layout::degree_caps`]),
    /// with the conventional constant `1` for `(g, n) = (0, 1)` when `with_delta`.
    pub fn npoint(&self, g2: u32, n: usize, deg: usize, with_delta: bool) -> Result<MultiSeries, SeriesError> {
        if self.degree.is_some_and(|d| d < deg) {
            return Err(SeriesError::Truncation(format!("table known to degree {} but degree {deg} requested", self.degree.unwrap())));
        }
        let layout = Layout::new(n, false);
        let mut s = MultiSeries::zero(layout, Sector::Ascending, layout.degree_caps(deg as i64), 0);
        if with_delta && g2 == 0 && n == 1 {
            s.add_term(vec![0, 0], int(1));
        }
        for (k, v) in self.sector(g2, n) {
            for perm in k.iter().copied().permutations(n).unique() {
                let mut m = vec![0i32];
                m.extend(perm.iter().map(|&x| x as i32));
                s.add_term(m, v.clone());
            }
        }
        Ok(s)
    }

    /// `G̃_{g,n}`: adds the kernel `w_1 w_2/(w_1 - w_2)^2` for `(g, n) = (0, 2)`.
    pub fn shifted_npoint(&self, g2: u32, n: usize, deg: usize) -> Result<MultiSeries, SeriesError> {
        let s = self.npoint(g2, n, deg, true)?;
        if g2 == 0 && n == 2 {
            let layout = s.layout();
            let k = MultiSeries::kernel(layout, 0, 1, s.caps().to_vec())?;
            return s.add(&k);
        }
        Ok(s)
    }

    /// Reads the coefficients of an ħ-free series in `n` variables into genus `g2`.
    /// Errors on negative exponents or asymmetric coefficients; constants are skipped.
    pub fn from_series(series: &MultiSeries, g2: u32, degree: Option<usize>) -> Result<Self, SeriesError> {
        series.assert_no_negative()?;
        let mut t = CoefficientTable::new(degree);
        let mut seen: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
        for (k, v) in series.w_terms() {
            if k.contains(&0) {
                continue;
            }
            let kk: Vec<usize> = k.iter().map(|&x| x as usize).collect();
            if degree.is_some_and(|d| kk.iter().sum::<usize>() > d) {
                continue;
            }
            let key = sorted(&kk);
            if let Some(prev) = seen.get(&key) {
                if prev != v {
                    return Err(SeriesError::Asymmetric(key));
                }
            }
            seen.insert(key.clone(), v.clone());
            t.set(g2, &key, v.clone());
        }
        // absent permutations must be absent for every ordering
        for key in seen.keys() {
            for perm in key.iter().copied().permutations(key.len()).unique() {
                let mut m = vec![0i32];
                m.extend(perm.iter().map(|&x| x as i32));
                if series.terms().get(&m).is_none() {
                    return Err(SeriesError::Asymmetric(key.clone()));
                }
            }
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_point_reads() {
        let empty = CoefficientTable::new(None);
        let g = empty.npoint(0, 1, 4, true).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.coefficient(&[0, 0]).unwrap(), int(1));
        let mut t = CoefficientTable::new(None);
        t.set(0, &[2], int(1));
        let g = t.npoint(0, 1, 6, true).unwrap();
        assert_eq!(g.coefficient(&[0, 2]).unwrap(), int(1));
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn json_shape_and_round_trip() {
        let mut t = CoefficientTable::new(Some(6));
        t.set(0, &[2], int(1));
        t.set(1, &[1, 3], sym_core::rat(-3, 7));
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v["entries"][0], serde_json::json!({"g2": 0, "k": [2], "value": "1"}));
        assert_eq!(CoefficientTable::from_json(&t.to_json()).unwrap(), t);
        assert!(CoefficientTable::from_json(r#"{"entries":[{"g2":0,"k":[0],"value":"1"}]}"#).is_err());
    }

    #[test]
    fn series_round_trip() {
        let mut t = CoefficientTable::new(Some(7));
        t.set(0, &[3, 1, 2], int(5));
        t.set(0, &[1, 1, 1], int(-2));
        let s = t.npoint(0, 3, 7, false).unwrap();
        assert_eq!(s.coefficient(&[0, 1, 3, 2]).unwrap(), int(5));
        assert_eq!(CoefficientTable::from_series(&s, 0, Some(7)).unwrap(), t);
        let k = t.shifted_npoint(0, 2, 5).unwrap();
        assert_eq!(k.coefficient(&[0, 2, -2]).unwrap(), int(2));
    }
}
