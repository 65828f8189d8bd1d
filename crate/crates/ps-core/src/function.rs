//! Functions on partitioned and surfaced permutations, the `∗` and `⊛` convolutions,
//! zeta, delta and Möbius functions, and multiplicative tables.

use crate::element::{
    enumerate_ps, enumerate_surfaced, ElementError, PartitionedPermutation, PsElement, SurfacedPermutation,
};
use crate::set_partition::SetPartition;
use rayon::prelude::*;
use std::collections::BTreeMap;
use sym_core::{int, HbarSeries, Partition, Permutation, Rational, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConvolutionKind {
    /// `∗`: sums over products with additive colength.
    Strict,
    /// `⊛`: sums over all `⊙` products.
    Extended,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FunctionError {
    #[error("functions live on different degrees: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("hbar truncations differ: {0:?} vs {1:?}")]
    TruncationMismatch(Option<i32>, Option<i32>),
    #[error("value at {element} has a term below hbar^{colength}")]
    OrderViolation { element: String, colength: usize },
    #[error("{0}")]
    Element(#[from] ElementError),
}

/// Sparse function `E -> V`; absent keys are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct PsFunction<E: PsElement, V: Ring> {
    degree: usize,
    hbar_order: Option<i32>,
    values: BTreeMap<E, V>,
}

impl<E: PsElement, V: Ring> PsFunction<E, V> {
    pub fn zero(degree: usize) -> Self {
        PsFunction { degree, hbar_order: None, values: BTreeMap::new() }
    }

    /// Marks every value as truncated at `ħ^k`.
    pub fn with_hbar_order(mut self, k: i32) -> Self {
        self.hbar_order = Some(k);
        self
    }

    pub fn from_map(degree: usize, values: BTreeMap<E, V>) -> Self {
        let mut f = PsFunction { degree, hbar_order: None, values };
        f.values.retain(|_, v| !v.is_zero());
        f
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn hbar_order(&self) -> Option<i32> {
        self.hbar_order
    }

    pub fn get(&self, x: &E) -> V {
        self.values.get(x).cloned().unwrap_or_else(V::zero)
    }

    pub fn set(&mut self, x: E, v: V) {
        if v.is_zero() {
            self.values.remove(&x);
        } else {
            self.values.insert(x, v);
        }
    }

    pub fn add_at(&mut self, x: E, v: &V) {
        let cur = self.values.entry(x.clone()).or_insert_with(V::zero);
        cur.add_assign(v);
        if cur.is_zero() {
            self.values.remove(&x);
        }
    }

    pub fn support(&self) -> impl Iterator<Item = (&E, &V)> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn map_values<W: Ring>(&self, f: impl Fn(&E, &V) -> W) -> PsFunction<E, W> {
        let values = self.values.iter().map(|(k, v)| (k.clone(), f(k, v))).collect();
        PsFunction::from_map(self.degree, values)
    }

    pub fn negate(&self) -> Self {
        let mut out = self.map_values(|_, v| v.neg());
        out.hbar_order = self.hbar_order;
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.values {
            out.add_at(k.clone(), v);
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut out = self.map_values(|_, v| v.scale(q));
        out.hbar_order = self.hbar_order;
        out
    }

    /// `Σ f(x) g(y)` over the factorizations `z = x·y` (or `x⊙y`).
    pub fn convolve(&self, other: &Self, kind: ConvolutionKind) -> Result<Self, FunctionError> {
        if self.degree != other.degree {
            return Err(FunctionError::DegreeMismatch(self.degree, other.degree));
        }
        if kind == ConvolutionKind::Extended && self.hbar_order != other.hbar_order {
            return Err(FunctionError::TruncationMismatch(self.hbar_order, other.hbar_order));
        }
        let right: Vec<(&E, &V)> = other.values.iter().collect();
        let values = self
            .values
            .par_iter()
            .fold(BTreeMap::<E, V>::new, |mut acc, (x, fx)| {
                for (y, gy) in &right {
                    let z = match kind {
                        ConvolutionKind::Strict => match x.product_strict(y) {
                            Some(z) => z,
                            None => continue,
                        },
                        ConvolutionKind::Extended => x.product_extended(y),
                    };
                    acc.entry(z).or_insert_with(V::zero).add_assign(&fx.mul(gy));
                }
                acc
            })
            .reduce(BTreeMap::new, |mut a, b| {
                for (k, v) in b {
                    a.entry(k).or_insert_with(V::zero).add_assign(&v);
                }
                a
            });
        let mut out = PsFunction::from_map(self.degree, values);
        out.hbar_order = self.hbar_order.or(other.hbar_order);
        Ok(out)
    }
}

impl<E: PsElement> PsFunction<E, HbarSeries> {
    pub fn truncate(&self, k: i32) -> Self {
        let mut out = self.map_values(|_, v| v.truncate(k));
        out.hbar_order = Some(k);
        out
    }

    /// Coefficient of `ħ^{|x|}` at every `x`; errors if a lower term is present.
    pub fn leading_order(&self) -> Result<PsFunction<E, Rational>, FunctionError> {
        self.order_slice(0)
    }

    /// Coefficients of `ħ^{|x|}` and `ħ^{|x|+1}`.
    pub fn infinitesimal(&self) -> Result<(PsFunction<E, Rational>, PsFunction<E, Rational>), FunctionError> {
        Ok((self.order_slice(0)?, self.order_slice(1)?))
    }

    /// Coefficient of `ħ^{|x|+shift}` at every `x`.
    pub fn order_slice(&self, shift: i32) -> Result<PsFunction<E, Rational>, FunctionError> {
        let mut out = PsFunction::zero(self.degree);
        for (x, v) in &self.values {
            let c = x.total_colength() as i32;
            if v.valuation() < c {
                return Err(FunctionError::OrderViolation { element: format!("{x:?}"), colength: c as usize });
            }
            out.set(x.clone(), v.coeff_unchecked(c + shift));
        }
        Ok(out)
    }
}

pub type PsFn<V> = PsFunction<PartitionedPermutation, V>;
pub type SurfacedFn<V> = PsFunction<SurfacedPermutation, V>;

/// `ζ(𝒜, α) = 1` iff `𝒜 = 0_α`.
pub fn zeta(d: usize) -> PsFn<Rational> {
    let mut f = PsFunction::zero(d);
    for p in Permutation::all(d) {
        f.set(PartitionedPermutation::minimal(p), int(1));
    }
    f
}

/// `ζ_ħ(𝒜, α) = ħ^{|α|} ζ(𝒜, α)`.
pub fn zeta_hbar(d: usize, k: i32) -> PsFn<HbarSeries> {
    let mut f = PsFunction::zero(d).with_hbar_order(k);
    for p in Permutation::all(d) {
        let c = p.colength() as i32;
        f.set(PartitionedPermutation::minimal(p), HbarSeries::monomial(int(1), c, k));
    }
    f
}

pub fn delta(d: usize) -> PsFn<Rational> {
    let mut f = PsFunction::zero(d);
    f.set(PartitionedPermutation::unit(d), int(1));
    f
}

pub fn delta_hbar(d: usize, k: i32) -> PsFn<HbarSeries> {
    let mut f = PsFunction::zero(d).with_hbar_order(k);
    f.set(PartitionedPermutation::unit(d), HbarSeries::one_to(k));
    f
}

/// Genus-zero lift of `ζ` to surfaced permutations.
pub fn zeta_surfaced(d: usize) -> SurfacedFn<Rational> {
    let mut f = PsFunction::zero(d);
    for p in Permutation::all(d) {
        f.set(SurfacedPermutation::genus_zero(PartitionedPermutation::minimal(p)), int(1));
    }
    f
}

pub fn delta_surfaced(d: usize) -> SurfacedFn<Rational> {
    let mut f = PsFunction::zero(d);
    f.set(SurfacedPermutation::unit(d), int(1));
    f
}

/// Solves `μ ∗ ζ = δ` by forward substitution in increasing colength.
fn invert_zeta<E: PsElement>(
    degree: usize,
    elements: Vec<E>,
    zeta_support: &[E],
    product: impl Fn(&E, &E) -> Option<E>,
) -> PsFunction<E, Rational> {
    let unit = E::unit(degree);
    let mut order = elements;
    order.sort_by_key(|x| x.total_colength());
    let mut acc: BTreeMap<E, Rational> = BTreeMap::new();
    let mut out = PsFunction::zero(degree);
    let allowed: std::collections::BTreeSet<&E> = order.iter().collect();
    for x in &order {
        let dx = if *x == unit { int(1) } else { int(0) };
        let mx = dx - acc.remove(x).unwrap_or_else(|| int(0));
        if mx == int(0) {
            continue;
        }
        for b in zeta_support {
            if *b == unit {
                continue;
            }
            if let Some(z) = product(x, b) {
                if allowed.contains(&z) {
                    *acc.entry(z).or_insert_with(|| int(0)) += &mx;
                }
            }
        }
        out.set(x.clone(), mx);
    }
    out
}

/// The `∗`-inverse of [`zeta`] on `PS(d)`.
pub fn moebius(d: usize, bound: usize) -> Result<PsFn<Rational>, FunctionError> {
    let elements = enumerate_ps(d, bound)?;
    let support: Vec<_> = Permutation::all(d).map(PartitionedPermutation::minimal).collect();
    Ok(invert_zeta(d, elements, &support, |x, b| x.product_strict(b)))
}

/// The `⊛`-inverse of [`zeta_surfaced`] on surfaced permutations with doubled genus `≤ g2_max`.
pub fn moebius_surfaced(d: usize, g2_max: u32, bound: usize) -> Result<SurfacedFn<Rational>, FunctionError> {
    let elements = enumerate_surfaced(d, g2_max, bound)?;
    let support: Vec<_> = Permutation::all(d)
        .map(|p| SurfacedPermutation::genus_zero(PartitionedPermutation::minimal(p)))
        .collect();
    Ok(invert_zeta(d, elements, &support, |x, b| Some(x.product_extended(b))))
}

/// `⊛`-inverse of [`zeta_hbar`] up to `ħ^k`, as the Neumann series in `ζ_ħ - δ`.
pub fn moebius_hbar(d: usize, k: i32) -> Result<PsFn<HbarSeries>, FunctionError> {
    let delta = delta_hbar(d, k);
    let minus_n = zeta_hbar(d, k).add(&delta.negate()).negate();
    let mut term = delta.clone();
    let mut total = delta;
    for _ in 0..k.max(0) {
        term = term.convolve(&minus_n, ConvolutionKind::Extended)?.truncate(k);
        if term.is_empty() {
            break;
        }
        total = total.add(&term);
    }
    Ok(total)
}

/// Values `f(λ, 2g)` on one-block elements; extended to all elements by block products.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplicativeFunction<V: Ring> {
    pub values: BTreeMap<(Partition, u32), V>,
}

impl<V: Ring> Default for MultiplicativeFunction<V> {
    fn default() -> Self {
        MultiplicativeFunction { values: BTreeMap::new() }
    }
}

impl<V: Ring> MultiplicativeFunction<V> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, lambda: Partition, g2: u32, v: V) {
        self.values.insert((lambda, g2), v);
    }

    pub fn get(&self, lambda: &Partition, g2: u32) -> V {
        self.values.get(&(lambda.clone(), g2)).cloned().unwrap_or_else(V::zero)
    }

    /// `∏_A f(λ(α|A), 0)`.
    pub fn eval_ps(&self, x: &PartitionedPermutation) -> V {
        x.block_types().iter().fold(V::one(), |acc, l| acc.mul(&self.get(l, 0)))
    }

    /// `∏_A f(λ(α|A), 2g(A))`.
    pub fn eval_surfaced(&self, x: &SurfacedPermutation) -> V {
        x.block_data().iter().fold(V::one(), |acc, (l, g)| acc.mul(&self.get(l, *g)))
    }

    pub fn to_ps(&self, d: usize, bound: usize) -> Result<PsFn<V>, FunctionError> {
        let mut f = PsFunction::zero(d);
        for x in enumerate_ps(d, bound)? {
            let v = self.eval_ps(&x);
            f.set(x, v);
        }
        Ok(f)
    }

    pub fn to_surfaced(&self, d: usize, g2_max: u32, bound: usize) -> Result<SurfacedFn<V>, FunctionError> {
        let mut f = PsFunction::zero(d);
        for x in enumerate_surfaced(d, g2_max, bound)? {
            let v = self.eval_surfaced(&x);
            f.set(x, v);
        }
        Ok(f)
    }

    /// Reads the one-block values `(1_d, π_λ)` of a total function.
    pub fn from_ps(f: &PsFn<V>) -> Self {
        let d = f.degree();
        let mut m = Self::new();
        for lambda in sym_core::partitions(d) {
            let x = PartitionedPermutation::new_unchecked(SetPartition::coarsest(d), Permutation::canonical(&lambda));
            let v = f.get(&x);
            if !v.is_zero() {
                m.set(lambda, 0, v);
            }
        }
        m
    }
}

impl MultiplicativeFunction<Rational> {
    /// `Φ(𝒜, α) = ∏_A Σ_g ħ^{|(1_A, α|A)| + 2g} f(λ_A, 2g)`, truncated at `ħ^k`.
    pub fn hbar_lift(&self, d: usize, k: i32, bound: usize) -> Result<PsFn<HbarSeries>, FunctionError> {
        let mut block: BTreeMap<Partition, HbarSeries> = BTreeMap::new();
        for ((l, g2), v) in &self.values {
            let e = (2 * (l.size() - 1) - l.colength()) as i32 + *g2 as i32;
            let s = block.entry(l.clone()).or_insert_with(|| HbarSeries::zero_to(k));
            *s = s.add(&HbarSeries::monomial(v.clone(), e, k));
        }
        let mut f = PsFunction::zero(d).with_hbar_order(k);
        for x in enumerate_ps(d, bound)? {
            let mut acc = HbarSeries::one_to(k);
            for l in x.block_types() {
                match block.get(&l) {
                    Some(s) => acc = acc.mul(s),
                    None => {
                        acc = HbarSeries::zero_to(k);
                        break;
                    }
                }
            }
            f.set(x, acc);
        }
        Ok(f)
    }
}

/// Checks `f(x) f(0_id, id)^{#blocks - 1} = ∏_A f(x_A)` on `PS(d)`, where `x_A` keeps
/// block `A` of `x` and makes everything else a fixed singleton.
pub fn is_multiplicative<V: Ring>(f: &PsFn<V>, bound: usize) -> Result<bool, FunctionError> {
    let d = f.degree();
    let unit = f.get(&PartitionedPermutation::unit(d));
    for x in enumerate_ps(d, bound)? {
        let blocks = x.partition.blocks();
        let mut lhs = f.get(&x);
        let mut rhs = V::one();
        for (b, blk) in blocks.iter().enumerate() {
            if b > 0 {
                lhs = lhs.mul(&unit);
            }
            let mut labels: Vec<usize> = (0..d).map(|i| i + 1).collect();
            let mut images: Vec<usize> = (0..d).collect();
            for &i in blk {
                labels[i] = 0;
                images[i] = x.perm.apply(i);
            }
            let y = PartitionedPermutation::new_unchecked(
                SetPartition::from_labels(&labels),
                Permutation::from_images(images).expect("restriction is a permutation"),
            );
            rhs = rhs.mul(&f.get(&y));
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}
