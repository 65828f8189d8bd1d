//! The master relation and its equivalent forms: Hurwitz numbers, `⊛`-convolution with
//! `ζ_ħ`, Möbius inversion, and the diagonal action of `𝖣` on Schur functions.

use crate::partition_function::{phi_from_z, z_from_phi, PartitionFunction};
use crate::TransformError;
use hurwitz::{HurwitzTable, Kind, TABLE_BOUND};
use ps_core::{moebius_hbar, zeta_hbar, ConvolutionKind, PsFn, PS_BOUND};
use rayon::prelude::*;
use std::collections::BTreeMap;
use sym_core::{character_table, content_polynomial, int, partitions, HbarSeries, Partition, Rational, Ring};

fn check_bound(d: usize, bound: usize) -> Result<(), TransformError> {
    if d > bound {
        return Err(TransformError::Bound(format!("degree {d} exceeds the bound {bound}")));
    }
    Ok(())
}

fn hurwitz_apply(z: &PartitionFunction, kind: Kind) -> Result<PartitionFunction, TransformError> {
    check_bound(z.d_max, TABLE_BOUND)?;
    let k = z.order;
    let mut values = BTreeMap::new();
    for d in 1..=z.d_max {
        let max_r = if kind == Kind::Weak { k.max(0) as usize } else { d - 1 };
        let h = HurwitzTable::cached(d, kind, max_r)?;
        for lambda in partitions(d) {
            let mut s = HbarSeries::zero_to(k);
            for nu in partitions(d) {
                s = s.add(&h.series(&lambda, &nu).truncate(k).mul(&z.get(&nu)));
            }
            values.insert(lambda.clone(), s.scale(&lambda.z()));
        }
    }
    Ok(PartitionFunction { d_max: z.d_max, order: k, values })
}

/// `Z(λ) = z(λ) Σ_ν H^<(λ,ν) Z∨(ν)`.
pub fn master_forward(zv: &PartitionFunction) -> Result<PartitionFunction, TransformError> {
    hurwitz_apply(zv, Kind::Strict)
}

/// `Z∨(λ) = z(λ) Σ_ν H^≤(λ,ν) Z(ν)`.
pub fn master_inverse(z: &PartitionFunction) -> Result<PartitionFunction, TransformError> {
    hurwitz_apply(z, Kind::Weak)
}

/// `Φ = ζ_ħ ⊛ Φ∨` on `PS(d)` for one degree.
pub fn convolution_forward(phi_v: &PsFn<HbarSeries>) -> Result<PsFn<HbarSeries>, TransformError> {
    let d = phi_v.degree();
    check_bound(d, PS_BOUND)?;
    let k = phi_v.hbar_order().ok_or_else(|| TransformError::Input("Φ∨ needs an ħ truncation".into()))?;
    Ok(zeta_hbar(d, k).convolve(phi_v, ConvolutionKind::Extended)?.truncate(k))
}

/// `Φ∨ = μ_ħ ⊛ Φ` on `PS(d)`.
pub fn moebius_inverse(phi: &PsFn<HbarSeries>) -> Result<PsFn<HbarSeries>, TransformError> {
    let d = phi.degree();
    check_bound(d, PS_BOUND)?;
    let k = phi.hbar_order().ok_or_else(|| TransformError::Input("Φ needs an ħ truncation".into()))?;
    Ok(moebius_hbar(d, k)?.convolve(phi, ConvolutionKind::Extended)?.truncate(k))
}

/// Whole partition function through `ζ_ħ ⊛`, degree by degree.
pub fn convolution_route(zv: &PartitionFunction) -> Result<PartitionFunction, TransformError> {
    check_bound(zv.d_max, PS_BOUND)?;
    let parts: Result<Vec<_>, TransformError> = (1..=zv.d_max)
        .into_par_iter()
        .map(|d| Ok(z_from_phi(&convolution_forward(&phi_from_z(zv, d)?)?, d)))
        .collect();
    Ok(PartitionFunction { d_max: zv.d_max, order: zv.order, values: parts?.into_iter().flatten().collect() })
}

/// Whole partition function through `μ_ħ ⊛`.
pub fn moebius_route(z: &PartitionFunction) -> Result<PartitionFunction, TransformError> {
    check_bound(z.d_max, PS_BOUND)?;
    let parts: Result<Vec<_>, TransformError> = (1..=z.d_max)
        .into_par_iter()
        .map(|d| Ok(z_from_phi(&moebius_inverse(&phi_from_z(z, d)?)?, d)))
        .collect();
    Ok(PartitionFunction { d_max: z.d_max, order: z.order, values: parts?.into_iter().flatten().collect() })
}

/// Expands in Schur functions, scales `s_ρ` by `∏(1 + ħ c)` (or its inverse), converts back:
/// `Z(λ) = Σ_ν z(ν)^{-1} Z∨(ν) Σ_ρ χ^ρ(λ) χ^ρ(ν) ∏_{□∈ρ}(1 + ħ c(□))^{±1}`.
pub fn schur_oracle(zv: &PartitionFunction, inverse: bool) -> Result<PartitionFunction, TransformError> {
    check_bound(zv.d_max, TABLE_BOUND)?;
    let k = zv.order;
    let mut values = BTreeMap::new();
    for d in 1..=zv.d_max {
        let ct = character_table(d);
        let weights: Vec<HbarSeries> = ct
            .partitions
            .iter()
            .map(|rho| {
                let c = content_polynomial(rho, k);
                if inverse {
                    c.inverse().expect("content polynomial starts at 1").truncate(k)
                } else {
                    c
                }
            })
            .collect();
        let chi = |rho: usize, mu: &Partition| Rational::from_integer(ct.values[rho][ct.index(mu).unwrap()].into());
        for lambda in partitions(d) {
            let mut s = HbarSeries::zero_to(k);
            for nu in partitions(d) {
                let zn = zv.get(&nu);
                if zn.is_zero() {
                    continue;
                }
                let mut kern = HbarSeries::zero_to(k);
                for (rho, w) in weights.iter().enumerate() {
                    kern = kern.add(&w.scale(&(chi(rho, &lambda) * chi(rho, &nu))));
                }
                s = s.add(&kern.mul(&zn).scale(&(int(1) / nu.z())));
            }
            values.insert(lambda.clone(), s);
        }
    }
    Ok(PartitionFunction { d_max: zv.d_max, order: k, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::gue_cumulants;

    #[test]
    fn degree_one_is_identity() {
        let mut t = series_core::CoefficientTable::new(Some(1));
        t.set(0, &[1], int(7));
        let z = PartitionFunction::from_table(&t, 1, 4).unwrap();
        assert_eq!(master_forward(&z).unwrap(), z);
        assert_eq!(schur_oracle(&z, false).unwrap(), z);
    }

    #[test]
    fn gue_catalan_through_hurwitz() {
        let t = gue_cumulants(6);
        let zv = PartitionFunction::from_table(&t, 6, PartitionFunction::order_for(6, 0)).unwrap();
        let m = master_forward(&zv).unwrap().to_table(0).unwrap();
        assert_eq!(m.get(0, &[2]), int(1));
        assert_eq!(m.get(0, &[4]), int(2));
        assert_eq!(m.get(0, &[6]), int(5));
        assert_eq!(m.get(0, &[3]), int(0));
    }
}
