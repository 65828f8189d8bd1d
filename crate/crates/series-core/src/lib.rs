//! Truncated power and Laurent series for the moment/cumulant transforms.
//!
//! [`PowerSeries`] is univariate, [`MultiSeries`] carries ħ, the spectral
//! variables `w_i` and the auxiliary `u_i`, with explicit truncation caps.

pub mod multi;
pub mod operator;
pub mod power;
pub mod table;

pub use multi::{Layout, MultiSeries, Sector, UNBOUNDED};
pub use operator::{
    apply_genus0, delta_correction, falling_poly, genus0_hyperedge, hyperedge_weight, Substitution, VertexContext,
};
pub use power::{inv_sigma_even_coeffs, sigma_even_coeffs, sigma_ratio_coeffs, sigma_series, PowerSeries};
pub use table::CoefficientTable;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("truncation insufficient: {0}")]
    Truncation(String),
    #[error("valuation: {0}")]
    Valuation(String),
    #[error("kernel needs i < j, got ({0}, {1})")]
    Kernel(usize, usize),
    #[error("layout mismatch")]
    Layout,
    #[error("sector mismatch")]
    Sector,
    #[error("negative exponent in a power series")]
    NegativeExponent,
    #[error("format: {0}")]
    Format(String),
    #[error("asymmetric coefficients at {0:?}")]
    Asymmetric(Vec<usize>),
}
