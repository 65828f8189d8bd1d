//! Moment/cumulant transforms for partition functions related by `Z = 𝖣Z∨`.
//!
//! The relation is available as Hurwitz-number sums ([`master`]), as convolutions on
//! partitioned permutations, through Schur functions, and as functional relations between
//! `n`-point functions ([`relations`]).

pub mod fixtures;
pub mod graphs;
pub mod master;
pub mod oracle;
pub mod partition_function;
pub mod relations;
pub mod verify;

pub use graphs::{enumerate_graphs, enumerate_special_trees, enumerate_trees, BicolouredGraph};
pub use master::{
    convolution_forward, convolution_route, master_forward, master_inverse, moebius_inverse, moebius_route, schur_oracle,
};
pub use partition_function::{phi_from_z, z_from_phi, PartitionFunction};
pub use relations::Relation;

use series_core::{CoefficientTable, SeriesError};
use std::str::FromStr;

#[derive(Debug, thiserror::Error)]
pub enum TransformError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Hurwitz(#[from] hurwitz::HurwitzError),
    #[error(transparent)]
    Function(#[from] ps_core::FunctionError),
    #[error("missing coefficients: {0}")]
    Missing(String),
    #[error("{0}")]
    Bound(String),
    #[error("invalid input: {0}")]
    Input(String),
}

impl TransformError {
    /// Failures caused by inputs known to too low a degree or ħ-order.
    pub fn is_truncation(&self) -> bool {
        matches!(self, TransformError::Series(SeriesError::Truncation(_)) | TransformError::Missing(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Cumulants to moments.
    C2m,
    /// Moments to cumulants.
    M2c,
}

impl FromStr for Direction {
    type Err = TransformError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "c2m" => Ok(Direction::C2m),
            "m2c" => Ok(Direction::M2c),
            _ => Err(TransformError::Input(format!("unknown direction {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Hurwitz,
    Convolution,
    Schur,
    Formula,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Hurwitz => "hurwitz",
            Route::Convolution => "convolution",
            Route::Schur => "schur",
            Route::Formula => "formula",
        }
    }
}

impl FromStr for Route {
    type Err = TransformError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hurwitz" => Ok(Route::Hurwitz),
            "convolution" => Ok(Route::Convolution),
            "schur" => Ok(Route::Schur),
            "formula" => Ok(Route::Formula),
            _ => Err(TransformError::Input(format!("unknown route {s:?}"))),
        }
    }
}

/// Largest number of points the formula route computes.
pub const FORMULA_MAX_POINTS: usize = 4;

#[derive(Debug, Clone)]
pub struct TransformConfig {
    pub degree: usize,
    /// ħ-order; `None` picks the smallest order that determines every requested genus.
    pub hbar: Option<i32>,
    pub g2_max: u32,
    pub route: Route,
}

/// Transforms a table in the given direction, keeping sectors with `2g ≤ g2_max` and total degree `≤ degree`.
pub fn transform(table: &CoefficientTable, direction: Direction, cfg: &TransformConfig) -> Result<CoefficientTable, TransformError> {
    let d = cfg.degree;
    if let Some(td) = table.degree {
        if td < d {
            return Err(TransformError::Missing(format!("input table is known to degree {td}, degree {d} requested")));
        }
    }
    let order = cfg.hbar.unwrap_or_else(|| PartitionFunction::order_for(d, cfg.g2_max));
    let input = table.truncated(d);
    let out = match cfg.route {
        Route::Formula => {
            let rel = Relation::new(&input, if direction == Direction::C2m { 1 } else { -1 }, d)?;
            rel.table(cfg.g2_max, FORMULA_MAX_POINTS)?
        }
        route => {
            let z = PartitionFunction::from_table(&input, d, order)?;
            let w = match (route, direction) {
                (Route::Hurwitz, Direction::C2m) => master_forward(&z)?,
                (Route::Hurwitz, Direction::M2c) => master_inverse(&z)?,
                (Route::Convolution, Direction::C2m) => convolution_route(&z)?,
                (Route::Convolution, Direction::M2c) => moebius_route(&z)?,
                (Route::Schur, dir) => schur_oracle(&z, dir == Direction::M2c)?,
                (Route::Formula, _) => unreachable!(),
            };
            w.to_table(cfg.g2_max)?
        }
    };
    Ok(out.filtered(|g2, _| g2 <= cfg.g2_max))
}
