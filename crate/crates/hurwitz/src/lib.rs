//! Strictly and weakly monotone double Hurwitz numbers, free single Hurwitz
//! numbers, a Jucys–Murphy group-algebra oracle and the inverse-pair identity.

pub mod count;
pub mod jm;
pub mod table;

pub use count::{free_single_count, strict_monotone_count, weakly_monotone_count};
pub use jm::{jucys_murphy_oracle, JM_BOUND};
pub use table::{hurwitz_series, verify_orthogonality, HurwitzTable, OrthogonalityReport, TABLE_BOUND};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Strict,
    Weak,
    #[serde(alias = "freeSingle")]
    FreeSingle,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Strict => "strict",
            Kind::Weak => "weak",
            Kind::FreeSingle => "free-single",
        }
    }
}

impl std::str::FromStr for Kind {
    type Err = HurwitzError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(Kind::Strict),
            "weak" => Ok(Kind::Weak),
            "free-single" | "freeSingle" => Ok(Kind::FreeSingle),
            _ => Err(HurwitzError::UnknownKind(s.to_string())),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum HurwitzError {
    #[error("degree {d} exceeds the bound {bound}")]
    BoundExceeded { d: usize, bound: usize },
    #[error("partitions of different sizes: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("unknown kind {0:?}")]
    UnknownKind(String),
    #[error("{0}")]
    Unsupported(&'static str),
    #[error("table format: {0}")]
    Format(String),
    #[error("cache: {0}")]
    Io(#[from] std::io::Error),
}
