//! Level-one elliptic modular forms: q-expansions, Hecke operators,
//! eigenforms and critical L-values.

pub mod eigen;
pub mod hecke;
pub mod lvalues;
pub mod qexp;

pub use eigen::{eigenforms, eigenforms_prec, Embedding, EigenformG1};
pub use hecke::{hecke_apply, hecke_t, hecke_trace, motive_trace};
pub use lvalues::{congruence_prime_scan, critical_ratios, lambda_values, CriticalValues};
pub use qexp::{basis_s, delta, dim_s, eisenstein_e, QExpansion};

use crate::exact_arith::ArithError;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum G1Error {
    #[error("weight {0} must be even and at least 4")]
    BadWeight(i64),
    #[error("precision {prec} is below the required {need}")]
    InsufficientPrecision { prec: usize, need: usize },
    #[error("dim S_{k} = {dim} is too large for eigenform splitting")]
    DimTooLarge { k: i64, dim: usize },
    #[error("Hecke field is not quadratic for weight {0}")]
    NotQuadratic(i64),
    #[error("tail bound not met: need {need} coefficients, have {have}")]
    PrecisionLoss { need: usize, have: usize },
    #[error("operation needs a rational eigenform")]
    NotRational,
    #[error(transparent)]
    Arith(#[from] ArithError),
}
