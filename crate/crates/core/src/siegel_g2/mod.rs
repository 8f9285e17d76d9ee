//! Scalar Siegel modular forms of degree 2 through exact Fourier coefficients:
//! Eisenstein series from Cohen's function, χ₁₀ and χ₁₂, the Siegel Φ operator,
//! Fourier–Jacobi coefficients and the Maass lift.

pub mod dims;
pub mod eisenstein;
pub mod jacobi;
pub mod matrix;
pub mod table;

pub use dims::{dims_g2, hilbert_series, Parity};
pub use eisenstein::{chi10, chi12, cohen_h, eisenstein_coeff, eisenstein_g2};
pub use jacobi::{fourier_jacobi, maass_check, maass_lift, v_l, JacobiFormQ};
pub use matrix::{reduced_forms_of_disc, HalfIntegralMatrix};
pub use table::{diagonal_restriction, phi_operator, reduced_classes, DiagonalExpansion, SiegelCoeffTable};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SiegelError {
    #[error("[{n},{r},{m}] lies outside the table bound {max_disc}")]
    OutOfBound { n: i64, r: i64, m: i64, max_disc: i64 },
    #[error("weight {0} must be even and at least 4")]
    BadWeight(i64),
    #[error("a([1,1,1]) vanishes, cannot normalize")]
    DegenerateNormalization,
    #[error("table bound {have} is below the required {need}")]
    InsufficientTable { need: i64, have: i64 },
    #[error("forms of different weights")]
    WeightMismatch,
    #[error("unsupported Jacobi index {0}")]
    BadIndex(i64),
}
