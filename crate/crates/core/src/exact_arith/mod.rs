//! Exact rationals, real quadratic fields, small finite fields, Bernoulli
//! numbers and a multiprecision binary float for L-value evaluation.

pub mod bigfloat;
pub mod finite_field;
pub mod matrix;
pub mod ntheory;
pub mod quadratic;
pub mod rational;

pub use bigfloat::{rational_reconstruct, rational_reconstruct_tol, BigFloat, DEFAULT_PREC};
pub use finite_field::{FiniteField, Fq};
pub use matrix::RatMatrix;
pub use ntheory::{bernoulli, gen_bernoulli, kronecker};
pub use quadratic::{QuadElem, Scalar};
pub use rational::{int, rat, rat_from_str, rat_int, rat_to_string, to_integer_vec, Int, Rat};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
    #[error("discriminant {0} is a perfect square")]
    SquareDisc(u64),
    #[error("mixed-discriminant arithmetic: {0} vs {1}")]
    MixedDisc(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("no convergent meets the residual bound")]
    NoConvergent,
    #[error("precision {prec} bits is below the required {need}")]
    InsufficientPrecision { prec: u32, need: u32 },
    #[error("unsupported finite field of order {0}")]
    UnsupportedField(u64),
}
