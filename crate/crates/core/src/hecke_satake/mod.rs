//! Local Hecke algebras of GL₂ and GSp₄ through their Satake images, with
//! spinor and standard Euler factors built from eigenvalues or parameters.

pub mod euler;
pub mod laurent;
pub mod local;
pub mod params;

pub use euler::{newton_slopes, sk_spin_factor, spin_factor, standard_factor, EulerFactor, SkSpin};
pub use laurent::{Monomial, SatakeElement};
pub use local::{
    hecke_quartic, levi_square, m_count, m_poly, phi, satake_ti, satake_tp, satake_tpsq, verify_identity, Identity,
};
pub use params::{eigen_from_params, NfElem, NumberField, SatakeParams};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SatakeError {
    #[error("genus {0} is not supported")]
    UnsupportedGenus(u8),
    #[error("T_{i}(p²) needs 0 ≤ i ≤ {g}")]
    BadIndex { g: u8, i: usize },
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("no Saito–Kurokawa lift in weight {k}: S_{{2k−2}} is zero")]
    NoSkLift { k: i64 },
    #[error("parameters are not rational and no minimal polynomial is stored")]
    IrrationalAlpha,
    #[error("coefficients are not rational")]
    NonRational,
    #[error("zero constant term")]
    ZeroConstantTerm,
    #[error("division by zero in the parameter field")]
    DivisionByZero,
    #[error("α₀²α₁⋯α_g ≠ p^{e} at g = {g}, p = {p}")]
    Invariant { g: u8, p: u64, e: i64 },
    #[error("{0}")]
    BadParams(String),
}
