//! Exact-arithmetic workbench for genus-1 and genus-2 modular forms: point
//! counts over finite fields, Hecke traces on vector-valued Siegel cusp forms,
//! Satake identities, Siegel expansions and Harder-type congruences.

pub mod exact_arith;
pub mod g1_modforms;
pub mod census;
pub mod cohom;
pub mod harder;
pub mod hecke_satake;
pub mod siegel_g2;
