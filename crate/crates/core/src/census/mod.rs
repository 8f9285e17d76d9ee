//! Automorphism-weighted censuses of elliptic and genus-2 curves over 𝔽_q.
//!
//! Isomorphism classes are never computed: summing over all models and
//! dividing by the order of the coordinate-change group gives the same
//! Σ W/#Aut by orbit–stabilizer.

pub mod cache;
pub mod elliptic;
pub mod genus2;

pub use cache::{g2_census_checkpointed, CensusStore};
pub use elliptic::{ell_census, j_class_masses, sigma, EllCensus};
pub use genus2::{
    count_points_g2, g2_census, g2_census_full, g2_census_with, real_weil_pair, squarefree_sextic,
    EnumerationOrder, G2Census, G2Kernel, SexticForm, G2_HARD_CAP,
};

pub const CENSUS_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CensusError {
    #[error("unsupported field size {0}")]
    UnsupportedField(u64),
    #[error("field size {q} exceeds the configured genus-2 bound {max}")]
    FieldTooLarge { q: u64, max: u64 },
    #[error("no cached {kind} census for q = {q}")]
    Missing { kind: &'static str, q: u64 },
    #[error("corrupt cache: {0}")]
    Corrupt(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Sets the size of the global worker pool used by census partitions.
pub fn configure_threads(n: usize) -> Result<(), String> {
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}
