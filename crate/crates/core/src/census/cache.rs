use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde_json::{json, Value};

use super::elliptic::{ell_census, EllCensus};
use super::genus2::{g2_census_with, EnumerationOrder, G2Census, G2Kernel, PartCounts, G2_HARD_CAP};
use super::{CensusError, CENSUS_VERSION};
use crate::exact_arith::{rat_from_str, rat_to_string};

pub fn ell_to_json(c: &EllCensus) -> Value {
    let masses: Vec<Value> = c.masses.iter().map(|(t, m)| json!([t, rat_to_string(m)])).collect();
    json!({"q": c.q, "kind": "ell", "masses": masses, "model_count": c.model_count, "version": CENSUS_VERSION})
}

pub fn g2_to_json(c: &G2Census) -> Value {
    let masses: Vec<Value> = c.masses.iter().map(|((t, e), m)| json!([t, e, rat_to_string(m)])).collect();
    json!({"q": c.q, "kind": "g2", "masses": masses, "model_count": c.model_count, "version": CENSUS_VERSION})
}

fn header(v: &Value, kind: &str) -> Result<(u64, u64), CensusError> {
    let bad = |what: &str| CensusError::Corrupt(format!("{kind} cache: {what}"));
    if v["kind"] != kind {
        return Err(bad("kind"));
    }
    if v["version"].as_u64() != Some(CENSUS_VERSION as u64) {
        return Err(bad("version"));
    }
    let q = v["q"].as_u64().ok_or_else(|| bad("q"))?;
    let n = v["model_count"].as_u64().ok_or_else(|| bad("model_count"))?;
    Ok((q, n))
}

pub fn ell_from_json(v: &Value) -> Result<EllCensus, CensusError> {
    let (q, model_count) = header(v, "ell")?;
    let mut masses = BTreeMap::new();
    for row in v["masses"].as_array().ok_or_else(|| CensusError::Corrupt("ell masses".into()))? {
        let t = row[0].as_i64();
        let m = row[1].as_str().and_then(rat_from_str);
        match (t, m) {
            (Some(t), Some(m)) => masses.insert(t, m),
            _ => return Err(CensusError::Corrupt(format!("ell row {row}"))),
        };
    }
    Ok(EllCensus { q, masses, model_count })
}

pub fn g2_from_json(v: &Value) -> Result<G2Census, CensusError> {
    let (q, model_count) = header(v, "g2")?;
    let mut masses = BTreeMap::new();
    for row in v["masses"].as_array().ok_or_else(|| CensusError::Corrupt("g2 masses".into()))? {
        let t = row[0].as_i64();
        let e = row[1].as_i64();
        let m = row[2].as_str().and_then(rat_from_str);
        match (t, e, m) {
            (Some(t), Some(e), Some(m)) => masses.insert((t, e), m),
            _ => return Err(CensusError::Corrupt(format!("g2 row {row}"))),
        };
    }
    Ok(G2Census { q, masses, model_count })
}

/// Writes through a temporary sibling and renames, so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CensusError> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn ell_path(dir: &Path, q: u64) -> PathBuf {
    dir.join(format!("ell-q{q}-v{CENSUS_VERSION}.json"))
}

pub fn g2_path(dir: &Path, q: u64) -> PathBuf {
    dir.join(format!("g2-q{q}-v{CENSUS_VERSION}.json"))
}

fn part_path(dir: &Path, q: u64, part: usize) -> PathBuf {
    dir.join(format!("g2-q{q}-v{CENSUS_VERSION}.part{part}.json"))
}

fn part_to_json(q: u64, part: usize, c: &PartCounts) -> Value {
    let mut rows: Vec<(i64, i64, u64)> = c.counts.iter().map(|(&(t, e), &n)| (t, e, n)).collect();
    rows.sort_unstable();
    json!({"q": q, "kind": "g2-part", "part": part, "models": c.models, "counts": rows, "version": CENSUS_VERSION})
}

fn part_from_json(v: &Value, q: u64, part: usize) -> Option<PartCounts> {
    if v["kind"] != "g2-part" || v["q"].as_u64()? != q || v["part"].as_u64()? != part as u64 {
        return None;
    }
    if v["version"].as_u64()? != CENSUS_VERSION as u64 {
        return None;
    }
    let mut counts = HashMap::new();
    for row in v["counts"].as_array()? {
        counts.insert((row[0].as_i64()?, row[1].as_i64()?), row[2].as_u64()?);
    }
    Some(PartCounts { counts, models: v["models"].as_u64()? })
}

/// Genus-2 census with one checkpoint file per partition. With `resume`,
/// partitions already on disk are loaded instead of recomputed. The merged
/// census is written last and the checkpoints removed.
pub fn g2_census_checkpointed(
    q: u64,
    order: EnumerationOrder,
    max_q: u64,
    dir: &Path,
    resume: bool,
) -> Result<G2Census, CensusError> {
    let max = max_q.min(G2_HARD_CAP);
    if q > max {
        return Err(CensusError::FieldTooLarge { q, max });
    }
    let kernel = G2Kernel::new(q)?;
    fs::create_dir_all(dir)?;
    let parts: Vec<Result<PartCounts, CensusError>> = (0..kernel.partitions())
        .into_par_iter()
        .map(|i| {
            let path = part_path(dir, q, i);
            if resume {
                if let Ok(s) = fs::read_to_string(&path) {
                    if let Some(c) = serde_json::from_str(&s).ok().and_then(|v| part_from_json(&v, q, i)) {
                        return Ok(c);
                    }
                }
            }
            let c = kernel.run_partition(i, order);
            write_atomic(&path, &part_to_json(q, i, &c).to_string())?;
            Ok(c)
        })
        .collect();
    let mut merged = PartCounts::default();
    for p in parts {
        merged.merge(&p?);
    }
    let census = kernel.finish(&merged);
    write_atomic(&g2_path(dir, q), &g2_to_json(&census).to_string())?;
    for i in 0..kernel.partitions() {
        let _ = fs::remove_file(part_path(dir, q, i));
    }
    Ok(census)
}

/// Memoizing census provider, optionally backed by a cache directory.
pub struct CensusStore {
    dir: Option<PathBuf>,
    cached_only: bool,
    max_q_g2: u64,
    order: EnumerationOrder,
    ell: Mutex<HashMap<u64, Arc<EllCensus>>>,
    g2: Mutex<HashMap<u64, Arc<G2Census>>>,
}

impl CensusStore {
    pub fn in_memory(max_q_g2: u64) -> Self {
        Self {
            dir: None,
            cached_only: false,
            max_q_g2,
            order: EnumerationOrder::Ascending,
            ell: Mutex::default(),
            g2: Mutex::default(),
        }
    }

    pub fn on_disk(dir: impl Into<PathBuf>, max_q_g2: u64, cached_only: bool) -> Self {
        Self { dir: Some(dir.into()), cached_only, ..Self::in_memory(max_q_g2) }
    }

    pub fn with_order(mut self, order: EnumerationOrder) -> Self {
        self.order = order;
        self
    }

    /// Process-wide in-memory store at the hard field cap.
    pub fn shared() -> &'static CensusStore {
        static STORE: OnceLock<CensusStore> = OnceLock::new();
        STORE.get_or_init(|| CensusStore::in_memory(G2_HARD_CAP))
    }

    pub fn max_q_g2(&self) -> u64 {
        self.max_q_g2
    }

    pub fn ell(&self, q: u64) -> Result<Arc<EllCensus>, CensusError> {
        if let Some(c) = self.ell.lock().unwrap().get(&q) {
            return Ok(c.clone());
        }
        let c = match &self.dir {
            Some(dir) => {
                let path = ell_path(dir, q);
                if path.exists() {
                    ell_from_json(&serde_json::from_str(&fs::read_to_string(&path)?)?)?
                } else if self.cached_only {
                    return Err(CensusError::Missing { kind: "ell", q });
                } else {
                    let c = ell_census(q)?;
                    write_atomic(&path, &ell_to_json(&c).to_string())?;
                    c
                }
            }
            None => ell_census(q)?,
        };
        let c = Arc::new(c);
        self.ell.lock().unwrap().insert(q, c.clone());
        Ok(c)
    }

    pub fn g2(&self, q: u64) -> Result<Arc<G2Census>, CensusError> {
        if let Some(c) = self.g2.lock().unwrap().get(&q) {
            return Ok(c.clone());
        }
        let c = match &self.dir {
            Some(dir) => {
                let path = g2_path(dir, q);
                if path.exists() {
                    g2_from_json(&serde_json::from_str(&fs::read_to_string(&path)?)?)?
                } else if self.cached_only {
                    return Err(CensusError::Missing { kind: "g2", q });
                } else {
                    g2_census_checkpointed(q, self.order, self.max_q_g2, dir, true)?
                }
            }
            None => g2_census_with(q, self.order, self.max_q_g2)?,
        };
        let c = Arc::new(c);
        self.g2.lock().unwrap().insert(q, c.clone());
        Ok(c)
    }
}
