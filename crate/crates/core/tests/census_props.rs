use num_traits::{One, Zero};

use siegel_core::census::cache::{ell_from_json, ell_to_json, g2_from_json, g2_to_json};
use siegel_core::census::genus2::PartCounts;
use siegel_core::census::{
    ell_census, g2_census, g2_census_checkpointed, j_class_masses, sigma, CensusStore, EnumerationOrder, G2Kernel,
};
use siegel_core::cohom::SpChar;
use siegel_core::exact_arith::Rat;

#[test]
fn each_j_invariant_has_unit_mass() {
    for q in [3, 5, 7, 9] {
        for (j, m) in j_class_masses(q).unwrap() {
            assert!(m.is_one(), "q = {q}, j = {j:?}: {m}");
        }
    }
}

#[test]
fn partitions_merge_in_any_order() {
    for q in [3, 5, 7] {
        let k = G2Kernel::new(q).unwrap();
        let parts: Vec<PartCounts> = (0..k.partitions()).map(|i| k.run_partition(i, EnumerationOrder::Ascending)).collect();
        let mut fwd = PartCounts::default();
        parts.iter().for_each(|p| fwd.merge(p));
        let mut rev = PartCounts::default();
        parts.iter().rev().for_each(|p| rev.merge(p));
        assert_eq!(k.finish(&fwd).masses, g2_census(q).unwrap().masses);
        assert_eq!(k.finish(&rev).masses, k.finish(&fwd).masses);
    }
}

#[test]
fn weighted_character_sums_agree_across_orders() {
    for q in [3u64, 5, 7] {
        let a = CensusStore::in_memory(7).with_order(EnumerationOrder::Ascending).g2(q).unwrap();
        let b = CensusStore::in_memory(7).with_order(EnumerationOrder::Gray).g2(q).unwrap();
        assert_eq!(a.total_mass(), b.total_mass());
        for (l, m) in [(0, 0), (2, 0), (3, 1), (4, 2), (6, 4)] {
            let ch = SpChar::new(l, m, q);
            let sum = |c: &siegel_core::census::G2Census| -> Rat {
                c.masses.iter().map(|(&(t, e), w)| w * Rat::from_integer(ch.eval_int(t, e))).sum()
            };
            assert_eq!(sum(&a), sum(&b), "q = {q}, (l, m) = ({l}, {m})");
        }
    }
}

#[test]
fn sigma_is_integral() {
    for q in [2, 3, 5, 7, 11, 13] {
        let c = ell_census(q).unwrap();
        for k in (2..=24).step_by(2) {
            assert!(sigma(k, &c).is_integer(), "σ_{k}({q})");
        }
    }
}

#[test]
fn json_round_trip() {
    for q in [3, 4, 5, 9] {
        let c = ell_census(q).unwrap();
        assert_eq!(ell_from_json(&ell_to_json(&c)).unwrap(), c);
    }
    let c = g2_census(5).unwrap();
    let back = g2_from_json(&g2_to_json(&c)).unwrap();
    assert_eq!(back.masses, c.masses);
    assert_eq!(back.total_mass(), Rat::from_integer(125.into()));
}

#[test]
fn disk_store_round_trip_and_cached_only() {
    let dir = tempfile::tempdir().unwrap();
    let missing = CensusStore::on_disk(dir.path(), 7, true);
    assert!(missing.g2(5).is_err());
    let fresh = CensusStore::on_disk(dir.path(), 7, false).g2(5).unwrap();
    let loaded = CensusStore::on_disk(dir.path(), 7, true).g2(5).unwrap();
    assert_eq!(fresh.masses, loaded.masses);
    assert!(!fresh.masses.values().any(|m| m.is_zero()));
}

#[test]
fn resume_reuses_checkpoints() {
    let dir = tempfile::tempdir().unwrap();
    let a = g2_census_checkpointed(5, EnumerationOrder::Ascending, 7, dir.path(), false).unwrap();
    let b = g2_census_checkpointed(5, EnumerationOrder::Gray, 7, dir.path(), true).unwrap();
    assert_eq!(a.masses, b.masses);
    // only the merged census is left behind
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(files.len(), 1, "{files:?}");
}
