//! Spot checks beyond the acceptance envelope: the constructions keep
//! working at larger orders, including the greedy-only hypercube regime.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dualcube::compcut::{component_cut, cut_size_formula, verify_cut};
use dualcube::oracle::verify_tree_set;
use dualcube::sampler;
use dualcube::steiner::{strees4_traced, ProfileKind};
use dualcube::DualCube;

#[test]
fn d6_trees_across_profiles() {
    let d = DualCube::new(6).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for kind in sampler::ALL_PROFILES {
        let terminals = sampler::sample_profile(&d, kind, &mut rng);
        let (ts, _) = strees4_traced(&d, &terminals)
            .unwrap_or_else(|e| panic!("{kind:?} {terminals:?}: {e}"));
        assert_eq!(ts.tree_count(), 5);
        assert!(verify_tree_set(&d, &ts, Some(5)).overall(), "{kind:?}");
    }
}

#[test]
fn d7_one_cluster_uses_greedy_packing_only() {
    // Q_6 inside a cluster is beyond the exhaustive fallback
    let d = DualCube::new(7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let terminals = sampler::sample_profile(&d, ProfileKind::OneCluster, &mut rng);
    let (ts, trace) = strees4_traced(&d, &terminals).unwrap();
    assert_eq!(trace.as_str(), "one-cluster");
    assert_eq!(ts.tree_count(), 6);
    assert!(verify_tree_set(&d, &ts, Some(6)).overall());
}

#[test]
fn d8_component_cuts() {
    let d = DualCube::new(8).unwrap();
    for r in [1u8, 4, 7] {
        let cut = component_cut(&d, r).unwrap();
        assert_eq!(cut.removed.len(), cut_size_formula(8, r).unwrap());
        assert!(verify_cut(&d, &cut).unwrap().claims_hold);
    }
}
