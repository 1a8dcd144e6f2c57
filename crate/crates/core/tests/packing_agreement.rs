//! The packing oracle must agree with the constructors wherever both run:
//! exhaustively on Q_3 (see the acceptance suite), and as a lower-bound
//! certification on D_4 samples here. A single terminal set may admit more
//! than `n - 1` trees; the `delta - 1` ceiling binds the minimum over all
//! sets, attained at sets containing an adjacent pair.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dualcube::graph::Graph;
use dualcube::oracle::{max_stree_packing, Packing};
use dualcube::sampler;
use dualcube::steiner::strees4;
use dualcube::{DualCube, Label};

#[test]
fn d4_lower_bound_certifies_constructed_counts() {
    let d = DualCube::new(4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xabc);
    for _ in 0..12 {
        let terminals = sampler::sample_any(&d, &mut rng);
        let built = strees4(&d, &terminals).unwrap().tree_count();
        assert_eq!(built, 3);
        match max_stree_packing(&d, &terminals).unwrap() {
            Packing::LowerBound(k) => {
                assert!(k >= 3, "oracle found only {k} trees for {terminals:?}");
            }
            Packing::Exact(_) => panic!("D_4 is beyond the exhaustive regime"),
        }
    }
}

#[test]
fn adjacent_pairs_pin_the_packing_at_n_minus_one() {
    // with two adjacent terminals every tree spends an edge at each of
    // them, which caps any disjoint family at degree - 1 = 3; the greedy
    // bound meeting 3 therefore certifies optimality on these sets
    let d = DualCube::new(4).unwrap();
    let x: Label = "0000000".parse().unwrap();
    for y in d.neighbors(x).into_iter().take(2) {
        for far in ["1111111", "1010101"] {
            let z: Label = far.parse().unwrap();
            let w = d.outside_neighbor(z);
            let terminals = vec![x, y, z, w];
            assert_eq!(strees4(&d, &terminals).unwrap().tree_count(), 3);
            match max_stree_packing(&d, &terminals).unwrap() {
                Packing::LowerBound(k) => {
                    assert_eq!(k, 3, "terminals {terminals:?}")
                }
                Packing::Exact(_) => unreachable!(),
            }
        }
    }
}
