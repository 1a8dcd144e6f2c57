//! Exhaustive hypercube coverage: every 4-subset of Q_4 yields three
//! verified trees, which closes the whole one-cluster input space for
//! order-5 dual cubes; star-shaped sets exercise the greedy-only regime.

use dualcube::oracle::verify_tree_set;
use dualcube::steiner::hypercube_strees4;
use dualcube::{Graph, Hypercube, Label};

#[test]
fn all_q4_quadruples_give_three_trees() {
    let q = Hypercube::new(4).unwrap();
    let vs = q.vertices();
    let mut count = 0;
    for a in 0..16 {
        for b in a + 1..16 {
            for c in b + 1..16 {
                for e in c + 1..16 {
                    let terms = vec![vs[a], vs[b], vs[c], vs[e]];
                    let ts = hypercube_strees4(&q, &terms)
                        .unwrap_or_else(|err| panic!("{terms:?}: {err}"));
                    assert_eq!(ts.tree_count(), 3);
                    let rep = verify_tree_set(&q, &ts, Some(3));
                    assert!(rep.overall(), "{terms:?}");
                    count += 1;
                }
            }
        }
    }
    assert_eq!(count, 1820);
}

#[test]
fn greedy_handles_stars_in_big_cubes() {
    for m in [5u8, 6] {
        let q = Hypercube::new(m).unwrap();
        let center: Label = "0".repeat(m as usize).parse().unwrap();
        let nbrs = q.neighbors(center);
        let terms = vec![center, nbrs[0], nbrs[1], nbrs[2]];
        let ts = hypercube_strees4(&q, &terms).unwrap();
        assert_eq!(ts.tree_count(), m as usize - 1);
        assert!(verify_tree_set(&q, &ts, Some(m as usize - 1)).overall());
    }
}
