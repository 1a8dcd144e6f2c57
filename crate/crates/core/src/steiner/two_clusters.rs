//! Tree constructions for terminal sets spread over exactly two clusters.
//!
//! Four shapes arise: 3+1 within one class, 3+1 across classes, 2+2 within
//! one class and 2+2 across classes. The 3-heavy shapes first build `n-2`
//! trees joining the triple inside its cluster by splitting that cluster
//! along a dimension where two of the terminals differ, then route each
//! tree outward through its pivot's own cluster; the final tree connects
//! the terminals' outside neighbours through untouched clusters. The 3+1
//! cross-class shape needs extra care because the lone terminal may sit in
//! a cluster the construction wants to route through, or even coincide with
//! an outside neighbour; each coincidence has its own branch.

use std::collections::BTreeSet;

use crate::graph::{bfs_path, Graph, Subgraph};
use crate::label::Label;
use crate::menger::{disjoint_paths, fan, Path};
use crate::topology::{ClusterRef, DualCube};

use super::pivots::assign_pivots;
use super::{
    add_edge, add_path, aligned_fan, cluster_sub, connect_in, forced_target, residual_sub,
    union_sub, CaseTrace, ProfileKind, Reservation, SteinerError, TerminalSet, TreeEdges, TreeSet,
};

pub fn strees_two_clusters(
    d: &DualCube,
    ts: &TerminalSet,
) -> Result<(TreeSet, CaseTrace), SteinerError> {
    match ts.profile()? {
        ProfileKind::ThreeOneSame => three_one_same(d, ts),
        ProfileKind::ThreeOneCross => three_one_cross(d, ts),
        ProfileKind::TwoTwoSame => two_two_same(d, ts),
        ProfileKind::TwoTwoCross => two_two_cross(d, ts),
        other => Err(SteinerError::InvalidTerminals(format!(
            "not a two-cluster terminal set ({other})"
        ))),
    }
}

/// The in-cluster skeleton shared by both 3+1 shapes: `n-2` trees joining
/// the triple, each exposing a distinct non-terminal pivot.
struct TripleTrees {
    trees: Vec<TreeEdges>,
    pivots: Vec<Label>,
}

fn triple_trees_in_cluster(
    d: &DualCube,
    c: &ClusterRef,
    terms: [Label; 3],
    n: u8,
) -> Result<TripleTrees, SteinerError> {
    let [x, y, z] = terms;
    let free_positions: Vec<u8> = if c.class_bit() == 0 {
        (1..=n - 1).collect()
    } else {
        (n..=2 * n - 2).collect()
    };
    let dpos = *free_positions
        .iter()
        .find(|&&p| x.bit(p) != y.bit(p))
        .expect("distinct vertices of one cluster differ in a free position");
    // `a` shares z's side of the split, `b` sits alone on the other side
    let (a, b) = if z.bit(dpos) == x.bit(dpos) {
        (x, y)
    } else {
        (y, x)
    };
    let near: BTreeSet<Label> = c
        .vertices()
        .into_iter()
        .filter(|v| v.bit(dpos) == a.bit(dpos))
        .collect();
    let far: BTreeSet<Label> = c
        .vertices()
        .into_iter()
        .filter(|v| v.bit(dpos) != a.bit(dpos))
        .collect();
    let sub_near = Subgraph::new(d, near);
    let sub_far = Subgraph::new(d, far);

    let k = n as usize - 2;
    let paths = disjoint_paths(&sub_near, a, z, k)?;
    // the far-side mate of a pivot must not be b itself
    let banned = BTreeSet::from([b.flip(dpos)]);
    let anchors = assign_pivots(&paths, &banned).ok_or_else(|| {
        SteinerError::Internal("split-side pivot assignment cannot fail with one ban".into())
    })?;
    let mates: Vec<Label> = anchors.iter().map(|p| p.flip(dpos)).collect();
    debug_assert!(mates.iter().all(|&m| m != b));

    let mate_set: BTreeSet<Label> = mates.iter().copied().collect();
    let far_fan = fan(&sub_far, b, &mate_set, k)?;
    let mut by_end: Vec<(Label, Path)> = far_fan.paths.into_iter().map(|p| (p.last(), p)).collect();

    let mut trees = Vec::with_capacity(k);
    for (i, path) in paths.iter().enumerate() {
        let mut tree = TreeEdges::new();
        add_path(&mut tree, path);
        add_edge(&mut tree, anchors[i], mates[i]);
        let pos = by_end
            .iter()
            .position(|(end, _)| *end == mates[i])
            .expect("fan covers every mate");
        add_path(&mut tree, &by_end.swap_remove(pos).1);
        trees.push(tree);
    }
    Ok(TripleTrees {
        trees,
        pivots: mates,
    })
}

fn three_one_same(d: &DualCube, ts: &TerminalSet) -> Result<(TreeSet, CaseTrace), SteinerError> {
    let n = d.order();
    let (c_a, triple) = &ts.groups()[0];
    let (c_b, single) = &ts.groups()[1];
    let [x, y, z] = [triple[0], triple[1], triple[2]];
    let w = single[0];

    let trip = triple_trees_in_cluster(d, c_a, [x, y, z], n)?;
    let mut res = Reservation::new();
    res.mark(*c_a);
    res.mark(*c_b);
    let pivot_clusters: Vec<ClusterRef> = trip
        .pivots
        .iter()
        .map(|&p| d.cluster_of(d.outside_neighbor(p)))
        .collect();
    for &kc in &pivot_clusters {
        res.mark(kc);
    }
    let fresh = res.reserve(d, 1 - c_a.class_bit())?;

    let mut w_targets: Vec<Label> = pivot_clusters
        .iter()
        .map(|kc| forced_target(d, c_b, kc))
        .collect();
    w_targets.push(forced_target(d, c_b, &fresh));
    let fan_paths = aligned_fan(d, c_b, w, &w_targets)?;

    let mut trees = Vec::with_capacity(n as usize - 1);
    for i in 0..n as usize - 2 {
        let mut tree = trip.trees[i].clone();
        let pivot = trip.pivots[i];
        let pivot_out = d.outside_neighbor(pivot);
        let wi = w_targets[i];
        let wi_out = d.outside_neighbor(wi);
        add_edge(&mut tree, pivot, pivot_out);
        add_edge(&mut tree, wi, wi_out);
        let ksub = cluster_sub(d, &pivot_clusters[i]);
        let link = bfs_path(&ksub, pivot_out, wi_out)
            .ok_or_else(|| SteinerError::Internal("connector cluster is connected".into()))?;
        add_path(&mut tree, &Path::new(link));
        add_path(&mut tree, &fan_paths[i]);
        trees.push(tree);
    }

    let mut excluded: BTreeSet<ClusterRef> = pivot_clusters.iter().copied().collect();
    excluded.insert(*c_a);
    excluded.insert(*c_b);
    let sub = residual_sub(d, &excluded);
    let w_last = w_targets[n as usize - 2];
    let w_last_out = d.outside_neighbor(w_last);
    let projected = [
        d.outside_neighbor(x),
        d.outside_neighbor(y),
        d.outside_neighbor(z),
        w_last_out,
    ];
    let mut last = connect_in(&sub, &projected)?;
    for &t in &[x, y, z] {
        add_edge(&mut last, t, d.outside_neighbor(t));
    }
    add_edge(&mut last, w_last, w_last_out);
    add_path(&mut last, &fan_paths[n as usize - 2]);
    trees.push(last);

    Ok((
        TreeSet::new(n, ts.vertices().to_vec(), trees),
        CaseTrace::new("two-clusters/3+1-same"),
    ))
}

fn three_one_cross(d: &DualCube, ts: &TerminalSet) -> Result<(TreeSet, CaseTrace), SteinerError> {
    let n = d.order();
    let (c_a, triple) = &ts.groups()[0];
    let (c_w, single) = &ts.groups()[1];
    let [x, y, z] = [triple[0], triple[1], triple[2]];
    let w = single[0];

    let trip = triple_trees_in_cluster(d, c_a, [x, y, z], n)?;
    let pivot_clusters: Vec<ClusterRef> = trip
        .pivots
        .iter()
        .map(|&p| d.cluster_of(d.outside_neighbor(p)))
        .collect();
    let hit_idx = pivot_clusters.iter().position(|kc| kc == c_w);

    // w's in-cluster neighbours that do not project back into the triple's
    // cluster; n-2 of them shield w's cluster, one is kept spare.
    let wnbrs: Vec<Label> = d
        .neighbors(w)
        .into_iter()
        .filter(|v| c_w.contains(*v))
        .collect();
    let eligible: Vec<Label> = wnbrs
        .iter()
        .copied()
        .filter(|&v| d.cluster_of(d.outside_neighbor(v)) != *c_a)
        .collect();
    let (shield, spare): (Vec<Label>, Label) = if eligible.len() == wnbrs.len() {
        (
            eligible[..n as usize - 2].to_vec(),
            eligible[n as usize - 2],
        )
    } else {
        debug_assert_eq!(eligible.len(), n as usize - 2);
        let excluded = *wnbrs
            .iter()
            .find(|v| !eligible.contains(v))
            .expect("exactly one neighbour was filtered");
        (eligible.clone(), excluded)
    };
    let shield_clusters: Vec<ClusterRef> = shield
        .iter()
        .map(|&v| d.cluster_of(d.outside_neighbor(v)))
        .collect();

    let mut excluded: BTreeSet<ClusterRef> = pivot_clusters.iter().copied().collect();
    excluded.extend(shield_clusters.iter().copied());
    excluded.insert(*c_a);
    excluded.insert(*c_w);

    let cw_vertices: BTreeSet<Label> = c_w
        .vertices()
        .into_iter()
        .filter(|v| !shield.contains(v))
        .collect();
    let cw_minus_shield = Subgraph::new(d, cw_vertices);

    // a tree that walks the triple's skeleton out through a shield vertex
    let shielded_tree = |i: usize, si: usize| -> Result<TreeEdges, SteinerError> {
        let mut tree = trip.trees[i].clone();
        let pivot = trip.pivots[i];
        let pivot_out = d.outside_neighbor(pivot);
        let sv = shield[si];
        let sv_out = d.outside_neighbor(sv);
        add_edge(&mut tree, pivot, pivot_out);
        add_edge(&mut tree, sv, sv_out);
        add_edge(&mut tree, sv, w);
        let route = union_sub(d, &[shield_clusters[si], pivot_clusters[i]]);
        let link = bfs_path(&route, sv_out, pivot_out)
            .ok_or_else(|| SteinerError::Internal("shield route is connected".into()))?;
        add_path(&mut tree, &Path::new(link));
        Ok(tree)
    };

    let mut trees: Vec<TreeEdges> = Vec::with_capacity(n as usize - 1);
    let trace;
    match hit_idx {
        None => {
            for i in 0..n as usize - 2 {
                trees.push(shielded_tree(i, i)?);
            }
            let outsider = [x, y, z]
                .into_iter()
                .find(|&t| d.cluster_of(d.outside_neighbor(t)) == *c_w);
            match outsider {
                Some(tau) => {
                    let tau_out = d.outside_neighbor(tau);
                    let others: Vec<Label> = [x, y, z].into_iter().filter(|&t| t != tau).collect();
                    let mut last = TreeEdges::new();
                    if tau_out != w {
                        let link = bfs_path(&cw_minus_shield, tau_out, w).ok_or_else(|| {
                            SteinerError::Internal("shielded cluster stays connected".into())
                        })?;
                        add_path(&mut last, &Path::new(link));
                        add_edge(&mut last, tau, tau_out);
                        let w_out = d.outside_neighbor(w);
                        debug_assert_ne!(d.cluster_of(w_out), *c_a);
                        add_edge(&mut last, w, w_out);
                        let projected = [
                            d.outside_neighbor(others[0]),
                            d.outside_neighbor(others[1]),
                            w_out,
                        ];
                        let sub = residual_sub(d, &excluded);
                        last.extend(connect_in(&sub, &projected)?);
                        trace = "two-clusters/3+1-cross/pivot-miss/terminal-hit/distinct";
                    } else {
                        add_edge(&mut last, tau, w);
                        let spare_out = d.outside_neighbor(spare);
                        debug_assert_ne!(d.cluster_of(spare_out), *c_a);
                        add_edge(&mut last, w, spare);
                        add_edge(&mut last, spare, spare_out);
                        let projected = [
                            d.outside_neighbor(others[0]),
                            d.outside_neighbor(others[1]),
                            spare_out,
                        ];
                        let sub = residual_sub(d, &excluded);
                        last.extend(connect_in(&sub, &projected)?);
                        trace = "two-clusters/3+1-cross/pivot-miss/terminal-hit/equal";
                    }
                    for &t in &others {
                        add_edge(&mut last, t, d.outside_neighbor(t));
                    }
                    trees.push(last);
                }
                None => {
                    let w_out = d.outside_neighbor(w);
                    let mut last = TreeEdges::new();
                    let anchor = if d.cluster_of(w_out) != *c_a {
                        add_edge(&mut last, w, w_out);
                        trace = "two-clusters/3+1-cross/pivot-miss/plain";
                        w_out
                    } else {
                        let spare_out = d.outside_neighbor(spare);
                        debug_assert_ne!(d.cluster_of(spare_out), *c_a);
                        add_edge(&mut last, w, spare);
                        add_edge(&mut last, spare, spare_out);
                        trace = "two-clusters/3+1-cross/pivot-miss/spare";
                        spare_out
                    };
                    let projected = [
                        d.outside_neighbor(x),
                        d.outside_neighbor(y),
                        d.outside_neighbor(z),
                        anchor,
                    ];
                    let sub = residual_sub(d, &excluded);
                    last.extend(connect_in(&sub, &projected)?);
                    for &t in &[x, y, z] {
                        add_edge(&mut last, t, d.outside_neighbor(t));
                    }
                    trees.push(last);
                }
            }
        }
        Some(i0) => {
            // one pivot already projects into w's cluster: its tree walks
            // straight to w, and the shield pairs with the other pivots
            let pivot = trip.pivots[i0];
            let pivot_out = d.outside_neighbor(pivot);
            let mut special = trip.trees[i0].clone();
            add_edge(&mut special, pivot, pivot_out);
            let equal = pivot_out == w;
            if !equal {
                let link = bfs_path(&cw_minus_shield, pivot_out, w).ok_or_else(|| {
                    SteinerError::Internal("shielded cluster stays connected".into())
                })?;
                add_path(&mut special, &Path::new(link));
            }
            trees.push(special);

            let mut si = 0;
            for i in 0..n as usize - 2 {
                if i == i0 {
                    continue;
                }
                trees.push(shielded_tree(i, si)?);
                si += 1;
            }

            let mut last = TreeEdges::new();
            let anchor = if !equal {
                let w_out = d.outside_neighbor(w);
                debug_assert_ne!(d.cluster_of(w_out), *c_a);
                add_edge(&mut last, w, w_out);
                trace = "two-clusters/3+1-cross/pivot-hit/distinct";
                w_out
            } else {
                let spare_out = d.outside_neighbor(spare);
                debug_assert_ne!(d.cluster_of(spare_out), *c_a);
                add_edge(&mut last, w, spare);
                add_edge(&mut last, spare, spare_out);
                trace = "two-clusters/3+1-cross/pivot-hit/equal";
                spare_out
            };
            let projected = [
                d.outside_neighbor(x),
                d.outside_neighbor(y),
                d.outside_neighbor(z),
                anchor,
            ];
            let sub = residual_sub(d, &excluded);
            last.extend(connect_in(&sub, &projected)?);
            for &t in &[x, y, z] {
                add_edge(&mut last, t, d.outside_neighbor(t));
            }
            trees.push(last);
        }
    }

    Ok((
        TreeSet::new(n, ts.vertices().to_vec(), trees),
        CaseTrace::new(trace),
    ))
}

fn two_two_same(d: &DualCube, ts: &TerminalSet) -> Result<(TreeSet, CaseTrace), SteinerError> {
    let n = d.order();
    let k = n as usize - 1;
    let (c_a, ab) = &ts.groups()[0];
    let (c_b, cd) = &ts.groups()[1];
    let paths_a = disjoint_paths(&cluster_sub(d, c_a), ab[0], ab[1], k)?;
    let paths_b = disjoint_paths(&cluster_sub(d, c_b), cd[0], cd[1], k)?;
    let piv_a = assign_pivots(&paths_a, &BTreeSet::new())
        .ok_or_else(|| SteinerError::Internal("unbanned pivots always exist".into()))?;
    let piv_b = assign_pivots(&paths_b, &BTreeSet::new())
        .ok_or_else(|| SteinerError::Internal("unbanned pivots always exist".into()))?;
    let ka: Vec<ClusterRef> = piv_a
        .iter()
        .map(|&p| d.cluster_of(d.outside_neighbor(p)))
        .collect();
    let kb: Vec<ClusterRef> = piv_b
        .iter()
        .map(|&p| d.cluster_of(d.outside_neighbor(p)))
        .collect();

    let mut res = Reservation::new();
    res.mark(*c_a);
    res.mark(*c_b);
    for &c in ka.iter().chain(kb.iter()) {
        res.mark(c);
    }

    let pairs = super::match_hub_pairs(&ka, &kb);
    let any_shared = pairs.iter().any(|&(_, _, shared)| shared);
    let mut trees = Vec::with_capacity(k);
    for &(i, j, shared) in &pairs {
        let mut tree = TreeEdges::new();
        add_path(&mut tree, &paths_a[i]);
        add_path(&mut tree, &paths_b[j]);
        let pa_out = d.outside_neighbor(piv_a[i]);
        let pb_out = d.outside_neighbor(piv_b[j]);
        add_edge(&mut tree, piv_a[i], pa_out);
        add_edge(&mut tree, piv_b[j], pb_out);
        let link = if shared {
            let sub = cluster_sub(d, &ka[i]);
            bfs_path(&sub, pa_out, pb_out)
        } else {
            let bridge = res.reserve(d, c_a.class_bit())?;
            let sub = union_sub(d, &[ka[i], kb[j], bridge]);
            bfs_path(&sub, pa_out, pb_out)
        }
        .ok_or_else(|| SteinerError::Internal("connector region is connected".into()))?;
        add_path(&mut tree, &Path::new(link));
        trees.push(tree);
    }
    let trace = if any_shared {
        "two-clusters/2+2-same/shared"
    } else {
        "two-clusters/2+2-same/bridged"
    };
    Ok((
        TreeSet::new(n, ts.vertices().to_vec(), trees),
        CaseTrace::new(trace),
    ))
}

fn two_two_cross(d: &DualCube, ts: &TerminalSet) -> Result<(TreeSet, CaseTrace), SteinerError> {
    let n = d.order();
    let k = n as usize - 1;
    let (c_a, ab) = &ts.groups()[0];
    let (c_w, cd) = &ts.groups()[1];
    let paths_a = disjoint_paths(&cluster_sub(d, c_a), ab[0], ab[1], k)?;
    let paths_w = disjoint_paths(&cluster_sub(d, c_w), cd[0], cd[1], k)?;
    // a pivot may not project into the opposite terminal cluster; exactly
    // one vertex per cluster could, namely the shared cross edge's endpoint
    let (a_side, w_side) = d.cross_edge_between(c_a, c_w).unwrap();
    let piv_a = assign_pivots(&paths_a, &BTreeSet::from([a_side]))
        .ok_or_else(|| SteinerError::Internal("single ban leaves a pivot".into()))?;
    let piv_w = assign_pivots(&paths_w, &BTreeSet::from([w_side]))
        .ok_or_else(|| SteinerError::Internal("single ban leaves a pivot".into()))?;

    let mut trees = Vec::with_capacity(k);
    for i in 0..k {
        let mut tree = TreeEdges::new();
        add_path(&mut tree, &paths_a[i]);
        add_path(&mut tree, &paths_w[i]);
        let pa_out = d.outside_neighbor(piv_a[i]);
        let pw_out = d.outside_neighbor(piv_w[i]);
        debug_assert_ne!(d.cluster_of(pa_out), *c_w);
        debug_assert_ne!(d.cluster_of(pw_out), *c_a);
        add_edge(&mut tree, piv_a[i], pa_out);
        add_edge(&mut tree, piv_w[i], pw_out);
        let sub = union_sub(d, &[d.cluster_of(pa_out), d.cluster_of(pw_out)]);
        let link = bfs_path(&sub, pa_out, pw_out)
            .ok_or_else(|| SteinerError::Internal("connector pair is connected".into()))?;
        add_path(&mut tree, &Path::new(link));
        trees.push(tree);
    }
    Ok((
        TreeSet::new(n, ts.vertices().to_vec(), trees),
        CaseTrace::new("two-clusters/2+2-cross"),
    ))
}
