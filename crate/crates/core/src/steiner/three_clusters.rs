//! Tree constructions for terminal sets occupying exactly three clusters:
//! a pair `{x, y}` in one cluster plus two singletons.
//!
//!每 tree owns one of the `n-1` disjoint x-y paths, a pivot on that path
//! carrying it into a private connector cluster, and one fan path from each
//! singleton. When both singletons sit opposite the pair's class, the pivot
//! of a length-one path can be forced into the singletons' own clusters;
//! that degenerate shape is detected and routed through direct neighbour
//! shields instead of fans.

use std::collections::BTreeSet;

use crate::graph::{bfs_path, Graph, Subgraph};
use crate::label::Label;
use crate::menger::{disjoint_paths, Path};
use crate::topology::{ClusterRef, DualCube};

use super::pivots::assign_pivots;
use super::{
    add_edge, add_path, aligned_fan, connect_in, forced_target, free_targets, union_sub, CaseTrace,
    ProfileKind, SteinerError, TerminalSet, TreeEdges, TreeSet,
};

pub fn strees_three_clusters(
    d: &DualCube,
    ts: &TerminalSet,
) -> Result<(TreeSet, CaseTrace), SteinerError> {
    let ProfileKind::TwoOneOne {
        singles_in_pair_class,
    } = ts.profile()?
    else {
        return Err(SteinerError::InvalidTerminals(
            "not a three-cluster terminal set".into(),
        ));
    };
    let (c_p, pair) = &ts.groups()[0];
    let singles = [&ts.groups()[1], &ts.groups()[2]];
    match singles_in_pair_class {
        2 => all_same(d, ts, c_p, [pair[0], pair[1]], singles),
        1 => {
            let same = singles
                .iter()
                .find(|(c, _)| c.class_bit() == c_p.class_bit())
                .unwrap();
            let cross = singles
                .iter()
                .find(|(c, _)| c.class_bit() != c_p.class_bit())
                .unwrap();
            mixed(d, ts, c_p, [pair[0], pair[1]], same, cross)
        }
        _ => pair_alone(d, ts, c_p, [pair[0], pair[1]], singles),
    }
}

fn all_same(
    d: &DualCube,
    ts: &TerminalSet,
    c_p: &ClusterRef,
    [x, y]: [Label; 2],
    singles: [&(ClusterRef, Vec<Label>); 2],
) -> Result<(TreeSet, CaseTrace), SteinerError> {
    let n = d.order();
    let k = n as usize - 1;
    let (c_z, zs) = singles[0];
    let (c_w, ws) = singles[1];
    let (z, w) = (zs[0], ws[0]);

    let paths = disjoint_paths(&super::cluster_sub(d, c_p), x, y, k)?;
    let pivots = assign_pivots(&paths, &BTreeSet::new())
        .ok_or_else(|| SteinerError::Internal("unbanned pivots always exist".into()))?;
    let connectors: Vec<ClusterRef> = pivots
        .iter()
        .map(|&p| d.cluster_of(d.outside_neighbor(p)))
        .collect();

    let z_targets: Vec<Label> = connectors
        .iter()
        .map(|c| forced_target(d, c_z, c))
        .collect();
    let w_targets: Vec<Label> = connectors
        .iter()
        .map(|c| forced_target(d, c_w, c))
        .collect();
    let z_fans = aligned_fan(d, c_z, z, &z_targets)?;
    let w_fans = aligned_fan(d, c_w, w, &w_targets)?;

    let mut trees = Vec::with_capacity(k);
    for i in 0..k {
        let mut tree = TreeEdges::new();
        add_path(&mut tree, &paths[i]);
        add_path(&mut tree, &z_fans[i]);
        add_path(&mut tree, &w_fans[i]);
        let p_out = d.outside_neighbor(pivots[i]);
        let z_out = d.outside_neighbor(z_targets[i]);
        let w_out = d.outside_neighbor(w_targets[i]);
        add_edge(&mut tree, pivots[i], p_out);
        add_edge(&mut tree, z_targets[i], z_out);
        add_edge(&mut tree, w_targets[i], w_out);
        let hub = super::cluster_sub(d, &connectors[i]);
        tree.extend(connect_in(&hub, &[p_out, z_out, w_out])?);
        trees.push(tree);
    }
    Ok((
        TreeSet::new(n, ts.vertices().to_vec(), trees),
        CaseTrace::new("three-clusters/all-same"),
    ))
}

fn mixed(
    d: &DualCube,
    ts: &TerminalSet,
    c_p: &ClusterRef,
    [x, y]: [Label; 2],
    same: &(ClusterRef, Vec<Label>),
    cross: &(ClusterRef, Vec<Label>),
) -> Result<(TreeSet, CaseTrace), SteinerError> {
    let n = d.order();
    let k = n as usize - 1;
    let (c_z, z) = (&same.0, same.1[0]);
    let (c_w, w) = (&cross.0, cross.1[0]);

    let paths = disjoint_paths(&super::cluster_sub(d, c_p), x, y, k)?;
    let (blocked, _) = d.cross_edge_between(c_p, c_w).unwrap();
    let pivots = assign_pivots(&paths, &BTreeSet::from([blocked]))
        .ok_or_else(|| SteinerError::Internal("one ban leaves a pivot per path".into()))?;
    let connectors: Vec<ClusterRef> = pivots
        .iter()
        .map(|&p| d.cluster_of(d.outside_neighbor(p)))
        .collect();
    debug_assert!(connectors.iter().all(|c| c != c_w));

    let z_targets: Vec<Label> = connectors
        .iter()
        .map(|c| forced_target(d, c_z, c))
        .collect();
    let w_picks = free_targets(d, c_w, w, k, &BTreeSet::from([*c_p, *c_z]))?;
    let z_fans = aligned_fan(d, c_z, z, &z_targets)?;
    let w_targets: Vec<Label> = w_picks.iter().map(|&(v, _)| v).collect();
    let w_fans = aligned_fan(d, c_w, w, &w_targets)?;

    let mut trees = Vec::with_capacity(k);
    for i in 0..k {
        let mut tree = TreeEdges::new();
        add_path(&mut tree, &paths[i]);
        add_path(&mut tree, &z_fans[i]);
        add_path(&mut tree, &w_fans[i]);
        let p_out = d.outside_neighbor(pivots[i]);
        let z_out = d.outside_neighbor(z_targets[i]);
        let w_out = d.outside_neighbor(w_targets[i]);
        add_edge(&mut tree, pivots[i], p_out);
        add_edge(&mut tree, z_targets[i], z_out);
        add_edge(&mut tree, w_targets[i], w_out);
        let hub = union_sub(d, &[connectors[i], w_picks[i].1]);
        tree.extend(connect_in(&hub, &[p_out, z_out, w_out])?);
        trees.push(tree);
    }
    Ok((
        TreeSet::new(n, ts.vertices().to_vec(), trees),
        CaseTrace::new("three-clusters/mixed"),
    ))
}

fn pair_alone(
    d: &DualCube,
    ts: &TerminalSet,
    c_p: &ClusterRef,
    [x, y]: [Label; 2],
    singles: [&(ClusterRef, Vec<Label>); 2],
) -> Result<(TreeSet, CaseTrace), SteinerError> {
    let n = d.order();
    let k = n as usize - 1;
    let (c_z, zs) = singles[0];
    let (c_w, ws) = singles[1];
    let (z, w) = (zs[0], ws[0]);

    let paths = disjoint_paths(&super::cluster_sub(d, c_p), x, y, k)?;
    let (blocked_z, _) = d.cross_edge_between(c_p, c_z).unwrap();
    let (blocked_w, _) = d.cross_edge_between(c_p, c_w).unwrap();
    let banned = BTreeSet::from([blocked_z, blocked_w]);

    match assign_pivots(&paths, &banned) {
        Some(pivots) => {
            let connectors: Vec<ClusterRef> = pivots
                .iter()
                .map(|&p| d.cluster_of(d.outside_neighbor(p)))
                .collect();
            debug_assert!(connectors.iter().all(|c| c != c_z && c != c_w));
            // the z-side free targets must dodge w's projection so the
            // forced picks in w's cluster can never be w itself
            let w_shadow = d.cluster_of(d.outside_neighbor(w));
            let z_picks = free_targets(d, c_z, z, k, &BTreeSet::from([*c_p, w_shadow]))?;
            let z_targets: Vec<Label> = z_picks.iter().map(|&(v, _)| v).collect();
            let w_targets: Vec<Label> = z_picks
                .iter()
                .map(|&(_, hub)| forced_target(d, c_w, &hub))
                .collect();
            debug_assert!(w_targets.iter().all(|&t| t != w));
            let z_fans = aligned_fan(d, c_z, z, &z_targets)?;
            let w_fans = aligned_fan(d, c_w, w, &w_targets)?;

            let mut trees = Vec::with_capacity(k);
            for i in 0..k {
                let mut tree = TreeEdges::new();
                add_path(&mut tree, &paths[i]);
                add_path(&mut tree, &z_fans[i]);
                add_path(&mut tree, &w_fans[i]);
                let p_out = d.outside_neighbor(pivots[i]);
                let z_out = d.outside_neighbor(z_targets[i]);
                let w_out = d.outside_neighbor(w_targets[i]);
                add_edge(&mut tree, pivots[i], p_out);
                add_edge(&mut tree, z_targets[i], z_out);
                add_edge(&mut tree, w_targets[i], w_out);
                let hub = union_sub(d, &[connectors[i], z_picks[i].1]);
                tree.extend(connect_in(&hub, &[p_out, z_out, w_out])?);
                trees.push(tree);
            }
            Ok((
                TreeSet::new(n, ts.vertices().to_vec(), trees),
                CaseTrace::new("three-clusters/pair-alone/spread"),
            ))
        }
        None => edge_fallback(d, ts, c_p, [x, y], (c_z, z), (c_w, w), &paths),
    }
}

/// The x-y edge itself is a path and both its endpoints project into the
/// singleton clusters. That path becomes its own tree walking straight into
/// both clusters; the other trees leave through direct neighbours of the
/// singletons instead of fans.
#[allow(clippy::too_many_arguments)]
fn edge_fallback(
    d: &DualCube,
    ts: &TerminalSet,
    c_p: &ClusterRef,
    [x, y]: [Label; 2],
    (c_z, z): (&ClusterRef, Label),
    (c_w, w): (&ClusterRef, Label),
    paths: &[Path],
) -> Result<(TreeSet, CaseTrace), SteinerError> {
    let n = d.order();
    let direct = paths
        .iter()
        .position(|p| p.len() == 1)
        .ok_or_else(|| SteinerError::Internal("pivot failure implies a direct edge".into()))?;
    // orient so that a's outside neighbour falls in z's cluster
    let (a, b) = if d.cluster_of(d.outside_neighbor(x)) == *c_z {
        (x, y)
    } else {
        (y, x)
    };
    let a_out = d.outside_neighbor(a);
    let b_out = d.outside_neighbor(b);
    if d.cluster_of(a_out) != *c_z || d.cluster_of(b_out) != *c_w {
        return Err(SteinerError::Internal(
            "fallback requires both endpoints to project into the singleton clusters".into(),
        ));
    }

    let rest: Vec<&Path> = paths
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != direct)
        .map(|(_, p)| p)
        .collect();
    let rest_owned: Vec<Path> = rest.iter().map(|p| (*p).clone()).collect();
    let banned = BTreeSet::from([a, b]);
    let pivots = assign_pivots(&rest_owned, &banned)
        .ok_or_else(|| SteinerError::Internal("non-direct paths have interior pivots".into()))?;
    let connectors: Vec<ClusterRef> = pivots
        .iter()
        .map(|&p| d.cluster_of(d.outside_neighbor(p)))
        .collect();
    debug_assert!(connectors.iter().all(|c| c != c_z && c != c_w));

    // direct neighbours of each singleton whose projection leaves the pair
    // cluster alone
    let shield_of = |apex: Label, home: &ClusterRef| -> Vec<Label> {
        d.neighbors(apex)
            .into_iter()
            .filter(|v| home.contains(*v))
            .filter(|&v| d.cluster_of(d.outside_neighbor(v)) != *c_p)
            .take(n as usize - 2)
            .collect()
    };
    let z_shield = shield_of(z, c_z);
    let w_shield = shield_of(w, c_w);
    debug_assert_eq!(z_shield.len(), n as usize - 2);
    debug_assert_eq!(w_shield.len(), n as usize - 2);
    let z_hubs: Vec<ClusterRef> = z_shield
        .iter()
        .map(|&v| d.cluster_of(d.outside_neighbor(v)))
        .collect();
    let w_hubs: Vec<ClusterRef> = w_shield
        .iter()
        .map(|&v| d.cluster_of(d.outside_neighbor(v)))
        .collect();
    let pairs = super::match_hub_pairs(&z_hubs, &w_hubs);
    let any_shared = pairs.iter().any(|&(_, _, shared)| shared);

    let mut trees = Vec::with_capacity(n as usize - 1);
    // the special tree built from the direct edge
    {
        let mut tree = TreeEdges::new();
        add_edge(&mut tree, a, b);
        add_edge(&mut tree, a, a_out);
        add_edge(&mut tree, b, b_out);
        let z_allowed: BTreeSet<Label> = c_z
            .vertices()
            .into_iter()
            .filter(|v| !z_shield.contains(v))
            .collect();
        let w_allowed: BTreeSet<Label> = c_w
            .vertices()
            .into_iter()
            .filter(|v| !w_shield.contains(v))
            .collect();
        let qz = bfs_path(&Subgraph::new(d, z_allowed), a_out, z)
            .ok_or_else(|| SteinerError::Internal("shielded singleton cluster connects".into()))?;
        let qw = bfs_path(&Subgraph::new(d, w_allowed), b_out, w)
            .ok_or_else(|| SteinerError::Internal("shielded singleton cluster connects".into()))?;
        add_path(&mut tree, &Path::new(qz));
        add_path(&mut tree, &Path::new(qw));
        trees.push(tree);
    }

    for (slot, &(zi, wj, shared)) in pairs.iter().enumerate() {
        let mut tree = TreeEdges::new();
        add_path(&mut tree, &rest_owned[slot]);
        let pivot = pivots[slot];
        let p_out = d.outside_neighbor(pivot);
        let zv = z_shield[zi];
        let zv_out = d.outside_neighbor(zv);
        let wv = w_shield[wj];
        let wv_out = d.outside_neighbor(wv);
        add_edge(&mut tree, pivot, p_out);
        add_edge(&mut tree, z, zv);
        add_edge(&mut tree, zv, zv_out);
        add_edge(&mut tree, w, wv);
        add_edge(&mut tree, wv, wv_out);
        let hub = if shared {
            union_sub(d, &[connectors[slot], z_hubs[zi]])
        } else {
            union_sub(d, &[connectors[slot], z_hubs[zi], w_hubs[wj]])
        };
        tree.extend(connect_in(&hub, &[p_out, zv_out, wv_out])?);
        trees.push(tree);
    }

    let trace = if any_shared {
        "three-clusters/pair-alone/edge-fallback/shared"
    } else {
        "three-clusters/pair-alone/edge-fallback/bridged"
    };
    Ok((
        TreeSet::new(n, ts.vertices().to_vec(), trees),
        CaseTrace::new(trace),
    ))
}
