//! Tree constructions for four terminals in four distinct clusters.
//!
//! Every tree reserves its own connector cluster (or opposite-class cluster
//! pair) and each terminal sends one fan path to the vertex whose outside
//! neighbour lands there; the four projections then meet in a small tree
//! inside the connector region.

use std::collections::BTreeSet;

use crate::label::Label;
use crate::topology::{ClusterRef, DualCube};

use super::{
    add_edge, add_path, aligned_fan, connect_in, forced_target, free_targets, union_sub, CaseTrace,
    ProfileKind, Reservation, SteinerError, TerminalSet, TreeEdges, TreeSet,
};

pub fn strees_four_clusters(
    d: &DualCube,
    ts: &TerminalSet,
) -> Result<(TreeSet, CaseTrace), SteinerError> {
    let ProfileKind::FourApart { minority } = ts.profile()? else {
        return Err(SteinerError::InvalidTerminals(
            "not a four-cluster terminal set".into(),
        ));
    };
    match minority {
        0 => uniform(d, ts),
        1 => three_one(d, ts),
        _ => two_two(d, ts),
    }
}

/// All four clusters share a class: each tree meets inside one reserved
/// opposite-class cluster.
fn uniform(d: &DualCube, ts: &TerminalSet) -> Result<(TreeSet, CaseTrace), SteinerError> {
    let n = d.order();
    let k = n as usize - 1;
    let homes: Vec<(ClusterRef, Label)> = ts
        .groups()
        .iter()
        .map(|(c, members)| (*c, members[0]))
        .collect();
    let mut res = Reservation::new();
    for (c, _) in &homes {
        res.mark(*c);
    }
    let class = 1 - homes[0].0.class_bit();
    let hubs: Vec<ClusterRef> = (0..k)
        .map(|_| res.reserve(d, class))
        .collect::<Result<_, _>>()?;

    let mut fans = Vec::new();
    let mut targets = Vec::new();
    for (c, apex) in &homes {
        let t: Vec<Label> = hubs.iter().map(|h| forced_target(d, c, h)).collect();
        fans.push(aligned_fan(d, c, *apex, &t)?);
        targets.push(t);
    }

    let mut trees = Vec::with_capacity(k);
    for i in 0..k {
        let mut tree = TreeEdges::new();
        let mut projected = Vec::with_capacity(4);
        for (j, fan_paths) in fans.iter().enumerate() {
            add_path(&mut tree, &fan_paths[i]);
            let tv = targets[j][i];
            let out = d.outside_neighbor(tv);
            add_edge(&mut tree, tv, out);
            projected.push(out);
        }
        let hub = super::cluster_sub(d, &hubs[i]);
        tree.extend(connect_in(&hub, &projected)?);
        trees.push(tree);
    }
    Ok((
        TreeSet::new(n, ts.vertices().to_vec(), trees),
        CaseTrace::new("four-clusters/uniform"),
    ))
}

/// Three clusters of one class plus a lone opposite one: connector clusters
/// pair with the clusters the lone terminal projects into.
fn three_one(d: &DualCube, ts: &TerminalSet) -> Result<(TreeSet, CaseTrace), SteinerError> {
    let n = d.order();
    let k = n as usize - 1;
    let zeros = ts
        .groups()
        .iter()
        .filter(|(c, _)| c.class_bit() == 0)
        .count();
    let majority_class: u8 = if zeros == 3 { 0 } else { 1 };
    let majors: Vec<(ClusterRef, Label)> = ts
        .groups()
        .iter()
        .filter(|(c, _)| c.class_bit() == majority_class)
        .map(|(c, m)| (*c, m[0]))
        .collect();
    let (c_w, w) = ts
        .groups()
        .iter()
        .find(|(c, _)| c.class_bit() != majority_class)
        .map(|(c, m)| (*c, m[0]))
        .unwrap();

    let mut res = Reservation::new();
    for (c, _) in &majors {
        res.mark(*c);
    }
    res.mark(c_w);
    let hubs: Vec<ClusterRef> = (0..k)
        .map(|_| res.reserve(d, 1 - majority_class))
        .collect::<Result<_, _>>()?;

    let mut fans = Vec::new();
    let mut targets = Vec::new();
    for (c, apex) in &majors {
        let t: Vec<Label> = hubs.iter().map(|h| forced_target(d, c, h)).collect();
        fans.push(aligned_fan(d, c, *apex, &t)?);
        targets.push(t);
    }
    let banned: BTreeSet<ClusterRef> = majors.iter().map(|(c, _)| *c).collect();
    let w_picks = free_targets(d, &c_w, w, k, &banned)?;
    let w_targets: Vec<Label> = w_picks.iter().map(|&(v, _)| v).collect();
    let w_fans = aligned_fan(d, &c_w, w, &w_targets)?;

    let mut trees = Vec::with_capacity(k);
    for i in 0..k {
        let mut tree = TreeEdges::new();
        let mut projected = Vec::with_capacity(4);
        for (j, fan_paths) in fans.iter().enumerate() {
            add_path(&mut tree, &fan_paths[i]);
            let tv = targets[j][i];
            let out = d.outside_neighbor(tv);
            add_edge(&mut tree, tv, out);
            projected.push(out);
        }
        add_path(&mut tree, &w_fans[i]);
        let w_out = d.outside_neighbor(w_targets[i]);
        add_edge(&mut tree, w_targets[i], w_out);
        projected.push(w_out);
        let hub = union_sub(d, &[hubs[i], w_picks[i].1]);
        tree.extend(connect_in(&hub, &projected)?);
        trees.push(tree);
    }
    Ok((
        TreeSet::new(n, ts.vertices().to_vec(), trees),
        CaseTrace::new("four-clusters/three-one"),
    ))
}

/// Two clusters of each class: each tree reserves one connector of each
/// class and joins the four projections across their cross edge.
fn two_two(d: &DualCube, ts: &TerminalSet) -> Result<(TreeSet, CaseTrace), SteinerError> {
    let n = d.order();
    let k = n as usize - 1;
    let side0: Vec<(ClusterRef, Label)> = ts
        .groups()
        .iter()
        .filter(|(c, _)| c.class_bit() == 0)
        .map(|(c, m)| (*c, m[0]))
        .collect();
    let side1: Vec<(ClusterRef, Label)> = ts
        .groups()
        .iter()
        .filter(|(c, _)| c.class_bit() == 1)
        .map(|(c, m)| (*c, m[0]))
        .collect();

    let mut res = Reservation::new();
    for (c, _) in side0.iter().chain(side1.iter()) {
        res.mark(*c);
    }
    let hubs1: Vec<ClusterRef> = (0..k)
        .map(|_| res.reserve(d, 1))
        .collect::<Result<_, _>>()?;
    let hubs0: Vec<ClusterRef> = (0..k)
        .map(|_| res.reserve(d, 0))
        .collect::<Result<_, _>>()?;

    let mut fans = Vec::new();
    let mut targets = Vec::new();
    for (c, apex) in side0.iter().chain(side1.iter()) {
        let own_hubs = if c.class_bit() == 0 { &hubs1 } else { &hubs0 };
        let t: Vec<Label> = own_hubs.iter().map(|h| forced_target(d, c, h)).collect();
        fans.push(aligned_fan(d, c, *apex, &t)?);
        targets.push(t);
    }

    let mut trees = Vec::with_capacity(k);
    for i in 0..k {
        let mut tree = TreeEdges::new();
        let mut projected = Vec::with_capacity(4);
        for (j, fan_paths) in fans.iter().enumerate() {
            add_path(&mut tree, &fan_paths[i]);
            let tv = targets[j][i];
            let out = d.outside_neighbor(tv);
            add_edge(&mut tree, tv, out);
            projected.push(out);
        }
        let hub = union_sub(d, &[hubs1[i], hubs0[i]]);
        tree.extend(connect_in(&hub, &projected)?);
        trees.push(tree);
    }
    Ok((
        TreeSet::new(n, ts.vertices().to_vec(), trees),
        CaseTrace::new("four-clusters/two-two"),
    ))
}
