//! Internally disjoint Steiner trees in the dual cube.
//!
//! For any 3 or 4 distinct terminals of `D_n` (`n >= 4`) the constructors
//! here return exactly `n-1` trees that pairwise intersect in the terminal
//! set alone and share no edges. The construction dispatches on how the
//! terminals spread over clusters; every branch routes tree `i` through its
//! own reserved connector clusters so the trees cannot collide outside the
//! terminals.

mod four_clusters;
mod hypercube4;
mod pivots;
mod three_clusters;
mod two_clusters;

pub use hypercube4::hypercube_strees4;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::graph::{edge, edge_set_vertices, is_tree, prune_to, steiner_connect, Graph, Subgraph};
use crate::label::Label;
use crate::menger::{fan, MengerError, Path};
use crate::topology::{ClusterRef, DualCube};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SteinerError {
    #[error("construction requires order >= 4, got {0}")]
    UnsupportedOrder(u8),
    #[error("invalid terminal set: {0}")]
    InvalidTerminals(String),
    #[error("connector cluster pool exhausted: {0}")]
    ReservationExhausted(String),
    #[error("tree search incomplete: found {found} of {target} trees")]
    SearchIncomplete { found: usize, target: usize },
    #[error("routing failed: {0}")]
    Routing(#[from] MengerError),
    #[error("construction invariant violated: {0}")]
    Internal(String),
}

/// Edge set of one tree.
pub type TreeEdges = BTreeSet<(Label, Label)>;

/// Which of the construction's case families a terminal set falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProfileKind {
    OneCluster,
    ThreeOneSame,
    ThreeOneCross,
    TwoTwoSame,
    TwoTwoCross,
    /// 2+1+1; counts how many singleton clusters share the pair's class.
    TwoOneOne {
        singles_in_pair_class: u8,
    },
    /// 1+1+1+1; counts the clusters in the minority class (0, 1 or 2).
    FourApart {
        minority: u8,
    },
}

impl fmt::Display for ProfileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileKind::OneCluster => write!(f, "one-cluster"),
            ProfileKind::ThreeOneSame => write!(f, "3+1 same-class"),
            ProfileKind::ThreeOneCross => write!(f, "3+1 cross-class"),
            ProfileKind::TwoTwoSame => write!(f, "2+2 same-class"),
            ProfileKind::TwoTwoCross => write!(f, "2+2 cross-class"),
            ProfileKind::TwoOneOne {
                singles_in_pair_class,
            } => write!(f, "2+1+1 ({singles_in_pair_class} singles beside the pair)"),
            ProfileKind::FourApart { minority } => {
                write!(f, "1+1+1+1 (minority class size {minority})")
            }
        }
    }
}

/// A classified terminal set: the vertices grouped by cluster, largest
/// groups first.
#[derive(Debug, Clone)]
pub struct TerminalSet {
    vertices: Vec<Label>,
    groups: Vec<(ClusterRef, Vec<Label>)>,
}

impl TerminalSet {
    pub fn classify(d: &DualCube, terminals: &[Label]) -> Result<Self, SteinerError> {
        if terminals.len() != 3 && terminals.len() != 4 {
            return Err(SteinerError::InvalidTerminals(format!(
                "expected 3 or 4 terminals, got {}",
                terminals.len()
            )));
        }
        let mut vertices = terminals.to_vec();
        vertices.sort();
        vertices.dedup();
        if vertices.len() != terminals.len() {
            return Err(SteinerError::InvalidTerminals(
                "terminals must be distinct".into(),
            ));
        }
        for &v in &vertices {
            d.check_label(v)
                .map_err(|e| SteinerError::InvalidTerminals(e.to_string()))?;
        }
        let mut groups: Vec<(ClusterRef, Vec<Label>)> = Vec::new();
        for &v in &vertices {
            let c = d.cluster_of(v);
            match groups.iter_mut().find(|(g, _)| *g == c) {
                Some((_, members)) => members.push(v),
                None => groups.push((c, vec![v])),
            }
        }
        groups.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.0.cmp(&b.0)));
        Ok(TerminalSet { vertices, groups })
    }

    pub fn vertices(&self) -> &[Label] {
        &self.vertices
    }

    pub fn groups(&self) -> &[(ClusterRef, Vec<Label>)] {
        &self.groups
    }

    pub fn cluster_count(&self) -> usize {
        self.groups.len()
    }

    /// Case family for a 4-terminal set.
    pub fn profile(&self) -> Result<ProfileKind, SteinerError> {
        if self.vertices.len() != 4 {
            return Err(SteinerError::InvalidTerminals(
                "profiles are defined for 4-terminal sets".into(),
            ));
        }
        let sizes: Vec<usize> = self.groups.iter().map(|(_, m)| m.len()).collect();
        let kind = match sizes.as_slice() {
            [4] => ProfileKind::OneCluster,
            [3, 1] => {
                if self.groups[0].0.class_bit() == self.groups[1].0.class_bit() {
                    ProfileKind::ThreeOneSame
                } else {
                    ProfileKind::ThreeOneCross
                }
            }
            [2, 2] => {
                if self.groups[0].0.class_bit() == self.groups[1].0.class_bit() {
                    ProfileKind::TwoTwoSame
                } else {
                    ProfileKind::TwoTwoCross
                }
            }
            [2, 1, 1] => {
                let pair_class = self.groups[0].0.class_bit();
                let same = self.groups[1..]
                    .iter()
                    .filter(|(c, _)| c.class_bit() == pair_class)
                    .count() as u8;
                ProfileKind::TwoOneOne {
                    singles_in_pair_class: same,
                }
            }
            [1, 1, 1, 1] => {
                let zeros = self
                    .groups
                    .iter()
                    .filter(|(c, _)| c.class_bit() == 0)
                    .count() as u8;
                ProfileKind::FourApart {
                    minority: zeros.min(4 - zeros),
                }
            }
            other => {
                return Err(SteinerError::Internal(format!(
                    "impossible cluster split {other:?}"
                )))
            }
        };
        Ok(kind)
    }
}

/// A family of trees over a common terminal set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeSet {
    order: u8,
    terminals: Vec<Label>,
    trees: Vec<TreeEdges>,
}

impl TreeSet {
    pub fn new(order: u8, mut terminals: Vec<Label>, trees: Vec<TreeEdges>) -> Self {
        terminals.sort();
        TreeSet {
            order,
            terminals,
            trees,
        }
    }

    /// Host order: `n` for trees in `D_n`, the dimension for trees in `Q_m`.
    pub fn order(&self) -> u8 {
        self.order
    }

    pub fn terminals(&self) -> &[Label] {
        &self.terminals
    }

    pub fn trees(&self) -> &[TreeEdges] {
        &self.trees
    }

    pub fn tree_count(&self) -> usize {
        self.trees.len()
    }
}

/// Which case and subcase a construction went through, as a `/`-joined path.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CaseTrace(String);

impl CaseTrace {
    pub fn new(s: impl Into<String>) -> Self {
        CaseTrace(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CaseTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

// ---------------------------------------------------------------------------
// connector cluster reservation
// ---------------------------------------------------------------------------

/// Tracks which clusters a construction has claimed. Free connectors are
/// handed out smallest-first, skipping anything already in use, relying on
/// `2^{n-1}` comfortably exceeding the handful of clusters one terminal set
/// can pin down.
pub(crate) struct Reservation {
    taken: BTreeSet<ClusterRef>,
}

impl Reservation {
    pub(crate) fn new() -> Self {
        Reservation {
            taken: BTreeSet::new(),
        }
    }

    pub(crate) fn mark(&mut self, c: ClusterRef) {
        self.taken.insert(c);
    }

    pub(crate) fn reserve(
        &mut self,
        d: &DualCube,
        class_bit: u8,
    ) -> Result<ClusterRef, SteinerError> {
        for c in d.clusters(class_bit) {
            if !self.taken.contains(&c) {
                self.taken.insert(c);
                return Ok(c);
            }
        }
        Err(SteinerError::ReservationExhausted(format!(
            "no free class-{class_bit} cluster left"
        )))
    }
}

// ---------------------------------------------------------------------------
// shared assembly helpers
// ---------------------------------------------------------------------------

pub(crate) fn cluster_sub<'a>(d: &'a DualCube, c: &ClusterRef) -> Subgraph<'a, DualCube> {
    Subgraph::new(d, c.vertices().into_iter().collect())
}

pub(crate) fn union_sub<'a>(d: &'a DualCube, clusters: &[ClusterRef]) -> Subgraph<'a, DualCube> {
    let mut allowed = BTreeSet::new();
    for c in clusters {
        allowed.extend(c.vertices());
    }
    Subgraph::new(d, allowed)
}

/// Everything outside the excluded clusters.
pub(crate) fn residual_sub<'a>(
    d: &'a DualCube,
    excluded: &BTreeSet<ClusterRef>,
) -> Subgraph<'a, DualCube> {
    let allowed = d
        .vertices()
        .into_iter()
        .filter(|&v| !excluded.contains(&d.cluster_of(v)))
        .collect();
    Subgraph::new(d, allowed)
}

/// A tree spanning `terminals` inside `g`, pruned to the minimal subtree.
pub(crate) fn connect_in<G: Graph>(g: &G, terminals: &[Label]) -> Result<TreeEdges, SteinerError> {
    let tree = steiner_connect(g, terminals).ok_or_else(|| {
        SteinerError::Internal(format!("connector region cannot reach {terminals:?}"))
    })?;
    let keep: BTreeSet<Label> = terminals.iter().copied().collect();
    Ok(prune_to(&tree, &keep))
}

pub(crate) fn add_path(tree: &mut TreeEdges, path: &Path) {
    for e in path.edges() {
        tree.insert(e);
    }
}

pub(crate) fn add_edge(tree: &mut TreeEdges, u: Label, v: Label) {
    tree.insert(edge(u, v));
}

/// Fan from `apex` to each of `targets` inside one cluster, results aligned
/// with the target order. If the apex itself is a target its path is the
/// single vertex.
pub(crate) fn aligned_fan(
    d: &DualCube,
    cluster: &ClusterRef,
    apex: Label,
    targets: &[Label],
) -> Result<Vec<Path>, SteinerError> {
    let sub = cluster_sub(d, cluster);
    let want: BTreeSet<Label> = targets.iter().copied().filter(|&t| t != apex).collect();
    if want.len() + 1 < targets.len() {
        return Err(SteinerError::Internal(format!(
            "duplicate fan targets {targets:?}"
        )));
    }
    let mut by_end: Vec<(Label, Path)> = if want.is_empty() {
        Vec::new()
    } else {
        let f = fan(&sub, apex, &want, want.len())?;
        f.paths.into_iter().map(|p| (p.last(), p)).collect()
    };
    let mut out = Vec::with_capacity(targets.len());
    for &t in targets {
        if t == apex {
            out.push(Path::single(apex));
        } else {
            let pos = by_end
                .iter()
                .position(|(end, _)| *end == t)
                .ok_or_else(|| SteinerError::Internal(format!("fan missed target {t}")))?;
            out.push(by_end.swap_remove(pos).1);
        }
    }
    Ok(out)
}

/// The vertex of `cluster` whose outside neighbour lies in `connector`.
pub(crate) fn forced_target(d: &DualCube, cluster: &ClusterRef, connector: &ClusterRef) -> Label {
    d.cross_edge_between(cluster, connector)
        .expect("opposite-class pair")
        .0
}

/// Pick `count` vertices of `cluster` (never the apex) whose outside
/// neighbours land in pairwise distinct clusters avoiding `banned`.
/// Returns `(vertex, outside cluster)` pairs in label order.
pub(crate) fn free_targets(
    d: &DualCube,
    cluster: &ClusterRef,
    apex: Label,
    count: usize,
    banned: &BTreeSet<ClusterRef>,
) -> Result<Vec<(Label, ClusterRef)>, SteinerError> {
    let mut out = Vec::with_capacity(count);
    let mut seen: BTreeSet<ClusterRef> = BTreeSet::new();
    for v in cluster.vertices() {
        if out.len() == count {
            break;
        }
        if v == apex {
            continue;
        }
        let c = d.cluster_of(d.outside_neighbor(v));
        if banned.contains(&c) || seen.contains(&c) {
            continue;
        }
        seen.insert(c);
        out.push((v, c));
    }
    if out.len() < count {
        return Err(SteinerError::ReservationExhausted(format!(
            "cluster {cluster:?} offers only {} of {count} outward routes",
            out.len()
        )));
    }
    Ok(out)
}

/// Pair two connector-cluster families so that equal clusters land in the
/// same tree (their routes then share that one cluster); the rest zip in
/// sorted order. Entries are `(left index, right index, shared?)`.
pub(crate) fn match_hub_pairs(
    left: &[ClusterRef],
    right: &[ClusterRef],
) -> Vec<(usize, usize, bool)> {
    let mut pairs = Vec::new();
    let mut left_free: Vec<usize> = (0..left.len()).collect();
    let mut right_free: Vec<usize> = (0..right.len()).collect();
    left_free.retain(|&i| {
        if let Some(pos) = right_free.iter().position(|&j| right[j] == left[i]) {
            pairs.push((i, right_free.remove(pos), true));
            false
        } else {
            true
        }
    });
    for (&i, &j) in left_free.iter().zip(right_free.iter()) {
        pairs.push((i, j, false));
    }
    pairs
}

/// Cheap structural sanity check used behind `debug_assert!`.
pub(crate) fn trees_look_disjoint(trees: &[TreeEdges], terminals: &[Label]) -> bool {
    let s: BTreeSet<Label> = terminals.iter().copied().collect();
    for (i, a) in trees.iter().enumerate() {
        let va = edge_set_vertices(a);
        if !is_tree(a) || !s.is_subset(&va) {
            return false;
        }
        for b in &trees[i + 1..] {
            let vb = edge_set_vertices(b);
            if va.intersection(&vb).copied().collect::<BTreeSet<_>>() != s {
                return false;
            }
            if a.intersection(b).next().is_some() {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// public constructors
// ---------------------------------------------------------------------------

/// `n-1` internally disjoint trees spanning four terminals.
pub fn strees4(d: &DualCube, terminals: &[Label]) -> Result<TreeSet, SteinerError> {
    strees4_traced(d, terminals).map(|(ts, _)| ts)
}

/// Like [`strees4`] but also reports which case of the construction ran.
pub fn strees4_traced(
    d: &DualCube,
    terminals: &[Label],
) -> Result<(TreeSet, CaseTrace), SteinerError> {
    if d.order() < 4 {
        return Err(SteinerError::UnsupportedOrder(d.order()));
    }
    let ts = TerminalSet::classify(d, terminals)?;
    if ts.vertices().len() != 4 {
        return Err(SteinerError::InvalidTerminals(
            "four terminals required".into(),
        ));
    }
    let (set, trace) = match ts.profile()? {
        ProfileKind::OneCluster => strees_one_cluster(d, &ts)?,
        ProfileKind::ThreeOneSame
        | ProfileKind::ThreeOneCross
        | ProfileKind::TwoTwoSame
        | ProfileKind::TwoTwoCross => two_clusters::strees_two_clusters(d, &ts)?,
        ProfileKind::TwoOneOne { .. } => three_clusters::strees_three_clusters(d, &ts)?,
        ProfileKind::FourApart { .. } => four_clusters::strees_four_clusters(d, &ts)?,
    };
    let want = d.order() as usize - 1;
    if set.tree_count() != want {
        return Err(SteinerError::Internal(format!(
            "built {} trees instead of {want}",
            set.tree_count()
        )));
    }
    debug_assert!(trees_look_disjoint(set.trees(), set.terminals()));
    Ok((set, trace))
}

/// All four terminals inside one cluster: `n-2` trees from the hypercube
/// subroutine plus one tree routed through everything outside the cluster.
pub fn strees_one_cluster(
    d: &DualCube,
    ts: &TerminalSet,
) -> Result<(TreeSet, CaseTrace), SteinerError> {
    if ts.cluster_count() != 1 {
        return Err(SteinerError::InvalidTerminals(
            "terminals must share one cluster".into(),
        ));
    }
    let (c, members) = &ts.groups()[0];
    let q = d.cluster_graph(c);
    let inner_terms: Vec<Label> = members.iter().map(|&v| q.from_host(v).unwrap()).collect();
    let inner = hypercube_strees4(&q, &inner_terms)?;
    let mut trees: Vec<TreeEdges> = inner
        .trees()
        .iter()
        .map(|t| {
            t.iter()
                .map(|&(a, b)| edge(q.to_host(a).unwrap(), q.to_host(b).unwrap()))
                .collect()
        })
        .collect();

    let outs: Vec<Label> = members.iter().map(|&v| d.outside_neighbor(v)).collect();
    let sub = residual_sub(d, &BTreeSet::from([*c]));
    let mut outside = connect_in(&sub, &outs)?;
    for (&v, &o) in members.iter().zip(outs.iter()) {
        add_edge(&mut outside, v, o);
    }
    trees.push(outside);
    Ok((
        TreeSet::new(d.order(), ts.vertices().to_vec(), trees),
        CaseTrace::new("one-cluster"),
    ))
}

pub use three_clusters::strees_three_clusters;
pub use two_clusters::strees_two_clusters;

pub use four_clusters::strees_four_clusters;

/// `n-1` internally disjoint trees spanning three terminals, by augmenting
/// with an auxiliary fourth vertex and pruning each tree back down.
pub fn strees3(d: &DualCube, terminals: &[Label]) -> Result<TreeSet, SteinerError> {
    if d.order() < 4 {
        return Err(SteinerError::UnsupportedOrder(d.order()));
    }
    let mut s = terminals.to_vec();
    s.sort();
    s.dedup();
    if s.len() != 3 || terminals.len() != 3 {
        return Err(SteinerError::InvalidTerminals(
            "three distinct terminals required".into(),
        ));
    }
    for &v in &s {
        d.check_label(v)
            .map_err(|e| SteinerError::InvalidTerminals(e.to_string()))?;
    }
    let sset: BTreeSet<Label> = s.iter().copied().collect();

    // Auxiliary candidates: neighbours of the smallest terminal first, then
    // the rest of the graph in label order. Pruning subtrees of internally
    // disjoint trees stays internally disjoint unless the auxiliary vertex
    // survives in two trees, which the guard below rejects.
    let mut candidates: Vec<Label> = d
        .neighbors(s[0])
        .into_iter()
        .filter(|v| !sset.contains(v))
        .collect();
    for v in d.vertices() {
        if !sset.contains(&v) && !candidates.contains(&v) {
            candidates.push(v);
        }
    }
    const MAX_AUX_TRIES: usize = 64;
    for aux in candidates.into_iter().take(MAX_AUX_TRIES) {
        let mut four = s.clone();
        four.push(aux);
        let Ok(ts4) = strees4(d, &four) else { continue };
        let pruned: Vec<TreeEdges> = ts4.trees().iter().map(|t| prune_to(t, &sset)).collect();
        if trees_look_disjoint(&pruned, &s) {
            return Ok(TreeSet::new(d.order(), s, pruned));
        }
    }
    Err(SteinerError::Internal(
        "no auxiliary vertex yielded disjoint three-terminal trees".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::verify_tree_set;

    fn l(s: &str) -> Label {
        s.parse().unwrap()
    }

    fn checked(d: &DualCube, terminals: &[Label]) -> TreeSet {
        let ts = strees4(d, terminals).unwrap();
        let report = verify_tree_set(d, &ts, Some(d.order() as usize - 1));
        assert!(
            report.overall(),
            "{:?}",
            report.failures().collect::<Vec<_>>()
        );
        ts
    }

    #[test]
    fn d4_yields_three_trees() {
        let d = DualCube::new(4).unwrap();
        let ts = checked(
            &d,
            &[l("0000000"), l("0000001"), l("0000010"), l("1111111")],
        );
        assert_eq!(ts.tree_count(), 3);
    }

    #[test]
    fn d5_yields_four_trees() {
        let d = DualCube::new(5).unwrap();
        let ts = checked(
            &d,
            &[
                l("000000000"),
                l("000000001"),
                l("000000110"),
                l("111111111"),
            ],
        );
        assert_eq!(ts.tree_count(), 4);
    }

    #[test]
    fn rejects_duplicates_and_low_order() {
        let d = DualCube::new(4).unwrap();
        let dup = [l("0000000"), l("0000000"), l("0000010"), l("1111111")];
        assert!(matches!(
            strees4(&d, &dup),
            Err(SteinerError::InvalidTerminals(_))
        ));
        let d3 = DualCube::new(3).unwrap();
        let s = [l("00000"), l("00001"), l("00010"), l("11111")];
        assert!(matches!(
            strees4(&d3, &s),
            Err(SteinerError::UnsupportedOrder(3))
        ));
    }

    #[test]
    fn construction_is_deterministic() {
        let d = DualCube::new(4).unwrap();
        let s = [l("0000000"), l("0100100"), l("1010011"), l("0110101")];
        assert_eq!(strees4(&d, &s).unwrap(), strees4(&d, &s).unwrap());
        let t = [l("0000000"), l("0100100"), l("1010011")];
        assert_eq!(strees3(&d, &t).unwrap(), strees3(&d, &t).unwrap());
    }

    #[test]
    fn never_more_than_n_minus_one_trees() {
        let d = DualCube::new(4).unwrap();
        for s in [
            [l("0000000"), l("0100000"), l("1000000"), l("1100000")],
            [l("0000000"), l("0000001"), l("1100110"), l("0011001")],
        ] {
            assert_eq!(strees4(&d, &s).unwrap().tree_count(), 3);
        }
    }

    #[test]
    fn strees3_basic() {
        let d = DualCube::new(4).unwrap();
        let s = [l("0000000"), l("0110010"), l("1010101")];
        let ts = strees3(&d, &s).unwrap();
        assert_eq!(ts.tree_count(), 3);
        let report = verify_tree_set(&d, &ts, Some(3));
        assert!(report.overall());
    }

    #[test]
    fn strees3_prunes_the_auxiliary_vertex_from_shared_use() {
        // after pruning, no non-terminal vertex may appear in two trees
        let d = DualCube::new(4).unwrap();
        let s = [l("0000000"), l("0000011"), l("0011000")];
        let ts = strees3(&d, &s).unwrap();
        let sset: BTreeSet<Label> = s.iter().copied().collect();
        for (i, a) in ts.trees().iter().enumerate() {
            for b in &ts.trees()[i + 1..] {
                let va = crate::graph::edge_set_vertices(a);
                let vb = crate::graph::edge_set_vertices(b);
                let inter: BTreeSet<Label> = va.intersection(&vb).copied().collect();
                assert_eq!(inter, sset);
            }
        }
    }

    #[test]
    fn profile_classification() {
        let d = DualCube::new(4).unwrap();
        let one = TerminalSet::classify(
            &d,
            &[l("0000000"), l("0100000"), l("1000000"), l("1100000")],
        )
        .unwrap();
        assert_eq!(one.profile().unwrap(), ProfileKind::OneCluster);
        assert_eq!(one.cluster_count(), 1);

        let cross = TerminalSet::classify(
            &d,
            &[l("0000000"), l("0100000"), l("1000000"), l("0000001")],
        )
        .unwrap();
        assert_eq!(cross.profile().unwrap(), ProfileKind::ThreeOneCross);

        let spread = TerminalSet::classify(
            &d,
            &[l("0000000"), l("0000100"), l("0001000"), l("0001100")],
        )
        .unwrap();
        assert_eq!(spread.cluster_count(), 4);
        assert_eq!(
            spread.profile().unwrap(),
            ProfileKind::FourApart { minority: 0 }
        );
    }
}
