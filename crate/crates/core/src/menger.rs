//! Vertex-disjoint path machinery: pairwise disjoint path sets, fans, and
//! routing through unions of clusters.
//!
//! One max-flow kernel serves every disjoint-path need: each non-terminal
//! vertex is split into an in/out node pair joined by a unit-capacity arc, so
//! a unit of flow is an internally disjoint path. Augmenting paths are found
//! by BFS over sorted adjacency, and flow decomposition breaks ties toward
//! the smallest label, which keeps all outputs deterministic.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::{bfs_path, Graph, Subgraph};
use crate::label::Label;
use crate::topology::{ClusterRef, DualCube};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MengerError {
    #[error("invalid routing input: {0}")]
    InvalidInput(String),
    #[error("only {achieved} of {requested} disjoint paths exist (separator {separator:?})")]
    NotEnoughConnectivity {
        requested: usize,
        achieved: usize,
        separator: Vec<Label>,
    },
}

/// A simple path; a single vertex is a legitimate path of length zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    vertices: Vec<Label>,
}

impl Path {
    pub fn new(vertices: Vec<Label>) -> Self {
        assert!(!vertices.is_empty());
        Path { vertices }
    }

    pub fn single(v: Label) -> Self {
        Path { vertices: vec![v] }
    }

    pub fn vertices(&self) -> &[Label] {
        &self.vertices
    }

    pub fn first(&self) -> Label {
        self.vertices[0]
    }

    pub fn last(&self) -> Label {
        *self.vertices.last().unwrap()
    }

    /// Edge count.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_single(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn edges(&self) -> impl Iterator<Item = (Label, Label)> + '_ {
        self.vertices
            .windows(2)
            .map(|w| crate::graph::edge(w[0], w[1]))
    }

    pub fn interior(&self) -> &[Label] {
        if self.vertices.len() <= 2 {
            &[]
        } else {
            &self.vertices[1..self.vertices.len() - 1]
        }
    }

    pub fn contains(&self, v: Label) -> bool {
        self.vertices.contains(&v)
    }

    /// No repeats and every hop is an edge of `g`.
    pub fn is_valid_in<G: Graph>(&self, g: &G) -> bool {
        let set: BTreeSet<Label> = self.vertices.iter().copied().collect();
        set.len() == self.vertices.len() && self.vertices.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }

    /// JSON array of bit strings.
    pub fn to_json(&self) -> String {
        let strings: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        serde_json::to_string(&strings).expect("strings serialize")
    }
}

/// Internally disjoint paths from one source to distinct targets.
#[derive(Debug, Clone)]
pub struct Fan {
    pub source: Label,
    pub paths: Vec<Path>,
}

impl Fan {
    pub fn targets(&self) -> Vec<Label> {
        self.paths.iter().map(|p| p.last()).collect()
    }
}

// ---------------------------------------------------------------------------
// flow kernel
// ---------------------------------------------------------------------------

struct FlowNet {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    residual: Vec<i32>,
    orig: Vec<i32>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet {
            adj: vec![Vec::new(); nodes],
            to: Vec::new(),
            residual: Vec::new(),
            orig: Vec::new(),
        }
    }

    fn add_arc(&mut self, u: usize, v: usize, cap: i32) {
        let id = self.to.len();
        self.to.push(v);
        self.residual.push(cap);
        self.orig.push(cap);
        self.adj[u].push(id);
        // reverse arc is id ^ 1
        self.to.push(u);
        self.residual.push(0);
        self.orig.push(0);
        self.adj[v].push(id + 1);
    }

    /// Edmonds-Karp limited to `limit` units (all capacities are 1).
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        let mut pred = vec![usize::MAX; self.adj.len()];
        while flow < limit {
            pred.fill(usize::MAX);
            let mut queue = VecDeque::from([s]);
            pred[s] = usize::MAX - 1;
            let mut reached = false;
            'bfs: while let Some(u) = queue.pop_front() {
                for &a in &self.adj[u] {
                    let v = self.to[a];
                    if self.residual[a] > 0 && pred[v] == usize::MAX {
                        pred[v] = a;
                        if v == t {
                            reached = true;
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
            }
            if !reached {
                break;
            }
            let mut v = t;
            while v != s {
                let a = pred[v];
                self.residual[a] -= 1;
                self.residual[a ^ 1] += 1;
                v = self.to[a ^ 1];
            }
            flow += 1;
        }
        flow
    }

    /// Nodes reachable from `s` in the residual network.
    fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.adj[u] {
                let v = self.to[a];
                if self.residual[a] > 0 && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    fn flow_on(&self, a: usize) -> i32 {
        self.orig[a] - self.residual[a]
    }
}

/// Vertex-split network over the sorted vertex set of `g`. Vertex `i` maps
/// to in-node `2i` and out-node `2i+1`; terminals keep infinite throughput.
struct SplitNet {
    net: FlowNet,
    index: BTreeMap<Label, usize>,
    labels: Vec<Label>,
    extra: usize,
}

impl SplitNet {
    fn build<G: Graph>(g: &G, unsplit: &BTreeSet<Label>, extra_nodes: usize) -> Self {
        let labels = g.vertices();
        let index: BTreeMap<Label, usize> =
            labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let base = 2 * labels.len();
        let mut net = FlowNet::new(base + extra_nodes);
        for (i, &v) in labels.iter().enumerate() {
            if !unsplit.contains(&v) {
                net.add_arc(2 * i, 2 * i + 1, 1);
            } else {
                net.add_arc(2 * i, 2 * i + 1, i32::MAX / 2);
            }
        }
        for (i, &v) in labels.iter().enumerate() {
            for w in g.neighbors(v) {
                let j = index[&w];
                net.add_arc(2 * i + 1, 2 * j, 1);
            }
        }
        SplitNet {
            net,
            index,
            labels,
            extra: base,
        }
    }

    fn out_node(&self, v: Label) -> usize {
        2 * self.index[&v] + 1
    }

    fn in_node(&self, v: Label) -> usize {
        2 * self.index[&v]
    }

    /// Decompose the computed flow into paths out of `source`, smallest next
    /// label first. `stop` decides which vertex ends a path.
    fn decompose(&mut self, source: Label, stop: impl Fn(Label) -> bool) -> Vec<Path> {
        let mut paths = Vec::new();
        loop {
            let mut cur = self.out_node(source);
            let mut verts = vec![source];
            let mut advanced = false;
            loop {
                // pick the flow-carrying arc toward the smallest label
                let mut best: Option<(Label, usize)> = None;
                for &a in &self.net.adj[cur] {
                    if self.net.flow_on(a) > 0 {
                        let node = self.net.to[a];
                        if node >= self.extra {
                            continue; // super-sink handled by `stop`
                        }
                        let label = self.labels[node / 2];
                        if best.is_none_or(|(b, _)| label < b) {
                            best = Some((label, a));
                        }
                    }
                }
                let Some((label, a)) = best else { break };
                advanced = true;
                self.net.residual[a] += 1; // consume one unit
                let node = self.net.to[a];
                if node % 2 == 0 {
                    verts.push(label);
                    if stop(label) {
                        break;
                    }
                    cur = node; // step across the split arc next
                    let split = self.net.adj[cur]
                        .iter()
                        .copied()
                        .find(|&a| self.net.to[a] == cur + 1 && self.net.flow_on(a) > 0)
                        .expect("unit flow must cross the split arc");
                    self.net.residual[split] += 1;
                    cur += 1;
                } else {
                    cur = node;
                }
            }
            if !advanced {
                break;
            }
            paths.push(Path::new(verts));
        }
        paths
    }
}

/// `k` pairwise internally disjoint `x`-`y` paths, or an error carrying the
/// achievable count and a separating vertex set.
pub fn disjoint_paths<G: Graph>(
    g: &G,
    x: Label,
    y: Label,
    k: usize,
) -> Result<Vec<Path>, MengerError> {
    if x == y || k == 0 {
        return Err(MengerError::InvalidInput(format!(
            "need distinct endpoints and k >= 1 (x={x}, y={y}, k={k})"
        )));
    }
    if !g.contains(x) || !g.contains(y) {
        return Err(MengerError::InvalidInput(format!(
            "endpoint outside the graph (x={x}, y={y})"
        )));
    }
    let unsplit = BTreeSet::from([x, y]);
    let mut split = SplitNet::build(g, &unsplit, 0);
    let (s, t) = (split.out_node(x), split.in_node(y));
    let achieved = split.net.max_flow(s, t, k);
    if achieved < k {
        // Min-cut arcs are split arcs (take the vertex) or edge arcs; an edge
        // arc u->v in the cut is replaced by u, or by v when u is the source.
        let reach = split.net.residual_reachable(s);
        let mut separator: BTreeSet<Label> = BTreeSet::new();
        for (i, &v) in split.labels.iter().enumerate() {
            if v == x || v == y {
                continue;
            }
            if reach[2 * i] && !reach[2 * i + 1] {
                separator.insert(v);
            }
        }
        for (i, &u) in split.labels.iter().enumerate() {
            if !reach[2 * i + 1] {
                continue;
            }
            for w in g.neighbors(u) {
                if !reach[split.in_node(w)] {
                    let pick = if u != x { u } else { w };
                    if pick != x && pick != y {
                        separator.insert(pick);
                    }
                }
            }
        }
        return Err(MengerError::NotEnoughConnectivity {
            requested: k,
            achieved,
            separator: separator.into_iter().collect(),
        });
    }
    let paths = split.decompose(x, |v| v == y);
    debug_assert_eq!(paths.len(), k);
    debug_assert!(paths.iter().all(|p| p.is_valid_in(g)));
    Ok(paths)
}

/// A `k`-fan from `x` into `Y`: internally disjoint paths to `k` distinct
/// targets whose interior avoids `Y` entirely.
pub fn fan<G: Graph>(
    g: &G,
    x: Label,
    targets: &BTreeSet<Label>,
    k: usize,
) -> Result<Fan, MengerError> {
    if targets.contains(&x) {
        return Err(MengerError::InvalidInput(format!(
            "fan source {x} may not be a target"
        )));
    }
    if k == 0 || targets.len() < k {
        return Err(MengerError::InvalidInput(format!(
            "need 1 <= k <= |targets| (k={k}, |targets|={})",
            targets.len()
        )));
    }
    let unsplit = BTreeSet::from([x]);
    // Targets gain a sink arc from their in-node and lose their pass-through
    // split arc, so a path may end at a target but never route through one.
    let mut split = SplitNet::build(g, &unsplit, 1);
    let sink = split.extra;
    for &t in targets {
        let tin = split.in_node(t);
        split.net.add_arc(tin, sink, 1);
        // cut the pass-through: no flow may continue beyond a target
        for a in split.net.adj[tin].clone() {
            if split.net.to[a] == tin + 1 && split.net.orig[a] > 0 {
                split.net.residual[a] = 0;
                split.net.orig[a] = 0;
            }
        }
    }
    let s = split.out_node(x);
    let achieved = split.net.max_flow(s, sink, k);
    if achieved < k {
        return Err(MengerError::NotEnoughConnectivity {
            requested: k,
            achieved,
            separator: Vec::new(),
        });
    }
    let paths = split.decompose(x, |v| targets.contains(&v));
    debug_assert_eq!(paths.len(), k);
    debug_assert!(paths.iter().all(|p| p.is_valid_in(g)));
    Ok(Fan { source: x, paths })
}

/// Exactly `m` internally disjoint paths between two hypercube vertices.
pub fn hypercube_pair_paths(
    q: &crate::topology::Hypercube,
    x: Label,
    y: Label,
) -> Result<Vec<Path>, MengerError> {
    let m = q.dimension() as usize;
    if m < 2 {
        return Err(MengerError::InvalidInput(format!(
            "dimension {m} too small for pair routing"
        )));
    }
    disjoint_paths(q, x, y, m)
}

/// A path between `x` and `y` staying inside the union of the given
/// clusters. Routing follows the connectivity argument for cluster unions:
/// same cluster goes direct, same class detours through one opposite-class
/// cluster, different classes use the unique cross edge between the two.
pub fn path_in_cluster_union(
    d: &DualCube,
    clusters: &BTreeSet<ClusterRef>,
    x: Label,
    y: Label,
) -> Result<Path, MengerError> {
    let has0 = clusters.iter().any(|c| c.class_bit() == 0);
    let has1 = clusters.iter().any(|c| c.class_bit() == 1);
    if !has0 || !has1 {
        return Err(MengerError::InvalidInput(
            "cluster union needs at least one cluster of each class".into(),
        ));
    }
    let cx = d.cluster_of(x);
    let cy = d.cluster_of(y);
    if !clusters.contains(&cx) || !clusters.contains(&cy) {
        return Err(MengerError::InvalidInput(format!(
            "{x} or {y} lies outside the declared union"
        )));
    }
    let in_cluster = |c: &ClusterRef, a: Label, b: Label| -> Path {
        let sub = Subgraph::new(d, c.vertices().into_iter().collect());
        Path::new(bfs_path(&sub, a, b).expect("clusters are connected"))
    };
    let path = if cx == cy {
        in_cluster(&cx, x, y)
    } else if cx.class_bit() == cy.class_bit() {
        let mid = clusters
            .iter()
            .find(|c| c.class_bit() != cx.class_bit())
            .copied()
            .expect("checked above");
        let (u, u1) = d.cross_edge_between(&cx, &mid).unwrap();
        let (v, v1) = d.cross_edge_between(&cy, &mid).unwrap();
        let mut verts = in_cluster(&cx, x, u).vertices().to_vec();
        verts.extend(in_cluster(&mid, u1, v1).vertices());
        verts.extend(in_cluster(&cy, v, y).vertices());
        Path::new(verts)
    } else {
        let (u, w) = d.cross_edge_between(&cx, &cy).unwrap();
        let mut verts = in_cluster(&cx, x, u).vertices().to_vec();
        verts.extend(in_cluster(&cy, w, y).vertices());
        Path::new(verts)
    };
    debug_assert!(path.is_valid_in(d));
    debug_assert!(path
        .vertices()
        .iter()
        .all(|&v| clusters.contains(&d.cluster_of(v))));
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::Hypercube;

    fn l(s: &str) -> Label {
        s.parse().unwrap()
    }

    fn assert_internally_disjoint(paths: &[Path], shared: &BTreeSet<Label>) {
        for (i, p) in paths.iter().enumerate() {
            for q in &paths[i + 1..] {
                let a: BTreeSet<Label> = p.vertices().iter().copied().collect();
                let b: BTreeSet<Label> = q.vertices().iter().copied().collect();
                let inter: BTreeSet<Label> = a.intersection(&b).copied().collect();
                assert_eq!(&inter, shared, "{p:?} vs {q:?}");
            }
        }
    }

    #[test]
    fn three_paths_in_q3() {
        let q = Hypercube::new(3).unwrap();
        let (x, y) = (l("000"), l("011"));
        let paths = disjoint_paths(&q, x, y, 3).unwrap();
        assert_eq!(paths.len(), 3);
        for p in &paths {
            assert!(p.is_valid_in(&q));
            assert_eq!(p.first(), x);
            assert_eq!(p.last(), y);
        }
        assert_internally_disjoint(&paths, &BTreeSet::from([x, y]));
    }

    #[test]
    fn adjacent_pair_single_path() {
        let q = Hypercube::new(3).unwrap();
        let paths = disjoint_paths(&q, l("000"), l("001"), 1).unwrap();
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].len(), 1);
    }

    #[test]
    fn four_paths_in_q3_fail_with_separator() {
        let q = Hypercube::new(3).unwrap();
        let err = disjoint_paths(&q, l("000"), l("011"), 4).unwrap_err();
        match err {
            MengerError::NotEnoughConnectivity {
                requested,
                achieved,
                separator,
            } => {
                assert_eq!(requested, 4);
                assert_eq!(achieved, 3);
                assert_eq!(separator.len(), 3);
                // removing the separator must disconnect the endpoints
                let removed: BTreeSet<Label> = separator.into_iter().collect();
                let sub = Subgraph::without(&q, &removed);
                assert!(bfs_path(&sub, l("000"), l("011")).is_none());
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn fan_reaches_all_targets_in_q3() {
        let q = Hypercube::new(3).unwrap();
        let targets = BTreeSet::from([l("011"), l("101"), l("110")]);
        let f = fan(&q, l("000"), &targets, 3).unwrap();
        assert_eq!(f.paths.len(), 3);
        let hit: BTreeSet<Label> = f.targets().into_iter().collect();
        assert_eq!(hit, targets);
        assert_internally_disjoint(&f.paths, &BTreeSet::from([l("000")]));
        // interiors avoid the target set
        for p in &f.paths {
            for &v in p.interior() {
                assert!(!targets.contains(&v));
            }
        }
    }

    #[test]
    fn fan_two_paths_in_q2() {
        let q = Hypercube::new(2).unwrap();
        let targets = BTreeSet::from([l("11"), l("01"), l("10")]);
        let f = fan(&q, l("00"), &targets, 2).unwrap();
        assert_eq!(f.paths.len(), 2);
        let hit: BTreeSet<Label> = f.targets().into_iter().collect();
        assert_eq!(hit.len(), 2);
    }

    #[test]
    fn fan_beyond_connectivity_reports_achieved() {
        let q = Hypercube::new(2).unwrap();
        let targets = BTreeSet::from([l("01"), l("10"), l("11")]);
        let err = fan(&q, l("00"), &targets, 3).unwrap_err();
        assert!(matches!(
            err,
            MengerError::NotEnoughConnectivity {
                requested: 3,
                achieved: 2,
                ..
            }
        ));
    }

    #[test]
    fn path_renders_to_json() {
        let p = Path::new(vec![l("00"), l("01"), l("11")]);
        assert_eq!(p.to_json(), r#"["00","01","11"]"#);
    }

    #[test]
    fn fan_direct_edge() {
        let q = Hypercube::new(3).unwrap();
        let targets = BTreeSet::from([l("001")]);
        let f = fan(&q, l("000"), &targets, 1).unwrap();
        assert_eq!(f.paths[0].vertices(), &[l("000"), l("001")]);
    }

    #[test]
    fn pair_paths_q2_unique_answer() {
        let q = Hypercube::new(2).unwrap();
        let paths = hypercube_pair_paths(&q, l("00"), l("11")).unwrap();
        assert_eq!(paths.len(), 2);
        let mut shapes: Vec<Vec<Label>> = paths.iter().map(|p| p.vertices().to_vec()).collect();
        shapes.sort();
        assert_eq!(
            shapes,
            vec![
                vec![l("00"), l("01"), l("11")],
                vec![l("00"), l("10"), l("11")]
            ]
        );
    }

    #[test]
    fn pair_paths_q4_antipodal_lengths() {
        let q = Hypercube::new(4).unwrap();
        let paths = hypercube_pair_paths(&q, l("0000"), l("1111")).unwrap();
        assert_eq!(paths.len(), 4);
        for p in &paths {
            assert!(p.len() >= 4);
        }
        assert_internally_disjoint(&paths, &BTreeSet::from([l("0000"), l("1111")]));
    }

    #[test]
    fn union_routing_same_cluster() {
        let d = DualCube::new(3).unwrap();
        let cx = d.cluster_of(l("00000"));
        let other = d.cluster_of(l("00001"));
        let clusters = BTreeSet::from([cx, other]);
        let p = path_in_cluster_union(&d, &clusters, l("00000"), l("11000")).unwrap();
        assert!(p.vertices().iter().all(|&v| cx.contains(v)));
    }

    #[test]
    fn union_routing_cross_edge_endpoints() {
        let d = DualCube::new(3).unwrap();
        let clusters = BTreeSet::from([d.cluster_of(l("01100")), d.cluster_of(l("01101"))]);
        let p = path_in_cluster_union(&d, &clusters, l("01100"), l("01101")).unwrap();
        assert_eq!(p.vertices(), &[l("01100"), l("01101")]);
    }

    #[test]
    fn union_routing_same_class_through_middle() {
        let d = DualCube::new(3).unwrap();
        let a = d.cluster_of(l("00000"));
        let b = d.cluster_of(l("00100"));
        let mid = d.cluster_of(l("00001"));
        let clusters = BTreeSet::from([a, b, mid]);
        let x = l("01000");
        let y = l("10100");
        let p = path_in_cluster_union(&d, &clusters, x, y).unwrap();
        assert_eq!(p.first(), x);
        assert_eq!(p.last(), y);
        assert!(p.is_valid_in(&d));
        assert!(p
            .vertices()
            .iter()
            .all(|&v| clusters.contains(&d.cluster_of(v))));
    }

    #[test]
    fn union_missing_class_is_rejected() {
        let d = DualCube::new(3).unwrap();
        let a = d.cluster_of(l("00000"));
        let b = d.cluster_of(l("00100"));
        let err =
            path_in_cluster_union(&d, &BTreeSet::from([a, b]), l("00000"), l("00100")).unwrap_err();
        assert!(matches!(err, MengerError::InvalidInput(_)));
    }
}
