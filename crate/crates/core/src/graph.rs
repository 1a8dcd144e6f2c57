//! Graph abstraction shared by the topology, routing and oracle layers.
//!
//! Everything is keyed by [`Label`]; neighbour lists are returned sorted so
//! every traversal in the crate is deterministic.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::label::Label;

/// An undirected graph over labels.
pub trait Graph {
    /// All vertices, sorted.
    fn vertices(&self) -> Vec<Label>;

    fn contains(&self, v: Label) -> bool;

    /// Neighbours of `v`, sorted.
    fn neighbors(&self, v: Label) -> Vec<Label>;

    fn vertex_count(&self) -> usize {
        self.vertices().len()
    }

    fn degree(&self, v: Label) -> usize {
        self.neighbors(v).len()
    }

    fn has_edge(&self, u: Label, v: Label) -> bool {
        self.neighbors(u).contains(&v)
    }

    /// All edges as normalized `(min, max)` pairs, sorted.
    fn edges(&self) -> Vec<(Label, Label)> {
        let mut out = Vec::new();
        for u in self.vertices() {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out.sort();
        out
    }
}

/// Induced subgraph of a host graph on an explicit vertex set.
pub struct Subgraph<'g, G: Graph> {
    host: &'g G,
    allowed: BTreeSet<Label>,
}

impl<'g, G: Graph> Subgraph<'g, G> {
    pub fn new(host: &'g G, allowed: BTreeSet<Label>) -> Self {
        Subgraph { host, allowed }
    }

    /// Induced subgraph on the complement of `removed`.
    pub fn without(host: &'g G, removed: &BTreeSet<Label>) -> Self {
        let allowed = host
            .vertices()
            .into_iter()
            .filter(|v| !removed.contains(v))
            .collect();
        Subgraph { host, allowed }
    }

    pub fn allowed(&self) -> &BTreeSet<Label> {
        &self.allowed
    }
}

impl<G: Graph> Graph for Subgraph<'_, G> {
    fn vertices(&self) -> Vec<Label> {
        self.allowed.iter().copied().collect()
    }

    fn contains(&self, v: Label) -> bool {
        self.allowed.contains(&v)
    }

    fn neighbors(&self, v: Label) -> Vec<Label> {
        debug_assert!(self.allowed.contains(&v));
        self.host
            .neighbors(v)
            .into_iter()
            .filter(|w| self.allowed.contains(w))
            .collect()
    }

    fn vertex_count(&self) -> usize {
        self.allowed.len()
    }
}

/// Materialized adjacency-list graph, mainly for oracle fixtures.
#[derive(Debug, Clone, Default)]
pub struct AdjacencyGraph {
    adj: BTreeMap<Label, BTreeSet<Label>>,
}

impl AdjacencyGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges(edges: &[(Label, Label)]) -> Self {
        let mut g = Self::new();
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Materialize any graph; handy when repeated neighbour queries dominate.
    pub fn materialize<G: Graph>(g: &G) -> Self {
        let mut adj = BTreeMap::new();
        for v in g.vertices() {
            adj.insert(v, g.neighbors(v).into_iter().collect());
        }
        AdjacencyGraph { adj }
    }

    pub fn add_vertex(&mut self, v: Label) {
        self.adj.entry(v).or_default();
    }

    pub fn add_edge(&mut self, u: Label, v: Label) {
        assert_ne!(u, v, "no self loops");
        self.adj.entry(u).or_default().insert(v);
        self.adj.entry(v).or_default().insert(u);
    }
}

impl Graph for AdjacencyGraph {
    fn vertices(&self) -> Vec<Label> {
        self.adj.keys().copied().collect()
    }

    fn contains(&self, v: Label) -> bool {
        self.adj.contains_key(&v)
    }

    fn neighbors(&self, v: Label) -> Vec<Label> {
        self.adj
            .get(&v)
            .map(|s| s.iter().copied().collect())
            .unwrap_or_default()
    }
}

/// Normalized undirected edge.
pub fn edge(u: Label, v: Label) -> (Label, Label) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Shortest path by BFS, ties broken by visiting order (sorted neighbours).
pub fn bfs_path<G: Graph>(g: &G, from: Label, to: Label) -> Option<Vec<Label>> {
    bfs_to_set(g, from, &BTreeSet::from([to]))
}

/// BFS from `from` until the first vertex of `targets` is reached; returns
/// the path ending there. `from` itself may be a target (single-vertex path).
pub fn bfs_to_set<G: Graph>(g: &G, from: Label, targets: &BTreeSet<Label>) -> Option<Vec<Label>> {
    if targets.contains(&from) {
        return Some(vec![from]);
    }
    let mut parent: BTreeMap<Label, Label> = BTreeMap::new();
    let mut queue = VecDeque::new();
    parent.insert(from, from);
    queue.push_back(from);
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(u) {
            if parent.contains_key(&w) {
                continue;
            }
            parent.insert(w, u);
            if targets.contains(&w) {
                let mut path = vec![w];
                let mut cur = w;
                while cur != from {
                    cur = parent[&cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(w);
        }
    }
    None
}

/// Connected components as sorted vertex lists, ordered by smallest member.
pub fn components<G: Graph>(g: &G) -> Vec<Vec<Label>> {
    let mut seen: BTreeSet<Label> = BTreeSet::new();
    let mut comps = Vec::new();
    for v in g.vertices() {
        if seen.contains(&v) {
            continue;
        }
        let mut comp = vec![];
        let mut queue = VecDeque::from([v]);
        seen.insert(v);
        while let Some(u) = queue.pop_front() {
            comp.push(u);
            for w in g.neighbors(u) {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        comp.sort();
        comps.push(comp);
    }
    comps
}

pub fn is_connected<G: Graph>(g: &G) -> bool {
    let n = g.vertex_count();
    n <= 1 || components(g).len() == 1
}

/// Two-colouring check; returns false on any odd cycle.
pub fn is_bipartite<G: Graph>(g: &G) -> bool {
    let mut color: BTreeMap<Label, bool> = BTreeMap::new();
    for v in g.vertices() {
        if color.contains_key(&v) {
            continue;
        }
        color.insert(v, false);
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            let cu = color[&u];
            for w in g.neighbors(u) {
                match color.get(&w) {
                    Some(&cw) if cw == cu => return false,
                    Some(_) => {}
                    None => {
                        color.insert(w, !cu);
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    true
}

/// Grow a tree containing all `terminals` inside `g`: start from the first
/// terminal and attach each next one by a BFS path to the partial tree.
/// Returns `None` if some terminal is unreachable.
pub fn steiner_connect<G: Graph>(g: &G, terminals: &[Label]) -> Option<BTreeSet<(Label, Label)>> {
    assert!(!terminals.is_empty());
    let mut tree: BTreeSet<(Label, Label)> = BTreeSet::new();
    let mut tree_vertices: BTreeSet<Label> = BTreeSet::from([terminals[0]]);
    for &t in &terminals[1..] {
        if tree_vertices.contains(&t) {
            continue;
        }
        let path = bfs_to_set(g, t, &tree_vertices)?;
        for pair in path.windows(2) {
            tree.insert(edge(pair[0], pair[1]));
        }
        tree_vertices.extend(path);
    }
    Some(tree)
}

/// Vertices touched by an edge set.
pub fn edge_set_vertices(edges: &BTreeSet<(Label, Label)>) -> BTreeSet<Label> {
    let mut vs = BTreeSet::new();
    for &(u, v) in edges {
        vs.insert(u);
        vs.insert(v);
    }
    vs
}

/// Repeatedly strip leaves not in `keep`, leaving the minimal subtree
/// spanning `keep` (assuming the input is a tree containing `keep`).
pub fn prune_to(
    edges: &BTreeSet<(Label, Label)>,
    keep: &BTreeSet<Label>,
) -> BTreeSet<(Label, Label)> {
    let mut edges = edges.clone();
    loop {
        let mut deg: BTreeMap<Label, usize> = BTreeMap::new();
        for &(u, v) in &edges {
            *deg.entry(u).or_default() += 1;
            *deg.entry(v).or_default() += 1;
        }
        let doomed: BTreeSet<Label> = deg
            .iter()
            .filter(|(v, &d)| d == 1 && !keep.contains(v))
            .map(|(&v, _)| v)
            .collect();
        if doomed.is_empty() {
            return edges;
        }
        edges.retain(|&(u, v)| !doomed.contains(&u) && !doomed.contains(&v));
    }
}

/// Acyclic + connected check for a nonempty edge set.
pub fn is_tree(edges: &BTreeSet<(Label, Label)>) -> bool {
    if edges.is_empty() {
        return true;
    }
    let vs = edge_set_vertices(edges);
    if edges.len() + 1 != vs.len() {
        return false;
    }
    let mut adj: BTreeMap<Label, Vec<Label>> = BTreeMap::new();
    for &(u, v) in edges {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    let start = *vs.iter().next().unwrap();
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[&u] {
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen.len() == vs.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> Label {
        s.parse().unwrap()
    }

    fn path_graph(names: &[&str]) -> AdjacencyGraph {
        let labels: Vec<Label> = names.iter().map(|s| l(s)).collect();
        let edges: Vec<_> = labels.windows(2).map(|w| (w[0], w[1])).collect();
        AdjacencyGraph::from_edges(&edges)
    }

    #[test]
    fn bfs_finds_shortest() {
        let g = path_graph(&["000", "001", "011", "111"]);
        let p = bfs_path(&g, l("000"), l("111")).unwrap();
        assert_eq!(p.len(), 4);
        assert!(bfs_path(&g, l("000"), l("000")).unwrap().len() == 1);
    }

    #[test]
    fn components_and_census() {
        let mut g = path_graph(&["000", "001"]);
        g.add_vertex(l("111"));
        let comps = components(&g);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].len(), 2);
        assert_eq!(comps[1], vec![l("111")]);
    }

    #[test]
    fn steiner_connect_spans() {
        // 4-cycle 00-01-11-10-00
        let g = AdjacencyGraph::from_edges(&[
            (l("00"), l("01")),
            (l("01"), l("11")),
            (l("11"), l("10")),
            (l("10"), l("00")),
        ]);
        let t = steiner_connect(&g, &[l("00"), l("11"), l("10")]).unwrap();
        assert!(is_tree(&t));
        let vs = edge_set_vertices(&t);
        assert!(vs.contains(&l("00")) && vs.contains(&l("11")) && vs.contains(&l("10")));
    }

    #[test]
    fn prune_drops_dangling() {
        let t: BTreeSet<_> = [(l("00"), l("01")), (l("01"), l("11")), (l("11"), l("10"))]
            .into_iter()
            .collect();
        let keep = BTreeSet::from([l("00"), l("11")]);
        let pruned = prune_to(&t, &keep);
        assert_eq!(pruned.len(), 2);
        assert!(!edge_set_vertices(&pruned).contains(&l("10")));
    }
}
