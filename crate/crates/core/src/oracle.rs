//! Brute-force ground truth, independent of the constructive layers.
//!
//! Everything here re-derives its answers from the graph alone: exact
//! vertex connectivity by its own vertex-split max-flow, exhaustive
//! Steiner-tree packing on small graphs, exhaustive minimum-cut search, and
//! a structural verifier for tree families. None of this shares routing
//! code with the constructors it is used to check.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{components, edge, edge_set_vertices, is_tree, Graph};
use crate::label::Label;
use crate::steiner::{TreeEdges, TreeSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance too large: {0}")]
    BudgetExceeded(String),
    #[error("invalid oracle input: {0}")]
    InvalidInput(String),
}

// ---------------------------------------------------------------------------
// verification reports
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

/// Outcome of a structured verification; every failed check names a witness.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    fn new(subject: impl Into<String>) -> Self {
        VerificationReport {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    fn push(&mut self, name: impl Into<String>, pass: bool, witness: Option<String>) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            witness,
        });
    }

    pub fn overall(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            subject: &'a str,
            overall: bool,
            checks: &'a [Check],
        }
        serde_json::to_string(&Doc {
            subject: &self.subject,
            overall: self.overall(),
            checks: &self.checks,
        })
        .expect("plain struct serializes")
    }
}

// ---------------------------------------------------------------------------
// exact vertex connectivity (own flow kernel)
// ---------------------------------------------------------------------------

struct IndexedGraph {
    adj: Vec<Vec<usize>>,
}

impl IndexedGraph {
    fn build<G: Graph>(g: &G) -> (Self, Vec<Label>) {
        let labels = g.vertices();
        let index: BTreeMap<Label, usize> =
            labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj = labels
            .iter()
            .map(|&v| g.neighbors(v).into_iter().map(|w| index[&w]).collect())
            .collect();
        (IndexedGraph { adj }, labels)
    }

    /// Max number of internally disjoint s-t paths, capped at `limit`.
    /// Unit-capacity vertex-split BFS augmentation.
    fn local_connectivity(&self, s: usize, t: usize, limit: usize) -> usize {
        let n = self.adj.len();
        // residual adjacency as capacity maps: node ids in 0..2n,
        // in(v) = 2v, out(v) = 2v+1
        let mut cap: BTreeMap<(usize, usize), u8> = BTreeMap::new();
        for v in 0..n {
            if v != s && v != t {
                cap.insert((2 * v, 2 * v + 1), 1);
            }
        }
        for (v, nbrs) in self.adj.iter().enumerate() {
            for &w in nbrs {
                cap.insert((2 * v + 1, 2 * w), 1);
            }
        }
        // terminals pass flow freely
        cap.insert((2 * s, 2 * s + 1), u8::MAX);
        cap.insert((2 * t, 2 * t + 1), u8::MAX);
        let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
        for &(u, v) in cap.keys() {
            out_arcs[u].push(v);
            out_arcs[v].push(u); // residual direction
        }
        let (src, dst) = (2 * s + 1, 2 * t);
        let mut flow = 0;
        while flow < limit {
            let mut pred: Vec<Option<usize>> = vec![None; 2 * n];
            pred[src] = Some(src);
            let mut queue = VecDeque::from([src]);
            'bfs: while let Some(u) = queue.pop_front() {
                for &v in &out_arcs[u] {
                    if pred[v].is_none() && cap.get(&(u, v)).copied().unwrap_or(0) > 0 {
                        pred[v] = Some(u);
                        if v == dst {
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
            }
            if pred[dst].is_none() {
                break;
            }
            let mut v = dst;
            while v != src {
                let u = pred[v].unwrap();
                *cap.get_mut(&(u, v)).unwrap() -= 1;
                *cap.entry((v, u)).or_insert(0) += 1;
                v = u;
            }
            flow += 1;
        }
        flow
    }
}

/// Exact vertex connectivity: the minimum over non-adjacent pairs of the
/// max internally disjoint path count; `|V|-1` for complete graphs.
pub fn vertex_connectivity<G: Graph>(g: &G) -> usize {
    let (ig, labels) = IndexedGraph::build(g);
    let n = labels.len();
    assert!(n >= 2, "connectivity needs at least two vertices");
    let mut best = n - 1;
    for s in 0..n {
        for t in s + 1..n {
            if ig.adj[s].contains(&t) {
                continue;
            }
            let k = ig.local_connectivity(s, t, best);
            best = best.min(k);
            if best == 0 {
                return 0;
            }
        }
    }
    best
}

// ---------------------------------------------------------------------------
// tree-set verification
// ---------------------------------------------------------------------------

/// Structural verification of a tree family: each tree uses real edges, is
/// acyclic and connected, spans the terminals; each pair meets exactly in
/// the terminal set and shares no edge; the count matches when expected.
pub fn verify_tree_set<G: Graph>(
    g: &G,
    ts: &TreeSet,
    expected_count: Option<usize>,
) -> VerificationReport {
    let mut report = VerificationReport::new(format!(
        "{} trees over {:?}",
        ts.tree_count(),
        ts.terminals()
    ));
    if let Some(want) = expected_count {
        report.push(
            "tree-count",
            ts.tree_count() == want,
            (ts.tree_count() != want).then(|| format!("got {}, want {want}", ts.tree_count())),
        );
    }
    let terminals: BTreeSet<Label> = ts.terminals().iter().copied().collect();
    let vertex_sets: Vec<BTreeSet<Label>> = ts.trees().iter().map(edge_set_vertices).collect();
    for (i, tree) in ts.trees().iter().enumerate() {
        let bad_edge = tree.iter().find(|&&(u, v)| !g.has_edge(u, v));
        report.push(
            format!("tree-{i}-edges-exist"),
            bad_edge.is_none(),
            bad_edge.map(|e| format!("{e:?}")),
        );
        report.push(
            format!("tree-{i}-is-tree"),
            is_tree(tree),
            (!is_tree(tree)).then(|| format!("{} edges", tree.len())),
        );
        let missing = terminals.iter().find(|t| !vertex_sets[i].contains(t));
        report.push(
            format!("tree-{i}-spans-terminals"),
            missing.is_none(),
            missing.map(|t| format!("terminal-missing {t}")),
        );
    }
    for i in 0..ts.trees().len() {
        for j in i + 1..ts.trees().len() {
            let inter: BTreeSet<Label> = vertex_sets[i]
                .intersection(&vertex_sets[j])
                .copied()
                .collect();
            let ok = inter == terminals;
            report.push(
                format!("trees-{i}-{j}-internally-disjoint"),
                ok,
                (!ok).then(|| {
                    let extra: Vec<&Label> = inter.difference(&terminals).collect();
                    let miss: Vec<&Label> = terminals.difference(&inter).collect();
                    format!("extra {extra:?} missing {miss:?}")
                }),
            );
            let shared_edge = ts.trees()[i].intersection(&ts.trees()[j]).next();
            report.push(
                format!("trees-{i}-{j}-edge-disjoint"),
                shared_edge.is_none(),
                shared_edge.map(|e| format!("{e:?}")),
            );
        }
    }
    report
}

// ---------------------------------------------------------------------------
// Steiner tree packing
// ---------------------------------------------------------------------------

/// Result of a packing computation: exact on the exhaustive regime, a
/// certified lower bound otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Packing {
    Exact(usize),
    LowerBound(usize),
}

impl Packing {
    pub fn count(&self) -> usize {
        match *self {
            Packing::Exact(k) | Packing::LowerBound(k) => k,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Packing::Exact(_))
    }
}

/// Vertex budget below which the packing search is exhaustive.
pub const EXHAUSTIVE_VERTEX_LIMIT: usize = 16;

/// Maximum number of trees pairwise intersecting exactly in `terminals`
/// and sharing no edges. Exhaustive (exact) up to
/// [`EXHAUSTIVE_VERTEX_LIMIT`] vertices; greedy lower bound beyond.
pub fn max_stree_packing<G: Graph>(g: &G, terminals: &[Label]) -> Result<Packing, OracleError> {
    let mut terms = terminals.to_vec();
    terms.sort();
    terms.dedup();
    if terms.len() != terminals.len() || terms.len() < 2 {
        return Err(OracleError::InvalidInput(
            "terminals must be distinct, at least two".into(),
        ));
    }
    if terms.iter().any(|t| !g.contains(*t)) {
        return Err(OracleError::InvalidInput(
            "terminal outside the graph".into(),
        ));
    }
    if g.vertex_count() <= EXHAUSTIVE_VERTEX_LIMIT {
        Ok(Packing::Exact(exhaustive_packing(g, &terms)))
    } else {
        Ok(Packing::LowerBound(greedy_packing(g, &terms, 24)))
    }
}

fn exhaustive_packing<G: Graph>(g: &G, terms: &[Label]) -> usize {
    let labels = g.vertices();
    let nv = labels.len();
    debug_assert!(nv <= EXHAUSTIVE_VERTEX_LIMIT);
    let index: BTreeMap<Label, usize> = labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adj: Vec<u32> = labels
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .into_iter()
                .fold(0u32, |m, w| m | (1 << index[&w]))
        })
        .collect();
    let tbits: Vec<usize> = terms.iter().map(|t| index[t]).collect();
    let tmask: u32 = tbits.iter().fold(0, |m, &b| m | (1 << b));
    let full: u32 = ((1u64 << nv) - 1) as u32;
    let free_mask = full & !tmask;
    let mut sedges: Vec<(usize, usize)> = Vec::new();
    for (i, &a) in tbits.iter().enumerate() {
        for &b in &tbits[i + 1..] {
            if adj[a] & (1 << b) != 0 {
                sedges.push((a.min(b), a.max(b)));
            }
        }
    }
    sedges.sort();
    let all_sedges: u32 = (1u32 << sedges.len()) - 1;

    let s_connected = |mask: u32, allowed: u32| -> bool {
        let start = tbits[0];
        if mask & (1 << start) == 0 {
            return false;
        }
        let mut seen = 1u32 << start;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            let mut nbrs = adj[u] & mask & !seen;
            while nbrs != 0 {
                let w = nbrs.trailing_zeros() as usize;
                nbrs &= nbrs - 1;
                if tmask & (1 << u) != 0 && tmask & (1 << w) != 0 {
                    if let Some(eid) = sedges
                        .iter()
                        .position(|&(a, b)| (a, b) == (u.min(w), u.max(w)))
                    {
                        if allowed & (1 << eid) == 0 {
                            continue;
                        }
                    }
                }
                seen |= 1 << w;
                stack.push(w);
            }
        }
        tbits.iter().all(|&b| seen & (1 << b) != 0)
    };

    // jointly minimal (vertex set, terminal-edge budget) pairs: shrinking
    // any valid tree family lands on these without breaking vertex or edge
    // disjointness, so packing over them is complete
    let mut cands: Vec<(u32, u32)> = Vec::new();
    let mut sub = free_mask;
    loop {
        let mask = tmask | sub;
        if s_connected(mask, all_sedges) {
            'budget: for a in 0..=all_sedges {
                if !s_connected(mask, a) {
                    continue;
                }
                let mut bits = a;
                while bits != 0 {
                    let e = bits.trailing_zeros();
                    bits &= bits - 1;
                    if s_connected(mask, a & !(1 << e)) {
                        continue 'budget;
                    }
                }
                let mut bits = sub;
                while bits != 0 {
                    let v = bits.trailing_zeros();
                    bits &= bits - 1;
                    if s_connected(mask & !(1 << v), a) {
                        continue 'budget;
                    }
                }
                cands.push((sub, a));
            }
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & free_mask;
    }
    cands.sort_by_key(|&(free, a)| (free.count_ones(), free, a));

    fn dfs(
        cands: &[(u32, u32)],
        pos: usize,
        used_free: u32,
        used_sedges: u32,
        depth: usize,
        best: &mut usize,
    ) {
        *best = (*best).max(depth);
        if pos == cands.len() || depth + (cands.len() - pos) <= *best {
            return;
        }
        for i in pos..cands.len() {
            let (free, a) = cands[i];
            if free & used_free != 0 || a & used_sedges != 0 {
                continue;
            }
            dfs(
                cands,
                i + 1,
                used_free | free,
                used_sedges | a,
                depth + 1,
                best,
            );
        }
    }
    let mut best = 0;
    dfs(&cands, 0, 0, 0, 0, &mut best);
    best
}

/// Deterministic greedy packing attempts with varied exploration orders;
/// reports the best count achieved.
fn greedy_packing<G: Graph>(g: &G, terms: &[Label], attempts: u64) -> usize {
    let sset: BTreeSet<Label> = terms.iter().copied().collect();
    let mut best = 0;
    for seed in 0..attempts {
        let mut used: BTreeSet<Label> = BTreeSet::new();
        let mut used_tedges: BTreeSet<(Label, Label)> = BTreeSet::new();
        let mut count = 0;
        'trees: loop {
            let rot = (seed as usize + count) % terms.len();
            let order: Vec<Label> = (0..terms.len())
                .map(|k| terms[(k + rot) % terms.len()])
                .collect();
            let scramble =
                (seed.wrapping_mul(0x9e37_79b9).wrapping_add(count as u64) & 0xffff_ffff) as u32;
            let mut tree: TreeEdges = TreeEdges::new();
            let mut tv: BTreeSet<Label> = BTreeSet::from([order[0]]);
            for &t in &order[1..] {
                if tv.contains(&t) {
                    continue;
                }
                let Some(path) = banned_bfs(g, t, &tv, &sset, &used, &used_tedges, scramble) else {
                    break 'trees;
                };
                for pair in path.windows(2) {
                    tree.insert(edge(pair[0], pair[1]));
                }
                tv.extend(path);
            }
            for &(a, b) in &tree {
                if sset.contains(&a) && sset.contains(&b) {
                    used_tedges.insert((a, b));
                }
                for v in [a, b] {
                    if !sset.contains(&v) {
                        used.insert(v);
                    }
                }
            }
            count += 1;
        }
        best = best.max(count);
    }
    best
}

fn banned_bfs<G: Graph>(
    g: &G,
    from: Label,
    targets: &BTreeSet<Label>,
    sset: &BTreeSet<Label>,
    used: &BTreeSet<Label>,
    banned_edges: &BTreeSet<(Label, Label)>,
    scramble: u32,
) -> Option<Vec<Label>> {
    let mut parent: BTreeMap<Label, Label> = BTreeMap::new();
    parent.insert(from, from);
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        let mut nbrs = g.neighbors(u);
        nbrs.sort_by_key(|v| v.bits() ^ scramble);
        for w in nbrs {
            if parent.contains_key(&w) || used.contains(&w) {
                continue;
            }
            if sset.contains(&u) && sset.contains(&w) && banned_edges.contains(&edge(u, w)) {
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
                return Some(path);
            }
            queue.push_back(w);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// exhaustive cut search
// ---------------------------------------------------------------------------

/// Default ceiling on the number of subsets an exhaustive search may visit.
pub const SUBSET_BUDGET: u64 = 20_000_000;

/// Search all vertex subsets of the given size for one whose removal leaves
/// at least `r + 1` components. `Ok(None)` certifies that no such set
/// exists.
pub fn exhaustive_cut_search<G: Graph>(
    g: &G,
    size: usize,
    r: usize,
) -> Result<Option<Vec<Label>>, OracleError> {
    let labels = g.vertices();
    let n = labels.len();
    if size >= n {
        return Err(OracleError::InvalidInput(format!(
            "cut size {size} must be below the vertex count {n}"
        )));
    }
    let combos = binomial(n, size);
    if combos > SUBSET_BUDGET {
        return Err(OracleError::BudgetExceeded(format!(
            "C({n},{size}) = {combos} subsets exceeds the budget {SUBSET_BUDGET}"
        )));
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        let removed: BTreeSet<Label> = idx.iter().map(|&i| labels[i]).collect();
        let sub = crate::graph::Subgraph::without(g, &removed);
        if components(&sub).len() >= r + 1 {
            return Ok(Some(removed.into_iter().collect()));
        }
        // next combination in lexicographic order
        let mut i = size;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if idx[i] != i + n - size {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::AdjacencyGraph;
    use crate::steiner::TreeSet;
    use crate::topology::{DualCube, Hypercube};

    fn l(s: &str) -> Label {
        s.parse().unwrap()
    }

    #[test]
    fn connectivity_of_hypercubes() {
        assert_eq!(vertex_connectivity(&Hypercube::new(2).unwrap()), 2);
        assert_eq!(vertex_connectivity(&Hypercube::new(3).unwrap()), 3);
    }

    #[test]
    fn connectivity_of_small_dual_cubes() {
        assert_eq!(vertex_connectivity(&DualCube::new(2).unwrap()), 2);
        assert_eq!(vertex_connectivity(&DualCube::new(3).unwrap()), 3);
    }

    #[test]
    fn connectivity_of_a_path() {
        let g = AdjacencyGraph::from_edges(&[(l("00"), l("01")), (l("01"), l("11"))]);
        assert_eq!(vertex_connectivity(&g), 1);
    }

    #[test]
    fn packing_on_q3_is_two() {
        let q = Hypercube::new(3).unwrap();
        let terms = vec![l("000"), l("011"), l("101"), l("110")];
        assert_eq!(max_stree_packing(&q, &terms).unwrap(), Packing::Exact(2));
    }

    #[test]
    fn packing_on_c4_is_one() {
        let q = Hypercube::new(2).unwrap();
        let terms: Vec<Label> = q.vertices();
        assert_eq!(max_stree_packing(&q, &terms).unwrap(), Packing::Exact(1));
    }

    #[test]
    fn packing_star_leaves_is_one() {
        let hub = l("000");
        let leaves = [l("001"), l("010"), l("100")];
        let g = AdjacencyGraph::from_edges(&[(hub, leaves[0]), (hub, leaves[1]), (hub, leaves[2])]);
        assert_eq!(max_stree_packing(&g, &leaves).unwrap(), Packing::Exact(1));
    }

    #[test]
    fn verifier_flags_shared_internal_vertex() {
        let d = DualCube::new(2).unwrap();
        // two fake "trees" sharing the non-terminal vertex 001
        let t1: TreeEdges = [(l("000"), l("001")), (l("001"), l("011"))]
            .into_iter()
            .collect();
        let t2: TreeEdges = [(l("000"), l("001")), (l("001"), l("011"))]
            .into_iter()
            .collect();
        let ts = TreeSet::new(2, vec![l("000"), l("011")], vec![t1, t2]);
        let report = verify_tree_set(&d, &ts, None);
        assert!(!report.overall());
        assert!(report
            .failures()
            .any(|c| c.name.contains("internally-disjoint")));
        assert!(report.failures().any(|c| c.name.contains("edge-disjoint")));
    }

    #[test]
    fn verifier_flags_missing_terminal() {
        let d = DualCube::new(2).unwrap();
        let t1: TreeEdges = [(l("000"), l("001"))].into_iter().collect();
        let ts = TreeSet::new(2, vec![l("000"), l("011")], vec![t1]);
        let report = verify_tree_set(&d, &ts, Some(1));
        assert!(!report.overall());
        assert!(report.failures().any(|c| c
            .witness
            .as_deref()
            .unwrap_or("")
            .contains("terminal-missing")));
    }

    #[test]
    fn cut_search_refuses_oversized_instances() {
        let d = DualCube::new(4).unwrap();
        assert!(matches!(
            exhaustive_cut_search(&d, 10, 1),
            Err(OracleError::BudgetExceeded(_))
        ));
    }

    #[test]
    fn report_serializes_with_witnesses() {
        let d = DualCube::new(2).unwrap();
        let t1: TreeEdges = [(l("000"), l("001"))].into_iter().collect();
        let ts = TreeSet::new(2, vec![l("000"), l("011")], vec![t1]);
        let report = verify_tree_set(&d, &ts, Some(1));
        let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(json["overall"], false);
        assert!(json["checks"].as_array().unwrap().len() >= 3);
    }

    #[test]
    fn cut_search_on_an_eight_cycle() {
        let d = DualCube::new(2).unwrap();
        // no single vertex disconnects a cycle
        assert_eq!(exhaustive_cut_search(&d, 1, 1).unwrap(), None);
        // two antipodal removals do
        let witness = exhaustive_cut_search(&d, 2, 1).unwrap();
        assert!(witness.is_some());
    }
}
