//! The dual cube `D_n` and hypercube `Q_m` topologies.
//!
//! Vertices of `D_n` carry `(2n-1)`-bit labels `u_1 .. u_{2n-1}`. Two labels
//! are adjacent iff they differ in exactly one position `i` and
//!
//! * `1 <= i <= n-1` requires last bit `0` (edge inside a class-0 cluster),
//! * `n <= i <= 2n-2` requires last bit `1` (edge inside a class-1 cluster),
//! * `i = 2n-1` is unconditional (the cross edge).
//!
//! Fixing the last bit to `0` and positions `n..=2n-2` yields a class-0
//! cluster; fixing the last bit to `1` and positions `1..=n-1` yields a
//! class-1 cluster. Every cluster induces a copy of `Q_{n-1}` and each
//! opposite-class cluster pair meets in exactly one cross edge.

use thiserror::Error;

use crate::graph::Graph;
use crate::label::{Label, MAX_WIDTH};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TopologyError {
    #[error("dual cube order must be at least 2, got {0}")]
    InvalidOrder(u8),
    #[error("order {0} exceeds the supported label width")]
    OrderTooLarge(u8),
    #[error("hypercube dimension must be at least 1, got {0}")]
    InvalidDimension(u8),
    #[error("label {label} has width {} but width {expected} was required", label.width())]
    WidthMismatch { label: Label, expected: u8 },
    #[error("cluster pair must be one of each class with matching order")]
    BadClusterPair,
}

/// One cluster of `D_n`: a class bit plus the `(n-1)`-bit fixed pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClusterRef {
    n: u8,
    class_bit: u8,
    fixed: Label,
}

impl ClusterRef {
    pub fn new(n: u8, class_bit: u8, fixed: Label) -> Self {
        assert!(class_bit <= 1);
        assert_eq!(fixed.width(), n - 1);
        ClusterRef {
            n,
            class_bit,
            fixed,
        }
    }

    pub fn order(&self) -> u8 {
        self.n
    }

    pub fn class_bit(&self) -> u8 {
        self.class_bit
    }

    /// The fixed bit pattern (positions `n..=2n-2` for class 0, `1..=n-1`
    /// for class 1).
    pub fn fixed_bits(&self) -> Label {
        self.fixed
    }

    /// The `2^{n-1}` vertices of this cluster, sorted.
    pub fn vertices(&self) -> Vec<Label> {
        let free = self.n - 1;
        let mut out: Vec<Label> = Label::all(free).map(|var| self.vertex_for(var)).collect();
        out.sort();
        out
    }

    /// Assemble the full label whose free positions spell `var`.
    pub fn vertex_for(&self, var: Label) -> Label {
        debug_assert_eq!(var.width(), self.n - 1);
        if self.class_bit == 0 {
            var.concat(self.fixed).push_bit(0)
        } else {
            self.fixed.concat(var).push_bit(1)
        }
    }

    /// Project a member vertex onto its free positions.
    pub fn free_bits_of(&self, v: Label) -> Label {
        let n = self.n;
        if self.class_bit == 0 {
            v.slice(1, n - 1)
        } else {
            v.slice(n, 2 * n - 2)
        }
    }

    pub fn contains(&self, v: Label) -> bool {
        let n = self.n;
        if v.width() != 2 * n - 1 || v.bit(2 * n - 1) != self.class_bit {
            return false;
        }
        let fixed = if self.class_bit == 0 {
            v.slice(n, 2 * n - 2)
        } else {
            v.slice(1, n - 1)
        };
        fixed == self.fixed
    }
}

/// The `n`-dimensional dual cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualCube {
    n: u8,
}

impl DualCube {
    pub fn new(n: u8) -> Result<Self, TopologyError> {
        if n < 2 {
            return Err(TopologyError::InvalidOrder(n));
        }
        if 2 * n - 1 > MAX_WIDTH {
            return Err(TopologyError::OrderTooLarge(n));
        }
        Ok(DualCube { n })
    }

    pub fn order(&self) -> u8 {
        self.n
    }

    pub fn label_width(&self) -> u8 {
        2 * self.n - 1
    }

    /// `2^{2n-1}`.
    pub fn vertex_count(&self) -> usize {
        1usize << self.label_width()
    }

    pub fn check_label(&self, v: Label) -> Result<(), TopologyError> {
        if v.width() != self.label_width() {
            return Err(TopologyError::WidthMismatch {
                label: v,
                expected: self.label_width(),
            });
        }
        Ok(())
    }

    /// The unique neighbour of `v` in the opposite class: last bit flipped.
    pub fn outside_neighbor(&self, v: Label) -> Label {
        debug_assert_eq!(v.width(), self.label_width());
        v.flip(self.label_width())
    }

    pub fn cluster_of(&self, v: Label) -> ClusterRef {
        debug_assert_eq!(v.width(), self.label_width());
        let n = self.n;
        let class_bit = v.bit(2 * n - 1);
        let fixed = if class_bit == 0 {
            v.slice(n, 2 * n - 2)
        } else {
            v.slice(1, n - 1)
        };
        ClusterRef {
            n,
            class_bit,
            fixed,
        }
    }

    /// All clusters of one class, sorted by fixed pattern.
    pub fn clusters(&self, class_bit: u8) -> Vec<ClusterRef> {
        assert!(class_bit <= 1);
        Label::all(self.n - 1)
            .map(|fixed| ClusterRef {
                n: self.n,
                class_bit,
                fixed,
            })
            .collect()
    }

    /// The unique cross edge between a class-0 and a class-1 cluster, as
    /// `(class-0 endpoint, class-1 endpoint)`. Closed form: the class-0
    /// endpoint is `c1.fixed ++ c0.fixed ++ 0`.
    pub fn cross_edge(
        &self,
        c0: &ClusterRef,
        c1: &ClusterRef,
    ) -> Result<(Label, Label), TopologyError> {
        if c0.class_bit != 0 || c1.class_bit != 1 || c0.n != self.n || c1.n != self.n {
            return Err(TopologyError::BadClusterPair);
        }
        let u = c1.fixed.concat(c0.fixed).push_bit(0);
        Ok((u, self.outside_neighbor(u)))
    }

    /// Cross edge between two clusters of opposite class, given in either
    /// order; returned as `(endpoint in a, endpoint in b)`.
    pub fn cross_edge_between(
        &self,
        a: &ClusterRef,
        b: &ClusterRef,
    ) -> Result<(Label, Label), TopologyError> {
        if a.class_bit == 0 {
            self.cross_edge(a, b)
        } else {
            let (u, w) = self.cross_edge(b, a)?;
            Ok((w, u))
        }
    }

    /// The induced `Q_{n-1}` of a cluster, carrying the embedding back into
    /// this dual cube.
    pub fn cluster_graph(&self, c: &ClusterRef) -> Hypercube {
        debug_assert_eq!(c.n, self.n);
        Hypercube {
            m: self.n - 1,
            embedding: Some(*c),
        }
    }
}

impl Graph for DualCube {
    fn vertices(&self) -> Vec<Label> {
        Label::all(self.label_width()).collect()
    }

    fn contains(&self, v: Label) -> bool {
        v.width() == self.label_width()
    }

    fn neighbors(&self, v: Label) -> Vec<Label> {
        debug_assert_eq!(v.width(), self.label_width());
        let n = self.n;
        let w = self.label_width();
        let mut out = Vec::with_capacity(n as usize);
        let range = if v.bit(w) == 0 { 1..n } else { n..(2 * n - 1) };
        for pos in range {
            out.push(v.flip(pos));
        }
        out.push(v.flip(w));
        out.sort();
        out
    }

    fn vertex_count(&self) -> usize {
        DualCube::vertex_count(self)
    }
}

/// An `m`-dimensional hypercube, optionally embedded as a cluster of some
/// `D_n` (free cluster positions map to coordinates in increasing order).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Hypercube {
    m: u8,
    embedding: Option<ClusterRef>,
}

impl Hypercube {
    pub fn new(m: u8) -> Result<Self, TopologyError> {
        if m < 1 {
            return Err(TopologyError::InvalidDimension(m));
        }
        if m > MAX_WIDTH {
            return Err(TopologyError::OrderTooLarge(m));
        }
        Ok(Hypercube { m, embedding: None })
    }

    pub fn dimension(&self) -> u8 {
        self.m
    }

    pub fn embedding(&self) -> Option<&ClusterRef> {
        self.embedding.as_ref()
    }

    /// Map a hypercube vertex to its host dual-cube label.
    pub fn to_host(&self, v: Label) -> Option<Label> {
        self.embedding.map(|c| c.vertex_for(v))
    }

    /// Map a host dual-cube label (inside the embedded cluster) back.
    pub fn from_host(&self, v: Label) -> Option<Label> {
        self.embedding.map(|c| c.free_bits_of(v))
    }
}

impl Graph for Hypercube {
    fn vertices(&self) -> Vec<Label> {
        Label::all(self.m).collect()
    }

    fn contains(&self, v: Label) -> bool {
        v.width() == self.m
    }

    fn neighbors(&self, v: Label) -> Vec<Label> {
        debug_assert_eq!(v.width(), self.m);
        let mut out: Vec<Label> = (1..=self.m).map(|pos| v.flip(pos)).collect();
        out.sort();
        out
    }

    fn vertex_count(&self) -> usize {
        1usize << self.m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{components, is_bipartite, is_connected};
    use std::collections::BTreeSet;

    fn l(s: &str) -> Label {
        s.parse().unwrap()
    }

    #[test]
    fn d3_counts() {
        let d = DualCube::new(3).unwrap();
        assert_eq!(d.vertex_count(), 32);
        assert_eq!(d.edges().len(), 48);
        for v in d.vertices() {
            assert_eq!(d.degree(v), 3);
        }
        assert!(is_bipartite(&d));
        assert!(is_connected(&d));
    }

    #[test]
    fn d2_is_an_eight_cycle() {
        let d = DualCube::new(2).unwrap();
        assert_eq!(d.vertex_count(), 8);
        for v in d.vertices() {
            assert_eq!(d.degree(v), 2);
        }
        assert_eq!(components(&d).len(), 1);
        assert_eq!(d.edges().len(), 8);
    }

    #[test]
    fn regularity_up_to_order_six() {
        for n in 2..=6u8 {
            let d = DualCube::new(n).unwrap();
            assert_eq!(d.vertex_count(), 1 << (2 * n - 1));
            assert!(d.vertices().iter().all(|&v| d.degree(v) == n as usize));
            assert!(is_bipartite(&d));
        }
    }

    #[test]
    fn rejects_small_order() {
        assert_eq!(
            DualCube::new(1).unwrap_err(),
            TopologyError::InvalidOrder(1)
        );
        assert_eq!(
            DualCube::new(0).unwrap_err(),
            TopologyError::InvalidOrder(0)
        );
    }

    #[test]
    fn outside_neighbor_flips_last_bit() {
        let d = DualCube::new(3).unwrap();
        assert_eq!(d.outside_neighbor(l("01100")), l("01101"));
        for v in d.vertices() {
            let o = d.outside_neighbor(v);
            assert_eq!(d.outside_neighbor(o), v);
            assert_ne!(d.cluster_of(v).class_bit(), d.cluster_of(o).class_bit());
            assert!(d.has_edge(v, o));
        }
    }

    #[test]
    fn distinct_outside_neighbors_in_distinct_clusters() {
        let d = DualCube::new(3).unwrap();
        for c in d.clusters(0).iter().chain(d.clusters(1).iter()) {
            let vs = c.vertices();
            let outside_clusters: BTreeSet<ClusterRef> = vs
                .iter()
                .map(|&v| d.cluster_of(d.outside_neighbor(v)))
                .collect();
            assert_eq!(outside_clusters.len(), vs.len());
        }
    }

    #[test]
    fn cluster_of_examples() {
        let d = DualCube::new(3).unwrap();
        let c = d.cluster_of(l("01100"));
        assert_eq!(c.class_bit(), 0);
        assert_eq!(c.fixed_bits(), l("10"));
        let c = d.cluster_of(l("01101"));
        assert_eq!(c.class_bit(), 1);
        assert_eq!(c.fixed_bits(), l("01"));
    }

    #[test]
    fn clusters_partition_vertices() {
        let d = DualCube::new(3).unwrap();
        let c0 = d.clusters(0);
        let c1 = d.clusters(1);
        assert_eq!(c0.len(), 4);
        assert_eq!(c1.len(), 4);
        let mut all: Vec<Label> = Vec::new();
        for c in c0.iter().chain(c1.iter()) {
            let vs = c.vertices();
            assert_eq!(vs.len(), 4);
            for &v in &vs {
                assert_eq!(d.cluster_of(v), *c);
            }
            all.extend(vs);
        }
        all.sort();
        assert_eq!(all, d.vertices());
    }

    #[test]
    fn cross_edge_closed_form() {
        let d = DualCube::new(3).unwrap();
        let c0 = ClusterRef::new(3, 0, l("10"));
        let c1 = ClusterRef::new(3, 1, l("01"));
        let (u, w) = d.cross_edge(&c0, &c1).unwrap();
        assert_eq!((u, w), (l("01100"), l("01101")));
        assert_eq!(d.outside_neighbor(u), w);
        assert!(d.cross_edge(&c1, &c0).is_err());
    }

    #[test]
    fn cross_edges_unique_exhaustive() {
        for n in 2..=4u8 {
            let d = DualCube::new(n).unwrap();
            for c0 in d.clusters(0) {
                for c1 in d.clusters(1) {
                    let mut found = Vec::new();
                    for u in c0.vertices() {
                        for w in d.neighbors(u) {
                            if c1.contains(w) {
                                found.push((u, w));
                            }
                        }
                    }
                    assert_eq!(found.len(), 1, "n={n} {c0:?} {c1:?}");
                    assert_eq!(found[0], d.cross_edge(&c0, &c1).unwrap());
                }
            }
        }
    }

    #[test]
    fn cluster_graph_is_hypercube() {
        for n in [3u8, 4] {
            let d = DualCube::new(n).unwrap();
            for c in [d.clusters(0)[1], d.clusters(1)[0]] {
                let q = d.cluster_graph(&c);
                assert_eq!(q.dimension(), n - 1);
                assert_eq!(q.edges().len(), (n as usize - 1) * (1 << (n as usize - 2)));
                // round trip and adjacency preservation both ways
                for qv in q.vertices() {
                    let host = q.to_host(qv).unwrap();
                    assert!(c.contains(host));
                    assert_eq!(q.from_host(host).unwrap(), qv);
                    let mut mapped: Vec<Label> = q
                        .neighbors(qv)
                        .iter()
                        .map(|&w| q.to_host(w).unwrap())
                        .collect();
                    mapped.sort();
                    let host_nbrs: Vec<Label> = d
                        .neighbors(host)
                        .into_iter()
                        .filter(|w| c.contains(*w))
                        .collect();
                    assert_eq!(mapped, host_nbrs);
                }
            }
        }
    }

    #[test]
    fn q2_is_a_four_cycle() {
        let q = Hypercube::new(2).unwrap();
        assert_eq!(q.vertex_count(), 4);
        for v in q.vertices() {
            assert_eq!(q.degree(v), 2);
        }
        assert!(is_connected(&q));
    }
}
