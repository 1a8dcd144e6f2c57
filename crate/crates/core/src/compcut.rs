//! Component connectivity of the dual cube: minimum vertex sets whose
//! deletion splits `D_n` into at least `r + 1` components.
//!
//! The constructed cut removes the full neighbourhood of `r` in-cluster
//! neighbours `u_1 .. u_r` of a base vertex `u`; they become singletons and
//! the rest stays in one large component. Inside a hypercube two vertices
//! share either zero or exactly two neighbours, which is what pins the cut
//! size to `rn - r(r+1)/2 + 1`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{components, Graph, Subgraph};
use crate::label::Label;
use crate::topology::{DualCube, Hypercube};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CutError {
    #[error("order must be at least 2, got {0}")]
    InvalidOrder(u8),
    #[error("component count {r} out of range 1..={max} for order {n}")]
    ROutOfRange { r: u8, n: u8, max: u8 },
    #[error("deletion set of size {got} exceeds the threshold {max} for k = {k}")]
    TooManyRemovals { got: usize, max: usize, k: u8 },
    #[error("vertex {0} is not in the graph")]
    NotAVertex(Label),
}

/// `rn - r(r+1)/2 + 1`: the minimum size of a deletion set producing at
/// least `r + 1` components.
pub fn cut_size_formula(n: u8, r: u8) -> Result<usize, CutError> {
    if n < 2 {
        return Err(CutError::InvalidOrder(n));
    }
    if !(1..n).contains(&r) {
        return Err(CutError::ROutOfRange { r, n, max: n - 1 });
    }
    let (n, r) = (n as usize, r as usize);
    Ok(r * n - r * (r + 1) / 2 + 1)
}

/// A deletion set with its claimed component census (sizes descending).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutSet {
    pub n: u8,
    pub r: u8,
    pub removed: Vec<Label>,
    pub census: Vec<usize>,
}

/// Build the canonical minimum `(r+1)`-component cut: the neighbourhood of
/// the first `r` in-cluster neighbours of the all-zero vertex.
pub fn component_cut(d: &DualCube, r: u8) -> Result<CutSet, CutError> {
    let n = d.order();
    if !(1..n).contains(&r) {
        return Err(CutError::ROutOfRange { r, n, max: n - 1 });
    }
    let base = Label::zero(d.label_width());
    // in-cluster neighbours of the base, ordered by flipped position
    let seeds: Vec<Label> = (1..=r).map(|pos| base.flip(pos)).collect();
    let seed_set: BTreeSet<Label> = seeds.iter().copied().collect();
    let mut removed: BTreeSet<Label> = BTreeSet::new();
    for &s in &seeds {
        for w in d.neighbors(s) {
            if !seed_set.contains(&w) {
                removed.insert(w);
            }
        }
    }
    debug_assert_eq!(removed.len(), cut_size_formula(n, r).unwrap());
    debug_assert!(removed.contains(&base));
    let removed: Vec<Label> = removed.into_iter().collect();
    let census = census_without(d, &removed);
    Ok(CutSet {
        n,
        r,
        removed,
        census,
    })
}

fn census_without<G: Graph>(g: &G, removed: &[Label]) -> Vec<usize> {
    let gone: BTreeSet<Label> = removed.iter().copied().collect();
    let sub = Subgraph::without(g, &gone);
    let mut census: Vec<usize> = components(&sub).iter().map(|c| c.len()).collect();
    census.sort_by(|a, b| b.cmp(a));
    census
}

/// Recomputed component census after a deletion, with the cut's claims
/// checked against it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    /// Component sizes, largest first.
    pub components: Vec<usize>,
    pub singletons: usize,
    /// At least `r + 1` components, at least `r` of them singletons, and
    /// the census stored in the cut matches.
    pub claims_hold: bool,
}

/// Independent census of `D - removed` plus a check of the cut's claims.
pub fn verify_cut(d: &DualCube, cut: &CutSet) -> Result<CensusReport, CutError> {
    for &v in &cut.removed {
        if !d.contains(v) {
            return Err(CutError::NotAVertex(v));
        }
    }
    let components = census_without(d, &cut.removed);
    let singletons = components.iter().filter(|&&s| s == 1).count();
    let claims_hold = components.len() >= cut.r as usize + 1
        && singletons >= cut.r as usize
        && components == cut.census;
    Ok(CensusReport {
        components,
        singletons,
        claims_hold,
    })
}

/// Census of `D - removed` plus the structural claim that all components
/// except the largest total at most `k - 1` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub components: Vec<usize>,
    pub small_total: usize,
    pub small_bounded: bool,
}

/// Check the sub-threshold deletion structure: removing at most
/// `kn - k(k+1)/2` vertices leaves one large component plus small ones
/// totalling at most `k - 1` vertices.
pub fn structure_check(
    d: &DualCube,
    removed: &BTreeSet<Label>,
    k: u8,
) -> Result<StructureReport, CutError> {
    let n = d.order();
    if !(1..n).contains(&k) {
        return Err(CutError::ROutOfRange {
            r: k,
            n,
            max: n - 1,
        });
    }
    let max = cut_size_formula(n, k)? - 1;
    if removed.len() > max {
        return Err(CutError::TooManyRemovals {
            got: removed.len(),
            max,
            k,
        });
    }
    for &v in removed {
        if !d.contains(v) {
            return Err(CutError::NotAVertex(v));
        }
    }
    let removed_vec: Vec<Label> = removed.iter().copied().collect();
    let components = census_without(d, &removed_vec);
    let small_total: usize = components.iter().skip(1).sum();
    Ok(StructureReport {
        small_total,
        small_bounded: small_total <= k as usize - 1,
        components,
    })
}

/// `N(u) ∩ N(v)` in a hypercube: empty at odd or large distance, exactly
/// two vertices at distance two.
pub fn common_neighbors(q: &Hypercube, u: Label, v: Label) -> Vec<Label> {
    assert_ne!(u, v, "common neighbours need distinct vertices");
    let nu: BTreeSet<Label> = q.neighbors(u).into_iter().collect();
    let nv: BTreeSet<Label> = q.neighbors(v).into_iter().collect();
    nu.intersection(&nv).copied().collect()
}
