//! Pivot selection on families of internally disjoint pair paths.
//!
//! A pivot is one vertex per path whose outside neighbour carries the tree
//! into its connector cluster. Interior vertices are preferred (they are
//! unique to their path); a path endpoint may serve when a path has no
//! usable interior vertex, but each endpoint at most once since its outside
//! neighbour is unique.

use std::collections::BTreeSet;

use crate::label::Label;
use crate::menger::Path;

/// One pivot per path, avoiding `banned` vertices, distinct across paths.
/// `None` means no assignment exists; with at most two banned vertices that
/// happens only for a length-one path whose both endpoints are banned.
pub(crate) fn assign_pivots(paths: &[Path], banned: &BTreeSet<Label>) -> Option<Vec<Label>> {
    let mut picks: Vec<Option<Label>> = vec![None; paths.len()];
    for (i, p) in paths.iter().enumerate() {
        picks[i] = p
            .interior()
            .iter()
            .filter(|v| !banned.contains(v))
            .min()
            .copied();
    }
    let mut endpoint_used: BTreeSet<Label> = BTreeSet::new();
    for (i, p) in paths.iter().enumerate() {
        if picks[i].is_some() {
            continue;
        }
        let mut ends = [p.first(), p.last()];
        ends.sort();
        let choice = ends
            .into_iter()
            .find(|v| !banned.contains(v) && !endpoint_used.contains(v))?;
        endpoint_used.insert(choice);
        picks[i] = Some(choice);
    }
    Some(picks.into_iter().map(|p| p.unwrap()).collect())
}
