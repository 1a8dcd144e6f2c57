//! Seeded generation of terminal sets, stratified by cluster profile.
//! Used by the verification suites and the test harness; all draws go
//! through a caller-supplied RNG so runs are reproducible.

use rand::Rng;

use crate::graph::Graph;

use crate::label::Label;
use crate::steiner::ProfileKind;
use crate::topology::{ClusterRef, DualCube};

fn random_cluster<R: Rng>(d: &DualCube, class_bit: u8, rng: &mut R) -> ClusterRef {
    let fixed = Label::new(
        rng.random_range(0..(1u32 << (d.order() - 1))),
        d.order() - 1,
    )
    .unwrap();
    ClusterRef::new(d.order(), class_bit, fixed)
}

fn random_distinct_clusters<R: Rng>(
    d: &DualCube,
    class_bit: u8,
    count: usize,
    avoid: &[ClusterRef],
    rng: &mut R,
) -> Vec<ClusterRef> {
    let mut out: Vec<ClusterRef> = Vec::new();
    while out.len() < count {
        let c = random_cluster(d, class_bit, rng);
        if !out.contains(&c) && !avoid.contains(&c) {
            out.push(c);
        }
    }
    out
}

fn random_members<R: Rng>(c: &ClusterRef, count: usize, rng: &mut R) -> Vec<Label> {
    let vertices = c.vertices();
    let mut out: Vec<Label> = Vec::new();
    while out.len() < count {
        let v = vertices[rng.random_range(0..vertices.len())];
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Draw one 4-terminal set matching the given profile.
pub fn sample_profile<R: Rng>(d: &DualCube, kind: ProfileKind, rng: &mut R) -> Vec<Label> {
    let class: u8 = rng.random_range(0..2);
    match kind {
        ProfileKind::OneCluster => {
            let c = random_cluster(d, class, rng);
            random_members(&c, 4, rng)
        }
        ProfileKind::ThreeOneSame => {
            let cs = random_distinct_clusters(d, class, 2, &[], rng);
            let mut s = random_members(&cs[0], 3, rng);
            s.extend(random_members(&cs[1], 1, rng));
            s
        }
        ProfileKind::ThreeOneCross => {
            let a = random_cluster(d, class, rng);
            let b = random_cluster(d, 1 - class, rng);
            let mut s = random_members(&a, 3, rng);
            s.extend(random_members(&b, 1, rng));
            s
        }
        ProfileKind::TwoTwoSame => {
            let cs = random_distinct_clusters(d, class, 2, &[], rng);
            let mut s = random_members(&cs[0], 2, rng);
            s.extend(random_members(&cs[1], 2, rng));
            s
        }
        ProfileKind::TwoTwoCross => {
            let a = random_cluster(d, class, rng);
            let b = random_cluster(d, 1 - class, rng);
            let mut s = random_members(&a, 2, rng);
            s.extend(random_members(&b, 2, rng));
            s
        }
        ProfileKind::TwoOneOne {
            singles_in_pair_class,
        } => {
            let pair = random_cluster(d, class, rng);
            let same =
                random_distinct_clusters(d, class, singles_in_pair_class as usize, &[pair], rng);
            let cross = random_distinct_clusters(
                d,
                1 - class,
                2 - singles_in_pair_class as usize,
                &[],
                rng,
            );
            let mut s = random_members(&pair, 2, rng);
            for c in same.iter().chain(cross.iter()) {
                s.extend(random_members(c, 1, rng));
            }
            s
        }
        ProfileKind::FourApart { minority } => {
            let majors = random_distinct_clusters(d, class, 4 - minority as usize, &[], rng);
            let minors = random_distinct_clusters(d, 1 - class, minority as usize, &[], rng);
            let mut s = Vec::new();
            for c in majors.iter().chain(minors.iter()) {
                s.extend(random_members(c, 1, rng));
            }
            s
        }
    }
}

/// The nine sampling profiles, covering every dispatch family.
pub const ALL_PROFILES: [ProfileKind; 9] = [
    ProfileKind::OneCluster,
    ProfileKind::ThreeOneSame,
    ProfileKind::ThreeOneCross,
    ProfileKind::TwoTwoSame,
    ProfileKind::TwoTwoCross,
    ProfileKind::TwoOneOne {
        singles_in_pair_class: 2,
    },
    ProfileKind::TwoOneOne {
        singles_in_pair_class: 1,
    },
    ProfileKind::TwoOneOne {
        singles_in_pair_class: 0,
    },
    ProfileKind::FourApart { minority: 0 },
];

/// A stratified batch: `per_profile` draws for each entry of
/// [`ALL_PROFILES`] plus the two remaining four-cluster splits and the
/// deliberate degeneracies below.
pub fn stratified_batch<R: Rng>(d: &DualCube, per_profile: usize, rng: &mut R) -> Vec<Vec<Label>> {
    let mut out = Vec::new();
    for kind in ALL_PROFILES {
        for _ in 0..per_profile {
            out.push(sample_profile(d, kind, rng));
        }
    }
    for minority in [1u8, 2] {
        for _ in 0..per_profile {
            out.push(sample_profile(d, ProfileKind::FourApart { minority }, rng));
        }
    }
    for _ in 0..per_profile {
        out.push(adjacent_three_one(d, rng));
        out.push(reflected_three_one(d, rng));
        out.push(adjacent_two_two(d, rng));
        out.push(edge_anchored_pair(d, rng));
    }
    out
}

/// 3+1 cross-class where the lone terminal is an outside neighbour of one
/// of the three.
pub fn adjacent_three_one<R: Rng>(d: &DualCube, rng: &mut R) -> Vec<Label> {
    let c = random_cluster(d, rng.random_range(0..2), rng);
    let mut s = random_members(&c, 3, rng);
    s.push(d.outside_neighbor(s[0]));
    s
}

/// 3+1 cross-class where the lone terminal is the outside neighbour of a
/// non-terminal vertex of the triple's cluster, so its own projection
/// points straight back there.
pub fn reflected_three_one<R: Rng>(d: &DualCube, rng: &mut R) -> Vec<Label> {
    let c = random_cluster(d, rng.random_range(0..2), rng);
    let picks = random_members(&c, 4, rng);
    vec![picks[0], picks[1], picks[2], d.outside_neighbor(picks[3])]
}

/// 2+2 cross-class joined by a cross edge between the two pairs.
pub fn adjacent_two_two<R: Rng>(d: &DualCube, rng: &mut R) -> Vec<Label> {
    let c = random_cluster(d, rng.random_range(0..2), rng);
    let pair = random_members(&c, 2, rng);
    let mate = d.outside_neighbor(pair[0]);
    let mut other = random_members(&d.cluster_of(mate), 1, rng);
    while other[0] == mate {
        other = random_members(&d.cluster_of(mate), 1, rng);
    }
    vec![pair[0], pair[1], mate, other[0]]
}

/// 2+1+1 where the pair is an in-cluster edge and each singleton lives in
/// the cluster one endpoint projects into. Exercises the fallback that
/// cannot route both endpoints of a length-one path outward.
pub fn edge_anchored_pair<R: Rng>(d: &DualCube, rng: &mut R) -> Vec<Label> {
    let c = random_cluster(d, rng.random_range(0..2), rng);
    let x = random_members(&c, 1, rng)[0];
    let in_cluster: Vec<Label> = d
        .neighbors(x)
        .into_iter()
        .filter(|v| c.contains(*v))
        .collect();
    let y = in_cluster[rng.random_range(0..in_cluster.len())];
    let xo = d.outside_neighbor(x);
    let yo = d.outside_neighbor(y);
    let mut z = random_members(&d.cluster_of(xo), 1, rng)[0];
    while z == xo {
        z = random_members(&d.cluster_of(xo), 1, rng)[0];
    }
    let mut w = random_members(&d.cluster_of(yo), 1, rng)[0];
    while w == yo {
        w = random_members(&d.cluster_of(yo), 1, rng)[0];
    }
    vec![x, y, z, w]
}

/// Draw a 3-terminal set spread over up to three random clusters.
pub fn sample_three<R: Rng>(d: &DualCube, rng: &mut R) -> Vec<Label> {
    let mut s: Vec<Label> = Vec::new();
    let all = d.vertices();
    while s.len() < 3 {
        let v = all[rng.random_range(0..all.len())];
        if !s.contains(&v) {
            s.push(v);
        }
    }
    s
}

/// Uniform random distinct 4-set.
pub fn sample_any<R: Rng>(d: &DualCube, rng: &mut R) -> Vec<Label> {
    let mut s: Vec<Label> = Vec::new();
    let all = d.vertices();
    while s.len() < 4 {
        let v = all[rng.random_range(0..all.len())];
        if !s.contains(&v) {
            s.push(v);
        }
    }
    s
}

/// Random vertex subset of the given size.
pub fn sample_vertex_set<R: Rng>(
    d: &DualCube,
    size: usize,
    rng: &mut R,
) -> std::collections::BTreeSet<Label> {
    let all = d.vertices();
    let mut out = std::collections::BTreeSet::new();
    while out.len() < size {
        out.insert(all[rng.random_range(0..all.len())]);
    }
    out
}
