//! Oracle suites behind `dualcube verify`. Each suite produces an ordered
//! list of named checks; sampled suites fan trials out over a worker pool
//! and reassemble results in trial order.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dualcube::compcut::{component_cut, cut_size_formula, structure_check, verify_cut};
use dualcube::graph::{is_bipartite, Graph};
use dualcube::oracle::{exhaustive_cut_search, verify_tree_set, vertex_connectivity};
use dualcube::sampler;
use dualcube::steiner::{strees3, strees4_traced};
use dualcube::{DualCube, Label};

use crate::run::{usage, CliError};

pub struct SuiteReport {
    lines: Vec<(String, bool, String)>,
}

impl SuiteReport {
    fn new() -> Self {
        SuiteReport { lines: Vec::new() }
    }

    fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.lines.push((name.into(), pass, detail.into()));
    }

    pub fn merge(&mut self, other: SuiteReport) {
        self.lines.extend(other.lines);
    }

    pub fn all_passed(&self) -> bool {
        self.lines.iter().all(|(_, p, _)| *p)
    }

    pub fn failed_count(&self) -> usize {
        self.lines.iter().filter(|(_, p, _)| !*p).count()
    }

    pub fn total(&self) -> usize {
        self.lines.len()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (name, pass, detail) in &self.lines {
            let status = if *pass { "PASS" } else { "FAIL" };
            if detail.is_empty() {
                out.push_str(&format!("{status} {name}\n"));
            } else {
                out.push_str(&format!("{status} {name} {detail}\n"));
            }
        }
        out.push_str(&format!(
            "overall={} checks={} failed={}\n",
            if self.all_passed() { "pass" } else { "fail" },
            self.total(),
            self.failed_count()
        ));
        out
    }
}

/// Run `count` independent trials over `jobs` threads; results come back in
/// trial order regardless of scheduling.
fn parallel_trials<T, F>(count: usize, jobs: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    if jobs <= 1 || count <= 1 {
        return (0..count).map(f).collect();
    }
    let mut slots: Vec<Option<T>> = (0..count).map(|_| None).collect();
    let chunk = count.div_ceil(jobs);
    std::thread::scope(|scope| {
        let f = &f;
        let mut handles = Vec::new();
        for start in (0..count).step_by(chunk) {
            let end = (start + chunk).min(count);
            handles.push(scope.spawn(move || (start..end).map(|i| (i, f(i))).collect::<Vec<_>>()));
        }
        for h in handles {
            for (i, v) in h.join().expect("worker panicked") {
                slots[i] = Some(v);
            }
        }
    });
    slots.into_iter().map(|s| s.unwrap()).collect()
}

pub fn topology_suite(n: u8) -> Result<SuiteReport, CliError> {
    let d = DualCube::new(n).map_err(|e| usage(e.to_string()))?;
    let mut report = SuiteReport::new();
    report.check(
        format!("topology/n{n}/vertex-count"),
        d.vertex_count() == 1 << (2 * n - 1),
        format!("{}", d.vertex_count()),
    );
    let regular = d.vertices().iter().all(|&v| d.degree(v) == n as usize);
    report.check(
        format!("topology/n{n}/regular"),
        regular,
        format!("degree={n}"),
    );
    report.check(format!("topology/n{n}/bipartite"), is_bipartite(&d), "");
    let edge_count = d.edges().len();
    report.check(
        format!("topology/n{n}/edge-count"),
        edge_count == n as usize * d.vertex_count() / 2,
        format!("{edge_count}"),
    );
    let involution = d.vertices().iter().all(|&v| {
        d.outside_neighbor(d.outside_neighbor(v)) == v && d.has_edge(v, d.outside_neighbor(v))
    });
    report.check(format!("topology/n{n}/outside-involution"), involution, "");
    if n <= 4 {
        let mut unique = true;
        for c0 in d.clusters(0) {
            for c1 in d.clusters(1) {
                let mut count = 0;
                for u in c0.vertices() {
                    for w in d.neighbors(u) {
                        if c1.contains(w) {
                            count += 1;
                        }
                    }
                }
                if count != 1 {
                    unique = false;
                }
            }
        }
        report.check(
            format!("topology/n{n}/cross-edges-unique"),
            unique,
            "exhaustive",
        );
    } else {
        // spot check via the closed form on every pair
        let ok = d.clusters(0).iter().all(|c0| {
            d.clusters(1).iter().all(|c1| {
                let (u, w) = d.cross_edge(c0, c1).unwrap();
                c0.contains(u) && c1.contains(w) && d.has_edge(u, w)
            })
        });
        report.check(format!("topology/n{n}/cross-edges-closed-form"), ok, "");
    }
    // cluster graphs are hypercubes with a faithful embedding
    let c = d.clusters(0)[0];
    let q = d.cluster_graph(&c);
    let iso = q.vertices().iter().all(|&qv| {
        let host = q.to_host(qv).unwrap();
        q.from_host(host).unwrap() == qv
            && q.neighbors(qv)
                .iter()
                .all(|&qw| d.has_edge(host, q.to_host(qw).unwrap()))
    });
    report.check(format!("topology/n{n}/cluster-embedding"), iso, "");
    if n <= 4 {
        let kappa = vertex_connectivity(&d);
        report.check(
            format!("topology/n{n}/connectivity"),
            kappa == n as usize,
            format!("kappa={kappa}"),
        );
    }
    Ok(report)
}

pub fn trees_suite(n: u8, budget: usize, seed: u64, jobs: usize) -> Result<SuiteReport, CliError> {
    if n < 4 {
        return Err(usage("the trees suite requires n >= 4"));
    }
    let d = DualCube::new(n).map_err(|e| usage(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sets: Vec<Vec<Label>> = Vec::with_capacity(budget);
    let per_profile = budget.div_ceil(sampler::ALL_PROFILES.len() + 5).max(1);
    let batch = sampler::stratified_batch(&d, per_profile, &mut rng);
    sets.extend(batch.into_iter().take(budget));
    while sets.len() < budget {
        sets.push(sampler::sample_any(&d, &mut rng));
    }

    let want = n as usize - 1;
    let outcomes = parallel_trials(sets.len(), jobs, |i| {
        let terminals = &sets[i];
        match strees4_traced(&d, terminals) {
            Ok((ts, trace)) => {
                let report = verify_tree_set(&d, &ts, Some(want));
                (report.overall(), trace.as_str().to_string())
            }
            Err(e) => (false, format!("error: {e}")),
        }
    });
    let mut report = SuiteReport::new();
    let mut census: BTreeMap<String, usize> = BTreeMap::new();
    let mut failures = 0usize;
    for (ok, trace) in &outcomes {
        if !ok {
            failures += 1;
        }
        *census.entry(trace.clone()).or_default() += 1;
    }
    report.check(
        format!("trees/n{n}/four-terminal-sets"),
        failures == 0,
        format!("{} sets, {} failed", outcomes.len(), failures),
    );
    for (trace, count) in &census {
        report.check(format!("trees/n{n}/case/{trace}"), true, format!("{count}"));
    }

    let three_budget = (budget / 4).max(8);
    let mut rng3 = ChaCha8Rng::seed_from_u64(seed ^ 0x33);
    let sets3: Vec<Vec<Label>> = (0..three_budget)
        .map(|_| sampler::sample_three(&d, &mut rng3))
        .collect();
    let outcomes3 = parallel_trials(sets3.len(), jobs, |i| match strees3(&d, &sets3[i]) {
        Ok(ts) => verify_tree_set(&d, &ts, Some(want)).overall(),
        Err(_) => false,
    });
    let failed3 = outcomes3.iter().filter(|ok| !**ok).count();
    report.check(
        format!("trees/n{n}/three-terminal-sets"),
        failed3 == 0,
        format!("{} sets, {} failed", outcomes3.len(), failed3),
    );
    Ok(report)
}

pub fn cuts_suite(n: u8, budget: usize, seed: u64) -> Result<SuiteReport, CliError> {
    let d = DualCube::new(n).map_err(|e| usage(e.to_string()))?;
    let mut report = SuiteReport::new();
    for r in 1..n {
        let formula = cut_size_formula(n, r).unwrap();
        match component_cut(&d, r) {
            Ok(cut) => {
                report.check(
                    format!("cuts/n{n}/r{r}/size"),
                    cut.removed.len() == formula,
                    format!("{} (formula {formula})", cut.removed.len()),
                );
                let census = verify_cut(&d, &cut).map_err(|e| usage(e.to_string()))?;
                report.check(
                    format!("cuts/n{n}/r{r}/census"),
                    census.claims_hold,
                    format!("{:?}", census.components),
                );
            }
            Err(e) => report.check(format!("cuts/n{n}/r{r}/size"), false, e.to_string()),
        }
    }
    if n <= 3 {
        // exhaustive lower bounds are affordable here
        for r in 1..n {
            let below = cut_size_formula(n, r).unwrap() - 1;
            match exhaustive_cut_search(&d, below, r as usize) {
                Ok(witness) => report.check(
                    format!("cuts/n{n}/r{r}/lower-bound"),
                    witness.is_none(),
                    format!("no set of {below} vertices yields {} components", r + 1),
                ),
                Err(e) => report.check(format!("cuts/n{n}/r{r}/lower-bound"), false, e.to_string()),
            }
        }
    } else {
        // sub-threshold deletions must leave one big component plus crumbs
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc07);
        let trials = (budget / 2).max(20);
        for k in 1..n {
            let size = cut_size_formula(n, k).unwrap() - 1;
            let mut ok = true;
            for _ in 0..trials {
                let removed = sampler::sample_vertex_set(&d, size, &mut rng);
                let r = structure_check(&d, &removed, k).map_err(|e| usage(e.to_string()))?;
                if !r.small_bounded {
                    ok = false;
                }
            }
            report.check(
                format!("cuts/n{n}/k{k}/structure"),
                ok,
                format!("{trials} sub-threshold deletions"),
            );
        }
    }
    Ok(report)
}
