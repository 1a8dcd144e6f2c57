//! Argument surface and command execution. Every command is a pure
//! function of its arguments: identical configurations produce
//! byte-identical output.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use dualcube::compcut::{component_cut, verify_cut};
use dualcube::export;
use dualcube::oracle::verify_tree_set;
use dualcube::steiner::{strees3, strees4_traced};
use dualcube::{DualCube, Label};

use crate::verify;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Verification(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Parser, Debug)]
#[command(
    name = "dualcube",
    version,
    about = "dual-cube networks: generation, Steiner trees, component cuts"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit the graph D_n.
    Gen {
        #[arg(long)]
        n: u8,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, short = 'o')]
        output: Option<PathBuf>,
    },
    /// Build n-1 internally disjoint trees over 3 or 4 terminals.
    Trees {
        #[arg(long)]
        n: u8,
        /// Comma-separated (2n-1)-bit labels.
        #[arg(long, value_delimiter = ',')]
        terminals: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, short = 'o')]
        output: Option<PathBuf>,
        /// Skip the verifier (benchmarking only).
        #[arg(long)]
        unchecked: bool,
    },
    /// Build the minimum (r+1)-component cut and its census.
    Cut {
        #[arg(long)]
        n: u8,
        #[arg(long)]
        r: u8,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, short = 'o')]
        output: Option<PathBuf>,
    },
    /// Run oracle suites.
    Verify {
        #[arg(long)]
        n: u8,
        #[arg(long)]
        suite: String,
        /// Trial count for sampled suites.
        #[arg(long, default_value_t = 200)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads (default: DUALCUBE_JOBS or 1).
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn emit(output: Option<&PathBuf>, body: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, body)?,
        None => print!("{body}"),
    }
    Ok(())
}

fn dual_cube(n: u8) -> Result<DualCube, CliError> {
    DualCube::new(n).map_err(|e| usage(e.to_string()))
}

fn parse_terminals(d: &DualCube, raw: &[String]) -> Result<Vec<Label>, CliError> {
    let mut out = Vec::with_capacity(raw.len());
    for s in raw {
        let label: Label = s
            .parse()
            .map_err(|e| usage(format!("terminal {s:?}: {e}")))?;
        d.check_label(label).map_err(|e| usage(e.to_string()))?;
        out.push(label);
    }
    Ok(out)
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen { n, format, output } => {
            let d = dual_cube(n)?;
            let body = match format {
                Format::Json => export::dual_cube_json(&d) + "\n",
                Format::Dot => export::dual_cube_dot(&d),
                Format::Text => format!(
                    "D_{} with {} vertices and {} edges\n",
                    n,
                    d.vertex_count(),
                    dualcube::Graph::edges(&d).len()
                ),
            };
            emit(output.as_ref(), &body)
        }
        Command::Trees {
            n,
            terminals,
            format,
            output,
            unchecked,
        } => {
            let d = dual_cube(n)?;
            let terminals = parse_terminals(&d, &terminals)?;
            let (set, trace) = match terminals.len() {
                4 => strees4_traced(&d, &terminals).map_err(|e| usage(e.to_string()))?,
                3 => {
                    let set = strees3(&d, &terminals).map_err(|e| usage(e.to_string()))?;
                    let trace = dualcube::steiner::CaseTrace::new("three-terminal reduction");
                    (set, trace)
                }
                k => return Err(usage(format!("expected 3 or 4 terminals, got {k}"))),
            };
            if !unchecked {
                let report = verify_tree_set(&d, &set, Some(n as usize - 1));
                if !report.overall() {
                    let fails: Vec<String> = report
                        .failures()
                        .map(|c| format!("{} ({})", c.name, c.witness.clone().unwrap_or_default()))
                        .collect();
                    return Err(CliError::Verification(fails.join("; ")));
                }
            }
            let body = match format {
                Format::Json => export::tree_set_json(&set) + "\n",
                Format::Dot => export::tree_set_dot(&set),
                Format::Text => {
                    let mut s = String::new();
                    writeln!(s, "case: {trace}").unwrap();
                    for (i, tree) in set.trees().iter().enumerate() {
                        writeln!(s, "tree {}: {} edges", i + 1, tree.len()).unwrap();
                        for (u, v) in tree {
                            writeln!(s, "  {u} -- {v}").unwrap();
                        }
                    }
                    s
                }
            };
            emit(output.as_ref(), &body)
        }
        Command::Cut {
            n,
            r,
            format,
            output,
        } => {
            let d = dual_cube(n)?;
            let cut = component_cut(&d, r).map_err(|e| usage(e.to_string()))?;
            let report = verify_cut(&d, &cut).map_err(|e| usage(e.to_string()))?;
            if !report.claims_hold {
                return Err(CliError::Verification(format!(
                    "cut census {:?} violates its claims",
                    report.components
                )));
            }
            let body = match format {
                Format::Json => export::cut_set_json(&cut) + "\n",
                Format::Dot => {
                    return Err(usage("cut supports json or text output"));
                }
                Format::Text => {
                    let mut s = String::new();
                    writeln!(s, "cut of size {} for r = {}", cut.removed.len(), cut.r).unwrap();
                    for v in &cut.removed {
                        writeln!(s, "  {v}").unwrap();
                    }
                    writeln!(s, "census: {:?}", cut.census).unwrap();
                    s
                }
            };
            emit(output.as_ref(), &body)
        }
        Command::Verify {
            n,
            suite,
            budget,
            seed,
            jobs,
        } => {
            let jobs = jobs
                .or_else(|| {
                    std::env::var("DUALCUBE_JOBS")
                        .ok()
                        .and_then(|v| v.parse().ok())
                })
                .unwrap_or(1)
                .max(1);
            let report = match suite.as_str() {
                "topology" => verify::topology_suite(n)?,
                "trees" => verify::trees_suite(n, budget, seed, jobs)?,
                "cuts" => verify::cuts_suite(n, budget, seed)?,
                "all" => {
                    let mut r = verify::topology_suite(n)?;
                    r.merge(verify::trees_suite(n, budget, seed, jobs)?);
                    r.merge(verify::cuts_suite(n, budget, seed)?);
                    r
                }
                other => return Err(usage(format!("unknown suite {other:?}"))),
            };
            print!("{}", report.render());
            if report.all_passed() {
                Ok(())
            } else {
                Err(CliError::Verification(format!(
                    "{} of {} checks failed",
                    report.failed_count(),
                    report.total()
                )))
            }
        }
    }
}
