//! The `fcnet` command-line driver.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand};

use crate::commoner::{check_commoner, CheckOptions, CommonerError, Verdict};
use crate::frontend::format::{parse_bytes, print};
use crate::frontend::report::{set_text, to_json, to_text};
use crate::net::{Marking, Net};
use crate::netgen::{generate, GenParams};
use crate::reachability::{self, explore, marking_label, OracleVerdict, DEFAULT_MAX_STATES};
use crate::structural::{self, DEFAULT_BRUTE_FORCE_CAP, DEFAULT_WORK_LIMIT};

pub const EXIT_LIVE: i32 = 0;
pub const EXIT_NOT_LIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "fcnet",
    version,
    about = "Liveness analysis for free-choice Petri nets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide liveness via minimal siphons and their maximal traps.
    Check {
        file: PathBuf,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
        /// Construct a firing sequence into a marking where the violating
        /// siphon's output transitions are dead.
        #[arg(long)]
        witness: bool,
        /// State cap for witness construction.
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        max_states: usize,
        /// Branch-node budget for siphon enumeration.
        #[arg(long, default_value_t = DEFAULT_WORK_LIMIT)]
        work_limit: u64,
    },
    /// Decide liveness by exploring the reachability graph.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        max_states: usize,
    },
    /// List siphons or traps.
    #[command(group(ArgGroup::new("kind").args(["siphons", "traps", "minimal"])))]
    Structure {
        file: PathBuf,
        /// All siphons, by exhaustive enumeration.
        #[arg(long)]
        siphons: bool,
        /// All traps, by exhaustive enumeration.
        #[arg(long)]
        traps: bool,
        /// Minimal nonempty siphons (the default).
        #[arg(long)]
        minimal: bool,
    },
    /// Generate a random free-choice net.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        places: usize,
        #[arg(long)]
        clusters: usize,
        #[arg(long)]
        transitions: usize,
        #[arg(long)]
        max_tokens: u32,
        #[arg(long)]
        density: f64,
    },
    /// Print the reachability graph.
    Graph {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        max_states: usize,
        /// Graphviz output.
        #[arg(long)]
        dot: bool,
    },
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_ERROR
            } else {
                EXIT_LIVE
            };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "fcnet: {e}");
            EXIT_ERROR
        }
    }
}

fn load(path: &Path, err: &mut dyn Write) -> std::io::Result<Option<(Net, Marking)>> {
    let bytes = match std::fs::read(path) {
        Ok(b) => b,
        Err(e) => {
            writeln!(err, "fcnet: cannot read {}: {e}", path.display())?;
            return Ok(None);
        }
    };
    match parse_bytes(&bytes) {
        Ok(net) => Ok(Some(net)),
        Err(e) => {
            writeln!(err, "{}:{e}", path.display())?;
            Ok(None)
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<i32> {
    match command {
        Command::Check {
            file,
            json,
            witness,
            max_states,
            work_limit,
        } => {
            let Some((net, m0)) = load(&file, err)? else {
                return Ok(EXIT_ERROR);
            };
            let options = CheckOptions {
                work_limit,
                witness_max_states: witness.then_some(max_states.max(1)),
                oracle_max_states: None,
            };
            match check_commoner(&net, &m0, &options) {
                Ok(report) => {
                    if json {
                        out.write_all(to_json(&net, &report).as_bytes())?;
                    } else {
                        out.write_all(to_text(&net, &report).as_bytes())?;
                    }
                    Ok(match report.verdict {
                        Verdict::Live => EXIT_LIVE,
                        Verdict::NotLive => EXIT_NOT_LIVE,
                    })
                }
                Err(CommonerError::Inadmissible(validation)) => {
                    writeln!(err, "fcnet: {}: net is not admissible", file.display())?;
                    for line in validation.describe(&net) {
                        writeln!(err, "  {line}")?;
                    }
                    Ok(EXIT_ERROR)
                }
                Err(CommonerError::Structural(e)) => {
                    writeln!(err, "fcnet: {e}")?;
                    Ok(EXIT_RESOURCE)
                }
                Err(e) => {
                    writeln!(err, "fcnet: {e}")?;
                    Ok(EXIT_ERROR)
                }
            }
        }
        Command::Oracle { file, max_states } => {
            let Some((net, m0)) = load(&file, err)? else {
                return Ok(EXIT_ERROR);
            };
            let verdict = reachability::liveness_oracle(&net, &m0, max_states.max(1));
            writeln!(out, "oracle verdict: {verdict:?}")?;
            Ok(match verdict {
                OracleVerdict::Live => EXIT_LIVE,
                OracleVerdict::NotLive => EXIT_NOT_LIVE,
                OracleVerdict::Inconclusive => EXIT_RESOURCE,
            })
        }
        Command::Structure {
            file,
            siphons,
            traps,
            minimal: _,
        } => {
            let Some((net, _)) = load(&file, err)? else {
                return Ok(EXIT_ERROR);
            };
            let sets = if siphons {
                structural::brute_force_siphons(&net, DEFAULT_BRUTE_FORCE_CAP)
            } else if traps {
                structural::brute_force_traps(&net, DEFAULT_BRUTE_FORCE_CAP)
            } else {
                structural::minimal_siphons(&net, DEFAULT_WORK_LIMIT)
            };
            match sets {
                Ok(sets) => {
                    for s in sets {
                        writeln!(out, "{}", set_text(&net.place_names(&s)))?;
                    }
                    Ok(EXIT_LIVE)
                }
                Err(e) => {
                    writeln!(err, "fcnet: {e}")?;
                    Ok(EXIT_RESOURCE)
                }
            }
        }
        Command::Gen {
            seed,
            places,
            clusters,
            transitions,
            max_tokens,
            density,
        } => {
            let params = GenParams {
                seed,
                n_places: places,
                n_clusters: clusters,
                n_transitions: transitions,
                max_tokens,
                density,
            };
            match generate(&params) {
                Ok((net, m0)) => {
                    writeln!(
                        out,
                        "# fcnet gen --seed {seed} --places {places} --clusters {clusters} \
                         --transitions {transitions} --max-tokens {max_tokens} --density {density}"
                    )?;
                    out.write_all(print(&net, &m0).as_bytes())?;
                    Ok(EXIT_LIVE)
                }
                Err(e) => {
                    writeln!(err, "fcnet: {e}")?;
                    Ok(EXIT_ERROR)
                }
            }
        }
        Command::Graph {
            file,
            max_states,
            dot,
        } => {
            let Some((net, m0)) = load(&file, err)? else {
                return Ok(EXIT_ERROR);
            };
            let g = match explore(&net, &m0, max_states.max(1)) {
                Ok(g) => g,
                Err(e) => {
                    writeln!(err, "fcnet: {e}")?;
                    return Ok(EXIT_ERROR);
                }
            };
            if dot {
                out.write_all(g.to_dot(&net).as_bytes())?;
            } else {
                writeln!(
                    out,
                    "# {} states, {} edges, complete: {}",
                    g.n_nodes(),
                    g.n_edges(),
                    g.is_complete()
                )?;
                for (i, m) in g.markings().iter().enumerate() {
                    writeln!(out, "state {i} {}", marking_label(&net, m))?;
                }
                for e in g.edges() {
                    writeln!(
                        out,
                        "edge {} {} {}",
                        e.source,
                        net.transition_name(e.transition),
                        e.target
                    )?;
                }
            }
            if !g.is_complete() {
                writeln!(
                    err,
                    "fcnet: state cap of {max_states} reached; graph is partial"
                )?;
                return Ok(EXIT_RESOURCE);
            }
            Ok(EXIT_LIVE)
        }
    }
}
