use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lequiver::construct::{grid_to_le_script, quiver_from_le, quiver_via_script};
use lequiver::crosscheck::compare;
use lequiver::gseed::{verify_sequence, SequenceMode};
use lequiver::le::validate;
use lequiver::plabic::quiver_via_plabic;
use lequiver::search::{find_sequence, SearchLimits};
use lequiver::{enumerate, random_diagram, LeDiagram, LeError, Quiver, VertexId};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// Quivers of Le-diagrams, their mutations and green-to-red sequences.
///
/// Diagrams are written one row per '/'-separated group, e.g. "01010/1101/00/01";
/// "-" is the empty diagram. Exit codes: 0 success, 1 verification failed or
/// nothing found, 2 invalid input.
#[derive(Parser)]
#[command(name = "lequiver", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Le-property of a filling.
    Validate { diagram: String },
    /// Build the quiver of a diagram.
    Build {
        diagram: String,
        #[arg(long, value_enum, default_value_t = Via::Construction)]
        via: Via,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// The rectangular grid quiver.
    Grid {
        rows: usize,
        cols: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Mutate a quiver (JSON file, "-" for stdin) along a vertex list.
    Mutate {
        quiver: String,
        vertices: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check whether a sequence is green-to-red (or maximal green).
    CheckSeq {
        quiver: String,
        #[arg(long)]
        seq: String,
        #[arg(long)]
        maximal_green: bool,
        /// Print the full verdict as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Search for a shortest green-to-red (or maximal green) sequence.
    SearchGtr {
        quiver: String,
        #[arg(long, default_value_t = 12)]
        max_depth: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_nodes: u64,
        #[arg(long)]
        maximal_green: bool,
    },
    /// The mutation-and-deletion script from the grid to a diagram.
    Script {
        diagram: String,
        /// Include occupancy snapshots after each 0-box.
        #[arg(long)]
        trace: bool,
    },
    /// List every Le-diagram fitting in a box.
    Enumerate {
        rows: usize,
        cols: usize,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Compare the three routes on every diagram in a box, or on random samples.
    Crosscheck {
        rows: usize,
        cols: usize,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Via {
    Construction,
    Plabic,
    Script,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

enum Failure {
    /// Input rejected; exit 2.
    Invalid(String),
    /// Ran fine but the answer is negative; exit 1. The payload has
    /// already been printed.
    Negative,
}

type Outcome = Result<(), Failure>;

/// `println!` that tolerates a closed stdout, e.g. when piped into `head`.
macro_rules! say {
    ($($arg:tt)*) => {{
        let _ = writeln!(io::stdout(), $($arg)*);
    }};
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Invalid(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_diagram(text: &str) -> Result<LeDiagram, LeError> {
    if text.contains('\n') {
        LeDiagram::parse(text)
    } else {
        LeDiagram::parse_compact(text.trim())
    }
}

fn compact(d: &LeDiagram) -> String {
    if d.shape().is_empty() {
        "-".to_string()
    } else {
        d.to_compact()
    }
}

fn read_quiver(path: &str) -> Result<Quiver, Failure> {
    let text = if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(invalid)?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| invalid(format!("{path}: {e}")))?
    };
    Quiver::parse_json(&text).map_err(|e| invalid(format!("{path}: {e}")))
}

/// Splits a vertex list. With ';' or whitespace present those are the only
/// separators; otherwise commas separate, and `v{i}` followed by a number
/// is read back as the cell vertex `v{i},{j}`.
fn parse_vertex_list(text: &str) -> Vec<VertexId> {
    let text = text.trim();
    if text.is_empty() {
        return Vec::new();
    }
    if text.contains(';') || text.contains(char::is_whitespace) {
        return text
            .split(|c: char| c == ';' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(VertexId::from)
            .collect();
    }
    let parts: Vec<&str> = text.split(',').collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < parts.len() {
        let p = parts[k];
        let is_row =
            p.len() > 1 && p.starts_with('v') && p[1..].bytes().all(|b| b.is_ascii_digit());
        if is_row
            && k + 1 < parts.len()
            && !parts[k + 1].is_empty()
            && parts[k + 1].bytes().all(|b| b.is_ascii_digit())
        {
            out.push(VertexId::from(format!("{p},{}", parts[k + 1]).as_str()));
            k += 2;
        } else {
            out.push(VertexId::from(p));
            k += 1;
        }
    }
    out
}

fn emit_quiver(q: &Quiver, format: Format) {
    match format {
        Format::Json => say!("{}", pretty(&q.to_json())),
        Format::Dot => {
            let _ = write!(io::stdout(), "{}", q.to_dot());
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Validate { diagram } => {
            let rows: Vec<&str> = if diagram.contains('\n') {
                diagram.lines().collect()
            } else {
                diagram.trim().split('/').collect()
            };
            // structural problems first; they make the filling meaningless
            if let Err(
                e @ (LeError::NotAPartition { .. }
                | LeError::EmptyRow { .. }
                | LeError::BadChar { .. }),
            ) = parse_diagram(&diagram)
            {
                return Err(invalid(e));
            }
            let filling: Vec<Vec<bool>> = if matches!(diagram.trim(), "" | "-") {
                Vec::new()
            } else {
                rows.iter()
                    .map(|r| r.chars().map(|c| c == '1').collect())
                    .collect()
            };
            let shape =
                lequiver::Shape::new(filling.iter().map(Vec::len).collect()).map_err(invalid)?;
            let report = validate(&shape, &filling);
            say!(
                "{}",
                pretty(&json!({
                    "valid": report.is_ok(),
                    "shape": shape.row_lengths(),
                    "violations": report.violations.iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
                }))
            );
            if report.is_ok() {
                Ok(())
            } else {
                Err(Failure::Negative)
            }
        }
        Command::Build {
            diagram,
            via,
            format,
        } => {
            let d = parse_diagram(&diagram).map_err(invalid)?;
            let q: Quiver = match via {
                Via::Construction => quiver_from_le(&d),
                Via::Plabic => quiver_via_plabic(&d).map_err(invalid)?,
                Via::Script => quiver_via_script(&d).map_err(invalid)?,
            };
            emit_quiver(&q, format);
            Ok(())
        }
        Command::Grid { rows, cols, format } => {
            emit_quiver(&Quiver::grid(rows, cols), format);
            Ok(())
        }
        Command::Mutate {
            quiver,
            vertices,
            format,
        } => {
            let mut q = read_quiver(&quiver)?;
            for v in parse_vertex_list(&vertices) {
                q = q.mutate(&v).map_err(invalid)?;
            }
            emit_quiver(&q, format);
            Ok(())
        }
        Command::CheckSeq {
            quiver,
            seq,
            maximal_green,
            json,
        } => {
            let q = read_quiver(&quiver)?;
            let mode = if maximal_green {
                SequenceMode::MaximalGreen
            } else {
                SequenceMode::GreenToRed
            };
            let verdict = verify_sequence(&q, &parse_vertex_list(&seq), mode).map_err(invalid)?;
            if json {
                say!("{}", pretty(&verdict.to_json()));
            } else if verdict.accepted {
                say!("accepted");
            } else {
                say!("rejected: {}", verdict.reason);
            }
            if verdict.accepted {
                Ok(())
            } else {
                Err(Failure::Negative)
            }
        }
        Command::SearchGtr {
            quiver,
            max_depth,
            max_nodes,
            maximal_green,
        } => {
            if max_nodes == 0 {
                return Err(invalid("--max-nodes must be positive"));
            }
            let q = read_quiver(&quiver)?;
            let mode = if maximal_green {
                SequenceMode::MaximalGreen
            } else {
                SequenceMode::GreenToRed
            };
            let res = find_sequence(
                &q,
                mode,
                SearchLimits {
                    max_depth,
                    max_nodes,
                },
            )
            .map_err(invalid)?;
            say!("{}", pretty(&res.to_json()));
            if res.sequence().is_some() {
                Ok(())
            } else {
                Err(Failure::Negative)
            }
        }
        Command::Script { diagram, trace } => {
            let d = parse_diagram(&diagram).map_err(invalid)?;
            say!("{}", pretty(&grid_to_le_script(&d).to_json(trace)));
            Ok(())
        }
        Command::Enumerate { rows, cols, limit } => {
            if rows * cols >= 64 {
                return Err(invalid("box too large to enumerate"));
            }
            let stdout = io::stdout();
            let mut out = stdout.lock();
            for d in enumerate(rows, cols, limit) {
                if writeln!(out, "{}", compact(&d)).is_err() {
                    break;
                }
            }
            Ok(())
        }
        Command::Crosscheck {
            rows,
            cols,
            samples,
            seed,
        } => {
            let diagrams: Vec<LeDiagram> = match samples {
                Some(n) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    (0..n)
                        .map(|_| random_diagram(rows, cols, &mut rng))
                        .collect()
                }
                None if rows * cols >= 64 => {
                    return Err(invalid("box too large to enumerate; use --samples"))
                }
                None => enumerate(rows, cols, None).collect(),
            };
            let mut mismatches = 0;
            for d in &diagrams {
                let c = compare(d);
                if !c.ok() {
                    mismatches += 1;
                    eprintln!("{}", c.to_json());
                }
            }
            say!("{} diagrams, {mismatches} mismatches", diagrams.len());
            if mismatches == 0 {
                Ok(())
            } else {
                Err(Failure::Negative)
            }
        }
    }
}
