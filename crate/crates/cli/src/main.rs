//! `perpbis`: verification suites, point-set statistics and constructions
//! for perpendicular bisectors over prime fields.

mod report;
mod summary;
mod verify;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use perpbis_core::pointsets::{construct, parse_pointset, serialize_pointset, Construction};
use perpbis_core::spectral::{bisector_graph, eigenvalues_symmetric, incidence_graph, DEFAULT_TOLERANCE};
use perpbis_core::{PointSet, PrimeField};

use report::{fmt_float, Report};
use verify::Suite;

#[derive(Debug, Parser)]
#[command(
    name = "perpbis",
    version,
    about = "Perpendicular bisectors and rigid motions over F_q"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run verification suites and report pass/fail per check.
    Verify {
        /// Comma-separated odd primes.
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Also write the report as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Compute statistics of a point set from a file or a construction.
    Stats {
        /// Point-set file.
        #[arg(long, conflicts_with = "construct", required_unless_present = "construct")]
        input: Option<PathBuf>,
        /// Build the point set instead of reading it.
        #[arg(long, value_enum)]
        construct: Option<Kind>,
        #[command(flatten)]
        params: ConstructParams,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
        /// Output path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a constructed point set in the point-set file format.
    Construct {
        #[arg(long, value_enum)]
        kind: Kind,
        #[command(flatten)]
        params: ConstructParams,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the spectrum of a graph as CSV (index,eigenvalue).
    Spectrum {
        #[arg(long, value_enum)]
        graph: GraphKind,
        #[arg(long)]
        q: u64,
        /// Distance class for the bisector graph.
        #[arg(long, default_value_t = 1)]
        d: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Kind {
    FullPlane,
    Random,
    ParallelLines,
    IsotropicLines,
    Circle,
    SingleLine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphKind {
    Bisector,
    Incidence,
}

#[derive(Debug, Args)]
struct ConstructParams {
    /// Modulus for constructions.
    #[arg(long)]
    q: Option<u64>,
    /// Number of points (random).
    #[arg(long)]
    n: Option<usize>,
    /// Seed (random).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of lines (parallel_lines, isotropic_lines).
    #[arg(long)]
    k: Option<usize>,
    /// Circle center as `x,y`.
    #[arg(long, value_delimiter = ',')]
    center: Option<Vec<u32>>,
    /// Circle radius.
    #[arg(long)]
    radius: Option<u32>,
}

/// A usage or input error; exits with status 2.
#[derive(Debug)]
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        Self(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode, UsageError> {
    match command {
        Command::Verify { q, suite, json } => cmd_verify(&q, suite, json),
        Command::Stats {
            input,
            construct,
            params,
            emit,
            out,
        } => {
            let set = match (input, construct) {
                (Some(path), _) => {
                    let text =
                        fs::read_to_string(&path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
                    parse_pointset(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?
                }
                (None, Some(kind)) => build(kind, &params)?,
                (None, None) => return Err(usage("either --input or --construct is required")),
            };
            let summary = summary::summarize(&set);
            let text = match emit {
                Emit::Json => summary.to_json(),
                Emit::Csv => summary.to_csv(),
            };
            write_output(out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Construct { kind, params, out } => {
            let set = build(kind, &params)?;
            write_output(out, &serialize_pointset(&set))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Spectrum { graph, q, d, out } => {
            let field = PrimeField::new(q)?;
            let adjacency = match graph {
                GraphKind::Bisector => {
                    if field.modulus() > 7 {
                        return Err(usage("bisector spectrum is limited to q <= 7"));
                    }
                    bisector_graph(&field, field.elem(d as i64))?.graph().adjacency()
                }
                GraphKind::Incidence => incidence_graph(&field)?.adjacency(),
            };
            let spectrum = eigenvalues_symmetric(&adjacency.to_symmetric()?, DEFAULT_TOLERANCE)?;
            let mut csv = String::from("index,eigenvalue\n");
            for (i, l) in spectrum.iter().enumerate() {
                csv.push_str(&format!("{i},{}\n", fmt_float(*l)));
            }
            write_output(out, &csv)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn cmd_verify(moduli: &[u64], suite: Suite, json: Option<PathBuf>) -> Result<ExitCode, UsageError> {
    let mut fields = Vec::new();
    for &q in moduli {
        let f = PrimeField::new(q).map_err(|e| usage(format!("--q {q}: {e}")))?;
        if f.modulus() > suite.max_q() {
            return Err(usage(format!(
                "--q {q} exceeds the {} suite limit q <= {}",
                suite.name(),
                suite.max_q()
            )));
        }
        fields.push(f);
    }
    let checks = verify::run(suite, &fields);
    let failures = checks.iter().filter(|c| c.failed()).count();
    let mut stdout = std::io::stdout().lock();
    for c in &checks {
        writeln!(stdout, "{c}").map_err(UsageError::from)?;
    }
    writeln!(stdout, "{} checks, {} failed", checks.len(), failures).map_err(UsageError::from)?;
    if let Some(path) = json {
        let report = Report {
            q: fields.iter().map(PrimeField::modulus).collect(),
            suite: suite.name().into(),
            checks,
        };
        let text = serde_json::to_string_pretty(&report)? + "\n";
        fs::write(&path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn build(kind: Kind, p: &ConstructParams) -> Result<PointSet, UsageError> {
    let q = p.q.ok_or_else(|| usage("--q is required for constructions"))?;
    let field = PrimeField::new(q).map_err(|e| usage(format!("--q {q}: {e}")))?;
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| usage(format!("--{flag} is required")));
    let construction = match kind {
        Kind::FullPlane => Construction::FullPlane,
        Kind::Random => Construction::Random {
            n: need(p.n, "n")?,
            seed: p.seed,
        },
        Kind::ParallelLines => Construction::ParallelLines { k: need(p.k, "k")? },
        Kind::IsotropicLines => Construction::IsotropicLines { k: need(p.k, "k")? },
        Kind::Circle => {
            let center = match p.center.as_deref().unwrap_or(&[0, 0]) {
                &[x, y] => (x, y),
                _ => return Err(usage("--center takes two coordinates `x,y`")),
            };
            Construction::Circle {
                center,
                radius: p.radius.ok_or_else(|| usage("--radius is required"))?,
            }
        }
        Kind::SingleLine => Construction::SingleLine,
    };
    Ok(construct(&field, construction)?)
}

fn write_output(path: Option<PathBuf>, text: &str) -> Result<(), UsageError> {
    match path {
        Some(path) => fs::write(&path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            std::io::stdout().lock().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}
