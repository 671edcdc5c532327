//! `toral`: command-line front end for the torus automorphism toolkit.
//!
//! Exit codes: 0 success (or CONJUGATE), 1 parse or usage error,
//! 2 analysis error, 3 DISTINCT, 4 UNKNOWN.

mod report;
mod source;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use toral::conjugacy::{decide_conjugacy, ConjugacyStatus, DEFAULT_SEARCH_BOUND};
use toral::dynamics::{leaf_density_scan, leaf_samples, period_of, unstable_frame, RationalPoint};
use toral::io::matrix_to_json;
use toral::matrix::{block_diag, companion, nonstandard_j};
use toral::reciprocal::lift_cubic;
use toral::spectral::{bowen_entropy, DEFAULT_ENTROPY_TOLERANCE};
use toral::IntMatrix;

use report::{AnalysisReport, ConjugacyReport, EntropyReport, PeriodicReport};

const EXIT_PARSE: u8 = 1;
const EXIT_ANALYSIS: u8 = 2;
const EXIT_DISTINCT: u8 = 3;
const EXIT_UNKNOWN: u8 = 4;

#[derive(Parser)]
#[command(name = "toral", version, about = "Classify integer automorphisms of tori")]
struct Cli {
    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    /// Use a named fixture as the input matrix.
    #[arg(long, global = true, value_name = "NAME")]
    fixture: Option<String>,
    /// Entropy error tolerance.
    #[arg(long, global = true, default_value_t = DEFAULT_ENTROPY_TOLERANCE)]
    tolerance: f64,
    /// Seed for sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: forms, trichotomy, flags, entropy, foliation, decomposition.
    Analyze {
        /// Matrix file, `-` for stdin, or `fixture:NAME`.
        source: Option<String>,
    },
    /// Build a matrix and print it in the text format.
    Construct {
        #[arg(value_enum)]
        kind: ConstructKind,
        /// Integers for companion-from-cubic and nonstandard-J (put `--`
        /// before negative values), matrix sources for block-diag.
        #[arg(allow_hyphen_values = true)]
        args: Vec<String>,
    },
    /// Decide integral similarity of two matrices.
    Conjugacy {
        a: String,
        b: String,
        /// Coordinate max-norm for the witness search.
        #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
        bound: u32,
    },
    /// Sample the unstable leaf through the origin and measure box coverage.
    Simulate {
        source: Option<String>,
        #[arg(long, default_value_t = 2)]
        resolution: u32,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        /// Write sampled points to this CSV file.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
        /// Maximum number of rows written to the CSV file.
        #[arg(long, default_value_t = 10_000)]
        csv_limit: u64,
    },
    /// Topological entropy with a certified error bound.
    Entropy { source: Option<String> },
    /// Fixed-point counts of powers and the period of a rational point.
    PeriodicPoints {
        source: Option<String>,
        /// Largest power `k` for the fixed-point table.
        #[arg(long, default_value_t = 6)]
        max_k: u32,
        /// Rational point, entries like `1/2` separated by spaces or commas.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    CompanionFromCubic,
    BlockDiag,
    #[value(name = "nonstandard-J")]
    NonstandardJ,
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

fn parse_failure(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_PARSE, message: message.into() }
}

fn analysis_failure(e: toral::Error) -> Failure {
    Failure { code: EXIT_ANALYSIS, message: e.to_string() }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn emit_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn load(cli: &Cli, source: Option<&str>) -> Result<source::Loaded, Failure> {
    source::resolve(source, cli.fixture.as_deref()).map_err(parse_failure)
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Analyze { source } => {
            let input = load(cli, source.as_deref())?;
            let report = report::analyze(&input.label, &input.matrix, cli.tolerance);
            if cli.json {
                emit_json(&report);
            } else {
                print_analysis(&report);
            }
            Ok(if report.has_fatal_error() { EXIT_ANALYSIS } else { 0 })
        }
        Command::Construct { kind, args } => construct(cli, *kind, args),
        Command::Conjugacy { a, b, bound } => {
            let a = source::load(a).map_err(parse_failure)?;
            let b = source::load(b).map_err(parse_failure)?;
            let verdict = decide_conjugacy(&a.matrix, &b.matrix, *bound).map_err(analysis_failure)?;
            let out = ConjugacyReport::from(&verdict);
            if cli.json {
                emit_json(&out);
            } else {
                println!("status: {}", out.status);
                println!("scope: {}", out.scope);
                println!("search bound: {}", out.search_bound);
                if let Some(w) = &verdict.witness {
                    print!("witness:\n{}", w.to_text());
                }
                if let Some(s) = &out.separating_invariant {
                    println!("separating invariant: {s}");
                }
                println!("note: {}", out.note);
            }
            Ok(match verdict.status {
                ConjugacyStatus::Conjugate => 0,
                ConjugacyStatus::Distinct => EXIT_DISTINCT,
                ConjugacyStatus::Unknown => EXIT_UNKNOWN,
            })
        }
        Command::Simulate { source, resolution, samples, csv, csv_limit } => {
            let input = load(cli, source.as_deref())?;
            let a = &input.matrix;
            let scan = leaf_density_scan(a, *resolution, *samples, cli.seed).map_err(analysis_failure)?;
            if let Some(path) = csv {
                write_csv(a, path, (*csv_limit).min(*samples), cli.seed)?;
            }
            let out = report::SimulationReport::from(&scan);
            if cli.json {
                emit_json(&out);
            } else {
                println!(
                    "coverage: {:.6} ({} of {} boxes, resolution {}, {} samples, seed {})",
                    out.coverage, out.boxes_hit, out.total_boxes, out.resolution, out.samples, out.seed
                );
            }
            Ok(0)
        }
        Command::Entropy { source } => {
            let input = load(cli, source.as_deref())?;
            let value = bowen_entropy(&input.matrix, cli.tolerance).map_err(analysis_failure)?;
            let out = EntropyReport::new(&value, cli.tolerance);
            if cli.json {
                emit_json(&out);
            } else {
                println!("entropy: {} (error bound {})", out.value, out.error_bound);
                for t in &out.terms {
                    println!("  {}: {} via {}", t.factor, t.contribution, t.method);
                }
            }
            Ok(0)
        }
        Command::PeriodicPoints { source, max_k, point } => {
            let input = load(cli, source.as_deref())?;
            let a = &input.matrix;
            let fixed_points = report::fixed_point_table(a, *max_k).map_err(analysis_failure)?;
            let point = match point {
                None => None,
                Some(text) => {
                    let (labels, x) = parse_point(text, a.rows())?;
                    let period = period_of(a, &x).map_err(analysis_failure)?;
                    Some(report::PointPeriod { point: labels, period })
                }
            };
            let out = PeriodicReport { fixed_points, point };
            if cli.json {
                emit_json(&out);
            } else {
                for e in &out.fixed_points {
                    println!("fixed points of A^{}: {}", e.k, e.count);
                }
                if let Some(p) = &out.point {
                    println!("period of ({}): {}", p.point.join(", "), p.period);
                }
            }
            Ok(0)
        }
    }
}

fn parse_ints(args: &[String], expected: usize) -> Result<Vec<i64>, Failure> {
    if args.len() != expected {
        return Err(parse_failure(format!("expected {expected} integers, got {}", args.len())));
    }
    args.iter()
        .map(|s| s.parse::<i64>().map_err(|_| parse_failure(format!("not an integer: {s:?}"))))
        .collect()
}

#[derive(Serialize)]
struct Constructed {
    matrix: serde_json::Value,
    determinant: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    degenerate: Option<bool>,
}

fn construct(cli: &Cli, kind: ConstructKind, args: &[String]) -> Result<u8, Failure> {
    let (matrix, degenerate): (IntMatrix, Option<bool>) = match kind {
        ConstructKind::CompanionFromCubic => {
            let p = parse_ints(args, 3)?;
            let m = companion(&lift_cubic(p[0], p[1], p[2])).map_err(|e| parse_failure(e.to_string()))?;
            (m, None)
        }
        ConstructKind::NonstandardJ => {
            let p = parse_ints(args, 3)?;
            let form = nonstandard_j(p[0], p[1], p[2]);
            (form.matrix, Some(form.degenerate))
        }
        ConstructKind::BlockDiag => {
            if args.is_empty() {
                return Err(parse_failure("block-diag needs at least one matrix source"));
            }
            let blocks = args
                .iter()
                .map(|s| source::load(s).map(|l| l.matrix))
                .collect::<Result<Vec<_>, _>>()
                .map_err(parse_failure)?;
            (block_diag(&blocks), None)
        }
    };
    if cli.json {
        emit_json(&Constructed { matrix: matrix_to_json(&matrix), determinant: matrix.det().to_string(), degenerate });
    } else {
        print!("{}", matrix.to_text());
    }
    Ok(0)
}

/// Parses `n` rationals and brings them to a common denominator.
fn parse_point(text: &str, n: usize) -> Result<(Vec<String>, RationalPoint), Failure> {
    let entries = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<BigRational>().map_err(|_| parse_failure(format!("not a rational: {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if entries.len() != n {
        return Err(parse_failure(format!("point has {} entries, matrix dimension is {n}", entries.len())));
    }
    let denominator = entries.iter().fold(BigInt::one(), |d, q| d.lcm(q.denom()));
    let numerators = entries.iter().map(|q| q.numer() * (&denominator / q.denom())).collect();
    let labels = entries.iter().map(ToString::to_string).collect();
    let point = RationalPoint::new(numerators, denominator).map_err(|e| parse_failure(e.to_string()))?;
    Ok((labels, point))
}

fn write_csv(a: &IntMatrix, path: &PathBuf, rows: u64, seed: u64) -> Result<(), Failure> {
    let frame = unstable_frame(a).map_err(analysis_failure)?;
    let io_failure = |e: csv::Error| Failure { code: EXIT_ANALYSIS, message: format!("{}: {e}", path.display()) };
    let mut w = csv::Writer::from_path(path).map_err(io_failure)?;
    w.write_record((1..=a.rows()).map(|i| format!("x{i}"))).map_err(io_failure)?;
    for p in leaf_samples(&frame, rows, seed) {
        w.write_record(p.iter().map(|x| format!("{x:.12}"))).map_err(io_failure)?;
    }
    w.flush().map_err(|e| Failure { code: EXIT_ANALYSIS, message: e.to_string() })
}

fn print_analysis(r: &AnalysisReport) {
    println!("input: {} ({}x{})", r.input.source, r.input.dimension, r.input.dimension);
    println!("unimodular: {} (det {})", r.unimodular, r.determinant);
    let forms = &r.symplectic_forms;
    let nondeg = if forms.nondegenerate.is_some() { "found" } else { "none found" };
    println!("invariant skew forms: rank {}, nondegenerate {nondeg}", forms.rank);
    if let Some(t) = &r.trichotomy {
        println!("dims (stable, center, unstable): ({}, {}, {})", t.stable, t.center, t.unstable);
        for f in &t.factors {
            println!("  {}: inside {}, on {}, outside {}", f.display, f.inside, f.on, f.outside);
        }
    }
    let flag = |b: Option<bool>| b.map_or("n/a".to_string(), |b| b.to_string());
    println!("partially hyperbolic: {}", flag(r.partially_hyperbolic));
    println!("anosov: {}", flag(r.anosov));
    println!("ergodic: {}", r.ergodic.ergodic);
    if let Some(e) = &r.entropy {
        println!("entropy: {} (error bound {})", e.value, e.error_bound);
    }
    if let Some(f) = &r.foliation {
        println!("unstable foliation: {} (closure dimension {})", f.kind, f.closure_dim);
        if f.unstable_dim_not_two {
            println!("  note: unstable dimension is not 2");
        }
    }
    if let Some(d) = &r.decomposition {
        for b in &d.factors {
            println!("  factor {}: {}", b.display, b.role);
        }
        match d.center_order {
            Some(k) => println!("center order: {k}"),
            None => println!("center order: none ({})", d.center_note),
        }
    }
    for e in &r.errors {
        println!("{} [{}]: {}", e.stage, e.severity, e.message);
    }
}
