use clap::{Parser, Subcommand};
use jord_cli::json;
use jord_cli::names::parse_target;
use jord_cli::report::{self, Format, ReportOptions};
use jord_core::check::{self, CheckOptions, DEFAULT_SEED};
use jord_core::field::Field;
use jord_core::rat::Rat;
use jord_core::solver::{self, ParityFilter};
use jord_core::zoo;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Exit codes: 0 ok, 1 usage, 2 parameter error, 3 identity-check
/// failure, 4 expectation mismatch in report mode.
const EXIT_USAGE: u8 = 1;
const EXIT_PARAM: u8 = 2;
const EXIT_IDENTITY: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

#[derive(Parser)]
#[command(
    name = "jord",
    about = "Exact delta-derivation computations for the simple finite-dimensional Jordan algebras and superalgebras",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the built-in catalog.
    List {
        /// Ground field: Q (default) or gfP for an odd prime, e.g. gf7.
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Construct an algebra and dump its JSON document.
    Build {
        /// Catalog name (see `list`) or path to an algebra JSON file.
        target: String,
        #[arg(long, default_value = "Q")]
        field: String,
        /// Write to a file instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run the identity checks (supercommutativity + Jordan property).
    Check {
        target: String,
        #[arg(long, default_value = "Q")]
        field: String,
        /// Force the exhaustive quadruple sweep regardless of dimension.
        #[arg(long)]
        full_sweep: bool,
        /// Seed for the sampled sweep above the full-sweep limit.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Solve for the delta-derivation space at a fixed rational delta.
    Solve {
        target: String,
        /// Exact rational, e.g. 1/2.
        #[arg(long)]
        delta: String,
        /// all, even or odd.
        #[arg(long, default_value = "all")]
        parity: String,
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Symbolic pencil analysis: every delta where the solution space
    /// jumps (rationals only).
    Pencil {
        target: String,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Run the whole catalog against the expectation table.
    Report {
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long, default_value = "md")]
        format: String,
        #[arg(long)]
        full_sweep: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

fn parse_field(s: &str) -> Result<Field, String> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("q") {
        return Ok(Field::rationals());
    }
    let digits = s
        .to_ascii_lowercase()
        .strip_prefix("gf")
        .map(|r| r.trim_matches(['(', ')']).to_string())
        .ok_or_else(|| format!("unknown field `{s}` (use Q or gfP)"))?;
    let p: u64 = digits.parse().map_err(|_| format!("bad prime in `{s}`"))?;
    Field::gf(p).map_err(|e| e.to_string())
}

/// A target is either a catalog name or a path to an algebra document.
fn resolve_target(target: &str, field: Field) -> Result<jord_core::algebra::Superalgebra, String> {
    let looks_like_path = target.ends_with(".json") || Path::new(target).exists();
    if looks_like_path {
        let text = std::fs::read_to_string(target).map_err(|e| format!("{target}: {e}"))?;
        return json::load_algebra(&text).map_err(|e| e.to_string());
    }
    let spec = parse_target(target)?;
    zoo::construct(field, &spec).map_err(|e| e.to_string())
}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<(), String> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn threads_from_env() -> usize {
    std::env::var("JORD_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

fn run() -> Result<u8, (u8, String)> {
    let cli = Cli::try_parse().map_err(|e| (EXIT_USAGE, e.to_string()))?;
    let param = |msg: String| (EXIT_PARAM, msg);

    match cli.cmd {
        Cmd::List { field } => {
            let field = parse_field(&field).map_err(param)?;
            let cat = zoo::catalog(field).map_err(|e| param(e.to_string()))?;
            println!("{:<24} {:>4} {:>7}  note", "name", "dim", "unital");
            for (entry, _) in cat {
                println!(
                    "{:<24} {:>4} {:>7}  {}",
                    entry.name,
                    entry.dim,
                    if entry.unital { "yes" } else { "no" },
                    entry.note
                );
            }
            Ok(0)
        }
        Cmd::Build {
            target,
            field,
            output,
        } => {
            let field = parse_field(&field).map_err(param)?;
            let alg = resolve_target(&target, field).map_err(param)?;
            emit(output.as_ref(), &json::save_algebra(&alg)).map_err(param)?;
            Ok(0)
        }
        Cmd::Check {
            target,
            field,
            full_sweep,
            seed,
            format,
        } => {
            let field = parse_field(&field).map_err(param)?;
            let format = Format::parse(&format).map_err(param)?;
            let alg = resolve_target(&target, field).map_err(param)?;
            let opts = CheckOptions {
                seed,
                force_full_sweep: full_sweep,
                ..Default::default()
            };
            let comm = check::check_supercommutativity(&alg);
            let jordan = check::check_super_jordan_envelope(&alg, &opts)
                .map_err(|e| param(e.to_string()))?;
            let passed = comm.passed && jordan.passed;
            match format {
                Format::Json => {
                    let v = serde_json::json!({
                        "supercommutativity": json::check_to_json(&comm),
                        "jordan": json::check_to_json(&jordan),
                        "passed": passed,
                    });
                    print!("{}", json::render(&v));
                }
                _ => {
                    println!(
                        "{}: supercommutativity {}; {} {}",
                        alg.name,
                        if comm.passed { "pass" } else { "FAIL" },
                        jordan.identity,
                        if jordan.passed { "pass" } else { "FAIL" }
                    );
                    for w in comm.witnesses.iter().chain(&jordan.witnesses) {
                        println!("  witness {:?}: {}", w.indices, w.description);
                    }
                }
            }
            Ok(if passed { 0 } else { EXIT_IDENTITY })
        }
        Cmd::Solve {
            target,
            delta,
            parity,
            field,
            format,
        } => {
            let field = parse_field(&field).map_err(param)?;
            let format = Format::parse(&format).map_err(param)?;
            let alg = resolve_target(&target, field).map_err(param)?;
            let drat = Rat::parse(&delta)
                .ok_or_else(|| param(format!("`{delta}` is not an exact rational")))?;
            let delta = field.from_rat(&drat).map_err(|e| param(e.to_string()))?;
            let filter = match parity.as_str() {
                "all" => ParityFilter::All,
                "even" => ParityFilter::Even,
                "odd" => ParityFilter::Odd,
                other => return Err(param(format!("unknown parity filter `{other}`"))),
            };
            let space = solver::delta_derivations(&alg, &delta, filter);
            let class = solver::classify_solution(&space, &alg);
            match format {
                Format::Json => print!("{}", json::render(&json::space_to_json(&space, &class))),
                _ => {
                    println!(
                        "{} at delta={}: dim {} ({} even, {} odd), {}",
                        space.algebra,
                        space.delta,
                        space.dim,
                        space.parity_split.0,
                        space.parity_split.1,
                        class
                    );
                }
            }
            Ok(0)
        }
        Cmd::Pencil { target, format } => {
            let format = Format::parse(&format).map_err(param)?;
            let alg = resolve_target(&target, Field::rationals()).map_err(param)?;
            let set = solver::pencil_exceptional(&alg).map_err(|e| param(e.to_string()))?;
            match format {
                Format::Json => print!("{}", json::render(&json::exceptional_to_json(&set))),
                _ => {
                    let desc = set
                        .exceptionals
                        .iter()
                        .map(|(d, n)| format!("{}:{n}", d.to_fraction_string()))
                        .collect::<Vec<_>>()
                        .join(" ");
                    println!(
                        "{}: generic rank {}, exceptional [{}], nonrational degrees {:?}",
                        alg.name, set.generic_rank, desc, set.nonrational_degrees
                    );
                }
            }
            Ok(0)
        }
        Cmd::Report {
            field,
            format,
            full_sweep,
            seed,
            output,
        } => {
            let opts = ReportOptions {
                field: parse_field(&field).map_err(param)?,
                format: Format::parse(&format).map_err(param)?,
                full_sweep,
                seed,
                threads: threads_from_env(),
            };
            let outcome = report::run_report(&opts).map_err(param)?;
            emit(output.as_ref(), &outcome.text).map_err(param)?;
            Ok(if outcome.all_match { 0 } else { EXIT_MISMATCH })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("{msg}");
            ExitCode::from(code)
        }
    }
}
