use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::PathBuf;
use std::process;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ssnn::analysis::BoundKind;
use ssnn::rational::parse_rational;
use ssnn::BigRational;

use ssnn_cli::batch::{run_batch, Check, RunConfig};
use ssnn_cli::commands::{self, CatalogCheck, RandomParams, Range, Target};
use ssnn_cli::input::read_records;
use ssnn_cli::plot::write_plot;
use ssnn_cli::report::{exit_code, write_csv, write_jsonl, RunReport};

#[derive(Parser)]
#[command(
    name = "ssnn",
    version,
    about = "Roots and root bounds of SSNN polynomials"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Working precision of the root finder, in bits
    #[arg(long, global = true, env = "SSNN_PRECISION", default_value_t = 128)]
    precision: u32,
    #[arg(long, global = true, env = "SSNN_MAX_ITER", default_value_t = 200)]
    max_iter: usize,
    /// Seed for random sweeps
    #[arg(long, global = true, env = "SSNN_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = all cores)
    #[arg(long, global = true, env = "SSNN_JOBS", default_value_t = 0)]
    jobs: usize,
    #[arg(long, global = true, env = "SSNN_FORMAT", value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    /// JSON lines, one report per record
    Json,
    /// One summary row per report
    Csv,
    /// Tab-separated scatter rows and boundary polylines
    Plot,
}

#[derive(Clone, Copy, ValueEnum)]
enum StripArg {
    Full,
    Half,
    Floor,
}

#[derive(Clone, Copy, ValueEnum)]
enum CatalogCheckArg {
    Strip,
    ClosedForm,
    Norm,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Solve each input δ-vector
    Roots {
        /// Input file; stdin when absent or "-"
        input: Option<PathBuf>,
    },
    /// Run bound checks on each input δ-vector (default: --strip half)
    Verify {
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        strip: Vec<StripArg>,
        #[arg(long)]
        norm: bool,
        #[arg(long)]
        functional_equation: bool,
        /// Exact Sturm certificate that real roots lie in the floor strip
        #[arg(long)]
        real_strip: bool,
    },
    /// Built-in δ-vectors of reflexive polygons and 3-polytopes
    Catalog {
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, value_enum)]
        check: Vec<CatalogCheckArg>,
        /// Also write the full catalog as versioned JSON to this file
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// SSNN polynomial with a prescribed real root
    Realize {
        #[arg(long)]
        d: usize,
        /// Rational `p/q`, or a decimal (solved approximately)
        #[arg(long, allow_hyphen_values = true)]
        target: String,
    },
    /// Closed-form root analysis for δ = (1,b,c,b,1) or (1,b,c,c,b,1)
    Quartic {
        #[arg(long, default_value_t = 4)]
        d: usize,
        #[arg(long, value_parser = rational_arg)]
        b: BigRational,
        #[arg(long, value_parser = rational_arg)]
        c: BigRational,
    },
    #[command(subcommand)]
    Sweep(Sweep),
    /// The degree 8 and 10 counterexample vectors under the half-strip check
    Counterexample,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Sweep {
    /// Quartic analysis over a (b, c) grid
    Grid {
        #[arg(long, default_value_t = 4)]
        d: usize,
        /// start:stop:step
        #[arg(long, value_parser = Range::parse)]
        b: Range,
        #[arg(long, value_parser = Range::parse)]
        c: Range,
    },
    /// Random symmetric δ-vectors (seeded)
    Random {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        min_degree: usize,
        #[arg(long, default_value_t = 10)]
        max_degree: usize,
        #[arg(long, default_value_t = 20)]
        max_numerator: i64,
        #[arg(long, default_value_t = 5)]
        max_denominator: i64,
        /// Let δ₀ be drawn like the other entries instead of fixing it to 1
        #[arg(long)]
        allow_zero_head: bool,
        #[arg(long, value_enum)]
        strip: Vec<StripArg>,
    },
}

fn rational_arg(s: &str) -> Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn strip_kind(s: StripArg) -> BoundKind {
    match s {
        StripArg::Full => BoundKind::FullStrip,
        StripArg::Half => BoundKind::HalfStrip,
        StripArg::Floor => BoundKind::FloorStrip,
    }
}

fn read_input(
    path: Option<PathBuf>,
) -> io::Result<Vec<Result<ssnn_cli::Record, ssnn_cli::ParseError>>> {
    match path {
        Some(p) if p.as_os_str() != "-" => read_records(BufReader::new(File::open(p)?)),
        _ => read_records(io::stdin().lock()),
    }
}

fn run(cli: Cli) -> Result<Vec<RunReport>, String> {
    let g = cli.global;
    let cfg = RunConfig {
        precision_bits: g.precision,
        max_iterations: g.max_iter,
        seed: g.seed,
        jobs: g.jobs,
    };
    let reports = match cli.command {
        Command::Roots { input } => {
            let records = read_input(input).map_err(|e| e.to_string())?;
            run_batch(&records, "roots", &[], &cfg)
        }
        Command::Verify {
            input,
            strip,
            norm,
            functional_equation,
            real_strip,
        } => {
            let mut checks: Vec<Check> = strip
                .into_iter()
                .map(|s| Check::Strip(strip_kind(s)))
                .collect();
            if norm {
                checks.push(Check::Norm);
            }
            if functional_equation {
                checks.push(Check::FunctionalEquation);
            }
            if real_strip {
                checks.push(Check::RealStrip);
            }
            if checks.is_empty() {
                checks.push(Check::Strip(BoundKind::HalfStrip));
            }
            let records = read_input(input).map_err(|e| e.to_string())?;
            run_batch(&records, "verify", &checks, &cfg)
        }
        Command::Catalog { dim, check, export } => {
            if let Some(path) = export {
                let doc = commands::catalog_export();
                let text = serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?;
                std::fs::write(&path, text + "\n")
                    .map_err(|e| format!("{}: {e}", path.display()))?;
            }
            let checks: Vec<CatalogCheck> = check
                .into_iter()
                .map(|c| match c {
                    CatalogCheckArg::Strip => CatalogCheck::Strip,
                    CatalogCheckArg::ClosedForm => CatalogCheck::ClosedForm,
                    CatalogCheckArg::Norm => CatalogCheck::Norm,
                })
                .collect();
            commands::catalog_reports(dim, &checks, &cfg).map_err(|e| e.to_string())?
        }
        Command::Realize { d, target } => {
            let target = match parse_rational(&target) {
                Ok(q) => Target::Exact(q),
                Err(_) => Target::Approx(
                    target
                        .parse()
                        .map_err(|_| format!("invalid target {target:?}"))?,
                ),
            };
            vec![commands::realize_report(d, &target, &cfg)]
        }
        Command::Quartic { d, b, c } => vec![commands::quartic_report(0, &b, &c, d, &cfg)],
        Command::Sweep(Sweep::Grid { d, b, c }) => commands::grid_reports(d, &b, &c, &cfg),
        Command::Sweep(Sweep::Random {
            count,
            min_degree,
            max_degree,
            max_numerator,
            max_denominator,
            allow_zero_head,
            strip,
        }) => {
            if min_degree == 0
                || min_degree > max_degree
                || max_numerator < 0
                || max_denominator < 1
            {
                return Err(
                    "need 1 <= min-degree <= max-degree, max-numerator >= 0, max-denominator >= 1"
                        .into(),
                );
            }
            let params = RandomParams {
                count,
                min_degree,
                max_degree,
                max_numerator,
                max_denominator,
                allow_zero_head,
            };
            let mut checks = vec![Check::RealStrip, Check::Norm];
            checks.extend(strip.into_iter().map(|s| Check::Strip(strip_kind(s))));
            commands::random_reports(&params, &checks, &cfg)
        }
        Command::Counterexample => commands::counterexample_reports(&cfg),
    };
    let stdout = io::stdout().lock();
    let mut out = io::BufWriter::new(stdout);
    match g.format {
        Format::Json => write_jsonl(&mut out, &reports),
        Format::Csv => write_csv(&mut out, &reports),
        Format::Plot => write_plot(&mut out, &reports),
    }
    .and_then(|_| out.flush())
    .map_err(|e| e.to_string())?;
    Ok(reports)
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(reports) => process::exit(exit_code(&reports)),
        Err(e) => {
            eprintln!("ssnn: {e}");
            process::exit(2);
        }
    }
}
