use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use circuit_descartes::viro::T0Config;
use circuit_descartes::{OracleConfig, Rational, RootCounting};
use circuit_descartes_cli::commands;
use circuit_descartes_cli::fuzz::{run_fuzz, FuzzConfig};
use circuit_descartes_cli::report::TextReport;
use circuit_descartes_cli::{CliError, CliResult, InstanceFile, Q};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "circdes",
    version,
    about = "Descartes bounds and exact positive-solution counts for circuit systems"
)]
struct Cli {
    /// Print a plain-text summary instead of JSON.
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Companion,
    Classical,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an instance and report B, volumes and feasibility.
    Check { file: PathBuf },
    /// Bounds from the ordering of the Gale dual of C.
    Bound { file: PathBuf },
    /// Exact number of positive solutions.
    Count {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "companion")]
        method: Method,
        /// Skip root isolation and report only the count.
        #[arg(long)]
        no_isolate: bool,
        #[arg(long, default_value_t = 512)]
        max_degree: usize,
    },
    /// Build a Viro system attaining the bound.
    Sharpen {
        file: PathBuf,
        #[arg(long, default_value_t = 60)]
        max_halvings: u32,
        #[arg(long, default_value_t = 3)]
        confirmations: u32,
    },
    /// Maximal number of positive solutions of a planar circuit.
    Classify2d { file: PathBuf },
    /// Classify a grid of the (b1, b2) moduli plane and write CSV.
    RegionSample {
        #[arg(long, default_value_t = 101)]
        grid: usize,
        /// `lo,hi` for both axes or `lo1,hi1,lo2,hi2`.
        #[arg(long, default_value = "-3,3", allow_hyphen_values = true)]
        range: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Check invariants on random circuits and coefficient matrices.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[arg(long, default_value_t = 5)]
        max_coord: i64,
        /// Where to write the minimized reproducer of the first violation.
        #[arg(long, default_value = "fuzz-reproducer.json")]
        reproducer: PathBuf,
    },
}

fn read_instance(path: &Path) -> CliResult<InstanceFile> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path)
            .map_err(|e| CliError::InvalidInput(format!("{}: {e}", path.display())))?
    };
    InstanceFile::parse(&text)
}

fn emit<T: Serialize + TextReport>(report: &T, text: bool) -> CliResult<()> {
    let mut out = io::stdout().lock();
    if text {
        out.write_all(report.text().as_bytes())?;
    } else {
        let json =
            serde_json::to_string_pretty(report).map_err(|e| CliError::Other(e.to_string()))?;
        writeln!(out, "{json}")?;
    }
    Ok(())
}

fn parse_range(s: &str) -> CliResult<[(Rational, Rational); 2]> {
    let v = s
        .split(',')
        .map(|x| x.parse::<Q>().map(Q::into_inner))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::InvalidInput(format!("--range: {e}")))?;
    match v.as_slice() {
        [lo, hi] => Ok([(lo.clone(), hi.clone()), (lo.clone(), hi.clone())]),
        [a, b, c, d] => Ok([(a.clone(), b.clone()), (c.clone(), d.clone())]),
        _ => Err(CliError::InvalidInput(
            "--range expects lo,hi or lo1,hi1,lo2,hi2".into(),
        )),
    }
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Check { file } => {
            let report = commands::check(&read_instance(&file)?)?;
            emit(&report, cli.text)?;
            if !report.circuit {
                return Ok(ExitCode::from(3));
            }
        }
        Command::Bound { file } => emit(&commands::bound(&read_instance(&file)?)?, cli.text)?,
        Command::Count {
            file,
            method,
            no_isolate,
            max_degree,
        } => {
            let config = OracleConfig {
                max_degree,
                method: match method {
                    Method::Companion => RootCounting::Companion,
                    Method::Classical => RootCounting::Classical,
                },
                isolate: !no_isolate,
            };
            emit(&commands::count(&read_instance(&file)?, &config)?, cli.text)?
        }
        Command::Sharpen {
            file,
            max_halvings,
            confirmations,
        } => {
            let config = T0Config {
                max_halvings,
                confirmations,
                ..T0Config::default()
            };
            emit(
                &commands::sharpen(&read_instance(&file)?, &config)?,
                cli.text,
            )?
        }
        Command::Classify2d { file } => {
            emit(&commands::classify2d(&read_instance(&file)?)?, cli.text)?
        }
        Command::RegionSample {
            grid,
            range,
            output,
        } => {
            let samples = commands::region_sample(grid, &parse_range(&range)?)?;
            match output {
                Some(path) => commands::write_region_csv(fs::File::create(path)?, &samples)?,
                None => commands::write_region_csv(io::stdout().lock(), &samples)?,
            }
        }
        Command::Fuzz {
            seed,
            trials,
            n_min,
            n_max,
            max_coord,
            reproducer,
        } => {
            if n_min == 0 || n_min > n_max || max_coord < 1 {
                return Err(CliError::InvalidInput(
                    "need 1 <= --n-min <= --n-max and --max-coord >= 1".into(),
                ));
            }
            let summary = run_fuzz(&FuzzConfig {
                seed,
                trials,
                n_min,
                n_max,
                max_coord,
                ..FuzzConfig::default()
            });
            let json = serde_json::to_string_pretty(&summary)
                .map_err(|e| CliError::Other(e.to_string()))?;
            println!("{json}");
            if let Some(v) = summary.violations.first() {
                let repro = serde_json::to_string_pretty(&v.minimized)
                    .map_err(|e| CliError::Other(e.to_string()))?;
                fs::write(&reproducer, repro + "\n")?;
                eprintln!(
                    "{} violation(s); reproducer written to {}",
                    summary.violations.len(),
                    reproducer.display()
                );
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
