use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use peaklab::experiment::{sample_parallel, CHUNK_SIZE};
use peaklab::format::{
    distribution_csv, distribution_json, histogram_csv, mgf_json, sample_json, SampleRecord,
};
use peaklab::verify::{run_suite, Suite};
use peaklab::{config, exit, parse_cycle_type_for, CliError};
use peaklab_core::asymptotics::residual_e;
use peaklab_core::class_dist::class_peak_distribution_with_limit;
use peaklab_core::CycleType;

#[derive(Parser)]
#[command(name = "peaklab", version, about = "Peaks of permutations in a fixed conjugacy class")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Exact peak distribution of a conjugacy class.
    Dist {
        /// Cycle type, e.g. "2^250 4^125", "identity:6" or "cycle:5".
        spec: String,
        /// Require the cycle type to have this size.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Monte Carlo histogram of peaks over uniform draws from a class.
    Sample {
        spec: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        num: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Exact log-MGF against the Gaussian prediction.
    Mgf {
        spec: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        s: f64,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(Suite::NAMES))]
        suite: String,
    },
}

fn parse(spec: &str, n: Option<usize>) -> Result<CycleType, CliError> {
    Ok(parse_cycle_type_for(spec, n)?)
}

fn emit(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| CliError::Internal(format!("writing output: {e}")))
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Dist { spec, n, format } => {
            let lambda = parse(&spec, n)?;
            let max_n = config::max_n().map_err(CliError::Parse)?;
            let dist = class_peak_distribution_with_limit(&lambda, max_n)?;
            emit(&match format {
                Format::Json => distribution_json(&dist),
                Format::Csv => distribution_csv(&dist),
            })?;
        }
        Command::Sample { spec, n, num, seed, format } => {
            let lambda = parse(&spec, n)?;
            if num == 0 {
                return Err(CliError::Parse("--num must be positive".into()));
            }
            let threads = config::threads().map_err(CliError::Parse)?;
            let stats = sample_parallel(&lambda, num, seed, threads)?;
            emit(&match format {
                Format::Json => sample_json(&SampleRecord::new(&lambda, &stats, seed, CHUNK_SIZE)),
                Format::Csv => histogram_csv(&stats),
            })?;
        }
        Command::Mgf { spec, n, s } => {
            let lambda = parse(&spec, n)?;
            let max_n = config::max_n().map_err(CliError::Parse)?;
            if lambda.n() > max_n {
                return Err(CliError::SizeLimit(format!(
                    "n = {} exceeds the exact-mode limit {max_n}",
                    lambda.n()
                )));
            }
            let b = residual_e(&lambda, s)?;
            emit(&mgf_json(&lambda, s, &b))?;
        }
        Command::Verify { suite } => {
            let suite = Suite::from_name(&suite).expect("validated by clap");
            let ok = run_suite(suite, |c| {
                let _ = writeln!(std::io::stdout(), "{c}");
            });
            return Ok(if ok { exit::OK } else { exit::CHECK_FAILED });
        }
    }
    Ok(exit::OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("peaklab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
