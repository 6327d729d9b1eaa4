mod commands;
mod config;
mod error;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{MapChoice, Operator};
use config::{CommonArgs, RunConfig};
use error::CliError;

#[derive(Parser)]
#[command(name = "qeslab", version, about = "Exact spectra of quasi-exactly-solvable operators on spheres")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Subcommand)]
enum Cmd {
    /// Spectrum of the operator restricted to polynomials of degree <= k
    Spectrum {
        #[arg(long, value_enum, default_value = "qes")]
        operator: Operator,
    },
    /// Run conformance suites
    Verify {
        /// Suite name or "all"
        #[arg(long, default_value = "all")]
        suite: String,
        /// Random parameter draws per check
        #[arg(long, default_value_t = 5)]
        draws: usize,
    },
    /// Spectrum by separation of variables (sphere, n >= 2)
    Separate {
        /// Cross-check against the joint eigendecomposition
        #[arg(long)]
        completeness: bool,
    },
    /// Sphere-to-plane contraction probes (euclid parameters)
    Contract {
        #[arg(long, value_enum, default_value = "both")]
        map: MapChoice,
        /// Comma-separated epsilons; defaults to 1/2,1/4,1/8,1/16
        #[arg(long)]
        eps: Option<String>,
    },
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let cfg = RunConfig::resolve(&cli.common)?;
    let report = match cli.cmd {
        Cmd::Spectrum { operator } => commands::spectrum_cmd(&cfg, operator)?,
        Cmd::Verify { suite, draws } => {
            let (report, inconclusive) = commands::verify_cmd(&cfg, &suite, draws)?;
            output::emit(&report, &cfg)?;
            if inconclusive {
                eprintln!("some checks were inconclusive");
                return Ok(1);
            }
            return Ok(0);
        }
        Cmd::Separate { completeness } => commands::separate_cmd(&cfg, completeness)?,
        Cmd::Contract { map, eps } => {
            let eps = eps.as_deref().map(commands::parse_epsilons).transpose()?;
            commands::contract_cmd(&cfg, map, eps)?
        }
    };
    output::emit(&report, &cfg)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            e.print().ok();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
