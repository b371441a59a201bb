use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use diffmod::cli::{render_text, run, Command, JobSpec};
use diffmod::error::Error;
use diffmod::rat;

#[derive(Parser)]
#[command(name = "diffmod", version, about = "Spectra of formal differential modules")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Sub {
    /// Spectrum of an operator or matrix module.
    Spectrum(Input),
    /// Newton polygon, slopes and slope-0 edge polynomial.
    Newton(Input),
    /// Split off the factor of one slope (the regular part by default).
    Factor(Input),
    /// Cyclic vector and the resulting operator of a matrix module.
    Cyclic(Input),
    /// Check pullback and pushforward along S = T^m.
    Ramify(Input),
    /// Randomized property checks.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        count: usize,
        /// Break the commutation rule on purpose; the run must then fail.
        #[arg(long, hide = true)]
        corrupt_derivation: bool,
    },
}

#[derive(Args)]
struct Input {
    /// Operator such as "(D - 1/S)*(D - 2)".
    operator: Option<String>,
    /// JSON file holding a connection matrix.
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Relative precision of series inversions, in grid steps.
    #[arg(long, default_value_t = 50)]
    precision: u32,
    /// Ramification factor m (pullback along S = T^m).
    #[arg(long)]
    ram: Option<u32>,
    /// Report numeric radii r^gamma of the Gauss points at this r in (0,1).
    #[arg(long)]
    radius: Option<String>,
    /// Cross-check the spectrum through the slope factorization.
    #[arg(long)]
    verify: bool,
    /// Slope to split off (factor only).
    #[arg(long)]
    slope: Option<String>,
}

fn job(cli: &Cli) -> Result<JobSpec, Error> {
    let (command, input) = match &cli.command {
        Sub::Spectrum(i) => (Command::Spectrum, i),
        Sub::Newton(i) => (Command::Newton, i),
        Sub::Factor(i) => (Command::Factor, i),
        Sub::Cyclic(i) => (Command::Cyclic, i),
        Sub::Ramify(i) => (Command::Ramify, i),
        Sub::Selftest {
            seed,
            count,
            corrupt_derivation,
        } => {
            let mut j = JobSpec::new(Command::Selftest);
            j.seed = *seed;
            j.count = *count;
            j.corrupt_derivation = *corrupt_derivation;
            return Ok(j);
        }
    };
    let mut j = JobSpec::new(command);
    j.operator = input.operator.clone();
    j.matrix = match &input.matrix {
        Some(path) => Some(std::fs::read_to_string(path).map_err(|e| {
            Error::Precondition(format!("cannot read {}: {e}", path.display()))
        })?),
        None => None,
    };
    j.precision = input.precision;
    j.ram = input.ram;
    j.verify = input.verify;
    j.radius = input.radius.as_deref().map(rat::parse).transpose()?;
    j.slope = input.slope.as_deref().map(rat::parse).transpose()?;
    Ok(j)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = job(&cli).and_then(|j| run(&j));
    match result {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                print!("{}", render_text(&report));
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if cli.json {
                let body = serde_json::json!({"error": {"code": e.code(), "message": e.to_string()}});
                println!("{body}");
            } else {
                eprintln!("error [{}]: {e}", e.code());
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
