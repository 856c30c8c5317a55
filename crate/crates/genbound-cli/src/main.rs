//! `genbound`: verification suites, map evaluation, figures and homology tables
//! for the generalized singular boundary operator.
//!
//! Exit status: 0 when every check passes, 1 when a check finds a violation,
//! 2 on a usage or configuration error.

mod commands;
mod config;
mod figure;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{CliError, Outcome};
use config::{CommonArgs, RunConfig};

#[derive(Parser, Debug)]
#[command(
    name = "genbound",
    version,
    about = "Exact checks for the generalized boundary operator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check EQUATION_{n,j≤p,i,k} for every index in range.
    VerifyEquations {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check that ∂_n∘∂_{n+1} vanishes on id(Δ_{n+1}).
    VerifyBoundary {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check the COMFORT conditions for a map.
    VerifyComfort {
        /// Map id: theta:L=1,n=2,i=1 or counterexample.
        map_id: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Evaluate a map at exact points such as "[1/4,3/4]".
    Eval {
        /// Map id: theta:..., theta_inv:..., pi_alpha:n=..,alpha=..,
        /// face:..., face_delete:... or counterexample.
        map_id: String,
        /// Points in barycentric coordinates.
        #[arg(required = true)]
        points: Vec<String>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Draw the boundary of id(Δ_2) and α-crosses as SVG or CSV.
    Figure {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Tabulate the boundary maps and homology of a point.
    Homology {
        #[command(flatten)]
        common: CommonArgs,
    },
}

type CommandFn = fn(&RunConfig) -> Result<Outcome, CliError>;

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let (common, result): (CommonArgs, CommandFn) = match cli.command {
        Command::VerifyEquations { common } => (common, commands::verify_equations),
        Command::VerifyBoundary { common } => (common, commands::verify_boundary),
        Command::Figure { common } => (common, commands::figure),
        Command::Homology { common } => (common, commands::homology),
        Command::VerifyComfort { map_id, common } => {
            let cfg = RunConfig::resolve(&common)?;
            return finish(&cfg, commands::verify_comfort(&cfg, &map_id)?);
        }
        Command::Eval { map_id, points, common } => {
            let cfg = RunConfig::resolve(&common)?;
            return finish(&cfg, commands::eval(&cfg, &map_id, &points)?);
        }
    };
    let cfg = RunConfig::resolve(&common)?;
    finish(&cfg, result(&cfg)?)
}

fn finish(cfg: &RunConfig, outcome: Outcome) -> Result<Outcome, CliError> {
    commands::emit(cfg.out.as_deref(), &outcome.text)?;
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(outcome) if outcome.passed => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("genbound: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
