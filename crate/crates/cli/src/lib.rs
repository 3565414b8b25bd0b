//! Front end for the `relcalc` binary: argument types, subcommands and
//! output formatting.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;

use serde_json::Value;

pub use args::{Cli, Command, RunArgs, SeedArg};
pub use error::CliError;

/// Executes one subcommand and returns the JSON document for stdout.
pub fn run(cli: &Cli) -> Result<Value, CliError> {
    match &cli.command {
        Command::Elicit { theta_hat, n_pr } => commands::elicit(*theta_hat, *n_pr),
        Command::Update { model, out, grid } => {
            commands::update(&commands::load_model(model)?, out.as_deref(), *grid)
        }
        Command::Propagate(a) => {
            Ok(serde_json::to_value(commands::propagate(a)?).expect("summary"))
        }
        Command::Condition(a) => {
            Ok(serde_json::to_value(commands::condition(a)?).expect("summary"))
        }
        Command::DemoDiscrete {
            seed,
            nsim,
            max_attempts,
        } => commands::demo_discrete(seed.seed, *nsim, *max_attempts),
    }
}
