use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mivote_cli::run::{self, Outcome, RunError};

/// Exact analysis of multi-issue binary voting instances.
#[derive(Parser)]
#[command(name = "mivote", version, about)]
struct Cli {
    /// Emit the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Topic majorities and issue-wise-majority proposals.
    Majority { input: String },
    /// Detect the Anscombe, Ostrogorski, and Condorcet paradoxes.
    Paradox {
        input: String,
        /// Exit 1 if any paradox occurs.
        #[arg(long)]
        assert_safe: bool,
    },
    /// Find a Condorcet winner, or check a specific proposal.
    Condorcet {
        input: String,
        /// Proposal to check, e.g. `+,-,+` or `+-+`.
        #[arg(long)]
        check: Option<String>,
        /// Exit 1 if no winner exists (or the checked proposal loses).
        #[arg(long)]
        assert_safe: bool,
    },
    /// Recognize single-switch structure; witness on failure.
    Ssw {
        input: String,
        /// Exit 1 if the profile is not single-switch.
        #[arg(long)]
        assert_safe: bool,
    },
    /// Recognize single-crossing order lists (or reduced profiles).
    Sc {
        input: String,
        /// Exit 1 if the list is not single-crossing.
        #[arg(long)]
        assert_safe: bool,
    },
    /// Majority-supported proposals near the issue-wise majority.
    Represent {
        input: String,
        /// One of: partition, oracle, relevant, wagner.
        #[arg(long, default_value = "oracle")]
        method: String,
    },
    /// Emit a lower-bound instance family as `.miv` on stdout.
    Generate {
        /// One of: small-ell, big-ell.
        family: String,
        /// k for small-ell; the rational l for big-ell.
        parameter: String,
    },
}

fn read_input(path: &str) -> Result<String, RunError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| RunError::Input(format!("stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| RunError::Input(format!("{path}: {e}")))
    }
}

fn dispatch(cli: &Cli) -> Result<(Outcome, bool), RunError> {
    match &cli.command {
        Command::Majority { input } => {
            Ok((run::cmd_majority(&read_input(input)?)?, false))
        }
        Command::Paradox { input, assert_safe } => {
            Ok((run::cmd_paradox(&read_input(input)?)?, *assert_safe))
        }
        Command::Condorcet { input, check, assert_safe } => Ok((
            run::cmd_condorcet(&read_input(input)?, check.as_deref())?,
            *assert_safe,
        )),
        Command::Ssw { input, assert_safe } => {
            Ok((run::cmd_ssw(&read_input(input)?)?, *assert_safe))
        }
        Command::Sc { input, assert_safe } => {
            Ok((run::cmd_sc(&read_input(input)?)?, *assert_safe))
        }
        Command::Represent { input, method } => {
            Ok((run::cmd_represent(&read_input(input)?, method)?, false))
        }
        Command::Generate { family, parameter } => {
            let text = run::cmd_generate(family, parameter)?;
            print!("{text}");
            std::process::exit(0);
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok((outcome, assert_safe)) => {
            if cli.json {
                println!("{}", outcome.report.to_json());
            } else {
                print!("{}", outcome.report.to_text());
            }
            if assert_safe && outcome.violation {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
