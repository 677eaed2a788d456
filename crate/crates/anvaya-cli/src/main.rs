//! Command-line batch workflows: linearize annotated corpora, evaluate
//! hypotheses, render prompts, score rule compliance, and summarize
//! corpora. Every command writes a run manifest next to its outputs.

mod commands;
mod config;
mod manifest;
mod records;

use clap::{Parser, Subcommand};

/// Exit status: 0 success, 1 hard error, 2 usage error, 3 per-record
/// failures (run completed, some records skipped).
fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(RunOutcome::Clean) => 0,
        Ok(RunOutcome::PartialFailures(n)) => {
            eprintln!("{n} record(s) failed");
            3
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    };
    std::process::exit(code);
}

pub enum RunOutcome {
    Clean,
    PartialFailures(usize),
}

#[derive(Parser)]
#[command(name = "anvaya", version, about = "Canonical Sanskrit prose ordering and evaluation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reorder annotated records into canonical prose.
    Linearize(commands::linearize::Args),
    /// Compute BLEU / tau (and compliance, when annotated) against a
    /// reference corpus; also cross-domain grids.
    Evaluate(commands::evaluate::Args),
    /// Render prompt variants.
    Prompt(commands::prompt::Args),
    /// Score rule compliance of hypotheses against gold annotations.
    Score(commands::score::Args),
    /// Summarize a corpus file.
    Stats(commands::stats::Args),
}

fn run(cli: Cli) -> anyhow::Result<RunOutcome> {
    match cli.command {
        Command::Linearize(args) => commands::linearize::run(args),
        Command::Evaluate(args) => commands::evaluate::run(args),
        Command::Prompt(args) => commands::prompt::run(args),
        Command::Score(args) => commands::score::run(args),
        Command::Stats(args) => commands::stats::run(args),
    }
}
