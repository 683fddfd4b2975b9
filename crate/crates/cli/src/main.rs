mod logic;
mod output;
mod prob;
mod qdemo;
mod selftest;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use output::{CliError, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Propositional natural deduction, exact event probabilities and Q-numbers.
#[derive(Debug, Parser)]
#[command(name = "logiprob", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a formula and print its fully parenthesized form.
    Parse { formula: String },
    /// Print the truth table of a formula (tab-separated in text mode).
    Table { formula: String },
    /// Decide whether a formula is a tautology (exit 1 if not).
    Tauto { formula: String },
    /// Build a natural deduction of a tautology from no hypotheses.
    Prove {
        formula: String,
        /// Append the construction trace as `# ` comment lines.
        #[arg(long)]
        trace: bool,
    },
    /// Check a proof in the text format; `-` reads standard input.
    Check { file: String },
    /// Probability of exactly k successes in r trials.
    Bernoulli {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        p: String,
    },
    /// Probability that the success count lies in [a, b].
    Tail {
        #[arg(long)]
        r: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        p: String,
    },
    /// Lower bound 1 - p(1-p)/(r eps^2) on the probability that the frequency
    /// is within eps of p.
    Bound {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        p: String,
        #[arg(long)]
        eps: String,
    },
    /// List the products of r trials with exactly k occurrences, and their sum.
    Series {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        /// Name prefix of the trial events.
        #[arg(long, default_value = "B")]
        base: String,
        /// Per-trial probability; when given, the sum is also evaluated.
        #[arg(long)]
        p: Option<String>,
    },
    /// Check the B-function identities on random events over a model file.
    #[command(name = "verify-b")]
    VerifyB {
        /// JSON model file, or `-` for standard input.
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Density-filter demonstrations on index sets and sequences.
    Qdemo {
        #[command(subcommand)]
        demo: qdemo::Demo,
    },
    /// Run the verification suites at reduced size.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn run(cli: Cli) -> Result<Report, CliError> {
    match cli.command {
        Command::Parse { formula } => logic::parse(&formula),
        Command::Table { formula } => logic::table(&formula),
        Command::Tauto { formula } => logic::tauto(&formula),
        Command::Prove { formula, trace } => logic::prove(&formula, trace),
        Command::Check { file } => logic::check(&file),
        Command::Bernoulli { r, k, p } => prob::bernoulli(r, k, &p),
        Command::Tail { r, a, b, p } => prob::tail(r, &a, &b, &p),
        Command::Bound { r, p, eps } => prob::bound(r, &p, &eps),
        Command::Series { r, k, base, p } => prob::series(r, k, &base, p.as_deref()),
        Command::VerifyB { model, trials, seed } => prob::verify_b(&model, trials, seed),
        Command::Qdemo { demo } => qdemo::run(demo),
        Command::Selftest { seed } => Ok(selftest::run(seed)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let code = match run(cli) {
        Ok(report) => report.emit(format),
        Err(err) => err.emit(format),
    };
    ExitCode::from(code)
}
