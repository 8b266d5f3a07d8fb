use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use omega_automatic::presentation::{DEFAULT_SAMPLES, DEFAULT_SEED};
use omega_automatic::word::DEFAULT_BUDGET;
use omega_cli::commands::{self, ValidateOptions};
use omega_cli::{Format, Outcome};

/// Büchi and Muller tree automata, ω-automatic presentations and
/// first-order decisions over them.
///
/// Exit status: 0 ok, 1 a check failed, 2 bad input or budget exceeded.
#[derive(Parser, Debug)]
#[command(name = "omega", version)]
struct Cli {
    /// Seed for sampled checks and differential suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// State budget for each automaton construction.
    #[arg(long, global = true, value_name = "STATES", default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Whether an automaton accepts a lasso (`stem|loop`) or regular tree.
    Member { automaton: PathBuf, input: PathBuf },
    /// Emptiness; a witness is written when the language is non-empty.
    Empty {
        automaton: PathBuf,
        /// Witness file [default: <automaton>.witness].
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Checks that a presentation bundle's equality is a congruence.
    Validate {
        bundle: PathBuf,
        /// Apply this interpretation file to the bundle first.
        #[arg(long)]
        interpret: Option<PathBuf>,
        /// Sample count for checks that cannot be decided exactly.
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        /// Directory for counterexample files [default: the bundle].
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decides a sentence, given inline or as a file, over a bundle.
    Decide {
        bundle: PathBuf,
        sentence: String,
        /// Apply this interpretation file to the bundle first.
        #[arg(long)]
        interpret: Option<PathBuf>,
    },
    /// Writes a named construction (`build manifest` lists them).
    Build {
        name: String,
        output: PathBuf,
        /// Size parameter of fin_k, chain, matrix and ut.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Runs a differential suite against its oracle: complementation,
    /// antichain, parity, muller, toy-fo or all.
    Difftest {
        suite: String,
        /// Number of random instances [default: per suite].
        #[arg(long)]
        count: Option<usize>,
    },
}

fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Member { automaton, input } => commands::member(automaton, input),
        Command::Empty { automaton, witness } => commands::empty(automaton, witness.as_deref()),
        Command::Validate {
            bundle,
            interpret,
            samples,
            out,
        } => commands::validate(
            bundle,
            ValidateOptions {
                interpretation: interpret.as_deref(),
                seed: cli.seed,
                samples: *samples,
                budget: cli.budget,
                out: out.as_deref(),
            },
        ),
        Command::Decide {
            bundle,
            sentence,
            interpret,
        } => commands::decide(bundle, sentence, interpret.as_deref(), cli.budget),
        Command::Build { name, output, n } => commands::build(name, output, *n),
        Command::Difftest { suite, count } => commands::difftest(suite, cli.seed, *count),
    };
    result.unwrap_or_else(|e| Outcome::error(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    print!("{}", outcome.render(cli.format));
    ExitCode::from(outcome.status.exit_code() as u8)
}
