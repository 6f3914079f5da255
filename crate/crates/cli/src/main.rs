//! `lltm`: encode Turing machines as linear logic proofs, evaluate their
//! denotations and run the verification suites.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "lltm", version, about = "Turing machines as linear logic proofs, with an exact semantic evaluator")]
struct Cli {
    /// Seed for every randomized choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for independent cases.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the serialized proof of an encoding and its checked sequent.
    Encode {
        /// Machine JSON file; the built-in writer-right machine when absent.
        #[arg(long)]
        machine: Option<PathBuf>,
        #[arg(long, value_enum)]
        kind: EncodeKind,
        /// Comma-separated `key=value` parameters, e.g. `p=2` or `a=2,b=1,c=2,d=1,p=1`.
        #[arg(long, default_value = "")]
        params: String,
    },
    /// Evaluate the step denotation on a configuration and print the output kets.
    EvalStep {
        #[arg(long)]
        machine: Option<PathBuf>,
        #[command(flatten)]
        config: ConfigArgs,
        /// Number of steps encoded by the proof.
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// Run the machine directly and print the trace.
    Simulate {
        #[arg(long)]
        machine: Option<PathBuf>,
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// Print the polynomials of one component of the step.
    Poly {
        #[arg(long)]
        machine: Option<PathBuf>,
        #[arg(long, value_enum)]
        component: Component,
        /// Longest input word for the tape components.
        #[arg(long, default_value_t = 1)]
        bound: usize,
        /// Window radius (relstep) or tape length (absstep).
        #[arg(long, default_value_t = 1)]
        h: usize,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Decide linear independence of binary integer denotations.
    Independence {
        /// Comma-separated bit strings.
        #[arg(long)]
        bints: String,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 8)]
        trials: usize,
    },
    /// Run acceptance criteria; exits 1 if any fails.
    Verify {
        /// `all`, a criterion number, or a criterion name.
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Look for distributions on which boolstep and relstep disagree.
    SearchNoncommute {
        #[arg(long)]
        machine: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        h: usize,
        #[arg(long, default_value_t = 8)]
        trials: usize,
    },
}

#[derive(clap::Args, Debug)]
struct ConfigArgs {
    /// Tape left of and under the head, head cell last.
    #[arg(long, default_value = "")]
    left: String,
    /// Tape right of the head, adjacent cell last.
    #[arg(long, default_value = "")]
    right: String,
    #[arg(long, default_value_t = 0)]
    state: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EncodeKind {
    Step,
    Boolstep,
    Relstep,
    Absstep,
    Slist,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Component {
    Left,
    Right,
    State,
    Relstep,
    Absstep,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match commands::run(cli, &mut out) {
        Ok(()) | Err(commands::CliError::Closed) => ExitCode::SUCCESS,
        Err(commands::CliError::Failed) => ExitCode::from(1),
        Err(commands::CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(commands::CliError::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
