//! `ospq`: command-line front end for the osp(1|2n) root-of-unity engine.
//!
//! Tasks: `invariant` (3-manifold invariant of a framed link), `tables`
//! (alcove constants), `verify` (named identity suites), `tangle-eval`
//! (sliced diagram evaluation).  Exit codes: 0 success, 2 parse error,
//! 3 semantic error, 4 unsupported (n, N) regime, 5 internal identity-check
//! failure.

use clap::{Parser, Subcommand};
use ospq::jobs;

#[derive(Parser)]
#[command(
    name = "ospq",
    version,
    about = "quantum osp(1|2n) invariants at roots of unity"
)]
struct Cli {
    #[command(subcommand)]
    task: Task,
}

#[derive(Subcommand)]
enum Task {
    /// Compute the 3-manifold invariant of a framed link given as JSON.
    Invariant {
        #[arg(short = 'f', long = "file")]
        file: String,
        #[arg(long = "n")]
        n: Option<usize>,
        #[arg(long = "N")]
        big_n: Option<u32>,
        #[arg(long, default_value = "json")]
        format: String,
        /// worker threads for the colouring sum (0 = all cores)
        #[arg(long, default_value_t = 1)]
        parallel: usize,
    },
    /// Print the alcove, superdimensions and invariant constants.
    Tables {
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "N")]
        big_n: u32,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Run a named verification suite (or `all`).
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Evaluate a sliced tangle diagram from its text format.
    TangleEval {
        #[arg(short = 'f', long = "file")]
        file: String,
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "N")]
        big_n: u32,
        #[arg(long, default_value = "json")]
        format: String,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.task {
        Task::Invariant {
            file,
            n,
            big_n,
            format,
            parallel,
        } => jobs::run_invariant(&file, n, big_n, &format, parallel),
        Task::Tables { n, big_n, format } => jobs::run_tables(n, big_n, &format),
        Task::Verify { suite, format } => jobs::run_verify(&suite, &format),
        Task::TangleEval {
            file,
            n,
            big_n,
            format,
        } => jobs::run_tangle_eval(&file, n, big_n, &format),
    };
    std::process::exit(code);
}
