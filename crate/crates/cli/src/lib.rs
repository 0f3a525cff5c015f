//! Command-line front end for `braidrep`.
//!
//! Every subcommand prints one JSON document on stdout. Exit codes: `0` on
//! success, `1` when a computation fails (the document is then
//! `{"error": "..."}`), `2` for malformed invocations (message on stderr).

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

pub mod commands;
pub mod format;
pub mod selftest;

#[derive(Debug, Parser)]
#[command(name = "braidrep", version, about = "Braid group representations and link invariants")]
pub struct Cli {
    /// Indented multi-line JSON instead of a single line.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Permutation, cycles, purity and exponent sum of a word.
    Braid(WordArgs),
    /// Burau matrix of a word over Z[t, t^-1].
    Burau {
        #[command(flatten)]
        word: WordArgs,
        /// Use the reduced (n-1)-dimensional representation.
        #[arg(long)]
        reduced: bool,
    },
    /// Alexander-Conway polynomial of the closure of a word.
    Alexander(WordArgs),
    /// Yang-Baxter checks and induced braid representations.
    #[command(subcommand)]
    Ybe(YbeCommand),
    /// Weight spaces, nullvectors and Omega operators of sl2 Verma modules.
    #[command(subcommand)]
    Verma(VermaCommand),
    /// Monodromy of the KZ connection.
    #[command(subcommand)]
    Kz(KzCommand),
    /// Deterministic run of the property suites.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random cases per randomized suite.
        #[arg(long, default_value_t = 50)]
        cases: usize,
    },
}

#[derive(Debug, Clone, Args)]
pub struct WordArgs {
    /// Number of strands.
    #[arg(long)]
    pub n: Option<usize>,
    /// Word such as "s1 s2^-1 s1".
    pub word: Option<String>,
    /// Word as JSON: {"n": 3, "letters": [[1, 1], [2, -1]]}.
    #[arg(long, conflicts_with_all = ["word", "n"])]
    pub json: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct RSource {
    /// R-matrix JSON file.
    #[arg(required_unless_present = "builtin")]
    pub file: Option<PathBuf>,
    /// Built-in R-matrix instead of a file.
    #[arg(long, value_parser = ["identity", "flip", "rcheck"], conflicts_with = "file")]
    pub builtin: Option<String>,
    /// dim V for the built-in identity and flip.
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
}

#[derive(Debug, Subcommand)]
pub enum YbeCommand {
    /// Braid YBE, QYBE and invertibility of an R-matrix.
    Check(RSource),
    /// Matrix of a word in the representation induced by R.
    Rep {
        #[command(flatten)]
        source: RSource,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        word: String,
        /// Proceed even if R fails the braid Yang-Baxter equation.
        #[arg(long)]
        allow_non_ybe: bool,
    },
    /// Print an R-matrix in the file format.
    Show(RSource),
}

#[derive(Debug, Clone, Args)]
pub struct VermaArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    /// Highest weight as p/q.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
}

#[derive(Debug, Subcommand)]
pub enum VermaCommand {
    /// Dimensions of the weight space and of its nullvectors.
    Dims(VermaArgs),
    /// Omega acting on legs i < j of the weight space.
    Omega {
        #[command(flatten)]
        args: VermaArgs,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
    /// Basis of nullvectors as columns over the weight basis.
    Nullspace(VermaArgs),
    /// Kohno-Drinfeld relations, equivariance and the Casimir identities.
    Check(VermaArgs),
}

#[derive(Debug, Clone, Args)]
pub struct KzArgs {
    #[arg(long)]
    pub n: usize,
    /// Highest weight, a+bi or p/q.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    #[arg(long)]
    pub m: usize,
    /// Deformation parameter h; the connection is h/(2 pi i) times the KZ form.
    #[arg(long, allow_hyphen_values = true, required_unless_present = "tau")]
    pub h: Option<String>,
    /// Alternative parameter tau; the connection is 1/tau times the KZ form.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "h")]
    pub tau: Option<String>,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Restrict to the nullvectors of the weight space.
    #[arg(long)]
    pub nullspace: bool,
}

#[derive(Debug, Subcommand)]
pub enum KzCommand {
    /// Monodromy matrix of a braid word.
    Monodromy {
        #[command(flatten)]
        args: KzArgs,
        #[arg(long)]
        word: String,
    },
    /// Braid-relation, flatness and homotopy residuals.
    Check {
        #[command(flatten)]
        args: KzArgs,
        /// Seed for the random flatness sample points.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        points: usize,
    },
}

/// Failure classes of a command.
#[derive(Debug)]
pub enum CliError {
    /// Bad input: exit code 2.
    Usage(String),
    /// The computation itself failed: exit code 1.
    Compute(String),
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut warnings = Vec::new();
    match commands::execute(&cli.command, &mut warnings) {
        Ok(v) => Outcome {
            code: 0,
            stdout: format::to_json_string(&v, cli.pretty) + "\n",
            stderr: warnings.iter().map(|w| format!("warning: {w}\n")).collect(),
        },
        Err(CliError::Compute(msg)) => Outcome {
            code: 1,
            stdout: format::to_json_string(&json!({ "error": msg }), cli.pretty) + "\n",
            stderr: warnings.iter().map(|w| format!("warning: {w}\n")).collect(),
        },
        Err(CliError::Usage(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}
