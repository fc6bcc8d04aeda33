//! `alternabase`: exact alternate-base numeration from the command line.

mod commands;
mod verify;

use std::io::{self, Read, Write};
use std::process::ExitCode;

use alternabase::sturmian::DEFAULT_PREFIX;
use alternabase::{parse_base, AlternateBase, ParryProfile, DEFAULT_STATE_BUDGET};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "alternabase", version, about = "Exact alternate-base numeration systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// Base as a JSON file path, `-` for stdin, or inline JSON.
    #[arg(long, global = true, value_name = "path|-")]
    pub base: Option<String>,
    /// Work in the shifted base `S^i(B)`.
    #[arg(long, global = true, default_value_t = 0, allow_negative_numbers = true)]
    pub shift: i64,
    /// Number of items (integers, letters) to produce.
    #[arg(long, global = true, default_value_t = 36)]
    pub count: usize,
    /// Prefix length for word comparisons and balance scans.
    #[arg(long, global = true, default_value_t = DEFAULT_PREFIX, value_parser = positive)]
    pub prefix: usize,
    /// Stored-state bound for the Parry check.
    #[arg(long, global = true, default_value_t = DEFAULT_STATE_BUDGET, value_parser = positive)]
    pub budget: usize,
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Decimal places in approximations (truncated).
    #[arg(long, global = true, default_value_t = 2)]
    pub decimals: usize,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Tsv,
    Json,
    Dot,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixKind {
    /// Incidence matrix of the composed substitution.
    Incidence,
    /// Product of the automaton blocks over one period.
    Cycle,
    /// Full automaton adjacency matrix.
    Adjacency,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Greedy expansion of a non-negative number.
    Expand {
        /// Number in text form, e.g. `3/2 + 1/2 * sqrt(13)`.
        value: String,
        /// Bound on fractional digits when no period appears.
        #[arg(long, default_value_t = 64)]
        digits: usize,
    },
    /// Quasi-greedy expansion of one.
    Qg,
    /// Parry profile: expansions of one for every shift, gaps, classes.
    Parry,
    /// The first `--count` B-integers with their gap letters.
    Integers,
    /// Prefixes of the gap words.
    Gaps,
    /// The substitutions generating the gap word.
    Subst,
    /// Count matrices and their characteristic polynomial.
    Matrix {
        #[arg(long, value_enum, default_value_t = MatrixKind::Cycle)]
        which: MatrixKind,
    },
    /// The automaton of admissible digit reading.
    Automaton,
    /// Sturmian classification of the gap word.
    Sturmian,
    /// Cross-checks every independent construction against the others.
    Verify,
}

/// Failure categories mapped to exit codes.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
    Verification(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Domain(_) => 1,
            CliError::Verification(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Domain(m) => write!(f, "error: {m}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
        }
    }
}

pub fn domain<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Domain(e.to_string())
}

/// Loaded base together with its (shifted) Parry profile.
pub struct Ctx {
    pub opts: Opts,
    pub base: AlternateBase,
}

impl Ctx {
    pub fn profile(&self) -> Result<ParryProfile, CliError> {
        ParryProfile::new(&self.base, self.opts.budget).map_err(domain)
    }

    pub fn format(&self, default: Format, allowed: &[Format]) -> Result<Format, CliError> {
        let f = self.opts.format.unwrap_or(default);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            Err(CliError::Usage(format!("format {f:?} is not available for this subcommand")))
        }
    }
}

fn read_base(source: &str) -> Result<AlternateBase, CliError> {
    let trimmed = source.trim_start();
    let text = if source == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(domain)?;
        s
    } else if trimmed.starts_with('[') || trimmed.starts_with('{') {
        source.to_string()
    } else {
        std::fs::read_to_string(source).map_err(|e| CliError::Domain(format!("{source}: {e}")))?
    };
    parse_base(&text).map_err(domain)
}

fn run(cli: Cli, out: &mut String) -> Result<(), CliError> {
    let source = cli
        .opts
        .base
        .clone()
        .ok_or_else(|| CliError::Usage("--base is required".into()))?;
    let base = read_base(&source)?.shift(cli.opts.shift);
    let ctx = Ctx { opts: cli.opts, base };
    match cli.command {
        Command::Expand { value, digits } => commands::expand(&ctx, &value, digits, out),
        Command::Qg => commands::qg(&ctx, out),
        Command::Parry => commands::parry(&ctx, out),
        Command::Integers => commands::integers(&ctx, out),
        Command::Gaps => commands::gaps(&ctx, out),
        Command::Subst => commands::subst(&ctx, out),
        Command::Matrix { which } => commands::matrix(&ctx, which, out),
        Command::Automaton => commands::automaton(&ctx, out),
        Command::Sturmian => commands::sturmian(&ctx, out),
        Command::Verify => verify::verify(&ctx, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut out = String::new();
    let result = run(cli, &mut out);
    let _ = io::stdout().write_all(out.as_bytes());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
