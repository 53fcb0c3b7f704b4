use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod context;

/// Skew constacyclic codes over F_{p^m}[u]/(u^k).
#[derive(Parser, Debug)]
#[command(name = "skewcode", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Central factorization of x^N - λ.
    Factor(FactorArgs),
    /// CRT idempotents of a central factorization.
    Idempotents(FactorArgs),
    /// Cardinality, torsion profile and dual of a code.
    CodeInfo(CodeArgs),
    /// Minimum distance of a code.
    Distance(CodeArgs),
    /// Every left ideal of R_k[x; Θ]/(f^j).
    Enumerate(EnumerateArgs),
    /// Recompute the reference MDS tables.
    VerifyTables(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct RingArgs {
    /// Characteristic.
    #[arg(long)]
    pub p: u32,
    /// Extension degree.
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    /// Nilpotency index of u.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Field modulus coefficients, low to high (default: Conway).
    #[arg(long, value_delimiter = ',')]
    pub field_modulus: Option<Vec<u32>>,
    /// θ = Frobenius^theta.
    #[arg(long, default_value_t = 0)]
    pub theta: usize,
    /// η_1, …, η_{k-1} in order (default 1).
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Len3,
    Len6,
    Generic,
}

#[derive(Args, Debug, Clone)]
pub struct FactorArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    /// x^{3p^s} - λ.
    #[arg(long, conflicts_with_all = ["len6", "generic"])]
    pub len3: bool,
    /// x^{6p^s} - λ.
    #[arg(long, conflicts_with_all = ["len3", "generic"])]
    pub len6: bool,
    /// Linear right factors of x^N - λ found by scanning (k = 1).
    #[arg(long, conflicts_with_all = ["len3", "len6"])]
    pub generic: bool,
    /// λ as a ring element.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    /// Exponent s in p^s.
    #[arg(long, default_value_t = 0)]
    pub s: u32,
    /// Length for --generic.
    #[arg(long)]
    pub n: Option<usize>,
    /// Largest field scanned by --generic.
    #[arg(long, default_value_t = skewcode::factor::DEFAULT_FIELD_CAP)]
    pub cap_field: u64,
}

impl FactorArgs {
    pub fn shape(&self) -> Shape {
        if self.len6 {
            Shape::Len6
        } else if self.generic {
            Shape::Generic
        } else {
            Shape::Len3
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct CodeArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    /// Ambient modulus as a polynomial in x (overrides --n/--lambda).
    #[arg(long, allow_hyphen_values = true)]
    pub modulus: Option<String>,
    /// Length for the modulus x^N - λ.
    #[arg(long)]
    pub n: Option<usize>,
    /// λ for the modulus x^N - λ.
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub lambda: String,
    /// Generator polynomial (repeatable).
    #[arg(long = "gen", allow_hyphen_values = true, required = true)]
    pub generators: Vec<String>,
    /// Build the code from generator matrix rows x^i·g instead of the ideal.
    #[arg(long)]
    pub generator_matrix: bool,
    /// log2 of the largest code searched exhaustively.
    #[arg(long, default_value_t = 22.0)]
    pub cap_exhaustive: f64,
}

#[derive(Args, Debug, Clone)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    /// Base polynomial f.
    #[arg(long, allow_hyphen_values = true)]
    pub f: String,
    /// Exponent j in f^j.
    #[arg(long, default_value_t = 1)]
    pub j: u64,
    /// Largest number of candidate forms.
    #[arg(long, default_value_t = 1_000_000)]
    pub cap_candidates: u64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Derived,
    Published,
    Both,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// 1, 2, 3, 4, 5, remark or all.
    pub table: String,
    #[arg(long, value_enum, default_value_t = Source::Derived)]
    pub source: Source,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

/// What a command concluded.
pub enum Outcome {
    Pass,
    Mismatch,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Factor(a) => commands::factor(a),
        Command::Idempotents(a) => commands::idempotents(a),
        Command::CodeInfo(a) => commands::code_info(a),
        Command::Distance(a) => commands::distance(a),
        Command::Enumerate(a) => commands::enumerate(a),
        Command::VerifyTables(a) => commands::verify_tables(a),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
