//! `cf`: solve, tabulate and verify pointwise extremal problems for positive
//! definite functions.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use cf_core::group_solver::AdmmConfig;
use cf_core::linalg::ROOTS_SEED;
use cf_core::sweep::SweepConfig;
use cf_core::Field;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;

/// Exit codes.
pub const EXIT_OK: u8 = 0;
pub const EXIT_NOT_PD: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_SOLVER: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "cf",
    version,
    about = "Pointwise extremal constants for positive definite functions"
)]
struct Cli {
    #[command(flatten)]
    run: RunFlags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct RunFlags {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Seed for the polynomial root finder; CF_SEED takes precedence.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// ADMM penalty parameter.
    #[arg(long, global = true, default_value_t = AdmmConfig::default().rho)]
    rho: f64,
    #[arg(long, global = true, default_value_t = AdmmConfig::default().tol_primal)]
    tol_primal: f64,
    #[arg(long, global = true, default_value_t = AdmmConfig::default().tol_dual)]
    tol_dual: f64,
    #[arg(long, global = true, default_value_t = AdmmConfig::default().max_iter)]
    max_iter: usize,
    /// Coarse angle grid of the complex sweep.
    #[arg(long, global = true, default_value_t = SweepConfig::default().grid)]
    grid: usize,
    /// Golden-section stopping width.
    #[arg(long, global = true, default_value_t = SweepConfig::default().angle_tol)]
    angle_tol: f64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve CF_G(Ω, z) or K_G(Ω, z) on a finite group.
    Solve(SolveArgs),
    /// Reproduce a table of closed-form values.
    Table(TableArgs),
    /// Compare the group solver with the cyclic reduction on a batch of instances.
    Verify(VerifyArgs),
    /// Fejér–Riesz factorization of a nonnegative sequence on Z or Z_m.
    Factor(FactorArgs),
    /// Positive-definiteness certificate of a function on a group.
    Checkpd(CheckpdArgs),
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// `cyclic:m`, `dihedral:n`, `quaternion`, `symmetric:n`, `product(A,B)` or `csv:PATH`.
    #[arg(long)]
    pub group: String,
    /// `all`, `subgroup`, `window:N` (= {z^n : |n| <= N}) or element indices `0,1,3`;
    /// parts may be joined with `+`. Replaced by Ω ∩ Ω⁻¹. Every set is open in a
    /// finite group, so no topological condition applies.
    #[arg(long)]
    pub omega: String,
    /// Element index of z.
    #[arg(long)]
    pub z: usize,
    #[arg(long, value_parser = parse_field, default_value = "complex")]
    pub field: Field,
    /// Evaluate at z^nu; Ω windows stay relative to z.
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub nu: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum TableKind {
    /// CF on Z for the window [-N, N] against cos(π/(N+2)).
    CfWindow,
    /// K_m(Z_m \ {m/2}) against (1 + cos(2π/m))/2 for even m.
    KmPunctured,
    /// Exhaustive K_m <= CF_m <= K_m / cos(π/m) check over all symmetric sets.
    Ruzsa,
    /// K_m of a fixed window for growing m.
    Ladder,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub kind: TableKind,
    /// First N (cf_window) or m (km_punctured, ruzsa).
    #[arg(long)]
    pub from: Option<usize>,
    /// Last N or m, inclusive.
    #[arg(long)]
    pub to: Option<usize>,
    /// Field for cf_window.
    #[arg(long, value_parser = parse_field, default_value = "complex")]
    pub field: Field,
    /// Window radius for the ladder.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Moduli for the ladder, comma separated; default 2N+1..=24.
    #[arg(long, value_delimiter = ',')]
    pub moduli: Vec<usize>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Instance file (`group ; omega ; z [; real ; complex]` per line); the built-in matrix by default.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FactorArgs {
    /// Comma-separated values ψ(-N..=N), or ψ(0..m) with --modular; entries like `0.5` or `1+2i`.
    #[arg(long, conflicts_with = "file", allow_hyphen_values = true)]
    pub values: Option<String>,
    /// JSON input: a windowed sequence, or a group function with --modular.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Factor on Z_m instead of Z.
    #[arg(long)]
    pub modular: bool,
    /// Allowed negativity of the symbol or transform.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct CheckpdArgs {
    #[arg(long)]
    pub group: String,
    /// Comma-separated values f(0), ..., f(|G|-1).
    #[arg(long, conflicts_with = "file", allow_hyphen_values = true)]
    pub values: Option<String>,
    /// Group function JSON.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Relative eigenvalue tolerance.
    #[arg(long, default_value_t = cf_core::posdef::DEFAULT_TOLERANCE)]
    pub tol: f64,
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse().map_err(|e: cf_core::Error| e.to_string())
}

/// Settings shared by all commands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub format: Format,
    pub seed: u64,
    pub admm: AdmmConfig,
    pub sweep: SweepConfig,
}

impl RunConfig {
    fn from_flags(flags: &RunFlags) -> Result<Self, commands::Failure> {
        let seed = match std::env::var("CF_SEED") {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|e| commands::Failure::usage(format!("bad CF_SEED '{v}': {e}")))?,
            Err(_) => flags.seed.unwrap_or(ROOTS_SEED),
        };
        let admm = AdmmConfig {
            rho: flags.rho,
            tol_primal: flags.tol_primal,
            tol_dual: flags.tol_dual,
            max_iter: flags.max_iter,
        };
        let sweep = SweepConfig {
            grid: flags.grid,
            angle_tol: flags.angle_tol,
        };
        admm.validate()?;
        sweep.validate()?;
        Ok(Self {
            format: flags.format,
            seed,
            admm,
            sweep,
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = RunConfig::from_flags(&cli.run).and_then(|cfg| match cli.command {
        Command::Solve(a) => commands::solve(&cfg, &a),
        Command::Table(a) => commands::table(&cfg, &a),
        Command::Verify(a) => commands::verify(&cfg, &a),
        Command::Factor(a) => commands::factor(&cfg, &a),
        Command::Checkpd(a) => commands::checkpd(&cfg, &a),
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
