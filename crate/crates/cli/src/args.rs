use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "lattice-speedup", version, about = "Speedup exponents for path detection in lattice graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimal T_D over a (D, K) grid.
    Tables(TablesArgs),
    /// T_D and the advantage D + 1 - T_D for K = 1.
    Figure(FigureArgs),
    /// Re-evaluate the published K = 1 parameter blocks.
    Appendix(AppendixArgs),
    /// Limit constants r_inf, c_alpha and the precalculation bound F_alpha(D).
    Bounds(BoundsArgs),
    /// Exact generating-polynomial coefficient against its saddle bound.
    Coeff(CoeffArgs),
    /// Solve a Set Multicover instance file.
    Smc(SmcArgs),
    /// Exact query cost of the layered search on one box profile.
    Simulate(SimulateArgs),
    /// Classical path detection on a lattice instance file.
    Path(PathArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; stdout when omitted. A CSV file gets a `.json` sidecar.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Jittered restarts per cell, on top of the deterministic starts.
    #[arg(long, default_value_t = 16)]
    pub restarts: usize,
    #[arg(long, env = "LATTICE_SPEEDUP_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for the multi-start search; results do not depend on it.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    /// Digit range, `a..b` (inclusive) or a single value.
    #[arg(long = "D", default_value = "1..6", value_parser = parse_range)]
    pub d: (usize, usize),
    /// Level range, `a..b` (inclusive) or a single value.
    #[arg(long = "K", default_value = "1..5", value_parser = parse_range)]
    pub k: (usize, usize),
    /// Absolute tolerance for `--verify`.
    #[arg(long, default_value_t = 1e-3)]
    pub tol: f64,
    /// Compare against the embedded reference values.
    #[arg(long)]
    pub verify: bool,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(long = "D", default_value = "1..18", value_parser = parse_range)]
    pub d: (usize, usize),
    #[arg(long, default_value_t = 1e-3)]
    pub tol: f64,
    #[arg(long)]
    pub verify: bool,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct AppendixArgs {
    #[arg(long = "D", default_value = "1..6", value_parser = parse_range)]
    pub d: (usize, usize),
    #[arg(long)]
    pub verify: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Comma-separated alpha values in (0, 1/2).
    #[arg(long, default_value = "0.25", value_delimiter = ',')]
    pub alpha: Vec<f64>,
    /// Also tabulate F_alpha(D) / (D + 1) for this digit range.
    #[arg(long = "D", value_parser = parse_range)]
    pub d: Option<(usize, usize)>,
    #[arg(long, default_value_t = 1e-5)]
    pub tol: f64,
    /// Check the alpha = 1/4 constants against their reference values.
    #[arg(long)]
    pub verify: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolyKind {
    P,
    S,
}

#[derive(Debug, Args)]
pub struct CoeffArgs {
    /// Profile counts `n_0,n_1,...,n_D`.
    #[arg(long, required = true, value_delimiter = ',')]
    pub profile: Vec<u32>,
    /// Target exponents: one weight for P, `K + 2 - k` weights for S_k.
    #[arg(long = "W", required = true, value_delimiter = ',')]
    pub w: Vec<u32>,
    #[arg(long, value_enum, default_value = "p")]
    pub which: PolyKind,
    /// Search level for S_k.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Number of search levels for S_k.
    #[arg(long = "K", default_value_t = 1)]
    pub levels: usize,
    /// `T_0,...,T_D` for S_k; all ones when omitted.
    #[arg(long = "T", value_delimiter = ',')]
    pub t: Option<Vec<f64>>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum SmcSolver {
    #[default]
    Dp,
    Pairs,
    Brute,
}

#[derive(Debug, Args)]
pub struct SmcArgs {
    /// JSON instance `{"n": .., "D": .., "sets": [[..], ..]}` with 1-based elements.
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    pub solver: SmcSolver,
    /// Largest cover size tried by the brute-force solver.
    #[arg(long, default_value_t = 8)]
    pub k_max: u32,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Profile counts `n_0,n_1,...,n_D`.
    #[arg(long, required = true, value_delimiter = ',')]
    pub profile: Vec<u32>,
    /// Schedule rows separated by `;`, each `alpha_{k,1},...,alpha_{k,D}`.
    #[arg(long, value_parser = parse_schedule)]
    pub alpha: Schedule,
    /// Round layer weights to the nearest integer instead of down.
    #[arg(long)]
    pub no_floor: bool,
    /// Use explicit vertex enumeration instead of profile classes.
    #[arg(long)]
    pub naive: bool,
    /// `T_1,...,T_D` to compare the cost against.
    #[arg(long = "T", value_delimiter = ',')]
    pub t: Option<Vec<f64>>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PathArgs {
    /// JSON instance: `{"d": [..], "edges": [[tail, coord], ..]}` or
    /// `{"profile": [..], "p": .., "seed": ..}`.
    #[arg(long)]
    pub instance: PathBuf,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let parse = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("`{v}`: {e}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if a == 0 || a > b {
        return Err(format!("range `{s}` must satisfy 1 <= start <= end"));
    }
    Ok((a, b))
}

/// Alpha rows, `rows[k-1][d-1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule(pub Vec<Vec<f64>>);

pub fn parse_schedule(s: &str) -> Result<Schedule, String> {
    let row = |r: &str| -> Result<Vec<f64>, String> {
        r.split(',').map(|v| v.trim().parse::<f64>().map_err(|e| format!("`{v}`: {e}"))).collect()
    };
    s.split(';').map(row).collect::<Result<_, _>>().map(Schedule)
}
