//! rsdl: batch front end for exact Reed-Solomon distance-distribution
//! counts, closed-form checks, bound sweeps, censuses, and the verification
//! suites.

mod commands;
mod output;

use clap::{Args, Parser, Subcommand};
use output::Format;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "rsdl", version, about = "exact distance-distribution toolkit for Reed-Solomon codes over small finite fields", max_term_width = 100)]
struct Cli {
    #[command(flatten)]
    global: Global,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Global {
    /// Field spec: q=5, q=2^3, or q=9 mod=[1,0,1]
    #[arg(long, global = true)]
    field: Option<String>,

    /// Enumeration budget (items per oracle call); env RSDL_BUDGET overrides
    /// the default
    #[arg(long, global = true)]
    budget: Option<u64>,

    /// Display precision in bits for upward-rounded bound columns
    #[arg(long, global = true, default_value_t = 128)]
    precision: u32,

    /// Output format (csv or json); each command has a natural default
    #[arg(long, global = true)]
    format: Option<Format>,

    /// Output path (stdout when absent)
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads (0 = library default); results are identical for any
    /// worker count
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,

    /// Seed for randomized sweeps
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

impl Global {
    pub fn field_spec(&self) -> &Option<String> {
        &self.field
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn format(&self) -> Option<Format> {
        self.format
    }

    pub fn out(&self) -> &Option<PathBuf> {
        &self.out
    }

    pub fn budget(&self) -> u64 {
        self.budget
            .or_else(|| {
                std::env::var("RSDL_BUDGET")
                    .ok()
                    .and_then(|v| v.parse().ok())
            })
            .unwrap_or(rsdl_core::DEFAULT_BUDGET)
    }

    pub fn digits(&self) -> usize {
        rsdl_core::formulas::digits_for_bits(self.precision)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Count polynomials g (deg < k) by the number of distinct roots of f+g
    Count(CountArgs),
    /// Distance distribution of a received word
    Distribution(DistributionArgs),
    /// Exhaustive deep-hole census of a small code
    Census(CensusArgs),
    /// Bound verification sweeps
    Bounds(BoundsCmd),
    /// Run a verification suite; nonzero exit on any failure
    Verify(VerifyArgs),
    /// Character-sum sweeps
    Weil(WeilCmd),
    /// Sieve identity checks
    Sieve(SieveCmd),
    /// Asymptotic-regime diagnostic table
    Regime(RegimeArgs),
    /// Oracle fixture files
    Fixtures(FixturesCmd),
}

#[derive(Args)]
pub struct CountArgs {
    /// Code dimension k (g ranges over polynomials of degree < k)
    #[arg(long)]
    pub k: usize,
    /// The fixed polynomial f, e.g. "x^3" or "[0,0,0,1]"
    #[arg(long)]
    pub f: String,
    /// Single root count r
    #[arg(long, conflicts_with = "all_r")]
    pub r: Option<usize>,
    /// All r from 0 through q
    #[arg(long)]
    pub all_r: bool,
    /// Attach closed-form main term, bound, and pass flag columns
    #[arg(long)]
    pub check_formula: bool,
}

#[derive(Args)]
pub struct DistributionArgs {
    #[arg(long)]
    pub k: usize,
    /// Received word as comma-separated value indices
    #[arg(long, conflicts_with = "poly")]
    pub word: Option<String>,
    /// Received word given as evaluations of this polynomial
    #[arg(long)]
    pub poly: Option<String>,
    /// Use the evaluation set F_q^* instead of F_q
    #[arg(long)]
    pub primitive: bool,
}

#[derive(Args)]
pub struct CensusArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub primitive: bool,
}

#[derive(Args)]
struct BoundsCmd {
    #[command(subcommand)]
    action: BoundsAction,
}

#[derive(Subcommand)]
enum BoundsAction {
    /// Seeded sweep of count bounds: CSV of q,p,k,m,r,f,main,bound,oracle,holds,gap
    Sweep(BoundsSweepArgs),
}

#[derive(Args)]
pub struct BoundsSweepArgs {
    /// Field sizes, comma separated
    #[arg(long, value_delimiter = ',', default_values_t = vec![5u64, 7, 8, 9])]
    pub q: Vec<u64>,
    /// Number of random instances
    #[arg(long, default_value_t = 100)]
    pub count: usize,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Suite: formulas, bounds, sieve, weil, n2, or metrics
    pub suite: String,
    /// Field sizes, comma separated (suite-specific default)
    #[arg(long, value_delimiter = ',')]
    pub q: Option<Vec<u64>>,
    /// Largest dimension for the formula grid
    #[arg(long, default_value_t = 6)]
    pub kmax: usize,
    /// Largest tuple length for the sieve suite
    #[arg(long)]
    pub k: Option<usize>,
    /// Largest power-of-x modulus exponent for the character suite
    #[arg(long)]
    pub m: Option<usize>,
    /// Instance count for the seeded suites
    #[arg(long)]
    pub count: Option<usize>,
    /// Trial count for the sieve suite
    #[arg(long)]
    pub trials: Option<usize>,
}

#[derive(Args)]
struct WeilCmd {
    #[command(subcommand)]
    action: WeilAction,
}

#[derive(Subcommand)]
enum WeilAction {
    /// Per-character CSV of |M_k| against C(n-1,k) sqrt(q)^k plus root checks
    Sweep(WeilSweepArgs),
}

#[derive(Args)]
pub struct WeilSweepArgs {
    /// Modulus x^{m+1} exponent (uses --field for the base field)
    #[arg(long, conflicts_with = "modulus")]
    pub m: Option<usize>,
    /// Explicit monic modulus polynomial
    #[arg(long)]
    pub modulus: Option<String>,
    /// Relative tolerance for root-modulus comparisons
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
}

#[derive(Args)]
struct SieveCmd {
    #[command(subcommand)]
    action: SieveAction,
}

#[derive(Subcommand)]
enum SieveAction {
    /// Run the sieve identity suite and print a pass matrix
    Selftest(SieveSelftestArgs),
}

#[derive(Args)]
pub struct SieveSelftestArgs {
    /// Largest tuple length
    #[arg(long, default_value_t = 5)]
    pub k: usize,
    /// Largest ground-set size
    #[arg(long, default_value_t = 7)]
    pub omega: u32,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
}

#[derive(Args)]
pub struct RegimeArgs {
    /// Dimension scale c in (0, 1), as a decimal
    #[arg(long)]
    pub c: String,
    /// Excess-degree exponent delta in (0, 1/4)
    #[arg(long)]
    pub delta: String,
    /// Root-count exponent lambda in (0, delta)
    #[arg(long)]
    pub lambda: String,
    /// Primes, comma separated
    #[arg(long, value_delimiter = ',')]
    pub primes: Vec<u64>,
}

#[derive(Args)]
struct FixturesCmd {
    #[command(subcommand)]
    action: FixturesAction,
}

#[derive(Subcommand)]
enum FixturesAction {
    /// Write the built-in oracle fixture records as JSON
    Generate,
}

fn main() {
    let cli = Cli::parse();
    let workers = cli.global.workers;
    let code = rsdl_core::exec::with_workers(workers, move || run(cli));
    std::process::exit(code);
}

fn run(cli: Cli) -> i32 {
    let g = &cli.global;
    let result = match &cli.command {
        Command::Count(args) => commands::count(g, args),
        Command::Distribution(args) => commands::distribution(g, args),
        Command::Census(args) => commands::census(g, args),
        Command::Bounds(BoundsCmd {
            action: BoundsAction::Sweep(args),
        }) => commands::bounds_sweep(g, args),
        Command::Verify(args) => commands::verify(g, args),
        Command::Weil(WeilCmd {
            action: WeilAction::Sweep(args),
        }) => commands::weil_sweep(g, args),
        Command::Sieve(SieveCmd {
            action: SieveAction::Selftest(args),
        }) => commands::sieve_selftest(g, args),
        Command::Regime(args) => commands::regime(g, args),
        Command::Fixtures(FixturesCmd {
            action: FixturesAction::Generate,
        }) => commands::fixtures_generate(g),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
