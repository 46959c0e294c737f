//! `braidosc`: batch verification of the braided Hopf catalog, table
//! re-derivation, Fock-space checks and exchange relations.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "braidosc", version, about = "Braided Hopf algebra structures on generalized q-oscillators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the braided Hopf axioms for catalogued solutions.
    Verify(VerifyArgs),
    /// Enumerate all solutions at generic numeric parameters and compare with the catalog.
    Derive(DeriveArgs),
    /// Occupation numbers and relation residuals of truncated Fock representations.
    Fock(FockArgs),
    /// Print the two-copy exchange relations induced by the braiding.
    Exchange(ExchangeArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("which").args(["solution", "all"])))]
#[command(group(ArgGroup::new("how").args(["symbolic", "numeric"])))]
pub struct VerifyArgs {
    /// Table id (e.g. 1, 3, 5, 4, bm1, bm2, lit); every table when omitted.
    #[arg(long)]
    pub table: Option<String>,
    /// Solution id within the table.
    #[arg(long)]
    pub solution: Option<String>,
    /// Every solution of the selected table(s) (the default).
    #[arg(long)]
    pub all: bool,
    /// Exact symbolic check with free symbols kept free (the default).
    #[arg(long)]
    pub symbolic: bool,
    /// Numeric check; optional comma-separated assignment such as q=2,Q1=9/4
    /// over the table's default point.
    #[arg(long, num_args = 0..=1, default_missing_value = "", value_name = "ASSIGN")]
    pub numeric: Option<String>,
    /// Replace a structure constant or oscillator parameter: NAME=EXPR.
    #[arg(long = "override", value_name = "NAME=EXPR")]
    pub overrides: Vec<String>,
    /// Substitute a symbol of the solution: SYMBOL=EXPR (e.g. g1=q^2).
    #[arg(long = "set", value_name = "SYMBOL=EXPR")]
    pub sets: Vec<String>,
    /// Write the structured report (JSON) here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Use this catalog file instead of the built-in one.
    #[arg(long)]
    pub catalog: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("family").args(["type1", "type2"]).required(true)))]
pub struct DeriveArgs {
    /// Type 1: aa* − Q1 a*a = q^{2N} (Q2 = 1; Q3, Q4 unknown).
    #[arg(long)]
    pub type1: bool,
    /// Type 2: aa* − Q1 a*a = q^N (Q3 = 1; Q2, Q4 unknown).
    #[arg(long)]
    pub type2: bool,
    #[arg(long, default_value = "2")]
    pub q: String,
    #[arg(long = "Q1")]
    pub q1: Option<String>,
    /// Proceed at non-generic parameters.
    #[arg(long)]
    pub force: bool,
    #[arg(long, value_enum, default_value_t = Order::Ascending)]
    pub order: Order,
    #[arg(long, default_value_t = 200_000)]
    pub max_nodes: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub catalog: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Order {
    Ascending,
    Descending,
}

#[derive(Args)]
#[command(group(ArgGroup::new("family").args(["type1", "type2", "bm1", "bm2"]).required(true)))]
pub struct FockArgs {
    #[arg(long)]
    pub type1: bool,
    #[arg(long)]
    pub type2: bool,
    /// Biedenharn–Macfarlane type 1 (Q1 = q^-2).
    #[arg(long)]
    pub bm1: bool,
    /// Biedenharn–Macfarlane type 2 (Q1 = q^-1).
    #[arg(long)]
    pub bm2: bool,
    #[arg(long, default_value = "2")]
    pub q: String,
    /// p^-2 (= Q1) for type 1.
    #[arg(long)]
    pub p_inv_sq: Option<String>,
    /// p^-1 (= Q1) for type 2.
    #[arg(long)]
    pub p_inv: Option<String>,
    /// Highest state |L⟩ (at least 1).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub levels: u32,
    #[arg(long, value_enum, default_value_t = GaugeArg::Exact)]
    pub gauge: GaugeArg,
    /// Use the limit form when Q1 equals q^2 (type 1) or q (type 2).
    #[arg(long)]
    pub limit: bool,
    /// Print CSV instead of the text table.
    #[arg(long)]
    pub csv: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum GaugeArg {
    Exact,
    Hermitian,
}

#[derive(Args)]
pub struct ExchangeArgs {
    #[arg(long)]
    pub table: String,
    #[arg(long)]
    pub solution: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub catalog: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // Timing stays off the report so reports are byte-identical across runs.
    let start = Instant::now();
    let result = match cli.command {
        Command::Verify(a) => commands::verify(&a),
        Command::Derive(a) => commands::derive(&a),
        Command::Fock(a) => commands::fock(&a),
        Command::Exchange(a) => commands::exchange(&a),
    };
    eprintln!("wall time: {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
