use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use comvar::bounds::{Composition, DEFAULT_TOP};
use comvar::pointcount::DEFAULT_BUDGET;
use comvar::Modulus;

#[derive(Parser, Debug, Clone, Serialize)]
#[command(
    name = "comvar",
    version,
    about = "Exact computations on varieties of commuting triangular matrix pairs"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct GlobalArgs {
    /// Maximum number of enumerated candidates.
    #[arg(
        long,
        global = true,
        env = "COMVAR_BUDGET",
        default_value_t = DEFAULT_BUDGET,
        value_parser = clap::value_parser!(u64).range(1..)
    )]
    pub budget: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VarietyKind {
    Nt,
    Ct,
    #[value(name = "nt-j")]
    NtJ,
    Vmpq,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Dimension-bound certificate of one block composition.
    Bound {
        #[arg(long, value_parser = parse_composition)]
        composition: Composition,
        /// Checked against the sum of the blocks when given.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Scan every composition of n.
    Search {
        #[arg(long)]
        n: usize,
        /// Length of the ranking of largest bounds.
        #[arg(long, default_value_t = DEFAULT_TOP)]
        top: usize,
    },
    /// Exact point counts and a dimension estimate.
    Count {
        #[arg(long, value_enum)]
        variety: VarietyKind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_parser = parse_composition)]
        composition: Option<Composition>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        /// Rank cap on A (vmpq only).
        #[arg(long)]
        rank_a: Option<usize>,
        /// Rank cap on B (vmpq only).
        #[arg(long)]
        rank_b: Option<usize>,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5", value_parser = parse_prime)]
        primes: Vec<Modulus>,
    },
    /// Checks NT_4 = {x23 = y23 = 0} ∪ {rank (X12 X23 X34) <= 1} over F_q.
    ExampleA {
        #[arg(long, value_parser = parse_prime)]
        q: Modulus,
    },
    /// Components of {AB = 0}, optionally checked against point counts.
    Lemma11 {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        verify: bool,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5", value_parser = parse_prime)]
        primes: Vec<Modulus>,
    },
    /// Minimal polynomial, projectors and block partition of a triangular
    /// matrix or commuting pair read from a file.
    Spectral {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Plücker coordinates of a pencil read from a file.
    Gamma {
        #[arg(long)]
        pair: PathBuf,
    },
    /// Compares the three linear equations on P^5 with the image of
    /// commuting 2x2 pencils.
    ExampleE {
        #[arg(long, value_parser = parse_prime)]
        q: Modulus,
    },
    /// Checks the linear equations on the Plücker image of NT_4.
    Gamma4 {
        #[arg(long, value_parser = parse_prime)]
        q: Modulus,
    },
    /// Checks that the anti-diagonal reflection preserves NT_n.
    Involution {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_prime)]
        q: Modulus,
        /// Random samples when exhaustive enumeration is not used.
        #[arg(long, default_value_t = 1000)]
        samples: u64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Bound { .. } => "bound",
            Command::Search { .. } => "search",
            Command::Count { .. } => "count",
            Command::ExampleA { .. } => "example-a",
            Command::Lemma11 { .. } => "lemma11",
            Command::Spectral { .. } => "spectral",
            Command::Gamma { .. } => "gamma",
            Command::ExampleE { .. } => "example-e",
            Command::Gamma4 { .. } => "gamma4",
            Command::Involution { .. } => "involution",
        }
    }
}

fn parse_composition(s: &str) -> Result<Composition, String> {
    s.parse().map_err(|e: comvar::bounds::BoundsError| e.to_string())
}

fn parse_prime(s: &str) -> Result<Modulus, String> {
    let p: u64 = s.trim().parse().map_err(|_| format!("not an integer: {s:?}"))?;
    Modulus::new(p).map_err(|e| e.to_string())
}
