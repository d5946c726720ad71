use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use beststop::closed_form::Mode;
use beststop::PatternClass;

#[derive(Debug, Parser)]
#[command(name = "beststop", version, about = "Best-choice game on pattern-avoiding interview orders")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Directory for cached triangle rows.
    #[arg(long, global = true, env = "BESTSTOP_CACHE")]
    pub cache_dir: Option<PathBuf>,

    /// Largest class size that may be enumerated.
    #[arg(long, global = true, default_value_t = 5_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_class_size: u64,

    /// Largest rank for which a prefix tree is built.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_tree_rank: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Strike,
    Trigger,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Strike => Mode::Strike,
            ModeArg::Trigger => Mode::Trigger,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Backwards induction over the materialized prefix tree.
    Tree,
    /// Closed forms and the B° triangle; needs no enumeration.
    Formula,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Triangle,
    Sigma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    /// Shifted-ballot fit of the (1,4,9)-frozen strike triangle and its limit.
    #[value(name = "asymptote-321")]
    Asymptote321,
    /// Same fit for the four-rule frozen trigger triangle.
    TriggerBound,
    /// The 321/312 correspondence and its table.
    West,
    /// The 231/132 isomorphism for every rank up to --n.
    Upsilon,
    /// Generic isomorphism check between --class and --other.
    Isomorphism,
    /// Optimal values split the six classes into the four expected groups.
    Wilf,
    /// Positional play at N-3 on Av(321) against its closed form.
    #[value(name = "positional-321")]
    Positional321,
    /// Threshold play on Av(321) against the tree optimizer and the triangle.
    #[value(name = "threshold-321")]
    Threshold321,
}

pub fn parse_class(s: &str) -> Result<PatternClass, String> {
    let c: PatternClass = s.parse().map_err(|e: beststop::Error| e.to_string())?;
    if c.known().is_none() {
        return Err(format!("{s:?} is not one of 231, 132, 321, 312, 123, 213, none"));
    }
    Ok(c)
}

#[derive(Debug, Args)]
pub struct ClassRank {
    /// Pattern class: 231, 132, 321, 312, 123, 213 or none.
    #[arg(long, value_parser = parse_class)]
    pub class: PatternClass,

    /// Rank N (number of candidates).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimal strike or trigger set and its exact value.
    Solve {
        #[command(flatten)]
        at: ClassRank,
        #[arg(long, value_enum, default_value_t = ModeArg::Strike)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = Method::Tree)]
        method: Method,
    },
    /// Prefix tree with strike and trigger tallies.
    Tree {
        #[command(flatten)]
        at: ClassRank,
    },
    /// Rows of the B° triangle, or its σ thresholds.
    Triangle {
        #[arg(long, value_enum, default_value_t = ModeArg::Strike)]
        mode: ModeArg,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        rows: u64,
        #[arg(long, value_enum, default_value_t = Emit::Triangle)]
        emit: Emit,
    },
    /// Runs a named check; exits 3 on mismatch.
    Verify {
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: Option<u64>,
        #[arg(long, value_parser = parse_class)]
        class: Option<PatternClass>,
        #[arg(long, value_parser = parse_class)]
        other: Option<PatternClass>,
    },
    /// Monte Carlo estimate of a strategy's success probability.
    Simulate {
        #[command(flatten)]
        at: ClassRank,
        /// Strategy descriptor, e.g. threshold:strike, positional:2, strike:{12,213}.
        #[arg(long)]
        strategy: String,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also compute the exact value by enumeration and report the z-score.
        #[arg(long)]
        exact: bool,
    },
    /// Exact success probability of a strategy by enumeration.
    Exact {
        #[command(flatten)]
        at: ClassRank,
        #[arg(long)]
        strategy: String,
    },
}
