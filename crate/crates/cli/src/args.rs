use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

#[derive(Debug, Parser)]
#[command(
    name = "repulsion",
    version,
    about = "Restricted partition functions, their quasipolynomials, and distances to perfect powers"
)]
pub struct Cli {
    /// Worker threads for scan and classify (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Directory for cached partition tables.
    #[arg(long, global = true, env = "REPULSION_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// p_B(n), the partitions of n into parts of size at most B.
    Pb {
        #[arg(long = "B", value_parser = clap::value_parser!(u32).range(1..))]
        bound: u32,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Certified quasipolynomial of p_B (2 <= B <= 8).
    Quasi {
        #[arg(long = "B", value_parser = clap::value_parser!(u32).range(1..))]
        bound: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Square values of p_3 on the residue class n = 6t + r.
    Pell {
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 4)]
        count: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Distance from p_B(n) to the nearest k-th power.
    Delta {
        #[arg(long = "B", value_parser = clap::value_parser!(u32).range(1..))]
        bound: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        k: u32,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Indices 1 <= n <= N where p_B(n) is within d of a k-th power.
    Scan {
        #[arg(long = "B", value_parser = clap::value_parser!(u32).range(1..))]
        bound: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        k: u32,
        #[arg(long = "N")]
        horizon: u64,
        #[arg(long, default_value_t = 0)]
        d: u64,
        /// Only report hits whose nearest base m is at least this.
        #[arg(long)]
        min_base: Option<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Classify the shifts Q_r(x) - t, |t| <= d, against k-th powers.
    Classify {
        #[arg(long = "B", value_parser = clap::value_parser!(u32).range(1..))]
        bound: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        k: u32,
        #[arg(long, default_value_t = 0)]
        d: u64,
        #[arg(long)]
        residue: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Integral points of b0 * y^k = f(x) with |x| <= xmax.
    CurvePoints {
        #[arg(long)]
        b0: BigInt,
        /// Coefficients, constant term first, as a JSON array of strings,
        /// e.g. '["1","3","3"]'.
        #[arg(long)]
        poly: String,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        k: u32,
        #[arg(long)]
        xmax: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Re-check every numerical claim; exits 1 if any fails.
    Reproduce {
        /// Run one group (quasi, partition, pell, shift, scan) or one claim by number.
        #[arg(long)]
        only: Option<String>,
    },
}
