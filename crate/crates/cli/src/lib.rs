//! Batch front end for `zk-core`: reads complexes as JSON, runs one analysis
//! per invocation and writes a deterministic JSON report.
//!
//! Exit codes: `0` success, `1` a check found a counterexample, `2`
//! malformed input or an I/O failure, `3` a size guard was exceeded.

pub mod cache;
pub mod input;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

pub use report::{run, AnalysisReport, Outcome};

pub const DEFAULT_MAX_N: usize = 12;
pub const DEFAULT_MAX_KN: usize = zk_core::permutohedron::MAX_KN;
pub const DEFAULT_CATALOG_N: usize = 5;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("{0}")]
    SizeGuard(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Malformed(_) | CliError::Io(_) => 2,
            CliError::SizeGuard(_) => 3,
        }
    }
}

impl From<zk_core::Error> for CliError {
    fn from(e: zk_core::Error) -> Self {
        match e {
            zk_core::Error::SizeGuard { .. } => CliError::SizeGuard(e.to_string()),
            e => CliError::Malformed(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "zk-workbench",
    version,
    about = "Moment-angle complex and Golod analyses"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Size guard on the number of vertices (for `catalog`, the largest `n`
    /// enumerated).
    #[arg(long, global = true)]
    pub max_n: Option<usize>,
    /// Exit 0 even when a check finds a counterexample.
    #[arg(long, global = true)]
    pub allow_counterexamples: bool,
}

#[derive(Debug, Args)]
pub struct ComplexArgs {
    /// JSON file `{"n": .., "facets": [[..], ..]}`.
    #[arg(long)]
    pub complex: PathBuf,
    /// Coefficients: 0 for the rationals, otherwise a prime.
    #[arg(long, default_value_t = 2)]
    pub field: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bigraded Betti numbers from the full subcomplexes.
    Betti(ComplexArgs),
    /// Bigraded table, products across supports and the suspension check.
    Hochster(ComplexArgs),
    /// Whether all products of positive-degree classes vanish.
    Products(ComplexArgs),
    /// Golod classification up to triple Massey products, with the series.
    Golod(ComplexArgs),
    /// Homology shadow of extractibility.
    Extractible(ComplexArgs),
    /// Faces of the complex dual to the permutohedron.
    Kn {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        verify_sphere: bool,
    },
    /// Randomized exact checks of the piecewise-rational maps.
    VerifyMaps {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Extra points to evaluate, see `docs/schemas.md`.
        #[arg(long)]
        points: Option<PathBuf>,
    },
    /// Runs the suite on every complex up to isomorphism (or on a file).
    Catalog {
        /// A complex or an array of complexes instead of the enumeration.
        #[arg(long)]
        complex: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        field: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory of the result cache.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Compares the two independent cohomology computations.
    Crosscheck(ComplexArgs),
}
