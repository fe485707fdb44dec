//! Library side of the `repulsion` binary: argument types, subcommand
//! implementations and the reproduction claims, kept here so the test
//! suites can drive them without spawning a process.

pub mod args;
pub mod claims;
pub mod commands;
pub mod output;

use std::fmt;
use std::path::PathBuf;

use repulsion_core::partition::TableCache;

/// Exit status 2 for bad arguments, 1 for computations that fail or do
/// not certify.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Failure(m) => write!(f, "error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

/// What a subcommand printed and whether it succeeded. `reproduce` prints
/// its report even when a claim fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub success: bool,
}

impl Outcome {
    pub fn ok(text: String) -> Self {
        Outcome {
            text,
            success: true,
        }
    }
}

/// The cache directory: the flag or `REPULSION_CACHE_DIR` if given,
/// otherwise `repulsion-cache` under the system temp directory.
pub fn cache_for(dir: Option<PathBuf>) -> TableCache {
    TableCache::new(dir.unwrap_or_else(|| std::env::temp_dir().join("repulsion-cache")))
}

pub fn run(cli: args::Cli) -> Result<Outcome, CliError> {
    if let Some(w) = cli.workers {
        if w == 0 {
            return Err(CliError::Usage("--workers must be at least 1".into()));
        }
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global();
    }
    let cache = cache_for(cli.cache_dir);
    commands::dispatch(cli.command, &cache)
}
