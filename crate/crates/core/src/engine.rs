use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::store::{ComputeTable, Matrix, NodeTable, Vector};
use crate::weights::{WeightTable, WEIGHT_TOLERANCE};

/// How operation DDs treat levels a gate does not act on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Every operation DD spans all levels; untouched levels hold explicit identity nodes.
    Legacy,
    /// Identity nodes are never stored; edges skip the levels they would occupy.
    New,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Legacy => "legacy",
            Mode::New => "new",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "legacy" | "old" => Ok(Mode::Legacy),
            "new" => Ok(Mode::New),
            other => Err(Error::Argument(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EngineConfig {
    pub mode: Mode,
    /// Entries per operation in the compute table; zero disables memoization.
    pub compute_table_capacity: usize,
    /// Initial per-table entry count that triggers an automatic collection.
    pub gc_threshold: usize,
    pub weight_tolerance: f64,
}

impl EngineConfig {
    pub fn new(mode: Mode) -> Self {
        EngineConfig {
            mode,
            compute_table_capacity: 1 << 16,
            gc_threshold: 1 << 15,
            weight_tolerance: WEIGHT_TOLERANCE,
        }
    }
}

/// One decision-diagram package instance owning all tables.
///
/// Engines share no state, so separate instances can live on separate threads.
pub struct Engine {
    pub(crate) config: EngineConfig,
    pub(crate) weights: WeightTable,
    pub(crate) vectors: NodeTable<Vector>,
    pub(crate) matrices: NodeTable<Matrix>,
    pub(crate) compute: ComputeTable,
    pub(crate) gc_runs: u64,
    pub(crate) peak_live: usize,
    /// Recursive (non-trivial) calls of the matrix-vector product.
    pub(crate) mv_recursions: u64,
}

impl Engine {
    pub fn new(mode: Mode) -> Self {
        Self::with_config(EngineConfig::new(mode))
    }

    pub fn with_config(config: EngineConfig) -> Self {
        Engine {
            weights: WeightTable::with_tolerance(config.weight_tolerance),
            vectors: NodeTable::new(config.gc_threshold),
            matrices: NodeTable::new(config.gc_threshold),
            compute: ComputeTable::new(config.compute_table_capacity),
            gc_runs: 0,
            peak_live: 0,
            mv_recursions: 0,
            config,
        }
    }

    pub fn mode(&self) -> Mode {
        self.config.mode
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn weights(&self) -> &WeightTable {
        &self.weights
    }

    pub fn weights_mut(&mut self) -> &mut WeightTable {
        &mut self.weights
    }

    pub fn mv_recursions(&self) -> u64 {
        self.mv_recursions
    }
}
