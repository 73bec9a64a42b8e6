//! Edge-weighted decision diagrams for quantum circuit simulation.
//!
//! Operation DDs can be built in two modes. [`Mode::Legacy`] pads every gate
//! with identity nodes up to the full register, the conventional layout.
//! [`Mode::New`] never stores a node whose quadrants are `[e, 0, 0, e]`:
//! an edge into a lower node stands for the identity on every level in
//! between, and arithmetic expands those levels on the fly.
//!
//! The crate is organised bottom-up:
//!
//! * [`weights`] interns complex edge weights with a fixed tolerance,
//! * [`store`] owns the nodes together with their reference counts and
//!   garbage collection, plus the compute table,
//! * [`vdd`] and [`mdd`] build state and operator diagrams,
//! * [`arith`] multiplies and adds diagrams,
//! * [`circuit`] and [`bench`] provide circuits (an OpenQASM 2 subset and the
//!   benchmark generators),
//! * [`sim`] drives simulations and exports their results.

pub mod arith;
pub mod bench;
pub mod circuit;
pub mod cli;
pub mod engine;
pub mod error;
pub mod gates;
pub mod mdd;
pub mod sim;
pub mod store;
pub mod vdd;
pub mod weights;

pub use engine::{Engine, EngineConfig, Mode};
pub use error::{Error, Result};
pub use mdd::{Control, GateSpec};
pub use num_complex::Complex64;
pub use store::{Edge, Matrix, MatrixEdge, NodeId, OpTag, StoreStats, Vector, VectorEdge};
pub use weights::{WeightRef, WEIGHT_TOLERANCE};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Runs a recursive step, growing the stack first when it runs low.
///
/// Recursion depth follows the number of qubits, so registers of a few
/// thousand qubits would overflow a default thread stack.
#[inline]
pub(crate) fn deep<R>(f: impl FnOnce() -> R) -> R {
    stacker::maybe_grow(128 * 1024, 16 * 1024 * 1024, f)
}
