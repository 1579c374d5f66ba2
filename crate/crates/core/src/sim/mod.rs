//! Dense state-vector simulator.
//!
//! Qubit `k` is bit `k` of the basis-state index (little-endian). Gates are
//! applied natively; [`GateCounter`] tallies what each gate would cost once
//! decomposed into single-qubit gates and singly-controlled gates.

mod counter;
mod layout;
mod matrix;
mod ncx;
mod sampling;
mod state;

pub use counter::GateCounter;
pub use layout::{Register, RegisterLayout};
pub use matrix::Matrix2;
pub use sampling::Histogram;
pub use state::{Control, StateVector, MAX_QUBITS};
