//! Simulator for two-qubit quantum batteries charged by a classical drive
//! field or by a single cavity mode.
//!
//! The crate is organized in four layers:
//!
//! * [`linalg`] — dense complex linear algebra for dimensions up to 8:
//!   tensor products, a deterministic Hermitian eigensolver, unitary
//!   evolution, partial traces, expectation values.
//! * [`resources`] — quantum-resource functionals evaluated on states:
//!   stored energy, ergotropy and the passive state, conversion
//!   efficiency, von Neumann entropy, purity, Pauli decomposition, and
//!   the three-axis entropic steering pair.
//! * [`models`] — the two charging models: a driven two-qubit exchange
//!   battery (closed-form and numeric paths) and a cavity-coupled pair
//!   restricted to its four dynamically relevant states.
//! * [`runner`] — time-grid sweeps producing [`runner::Trace`]s,
//!   local-extrema detection, extremum-coincidence analysis, and
//!   CSV/SVG serialization.

pub mod linalg;
pub mod models;
pub mod resources;
pub mod runner;

mod error;

pub use error::{Error, Result};
