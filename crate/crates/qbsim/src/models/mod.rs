//! The two charging models.
//!
//! [`field`]: two exchange-coupled qubits charged by a classical drive
//! with a harmonic and a static component; carries both the closed-form
//! trajectory and a midpoint-exponential numeric path.
//!
//! [`cavity`]: two exchange-coupled qubits charged by a single cavity
//! mode, restricted to the four states the dynamics actually connects.

pub mod cavity;
pub mod field;

pub use cavity::{
    cavity_battery_hamiltonian, cavity_evolve, cavity_hamiltonian, cavity_reduced_battery,
    free_battery_hamiltonian, CavityConfig,
};
pub use field::{
    field_analytic_state, field_battery_hamiltonian, field_evolve_numeric, field_hamiltonian,
    field_paper_report, field_phase, FieldConfig, FieldMode, FieldPaperReport,
};
