//! Two exchange-coupled qubits charged by a single cavity mode.
//!
//! Starting from `n` photons with both qubits de-excited, the rotating
//! dynamics only connects four states, ordered
//! (|n, g, g>, |n-1, e, g>, |n-1, g, e>, |n-2, e, e>); the model is the
//! 4x4 Hamiltonian expanded in that basis. Battery-side operators use
//! the ordering (|gg>, |eg>, |ge>, |ee>).

use crate::linalg::{
    evolve_static, ComplexMatrix, DensityMatrix, HermitianOperator, StateVector, C64,
};
use crate::{Error, Result};

/// Battery basis indices.
pub const B_GG: usize = 0;
pub const B_EG: usize = 1;
pub const B_GE: usize = 2;
pub const B_EE: usize = 3;

/// Cavity-model parameters.
#[derive(Debug, Clone, Copy)]
pub struct CavityConfig {
    /// Initial photon number; the four-state basis needs `n >= 2`.
    pub photons: u32,
    /// Cavity frequency.
    pub omega_a: f64,
    /// Matter-radiation coupling.
    pub omega_g: f64,
    /// Qubit gap.
    pub delta: f64,
    /// Exchange strength.
    pub j1: f64,
    /// Anisotropy of the zz coupling (dimensionless).
    pub j2: f64,
}

impl CavityConfig {
    pub fn new(
        photons: u32,
        omega_a: f64,
        omega_g: f64,
        delta: f64,
        j1: f64,
        j2: f64,
    ) -> Result<Self> {
        let cfg = Self {
            photons,
            omega_a,
            omega_g,
            delta,
            j1,
            j2,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.photons < 2 {
            return Err(Error::InvalidInput(format!(
                "initial photon number must satisfy n >= 2 (the basis contains |n-2, e, e>), got {}",
                self.photons
            )));
        }
        for (name, v) in [
            ("omega-a", self.omega_a),
            ("omega-g", self.omega_g),
            ("delta", self.delta),
        ] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidInput(format!("{name} must be > 0")));
            }
        }
        if !self.j1.is_finite() || !self.j2.is_finite() {
            return Err(Error::InvalidInput("J1 and J2 must be finite".into()));
        }
        Ok(())
    }
}

/// Full charger-plus-battery Hamiltonian in the four-state basis.
///
/// Diagonal: `n omega_a + delta (j2 - 1)`, twice
/// `omega_a (n - 1) - j2 delta`, and `(n - 2) omega_a + delta (j2 + 1)`.
/// Couplings: `omega_g sqrt(n)` out of the n-photon state,
/// `omega_g sqrt(n - 1)` into the doubly excited state, and a
/// `2 j1 delta` flip-flop between the singly excited pair.
pub fn cavity_hamiltonian(cfg: &CavityConfig) -> Result<HermitianOperator> {
    cfg.validate()?;
    let n = cfg.photons as f64;
    let (wa, wg, delta, j1, j2) = (cfg.omega_a, cfg.omega_g, cfg.delta, cfg.j1, cfg.j2);
    let mut m = ComplexMatrix::from_real_diag(&[
        n * wa + delta * (j2 - 1.0),
        wa * (n - 1.0) - j2 * delta,
        wa * (n - 1.0) - j2 * delta,
        (n - 2.0) * wa + delta * (j2 + 1.0),
    ]);
    let g_up = C64::new(wg * n.sqrt(), 0.0);
    let g_dn = C64::new(wg * (n - 1.0).sqrt(), 0.0);
    let ff = C64::new(2.0 * j1 * delta, 0.0);
    m[(0, 1)] = g_up;
    m[(1, 0)] = g_up;
    m[(0, 2)] = g_up;
    m[(2, 0)] = g_up;
    m[(1, 3)] = g_dn;
    m[(3, 1)] = g_dn;
    m[(2, 3)] = g_dn;
    m[(3, 2)] = g_dn;
    m[(1, 2)] = ff;
    m[(2, 1)] = ff;
    Ok(HermitianOperator::new(m).expect("construction is Hermitian"))
}

/// Battery part of the Hamiltonian in the (|gg>, |eg>, |ge>, |ee>)
/// basis: the four-state diagonal with the cavity energies removed,
/// plus the `2 j1 delta` flip-flop.
pub fn cavity_battery_hamiltonian(cfg: &CavityConfig) -> HermitianOperator {
    let (delta, j1, j2) = (cfg.delta, cfg.j1, cfg.j2);
    let mut m = ComplexMatrix::from_real_diag(&[
        delta * (j2 - 1.0),
        -delta * j2,
        -delta * j2,
        delta * (j2 + 1.0),
    ]);
    let ff = C64::new(2.0 * j1 * delta, 0.0);
    m[(B_EG, B_GE)] = ff;
    m[(B_GE, B_EG)] = ff;
    HermitianOperator::new(m).expect("construction is Hermitian")
}

/// Non-interacting battery Hamiltonian `(delta / 2) (sigma_z + sigma_z)`
/// in the (|gg>, |eg>, |ge>, |ee>) basis: `diag(-delta, 0, 0, delta)`.
///
/// Its ground state is the uncharged |gg>, which makes it the natural
/// reference for extractable work along a charging trajectory.
pub fn free_battery_hamiltonian(delta: f64) -> HermitianOperator {
    HermitianOperator::new(ComplexMatrix::from_real_diag(&[-delta, 0.0, 0.0, delta]))
        .expect("diagonal matrix is Hermitian")
}

/// Evolves the four-state system from |n, g, g> for time `t`.
pub fn cavity_evolve(cfg: &CavityConfig, t: f64) -> Result<StateVector> {
    let h = cavity_hamiltonian(cfg)?;
    evolve_static(&h, &StateVector::basis_state(4, 0), t)
}

/// Reduced battery state of a four-state vector, in the
/// (|gg>, |eg>, |ge>, |ee>) basis.
///
/// The only coherence that survives tracing out the cavity is between
/// |eg> and |ge| (same photon sector); every cross-sector coherence is
/// exactly zero.
pub fn cavity_reduced_battery(psi: &StateVector) -> DensityMatrix {
    assert_eq!(psi.dim(), 4, "four-state vector expected");
    let c = psi.amplitudes();
    let mut m = ComplexMatrix::zeros(4, 4);
    for i in 0..4 {
        m[(i, i)] = C64::new(c[i].norm_sqr(), 0.0);
    }
    m[(B_EG, B_GE)] = c[1] * c[2].conj();
    m[(B_GE, B_EG)] = c[2] * c[1].conj();
    DensityMatrix::new(m).expect("reduction of a normalized state is a density matrix")
}

/// Reorders a battery-basis state (|gg>, |eg>, |ge>, |ee>) into the
/// (|ee>, |eg>, |ge>, |gg>) ordering used by the Pauli decomposition.
pub fn spin_order_state(rho: &DensityMatrix) -> DensityMatrix {
    assert_eq!(rho.dim(), 4);
    let perm = [B_EE, B_EG, B_GE, B_GG];
    let m = ComplexMatrix::from_fn(4, 4, |i, j| rho.matrix()[(perm[i], perm[j])]);
    DensityMatrix::new(m).expect("permutation preserves density-matrix structure")
}
