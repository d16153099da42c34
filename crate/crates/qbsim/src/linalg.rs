//! Dense complex linear algebra for Hilbert spaces of dimension <= 8.
//!
//! Row-major matrices over `Complex64`, a deterministic cyclic-Jacobi
//! Hermitian eigensolver, unitary time evolution, two-qubit partial
//! traces, and operator expectations. Every routine is a pure function
//! of its inputs; identical inputs produce identical outputs.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::{Error, Result};

pub type C64 = Complex64;

/// Elementwise Hermiticity tolerance.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Unit-trace tolerance for density matrices.
pub const DENSITY_TRACE_TOL: f64 = 1e-9;
/// Eigenvalue floor accepted as positive semidefinite.
pub const PSD_EIGENVALUE_FLOOR: f64 = -1e-9;
/// State-vector normalization tolerance.
pub const STATE_NORM_TOL: f64 = 1e-10;

const MAX_JACOBI_SWEEPS: usize = 100;
const JACOBI_OFF_THRESHOLD: f64 = 1e-14;

/// Dense complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be >= 1");
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from rows, rejecting ragged input.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::InvalidInput("matrix must be non-empty".into()));
        }
        let cols = rows[0].len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::InvalidInput(format!(
                    "ragged rows: row {} has {} entries, expected {}",
                    i + 1,
                    r.len(),
                    cols
                )));
            }
        }
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &z) in r.iter().enumerate() {
                m[(i, j)] = z;
            }
        }
        Ok(m)
    }

    /// Real diagonal matrix.
    pub fn from_real_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(d, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_complex(&self, factor: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest elementwise difference from `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if (self[(i, j)] - self[(j, i)].conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

/// Kronecker product: `(a ⊗ b)[(i·rb+k, j·cb+l)] = a[i,j]·b[k,l]`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let aij = a[(i, j)];
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    out[(i * b.rows() + k, j * b.cols() + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Pauli x in the (|e>, |g>) basis.
pub fn pauli_x() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2, 2);
    m[(0, 1)] = C64::new(1.0, 0.0);
    m[(1, 0)] = C64::new(1.0, 0.0);
    m
}

/// Pauli y in the (|e>, |g>) basis.
pub fn pauli_y() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2, 2);
    m[(0, 1)] = C64::new(0.0, -1.0);
    m[(1, 0)] = C64::new(0.0, 1.0);
    m
}

/// Pauli z in the (|e>, |g>) basis, so sigma_z |e> = +|e>.
pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real_diag(&[1.0, -1.0])
}

/// A validated Hermitian operator.
#[derive(Debug, Clone)]
pub struct HermitianOperator {
    mat: ComplexMatrix,
}

impl HermitianOperator {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::InvalidInput("operator must be square".into()));
        }
        if !mat.is_finite() {
            return Err(Error::InvalidInput(
                "operator entries must be finite".into(),
            ));
        }
        if !mat.is_hermitian(HERMITICITY_TOL) {
            return Err(Error::InvalidInput(format!(
                "operator is not Hermitian within {HERMITICITY_TOL:e}"
            )));
        }
        Ok(Self { mat })
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }
}

/// A normalized pure-state amplitude vector.
#[derive(Debug, Clone)]
pub struct StateVector {
    amplitudes: Vec<C64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidInput("state must be non-empty".into()));
        }
        if !amplitudes
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
        {
            return Err(Error::InvalidInput(
                "state amplitudes must be finite".into(),
            ));
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > STATE_NORM_TOL {
            return Err(Error::InvalidInput(format!(
                "state norm {norm} deviates from 1 by more than {STATE_NORM_TOL:e}"
            )));
        }
        Ok(Self { amplitudes })
    }

    /// Computational basis state |index> of the given dimension.
    pub fn basis_state(dim: usize, index: usize) -> Self {
        assert!(index < dim);
        let mut amplitudes = vec![C64::new(0.0, 0.0); dim];
        amplitudes[index] = C64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Outer product |psi><psi|.
    pub fn outer(&self) -> ComplexMatrix {
        let n = self.dim();
        ComplexMatrix::from_fn(n, n, |i, j| self.amplitudes[i] * self.amplitudes[j].conj())
    }
}

/// A validated density matrix: Hermitian, unit trace, positive
/// semidefinite up to roundoff.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let op = HermitianOperator::new(mat)?;
        let tr = op.matrix().trace();
        if (tr.re - 1.0).abs() > DENSITY_TRACE_TOL || tr.im.abs() > DENSITY_TRACE_TOL {
            return Err(Error::InvalidInput(format!(
                "density matrix trace {tr} deviates from 1 by more than {DENSITY_TRACE_TOL:e}"
            )));
        }
        let eig = hermitian_eig(&op)?;
        if let Some(bad) = eig.values.iter().find(|&&v| v < PSD_EIGENVALUE_FLOOR) {
            return Err(Error::InvalidInput(format!(
                "density matrix has negative eigenvalue {bad}"
            )));
        }
        Ok(Self { mat: op.mat })
    }

    /// Projector onto a pure state; positive semidefinite by construction.
    pub fn from_pure(psi: &StateVector) -> Self {
        Self { mat: psi.outer() }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            mat: ComplexMatrix::identity(dim).scale(1.0 / dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }
}

/// Eigendecomposition of a Hermitian operator: `values` ascending,
/// `vectors` unitary with eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct EigenPairs {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigenPairs {
    /// Applies exp(-i H t) through this decomposition of H.
    pub fn evolve(&self, psi: &StateVector, t: f64) -> Result<StateVector> {
        let n = self.values.len();
        if psi.dim() != n {
            return Err(Error::InvalidInput(format!(
                "state dimension {} does not match operator dimension {n}",
                psi.dim()
            )));
        }
        let v = &self.vectors;
        let amps = psi.amplitudes();
        let mut coeff = vec![C64::new(0.0, 0.0); n];
        for k in 0..n {
            for j in 0..n {
                coeff[k] += v[(j, k)].conj() * amps[j];
            }
            coeff[k] *= C64::from_polar(1.0, -self.values[k] * t);
        }
        let mut out = vec![C64::new(0.0, 0.0); n];
        for j in 0..n {
            for k in 0..n {
                out[j] += v[(j, k)] * coeff[k];
            }
        }
        StateVector::new(out)
    }
}

/// Hermitian eigendecomposition by cyclic Jacobi sweeps.
///
/// Pivots run in fixed row-major order, so the output is deterministic
/// for identical input. Eigenvalues are returned in ascending order.
pub fn hermitian_eig(h: &HermitianOperator) -> Result<EigenPairs> {
    let n = h.dim();
    let mut a = h.matrix().clone();
    let mut v = ComplexMatrix::identity(n);

    let mut converged = false;
    for _ in 0..MAX_JACOBI_SWEEPS {
        let mut off = 0.0_f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[(p, q)].norm());
            }
        }
        if off <= JACOBI_OFF_THRESHOLD {
            converged = true;
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let g = apq.norm();
                if g < 1e-300 {
                    continue;
                }
                // Unitary plane rotation R = diag-phase * real Jacobi angle;
                // A <- R^H A R zeroes the (p, q) element.
                let phase = apq / g;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * g);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (tau - (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let sp = phase * s;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c - akq * sp.conj();
                    a[(k, q)] = akp * s + akq * (phase.conj() * c);
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c - aqk * sp;
                    a[(q, k)] = apk * s + aqk * (phase * c);
                }
                a[(p, p)] = C64::new(app - t * g, 0.0);
                a[(q, q)] = C64::new(aqq + t * g, 0.0);
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c - vkq * sp.conj();
                    v[(k, q)] = vkp * s + vkq * (phase.conj() * c);
                }
            }
        }
    }
    if !converged {
        return Err(Error::NumericFailure(format!(
            "Jacobi eigensolver did not converge within {MAX_JACOBI_SWEEPS} sweeps"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(EigenPairs { values, vectors })
}

/// Evolves `psi0` under the time-independent `h` for time `t`:
/// `V diag(e^{-i lambda t}) V^H psi0`.
pub fn evolve_static(h: &HermitianOperator, psi0: &StateVector, t: f64) -> Result<StateVector> {
    hermitian_eig(h)?.evolve(psi0, t)
}

/// Which qubit of a two-qubit state survives a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep {
    First,
    Second,
}

/// Partial trace of a two-qubit density matrix (first tensor factor is
/// qubit one). Only dimension 4 is accepted.
pub fn partial_trace_qubit(rho: &DensityMatrix, keep: Keep) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::InvalidInput(format!(
            "partial trace requires a 4x4 density matrix, got dimension {}",
            rho.dim()
        )));
    }
    let m = rho.matrix();
    let out = match keep {
        Keep::First => {
            ComplexMatrix::from_fn(2, 2, |i, j| m[(2 * i, 2 * j)] + m[(2 * i + 1, 2 * j + 1)])
        }
        Keep::Second => ComplexMatrix::from_fn(2, 2, |k, l| m[(k, l)] + m[(2 + k, 2 + l)]),
    };
    DensityMatrix::new(out)
}

/// `Tr[h rho]`; the imaginary residue (bounded by the validation
/// tolerances) is discarded.
pub fn expectation(h: &HermitianOperator, rho: &DensityMatrix) -> Result<f64> {
    if h.dim() != rho.dim() {
        return Err(Error::InvalidInput(format!(
            "operator dimension {} does not match state dimension {}",
            h.dim(),
            rho.dim()
        )));
    }
    let n = h.dim();
    let mut tr = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            tr += h.matrix()[(i, j)] * rho.matrix()[(j, i)];
        }
    }
    Ok(tr.re)
}
