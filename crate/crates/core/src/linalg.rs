//! Small-dimension complex Hermitian linear algebra: matrix validation,
//! eigendecomposition, and von Neumann entropy.
//!
//! Dimensions here are tiny (d ≤ ~16), so the eigensolver is a cyclic
//! Jacobi iteration: robust, deterministic, and accurate at these sizes.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hermiticity tolerance on max|M - M†|.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Density-matrix trace tolerance on |tr - 1|.
pub const TRACE_TOL: f64 = 1e-10;
/// Positive-semidefiniteness tolerance on the minimum eigenvalue.
pub const PSD_TOL: f64 = -1e-10;
/// Off-diagonal Frobenius norm at which Jacobi sweeps stop.
const JACOBI_OFF_TOL: f64 = 1e-12;
/// Maximum number of full Jacobi sweeps.
const JACOBI_MAX_SWEEPS: usize = 100;

/// Dense square complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, checking shape and finiteness.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension {
                dim: 0,
                reason: "matrices must have at least one row",
            });
        }
        if entries.len() != dim * dim {
            return Err(Error::BadEntryCount {
                dim,
                expected: dim * dim,
                actual: entries.len(),
            });
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite {
                what: "matrix entries",
            });
        }
        Ok(Self { dim, entries })
    }

    /// Zero matrix of dimension `dim`.
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    /// Identity matrix of dimension `dim`.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.dim + col] = value;
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// Matrix product; dimensions must match.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: other.dim,
            });
        }
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Largest entrywise magnitude of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Hermiticity residual max|M - M†|.
    pub fn hermitian_residual(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                let r = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(r);
            }
        }
        worst
    }
}

/// Validated density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Checks all density-matrix invariants and wraps the matrix.
    pub fn validate(matrix: ComplexMatrix) -> Result<Self> {
        let residual = matrix.hermitian_residual();
        if residual > HERMITIAN_TOL {
            return Err(Error::NotHermitian { residual });
        }
        let trace_residual = (matrix.trace() - Complex64::new(1.0, 0.0)).norm();
        if trace_residual > TRACE_TOL {
            return Err(Error::TraceNotOne {
                residual: trace_residual,
            });
        }
        let spectrum = hermitian_eig(&matrix)?;
        let min_eigenvalue = spectrum.eigenvalues[0];
        if min_eigenvalue < PSD_TOL {
            return Err(Error::NotPSD { min_eigenvalue });
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.matrix.get(row, col)
    }

    /// Real parts of the diagonal (populations in the storage basis).
    pub fn diagonal_real(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.entry(i, i).re).collect()
    }

    /// Pure state |ψ⟩⟨ψ| from (unnormalized) amplitudes.
    pub fn pure(amplitudes: &[Complex64]) -> Result<Self> {
        let d = amplitudes.len();
        if d == 0 {
            return Err(Error::InvalidDimension {
                dim: 0,
                reason: "state vectors must have at least one amplitude",
            });
        }
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite {
                what: "state amplitudes",
            });
        }
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if norm_sq <= 0.0 {
            return Err(Error::InvalidArgs {
                reason: "state vector must be nonzero".into(),
            });
        }
        let mut m = ComplexMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                m.set(i, j, amplitudes[i] * amplitudes[j].conj() / norm_sq);
            }
        }
        Ok(Self { matrix: m })
    }

    /// Basis projector |index⟩⟨index| in dimension `dim`.
    pub fn basis_state(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::InvalidArgs {
                reason: format!("basis index {index} out of range for dim {dim}"),
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self::pure(&amplitudes)
    }

    /// Diagonal density matrix from a probability vector.
    pub fn from_diagonal(populations: &[f64]) -> Result<Self> {
        let d = populations.len();
        let mut m = ComplexMatrix::zeros(d.max(1));
        if d == 0 {
            return Err(Error::InvalidDimension {
                dim: 0,
                reason: "diagonal must have at least one entry",
            });
        }
        for (i, &p) in populations.iter().enumerate() {
            m.set(i, i, Complex64::new(p, 0.0));
        }
        Self::validate(m)
    }

    /// I/d.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        Self::from_diagonal(&vec![1.0 / dim as f64; dim.max(1)])
    }
}

/// Eigendecomposition of a Hermitian matrix: ascending real eigenvalues and
/// a unitary whose columns are the matching eigenvectors.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

/// Validates density-matrix invariants; alias for [`DensityMatrix::validate`].
pub fn validate_density(m: ComplexMatrix) -> Result<DensityMatrix> {
    DensityMatrix::validate(m)
}

/// Frobenius norm of the strictly off-diagonal part.
fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let d = a.dim();
    let mut sum = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                sum += a.get(i, j).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// The input must be Hermitian within [`HERMITIAN_TOL`]; the iteration runs
/// on the Hermitian part (M + M†)/2 so sub-tolerance asymmetry cannot
/// accumulate. Stops when the off-diagonal Frobenius norm falls below 1e-12,
/// capped at 100 sweeps.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<Spectrum> {
    let residual = m.hermitian_residual();
    if residual > HERMITIAN_TOL {
        return Err(Error::NotHermitian { residual });
    }
    let d = m.dim();
    let mut a = ComplexMatrix::zeros(d);
    for i in 0..d {
        for j in 0..d {
            a.set(i, j, (m.get(i, j) + m.get(j, i).conj()) * 0.5);
        }
    }
    let mut v = ComplexMatrix::identity(d);

    let mut sweeps = 0;
    while off_diagonal_norm(&a) > JACOBI_OFF_TOL {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                iterations: sweeps,
                residual: off_diagonal_norm(&a),
            });
        }
        sweeps += 1;
        for p in 0..d {
            for q in (p + 1)..d {
                let apq = a.get(p, q);
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                // Unitary plane rotation J (J_pp = c, J_pq = -s̄, J_qp = s,
                // J_qq = c) chosen so (J† A J)_pq = 0: with a_pq = r·e^{iθ},
                // the rotation angle satisfies t² - 2·t·θ_nr - 1 = 0 where
                // θ_nr = (a_qq - a_pp)/(2r). The roots are θ_nr ± √(θ_nr²+1);
                // the smaller-magnitude one, -sign(θ_nr)/(|θ_nr| + √(θ_nr²+1)),
                // keeps |t| ≤ 1 for stability.
                let phase = apq / r;
                let theta = (a.get(q, q).re - a.get(p, p).re) / (2.0 * r);
                let t = if theta >= 0.0 {
                    -1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = phase.conj() * (t * c);

                // A <- J† A J via the two-sided column/row updates.
                for j in 0..d {
                    let ajp = a.get(j, p);
                    let ajq = a.get(j, q);
                    a.set(j, p, ajp * c + ajq * s);
                    a.set(j, q, -ajp * s.conj() + ajq * c);
                }
                for k in 0..d {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, apk * c + aqk * s.conj());
                    a.set(q, k, -apk * s + aqk * c);
                }
                a.set(p, q, Complex64::new(0.0, 0.0));
                a.set(q, p, Complex64::new(0.0, 0.0));
                for j in 0..d {
                    let vjp = v.get(j, p);
                    let vjq = v.get(j, q);
                    v.set(j, p, vjp * c + vjq * s);
                    v.set(j, q, -vjp * s.conj() + vjq * c);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..d).collect();
    let diag: Vec<f64> = (0..d).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(d);
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..d {
            eigenvectors.set(row, new_col, v.get(row, old_col));
        }
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// Von Neumann entropy S(ρ) = -Σ λ log₂ λ in bits.
///
/// Eigenvalues in [-1e-10, 0) are clamped to 0 and contribute nothing.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let spectrum = hermitian_eig(rho.matrix())?;
    let mut entropy = 0.0;
    for &lambda in &spectrum.eigenvalues {
        if lambda <= 0.0 {
            continue;
        }
        entropy -= lambda * lambda.log2();
    }
    Ok(entropy.max(0.0))
}
