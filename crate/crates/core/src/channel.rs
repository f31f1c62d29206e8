//! The weak Gaussian measurement channel: needle readout law, mutual
//! information between the chosen letter and the reading, posterior states,
//! and the trace-preserving channel map.
//!
//! All states are expressed in the eigenbasis of the letter operator Â, so
//! the needle coupling never has to be materialized: its net effect is the
//! diagonal Kraus family K_y = diag(φ(y - x_i)), which yields the readout
//! mixture, the posterior ρ_y, and the closed-form off-diagonal damping
//! e^(-(x_i-x_j)²/(8σ²)).

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix};
use crate::needle::{GaussianMixture1D, NeedleSpec};

/// Probability vectors must sum to 1 within this tolerance.
pub const PROB_SUM_TOL: f64 = 1e-10;

/// Needle densities below this are treated as zero (reading unreachable).
pub const ZERO_DENSITY_FLOOR: f64 = 1e-300;

/// Hermitian letter operator, represented by its strictly increasing
/// eigenvalues x_1 < … < x_d. The eigenvalues are the classical alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct LetterOperator {
    eigenvalues: Vec<f64>,
}

impl LetterOperator {
    pub fn new(eigenvalues: Vec<f64>) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(Error::InvalidDimension {
                dim: 0,
                reason: "letter operators need at least one eigenvalue",
            });
        }
        if eigenvalues.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite {
                what: "eigenvalues",
            });
        }
        for i in 0..eigenvalues.len() - 1 {
            if eigenvalues[i] >= eigenvalues[i + 1] {
                return Err(Error::EigenvaluesNotIncreasing {
                    index: i,
                    left: eigenvalues[i],
                    right: eigenvalues[i + 1],
                });
            }
        }
        Ok(Self { eigenvalues })
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Smallest gap between consecutive eigenvalues; `None` when d = 1.
    pub fn min_gap(&self) -> Option<f64> {
        self.eigenvalues
            .windows(2)
            .map(|w| w[1] - w[0])
            .min_by(f64::total_cmp)
    }
}

/// Ensemble of letters: with probability p_i Alice sends state ρ_i.
#[derive(Debug, Clone)]
pub struct LetterEnsemble {
    probs: Vec<f64>,
    states: Vec<DensityMatrix>,
}

/// Validates that `probs` is a probability vector (nonnegative, sums to 1).
pub fn validate_probabilities(probs: &[f64]) -> Result<()> {
    for (index, &p) in probs.iter().enumerate() {
        if !p.is_finite() || p < 0.0 {
            return Err(Error::InvalidProbability { index, value: p });
        }
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > PROB_SUM_TOL {
        return Err(Error::ProbabilitySumNotOne { sum });
    }
    Ok(())
}

impl LetterEnsemble {
    pub fn new(probs: Vec<f64>, states: Vec<DensityMatrix>) -> Result<Self> {
        if probs.len() != states.len() {
            return Err(Error::DimensionMismatch {
                expected: probs.len(),
                actual: states.len(),
            });
        }
        if states.is_empty() {
            return Err(Error::InvalidDimension {
                dim: 0,
                reason: "ensembles need at least one letter",
            });
        }
        validate_probabilities(&probs)?;
        let d = states[0].dim();
        for s in &states {
            if s.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    actual: s.dim(),
                });
            }
        }
        Ok(Self { probs, states })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    pub fn dim(&self) -> usize {
        self.states[0].dim()
    }

    /// Average state ρ̄ = Σ p_i ρ_i.
    pub fn average_state(&self) -> Result<DensityMatrix> {
        let d = self.dim();
        let mut m = ComplexMatrix::zeros(d);
        for (p, s) in self.probs.iter().zip(&self.states) {
            for i in 0..d {
                for j in 0..d {
                    m.set(i, j, m.get(i, j) + s.entry(i, j) * *p);
                }
            }
        }
        DensityMatrix::validate(m)
    }
}

/// The channel: a letter operator read out by a Gaussian needle.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSpec {
    pub operator: LetterOperator,
    pub needle: NeedleSpec,
}

impl ChannelSpec {
    pub fn new(operator: LetterOperator, needle: NeedleSpec) -> Self {
        Self { operator, needle }
    }

    /// Diagnostic min_gap/σ: small means the measurement is weak (readings
    /// barely distinguish neighboring letters). Not enforced anywhere;
    /// any σ > 0 is accepted, including the strong limit σ → 0.
    pub fn weakness_ratio(&self) -> Option<f64> {
        self.operator
            .min_gap()
            .map(|g| g / self.needle.sigma())
    }

    fn check_dim(&self, rho: &DensityMatrix) -> Result<()> {
        if rho.dim() != self.operator.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.operator.dim(),
                actual: rho.dim(),
            });
        }
        Ok(())
    }
}

/// Law of the needle reading for input ρ: the Gaussian mixture with weights
/// ρ_ii, means x_i, and standard deviation σ.
///
/// Sub-tolerance imaginary parts and negative dust on the diagonal are
/// discarded and the weights renormalized, so the result is always a valid
/// mixture for a valid ρ.
pub fn output_distribution(rho: &DensityMatrix, ch: &ChannelSpec) -> Result<GaussianMixture1D> {
    ch.check_dim(rho)?;
    let mut weights: Vec<f64> = rho.diagonal_real().iter().map(|&w| w.max(0.0)).collect();
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > PROB_SUM_TOL {
        return Err(Error::WeightSumNotOne { sum });
    }
    for w in &mut weights {
        *w /= sum;
    }
    GaussianMixture1D::new(
        weights,
        ch.operator.eigenvalues().to_vec(),
        ch.needle.sigma(),
    )
}

/// Mutual information between Alice's letter index and Bob's reading:
/// H(Y for ρ̄) - Σ p_i·H(Y for ρ_i), in bits. Values within 1e-9 below 0
/// (quadrature dust on deterministic ensembles) are clamped to 0.
pub fn weak_mutual_information(ens: &LetterEnsemble, ch: &ChannelSpec) -> Result<f64> {
    let average = ens.average_state()?;
    let mixture_bar = output_distribution(&average, ch)?;
    let mut info = mixture_bar.entropy()?;
    for (p, rho) in ens.probs().iter().zip(ens.states()) {
        if *p == 0.0 {
            continue;
        }
        let mixture_i = output_distribution(rho, ch)?;
        info -= p * mixture_i.entropy()?;
    }
    if info < 0.0 && info >= -1e-9 {
        info = 0.0;
    }
    Ok(info)
}

/// Posterior state after reading y, together with the needle density p(y).
///
/// (ρ_y)_ij = ρ_ij·φ(y-x_i)·φ(y-x_j)/p(y) with p(y) = Σ_k ρ_kk·φ(y-x_k)².
pub fn posterior_state(
    rho: &DensityMatrix,
    ch: &ChannelSpec,
    y: f64,
) -> Result<(DensityMatrix, f64)> {
    ch.check_dim(rho)?;
    let d = rho.dim();
    let xs = ch.operator.eigenvalues();
    let amps: Vec<f64> = xs.iter().map(|&x| ch.needle.amplitude(y - x)).collect();
    let mut density = 0.0;
    for k in 0..d {
        density += rho.entry(k, k).re * amps[k] * amps[k];
    }
    if !(density >= ZERO_DENSITY_FLOOR) {
        return Err(Error::ZeroDensity { density });
    }
    let mut m = ComplexMatrix::zeros(d);
    for i in 0..d {
        for j in 0..d {
            m.set(i, j, rho.entry(i, j) * (amps[i] * amps[j] / density));
        }
    }
    Ok((DensityMatrix::validate(m)?, density))
}

/// The channel map in closed form: off-diagonal damping
/// E(ρ)_ij = ρ_ij·e^(-(x_i-x_j)²/(8σ²)). Trace is preserved exactly.
pub fn apply_weak_channel(rho: &DensityMatrix, ch: &ChannelSpec) -> Result<DensityMatrix> {
    ch.check_dim(rho)?;
    let d = rho.dim();
    let xs = ch.operator.eigenvalues();
    let sigma = ch.needle.sigma();
    let mut m = ComplexMatrix::zeros(d);
    for i in 0..d {
        for j in 0..d {
            let delta = xs[i] - xs[j];
            let damping = (-delta * delta / (8.0 * sigma * sigma)).exp();
            m.set(i, j, rho.entry(i, j) * damping);
        }
    }
    DensityMatrix::validate(m)
}

/// Draws one needle reading for input ρ; equals sampling the output mixture.
pub fn sample_measurement<R: Rng + ?Sized>(
    rho: &DensityMatrix,
    ch: &ChannelSpec,
    rng: &mut R,
) -> Result<f64> {
    let mixture = output_distribution(rho, ch)?;
    Ok(mixture.sample(rng))
}
