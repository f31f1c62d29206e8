//! One-dimensional Gaussian and Gaussian-mixture analytics: the needle
//! wavepacket, mixture pdf, differential entropy, and sampling.

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::quad;

/// Mixture weights must sum to 1 within this tolerance.
pub const WEIGHT_SUM_TOL: f64 = 1e-10;

/// Integration window extends this many σ beyond the extreme means; the
/// truncated tail mass is below 1e-13 per side.
pub const WINDOW_SIGMAS: f64 = 8.0;

/// Successive quadrature estimates of the entropy must agree within this
/// many bits.
pub const ENTROPY_QUAD_TOL: f64 = 1e-9;

/// Gaussian measurement needle of standard deviation σ.
///
/// The position amplitude is φ(u) = (2πσ²)^(-1/4)·e^(-u²/4σ²), so the
/// readout density |φ|² is normal with variance σ².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeedleSpec {
    sigma: f64,
}

impl NeedleSpec {
    pub fn new(sigma: f64) -> Result<Self> {
        if !sigma.is_finite() || sigma <= 0.0 {
            return Err(Error::InvalidSigma { value: sigma });
        }
        Ok(Self { sigma })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Needle amplitude φ(u) = (2πσ²)^(-1/4)·e^(-u²/(4σ²)).
    pub fn amplitude(&self, u: f64) -> f64 {
        let var = self.sigma * self.sigma;
        (2.0 * std::f64::consts::PI * var).powf(-0.25) * (-u * u / (4.0 * var)).exp()
    }
}

/// Finite mixture of Gaussians with a shared standard deviation.
///
/// The shared σ is deliberate: every component is the same needle read out
/// at a different center, so per-component variances are out of scope.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianMixture1D {
    weights: Vec<f64>,
    means: Vec<f64>,
    sigma: f64,
}

impl GaussianMixture1D {
    pub fn new(weights: Vec<f64>, means: Vec<f64>, sigma: f64) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidDimension {
                dim: 0,
                reason: "mixtures need at least one component",
            });
        }
        if weights.len() != means.len() {
            return Err(Error::DimensionMismatch {
                expected: weights.len(),
                actual: means.len(),
            });
        }
        for (index, &w) in weights.iter().enumerate() {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidWeight { index, value: w });
            }
        }
        if means.iter().any(|m| !m.is_finite()) {
            return Err(Error::NonFinite {
                what: "mixture means",
            });
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::WeightSumNotOne { sum });
        }
        if !sigma.is_finite() || sigma <= 0.0 {
            return Err(Error::InvalidSigma { value: sigma });
        }
        Ok(Self {
            weights,
            means,
            sigma,
        })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Integration window [min μ - 8σ, max μ + 8σ].
    pub fn window(&self) -> (f64, f64) {
        let lo = self.means.iter().fold(f64::INFINITY, |a, &b| a.min(b));
        let hi = self.means.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
        (
            lo - WINDOW_SIGMAS * self.sigma,
            hi + WINDOW_SIGMAS * self.sigma,
        )
    }

    fn initial_panels(&self) -> usize {
        let (lo, hi) = self.window();
        // Start with panels no wider than 2σ so every component is resolved
        // before the doubling test can report agreement.
        let needed = ((hi - lo) / (2.0 * self.sigma)).ceil() as usize;
        needed.clamp(32, quad::MAX_NODES / quad::PANEL_ORDER / 2)
    }

    /// Density Σ_i w_i·N(y; μ_i, σ²).
    pub fn pdf(&self, y: f64) -> f64 {
        let var = self.sigma * self.sigma;
        let norm = 1.0 / (2.0 * std::f64::consts::PI * var).sqrt();
        let mut density = 0.0;
        for (w, mu) in self.weights.iter().zip(&self.means) {
            if *w == 0.0 {
                continue;
            }
            let z = y - mu;
            density += w * norm * (-z * z / (2.0 * var)).exp();
        }
        density
    }

    /// Differential entropy -∫ f·log₂ f dy in bits, by composite
    /// Gauss–Legendre quadrature over the ±8σ window with panel doubling.
    pub fn entropy(&self) -> Result<f64> {
        let (lo, hi) = self.window();
        let integrand = |y: f64| {
            let f = self.pdf(y);
            if f > 0.0 {
                -f * f.log2()
            } else {
                0.0
            }
        };
        quad::integrate_doubling(&integrand, lo, hi, self.initial_panels(), ENTROPY_QUAD_TOL)
    }

    /// ∫ f dy over the same window and refinement scheme as [`entropy`].
    ///
    /// Diagnostic: should be 1 up to the truncated tail mass.
    ///
    /// [`entropy`]: GaussianMixture1D::entropy
    pub fn normalization(&self) -> Result<f64> {
        let (lo, hi) = self.window();
        let integrand = |y: f64| self.pdf(y);
        quad::integrate_doubling(&integrand, lo, hi, self.initial_panels(), ENTROPY_QUAD_TOL)
    }

    /// Draws component i with probability w_i, then y ~ N(μ_i, σ²).
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        let mut chosen = self.means.len() - 1;
        for (i, &w) in self.weights.iter().enumerate() {
            acc += w;
            if u < acc {
                chosen = i;
                break;
            }
        }
        let normal = Normal::new(self.means[chosen], self.sigma)
            .expect("sigma validated at construction");
        normal.sample(rng)
    }
}

/// Free-function alias for [`GaussianMixture1D::pdf`].
pub fn mixture_pdf(gm: &GaussianMixture1D, y: f64) -> f64 {
    gm.pdf(y)
}

/// Free-function alias for [`GaussianMixture1D::entropy`].
pub fn mixture_entropy(gm: &GaussianMixture1D) -> Result<f64> {
    gm.entropy()
}

/// Free-function alias for [`GaussianMixture1D::sample`].
pub fn mixture_sample<R: Rng + ?Sized>(gm: &GaussianMixture1D, rng: &mut R) -> f64 {
    gm.sample(rng)
}

/// Shannon entropy -Σ p log₂ p of a finite distribution, with 0·log 0 = 0.
pub fn shannon_entropy_bits(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}

/// ½·log₂(2πeσ²): differential entropy of N(·, σ²) in bits.
pub fn gaussian_entropy_bits(sigma: f64) -> f64 {
    0.5 * (2.0 * std::f64::consts::PI * std::f64::consts::E * sigma * sigma).log2()
}
