//! Desk-scale random-coding experiment: i.i.d. codebooks over the letter
//! alphabet, Gaussian readout noise, maximum-likelihood decoding, and the
//! Fano error floor above capacity.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::capacity::blahut_arimoto_capacity;
use crate::channel::{validate_probabilities, ChannelSpec, LetterOperator};
use crate::error::{Error, Result};
use crate::needle::NeedleSpec;
use crate::par_map_indexed;

/// Memory guard: refuse codebooks larger than this many codewords.
pub const MAX_CODEWORDS: u64 = 1 << 24;

/// Random codebook: M codewords of n symbols, each symbol an eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct Codebook {
    codewords: Vec<Vec<f64>>,
    n: usize,
    rate_bits: f64,
}

impl Codebook {
    pub fn codewords(&self) -> &[Vec<f64>] {
        &self.codewords
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rate_bits(&self) -> f64 {
        self.rate_bits
    }

    /// Number of messages M = round(2^(n·R)).
    pub fn size(&self) -> usize {
        self.codewords.len()
    }
}

/// Experiment description: channel, input distribution, block length, rate,
/// and pooling/seeding parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct CodingExperimentConfig {
    pub channel: ChannelSpec,
    pub input_distribution: Vec<f64>,
    pub n: usize,
    pub rate_bits: f64,
    pub codebooks: usize,
    pub trials_per_codebook: usize,
    pub seed: u64,
}

/// Pooled experiment outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct CodingExperimentResult {
    /// Fraction of erroneous decodes across all pooled trials.
    pub p_err: f64,
    /// Binomial standard error √(p(1-p)/N).
    pub stderr: f64,
    /// Asymptotic Fano floor clamp((R - χ)/log₂ d, 0, 1). The finite-n
    /// H(P_err) correction of the exact inequality is deliberately dropped.
    pub fano_floor: f64,
    /// Total trials pooled over all codebooks.
    pub trials_total: usize,
}

/// SplitMix64 finalizer; mixes indices into per-unit seeds.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Deterministic per-(codebook, trial) seed derivation. Trial index 0 is
/// reserved for codebook generation itself.
fn derive_seed(seed: u64, codebook: u64, trial: u64) -> u64 {
    splitmix64(seed ^ splitmix64(codebook ^ splitmix64(trial)))
}

fn codeword_count(n: usize, rate_bits: f64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgs {
            reason: "block length n must be at least 1".into(),
        });
    }
    if !rate_bits.is_finite() || rate_bits <= 0.0 {
        return Err(Error::InvalidArgs {
            reason: format!("rate_bits = {rate_bits} (must be positive and finite)"),
        });
    }
    let m = (2.0_f64).powf(n as f64 * rate_bits).round();
    if !(m >= 2.0) {
        return Err(Error::RateTooLowForTwoCodewords {
            n,
            rate_bits,
            m: m as u64,
        });
    }
    if m > MAX_CODEWORDS as f64 {
        return Err(Error::InvalidArgs {
            reason: format!(
                "codebook of round(2^(n·R)) = {m:.0} codewords exceeds the {MAX_CODEWORDS} limit"
            ),
        });
    }
    Ok(m as u64)
}

/// Draws M = round(2^(n·R)) codewords with symbols i.i.d. from p over the
/// eigenvalues of `op`. Deterministic under the generator's seed.
pub fn generate_codebook<R: Rng + ?Sized>(
    op: &LetterOperator,
    p: &[f64],
    n: usize,
    rate_bits: f64,
    rng: &mut R,
) -> Result<Codebook> {
    validate_probabilities(p)?;
    if p.len() != op.dim() {
        return Err(Error::DimensionMismatch {
            expected: op.dim(),
            actual: p.len(),
        });
    }
    let m = codeword_count(n, rate_bits)?;
    let xs = op.eigenvalues();
    let mut cumulative = Vec::with_capacity(p.len());
    let mut acc = 0.0;
    for &pi in p {
        acc += pi;
        cumulative.push(acc);
    }
    let codewords = (0..m)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let u: f64 = rng.gen();
                    let mut letter = xs.len() - 1;
                    for (i, &edge) in cumulative.iter().enumerate() {
                        if u < edge {
                            letter = i;
                            break;
                        }
                    }
                    xs[letter]
                })
                .collect()
        })
        .collect();
    Ok(Codebook {
        codewords,
        n,
        rate_bits,
    })
}

/// Sends a codeword through the readout: y_j = x_j + z_j, z_j ~ N(0, σ²).
pub fn transmit<R: Rng + ?Sized>(codeword: &[f64], needle: &NeedleSpec, rng: &mut R) -> Vec<f64> {
    let normal = Normal::new(0.0, needle.sigma()).expect("sigma validated at construction");
    codeword.iter().map(|x| x + normal.sample(rng)).collect()
}

/// Maximum-likelihood decode: the codeword at minimum squared Euclidean
/// distance; ties go to the lowest index.
pub fn ml_decode(cb: &Codebook, received: &[f64]) -> Result<usize> {
    if received.len() != cb.n {
        return Err(Error::LengthMismatch {
            expected: cb.n,
            actual: received.len(),
        });
    }
    let mut best_index = 0;
    let mut best_distance = f64::INFINITY;
    for (index, codeword) in cb.codewords.iter().enumerate() {
        let distance: f64 = codeword
            .iter()
            .zip(received)
            .map(|(x, y)| (y - x) * (y - x))
            .sum();
        if distance < best_distance {
            best_distance = distance;
            best_index = index;
        }
    }
    Ok(best_index)
}

/// Asymptotic Fano floor clamp((R - χ)/log₂ d, 0, 1).
pub fn fano_lower_bound(rate_bits: f64, chi_bits: f64, d: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::InvalidDimension {
            dim: d,
            reason: "the Fano floor needs an alphabet of at least two letters",
        });
    }
    if !rate_bits.is_finite() || !chi_bits.is_finite() {
        return Err(Error::NonFinite {
            what: "rate and chi",
        });
    }
    Ok(((rate_bits - chi_bits) / (d as f64).log2()).clamp(0.0, 1.0))
}

/// Runs the pooled random-coding experiment: per codebook, draw codewords;
/// per trial, pick a uniform message, transmit, ML-decode, and count errors.
/// Trials are pooled across codebooks. Fully deterministic for a fixed
/// config: every (codebook, trial) pair has its own derived seed, so the
/// result does not depend on thread scheduling.
pub fn estimate_error_probability(cfg: &CodingExperimentConfig) -> Result<CodingExperimentResult> {
    validate_probabilities(&cfg.input_distribution)?;
    if cfg.input_distribution.len() != cfg.channel.operator.dim() {
        return Err(Error::DimensionMismatch {
            expected: cfg.channel.operator.dim(),
            actual: cfg.input_distribution.len(),
        });
    }
    if cfg.codebooks == 0 || cfg.trials_per_codebook == 0 {
        return Err(Error::InvalidArgs {
            reason: "codebooks and trials_per_codebook must be at least 1".into(),
        });
    }
    codeword_count(cfg.n, cfg.rate_bits)?;

    let chi_bits = blahut_arimoto_capacity(&cfg.channel, 1e-6)?.capacity_bits;
    let fano_floor = fano_lower_bound(cfg.rate_bits, chi_bits, cfg.channel.operator.dim())?;

    let error_counts: Vec<Result<u64>> = par_map_indexed(cfg.codebooks, |c| {
        let c = c as u64;
        let mut cb_rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, c, 0));
        let cb = generate_codebook(
            &cfg.channel.operator,
            &cfg.input_distribution,
            cfg.n,
            cfg.rate_bits,
            &mut cb_rng,
        )?;
        let m = cb.size();
        let mut errors = 0u64;
        for t in 0..cfg.trials_per_codebook {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, c, 1 + t as u64));
            let message = rng.gen_range(0..m);
            let received = transmit(&cb.codewords[message], &cfg.channel.needle, &mut rng);
            if ml_decode(&cb, &received)? != message {
                errors += 1;
            }
        }
        Ok(errors)
    });

    let mut errors = 0u64;
    for count in error_counts {
        errors += count?;
    }
    let trials_total = cfg.codebooks * cfg.trials_per_codebook;
    let p_err = errors as f64 / trials_total as f64;
    let stderr = (p_err * (1.0 - p_err) / trials_total as f64).sqrt();
    Ok(CodingExperimentResult {
        p_err,
        stderr,
        fano_floor,
        trials_total,
    })
}
