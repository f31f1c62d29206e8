//! Seeded random generators for states, operators, and distributions.
//!
//! Intended for tests and examples; the generators are deterministic under
//! the caller's seed and produce objects that satisfy their invariants by
//! construction.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::channel::{ChannelSpec, LetterOperator};
use crate::linalg::{hermitian_eig, ComplexMatrix, DensityMatrix};
use crate::needle::NeedleSpec;

fn standard_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im)
}

/// Random Hermitian matrix with Gaussian entries: (G + G†)/2.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        let re: f64 = StandardNormal.sample(rng);
        m.set(i, i, Complex64::new(re, 0.0));
        for j in (i + 1)..dim {
            let z = standard_complex(rng);
            m.set(i, j, z);
            m.set(j, i, z.conj());
        }
    }
    m
}

/// Random density matrix from the Ginibre construction G·G†/tr(G·G†).
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DensityMatrix {
    let mut g = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            g.set(i, j, standard_complex(rng));
        }
    }
    let gg = g.mul(&g.dagger()).expect("dims match");
    let trace = gg.trace().re;
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            // Store an exactly Hermitian average; raw products carry
            // rounding asymmetry of order machine epsilon.
            let z = (gg.get(i, j) + gg.get(j, i).conj()) * 0.5 / trace;
            let z = if i == j { Complex64::new(z.re, 0.0) } else { z };
            m.set(i, j, z);
        }
    }
    // Rounding can leave the trace a few ulps off 1; rescale the diagonal.
    let trace_now: f64 = (0..dim).map(|i| m.get(i, i).re).sum();
    for i in 0..dim {
        let z = m.get(i, i);
        m.set(i, i, Complex64::new(z.re / trace_now, 0.0));
    }
    DensityMatrix::validate(m).expect("Ginibre construction is PSD with unit trace")
}

/// Random unitary: the eigenvector matrix of a random Hermitian matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let h = random_hermitian(rng, dim);
    hermitian_eig(&h)
        .expect("random Hermitian matrices are exactly Hermitian")
        .eigenvectors
}

/// Random channel spec for bound-gap experiments: d ∈ 2..=6 eigenvalues
/// inside [-10, 10] with consecutive gaps ≥ 0.1, and σ ∈ [0.2, 5].
///
/// The peak SNR max|x|²/σ² is kept ≥ 0.5625 (extreme eigenvalue at least
/// max(1, 0.75σ)). That floor matters: as P/σ² → 0 the capacity and the
/// ½·log₂(P/σ²+1) bound collapse together and their gap shrinks like
/// (P/σ²)³, falling below any fixed threshold, so unconstrained draws
/// cannot support a uniform minimum-gap assertion. At SNR ≥ 0.5625 the
/// gap stays above ~2e-3 bits.
pub fn random_channel_spec<R: Rng + ?Sized>(rng: &mut R) -> ChannelSpec {
    let d: usize = rng.gen_range(2..=6);
    let sigma: f64 = rng.gen_range(0.2..=5.0);
    let a: f64 = rng.gen_range(f64::max(1.0, 0.75 * sigma)..=10.0);
    let b: f64 = rng.gen_range(0.3 * a..=a);
    let span = a + b;
    let min_gap = 0.1;
    let reserved = min_gap * (d - 1) as f64;
    let mut gaps: Vec<f64> = (0..d - 1).map(|_| rng.gen_range(0.01..=1.0)).collect();
    let gap_sum: f64 = gaps.iter().sum();
    for g in &mut gaps {
        *g = min_gap + (span - reserved) * *g / gap_sum;
    }
    let mut xs = Vec::with_capacity(d);
    let mut x = -b;
    xs.push(x);
    for g in gaps {
        x += g;
        xs.push(x);
    }
    // Pin the endpoint exactly despite accumulation rounding.
    let n = xs.len();
    xs[n - 1] = a;
    ChannelSpec::new(
        LetterOperator::new(xs).expect("gaps are at least 0.1 by construction"),
        NeedleSpec::new(sigma).expect("sigma is positive by construction"),
    )
}

/// Random probability vector: normalized exponentials.
pub fn random_probs<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<f64> {
    let mut draws: Vec<f64> = (0..len).map(|_| -rng.gen::<f64>().ln()).collect();
    let sum: f64 = draws.iter().sum();
    for p in &mut draws {
        *p /= sum;
    }
    // Make the sum exactly 1 within tolerance by fixing up the largest entry.
    let total: f64 = draws.iter().sum();
    let largest = draws
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .expect("len >= 1");
    draws[largest] += 1.0 - total;
    draws
}
