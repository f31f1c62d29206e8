//! Weak Gaussian measurement channels.
//!
//! A sender encodes classical letters into quantum states that are diagonal
//! or coherent in the eigenbasis of a shared observable Â with distinct
//! eigenvalues x_1 < … < x_d; the receiver reads Â with a Gaussian needle
//! of spread σ. The reading Y is then a Gaussian mixture centered on the
//! eigenvalues, and the classical information carried per use reduces to
//! the mutual information of the additive-noise channel X → X + N(0, σ²)
//! on the alphabet {x_i}.
//!
//! The crate provides:
//! - [`linalg`]: small complex Hermitian matrices, eigendecomposition, and
//!   von Neumann entropy;
//! - [`needle`]: Gaussian-mixture pdf, differential entropy, sampling;
//! - [`channel`]: the readout law, mutual information, posterior states,
//!   and the closed-form damping map;
//! - [`capacity`]: Blahut–Arimoto capacity, the ½·log₂(P/σ²+1) bound, and
//!   eigenvalue-placement search;
//! - [`coding`]: random-coding block-error experiments and the Fano floor;
//! - [`eavesdrop`]: interception tradeoff between the receiver's residual
//!   Holevo information and the eavesdropper's gain;
//! - [`testing`]: seeded random states and distributions for tests.

#![forbid(unsafe_code)]

pub mod capacity;
pub mod channel;
pub mod coding;
pub mod eavesdrop;
pub mod error;
pub mod linalg;
pub mod needle;
pub mod quad;
pub mod testing;

pub use capacity::{
    blahut_arimoto_capacity, capacity_upper_bound, optimize_eigenvalue_placement, power_budget,
    CapacityResult,
};
pub use channel::{
    apply_weak_channel, output_distribution, posterior_state, sample_measurement,
    weak_mutual_information, ChannelSpec, LetterEnsemble, LetterOperator,
};
pub use coding::{
    estimate_error_probability, fano_lower_bound, generate_codebook, ml_decode, transmit,
    Codebook, CodingExperimentConfig, CodingExperimentResult,
};
pub use eavesdrop::{holevo_chi, intercept_ensemble, tradeoff_sweep, TradeoffPoint};
pub use error::{Error, Result};
pub use linalg::{
    hermitian_eig, validate_density, von_neumann_entropy, ComplexMatrix, DensityMatrix, Spectrum,
};
pub use needle::{
    gaussian_entropy_bits, mixture_entropy, mixture_pdf, mixture_sample, shannon_entropy_bits,
    GaussianMixture1D, NeedleSpec,
};

/// Maps f over 0..count, in parallel when the `parallel` feature is on.
/// Results are returned in index order either way, so callers are
/// deterministic regardless of thread count.
pub(crate) fn par_map_indexed<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..count).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count).map(f).collect()
    }
}
