//! Interception analysis: an eavesdropper weakly measures the letters in
//! transit, damping their coherences. This module quantifies the receiver's
//! residual Holevo information and the eavesdropper's own information gain
//! as functions of the eavesdropper's needle spread.

use crate::channel::{
    apply_weak_channel, weak_mutual_information, ChannelSpec, LetterEnsemble, LetterOperator,
};
use crate::error::{Error, Result};
use crate::linalg::von_neumann_entropy;
use crate::needle::NeedleSpec;

/// One point of the interception tradeoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TradeoffPoint {
    /// Eavesdropper needle standard deviation.
    pub sigma_eve: f64,
    /// Receiver's Holevo information after interception, in bits.
    pub chi_after_bits: f64,
    /// Eavesdropper's reading/letter mutual information, in bits.
    pub eve_info_bits: f64,
    /// Receiver's Holevo information without interception, in bits.
    pub chi_before_bits: f64,
}

/// Holevo information χ = S(Σ p_i ρ_i) - Σ p_i S(ρ_i) in bits, clamped to 0
/// when within 1e-9 below it.
pub fn holevo_chi(ens: &LetterEnsemble) -> Result<f64> {
    let average = ens.average_state()?;
    let mut chi = von_neumann_entropy(&average)?;
    for (p, rho) in ens.probs().iter().zip(ens.states()) {
        if *p == 0.0 {
            continue;
        }
        chi -= p * von_neumann_entropy(rho)?;
    }
    if chi < 0.0 && chi >= -1e-9 {
        chi = 0.0;
    }
    Ok(chi)
}

/// The ensemble the receiver sees after the eavesdropper's measurement:
/// same probabilities, every state passed through the damping map.
pub fn intercept_ensemble(ens: &LetterEnsemble, ch_eve: &ChannelSpec) -> Result<LetterEnsemble> {
    let states = ens
        .states()
        .iter()
        .map(|rho| apply_weak_channel(rho, ch_eve))
        .collect::<Result<Vec<_>>>()?;
    LetterEnsemble::new(ens.probs().to_vec(), states)
}

/// Sweeps the eavesdropper's needle spread over an ascending grid.
///
/// Per grid point: chi_after is the Holevo information of the intercepted
/// ensemble, and eve_info is the mutual information of the eavesdropper's
/// own reading (measuring the same operator, per the shared protocol).
pub fn tradeoff_sweep(
    ens: &LetterEnsemble,
    op: &LetterOperator,
    sigma_grid: &[f64],
) -> Result<Vec<TradeoffPoint>> {
    if sigma_grid.is_empty() {
        return Err(Error::InvalidArgs {
            reason: "sigma grid must be non-empty".into(),
        });
    }
    for pair in sigma_grid.windows(2) {
        if !(pair[0] < pair[1]) {
            return Err(Error::InvalidArgs {
                reason: format!(
                    "sigma grid must be strictly ascending ({} then {})",
                    pair[0], pair[1]
                ),
            });
        }
    }
    let chi_before_bits = holevo_chi(ens)?;
    sigma_grid
        .iter()
        .map(|&sigma_eve| {
            let ch_eve = ChannelSpec::new(op.clone(), NeedleSpec::new(sigma_eve)?);
            let chi_after_bits = holevo_chi(&intercept_ensemble(ens, &ch_eve)?)?;
            let eve_info_bits = weak_mutual_information(ens, &ch_eve)?;
            Ok(TradeoffPoint {
                sigma_eve,
                chi_after_bits,
                eve_info_bits,
                chi_before_bits,
            })
        })
        .collect()
}
