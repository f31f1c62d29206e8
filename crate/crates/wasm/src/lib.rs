//! Browser bindings for the interactive demo page.
//!
//! Three operations back the static page in `www/`: the readout density
//! with its entropy, a capacity sweep across needle widths, and an
//! interception tradeoff curve. Each returns a JSON string, so the page
//! needs no glue beyond what wasm-bindgen generates. The computations
//! live in [`ops`], which is plain Rust and tested natively.

use wasm_bindgen::prelude::*;

pub mod ops;

/// Readout density of eigenstate letters: `{xs, pdf, entropy_bits,
/// information_bits}` across the mixture window.
#[wasm_bindgen]
pub fn density_curve(
    eigenvalues: &str,
    probs: &str,
    sigma: f64,
    points: usize,
) -> Result<String, JsError> {
    ops::density_curve(eigenvalues, probs, sigma, points).map_err(|m| JsError::new(&m))
}

/// Capacity vs needle width: `{sigmas, capacity_bits, upper_bound_bits}`
/// on a log-spaced grid.
#[wasm_bindgen]
pub fn capacity_sweep(
    eigenvalues: &str,
    sigma_min: f64,
    sigma_max: f64,
    points: usize,
) -> Result<String, JsError> {
    ops::capacity_sweep(eigenvalues, sigma_min, sigma_max, points).map_err(|m| JsError::new(&m))
}

/// Interception tradeoff for the conjugate pair on letters {0, gap}:
/// `{sigmas, chi_before_bits, chi_after_bits, eve_info_bits}`.
#[wasm_bindgen]
pub fn interception_tradeoff(
    gap: f64,
    sigma_min: f64,
    sigma_max: f64,
    points: usize,
) -> Result<String, JsError> {
    ops::interception_tradeoff(gap, sigma_min, sigma_max, points).map_err(|m| JsError::new(&m))
}
