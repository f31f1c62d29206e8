//! Demo computations behind the browser bindings: parse the page's inputs,
//! run the library, and render compact JSON for the canvas plots. Errors
//! are returned as plain messages; the bindings wrap them for JS.

use weakchan::capacity::blahut_arimoto_capacity;
use weakchan::channel::{ChannelSpec, LetterEnsemble, LetterOperator};
use weakchan::eavesdrop::tradeoff_sweep;
use weakchan::linalg::DensityMatrix;
use weakchan::needle::{gaussian_entropy_bits, GaussianMixture1D, NeedleSpec};

/// Capacity solves per sweep stay interactive below this many grid points.
pub const MAX_SWEEP_POINTS: usize = 129;
/// Plot resolution cap for the density curve.
pub const MAX_CURVE_POINTS: usize = 4096;
/// Solver tolerance for the demo; coarse enough to stay responsive.
pub const DEMO_TOL: f64 = 1e-4;

fn parse_floats(what: &str, s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|piece| {
            piece
                .trim()
                .parse::<f64>()
                .map_err(|_| format!("{what}: `{piece}` is not a number"))
        })
        .collect()
}

fn json_floats(xs: &[f64]) -> String {
    let rendered: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("[{}]", rendered.join(","))
}

fn check_points(points: usize, max: usize) -> Result<(), String> {
    if points < 2 || points > max {
        return Err(format!("points = {points} (must be between 2 and {max})"));
    }
    Ok(())
}

fn log_spaced(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>, String> {
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo < hi) {
        return Err(format!("need 0 < min < max, got [{lo}, {hi}]"));
    }
    let (a, b) = (lo.ln(), hi.ln());
    Ok((0..points)
        .map(|k| (a + (b - a) * k as f64 / (points - 1) as f64).exp())
        .collect())
}

/// Readout density of the eigenstate ensemble: pdf samples across the
/// mixture window plus its entropy and the information carried per use.
pub fn density_curve(
    eigenvalues: &str,
    probs: &str,
    sigma: f64,
    points: usize,
) -> Result<String, String> {
    check_points(points, MAX_CURVE_POINTS)?;
    let xs = parse_floats("eigenvalues", eigenvalues)?;
    let op = LetterOperator::new(xs).map_err(|e| e.to_string())?;
    let weights = parse_floats("probs", probs)?;
    let gm = GaussianMixture1D::new(weights, op.eigenvalues().to_vec(), sigma)
        .map_err(|e| e.to_string())?;
    let (lo, hi) = gm.window();
    let grid: Vec<f64> = (0..points)
        .map(|k| lo + (hi - lo) * k as f64 / (points - 1) as f64)
        .collect();
    let pdf: Vec<f64> = grid.iter().map(|&y| gm.pdf(y)).collect();
    let entropy_bits = gm.entropy().map_err(|e| e.to_string())?;
    let information_bits = (entropy_bits - gaussian_entropy_bits(sigma)).max(0.0);
    Ok(format!(
        "{{\"xs\":{},\"pdf\":{},\"entropy_bits\":{},\"information_bits\":{}}}\n",
        json_floats(&grid),
        json_floats(&pdf),
        entropy_bits,
        information_bits
    ))
}

/// Capacity and the ½·log₂(P/σ²+1) bound across a log-spaced needle grid.
pub fn capacity_sweep(
    eigenvalues: &str,
    sigma_min: f64,
    sigma_max: f64,
    points: usize,
) -> Result<String, String> {
    check_points(points, MAX_SWEEP_POINTS)?;
    let xs = parse_floats("eigenvalues", eigenvalues)?;
    let op = LetterOperator::new(xs).map_err(|e| e.to_string())?;
    let sigmas = log_spaced(sigma_min, sigma_max, points)?;
    let mut capacity = Vec::with_capacity(points);
    let mut bound = Vec::with_capacity(points);
    for &sigma in &sigmas {
        let ch = ChannelSpec::new(op.clone(), NeedleSpec::new(sigma).map_err(|e| e.to_string())?);
        let r = blahut_arimoto_capacity(&ch, DEMO_TOL).map_err(|e| e.to_string())?;
        capacity.push(r.capacity_bits);
        bound.push(r.upper_bound_bits);
    }
    Ok(format!(
        "{{\"sigmas\":{},\"capacity_bits\":{},\"upper_bound_bits\":{}}}\n",
        json_floats(&sigmas),
        json_floats(&capacity),
        json_floats(&bound)
    ))
}

/// Interception tradeoff for the conjugate pair (|0⟩±|1⟩)/√2 sent over
/// letters {0, gap}: what the receiver keeps and the eavesdropper gains,
/// across a log-spaced grid of eavesdropper needle widths.
pub fn interception_tradeoff(
    gap: f64,
    sigma_min: f64,
    sigma_max: f64,
    points: usize,
) -> Result<String, String> {
    check_points(points, MAX_SWEEP_POINTS)?;
    if !gap.is_finite() || gap <= 0.0 {
        return Err(format!("gap = {gap} (must be positive and finite)"));
    }
    let op = LetterOperator::new(vec![0.0, gap]).map_err(|e| e.to_string())?;
    let one = num_complex::Complex64::new(1.0, 0.0);
    let plus = DensityMatrix::pure(&[one, one]).map_err(|e| e.to_string())?;
    let minus = DensityMatrix::pure(&[one, -one]).map_err(|e| e.to_string())?;
    let ens = LetterEnsemble::new(vec![0.5, 0.5], vec![plus, minus]).map_err(|e| e.to_string())?;
    let sigmas = log_spaced(sigma_min, sigma_max, points)?;
    let tradeoff = tradeoff_sweep(&ens, &op, &sigmas).map_err(|e| e.to_string())?;
    let chi_after: Vec<f64> = tradeoff.iter().map(|p| p.chi_after_bits).collect();
    let eve_info: Vec<f64> = tradeoff.iter().map(|p| p.eve_info_bits).collect();
    Ok(format!(
        "{{\"sigmas\":{},\"chi_before_bits\":{},\"chi_after_bits\":{},\"eve_info_bits\":{}}}\n",
        json_floats(&sigmas),
        tradeoff[0].chi_before_bits,
        json_floats(&chi_after),
        json_floats(&eve_info)
    ))
}
