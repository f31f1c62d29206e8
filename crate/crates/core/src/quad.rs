//! Composite Gauss–Legendre quadrature with panel-doubling refinement.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Nodes per panel.
pub const PANEL_ORDER: usize = 16;

/// Hard cap on total nodes per estimate.
pub const MAX_NODES: usize = 1 << 20;

/// Gauss–Legendre nodes and weights on [-1, 1] for [`PANEL_ORDER`] points,
/// computed once by Newton iteration on the Legendre polynomial.
fn panel_rule() -> &'static ([f64; PANEL_ORDER], [f64; PANEL_ORDER]) {
    static RULE: OnceLock<([f64; PANEL_ORDER], [f64; PANEL_ORDER])> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = PANEL_ORDER;
        let mut nodes = [0.0; PANEL_ORDER];
        let mut weights = [0.0; PANEL_ORDER];
        for i in 0..(n + 1) / 2 {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // Evaluate P_n(x) and P_n'(x) by the three-term recurrence.
                let mut p0 = 1.0;
                let mut p1 = x;
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        (nodes, weights)
    })
}

/// Composite Gauss–Legendre estimate of ∫ f over [lo, hi] with `panels`
/// equal panels of [`PANEL_ORDER`] nodes each.
pub fn integrate_fixed<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, panels: usize) -> f64 {
    let (nodes, weights) = panel_rule();
    let width = (hi - lo) / panels as f64;
    let half = 0.5 * width;
    let mut total = 0.0;
    for p in 0..panels {
        let center = lo + (p as f64 + 0.5) * width;
        let mut acc = 0.0;
        for k in 0..PANEL_ORDER {
            acc += weights[k] * f(center + half * nodes[k]);
        }
        total += acc * half;
    }
    total
}

/// Integrates f over [lo, hi], doubling the panel count until two successive
/// estimates agree within `abs_tol`. Starts from `initial_panels` (raised to
/// at least 1) and fails with the last two estimates once an estimate would
/// exceed [`MAX_NODES`] nodes.
pub fn integrate_doubling<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    initial_panels: usize,
    abs_tol: f64,
) -> Result<f64> {
    let max_panels = MAX_NODES / PANEL_ORDER;
    let mut panels = initial_panels.clamp(1, max_panels / 2);
    let mut previous = integrate_fixed(f, lo, hi, panels);
    loop {
        panels *= 2;
        let estimate = integrate_fixed(f, lo, hi, panels);
        if (estimate - previous).abs() < abs_tol {
            return Ok(estimate);
        }
        if panels * 2 > max_panels {
            return Err(Error::QuadratureNoConvergence {
                nodes: panels * PANEL_ORDER,
                previous,
                last: estimate,
            });
        }
        previous = estimate;
    }
}
