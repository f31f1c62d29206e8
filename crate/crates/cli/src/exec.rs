//! Command handlers. Each takes the merged run configuration, runs the
//! computation, and returns the rendered output document.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use weakchan::{
    ChannelSpec, DensityMatrix, GaussianMixture1D, LetterEnsemble, LetterOperator, NeedleSpec,
};

use crate::config::RunConfig;
use crate::emit::{self, JsonObject};
use crate::Failure;

/// Default RNG seed for `simulate` and `placement`.
pub const DEFAULT_SEED: u64 = 42;
/// Default convergence tolerance in bits.
pub const DEFAULT_TOL: f64 = 1e-6;
pub const DEFAULT_CODEBOOKS: usize = 20;
pub const DEFAULT_TRIALS: usize = 500;
pub const DEFAULT_RESTARTS: usize = 4;

enum Format {
    Json,
    Csv,
}

fn format_of(cfg: &RunConfig) -> Result<Format, Failure> {
    match cfg.format.as_deref() {
        None | Some("json") => Ok(Format::Json),
        Some("csv") => Ok(Format::Csv),
        Some(other) => Err(Failure::config(format!(
            "format must be `json` or `csv`, got `{other}`"
        ))),
    }
}

fn need<'a, T>(field: &'a Option<T>, key: &str) -> Result<&'a T, Failure> {
    field
        .as_ref()
        .ok_or_else(|| Failure::config(format!("missing required parameter `{key}`")))
}

fn channel_of(cfg: &RunConfig) -> Result<ChannelSpec, Failure> {
    let eigenvalues = need(&cfg.eigenvalues, "eigenvalues")?.clone();
    let sigma = *need(&cfg.sigma, "sigma")?;
    let op = LetterOperator::new(eigenvalues)?;
    let needle = NeedleSpec::new(sigma)?;
    Ok(ChannelSpec::new(op, needle))
}

fn density_from_pairs(key: &str, pairs: &[[f64; 2]]) -> Result<DensityMatrix, Failure> {
    let len = pairs.len();
    let dim = (len as f64).sqrt().round() as usize;
    if dim == 0 || dim * dim != len {
        return Err(Failure::config(format!(
            "`{key}` has {len} [re,im] pairs; a d x d matrix needs d*d of them"
        )));
    }
    let entries: Vec<Complex64> = pairs.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
    let m = weakchan::ComplexMatrix::new(dim, entries)?;
    Ok(weakchan::validate_density(m)?)
}

fn matrix_pairs(rho: &DensityMatrix) -> Vec<(f64, f64)> {
    rho.matrix().entries().iter().map(|z| (z.re, z.im)).collect()
}

fn join_floats(xs: &[f64]) -> String {
    xs.iter().map(|&x| emit::float(x)).collect::<Vec<_>>().join(",")
}

fn uniform(d: usize) -> Vec<f64> {
    vec![1.0 / d as f64; d]
}

fn ascending(key: &str, grid: &[f64]) -> Result<(), Failure> {
    if grid.is_empty() {
        return Err(Failure::config(format!("`{key}` must be non-empty")));
    }
    for pair in grid.windows(2) {
        if !(pair[0] < pair[1]) {
            return Err(Failure::config(format!(
                "`{key}` must be strictly ascending ({} then {})",
                pair[0], pair[1]
            )));
        }
    }
    Ok(())
}

pub fn capacity(cfg: &RunConfig) -> Result<String, Failure> {
    let ch = channel_of(cfg)?;
    let tol = cfg.tol.unwrap_or(DEFAULT_TOL);
    let r = weakchan::blahut_arimoto_capacity(&ch, tol)?;
    Ok(match format_of(cfg)? {
        Format::Json => JsonObject::new()
            .floats("eigenvalues", ch.operator.eigenvalues())
            .float("sigma", ch.needle.sigma())
            .float("tol", tol)
            .float("capacity_bits", r.capacity_bits)
            .float("upper_bound_bits", r.upper_bound_bits)
            .floats("input_distribution", &r.input_distribution)
            .float("ba_gap_bits", r.ba_gap_bits)
            .integer("iterations", r.iterations as u64)
            .integer("output_bins", r.output_bins as u64)
            .render(),
        Format::Csv => emit::csv_table(
            &[
                "eigenvalues",
                "sigma",
                "tol",
                "capacity_bits",
                "upper_bound_bits",
                "input_distribution",
                "ba_gap_bits",
                "iterations",
                "output_bins",
            ],
            &[vec![
                join_floats(ch.operator.eigenvalues()),
                emit::float(ch.needle.sigma()),
                emit::float(tol),
                emit::float(r.capacity_bits),
                emit::float(r.upper_bound_bits),
                join_floats(&r.input_distribution),
                emit::float(r.ba_gap_bits),
                r.iterations.to_string(),
                r.output_bins.to_string(),
            ]],
        ),
    })
}

pub fn bound(cfg: &RunConfig) -> Result<String, Failure> {
    let ch = channel_of(cfg)?;
    let power = weakchan::power_budget(&ch.operator);
    let upper = weakchan::capacity_upper_bound(&ch);
    Ok(match format_of(cfg)? {
        Format::Json => JsonObject::new()
            .floats("eigenvalues", ch.operator.eigenvalues())
            .float("sigma", ch.needle.sigma())
            .float("power", power)
            .float("upper_bound_bits", upper)
            .render(),
        Format::Csv => emit::csv_table(
            &["eigenvalues", "sigma", "power", "upper_bound_bits"],
            &[vec![
                join_floats(ch.operator.eigenvalues()),
                emit::float(ch.needle.sigma()),
                emit::float(power),
                emit::float(upper),
            ]],
        ),
    })
}

pub fn entropy(cfg: &RunConfig) -> Result<String, Failure> {
    let weights = need(&cfg.weights, "weights")?.clone();
    let means = need(&cfg.means, "means")?.clone();
    let sigma = *need(&cfg.sigma, "sigma")?;
    let gm = GaussianMixture1D::new(weights, means, sigma)?;
    let entropy_bits = gm.entropy()?;
    Ok(match format_of(cfg)? {
        Format::Json => JsonObject::new()
            .floats("weights", gm.weights())
            .floats("means", gm.means())
            .float("sigma", gm.sigma())
            .float("entropy_bits", entropy_bits)
            .render(),
        Format::Csv => emit::csv_table(
            &["weights", "means", "sigma", "entropy_bits"],
            &[vec![
                join_floats(gm.weights()),
                join_floats(gm.means()),
                emit::float(gm.sigma()),
                emit::float(entropy_bits),
            ]],
        ),
    })
}

pub fn channel_map(cfg: &RunConfig) -> Result<String, Failure> {
    let ch = channel_of(cfg)?;
    let rho = match (&cfg.state, &cfg.diag) {
        (Some(_), Some(_)) => {
            return Err(Failure::config(
                "give either `state` or `diag`, not both".into(),
            ))
        }
        (Some(pairs), None) => density_from_pairs("state", pairs)?,
        (None, Some(populations)) => DensityMatrix::from_diagonal(populations)?,
        (None, None) => return Err(Failure::config("missing required parameter `state` (or `diag`)".into())),
    };
    let mapped = weakchan::apply_weak_channel(&rho, &ch)?;
    Ok(match format_of(cfg)? {
        Format::Json => JsonObject::new()
            .floats("eigenvalues", ch.operator.eigenvalues())
            .float("sigma", ch.needle.sigma())
            .integer("dim", rho.dim() as u64)
            .raw("input", &emit::complex_array(&matrix_pairs(&rho)))
            .raw("output", &emit::complex_array(&matrix_pairs(&mapped)))
            .render(),
        Format::Csv => {
            let dim = rho.dim();
            let mut rows = Vec::with_capacity(dim * dim);
            for row in 0..dim {
                for col in 0..dim {
                    let a = rho.entry(row, col);
                    let b = mapped.entry(row, col);
                    rows.push(vec![
                        row.to_string(),
                        col.to_string(),
                        emit::float(a.re),
                        emit::float(a.im),
                        emit::float(b.re),
                        emit::float(b.im),
                    ]);
                }
            }
            emit::csv_table(&["row", "col", "in_re", "in_im", "out_re", "out_im"], &rows)
        }
    })
}

pub fn simulate(cfg: &RunConfig) -> Result<String, Failure> {
    let ch = channel_of(cfg)?;
    let dist = cfg
        .dist
        .clone()
        .unwrap_or_else(|| uniform(ch.operator.dim()));
    let n = *need(&cfg.n, "n")?;
    let rate_bits = *need(&cfg.rate_bits, "rate_bits")?;
    let experiment = weakchan::CodingExperimentConfig {
        channel: ch.clone(),
        input_distribution: dist.clone(),
        n,
        rate_bits,
        codebooks: cfg.codebooks.unwrap_or(DEFAULT_CODEBOOKS),
        trials_per_codebook: cfg.trials.unwrap_or(DEFAULT_TRIALS),
        seed: cfg.seed.unwrap_or(DEFAULT_SEED),
    };
    let r = weakchan::estimate_error_probability(&experiment)?;
    Ok(match format_of(cfg)? {
        Format::Json => JsonObject::new()
            .floats("eigenvalues", ch.operator.eigenvalues())
            .float("sigma", ch.needle.sigma())
            .floats("dist", &dist)
            .integer("n", n as u64)
            .float("rate_bits", rate_bits)
            .integer("codebooks", experiment.codebooks as u64)
            .integer("trials", experiment.trials_per_codebook as u64)
            .integer("seed", experiment.seed)
            .float("p_err", r.p_err)
            .float("stderr", r.stderr)
            .float("fano_floor", r.fano_floor)
            .text("fano_form", "asymptotic")
            .integer("trials_total", r.trials_total as u64)
            .render(),
        Format::Csv => emit::csv_table(
            &[
                "n",
                "rate_bits",
                "codebooks",
                "trials",
                "seed",
                "p_err",
                "stderr",
                "fano_floor",
                "trials_total",
            ],
            &[vec![
                n.to_string(),
                emit::float(rate_bits),
                experiment.codebooks.to_string(),
                experiment.trials_per_codebook.to_string(),
                experiment.seed.to_string(),
                emit::float(r.p_err),
                emit::float(r.stderr),
                emit::float(r.fano_floor),
                r.trials_total.to_string(),
            ]],
        ),
    })
}

pub fn eavesdrop(cfg: &RunConfig) -> Result<String, Failure> {
    let eigenvalues = need(&cfg.eigenvalues, "eigenvalues")?.clone();
    let op = LetterOperator::new(eigenvalues)?;
    let states: Vec<DensityMatrix> = if cfg.basis.unwrap_or(false) {
        if cfg.states.is_some() {
            return Err(Failure::config(
                "give either `basis` or `states`, not both".into(),
            ));
        }
        (0..op.dim())
            .map(|i| DensityMatrix::basis_state(op.dim(), i))
            .collect::<Result<_, _>>()?
    } else {
        let raw = need(&cfg.states, "states")?;
        raw.iter()
            .map(|pairs| density_from_pairs("states", pairs))
            .collect::<Result<_, _>>()?
    };
    let probs = cfg.probs.clone().unwrap_or_else(|| uniform(states.len()));
    let ens = LetterEnsemble::new(probs, states)?;
    let grid = need(&cfg.grid, "grid")?.clone();
    let points = weakchan::tradeoff_sweep(&ens, &op, &grid)?;
    Ok(match format_of(cfg)? {
        Format::Json => {
            let rendered: Vec<String> = points
                .iter()
                .map(|p| {
                    JsonObject::new()
                        .float("sigma_eve", p.sigma_eve)
                        .float("chi_before_bits", p.chi_before_bits)
                        .float("chi_after_bits", p.chi_after_bits)
                        .float("eve_info_bits", p.eve_info_bits)
                        .render_inline()
                })
                .collect();
            JsonObject::new()
                .floats("eigenvalues", op.eigenvalues())
                .floats("probs", ens.probs())
                .raw("points", &format!("[{}]", rendered.join(",")))
                .render()
        }
        Format::Csv => emit::csv_table(
            &["sigma_eve", "chi_before_bits", "chi_after_bits", "eve_info_bits"],
            &points
                .iter()
                .map(|p| {
                    vec![
                        emit::float(p.sigma_eve),
                        emit::float(p.chi_before_bits),
                        emit::float(p.chi_after_bits),
                        emit::float(p.eve_info_bits),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
    })
}

pub fn sweep(cfg: &RunConfig) -> Result<String, Failure> {
    let eigenvalues = need(&cfg.eigenvalues, "eigenvalues")?.clone();
    let op = LetterOperator::new(eigenvalues)?;
    let grid = need(&cfg.grid, "grid")?.clone();
    ascending("grid", &grid)?;
    let tol = cfg.tol.unwrap_or(DEFAULT_TOL);
    let mut points = Vec::with_capacity(grid.len());
    for &sigma in &grid {
        let ch = ChannelSpec::new(op.clone(), NeedleSpec::new(sigma)?);
        let r = weakchan::blahut_arimoto_capacity(&ch, tol)?;
        points.push((sigma, r.capacity_bits, r.upper_bound_bits));
    }
    Ok(match format_of(cfg)? {
        Format::Json => {
            let rendered: Vec<String> = points
                .iter()
                .map(|&(sigma, c, u)| {
                    JsonObject::new()
                        .float("sigma", sigma)
                        .float("capacity_bits", c)
                        .float("upper_bound_bits", u)
                        .render_inline()
                })
                .collect();
            JsonObject::new()
                .floats("eigenvalues", op.eigenvalues())
                .float("tol", tol)
                .raw("points", &format!("[{}]", rendered.join(",")))
                .render()
        }
        Format::Csv => emit::csv_table(
            &["sigma", "capacity_bits", "upper_bound_bits"],
            &points
                .iter()
                .map(|&(sigma, c, u)| {
                    vec![emit::float(sigma), emit::float(c), emit::float(u)]
                })
                .collect::<Vec<_>>(),
        ),
    })
}

pub fn placement(cfg: &RunConfig) -> Result<String, Failure> {
    let dim = *need(&cfg.dim, "dim")?;
    let power = *need(&cfg.power, "power")?;
    let sigma = *need(&cfg.sigma, "sigma")?;
    let needle = NeedleSpec::new(sigma)?;
    let restarts = cfg.restarts.unwrap_or(DEFAULT_RESTARTS);
    let seed = cfg.seed.unwrap_or(DEFAULT_SEED);
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let (op, r) = weakchan::optimize_eigenvalue_placement(dim, power, needle, restarts, &mut rng)?;
    Ok(match format_of(cfg)? {
        Format::Json => JsonObject::new()
            .integer("dim", dim as u64)
            .float("power", power)
            .float("sigma", sigma)
            .integer("restarts", restarts as u64)
            .integer("seed", seed)
            .floats("eigenvalues", op.eigenvalues())
            .float("capacity_bits", r.capacity_bits)
            .float("upper_bound_bits", r.upper_bound_bits)
            .floats("input_distribution", &r.input_distribution)
            .render(),
        Format::Csv => emit::csv_table(
            &[
                "dim",
                "power",
                "sigma",
                "restarts",
                "seed",
                "eigenvalues",
                "capacity_bits",
                "upper_bound_bits",
                "input_distribution",
            ],
            &[vec![
                dim.to_string(),
                emit::float(power),
                emit::float(sigma),
                restarts.to_string(),
                seed.to_string(),
                join_floats(op.eigenvalues()),
                emit::float(r.capacity_bits),
                emit::float(r.upper_bound_bits),
                join_floats(&r.input_distribution),
            ]],
        ),
    })
}

pub fn dispatch(cfg: &RunConfig) -> Result<String, Failure> {
    match need(&cfg.command, "command")?.as_str() {
        "capacity" => capacity(cfg),
        "bound" => bound(cfg),
        "entropy" => entropy(cfg),
        "channel-map" => channel_map(cfg),
        "simulate" => simulate(cfg),
        "eavesdrop" => eavesdrop(cfg),
        "sweep" => sweep(cfg),
        "placement" => placement(cfg),
        other => Err(Failure::config(format!(
            "unknown command `{other}` (expected capacity, bound, entropy, \
             channel-map, simulate, eavesdrop, sweep, or placement)"
        ))),
    }
}
