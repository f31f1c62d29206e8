//! Acceptance gate for the whole workspace. Each test covers one numbered
//! criterion, prints a single PASS/FAIL line, and then asserts, so
//!
//! ```text
//! cargo test --test acceptance -- --show-output
//! ```
//!
//! yields one verdict line per criterion with the measured margins.

use std::process::Command;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weakchan::capacity::blahut_arimoto_capacity;
use weakchan::channel::{apply_weak_channel, weak_mutual_information, ChannelSpec};
use weakchan::eavesdrop::tradeoff_sweep;
use weakchan::linalg::{ComplexMatrix, DensityMatrix};
use weakchan::needle::GaussianMixture1D;
use weakchan::testing::{random_channel_spec, random_density, random_probs};
use weakchan::{CodingExperimentConfig, LetterEnsemble, LetterOperator, NeedleSpec};

fn report(id: usize, name: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {id:02} [{verdict}] {name}: {detail}");
    assert!(pass, "criterion {id:02} {name}: {detail}");
}

fn binary_unit_channel() -> ChannelSpec {
    ChannelSpec::new(
        LetterOperator::new(vec![-1.0, 1.0]).unwrap(),
        NeedleSpec::new(1.0).unwrap(),
    )
}

#[test]
fn criterion_01_capacity_sits_strictly_below_the_snr_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let mut min_gap = f64::INFINITY;
    let mut strict = true;
    for _ in 0..50 {
        let ch = random_channel_spec(&mut rng);
        let r = blahut_arimoto_capacity(&ch, 1e-6).unwrap();
        strict &= r.capacity_bits < r.upper_bound_bits;
        min_gap = min_gap.min(r.upper_bound_bits - r.capacity_bits);
    }
    report(
        1,
        "capacity below bound on 50 random specs",
        strict && min_gap > 1e-4,
        &format!("min gap {min_gap:.3e} bits"),
    );
}

/// Binary ±1, unit noise: Simpson quadrature of the output entropy, sharing
/// nothing with the library's Gauss-Legendre machinery.
fn binary_information_oracle(p: f64) -> f64 {
    let density = |y: f64| {
        let g = |u: f64| (-0.5 * u * u).exp() / (2.0 * std::f64::consts::PI).sqrt();
        p * g(y + 1.0) + (1.0 - p) * g(y - 1.0)
    };
    let (lo, hi, points) = (-9.0f64, 9.0f64, 36_001usize);
    let h = (hi - lo) / (points - 1) as f64;
    let mut acc = 0.0;
    for k in 0..points {
        let w = if k == 0 || k == points - 1 {
            1.0
        } else if k % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let f = density(lo + h * k as f64);
        if f > 0.0 {
            acc += w * f * f.log2();
        }
    }
    let mixture_entropy = -acc * h / 3.0;
    mixture_entropy - 0.5 * (2.0 * std::f64::consts::PI * std::f64::consts::E).log2()
}

fn binary_capacity_oracle() -> (f64, f64) {
    let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut a = hi - inv_phi * (hi - lo);
    let mut b = lo + inv_phi * (hi - lo);
    let mut fa = binary_information_oracle(a);
    let mut fb = binary_information_oracle(b);
    while hi - lo > 1e-10 {
        if fa < fb {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = binary_information_oracle(b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = binary_information_oracle(a);
        }
    }
    let p = 0.5 * (lo + hi);
    (p, binary_information_oracle(p))
}

#[test]
fn criterion_02_binary_capacity_matches_the_independent_oracle() {
    let (p_star, c_star) = binary_capacity_oracle();
    let r = blahut_arimoto_capacity(&binary_unit_channel(), 1e-6).unwrap();
    let dc = (r.capacity_bits - c_star).abs();
    let dp = (r.input_distribution[0] - 0.5)
        .abs()
        .max((r.input_distribution[1] - 0.5).abs());
    report(
        2,
        "binary capacity against golden-section + Simpson oracle",
        dc <= 1e-4 && dp <= 1e-3 && (p_star - 0.5).abs() <= 1e-6,
        &format!("|dC| = {dc:.3e} bits, |p - 1/2| = {dp:.3e}"),
    );
}

#[test]
fn criterion_03_strong_and_weak_limits_bracket_the_capacity() {
    let strong = ChannelSpec::new(
        LetterOperator::new(vec![0.0, 100.0]).unwrap(),
        NeedleSpec::new(1.0).unwrap(),
    );
    let weak = ChannelSpec::new(
        LetterOperator::new(vec![0.0, 0.01]).unwrap(),
        NeedleSpec::new(1.0).unwrap(),
    );
    let c_strong = blahut_arimoto_capacity(&strong, 1e-6).unwrap().capacity_bits;
    let c_weak = blahut_arimoto_capacity(&weak, 1e-6).unwrap().capacity_bits;
    report(
        3,
        "separated letters reach one bit, overlapping letters carry none",
        (c_strong - 1.0).abs() <= 1e-4 && c_weak < 1e-3,
        &format!("C(0,100) = {c_strong:.6}, C(0,0.01) = {c_weak:.3e}"),
    );
}

#[test]
fn criterion_04_capacity_is_invariant_under_joint_rescaling() {
    let mut rng = ChaCha8Rng::seed_from_u64(1004);
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let ch = random_channel_spec(&mut rng);
        let base = blahut_arimoto_capacity(&ch, 1e-6).unwrap().capacity_bits;
        for c in [0.1, 3.0, 40.0] {
            let xs: Vec<f64> = ch.operator.eigenvalues().iter().map(|x| c * x).collect();
            let scaled = ChannelSpec::new(
                LetterOperator::new(xs).unwrap(),
                NeedleSpec::new(c * ch.needle.sigma()).unwrap(),
            );
            let cap = blahut_arimoto_capacity(&scaled, 1e-6).unwrap().capacity_bits;
            worst = worst.max((cap - base).abs());
        }
    }
    report(
        4,
        "joint rescaling of letters and needle on 5 specs x 3 scales",
        worst < 1e-5,
        &format!("max |dC| = {worst:.3e} bits"),
    );
}

#[test]
fn criterion_05_no_ensemble_beats_the_classical_optimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(1005);
    let mut max_excess = f64::NEG_INFINITY;
    let mut max_attain_err = 0.0f64;
    for trial in 0..20 {
        let ch = random_channel_spec(&mut rng);
        let d = ch.operator.dim();
        let r = blahut_arimoto_capacity(&ch, 1e-6).unwrap();
        for _ in 0..5 {
            let k = rng.gen_range(2..=4);
            let probs = random_probs(&mut rng, k);
            let states = (0..k).map(|_| random_density(&mut rng, d)).collect();
            let ens = LetterEnsemble::new(probs, states).unwrap();
            let info = weak_mutual_information(&ens, &ch).unwrap();
            max_excess = max_excess.max(info - r.capacity_bits);
        }
        if trial < 5 {
            let states = (0..d)
                .map(|i| DensityMatrix::basis_state(d, i).unwrap())
                .collect();
            let ens = LetterEnsemble::new(r.input_distribution.clone(), states).unwrap();
            let info = weak_mutual_information(&ens, &ch).unwrap();
            max_attain_err = max_attain_err.max((info - r.capacity_bits).abs());
        }
    }
    report(
        5,
        "100 random ensembles vs classical optimum, eigenstates attain it",
        max_excess <= 1e-5 && max_attain_err <= 1e-5,
        &format!("max excess {max_excess:.3e} bits, eigenstate mismatch {max_attain_err:.3e} bits"),
    );
}

fn needle_amplitude(sigma: f64, u: f64) -> f64 {
    let norm = (2.0 * std::f64::consts::PI * sigma * sigma).powf(-0.25);
    norm * (-u * u / (4.0 * sigma * sigma)).exp()
}

/// Simpson integral of ∫ K_y ρ K_y† dy with K_y = φ(y - Â), from scratch.
fn kraus_integral(rho: &DensityMatrix, ch: &ChannelSpec, points: usize) -> ComplexMatrix {
    let xs = ch.operator.eigenvalues();
    let sigma = ch.needle.sigma();
    let lo = xs[0] - 8.0 * sigma;
    let hi = xs[xs.len() - 1] + 8.0 * sigma;
    let h = (hi - lo) / (points - 1) as f64;
    let d = rho.dim();
    let mut acc = vec![Complex64::new(0.0, 0.0); d * d];
    for k in 0..points {
        let y = lo + h * k as f64;
        let w = if k == 0 || k == points - 1 {
            1.0
        } else if k % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let amps: Vec<f64> = xs.iter().map(|&x| needle_amplitude(sigma, y - x)).collect();
        for i in 0..d {
            for j in 0..d {
                acc[i * d + j] += rho.entry(i, j) * (w * amps[i] * amps[j]);
            }
        }
    }
    let mut out = ComplexMatrix::zeros(d);
    for i in 0..d {
        for j in 0..d {
            out.set(i, j, acc[i * d + j] * (h / 3.0));
        }
    }
    out
}

#[test]
fn criterion_06_closed_form_map_equals_the_kraus_integral() {
    let mut rng = ChaCha8Rng::seed_from_u64(1006);
    let mut max_residual = 0.0f64;
    let mut diagonal_fixed = true;
    let mut max_compose = 0.0f64;
    for _ in 0..20 {
        let ch = random_channel_spec(&mut rng);
        let d = ch.operator.dim();
        let rho = random_density(&mut rng, d);
        let integral = kraus_integral(&rho, &ch, 20_001);
        let mapped = apply_weak_channel(&rho, &ch).unwrap();
        max_residual = max_residual.max(integral.max_abs_diff(mapped.matrix()));

        let diag = DensityMatrix::from_diagonal(&random_probs(&mut rng, d)).unwrap();
        let diag_mapped = apply_weak_channel(&diag, &ch).unwrap();
        diagonal_fixed &= diag_mapped.matrix().max_abs_diff(diag.matrix()) == 0.0;

        let twice = apply_weak_channel(&mapped, &ch).unwrap();
        let tighter = ChannelSpec::new(
            ch.operator.clone(),
            NeedleSpec::new(ch.needle.sigma() / 2.0f64.sqrt()).unwrap(),
        );
        let composed = apply_weak_channel(&rho, &tighter).unwrap();
        max_compose = max_compose.max(twice.matrix().max_abs_diff(composed.matrix()));
    }
    report(
        6,
        "Kraus quadrature, diagonal fixed points, composition law",
        max_residual <= 1e-8 && diagonal_fixed && max_compose <= 1e-12,
        &format!(
            "quadrature residual {max_residual:.3e}, composition residual {max_compose:.3e}, \
             diagonals fixed: {diagonal_fixed}"
        ),
    );
}

#[test]
fn criterion_07_entropy_engine_agrees_with_monte_carlo() {
    let mut rng = ChaCha8Rng::seed_from_u64(1007);
    let mut worst_sds = 0.0f64;
    for _ in 0..20 {
        let k = rng.gen_range(1..=8);
        let weights = random_probs(&mut rng, k);
        let means: Vec<f64> = (0..k).map(|_| rng.gen_range(-20.0..20.0)).collect();
        let sigma = rng.gen_range(0.1..5.0);
        let gm = GaussianMixture1D::new(weights, means, sigma).unwrap();
        let quadrature = gm.entropy().unwrap();

        let n = 1_000_000usize;
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for _ in 0..n {
            let term = -gm.pdf(gm.sample(&mut rng)).log2();
            sum += term;
            sum_sq += term * term;
        }
        let mean = sum / n as f64;
        let variance = (sum_sq / n as f64 - mean * mean).max(0.0);
        let stderr = (variance / n as f64).sqrt().max(f64::MIN_POSITIVE);
        worst_sds = worst_sds.max((quadrature - mean).abs() / stderr);
    }
    let pure = GaussianMixture1D::new(vec![1.0], vec![0.7], 1.3).unwrap();
    let closed_form = 0.5 * (2.0 * std::f64::consts::PI * std::f64::consts::E * 1.3 * 1.3).log2();
    let gaussian_err = (pure.entropy().unwrap() - closed_form).abs();
    report(
        7,
        "mixture entropy vs 1e6-sample Monte Carlo and the Gaussian closed form",
        worst_sds <= 4.0 && gaussian_err <= 1e-9,
        &format!("worst deviation {worst_sds:.2} stderr, Gaussian error {gaussian_err:.3e} bits"),
    );
}

fn binary_experiment(n: usize, rate_bits: f64, seed: u64) -> CodingExperimentConfig {
    CodingExperimentConfig {
        channel: binary_unit_channel(),
        input_distribution: vec![0.5, 0.5],
        n,
        rate_bits,
        codebooks: 20,
        trials_per_codebook: 500,
        seed,
    }
}

#[test]
fn criterion_08_block_errors_grow_with_rate_and_fall_with_blocklength() {
    let low = weakchan::estimate_error_probability(&binary_experiment(16, 0.25, 801)).unwrap();
    let high = weakchan::estimate_error_probability(&binary_experiment(16, 0.75, 802)).unwrap();
    let pooled_rate = (low.stderr.powi(2) + high.stderr.powi(2)).sqrt();
    let rate_ok = high.p_err - low.p_err >= 3.0 * pooled_rate;

    let mut length_ok = true;
    let mut trend = Vec::new();
    let mut prev: Option<weakchan::CodingExperimentResult> = None;
    for (i, n) in [8usize, 16, 24].into_iter().enumerate() {
        let r = if n == 16 {
            low.clone()
        } else {
            weakchan::estimate_error_probability(&binary_experiment(n, 0.25, 803 + i as u64))
                .unwrap()
        };
        if let Some(p) = &prev {
            let pooled = (p.stderr.powi(2) + r.stderr.powi(2)).sqrt();
            length_ok &= r.p_err <= p.p_err + 3.0 * pooled;
        }
        trend.push(format!("p_err(n={n}) = {:.4}", r.p_err));
        prev = Some(r);
    }
    report(
        8,
        "rate and blocklength trends at 20 codebooks x 500 trials",
        rate_ok && length_ok,
        &format!(
            "p_err(R=0.25) = {:.4} vs p_err(R=0.75) = {:.4} (gap {:.1} stderr); {}",
            low.p_err,
            high.p_err,
            (high.p_err - low.p_err) / pooled_rate,
            trend.join(", ")
        ),
    );
}

#[test]
fn criterion_09_error_rates_respect_the_fano_floor_above_capacity() {
    let chi = blahut_arimoto_capacity(&binary_unit_channel(), 1e-6)
        .unwrap()
        .capacity_bits;
    let r = weakchan::estimate_error_probability(&binary_experiment(16, 1.2 * chi, 809)).unwrap();
    report(
        9,
        "empirical p_err vs converse floor at R = 1.2 chi, n = 16",
        r.fano_floor > 0.0 && r.p_err >= r.fano_floor - 3.0 * r.stderr,
        &format!(
            "p_err = {:.4} >= floor {:.4} - 3 x {:.4}",
            r.p_err, r.fano_floor, r.stderr
        ),
    );
}

#[test]
fn criterion_10_interception_tradeoff_matches_the_analytic_curve() {
    let plus = DensityMatrix::pure(&[Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]).unwrap();
    let minus = DensityMatrix::pure(&[Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]).unwrap();
    let ens = LetterEnsemble::new(vec![0.5, 0.5], vec![plus, minus]).unwrap();
    let op = LetterOperator::new(vec![0.0, 1.0]).unwrap();
    let grid = [0.5, 1.0, 2.0, 4.0];
    let points = tradeoff_sweep(&ens, &op, &grid).unwrap();

    let binary_entropy = |p: f64| -> f64 {
        let mut h = 0.0;
        for q in [p, 1.0 - p] {
            if q > 0.0 {
                h -= q * q.log2();
            }
        }
        h
    };
    let mut max_err = 0.0f64;
    let mut monotone = true;
    for (point, sigma) in points.iter().zip(grid) {
        let gamma = (-1.0 / (8.0 * sigma * sigma)).exp();
        let analytic = 1.0 - binary_entropy(0.5 * (1.0 + gamma));
        max_err = max_err.max((point.chi_after_bits - analytic).abs());
    }
    for pair in points.windows(2) {
        monotone &= pair[1].chi_after_bits >= pair[0].chi_after_bits;
        monotone &= pair[1].eve_info_bits <= pair[0].eve_info_bits;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1010);
    let mut diagonal_exact = true;
    for _ in 0..5 {
        let ch = random_channel_spec(&mut rng);
        let d = ch.operator.dim();
        let k = rng.gen_range(2..=4);
        let probs = random_probs(&mut rng, k);
        let states = (0..k)
            .map(|_| DensityMatrix::from_diagonal(&random_probs(&mut rng, d)).unwrap())
            .collect();
        let diag_ens = LetterEnsemble::new(probs, states).unwrap();
        let pts = tradeoff_sweep(&diag_ens, &ch.operator, &[ch.needle.sigma()]).unwrap();
        diagonal_exact &= pts[0].chi_after_bits.to_bits() == pts[0].chi_before_bits.to_bits();
    }
    report(
        10,
        "conjugate-ensemble curve, monotone tradeoff, diagonal immunity",
        max_err <= 1e-8 && monotone && diagonal_exact,
        &format!("max curve error {max_err:.3e} bits, monotone: {monotone}, diagonal chi preserved: {diagonal_exact}"),
    );
}

#[test]
fn criterion_11_every_command_is_byte_deterministic() {
    let invocations: &[&[&str]] = &[
        &["capacity", "--eigenvalues", "-1,1", "--sigma", "1", "--tol", "1e-5"],
        &["bound", "--eigenvalues", "-2,3", "--sigma", "1"],
        &["entropy", "--weights", "0.25,0.75", "--means", "-1,1", "--sigma", "0.8"],
        &[
            "channel-map",
            "--eigenvalues",
            "-1,1",
            "--sigma",
            "0.7",
            "--state",
            "[[0.6,0],[0.2,0.1],[0.2,-0.1],[0.4,0]]",
        ],
        &[
            "simulate",
            "--eigenvalues",
            "-1,1",
            "--sigma",
            "1",
            "--n",
            "8",
            "--rate-bits",
            "0.5",
            "--codebooks",
            "5",
            "--trials",
            "200",
            "--seed",
            "42",
        ],
        &[
            "eavesdrop",
            "--eigenvalues",
            "0,1",
            "--probs",
            "0.5,0.5",
            "--basis",
            "--grid",
            "0.5,1,2",
        ],
        &["sweep", "--eigenvalues", "-1,1", "--grid", "0.8,1.6", "--tol", "1e-5"],
        &["placement", "--dim", "2", "--power", "2", "--sigma", "1", "--restarts", "2", "--seed", "7"],
        &["capacity", "--eigenvalues", "-1,1", "--sigma", "1", "--tol", "1e-5", "--format", "csv"],
        &[
            "simulate",
            "--eigenvalues",
            "-1,1",
            "--sigma",
            "1",
            "--n",
            "8",
            "--rate-bits",
            "0.5",
            "--codebooks",
            "5",
            "--trials",
            "200",
            "--seed",
            "42",
            "--format",
            "csv",
        ],
    ];
    let mut all_identical = true;
    let mut checked = 0usize;
    for args in invocations {
        let once = Command::new(env!("CARGO_BIN_EXE_weakchan"))
            .args(*args)
            .output()
            .unwrap();
        let twice = Command::new(env!("CARGO_BIN_EXE_weakchan"))
            .args(*args)
            .output()
            .unwrap();
        let same = once.status.code() == Some(0)
            && twice.status.code() == Some(0)
            && once.stdout == twice.stdout
            && once.stderr == twice.stderr;
        if !same {
            all_identical = false;
            eprintln!("non-deterministic or failing invocation: {args:?}");
        }
        checked += 1;
    }
    report(
        11,
        "paired runs of every subcommand produce identical bytes",
        all_identical,
        &format!("{checked} invocations, each run twice"),
    );
}
