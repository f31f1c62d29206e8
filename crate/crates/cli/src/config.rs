//! Run configuration: shared flag set, JSON config files, and the merge
//! rule (command-line flags override file values).

use serde::{Deserialize, Serialize};

use crate::Failure;

/// Flags shared by every subcommand. Each flag mirrors a config-file key of
/// the same name; a command reads the fields it needs and ignores the rest.
#[derive(clap::Args, Debug, Default, Clone)]
pub struct CommonArgs {
    /// Comma-separated letter eigenvalues, strictly increasing
    #[arg(long, allow_hyphen_values = true)]
    pub eigenvalues: Option<String>,
    /// Needle standard deviation
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<f64>,
    /// Convergence tolerance in bits [default: 1e-6]
    #[arg(long, allow_hyphen_values = true)]
    pub tol: Option<f64>,
    /// Comma-separated mixture weights (entropy)
    #[arg(long, allow_hyphen_values = true)]
    pub weights: Option<String>,
    /// Comma-separated mixture means (entropy)
    #[arg(long, allow_hyphen_values = true)]
    pub means: Option<String>,
    /// Density matrix as JSON [re,im] pairs, row-major (channel-map)
    #[arg(long, allow_hyphen_values = true)]
    pub state: Option<String>,
    /// Diagonal density matrix shorthand: comma-separated diagonal
    #[arg(long, allow_hyphen_values = true)]
    pub diag: Option<String>,
    /// Comma-separated input distribution (simulate) [default: uniform]
    #[arg(long, allow_hyphen_values = true)]
    pub dist: Option<String>,
    /// Block length (simulate)
    #[arg(long)]
    pub n: Option<usize>,
    /// Rate in bits per symbol (simulate)
    #[arg(long, allow_hyphen_values = true)]
    pub rate_bits: Option<f64>,
    /// Number of random codebooks (simulate) [default: 20]
    #[arg(long)]
    pub codebooks: Option<usize>,
    /// Trials per codebook (simulate) [default: 500]
    #[arg(long)]
    pub trials: Option<usize>,
    /// Comma-separated ensemble probabilities (eavesdrop)
    #[arg(long, allow_hyphen_values = true)]
    pub probs: Option<String>,
    /// Ensemble states as JSON: array of row-major [re,im]-pair matrices
    #[arg(long, allow_hyphen_values = true)]
    pub states: Option<String>,
    /// Use the eigenstate ensemble |x_i><x_i| instead of --states
    #[arg(long)]
    pub basis: bool,
    /// Comma-separated ascending grid: sigma_eve (eavesdrop) or sigma (sweep)
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Alphabet size (placement)
    #[arg(long)]
    pub dim: Option<usize>,
    /// Power budget max_i x_i^2 (placement)
    #[arg(long, allow_hyphen_values = true)]
    pub power: Option<f64>,
    /// Random restarts for the placement search [default: 4]
    #[arg(long)]
    pub restarts: Option<usize>,
    /// RNG seed [default: 42]
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output format: json or csv [default: json]
    #[arg(long)]
    pub format: Option<String>,
    /// Output file path [default: standard output]
    #[arg(long)]
    pub output: Option<String>,
    /// Write the effective merged config as JSON to this path
    #[arg(long)]
    pub emit_config: Option<String>,
}

/// A config file / the effective merged configuration. Field names are the
/// flag names; absent keys fall back to the same defaults as absent flags.
#[derive(Debug, Default, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub command: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub means: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diag: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dist: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rate_bits: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub codebooks: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probs: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub states: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub power: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restarts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

fn parse_float_list(what: &str, s: &str) -> Result<Vec<f64>, Failure> {
    s.split(',')
        .map(|piece| {
            piece.trim().parse::<f64>().map_err(|_| {
                Failure::config(format!("{what}: `{piece}` is not a number"))
            })
        })
        .collect()
}

fn parse_matrix(what: &str, s: &str) -> Result<Vec<[f64; 2]>, Failure> {
    serde_json::from_str(s)
        .map_err(|e| Failure::config(format!("{what}: expected JSON [re,im] pairs ({e})")))
}

fn parse_matrices(what: &str, s: &str) -> Result<Vec<Vec<[f64; 2]>>, Failure> {
    serde_json::from_str(s).map_err(|e| {
        Failure::config(format!(
            "{what}: expected a JSON array of [re,im]-pair matrices ({e})"
        ))
    })
}

pub fn load_file(path: &str) -> Result<RunConfig, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::config(format!("cannot read config {path}: {e}")))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::config(format!("config {path} is not a valid RunConfig: {e}")))
}

/// Flags override file values; the `basis` flag can only turn the option on.
pub fn merge(command: Option<&str>, args: &CommonArgs, file: RunConfig) -> Result<RunConfig, Failure> {
    let from_list = |what: &str, s: &Option<String>| -> Result<Option<Vec<f64>>, Failure> {
        s.as_deref().map(|s| parse_float_list(what, s)).transpose()
    };
    Ok(RunConfig {
        command: command.map(str::to_string).or(file.command),
        eigenvalues: from_list("--eigenvalues", &args.eigenvalues)?.or(file.eigenvalues),
        sigma: args.sigma.or(file.sigma),
        tol: args.tol.or(file.tol),
        weights: from_list("--weights", &args.weights)?.or(file.weights),
        means: from_list("--means", &args.means)?.or(file.means),
        state: args
            .state
            .as_deref()
            .map(|s| parse_matrix("--state", s))
            .transpose()?
            .or(file.state),
        diag: from_list("--diag", &args.diag)?.or(file.diag),
        dist: from_list("--dist", &args.dist)?.or(file.dist),
        n: args.n.or(file.n),
        rate_bits: args.rate_bits.or(file.rate_bits),
        codebooks: args.codebooks.or(file.codebooks),
        trials: args.trials.or(file.trials),
        probs: from_list("--probs", &args.probs)?.or(file.probs),
        states: args
            .states
            .as_deref()
            .map(|s| parse_matrices("--states", s))
            .transpose()?
            .or(file.states),
        basis: if args.basis { Some(true) } else { file.basis },
        grid: from_list("--grid", &args.grid)?.or(file.grid),
        dim: args.dim.or(file.dim),
        power: args.power.or(file.power),
        restarts: args.restarts.or(file.restarts),
        seed: args.seed.or(file.seed),
        format: args.format.clone().or(file.format),
        output: args.output.clone().or(file.output),
    })
}

pub fn render_config(cfg: &RunConfig) -> String {
    let mut text = serde_json::to_string_pretty(cfg).expect("RunConfig always serializes");
    text.push('\n');
    text
}
