//! Command-line front end for the weakchan library.
//!
//! Eight subcommands cover the library surface: `capacity`, `bound`,
//! `entropy`, `channel-map`, `simulate`, `eavesdrop`, `sweep`, and
//! `placement`. Every flag mirrors a config-file key of the same name;
//! `--config file.json` loads a run configuration and explicit flags
//! override file values. Results are emitted as JSON (default) or CSV,
//! written once at the end to `--output` or standard output.
//!
//! Exit codes: 0 success, 1 numerical failure, 2 invalid configuration.
//! `WEAKCHAN_THREADS` caps worker parallelism for the whole process.

pub mod config;
pub mod emit;
pub mod exec;

use clap::{Parser, Subcommand};

use config::{CommonArgs, RunConfig};

/// A failed run: exit code plus the diagnostic for standard error.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    /// Configuration/validation failure (exit 2).
    pub fn config(message: String) -> Self {
        Failure { code: 2, message }
    }

    /// I/O failure (exit 1).
    pub fn io(message: String) -> Self {
        Failure { code: 1, message }
    }
}

impl From<weakchan::Error> for Failure {
    fn from(e: weakchan::Error) -> Self {
        Failure {
            code: if e.is_validation() { 2 } else { 1 },
            message: e.to_string(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "weakchan",
    version,
    about = "Capacity, coding, and eavesdropping analysis of weak Gaussian measurement channels"
)]
struct Cli {
    /// JSON run config; explicit flags override file values
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<String>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Blahut-Arimoto channel capacity for a letter alphabet
    Capacity(CommonArgs),
    /// Closed-form capacity bound from the power budget
    Bound(CommonArgs),
    /// Differential entropy of a Gaussian mixture
    Entropy(CommonArgs),
    /// Apply the weak-readout damping map to a density matrix
    ChannelMap(CommonArgs),
    /// Random-coding block-error experiment
    Simulate(CommonArgs),
    /// Interception tradeoff across eavesdropper needle widths
    Eavesdrop(CommonArgs),
    /// Capacity across a grid of needle widths
    Sweep(CommonArgs),
    /// Eigenvalue placement search under a power budget
    Placement(CommonArgs),
}

impl Command {
    fn parts(&self) -> (&'static str, &CommonArgs) {
        match self {
            Command::Capacity(a) => ("capacity", a),
            Command::Bound(a) => ("bound", a),
            Command::Entropy(a) => ("entropy", a),
            Command::ChannelMap(a) => ("channel-map", a),
            Command::Simulate(a) => ("simulate", a),
            Command::Eavesdrop(a) => ("eavesdrop", a),
            Command::Sweep(a) => ("sweep", a),
            Command::Placement(a) => ("placement", a),
        }
    }
}

/// Applies the WEAKCHAN_THREADS cap. The global pool can only be built once
/// per process; later calls in the same process keep the first width.
fn configure_threads() -> Result<(), Failure> {
    let Some(raw) = std::env::var_os("WEAKCHAN_THREADS") else {
        return Ok(());
    };
    let text = raw.to_string_lossy();
    let threads: usize = text
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| {
            Failure::config(format!(
                "WEAKCHAN_THREADS = `{text}` (must be a positive integer)"
            ))
        })?;
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}

fn write_text(path: &str, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::io(format!("cannot write {path}: {e}")))
}

fn try_run<I, T>(argv: I) -> Result<i32, Failure>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    configure_threads()?;
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return Ok(code);
        }
    };
    let file = match &cli.config {
        Some(path) => config::load_file(path)?,
        None => RunConfig::default(),
    };
    let (name, args) = match &cli.command {
        Some(c) => {
            let (n, a) = c.parts();
            (Some(n), a.clone())
        }
        None => (None, CommonArgs::default()),
    };
    let merged = config::merge(name, &args, file)?;
    let rendered = exec::dispatch(&merged)?;
    if let Some(path) = &args.emit_config {
        write_text(path, &config::render_config(&merged))?;
    }
    match &merged.output {
        Some(path) => write_text(path, &rendered)?,
        None => print!("{rendered}"),
    }
    Ok(0)
}

/// Full CLI entry point: parses argv, dispatches, writes output, and maps
/// failures to exit codes (0 success, 1 numerical, 2 config).
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match try_run(argv) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
