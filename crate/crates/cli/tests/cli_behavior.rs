//! End-to-end behavior of the command-line interface: exit codes, output
//! schemas, config-file handling, and determinism. Most tests drive the
//! in-process entry point; diagnostics and the env-var cap are checked on
//! the spawned binary.

use std::path::PathBuf;
use std::process::Command;

fn scratch(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("weakchan-cli-{}-{name}", std::process::id()));
    p
}

fn run(args: &[&str]) -> i32 {
    weakchan_cli::run(std::iter::once("weakchan").chain(args.iter().copied()))
}

/// Runs with `--output` into a scratch file and returns (exit, contents).
fn run_to_file(name: &str, args: &[&str]) -> (i32, String) {
    let path = scratch(name);
    let path_str = path.to_str().unwrap();
    let mut full: Vec<&str> = args.to_vec();
    full.push("--output");
    full.push(path_str);
    let code = run(&full);
    let text = std::fs::read_to_string(&path).unwrap_or_default();
    let _ = std::fs::remove_file(&path);
    (code, text)
}

#[test]
fn bound_command_evaluates_half_log_snr_plus_one() {
    let (code, out) = run_to_file("bound", &["bound", "--eigenvalues", "-2,3", "--sigma", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"power\":9.00000000000e0"), "{out}");
    assert!(out.contains("\"upper_bound_bits\":1.66096404744e0"), "{out}");
    assert!(out.ends_with('\n') && !out.ends_with("\n\n"));
}

#[test]
fn entropy_command_evaluates_the_single_gaussian_closed_form() {
    let (code, out) = run_to_file(
        "entropy",
        &["entropy", "--weights", "1", "--means", "0", "--sigma", "1"],
    );
    assert_eq!(code, 0);
    assert!(out.contains("\"entropy_bits\":2.04709558518e0"), "{out}");
}

#[test]
fn capacity_json_keys_appear_in_documented_order() {
    let (code, out) = run_to_file(
        "cap-order",
        &["capacity", "--eigenvalues", "-1,1", "--sigma", "1"],
    );
    assert_eq!(code, 0);
    let keys = [
        "\"eigenvalues\"",
        "\"sigma\"",
        "\"tol\"",
        "\"capacity_bits\"",
        "\"upper_bound_bits\"",
        "\"input_distribution\"",
        "\"ba_gap_bits\"",
        "\"iterations\"",
        "\"output_bins\"",
    ];
    let positions: Vec<usize> = keys
        .iter()
        .map(|k| out.find(k).unwrap_or_else(|| panic!("missing {k} in {out}")))
        .collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{out}");
    assert_eq!(out.lines().count(), 1);
}

#[test]
fn csv_output_quotes_list_valued_fields() {
    let (code, out) = run_to_file(
        "cap-csv",
        &["capacity", "--eigenvalues", "-1,1", "--sigma", "1", "--format", "csv"],
    );
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "eigenvalues,sigma,tol,capacity_bits,upper_bound_bits,input_distribution,\
         ba_gap_bits,iterations,output_bins"
    );
    let row = lines.next().unwrap();
    assert!(
        row.starts_with("\"-1.00000000000e0,1.00000000000e0\","),
        "{row}"
    );
    assert!(out.ends_with('\n'));
}

#[test]
fn eavesdrop_csv_uses_the_tradeoff_schema() {
    let (code, out) = run_to_file(
        "eve-csv",
        &["eavesdrop", "--eigenvalues", "-1,1", "--basis", "--grid", "0.5,1", "--format", "csv"],
    );
    assert_eq!(code, 0);
    assert_eq!(
        out.lines().next().unwrap(),
        "sigma_eve,chi_before_bits,chi_after_bits,eve_info_bits"
    );
    assert_eq!(out.lines().count(), 3);
}

#[test]
fn sweep_csv_lists_capacity_against_needle_width() {
    let (code, out) = run_to_file(
        "sweep-csv",
        &["sweep", "--eigenvalues", "-1,1", "--grid", "1,2", "--format", "csv"],
    );
    assert_eq!(code, 0);
    assert_eq!(out.lines().next().unwrap(), "sigma,capacity_bits,upper_bound_bits");
    assert_eq!(out.lines().count(), 3);
}

#[test]
fn repeated_eigenvalues_exit_with_the_config_code() {
    assert_eq!(run(&["capacity", "--eigenvalues", "1,1", "--sigma", "1"]), 2);
}

#[test]
fn missing_required_parameters_exit_with_the_config_code() {
    assert_eq!(run(&["capacity", "--eigenvalues", "-1,1"]), 2);
    assert_eq!(run(&["entropy", "--sigma", "1"]), 2);
    assert_eq!(run(&["simulate", "--eigenvalues", "-1,1", "--sigma", "1"]), 2);
    assert_eq!(run(&["placement", "--dim", "2", "--power", "1"]), 2);
}

#[test]
fn unknown_output_formats_are_rejected() {
    assert_eq!(
        run(&["bound", "--eigenvalues", "-1,1", "--sigma", "1", "--format", "yaml"]),
        2
    );
}

#[test]
fn conflicting_state_inputs_are_rejected() {
    assert_eq!(
        run(&[
            "channel-map",
            "--eigenvalues",
            "-1,1",
            "--sigma",
            "1",
            "--diag",
            "0.5,0.5",
            "--state",
            "[[0.5,0],[0,0],[0,0],[0.5,0]]",
        ]),
        2
    );
    assert_eq!(
        run(&[
            "eavesdrop",
            "--eigenvalues",
            "-1,1",
            "--basis",
            "--states",
            "[[[1,0],[0,0],[0,0],[0,0]]]",
            "--grid",
            "1",
        ]),
        2
    );
}

#[test]
fn non_square_state_lists_are_rejected() {
    assert_eq!(
        run(&[
            "channel-map",
            "--eigenvalues",
            "-1,1",
            "--sigma",
            "1",
            "--state",
            "[[0.5,0],[0,0],[0.5,0]]",
        ]),
        2
    );
}

#[test]
fn descending_grids_are_rejected() {
    assert_eq!(run(&["sweep", "--eigenvalues", "-1,1", "--grid", "2,1"]), 2);
    assert_eq!(
        run(&["eavesdrop", "--eigenvalues", "-1,1", "--basis", "--grid", "2,1"]),
        2
    );
}

#[test]
fn help_and_version_exit_cleanly() {
    assert_eq!(run(&["--help"]), 0);
    assert_eq!(run(&["--version"]), 0);
    assert_eq!(run(&["capacity", "--help"]), 0);
}

#[test]
fn unknown_flags_exit_with_the_usage_code() {
    assert_eq!(run(&["capacity", "--no-such-flag", "1"]), 2);
    assert_eq!(run(&["no-such-command"]), 2);
}

#[test]
fn bare_invocation_without_a_command_is_a_config_error() {
    let path = scratch("no-command.json");
    std::fs::write(&path, "{\"eigenvalues\":[-1.0,1.0],\"sigma\":1.0}\n").unwrap();
    assert_eq!(run(&["--config", path.to_str().unwrap()]), 2);
    let _ = std::fs::remove_file(&path);
    assert_eq!(run(&[]), 2);
}

#[test]
fn unwritable_output_paths_exit_with_the_io_code() {
    let path = scratch("no-such-dir").join("out.json");
    assert_eq!(
        run(&["bound", "--eigenvalues", "-1,1", "--sigma", "1", "--output", path.to_str().unwrap()]),
        1
    );
}

#[test]
fn diagonal_shorthand_matches_the_explicit_state() {
    let (code_a, out_a) = run_to_file(
        "diag-short",
        &["channel-map", "--eigenvalues", "-1,1", "--sigma", "1", "--diag", "0.25,0.75"],
    );
    let (code_b, out_b) = run_to_file(
        "diag-long",
        &[
            "channel-map",
            "--eigenvalues",
            "-1,1",
            "--sigma",
            "1",
            "--state",
            "[[0.25,0],[0,0],[0,0],[0.75,0]]",
        ],
    );
    assert_eq!((code_a, code_b), (0, 0));
    assert_eq!(out_a, out_b);
}

#[test]
fn emitted_configs_reproduce_byte_identical_output() {
    let out_path = scratch("rt-out.json");
    let cfg_path = scratch("rt-cfg.json");
    let code = run(&[
        "simulate",
        "--eigenvalues",
        "-1,1",
        "--sigma",
        "1",
        "--n",
        "4",
        "--rate-bits",
        "0.5",
        "--codebooks",
        "3",
        "--trials",
        "50",
        "--output",
        out_path.to_str().unwrap(),
        "--emit-config",
        cfg_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let first = std::fs::read(&out_path).unwrap();
    assert_eq!(run(&["--config", cfg_path.to_str().unwrap()]), 0);
    let second = std::fs::read(&out_path).unwrap();
    assert_eq!(first, second);
    let _ = std::fs::remove_file(&out_path);
    let _ = std::fs::remove_file(&cfg_path);
}

#[test]
fn flags_override_config_file_values() {
    let cfg_path = scratch("override.json");
    std::fs::write(
        &cfg_path,
        "{\"command\":\"bound\",\"eigenvalues\":[-1.0,1.0],\"sigma\":1.0}\n",
    )
    .unwrap();
    let (code, out) = run_to_file(
        "override-out",
        &["bound", "--config", cfg_path.to_str().unwrap(), "--sigma", "2"],
    );
    assert_eq!(code, 0);
    assert!(out.contains("\"sigma\":2.00000000000e0"), "{out}");
    let _ = std::fs::remove_file(&cfg_path);
}

#[test]
fn fixed_seeds_give_byte_identical_results() {
    let args = [
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
        "4",
        "--trials",
        "100",
        "--seed",
        "11",
    ];
    let (code_a, out_a) = run_to_file("seed-a", &args);
    let (code_b, out_b) = run_to_file("seed-b", &args);
    assert_eq!((code_a, code_b), (0, 0));
    assert_eq!(out_a, out_b);
}

#[test]
fn binary_diagnostics_name_the_violated_invariant() {
    let out = Command::new(env!("CARGO_BIN_EXE_weakchan"))
        .args(["capacity", "--eigenvalues", "1,1", "--sigma", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("strictly increasing eigenvalues"), "{stderr}");
    assert!(out.stdout.is_empty());
}

#[test]
fn binary_writes_results_to_standard_output_by_default() {
    let out = Command::new(env!("CARGO_BIN_EXE_weakchan"))
        .args(["bound", "--eigenvalues", "-2,3", "--sigma", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("1.66096404744e0"), "{stdout}");
    assert!(stdout.ends_with('\n'));
}

#[test]
fn thread_cap_env_var_is_validated() {
    let bad = Command::new(env!("CARGO_BIN_EXE_weakchan"))
        .args(["bound", "--eigenvalues", "-1,1", "--sigma", "1"])
        .env("WEAKCHAN_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("WEAKCHAN_THREADS"));

    let good = Command::new(env!("CARGO_BIN_EXE_weakchan"))
        .args(["bound", "--eigenvalues", "-1,1", "--sigma", "1"])
        .env("WEAKCHAN_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(good.status.code(), Some(0));
}
