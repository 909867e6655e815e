//! End-to-end exercises of the command-line surface.

use std::path::Path;
use std::process::{Command, Output};

fn egqldpc(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_egqldpc"));
    cmd.args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn construct(dir: &Path, q: &str, m: &str, ell: &str, kind: &str, name: &str) -> String {
    let path = dir.join(name);
    let out = egqldpc(
        &[
            "construct",
            "--q",
            q,
            "--m",
            m,
            "--ell",
            ell,
            "--type",
            kind,
            "--out",
            path.to_str().unwrap(),
        ],
        &[],
    );
    assert!(out.status.success(), "construct failed: {out:?}");
    path.to_str().unwrap().to_owned()
}

#[test]
fn construct_verify_distance_flow() {
    let dir = tempfile::tempdir().unwrap();
    let orth = construct(dir.path(), "2", "3", "3", "orth", "orth.alist");
    let type2 = construct(dir.path(), "2", "3", "3", "type2", "type2.alist");

    let matrix = egqldpc::harness::alist::read_alist_path(&orth).unwrap();
    assert_eq!((matrix.rows(), matrix.cols()), (7, 29));

    // The adapted matrix is self-orthogonal but no longer overlap-1.
    assert!(egqldpc(&["verify", &orth, "--check", "selforth"], &[]).status.success());
    assert_eq!(
        egqldpc(&["verify", &orth, "--check", "overlap"], &[])
            .status
            .code(),
        Some(1)
    );
    // The Type-II core is overlap-1 and girth >= 6 but not self-orthogonal.
    assert!(egqldpc(&["verify", &type2, "--check", "overlap"], &[]).status.success());
    assert!(egqldpc(&["verify", &type2, "--check", "girth"], &[]).status.success());
    assert!(egqldpc(&["verify", &type2, "--check", "weights"], &[]).status.success());
    assert_eq!(
        egqldpc(&["verify", &type2, "--check", "selforth"], &[])
            .status
            .code(),
        Some(1)
    );
    // Exactly one 4-cycle per row pair on the adapted matrix.
    assert!(egqldpc(&["verify", &orth, "--check", "cycles"], &[]).status.success());

    let small = construct(dir.path(), "2", "2", "1", "orth", "small.alist");
    let out = egqldpc(&["distance", &small], &[]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("minimum distance of null(3x7): 3"));
}

#[test]
fn construct_warns_when_adaptation_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q4.alist");
    let out = egqldpc(
        &[
            "construct", "--q", "4", "--m", "2", "--ell", "1", "--type", "orth", "--out",
            path.to_str().unwrap(),
        ],
        &[],
    );
    assert!(out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("NOT self-orthogonal"), "stderr: {stderr}");
    assert_eq!(
        egqldpc(&["verify", path.to_str().unwrap(), "--check", "selforth"], &[])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn params_reports_dimensions() {
    let out = egqldpc(&["params", "--q", "2", "--m", "3", "--ell", "3"], &[]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("N (length): 29"));
    assert!(text.contains("k_nominal (N - 2n): 15"));
    assert!(text.contains("k_exact (N - 2 rank): 15"));
    assert!(text.contains("lambda (row weight): 6"));
    assert!(text.contains("parity case: even"));
    assert!(text.contains("self-orthogonal: yes"));

    // The odd-case q=3 instance has a flagged non-positive nominal count.
    let out = egqldpc(&["params", "--q", "3", "--m", "2", "--ell", "1"], &[]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("parity case: odd"));
    assert!(text.contains("[non-positive: flagged]"), "text: {text}");
}

#[test]
fn export_writes_stabilizer_strings() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("stabs.txt");
    let out = egqldpc(
        &[
            "export",
            "--q",
            "2",
            "--m",
            "2",
            "--ell",
            "1",
            "--stabilizers",
            "--out",
            path.to_str().unwrap(),
        ],
        &[],
    );
    assert!(out.status.success(), "{out:?}");
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[0], "0 IXXXXII");
    assert_eq!(lines[3], "3 IZZZZII");
}

#[test]
fn simulate_runs_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("cfg.json");
    let csv_path = dir.path().join("out.csv");
    let json_path = dir.path().join("out.json");
    std::fs::write(
        &cfg_path,
        r#"{
            "code": {"q": 2, "m": 3, "ell": 3},
            "channel": {"kind": "depolarizing", "p_values": [0.005, 0.02]},
            "trials": 100,
            "seed": 99
        }"#,
    )
    .unwrap();
    let out = egqldpc(
        &[
            "simulate",
            "--config",
            cfg_path.to_str().unwrap(),
            "--out",
            csv_path.to_str().unwrap(),
            "--json",
            json_path.to_str().unwrap(),
            "--workers",
            "4",
        ],
        &[],
    );
    assert!(out.status.success(), "{out:?}");
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("p,trials,exact"));
    let result = egqldpc::harness::results::read_results_json_path(&json_path).unwrap();
    assert_eq!(result.metadata.seed, 99);
    assert_eq!(result.points.len(), 2);
    assert_eq!(result.points[0].trials, 100);
}

#[test]
fn seed_env_var_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("cfg.json");
    let csv_path = dir.path().join("out.csv");
    let json_path = dir.path().join("out.json");
    std::fs::write(
        &cfg_path,
        r#"{
            "code": {"q": 2, "m": 2, "ell": 1},
            "channel": {"kind": "bsc", "p_values": [0.01]},
            "trials": 10,
            "seed": 1
        }"#,
    )
    .unwrap();
    let out = egqldpc(
        &[
            "simulate",
            "--config",
            cfg_path.to_str().unwrap(),
            "--out",
            csv_path.to_str().unwrap(),
            "--json",
            json_path.to_str().unwrap(),
        ],
        &[("EGQLDPC_SEED", "555")],
    );
    assert!(out.status.success(), "{out:?}");
    let result = egqldpc::harness::results::read_results_json_path(&json_path).unwrap();
    assert_eq!(result.metadata.seed, 555);
}

#[test]
fn simulate_accepts_alist_codes() {
    let dir = tempfile::tempdir().unwrap();
    let alist = construct(dir.path(), "2", "2", "1", "orth", "code.alist");
    let cfg_path = dir.path().join("cfg.json");
    let csv_path = dir.path().join("out.csv");
    std::fs::write(
        &cfg_path,
        format!(
            r#"{{
                "code": {{"alist": "{alist}"}},
                "channel": {{"kind": "depolarizing", "p_values": [0.01]}},
                "trials": 20,
                "seed": 3
            }}"#
        ),
    )
    .unwrap();
    let out = egqldpc(
        &[
            "simulate",
            "--config",
            cfg_path.to_str().unwrap(),
            "--out",
            csv_path.to_str().unwrap(),
        ],
        &[],
    );
    assert!(out.status.success(), "{out:?}");
    assert!(std::fs::read_to_string(&csv_path).unwrap().lines().count() == 2);
}

#[test]
fn errors_exit_nonzero_with_message() {
    let out = egqldpc(&["params", "--q", "6", "--m", "2", "--ell", "1"], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a prime power"));

    let out = egqldpc(&["verify", "/nonexistent.alist", "--check", "selforth"], &[]);
    assert_eq!(out.status.code(), Some(2));
}
