use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn repulsion(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repulsion"))
        .args(args)
        .env("REPULSION_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_out(cache: &Path, args: &[&str]) -> Value {
    let o = repulsion(cache, args);
    assert!(
        o.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).expect("strict JSON")
}

#[test]
fn pb_formats() {
    let dir = tempfile::tempdir().unwrap();
    let o = repulsion(dir.path(), &["pb", "--B", "3", "--n", "42"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "169");
    let v = json_out(
        dir.path(),
        &["pb", "--B", "3", "--n", "42", "--format", "json"],
    );
    assert_eq!(v["p"], "169");
    let csv = stdout(&repulsion(
        dir.path(),
        &["pb", "--B", "5", "--n", "1000", "--format", "csv"],
    ));
    assert_eq!(csv.trim(), "B,n,p\n5,1000,357746987");
}

#[test]
fn quasi_json_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let v = json_out(dir.path(), &["quasi", "--B", "3"]);
    assert_eq!(v["L"], 6);
    assert_eq!(v["alpha"], "3/1");
    assert_eq!(v["components"][5], serde_json::json!(["5/1", "8/1", "3/1"]));
    let v = json_out(dir.path(), &["quasi", "--B", "5"]);
    assert_eq!(v["components"][0][2], "775/2");
}

#[test]
fn pell_rows_are_strings() {
    let dir = tempfile::tempdir().unwrap();
    let v = json_out(dir.path(), &["pell", "--r", "0", "--count", "4"]);
    let ms: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["m"].as_str().unwrap())
        .collect();
    assert_eq!(ms, ["1", "13", "181", "2521"]);
    assert_eq!(v[3]["n"], "8730");
}

#[test]
fn delta_of_small_cube_gap() {
    let dir = tempfile::tempdir().unwrap();
    let v = json_out(dir.path(), &["delta", "--B", "4", "--k", "3", "--n", "5"]);
    assert_eq!(
        (v["p"].as_str(), v["m"].as_str(), v["delta"].as_str()),
        (Some("6"), Some("2"), Some("2"))
    );
}

#[test]
fn scan_min_base_row() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "scan",
        "--B",
        "2",
        "--k",
        "3",
        "--N",
        "20",
        "--d",
        "0",
        "--min-base",
        "2",
        "--format",
        "csv",
    ];
    let csv = stdout(&repulsion(dir.path(), &args));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,p,m,t,delta"));
    assert!(lines.any(|l| l == "14,8,2,0,0"));
    // without the filter, n = 1 (p = 1 = 1^3) is reported too
    let v = json_out(dir.path(), &["scan", "--B", "2", "--k", "3", "--N", "20"]);
    assert_eq!(v["hits"][0]["n"], 1);
}

#[test]
fn scan_output_ignores_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["scan", "--B", "4", "--k", "2", "--N", "30000", "--d", "5"];
    let one = repulsion(dir.path(), &[&base[..], &["--workers", "1"]].concat());
    let many = repulsion(dir.path(), &[&base[..], &["--workers", "6"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn classify_single_residue() {
    let dir = tempfile::tempdir().unwrap();
    let v = json_out(
        dir.path(),
        &[
            "classify",
            "--B",
            "3",
            "--k",
            "2",
            "--d",
            "1",
            "--residue",
            "3",
        ],
    );
    let table = v["table"].as_array().unwrap();
    assert_eq!(table.len(), 3);
    assert_eq!(table[1]["t"], 0);
    assert_eq!(table[1]["class"], "PowerShift");
    assert_eq!(table[0]["class"], "PellConic");
    let bad = repulsion(
        dir.path(),
        &["classify", "--B", "3", "--k", "2", "--residue", "6"],
    );
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn curve_points_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let v = json_out(
        dir.path(),
        &[
            "curve-points",
            "--b0",
            "1",
            "--poly",
            r#"["0","0","0","1"]"#,
            "--k",
            "3",
            "--xmax",
            "2",
        ],
    );
    assert_eq!(
        v,
        serde_json::json!([
            ["-2", "-2"],
            ["-1", "-1"],
            ["0", "0"],
            ["1", "1"],
            ["2", "2"]
        ])
    );
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 7] = [
        &["pb", "--B", "0", "--n", "3"],
        &["delta", "--B", "3", "--k", "1", "--n", "3"],
        &["scan", "--B", "3", "--k", "2"],
        &["quasi", "--B", "9"],
        &["pell", "--r", "2"],
        &[
            "curve-points",
            "--b0",
            "1",
            "--poly",
            "[1, 2]",
            "--k",
            "2",
            "--xmax",
            "3",
        ],
        &[
            "curve-points",
            "--b0",
            "0",
            "--poly",
            r#"["1"]"#,
            "--k",
            "2",
            "--xmax",
            "3",
        ],
    ];
    for args in cases {
        let o = repulsion(dir.path(), args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(
        repulsion(dir.path(), &["reproduce", "--only", "nothing"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        repulsion(dir.path(), &["--workers", "0", "quasi", "--B", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn cache_location_and_reuse() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    repulsion(env_dir.path(), &["pb", "--B", "4", "--n", "300"]);
    assert!(env_dir.path().join("pB_4_300.txt").exists());
    // a smaller request is served from the same file
    let o = repulsion(env_dir.path(), &["pb", "--B", "4", "--n", "100"]);
    assert_eq!(stdout(&o).trim(), "8037");
    assert!(!env_dir.path().join("pB_4_100.txt").exists());

    let flag = flag_dir.path().to_str().unwrap();
    repulsion(
        env_dir.path(),
        &["--cache-dir", flag, "pb", "--B", "2", "--n", "10"],
    );
    assert!(flag_dir.path().join("pB_2_10.txt").exists());
    assert!(!env_dir.path().join("pB_2_10.txt").exists());
}

fn tamper(path: &Path, line: usize) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines: Vec<String> = text.lines().map(str::to_owned).collect();
    let v: u128 = lines[line].parse().unwrap();
    lines[line] = (v + 1).to_string();
    std::fs::write(path, lines.join("\n") + "\n").unwrap();
}

#[test]
fn tampered_cache_fails_certification() {
    let dir = tempfile::tempdir().unwrap();
    let ok = repulsion(dir.path(), &["reproduce", "--only", "pell"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    let out = stdout(&ok);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 2);

    tamper(&dir.path().join("pB_3_20000.txt"), 5000);
    let bad = repulsion(dir.path(), &["reproduce", "--only", "pell"]);
    assert_eq!(bad.status.code(), Some(1));
    let report = stdout(&bad);
    assert!(
        report
            .lines()
            .any(|l| l.starts_with("FAIL [ 4]") && l.contains("certification")),
        "{report}"
    );

    let pb = repulsion(dir.path(), &["pb", "--B", "3", "--n", "10"]);
    assert_eq!(pb.status.code(), Some(1));
}

#[test]
fn reproduce_single_claim_by_number() {
    let dir = tempfile::tempdir().unwrap();
    let o = repulsion(dir.path(), &["reproduce", "--only", "3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("PASS [ 3]"));
    assert!(out.ends_with("1 of 1 claims passed\n"));
}
