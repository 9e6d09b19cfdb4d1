use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn charsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charsum"))
        .args(args)
        .env_remove("CHARSUM_THREADS")
        .output()
        .expect("spawn charsum")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn pn_square_f5() {
    let out = charsum(&["test", "pn", "--catalog", "square", "--p", "5"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["verdict"], "pn");
    assert!(r["witness"].is_null());
}

#[test]
fn pn_failure_carries_witness() {
    let out = charsum(&[
        "test",
        "pn",
        "--catalog",
        "power",
        "--params",
        "e=3",
        "--p",
        "5",
    ]);
    assert_eq!(code(&out), 1);
    let w = &json(&out)["witness"];
    assert_eq!(
        (w["a"].as_u64(), w["value"].as_u64(), w["count"].as_u64()),
        (Some(1), Some(1), Some(2))
    );
}

#[test]
fn salem_square_f5() {
    let out = charsum(&["salem", "verify-thm1", "--catalog", "square", "--p", "5"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["salem_constant"].as_f64(), Some(1.0));
    assert_eq!(r["salem_constant_sq_exact"], serde_json::json!([5, 5]));
    assert_eq!(r["theorem1_pass"], true);
    assert_eq!(
        (r["q"].as_u64(), r["d"].as_u64(), r["cardinality"].as_u64()),
        (Some(5), Some(2), Some(5))
    );
}

#[test]
fn salem_rejects_non_bent() {
    let out = charsum(&["salem", "verify-thm1", "--poly", "0,1", "--p", "5"]);
    assert_eq!(code(&out), 1);
    assert!(json(&out)["bent_witness"].is_object());
}

#[test]
fn sweep_square_f5() {
    let out = charsum(&["mindist", "sweep", "--catalog", "square", "--p", "5"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["planar_found"], 0);
    assert_eq!(r["pairs_tested"], 20);
    assert!(r.get("wall_time").is_none());
    let timed = json(&charsum(&[
        "mindist",
        "sweep",
        "--catalog",
        "square",
        "--p",
        "5",
        "--timing",
    ]));
    assert!(timed["wall_time"].as_f64().is_some());
}

#[test]
fn bent_identity_fails_with_witness() {
    let out = charsum(&["test", "bent", "--poly", "0,1", "--p", "5"]);
    assert_eq!(code(&out), 1);
    let w = &json(&out)["witness"];
    assert_eq!(
        (w["u"].as_u64(), w["m"].as_u64(), w["abs_sq_exact"].as_i64()),
        (Some(1), Some(1), Some(25))
    );
}

#[test]
fn bent_fast_path_self_audits() {
    let out = charsum(&[
        "test",
        "bent",
        "--catalog",
        "square",
        "--p",
        "3",
        "--ell",
        "5",
        "--fast",
    ]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["mode"], "fast");
    assert!(r["spot_checks"]["checked"].as_u64().unwrap() > 0);
    assert_eq!(r["spot_checks"]["failures"], serde_json::json!([]));
}

#[test]
fn crosscheck_and_decomp() {
    let out = charsum(&["crosscheck", "--catalog", "square", "--p", "7"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["agree"], true);

    let out = charsum(&[
        "decomp",
        "verify",
        "--catalog",
        "square",
        "--p",
        "3",
        "--ell",
        "2",
    ]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["shifts_checked"], 8);
    assert_eq!(r["basis"], serde_json::json!([1, 3]));
    assert_eq!(r["pass"], true);
    assert!(r["failing_a"].is_null());
}

#[test]
fn pairwise_distances() {
    let out = charsum(&[
        "mindist",
        "pairwise",
        "--p",
        "5",
        "--fn",
        "catalog:square",
        "--fn",
        "poly:0,0,2",
    ]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["distances"], serde_json::json!([[0, 4], [4, 0]]));
    assert_eq!(r["min_distance"], 4);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["test", "pn", "--p", "5"][..],
        &["test", "pn", "--catalog", "square"],
        &["test", "pn", "--catalog", "no-such-entry", "--p", "5"],
        &["test", "pn", "--catalog", "square", "--p", "6"],
        &[
            "decomp",
            "verify",
            "--catalog",
            "square",
            "--p",
            "5",
            "--d",
            "2",
            "--basis",
            "2,1",
        ],
        &["frobnicate"],
    ] {
        let out = charsum(args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn malformed_table_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.tbl");
    std::fs::write(&path, "5 1 1\n0 1\n0 1 4\n").unwrap();
    let out = charsum(&["test", "pn", "--input", s(&path)]);
    assert_eq!(code(&out), 2);
    std::fs::write(&path, "5 1 1\n0 1\n0 1 4 4 9\n").unwrap();
    assert_eq!(code(&charsum(&["test", "pn", "--input", s(&path)])), 2);
}

#[test]
fn export_matches_golden_tables() {
    let cases: [(&str, &[&str]); 4] = [
        ("random_f5_seed0.tbl", &["--catalog", "random", "--p", "5"]),
        (
            "random_f9_d2_seed42.tbl",
            &[
                "--catalog",
                "random",
                "--p",
                "3",
                "--ell",
                "2",
                "--d",
                "2",
                "--params",
                "seed=42",
            ],
        ),
        (
            "random_f8_d2_seed7.tbl",
            &[
                "--catalog",
                "random",
                "--p",
                "2",
                "--ell",
                "3",
                "--d",
                "2",
                "--seed",
                "7",
            ],
        ),
        (
            "square_f27.tbl",
            &["--catalog", "square", "--p", "3", "--ell", "3"],
        ),
    ];
    for (name, args) in cases {
        let mut argv = vec!["catalog", "export"];
        argv.extend_from_slice(args);
        let out = charsum(&argv);
        assert_eq!(code(&out), 0, "{name}");
        assert_eq!(out.stdout, std::fs::read(golden(name)).unwrap(), "{name}");
    }
}

#[test]
fn table_input_round_trip() {
    let out = charsum(&["test", "pn", "--input", s(&golden("square_f27.tbl"))]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["verdict"], "pn");
    assert_eq!(r["field"]["modulus"], serde_json::json!([1, 2, 0, 1]));

    let out = charsum(&[
        "test",
        "pn",
        "--input",
        s(&golden("square_f27.tbl")),
        "--p",
        "5",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn spectrum_csv_one_file_per_u() {
    let dir = tempfile::tempdir().unwrap();
    let out = charsum(&[
        "--format",
        "csv",
        "--emit",
        s(dir.path()),
        "test",
        "bent",
        "--catalog",
        "square",
        "--p",
        "5",
    ]);
    assert_eq!(code(&out), 0);
    let mut names: Vec<String> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names, ["1.csv", "2.csv", "3.csv", "4.csv"]);
    let text = std::fs::read_to_string(dir.path().join("1.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("m_index,m_coords,abs_sq_exact,magnitude_float")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    for row in rows {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols[2], "5");
    }
}

#[test]
fn salem_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let out = charsum(&[
        "--format",
        "csv",
        "--emit",
        s(&csv),
        "salem",
        "verify-thm1",
        "--catalog",
        "square",
        "--p",
        "5",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["theorem1_pass"], true);
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("m_index,m_coords,case_tag,abs_sq_exact,magnitude_float,bound_ratio")
    );
    assert_eq!(lines.count(), 25);
    // m = (1, 0) has |S|^2 = 0, m = (0, 1) has |S|^2 = q
    assert!(text.contains("\n1,1;0,"));
    let row = text.lines().find(|l| l.starts_with("5,0;1,")).unwrap();
    assert_eq!(row.split(',').nth(3), Some("5"));
}

#[test]
fn salem_family_reports_each_order() {
    let out = charsum(&["salem", "--catalog", "square", "--family", "5,7,9"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    let qs: Vec<u64> = r["instances"]
        .as_array()
        .unwrap()
        .iter()
        .map(|i| i["q"].as_u64().unwrap())
        .collect();
    assert_eq!(qs, [5, 7, 9]);
}

#[test]
fn catalog_list_and_field_info() {
    let out = charsum(&["catalog", "list"]);
    assert_eq!(code(&out), 0);
    let names: Vec<String> = json(&out)
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap().to_string())
        .collect();
    for want in ["square", "power", "random"] {
        assert!(
            names.iter().any(|n| n == want),
            "{want} missing from {names:?}"
        );
    }

    let out = charsum(&["field", "info", "--p", "3", "--ell", "2"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["q"], 9);
    assert_eq!(r["modulus"], serde_json::json!([1, 0, 1]));
}

#[test]
fn replay_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    let first = charsum(&[
        "--save-config",
        s(&cfg),
        "test",
        "bent",
        "--catalog",
        "random",
        "--p",
        "3",
        "--d",
        "2",
        "--seed",
        "11",
    ]);
    let again = charsum(&["replay", s(&cfg)]);
    assert_eq!(code(&first), code(&again));
    assert_eq!(first.stdout, again.stdout);
    assert!(!first.stdout.is_empty());
}

#[test]
fn thread_count_does_not_change_output() {
    let args = [
        "test",
        "bent",
        "--catalog",
        "random",
        "--p",
        "3",
        "--d",
        "3",
        "--seed",
        "5",
    ];
    let base = charsum(&args);
    for n in ["1", "3"] {
        let out = Command::new(env!("CARGO_BIN_EXE_charsum"))
            .args(args)
            .env("CHARSUM_THREADS", n)
            .output()
            .unwrap();
        assert_eq!(out.stdout, base.stdout, "CHARSUM_THREADS={n}");
        assert_eq!(out.status.code(), base.status.code());
    }
    assert_eq!(code(&charsum(&["--threads", "0", "catalog", "list"])), 2);
}
