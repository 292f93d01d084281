use std::path::Path;
use std::process::{Command, Output};

fn spinshare(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinshare")).args(args).env_remove("SPINSHARE_OUT_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field(text: &str, key: &str) -> f64 {
    let line = text.lines().find(|l| l.starts_with(key)).unwrap_or_else(|| panic!("no '{key}' in:\n{text}"));
    line[key.len()..].trim_start_matches(':').trim().parse().unwrap()
}

const SMALL_GRID: [&str; 12] = [
    "--n", "6", "--j-points", "3", "--alpha-points", "4", "--h", "0,0.4", "--measures", "concurrence,discord",
    "--powers", "1,2",
];

#[test]
fn ground_field_only() {
    let o = spinshare(&["ground", "--n", "10", "--j", "0", "--alpha", "0", "--h", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!((field(&text, "energy") + 5.0).abs() < 1e-9);
    assert!(text.contains("degenerate: false"));
}

#[test]
fn ground_four_site_chain() {
    let o = spinshare(&["ground", "--n", "4", "--j", "1", "--alpha", "0", "--h", "0"]);
    assert!(o.status.success());
    assert!((field(&stdout(&o), "energy") + 2f64.sqrt()).abs() < 1e-9);
}

#[test]
fn monogamy_step_values() {
    for (measure, expected) in [("concurrence", 0.29), ("discord", -0.49), ("logneg", 0.12)] {
        let o = spinshare(&[
            "monogamy", "--n", "10", "--j", "1", "--alpha", "0.5", "--h", "0", "--measure", measure,
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let score = field(&stdout(&o), "score");
        assert!((score - expected).abs() < 0.01, "{measure}: {score}");
    }
}

#[test]
fn monogamy_json_output() {
    let o = spinshare(&[
        "monogamy", "--n", "6", "--j", "1", "--alpha", "0.5", "--h", "0", "--measure", "concurrence", "--power",
        "2", "--format", "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["record"]["power"], 2);
    assert_eq!(v["record"]["pairwise"].as_array().unwrap().len(), 5);
    assert_eq!(v["minimal_monogamous_power"], 1);
}

#[test]
fn measure_lists_every_pair() {
    let o = spinshare(&["measure", "--n", "6", "--j", "1", "--alpha", "1.2", "--h", "0.1", "--measure", "workdeficit"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("pair ")).count(), 5);
}

#[test]
fn profile_csv() {
    let o = spinshare(&[
        "profile", "--n", "6", "--j", "1", "--h", "0", "--alpha-points", "5", "--measure", "concurrence",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "alpha,whole,pair_2,pair_3,pair_4,pair_5,pair_6,score");
    assert_eq!(rows.len(), 6);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["ground", "--n", "2", "--j", "1", "--alpha", "0", "--h", "0"],
        vec!["ground", "--n", "4", "--j", "1", "--alpha", "0"],
        vec!["ground", "--n", "4", "--j", "1", "--alpha", "0", "--h", "0", "--bogus", "1"],
        vec!["monogamy", "--n", "4", "--j", "1", "--alpha", "0", "--h", "0", "--measure", "entropy"],
        vec!["monogamy", "--n", "4", "--j", "1", "--alpha", "0", "--h", "0", "--measure", "discord", "--nodal", "4"],
        vec!["sweep", "--j-points", "0"],
        vec!["table1", "--alpha-min", "2", "--alpha-max", "1"],
        vec!["frobnicate"],
    ] {
        let o = spinshare(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn help_lists_flags() {
    let o = spinshare(&["sweep", "--help"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for flag in [
        "--n", "--j-min", "--j-max", "--j-points", "--alpha-min", "--alpha-max", "--alpha-points", "--h",
        "--measures", "--powers", "--threads", "--out", "--table1", "--measured-party", "--degeneracy-tol",
        "SPINSHARE_OUT_DIR",
    ] {
        assert!(text.contains(flag), "missing {flag}");
    }
}

fn sweep_into(dir: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["sweep"];
    args.extend_from_slice(&SMALL_GRID);
    args.extend_from_slice(&["--out", dir.to_str().unwrap()]);
    args.extend_from_slice(extra);
    spinshare(&args)
}

#[test]
fn sweep_writes_reproducible_files() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let o = sweep_into(a.path(), &["--table1", "--threads", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("grid: N = 6"));
    let o = sweep_into(b.path(), &["--threads", "1"]);
    assert!(o.status.success());

    let csv = std::fs::read_to_string(a.path().join("results.csv")).unwrap();
    let rows = csv.lines().filter(|l| !l.starts_with('#')).count();
    assert_eq!(rows, 1 + 2 * 12 * 2 * 2);
    assert!(csv.lines().any(|l| l.starts_with("# config: {")));
    assert_eq!(csv, std::fs::read_to_string(b.path().join("results.csv")).unwrap());

    for name in ["heatmap_concurrence_h0.txt", "heatmap_discord_h0.4.txt", "metadata.json"] {
        assert!(a.path().join(name).exists(), "{name}");
    }
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(a.path().join("metadata.json")).unwrap()).unwrap();
    assert_eq!(meta["grid"]["n"], 6);
    assert!(meta["settings"]["measure"]["optimizer"]["max_iter"].is_number());
}

#[test]
fn sweep_output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("from-env");
    let mut args = vec!["sweep"];
    args.extend_from_slice(&SMALL_GRID);
    let o = Command::new(env!("CARGO_BIN_EXE_spinshare"))
        .args(&args)
        .env("SPINSHARE_OUT_DIR", &target)
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(target.join("results.csv").exists());
}

#[test]
fn table1_subcommand() {
    let mut args = vec!["table1"];
    args.extend_from_slice(&SMALL_GRID);
    let o = spinshare(&args);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("concurrence"));
    assert!(text.contains("J cutoff against h = 0"));
}
