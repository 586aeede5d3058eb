use std::path::Path;
use std::process::{Command, Output};

fn bidim(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bidim"))
        .args(args)
        .current_dir(dir)
        .env_remove("BIDIM_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn generate_build_and_solve() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let gen = bidim(
        &["--seed", "4", "gen", "--family", "segments", "--n", "7", "--xi", "2"],
        d,
    );
    assert_eq!(gen.status.code(), Some(0));
    std::fs::write(d.join("a.json"), &gen.stdout).unwrap();

    let again = bidim(
        &["--seed", "4", "gen", "--family", "segments", "--n", "7", "--xi", "2"],
        d,
    );
    assert_eq!(gen.stdout, again.stdout);

    let xi = json(&bidim(&["--json", "geom", "xi", "--in", "a.json"], d));
    assert!(xi["xi"].as_u64().unwrap() <= 2);

    assert_eq!(
        bidim(&["build", "--from", "a.json", "--out", "g.json"], d)
            .status
            .code(),
        Some(0)
    );
    let tw = json(&bidim(&["--json", "tw", "--in", "g.json", "--exact"], d));
    assert_eq!(tw["kind"], "exact");

    let xi = xi["xi"].to_string();
    let solve = bidim(
        &[
            "--json", "solve", "vc", "--k", "7", "--xi", &xi, "--in", "g.json", "--report", "r.json",
        ],
        d,
    );
    assert_eq!(solve.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(d.join("r.json")).unwrap()).unwrap();
    assert_eq!(report["answer"]["answer"], "YES");
    assert_eq!(report["route"], "dp");
    assert!(report["t_threshold"].as_u64().unwrap() > 0);
}

#[test]
fn planarize_reports_every_check() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let hash = r#"{"polysegments": [[[0,1],[4,1]], [[0,3],[4,3]], [[1,0],[1,4]], [[3,0],[3,4]]]}"#;
    std::fs::write(d.join("hash.json"), hash).unwrap();
    let out = bidim(&["--json", "planarize", "--in", "hash.json"], d);
    assert_eq!(out.status.code(), Some(0));
    let check = json(&out);
    assert_eq!(check["h_planar"], true);
    assert_eq!(check["model_gb_valid"], true);
    assert_eq!(check["max_subdivision"], 3);

    assert_eq!(
        bidim(&["build", "--from", "hash.json", "--out", "g.json"], d)
            .status
            .code(),
        Some(0)
    );
    let bg = bidim(&["--json", "bg", "--in", "g.json", "--lower", "--kmax", "3"], d);
    assert_eq!(json(&bg)["bg"], 2);
    std::fs::write(d.join("bg.json"), &bg.stdout).unwrap();
    let out = bidim(&["--json", "verify", "bg.json"], d);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["valid"], true);
}

#[test]
fn suites_and_errors_map_to_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let report = bidim(&["--json", "verify", "4", "--trials", "30"], d);
    assert_eq!(report.status.code(), Some(0));
    assert_eq!(json(&report)["cases"], 30);

    assert_eq!(bidim(&["verify", "2"], d).status.code(), Some(2));
    assert_eq!(
        bidim(&["tw", "--in", "missing.json", "--exact"], d).status.code(),
        Some(2)
    );
    assert_eq!(bidim(&["frobnicate"], d).status.code(), Some(2));

    let triple = r#"{"polysegments": [[[0,0],[2,2]], [[0,2],[2,0]], [[1,0],[1,2]]]}"#;
    std::fs::write(d.join("t.json"), triple).unwrap();
    let out = bidim(&["geom", "validate", "--in", "t.json"], d);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("common point"));
}

#[test]
fn ratio_experiment_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = bidim(
        &[
            "experiment",
            "ratio",
            "--family",
            "polysegments",
            "--n",
            "6",
            "--trials",
            "4",
            "--csv",
            "--out",
            "r.csv",
        ],
        d,
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(d.join("r.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines[0].starts_with("schema,instance,family"));
    assert!(lines[5].starts_with("ratio-v1,summary,polysegments"));
}
