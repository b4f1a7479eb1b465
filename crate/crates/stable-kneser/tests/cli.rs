//! The command-line interface: outputs, file formats and exit codes.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stable-kneser"))
        .args(args)
        .env_remove("STABLE_KNESER_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("stable-kneser-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn chi_text_and_json() {
    let o = run(&["chi", "--family", "vector", "--n", "6", "--k", "2", "--svec", "1,4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "3");
    let o = run(&["--format", "json", "chi", "--family", "uniform", "--n", "8", "--k", "2", "--s", "2"]);
    let v = json(&o);
    assert_eq!(v["result"]["chi"], 6);
    assert_eq!(v["result"]["certificate"]["palette_size"], 6);
    assert_eq!(v["result"]["elapsed_ms"], 0.0);
}

#[test]
fn null_graph_is_negative_infinity() {
    let o = run(&["--format", "json", "chi", "--family", "vector", "--n", "2", "--svec", "1,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"]["chi"], "NEG_INFINITY");
}

#[test]
fn alpha_of_w_graph() {
    let o = run(&["alpha", "--w", "--n", "10", "--s1", "2", "--s2", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "4");
}

#[test]
fn generate_emits_hypergraph_json() {
    let o = run(&["--format", "json", "generate", "--family", "vector", "--n", "6", "--svec", "1,4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let h = stable_kneser::Hypergraph::from_json(&text).unwrap();
    assert_eq!((h.n(), h.k(), h.r(), h.vertex_count()), (6, 2, 2, 9));
}

#[test]
fn colorings_validate() {
    for scheme in ["block", "interval", "best"] {
        let o = run(&["--format", "json", "color", "--family", "vector", "--n", "7", "--svec", "2,4", "--scheme", scheme]);
        assert_eq!(o.status.code(), Some(0), "{scheme}");
        let v = json(&o);
        assert_eq!(v["proper"], true, "{scheme}: {v}");
    }
}

#[test]
fn tucker_check_exit_codes() {
    let args = ["tucker-check", "--family", "vector", "--n", "7", "--svec", "2,2"];
    assert_eq!(run(&args).status.code(), Some(0));
    let mut improper = args.to_vec();
    improper.push("--improper");
    assert_eq!(run(&improper).status.code(), Some(1));
}

#[test]
fn st_partition_round_trip() {
    let dir = scratch("st");
    let o = run(&["--format", "json", "st-partition", "--family", "vector", "--n", "6", "--svec", "1,4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let part = dir.join("p.json");
    fs::write(&part, v["partition"].to_string()).unwrap();
    let back = run(&["st-partition", "--family", "vector", "--n", "6", "--svec", "1,4", "--partition", part.to_str().unwrap()]);
    assert_eq!(back.status.code(), Some(0), "{}", String::from_utf8_lossy(&back.stderr));
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn verify_default_grid_matches() {
    let o = run(&["verify", "--claim", "corollary-1.5", "--grid", "default"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.contains("MATCH")).count(), 4);
}

#[test]
fn verify_grid_file_log_and_summary() {
    let dir = scratch("verify");
    let grid = dir.join("grid.json");
    fs::write(
        &grid,
        r#"{"instances":[{"family":"vector-stable","n":6,"svec":[1,4]}],
            "ranges":[{"family":"uniform-stable","n":[4,7],"s":[2],"k":[2],"claim":"schrijver"}]}"#,
    )
    .unwrap();
    let log = dir.join("log.ndjson");
    let summary = dir.join("summary.csv");
    let args = [
        "--format",
        "json",
        "verify",
        "--claim",
        "vector-k2-wide-last",
        "--grid",
        grid.to_str().unwrap(),
        "--log",
        log.to_str().unwrap(),
        "--summary",
        summary.to_str().unwrap(),
    ];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    assert_eq!(fs::read_to_string(&log).unwrap().lines().count(), 5);
    let csv = fs::read_to_string(&summary).unwrap();
    assert_eq!(csv.lines().count(), 6);
    let second = run(&args);
    assert_eq!(stdout(&first), stdout(&second));
    assert_eq!(fs::read_to_string(&log).unwrap().lines().count(), 5);
    let mut parallel = args.to_vec();
    parallel.splice(0..0, ["--jobs", "3"]);
    assert_eq!(stdout(&run(&parallel)), stdout(&first));
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn list_claims_includes_aliases() {
    let text = stdout(&run(&["verify", "--list-claims"]));
    for id in ["schrijver", "kg4-six-stable", "corollary-1.4", "theorem-1.7", "w-graph-alpha"] {
        assert!(text.contains(id), "{id}");
    }
}

#[test]
fn mod_condition_report() {
    let o = run(&["--format", "json", "mod-condition", "--n", "12", "--k", "2", "--m", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["instance"]["rho"], 0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["chi", "--family", "vector", "--n", "6", "--s", "2", "--svec", "1,4"]).status.code(), Some(2));
    assert_eq!(run(&["chi", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--claim", "no-such-claim"]).status.code(), Some(2));
    assert_eq!(run(&["chi", "--family", "vector", "--n", "70", "--svec", "1,4"]).status.code(), Some(2));
}

#[test]
fn selftest_subset() {
    let o = run(&["selftest", "--only", "6,10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 2);
}
