use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hajoslab::canon::is_isomorphic;
use hajoslab::experiment::Fraction;
use hajoslab::io::from_graph6;
use hajoslab::Graph;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hajoslab"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hajoslab-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_recipe(dir: &Path, json: &str) -> PathBuf {
    let p = dir.join("recipe.json");
    fs::write(&p, json).unwrap();
    p
}

#[test]
fn construct_triangle_merge() {
    let dir = scratch("construct");
    let r = write_recipe(
        &dir,
        r#"{"steps": [{"op": "complete", "k": 3}, {"op": "complete", "k": 3},
                     {"op": "hajos_merge", "first": 0, "second": 1, "edge1": [0, 1], "edge2": [0, 1]}]}"#,
    );
    let o = run(bin().arg("construct").arg("--recipe").arg(&r));
    assert!(o.status.success());
    let g6 = stdout(&o).lines().next().unwrap().to_owned();
    assert!(is_isomorphic(&from_graph6(&g6).unwrap(), &Graph::cycle(5)));
}

#[test]
fn construct_gn3() {
    let dir = scratch("gn3");
    let r = write_recipe(&dir, r#"{"steps": [{"op": "gn", "n": 3}]}"#);
    let o = run(bin().args(["construct", "--canonical", "--recipe"]).arg(&r));
    assert!(o.status.success());
    let g = from_graph6(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(g.order(), 12);
}

#[test]
fn usage_errors_exit_2() {
    let dir = scratch("usage");
    let r = write_recipe(&dir, r#"{"steps": []}"#);
    assert_eq!(run(bin().arg("construct").arg("--recipe").arg(&r)).status.code(), Some(2));
    let o = run(bin().args(["verify", "thm9.9"]));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("thm3.7"));
    assert_eq!(run(bin().args(["cra", "--k", "3"])).status.code(), Some(2));
    let bad = write_recipe(&dir, r#"{"steps": [{"op": "cycle", "n": 5}, {"op": "identify", "source": 0, "pairs": [[0, 1]]}]}"#);
    let o = run(bin().arg("construct").arg("--recipe").arg(&bad));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("step 1"));
}

#[test]
fn capacity_exit_3() {
    let dir = scratch("capacity");
    let r = write_recipe(&dir, r#"{"steps": [{"op": "complete", "k": 200}]}"#);
    let o = run(bin().args(["betti", "--max-dim", "3", "--recipe"]).arg(&r));
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn betti_of_gn() {
    let o = run(bin().args(["betti", "--gn", "5"]));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["betti"], serde_json::json!([0, 15, 0]));
    let o = run(bin().args(["betti", "--gn-prime", "5", "--field", "q"]));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["betti"], serde_json::json!([0, 0, 9]));
}

#[test]
fn verify_suites() {
    let o = run(bin().args(["verify", "thm3.7", "--trials", "100", "--seed", "4"]));
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("100/100"));
    let o = run(bin().args(["verify", "prop2.9", "exhaustive-6"]));
    assert!(o.status.success());
    assert!(stdout(&o).contains("142/142"));
}

fn read_records(dir: &Path) -> Vec<(usize, usize, usize, usize, String)> {
    let mut r = csv::Reader::from_path(dir.join("records.csv")).unwrap();
    r.records()
        .map(|row| {
            let row = row.unwrap();
            (row[0].parse().unwrap(), row[1].parse().unwrap(), row[2].parse().unwrap(), row[3].parse().unwrap(), row[5].to_owned())
        })
        .collect()
}

#[test]
fn cra_files_and_fraction() {
    let dir = scratch("cra");
    let o = run(bin().args(["cra", "--k", "3", "--p", "0.5", "--t", "500", "--seed", "1", "--out-dir"]).arg(&dir));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["records.csv", "summary.json", "histogram.csv", "scatter.csv", "graphs.g6", "provenance.json"] {
        assert!(dir.join(f).exists(), "{f}");
    }
    let summary: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.join("summary.json")).unwrap()).unwrap();
    let records = read_records(&dir);
    assert_eq!(records.len(), 500);
    let zero = records.iter().filter(|r| r.3 == 0).count() as u64;
    let recomputed = Fraction::new(zero, records.len() as u64);
    let stored: Fraction = serde_json::from_value(summary["zero_betti_fraction"].clone()).unwrap();
    assert_eq!(stored, recomputed);
    assert!(stored.value() <= 0.02, "{stored}");
    assert_eq!(summary["config"]["seed"], 1);
    assert_eq!(fs::read_to_string(dir.join("graphs.g6")).unwrap().lines().count(), 500);
}

#[test]
fn empty_batch() {
    let dir = scratch("empty");
    let o = run(bin().args(["ura", "--k", "3", "--m", "4", "--n", "4", "--t", "0", "--seed", "2", "--out-dir"]).arg(&dir));
    assert!(o.status.success());
    assert!(read_records(&dir).is_empty());
    let summary: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["count"], 0);
}

#[test]
fn thread_count_does_not_change_results() {
    let mut outputs = Vec::new();
    for threads in ["1", "4"] {
        let dir = scratch(&format!("threads{threads}"));
        let o = run(bin()
            .env("HAJOSLAB_THREADS", threads)
            .args(["ura", "--k", "4", "--m", "6", "--n", "6", "--t", "40", "--seed", "9", "--out-dir"])
            .arg(&dir));
        assert!(o.status.success());
        outputs.push((fs::read_to_string(dir.join("graphs.g6")).unwrap(), read_records(&dir)));
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn gnp_runs() {
    let dir = scratch("gnp");
    let o = run(bin().args(["gnp", "--order", "12", "--p", "0.5", "--samples", "20", "--out-dir"]).arg(&dir));
    assert!(o.status.success());
    let summary: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.join("summary.json")).unwrap()).unwrap();
    assert!(summary["config"]["seed"].is_u64());
    assert_eq!(read_records(&dir).len(), 20);
}
