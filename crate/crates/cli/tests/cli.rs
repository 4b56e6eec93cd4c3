use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hhnn(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hhnn"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn json(bytes: &[u8]) -> Value {
    serde_json::from_slice(bytes).unwrap()
}

#[test]
fn verify_reports_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = hhnn(dir.path(), &["verify", "--algebra", "O", "--involution", "natural"]);
    assert_eq!(o.status.code(), Some(0));
    let report = json(&o.stdout);
    assert_eq!(report["reahn"]["status"], "holds");
    assert_eq!(report["psd"], true);

    let o = hhnn(dir.path(), &["verify", "--algebra", "C", "--involution", "identity"]);
    assert_eq!(o.status.code(), Some(1));
    let report = json(&o.stdout);
    assert_eq!(report["reahn"]["status"], "holds");
    assert_eq!(report["psd"], false);

    let o = hhnn(dir.path(), &["verify", "--algebra", "Q", "--involution", "identity"]);
    assert_eq!(o.status.code(), Some(1));
    let report = json(&o.stdout);
    assert_eq!(report["reverse_involution"]["witness"], serde_json::json!({"mu": 1, "nu": 2}));

    let o = hhnn(dir.path(), &["verify", "--algebra", "cd:4", "--involution", "natural"]);
    assert_eq!(o.status.code(), Some(0));

    for bad in [&["verify", "--algebra", "Z"][..], &["verify", "--algebra", "cd:9"], &["verify"]] {
        assert_eq!(hhnn(dir.path(), bad).status.code(), Some(2), "{bad:?}");
    }
}

#[test]
fn table_prints_units() {
    let dir = tempfile::tempdir().unwrap();
    let o = hhnn(dir.path(), &["table", "--algebra", "U"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().any(|l| l.contains('i') && l.trim_end().ends_with('1')));
}

#[test]
fn graph_writes_dot_and_classification() {
    let dir = tempfile::tempdir().unwrap();
    let o = hhnn(dir.path(), &["graph", "--config", "example5:u-split", "--out", "u.dot"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = fs::read_to_string(dir.path().join("u.dot")).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("color=red"));
    let report = json(&fs::read(dir.path().join("u.dot.json")).unwrap());
    assert_eq!(report["classification"]["counts"]["fixed_points"], 4);
    assert_eq!(report["classification"]["counts"]["cyclic_nodes"], 0);

    let o = hhnn(dir.path(), &["graph", "--config", "example5:c-split"]);
    let report = json(&o.stdout);
    assert!(report["classification"]["counts"]["cyclic_nodes"].as_u64().unwrap() > 0);

    let d: Vec<Value> = ["example5:d-split", "example5:d-conj"]
        .iter()
        .map(|c| json(&hhnn(dir.path(), &["graph", "--config", c]).stdout))
        .collect();
    assert_eq!(
        d[0]["classification"]["counts"]["fixed_points"],
        d[1]["classification"]["counts"]["fixed_points"]
    );

    let o = hhnn(dir.path(), &["graph", "--algebra", "C", "--activation", "sigma", "--N", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn realify_round_trips_through_config() {
    let dir = tempfile::tempdir().unwrap();
    let o = hhnn(dir.path(), &["realify", "--config", "example5:u-split", "--out", "m.csv"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = fs::read_to_string(dir.path().join("m.csv")).unwrap();
    assert_eq!(csv, "0,0,1,3\n0,0,3,1\n1,3,0,0\n3,1,0,0\n");
    let cfg = json(&fs::read(dir.path().join("m.csv.json")).unwrap());
    assert_eq!(cfg["algebra"], "R");
    assert_eq!(cfg["N"], 4);
    let o = hhnn(dir.path(), &["graph", "--config", "m.csv.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o.stdout)["classification"]["counts"]["fixed_points"], 4);

    let o = hhnn(dir.path(), &["realify", "--config", "example5:c-conj"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn run_writes_trace_and_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let o = hhnn(
        dir.path(),
        &["run", "--algebra", "Q", "--activation", "split", "--N", "7", "--seed", "5", "--out", "t.csv"],
    );
    assert_eq!(o.status.code(), Some(0));
    let csv = fs::read_to_string(dir.path().join("t.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("update_index,neuron,changed,energy"));
    assert!(lines.next().unwrap().starts_with("0,,0,"));
    let meta = json(&fs::read(dir.path().join("t.csv.meta.json")).unwrap());
    assert_eq!(meta["seed"], 5);
    assert_eq!(meta["converged"], true);
    assert_eq!(meta["config_hash"].as_str().unwrap().len(), 64);

    // complex split-sign net with non-Hermitian weights keeps cycling
    let o = hhnn(dir.path(), &["run", "--config", "example5:c-split", "--sweeps", "30"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn csgn_resolution_flag() {
    let dir = tempfile::tempdir().unwrap();
    let a = hhnn(dir.path(), &["run", "--algebra", "C", "--activation", "csgn", "--K", "6", "--N", "4"]);
    let b = hhnn(dir.path(), &["run", "--algebra", "C", "--activation", "csgn:6", "--N", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let bad = hhnn(dir.path(), &["run", "--algebra", "C", "--activation", "csgn", "--N", "4"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn config_file_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("bad.json"),
        r#"{"algebra":"C","activation":"split","N":1,"weights":[[[0,0]]],"typo":true}"#,
    )
    .unwrap();
    assert_eq!(hhnn(dir.path(), &["run", "--config", "bad.json"]).status.code(), Some(2));
    assert_eq!(hhnn(dir.path(), &["run", "--config", "missing.json"]).status.code(), Some(2));
    assert_eq!(hhnn(dir.path(), &["run", "--config", "example5:x"]).status.code(), Some(2));
}

#[test]
fn octonion_experiment_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = hhnn(dir.path(), &["octonion-exp", "--N", "10", "--seed", "4", "--out", "oct"]);
    assert_eq!(o.status.code(), Some(0));
    for f in ["octonion_seed4.csv", "real_seed4.csv", "meta_seed4.json"] {
        assert!(dir.path().join("oct").join(f).exists(), "{f}");
    }
    let meta = json(&fs::read(dir.path().join("oct/meta_seed4.json")).unwrap());
    assert_eq!(meta["seed"], 4);
    let (eo, er) = (
        meta["octonion"]["final_energy"].as_f64().unwrap(),
        meta["real"]["final_energy"].as_f64().unwrap(),
    );
    assert!((eo - er).abs() <= 1e-9 * eo.abs());
    assert_eq!(hhnn(dir.path(), &["octonion-exp", "--N", "1"]).status.code(), Some(2));
}
