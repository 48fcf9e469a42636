use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_resolvekit")).args(args).current_dir(dir).output().expect("spawn")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn sample_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = json(&run(&["sample", "--preset", "karate", "--n", "80", "--seed", "5", "--out", "a.txt"], dir.path()));
    let b = json(&run(&["sample", "--preset", "karate", "--n", "80", "--seed", "5", "--out", "b.txt"], dir.path()));
    assert_eq!(a["edges"], b["edges"]);
    let read = |f: &str| std::fs::read(dir.path().join(f)).unwrap();
    assert_eq!(read("a.txt"), read("b.txt"));
    assert_eq!(read("a.txt.labels"), read("b.txt.labels"));
    run(&["sample", "--preset", "karate", "--n", "80", "--seed", "6", "--out", "c.txt"], dir.path());
    assert_ne!(read("a.txt"), read("c.txt"));
}

#[test]
fn bad_probability_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("p.json"), r#"{"community_sizes": [3, 3], "P": [[1.2, 0.1], [0.1, 0.5]]}"#).unwrap();
    let out = run(&["sample", "--params", "p.json", "--out", "g.txt"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.path().join("g.txt").exists());
}

#[test]
fn mine_reports_allocation_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&run(&["mine", "--preset", "karate", "--n", "10000", "--alpha", "0.01"], dir.path()));
    assert_eq!(v["size"], 82);
    assert_eq!(v["allocation"], serde_json::json!([39, 43]));
    assert!(v["f_value"].as_f64().unwrap() <= 0.01);
    // f stays positive, so no allocation reaches zero.
    assert_eq!(run(&["mine", "--preset", "karate", "--alpha", "0"], dir.path()).status.code(), Some(3));
    assert_eq!(run(&["mine", "--preset", "nowhere", "--alpha", "0.1"], dir.path()).status.code(), Some(2));
}

#[test]
fn resolve_methods_and_targets() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("p3.txt"), "0 1\n1 2\n").unwrap();
    let v = json(&run(&["resolve", "p3.txt", "--method", "brute", "--target", "dist"], dir.path()));
    assert_eq!(v["size"], 1);
    std::fs::write(dir.path().join("c4.txt"), "0 1\n1 2\n2 3\n3 0\n").unwrap();
    assert_eq!(run(&["resolve", "c4.txt", "--method", "ich", "--target", "adj"], dir.path()).status.code(), Some(4));
    assert_eq!(run(&["resolve", "missing.txt", "--method", "ich"], dir.path()).status.code(), Some(2));

    json(&run(&["sample", "--preset", "karate", "--n", "60", "--seed", "1", "--out", "k.txt"], dir.path()));
    for method in ["ich", "random", "greedy", "preorder"] {
        let args =
            ["resolve", "k.txt", "--method", method, "--preset", "karate", "--n", "60", "--labels", "k.txt.labels"];
        let v = json(&run(&args, dir.path()));
        assert_eq!(v["verified"], true, "{method}");
    }
}

#[test]
fn bench_writes_reproducible_tables() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"{"networks": ["karate", "primary-school"], "n_target": 120, "alphas": [0.1],
                  "methods": ["MINE", "RANDOM", "ICH"], "n_graphs": 2,
                  "replicates": {"MINE": 3, "RANDOM": 2, "ICH": 1}, "base_seed": 4}"#;
    std::fs::write(dir.path().join("b.json"), cfg).unwrap();
    let first = json(&run(&["bench", "b.json", "--out", "r1"], dir.path()));
    json(&run(&["bench", "b.json", "--out", "r2"], dir.path()));
    let hash = first["config_hash"].as_str().unwrap();
    for stem in ["sizes", "timings"] {
        for ext in ["csv", "md"] {
            assert!(dir.path().join(format!("r1/{stem}-{hash}.{ext}")).exists(), "{stem}.{ext}");
        }
    }
    assert!(dir.path().join(format!("r1/report-{hash}.json")).exists());
    let sizes = |d: &str| std::fs::read(dir.path().join(format!("{d}/sizes-{hash}.csv"))).unwrap();
    assert_eq!(sizes("r1"), sizes("r2"));

    std::fs::write(dir.path().join("bad.json"), r#"{"networks": ["atlantis"]}"#).unwrap();
    assert_eq!(run(&["bench", "bad.json", "--out", "r3"], dir.path()).status.code(), Some(2));
}

#[test]
fn bounds_are_symmetric_in_p() {
    let dir = tempfile::tempdir().unwrap();
    let lo = json(&run(&["bounds", "--n", "100", "--p", "0.3"], dir.path()));
    let hi = json(&run(&["bounds", "--n", "100", "--p", "0.7"], dir.path()));
    assert_eq!(lo["beta_upper"], hi["beta_upper"]);
    assert_eq!(lo["any_set"], hi["any_set"]);
    assert_eq!(run(&["bounds", "--n", "100", "--p", "1"], dir.path()).status.code(), Some(2));
}
