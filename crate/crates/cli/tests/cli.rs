use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn monopath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monopath")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Writes a family member and its canonical functional into `dir`.
fn gen(dir: &Path, family: &str, params: &[&str]) -> (PathBuf, PathBuf) {
    let tag = format!("{family}-{}", params.join("-"));
    let p = dir.join(format!("{tag}.json"));
    let f = dir.join(format!("{tag}.f.json"));
    let mut args = vec!["gen", family];
    args.extend(params);
    args.extend(["-o", p.to_str().unwrap(), "--functional", f.to_str().unwrap()]);
    let out = monopath(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    (p, f)
}

fn gen_json(family: &str, params: &[&str]) -> Value {
    let mut args = vec!["gen", family];
    args.extend(params);
    let out = monopath(&args);
    assert!(out.status.success());
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn gen_family_shapes() {
    let x = gen_json("stacked-x", &["10"]);
    assert_eq!(x["n"], 10);
    assert_eq!(x["faces2"].as_array().unwrap().len(), 16);
    let prism = gen_json("prism", &["3"]);
    assert_eq!(prism["n"], 6);
    assert_eq!(prism["faces2"].as_array().unwrap().len(), 5);
    let dag = gen_json("complete-dag", &["6"]);
    assert!(dag["faces2"].as_array().unwrap().is_empty());
    assert_eq!(dag["edges"].as_array().unwrap().len(), 15);
}

#[test]
fn gen_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (p, _) = gen(dir.path(), "wedge-edge", &["5"]);
    let first = std::fs::read_to_string(&p).unwrap();
    let out = monopath(&["gen", "wedge-edge", "5"]);
    assert_eq!(stdout(&out), first);
}

#[test]
fn count_values() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&str, &str, &str, &str); 3] = [("stacked-x", "10", "149", "4374"), ("pyramid", "4", "", "8"), ("prism", "5", "7", "48")];
    for (family, k, mu, tau) in cases {
        let (p, f) = gen(dir.path(), family, &[k]);
        let out = monopath(&["--json", "count", p.to_str().unwrap(), f.to_str().unwrap()]);
        assert!(out.status.success(), "{family} {k}: {}", String::from_utf8_lossy(&out.stderr));
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        if !mu.is_empty() {
            assert_eq!(v["mu"].to_string().trim_matches('"'), mu, "{family} {k}");
        }
        assert_eq!(v["tau"].to_string().trim_matches('"'), tau, "{family} {k}");
        assert_eq!(v["tau_oracle"], v["tau"]);
    }
}

#[test]
fn flipgraph_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let (p, f) = gen(dir.path(), "stacked-x", &["8"]);
    let out = monopath(&["--json", "flipgraph", p.to_str().unwrap(), f.to_str().unwrap(), "--diameter"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["nodes"], 44);
    assert!(v["diameter"].as_u64().unwrap() >= 9);

    let (p, f) = gen(dir.path(), "prism", &["3"]);
    let dot = dir.path().join("prism.dot");
    let csv = dir.path().join("prism.csv");
    let out = monopath(&["flipgraph", p.to_str().unwrap(), f.to_str().unwrap(), "--dot", dot.to_str().unwrap(), "--csv", csv.to_str().unwrap()]);
    assert!(out.status.success());
    let dot = std::fs::read_to_string(dot).unwrap();
    assert!(dot.starts_with("graph flips {"));
    assert_eq!(dot.lines().filter(|l| l.contains("label=") && !l.contains(" -- ")).count(), 5);
    let csv = std::fs::read_to_string(csv).unwrap();
    assert_eq!(csv.lines().next(), Some("node,path,eccentricity"));
    assert_eq!(csv.lines().count(), 6);

    let (p, f) = gen(dir.path(), "stacked-x", &["6"]);
    let out = monopath(&["flipgraph", p.to_str().unwrap(), f.to_str().unwrap(), "--via-fibers", "--check-dist-bound"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("isomorphic: true"), "{text}");
    assert!(text.contains("violations 0"), "{text}");
}

#[test]
fn fibers_listing() {
    let dir = tempfile::tempdir().unwrap();
    let (p, f) = gen(dir.path(), "hypercube", &["3"]);
    let out = monopath(&["fibers", p.to_str().unwrap(), f.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 13, "{text}");
    assert!(text.lines().all(|l| l.ends_with("cycle: true")), "{text}");
}

#[test]
fn verify_stacked_range() {
    let out = monopath(&["verify", "stacked-x", "4..12", "--checks", "counts,diameter"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mus: Vec<&str> = text
        .lines()
        .filter(|l| l.contains(" counts "))
        .map(|l| l.split_whitespace().find_map(|w| w.strip_prefix("mu=")).unwrap())
        .collect();
    assert_eq!(mus, ["4", "7", "13", "24", "44", "81", "149", "274", "504"]);
    assert!(text.contains("0 violations"));
}

#[test]
fn verify_all_passes() {
    let out = monopath(&["--json", "verify", "all"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows: Vec<Value> = serde_json::from_slice(&out.stdout).unwrap();
    assert!(rows.len() > 500);
    assert!(rows.iter().all(|r| r["status"] != "violation"));
}

#[test]
fn bad_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(monopath(&["gen", "nope", "3"]).status.code(), Some(2));
    assert_eq!(monopath(&["gen", "prism", "2"]).status.code(), Some(2));
    assert_eq!(monopath(&["verify", "prism", "5..3"]).status.code(), Some(2));
    assert_eq!(monopath(&["verify", "prism", "3", "--checks", "bogus"]).status.code(), Some(2));
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"dim\": 3,\n \"n\": ").unwrap();
    let out = monopath(&["count", bad.to_str().unwrap(), bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(monopath(&["count", "/nonexistent", "/nonexistent"]).status.code(), Some(2));
}

#[test]
fn non_admissible_order_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let (p, _) = gen(dir.path(), "hypercube", &["3"]);
    let f = dir.path().join("order.json");
    // a sink in the middle of the order: two local minima
    std::fs::write(&f, "{\"order\": [0, 7, 1, 2, 3, 4, 5, 6]}").unwrap();
    let out = monopath(&["count", p.to_str().unwrap(), f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{}", stdout(&out));
}
