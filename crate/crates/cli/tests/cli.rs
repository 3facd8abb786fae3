use std::path::Path;
use std::process::{Command, Output};

fn hdx(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hdx")).current_dir(dir).env_remove("HDX_CONFIG").args(args).output().expect("runs hdx")
}

fn ok(out: &Output) -> String {
    assert!(out.status.success(), "status {:?}, stderr: {}", out.status, String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).expect("valid JSON")
}

#[test]
fn complete_complex_has_ten_triangles() {
    let dir = tempfile::tempdir().unwrap();
    let text = ok(&hdx(dir.path(), &["build", "complete", "--n", "5", "--d", "2"]));
    let lines: Vec<_> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    assert_eq!(lines.len(), 10);
    assert!(lines.iter().all(|l| l.split_whitespace().count() == 3));
}

#[test]
fn epsilon_zero_is_exact_rational() {
    let dir = tempfile::tempdir().unwrap();
    ok(&hdx(dir.path(), &["build", "rp2", "-o", "rp2.txt"]));
    let r = json(&ok(&hdx(dir.path(), &["analyze", "--input", "rp2.txt", "--invariants", "epsilon", "--dims", "0"])));
    let inv = &r["invariants"][0];
    assert_eq!(inv["name"], "epsilon");
    assert_eq!(inv["exact"], true);
    let v = &inv["value"];
    assert!(v["num"].is_string() && v["den"].is_string(), "value {v}");
}

#[test]
fn counting_on_rp2_passes() {
    let dir = tempfile::tempdir().unwrap();
    ok(&hdx(dir.path(), &["build", "rp2", "-o", "rp2.txt"]));
    let r = json(&ok(&hdx(dir.path(), &["verify", "counting", "--input", "rp2.txt", "--samples", "5", "--seed", "1"])));
    assert_eq!(r["identities"]["triangles_2d"]["runs"], 5);
    assert_eq!(r["identities"]["triangles_2d"]["failures"], 0);
}

#[test]
fn malformed_input_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.txt"), "0 1 2\n0 1 2\n1 2 zz\n").unwrap();
    let out = hdx(dir.path(), &["analyze", "--input", "bad.txt"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "stderr: {err}");
}

#[test]
fn unknown_flag_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(hdx(dir.path(), &["analyze", "--frobnicate"]).status.code(), Some(1));
    assert_eq!(hdx(dir.path(), &["--help"]).status.code(), Some(0));
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    ok(&hdx(dir.path(), &["build", "complete", "--n", "6", "--d", "2", "-o", "k6.txt"]));
    let mut reports = Vec::new();
    for t in ["1", "8"] {
        let path = format!("out{t}.json");
        ok(&hdx(dir.path(), &["--threads", t, "--seed", "3", "analyze", "--input", "k6.txt", "--json", &path]));
        reports.push(std::fs::read(dir.path().join(&path)).unwrap());
        assert!(dir.path().join(format!("{path}.manifest.json")).exists());
    }
    assert_eq!(reports[0], reports[1]);
}

#[test]
fn config_file_is_read_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    ok(&hdx(dir.path(), &["build", "rp2", "-o", "rp2.txt"]));
    let cfg = dir.path().join("hdx.toml");
    std::fs::write(&cfg, "seed = 41\nbudget = 77\n").unwrap();
    let run = |extra: &[&str]| {
        let mut args = vec!["verify", "counting", "--input", "rp2.txt", "--samples", "2", "--json", "r.json"];
        args.extend_from_slice(extra);
        let out = Command::new(env!("CARGO_BIN_EXE_hdx")).current_dir(dir.path()).env("HDX_CONFIG", &cfg).args(&args).output().unwrap();
        ok(&out);
        json(&std::fs::read_to_string(dir.path().join("r.json.manifest.json")).unwrap())
    };
    let m = run(&[]);
    assert_eq!(m["seed"], 41);
    assert_eq!(m["config"]["budget"], 77);
    assert_eq!(m["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    let m = run(&["--seed", "5"]);
    assert_eq!(m["seed"], 5);
    assert_eq!(m["config"]["budget"], 77);

    std::fs::write(&cfg, "sed = 1\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_hdx")).current_dir(dir.path()).env("HDX_CONFIG", &cfg).args(["build", "rp2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn written_complex_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    ok(&hdx(dir.path(), &["build", "sphere", "--d", "2", "-o", "s.txt"]));
    ok(&hdx(dir.path(), &["build", "cone", "--input", "s.txt", "-o", "c.txt"]));
    let text = std::fs::read_to_string(dir.path().join("c.txt")).unwrap();
    std::fs::write(dir.path().join("copy.txt"), &text).unwrap();
    let a = ok(&hdx(dir.path(), &["analyze", "--input", "c.txt", "--dims", "0,1"]));
    let b = ok(&hdx(dir.path(), &["analyze", "--input", "copy.txt", "--dims", "0,1"]));
    assert_eq!(a, b);
    let r = json(&a);
    assert_eq!(r["complex"]["f_vector"], serde_json::json!([5, 10, 10, 4]));
}

#[test]
fn minimize_writes_trace_and_cochain() {
    let dir = tempfile::tempdir().unwrap();
    ok(&hdx(dir.path(), &["build", "rp2", "-o", "rp2.txt"]));
    let facets = std::fs::read_to_string(dir.path().join("rp2.txt")).unwrap();
    let edges: std::collections::BTreeSet<(u32, u32)> = facets
        .lines()
        .flat_map(|l| {
            let v: Vec<u32> = l.split_whitespace().map(|t| t.parse().unwrap()).collect();
            [(v[0], v[1]), (v[0], v[2]), (v[1], v[2])]
        })
        .collect();
    let all: String = std::iter::once("dim=1\n".to_string()).chain(edges.iter().map(|(a, b)| format!("{a} {b}\n"))).collect();
    std::fs::write(dir.path().join("a.txt"), all).unwrap();
    let r = json(&ok(&hdx(dir.path(), &["minimize", "--input", "rp2.txt", "--cochain", "a.txt", "--trace", "t.json", "-o", "out.txt"])));
    assert_eq!(r["locally_minimal"], true);
    assert_eq!(r["class_preserved"], true);
    let t = json(&std::fs::read_to_string(dir.path().join("t.json")).unwrap());
    assert!(t["steps"].as_array().unwrap().len() as u64 <= t["step_bound"].as_u64().unwrap());
    assert!(dir.path().join("out.txt").exists());
}

#[test]
fn gram_constants_of_section_graph() {
    let dir = tempfile::tempdir().unwrap();
    let r = json(&ok(&hdx(dir.path(), &["spectra", "--graph", "z13", "--q", "2", "--csv", "ev.csv"])));
    assert_eq!(r["gram"]["identity"], 4);
    assert_eq!(r["gram"]["all_ones"], 3);
    assert_eq!(r["mixing"]["violations"], 0);
    let csv = std::fs::read_to_string(dir.path().join("ev.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + r["vertices"].as_u64().unwrap() as usize);
}

#[test]
fn overlap_matches_oracle() {
    let dir = tempfile::tempdir().unwrap();
    ok(&hdx(dir.path(), &["build", "rp2", "-o", "rp2.txt"]));
    let r = json(&ok(&hdx(dir.path(), &["overlap", "--input", "rp2.txt", "--trials", "3", "--oracle"])));
    let est: Vec<_> = r["trials"]["estimates"].as_array().unwrap().iter().map(|e| e["depth"].clone()).collect();
    assert_eq!(est, r["oracle_depths"].as_array().unwrap().clone());
}
