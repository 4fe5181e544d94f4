use std::process::{Command, Output};

use serde_json::Value;

fn fence(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fence"))
        .args(args)
        .env_remove("FENCE_MAX_FAMILY")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = fence(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn info_reports_shared_elements_and_ideals() {
    let v = json(&["info", "--alpha", "3,3,2", "--format", "json"]);
    assert_eq!(v["elements"], 7);
    assert_eq!(v["shared"], serde_json::json!(["x3", "x6"]));
    assert_eq!(v["ideals"], "23");
    assert_eq!(v["schema_version"], 1);
    let v = json(&["info", "--alpha", "2,2", "--format", "json"]);
    assert_eq!((v["elements"].as_u64(), v["ideals"].as_str()), (Some(3), Some("5")));
}

#[test]
fn bad_composition_is_a_one_line_usage_error() {
    let out = fence(&["info", "--alpha", "1,3"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert_eq!(err.lines().count(), 1);
    assert!(err.starts_with("error[invalid-composition]:"), "{err}");
}

#[test]
fn unknown_flags_exit_one() {
    let out = fence(&["orbits", "--alpha", "2,2", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("error[usage]:"));
    assert!(fence(&["--help"]).status.success());
}

#[test]
fn orbit_sizes() {
    let v = json(&["orbits", "--alpha", "4,3,4"]);
    assert_eq!(v["sizes"], serde_json::json!([5, 17, 17, 17]));
    let v = json(&["orbits", "--alpha", "5,4"]);
    assert_eq!(v["count"], 1);
    assert_eq!(v["orbits"][0]["size"], 21);
    assert_eq!(v["orbits"][0]["chi"], 32);
    let v = json(&["orbits", "--alpha", "2,2", "--family", "ideals"]);
    assert_eq!(v["sizes"], serde_json::json!([2, 3]));
}

#[test]
fn orbits_csv_has_schema_column() {
    let out = fence(&["orbits", "--alpha", "2,2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("schema_version,index,family,size"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn tiling_renders() {
    let out = fence(&["tiling", "--alpha", "4,3,4", "--rep", "x4,x10", "--render", "ascii"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "|Y|B B B|R|\n|Y|R|B B|R|\n|Y|R|B B B|\n");
    let out = fence(&["tiling", "--alpha", "3,3,3,3", "--orbit-index", "0", "--render", "svg"]);
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    let out = fence(&["tiling", "--alpha", "4,3,4", "--rep", "x1,x2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn check_statistics() {
    let v = json(&["check", "--alpha", "4,3,4", "--stat", "chi[5]-chi[6]"]);
    assert_eq!(v["report"]["kind"]["verdict"], "homomesic");
    assert_eq!(v["report"]["kind"]["constant"], "0");
    let v = json(&["check", "--alpha", "2,2,2", "--stat", "chi"]);
    assert_eq!(v["report"]["kind"]["constant"], "3/2");
    let v = json(&["check", "--alpha", "4,4,4,4", "--stat", "chi"]);
    assert_eq!(v["report"]["kind"]["verdict"], "orbomesic");
}

#[test]
fn verify_and_scan() {
    let v = json(&["verify", "two-segment", "--max-sum", "10"]);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["claim"], "two-segment");
    let v = json(&["scan", "constant-alpha", "--max", "8"]);
    assert_eq!(v["verdict"], "pass");
    let v = json(&["verify", "palindromic", "--alpha", "4,4,4,4,4,4,4,4"]);
    let observed = &v["instances"][0]["witnesses"];
    let found = observed.as_array().unwrap().iter().any(|o| {
        o["black"] == serde_json::json!([21, 20, 18, 18, 19, 18, 19, 21])
            && o["red"] == serde_json::json!([5, 4, 13, 4, 9, 8, 5])
    });
    assert!(found, "{observed}");
}

#[test]
fn cap_exits_three() {
    let out = Command::new(env!("CARGO_BIN_EXE_fence"))
        .args(["orbits", "--alpha", "4,3,4"])
        .env("FENCE_MAX_FAMILY", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).starts_with("error[cap-exceeded]:"));
    let out = fence(&["orbits", "--alpha", "4,3,4", "--max-family", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn worked_conjugation() {
    let v = json(&["conjugate", "--alpha", "2,2,2", "--word", "1,5,2,4,3", "--at", "x5"]);
    assert_eq!(v["result"], "1,2,4,3,5");
    let v = json(&["conjugation-path", "--alpha", "2,2,2", "--word", "1,5,2,4,3", "--to", "1,2,4,3,5"]);
    assert_eq!(v["path"], serde_json::json!(["x5"]));
    let out = fence(&["conjugate", "--alpha", "2,2,2", "--word", "1,5,2,4,3", "--at", "x2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = fence(&["conjugation-path", "--alpha", "2,2,2", "--family", "antichains", "--word", "1,2,3,4,5", "--to", "5,4,3,2,1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn base_graph_and_transfer() {
    let v = json(&["base-graph", "--alpha", "2,2,2", "--family", "ideals"]);
    assert_eq!(v["acyclic"], true);
    assert_eq!(v["edges"], serde_json::json!([[1, 2], [2, 3], [3, 4], [4, 5]]));
    let v = json(&["transfer", "--alpha", "3,2,3"]);
    assert_eq!(v["report"]["agree"], true);
}

#[test]
fn output_is_reproducible_and_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = fence(&[
            "verify", "transfer", "--max-n", "5", "--samples", "5", "--seed", "42", "--no-timing",
            "--out", path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let one = fence(&["orbits", "--alpha", "3,1,3", "--format", "csv"]).stdout;
    let two = fence(&["orbits", "--alpha", "3,1,3", "--format", "csv"]).stdout;
    assert_eq!(one, two);
}

#[test]
fn count_command() {
    let v = json(&["count", "--alpha", "4,4,4,4"]);
    assert_eq!(v["ideals"], "305");
    assert_eq!(v["closed_form"], "305");
}
