//! Exit codes and report shapes of the binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use mspace::Report;
use serde_json::json;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name).to_str().unwrap().to_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mspace")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Report {
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn relations_on_two_points_are_strongly_gelfand() {
    let out = run(&["check", "quantale", &data("relations2.json"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.notes["class"], json!("strongly Gelfand"));
    assert_eq!(r.notes["|ℐ|"], json!(7));
}

#[test]
fn bad_chain_fails_with_element_one() {
    let out = run(&["check", "quantale", &data("chain3-bad.json"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out).check("stably Gelfand").unwrap().witness, Some(json!({ "element": 1 })));
}

#[test]
fn spaces_and_groupoids() {
    assert_eq!(run(&["check", "space", &data("sierpinski.json"), "--lattice"]).status.code(), Some(0));
    let out = run(&["check", "space", &data("two-point-discrete.json"), "--lattice", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out).check("sober lattice").unwrap().witness, Some(json!("no bottom")));
    assert_eq!(run(&["check", "groupoid", &data("pair2.json")]).status.code(), Some(0));
}

#[test]
fn parse_and_usage_errors_exit_two() {
    let dir = std::env::temp_dir().join(format!("mspace-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let broken = dir.join("broken.json");
    std::fs::write(&broken, "{ \"n\": 2,\n  \"opens\": [[0] }").unwrap();
    let out = run(&["check", "space", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    // serde_json reports the line and column.
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(run(&["demo", "schwinger", "1"]).status.code(), Some(2));
    assert_eq!(run(&["observer", "--pair", "2", "--group", "Z2"]).status.code(), Some(2));
    assert_eq!(run(&["observer", "--group", "Z2", "--suite", "pseudogroup"]).status.code(), Some(2));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn persistency_witness_for_z2() {
    let out = run(&["observer", "--group", "Z2", "--suite", "persistency", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let w = report(&out).checks[0].witness.clone().unwrap();
    assert_eq!(w["omega"], json!(["e"]));
    assert_eq!(w["index"], json!([4, 1, 5]));
}

#[test]
fn pair_two_passes_every_suite() {
    let out = run(&["observer", "--pair", "2", "--suite", "all", "--seed", "0", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.notes["bijection"], json!("7 ↔ 7 bijection verified"));
    assert_eq!(r.status_of("persistency r(mι(ω)n) = r(m)ωr(n)"), Some(mspace::Status::Pass));
}

#[test]
fn disjoint_union_spec() {
    let out = run(&["observer", "--groupoid", "pair:2+pair:1", "--suite", "axioms"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn demos() {
    for args in [&["demo", "spin"][..], &["demo", "schwinger", "3"], &["demo", "twoslit", "4"]] {
        assert_eq!(run(args).status.code(), Some(0), "{args:?}");
    }
    let r = report(&run(&["demo", "twoslit", "4", "--format", "json"]));
    assert_eq!(r.notes["bin sets"], json!(16));
}
