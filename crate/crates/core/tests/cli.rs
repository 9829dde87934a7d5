mod common;

use std::fs;
use std::process::{Command, Output};

use common::fixture;
use layered_model::io::{canonicalize, from_json, read_json, to_canonical_json};
use layered_model::model::{build_product_model, ModelComplex};
use layered_model::moves::MovePath;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_layered-model")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fx(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn enumerate_genus_two() {
    let o = run(&["enumerate", "--genus", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = from_json(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["enumerate"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--genus", "1"]).status.code(), Some(2));
    assert_eq!(run(&["build-model"]).status.code(), Some(2));
    assert_eq!(run(&["export", &fx("double.splitting.json")]).status.code(), Some(2));
    assert_eq!(run(&["check", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn unknown_field_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("g.json");
    fs::write(&p, r#"{"curve_ids": [0, 1, 2], "matching": [], "vertices": 2, "weight": 1}"#).unwrap();
    let o = run(&["check", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("weight"), "{err}");
    assert!(err.contains("expected JSON kinds"));
}

#[test]
fn doctored_model_exits_one() {
    let path: MovePath = read_json(&fixture("theta3a.path.json")).unwrap();
    let mut m = build_product_model(&path).unwrap();
    let dup = m.blocks[0].top[0];
    m.blocks[1].top[0] = dup;
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("model.json");
    fs::write(&p, to_canonical_json(&m).unwrap()).unwrap();
    let o = run(&["check", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("interiors_not_disjoint"));
}

#[test]
fn bad_matching_is_a_violation() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("g.json");
    fs::write(&p, r#"{"curve_ids": [0], "matching": [[[0, 0], [0, 1]]], "vertices": 2}"#).unwrap();
    let o = run(&["check", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn assemble_with_certificate() {
    let o = run(&["assemble", "--manifest", &fx("double.manifest.json"), "--certify"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = from_json(&stdout(&o)).unwrap();
    assert_eq!(v["euler_characteristic"], 0);
    assert_eq!(v["certificate"]["knotted"], true);
    assert_eq!(v["settings"]["seed"], 0);
    let o = run(&["assemble", "--manifest", &fx("k2.manifest.json")]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["assemble", "--manifest", &fx("k2_shared.manifest.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("shared"));
}

#[test]
fn out_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.json");
    let o = run(&[
        "build-model",
        "--path",
        &fx("q.path.json"),
        "--spine",
        &fx("genus_two.spine.json"),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(&out).unwrap();
    let m: ModelComplex = from_json(&text).unwrap();
    assert_eq!(to_canonical_json(&m).unwrap(), text);
    assert_eq!(run(&["check", out.to_str().unwrap()]).status.code(), Some(0));
    let dot = run(&["export", out.to_str().unwrap(), "--format", "dot"]);
    assert!(stdout(&dot).starts_with("graph model {"));
}

#[test]
fn fixtures_are_canonical() {
    for entry in fs::read_dir(fixture("")).unwrap() {
        let p = entry.unwrap().path();
        let text = fs::read_to_string(&p).unwrap();
        assert_eq!(canonicalize(&text).unwrap(), text, "{}", p.display());
        let o = run(&["check", p.to_str().unwrap()]);
        let expected = if p.ends_with("k2_shared.manifest.json") { 1 } else { 0 };
        assert_eq!(o.status.code(), Some(expected), "{}", p.display());
    }
}

#[test]
fn export_reproduces_typed_fixtures() {
    for name in ["theta.graph.json", "q.path.json", "genus_two.spine.json", "product2.spine.json"] {
        let o = run(&["export", &fx(name)]);
        assert_eq!(stdout(&o), fs::read_to_string(fixture(name)).unwrap(), "{name}");
    }
}

#[test]
fn layer_number_ignores_seed() {
    let a = run(&["layer-number", "--target", &fx("theta.graph.json"), "--seed", "1"]);
    let b = run(&["layer-number", "--target", &fx("theta.graph.json"), "--seed", "99"]);
    let va: serde_json::Value = from_json(&stdout(&a)).unwrap();
    let vb: serde_json::Value = from_json(&stdout(&b)).unwrap();
    assert_eq!(va["lower_bound"], 1);
    assert_eq!(va["lower_bound"], vb["lower_bound"]);
}
