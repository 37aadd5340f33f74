use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use fincat::catalog;
use fincat::io::{canonical_text, load_str};
use fincat::report::digest;

fn fincat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fincat")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = fincat(&all);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn gen(dir: &Path, example: &str) -> String {
    let path = dir.join(format!("{}.json", example.replace([':', ','], "_")));
    let path = path.to_str().unwrap().to_string();
    assert_eq!(fincat(&["gen", "--example", example, "--out", &path]).status.code(), Some(0));
    path
}

fn without_timing(mut v: Value) -> Value {
    v["stats"]["elapsed_ms"] = Value::from(0);
    v
}

#[test]
fn proper_on_p4_file() {
    let dir = TempDir::new().unwrap();
    let p4 = gen(dir.path(), "p4");
    let (code, v) = json(&["proper", &p4, "--mode", "both"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "proper");
    assert_eq!(v["result"]["agreement"], true);
    assert!(v["witnesses"]["proper_autoequivalence"]["obj_map"].is_object());
    assert_eq!(v["status"], "ok");
    assert_eq!(v["format_version"], 1);
    assert_eq!(v["input_digest"], digest(&fs::read(&p4).unwrap()));
}

#[test]
fn discrete_file_has_no_proper_autoequivalence() {
    let dir = TempDir::new().unwrap();
    let d2 = gen(dir.path(), "discrete:2");
    let (code, v) = json(&["proper", &d2]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "no-proper");
}

#[test]
fn modes_are_selectable() {
    for mode in ["criterion", "oracle"] {
        let (code, v) = json(&["proper", "catalog:e3", "--mode", mode]);
        assert_eq!(code, 0);
        assert_eq!(v["result"][mode], "proper");
        assert!(v["result"]["agreement"].is_null());
    }
}

#[test]
fn broken_file_lists_violations() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("broken.json");
    fs::write(
        &path,
        r#"{"format_version":1,"objects":["a","b"],
            "morphisms":[{"id":"f","dom":"a","cod":"b"},{"id":"g","dom":"b","cod":"a"},{"id":"h","dom":"a","cod":"z"}],
            "compose":[["f","g","id:a"]]}"#,
    )
    .unwrap();
    let (code, v) = json(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "invalid-input");
    let kinds: Vec<&str> = v["result"]["violations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["kind"].as_str().unwrap())
        .collect();
    assert!(kinds.contains(&"dangling-endpoint"), "{kinds:?}");
}

#[test]
fn malformed_and_missing_inputs_exit_2() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, r#"{"objects":["a"]}"#).unwrap();
    assert_eq!(fincat(&["validate", path.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(fincat(&["validate", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(fincat(&["proper", "catalog:q9"]).status.code(), Some(2));
    assert_eq!(fincat(&["concrete", "catalog:p4"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(fincat(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(fincat(&["proper", "catalog:p4", "--colour"]).status.code(), Some(2));
    assert_eq!(fincat(&["proper", "catalog:p4", "--mode", "guess"]).status.code(), Some(2));
    assert_eq!(fincat(&[]).status.code(), Some(2));
    assert_eq!(fincat(&["--help"]).status.code(), Some(0));
}

#[test]
fn budget_exceeded_exits_3() {
    let (code, v) = json(&["autoequiv", "catalog:finset:1,2,2", "--budget", "50"]);
    assert_eq!(code, 3);
    assert_eq!(v["status"], "budget-exceeded");
    let (code, v) = json(&["proper", "catalog:p4", "--budget", "5"]);
    assert_eq!(code, 3);
    assert_eq!(v["result"]["verdict"], "inconclusive");
    let (code, _) = json(&["quotient", "catalog:finset:1,2,2"]);
    assert_eq!(code, 3);
    let (code, v) = json(&["quotient", "catalog:finset:1,2,2", "--max-morphisms", "30"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["eta_star_surjective"], true);
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let p4 = gen(dir.path(), "p4");
    for cmd in ["validate", "skeleton", "autoequiv", "automorphisms", "proper", "promote", "quotient"] {
        let a = json(&[cmd, &p4]).1;
        let b = json(&[cmd, &p4]).1;
        assert_eq!(without_timing(a.clone()), without_timing(b), "{cmd}");
        let text = serde_json::to_string_pretty(&a).unwrap() + "\n";
        let raw = String::from_utf8(fincat(&[cmd, &p4, "--format", "json"]).stdout).unwrap();
        let reparsed: Value = serde_json::from_str(&raw).unwrap();
        assert_eq!(without_timing(reparsed), without_timing(serde_json::from_str(&text).unwrap()));
    }
}

#[test]
fn text_is_the_default_format() {
    let out = fincat(&["proper", "catalog:p4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict: proper"), "{text}");
    assert!(text.contains("status: ok"));
}

#[test]
fn out_flag_writes_the_report() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("report.json");
    let out = fincat(&["skeleton", "catalog:e3", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "skeleton");
    assert_eq!(v["result"]["representatives"], serde_json::json!(["e", "f"]));
}

#[test]
fn gen_round_trips_byte_identically() {
    let dir = TempDir::new().unwrap();
    for name in ["p4", "e3", "terminal", "empty", "isopair", "discrete:3", "isopairs:2", "finset:1,2,2"] {
        let path = gen(dir.path(), name);
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(fincat(&["validate", &path]).status.code(), Some(0), "{name}");
        let loaded = load_str(&text).unwrap();
        assert_eq!(canonical_text(&loaded), text, "{name}");
        assert_eq!(loaded.category, catalog::catalog(name).unwrap().category(), "{name}");
    }
}

#[test]
fn generated_files() {
    let dir = TempDir::new().unwrap();
    let p4 = load_str(&fs::read_to_string(gen(dir.path(), "p4")).unwrap()).unwrap();
    assert_eq!(p4.category.morphism_count(), 9);
    let e3 = load_str(&fs::read_to_string(gen(dir.path(), "e3")).unwrap()).unwrap();
    assert_eq!(e3.category.morphism_count(), 5);
    let text = fs::read_to_string(gen(dir.path(), "finset:1,2,2")).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert!(v["underlying"].is_object());
    assert!(v["mor_fn"].is_object());
    assert_eq!(load_str(&text).unwrap().category.morphism_count(), 23);
    assert_eq!(fincat(&["gen", "--example", "nope"]).status.code(), Some(2));
}

#[test]
fn empty_category() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("empty.json");
    fs::write(&path, r#"{"format_version": 1, "objects": []}"#).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(json(&["validate", p]).0, 0);
    let (code, v) = json(&["proper", p]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "no-proper");
}

#[test]
fn preorder_files_are_accepted() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("chain.json");
    fs::write(
        &path,
        r#"{"format_version":1,"preorder":{"elements":["x","y","z"],"le":[["x","y"],["y","z"]]}}"#,
    )
    .unwrap();
    let (code, v) = json(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["morphisms"], 6);
}

#[test]
fn promote_single_functor() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("phi.json");
    fs::write(&f, r#"{"obj_map":{"e":"f","f":"e","a":"f"}}"#).unwrap();
    let (code, v) = json(&["promote", "catalog:e3", "--functor", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["obstructed"], 1);
    let first = &v["result"]["outcomes"][0]["obstructions"][0];
    assert_eq!(first["source"], "e");
    assert_eq!(first["target_class_size"], 1);

    fs::write(&f, r#"{"obj_map":{"x":"x","y":"x"}}"#).unwrap();
    let (code, v) = json(&["promote", "catalog:isopair", "--functor", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["promoted"], 1);
    assert_eq!(v["witnesses"]["promotions"][0]["outcome"], "promoted");

    fs::write(&f, r#"{"obj_map":{"a":"a","b":"a","c":"a","d":"a"}}"#).unwrap();
    assert_eq!(json(&["promote", "catalog:p4", "--functor", f.to_str().unwrap()]).0, 2);
}

#[test]
fn concrete_report() {
    let (code, v) = json(&["concrete", "catalog:finset:1,2,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["star_condition"], true);
    assert_eq!(v["result"]["representing_objects"], serde_json::json!(["s0"]));
    assert_eq!(v["result"]["transported"], v["result"]["autoequivalences"]);
}

#[test]
fn suite_fast_passes() {
    let out = fincat(&["suite", "fast"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 11, "{text}");
}

#[test]
fn suite_reports_are_identical_across_workers() {
    let runs: Vec<Value> = ["1", "3", "1"]
        .iter()
        .map(|w| without_timing(json(&["suite", "exhaustive-3", "--workers", w]).1))
        .collect();
    assert_eq!(runs[0]["result"]["passed"], true);
    assert_eq!(runs[0]["result"]["corpus_size"], 29);
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0], runs[2]);
}
