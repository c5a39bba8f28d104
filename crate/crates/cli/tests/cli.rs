use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

const F1: &str = r#"{"ambient_dim":2,"rays":[[1,0],[1,1],[0,1],[-1,0],[0,-1]],"maximal_cones":[[0,1],[1,2],[2,3],[3,4],[4,0]]}"#;
const P1: &str = r#"{"ambient_dim":1,"rays":[[1],[-1]],"maximal_cones":[[0],[1]]}"#;

const FOURTEEN: &str = r#"{"ambient_dim":4,
 "rays":[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1],[0,-1,0,0],[0,0,-1,0],[0,0,0,-1],
         [0,1,1,1],[1,0,-1,1],[1,1,0,-1],[1,-1,1,0],[-1,0,1,-1],[-1,-1,0,1],[-1,1,-1,0]],
 "maximal_cones":[[0,8],[0,9],[0,10],[1,7],[1,9],[1,13],[2,7],[2,10],[2,11],
                  [3,7],[3,8],[3,12],[8,5],[9,6],[10,4],[4,13],[5,11],[6,12]]}"#;

struct Sandbox {
    dir: TempDir,
}

impl Sandbox {
    fn new() -> Self {
        Sandbox { dir: TempDir::new().unwrap() }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, contents).unwrap();
        path
    }
}

fn run(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ehrfan")).args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let doc = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), doc, stdout)
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn f1_count() {
    let s = Sandbox::new();
    let fan = s.file("f1.json", F1);
    let ones = s.file("ones.json", r#"{"values":[1,1,1,1,1]}"#);
    let (code, doc, _) = run(&["ehrhart", "eval", "--fan", p(&fan), "--pl", p(&ones)]);
    assert_eq!(code, 0);
    assert_eq!(doc, serde_json::json!({ "chi": 8 }));
    let (_, doc, _) = run(&["volume", "eval", "--fan", p(&fan), "--pl", p(&ones)]);
    assert_eq!(doc["volume"], 7);
    let (_, doc, _) = run(&["polytope", "count", "--fan", p(&fan), "--pl", p(&ones)]);
    assert_eq!(doc["count"], 8);
    let (_, doc, _) = run(&["polytope", "count", "--fan", p(&fan), "--pl", p(&ones), "--interior"]);
    assert_eq!(doc["count"], 1);
    let (_, doc, _) = run(&["polytope", "altsum", "--fan", p(&fan), "--pl", p(&ones)]);
    assert_eq!(doc["chi"], 8);
}

#[test]
fn fourteen_ray_fan_is_rejected() {
    let s = Sandbox::new();
    let fan = s.file("fan.json", FOURTEEN);
    let (code, doc, _) = run(&["ehrhart", "check", "--fan", p(&fan)]);
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["code"], "NOT_EHRHART");
    assert_eq!(doc["error"]["witness"]["residual"], serde_json::json!([-4, -2, -2, -2]));
    let (code, doc, _) = run(&["fan", "validate", "--fan", p(&fan)]);
    assert_eq!(code, 0);
    assert_eq!(doc["balanced"], true);
}

#[test]
fn matroid_commands() {
    let s = Sandbox::new();
    let m = s.file("u23.json", r#"{"type":"uniform","rank":2,"n":3}"#);
    let zero = s.file("zero.json", r#"{"values":[0,0,0]}"#);
    let (code, doc, _) = run(&["matroid", "chi", "--matroid", p(&m), "--pl", p(&zero)]);
    assert_eq!(code, 0);
    assert_eq!(doc, serde_json::json!({ "chi": 1 }));
    let (_, doc, _) = run(&["matroid", "bergman", "--matroid", p(&m)]);
    assert_eq!(doc["flats"], serde_json::json!([[0], [1], [2]]));
    let looped = s.file("loop.json", r#"{"type":"bases","ground_size":3,"bases":[[0,1]]}"#);
    let (code, doc, _) = run(&["matroid", "bergman", "--matroid", p(&looped)]);
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["code"], "HAS_LOOPS");
}

#[test]
fn pe_commands() {
    let s = Sandbox::new();
    let fan = s.file("p1.json", P1);
    let pe = s.file("pe.json", r#"{"terms":[{"c":1,"values":[1,0]},{"c":1,"values":[0,1]},{"c":-1,"values":[1,1]}]}"#);
    let (code, doc, _) = run(&["pe", "chi", "--fan", p(&fan), "--pe", p(&pe)]);
    assert_eq!(code, 0);
    assert_eq!(doc["chi"], 1);
    let (_, doc, _) = run(&["pe", "normalform", "--fan", p(&fan), "--pe", p(&pe)]);
    assert_eq!(doc, serde_json::json!({ "terms": [{ "c": 1, "values": [0, 0] }] }));
    let f = s.file("f.json", r#"{"values":[1,0]}"#);
    let g = s.file("g.json", r#"{"values":[0,1]}"#);
    let (_, doc, _) = run(&["pe", "verify-maxmin", "--fan", p(&fan), "--pl", p(&f), "--pl2", p(&g)]);
    assert_eq!(doc["holds"], true);

    let f1 = s.file("f1.json", F1);
    let bad = s.file("bad.json", r#"{"terms":[{"c":1,"values":[1,0,0,0,0]},{"c":1,"values":[0,1,0,0,0]}]}"#);
    let (code, doc, _) = run(&["pe", "normalform", "--fan", p(&f1), "--pe", p(&bad)]);
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["code"], "REFINEMENT_REQUIRED");
    assert_eq!(doc["error"]["witness"]["cone"], serde_json::json!([0, 1]));
}

#[test]
fn fan_commands() {
    let s = Sandbox::new();
    let square = s.file("sq.json", r#"{"ambient_dim":2,"rays":[[1,0],[0,1],[-1,0],[0,-1]],"maximal_cones":[[0,1],[1,2],[2,3],[3,0]]}"#);
    let (code, doc, _) = run(&["fan", "subdivide", "--fan", p(&square), "--cone", "0,1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["new_ray"], 4);
    assert_eq!(doc["fan"]["rays"][4], serde_json::json!([1, 1]));
    let (_, doc, _) = run(&["fan", "star", "--fan", p(&square), "--cone", "0"]);
    assert_eq!(doc["ray_lift"], serde_json::json!([1, 3]));
    let p1 = s.file("p1.json", P1);
    let (_, doc, _) = run(&["fan", "product", "--fan", p(&p1), "--fan", p(&p1)]);
    assert_eq!(doc["fan"]["rays"].as_array().unwrap().len(), 4);
    let (_, doc, _) = run(&["ehrhart", "poly", "--fan", p(&p1)]);
    assert_eq!(doc["degree"], 1);
}

#[test]
fn non_unimodular_and_choice_dependence() {
    let s = Sandbox::new();
    let torsion = s.file("t.json", r#"{"ambient_dim":2,"rays":[[1,0],[1,2]],"maximal_cones":[[0],[1]]}"#);
    let f = s.file("f.json", r#"{"values":[0,1]}"#);
    let (code, doc, _) = run(&["ehrhart", "eval", "--fan", p(&torsion), "--pl", p(&f)]);
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["code"], "NOT_EHRHART");
    let (code, _, _) = run(&["ehrhart", "eval", "--fan", p(&torsion), "--pl", p(&f), "--acknowledge-choice-dependence"]);
    assert_eq!(code, 0);
    let cone = s.file("c.json", r#"{"ambient_dim":2,"rays":[[1,0],[1,2]],"maximal_cones":[[0,1]]}"#);
    let (code, doc, _) = run(&["ehrhart", "check", "--fan", p(&cone)]);
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["code"], "NOT_UNIMODULAR");
    assert_eq!(doc["error"]["witness"]["smith_diagonal"], serde_json::json!([1, 2]));
}

#[test]
fn malformed_input_exits_two() {
    let s = Sandbox::new();
    let fan = s.file("f1.json", F1);
    let short = s.file("short.json", r#"{"values":[1]}"#);
    let junk = s.file("junk.json", "{not json");
    assert_eq!(run(&["ehrhart", "eval", "--fan", p(&fan), "--pl", p(&short)]).0, 2);
    assert_eq!(run(&["ehrhart", "eval", "--fan", p(&junk), "--pl", p(&short)]).0, 2);
    assert_eq!(run(&["ehrhart", "eval", "--fan", "/nonexistent.json"]).0, 2);
    assert_eq!(run(&["ehrhart", "frobnicate"]).0, 2);
}

#[test]
fn big_integers_round_trip_as_strings() {
    let s = Sandbox::new();
    let fan = s.file("p1.json", P1);
    let big = s.file("big.json", r#"{"values":["9223372036854775807","9223372036854775807"]}"#);
    let (code, doc, _) = run(&["ehrhart", "eval", "--fan", p(&fan), "--pl", p(&big)]);
    assert_eq!(code, 0);
    assert_eq!(doc["chi"], "18446744073709551615");
}

#[test]
fn output_is_deterministic() {
    let s = Sandbox::new();
    let fan = s.file("f1.json", F1);
    let a = run(&["ehrhart", "poly", "--fan", p(&fan)]).2;
    let b = run(&["ehrhart", "poly", "--fan", p(&fan)]).2;
    assert_eq!(a, b);
    assert!(a.find("\"degree\"").unwrap() < a.find("\"polynomial\"").unwrap());
}
