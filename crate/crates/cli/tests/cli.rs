use fibcat::fincat::split_tuple;
use fibcat::format::{load, Entity};
use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn fibcat(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fibcat")).args(args).current_dir(dir).env_remove("FIBCAT_VERTEX_BOUND").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

const TERMINAL: &str = r#"{
  "category": {
    "objects": ["*"],
    "morphisms": {"1": ["*", "*"]},
    "identity": {"*": "1"},
    "compose": {"(1|1)": "1"}
  }
}"#;

#[test]
fn terminal_category_checks() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("t.json"), TERMINAL).unwrap();
    let o = fibcat(&["check", "t.json"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("PASS"));
    assert_eq!(code(&fibcat(&["check", "t.json", "--kind", "category"], dir.path())), 0);
    assert_eq!(code(&fibcat(&["check", "t.json", "--kind", "fibration"], dir.path())), 2);
}

#[test]
fn broken_composition_is_a_law_failure() {
    let dir = tempfile::tempdir().unwrap();
    let two = TERMINAL.replace(r#""1": ["*", "*"]}"#, r#""1": ["*", "*"], "g": ["*", "*"]}"#).replace(r#""(1|1)": "1""#, r#""(1|1)": "g", "(1|g)": "g", "(g|1)": "1", "(g|g)": "g""#);
    std::fs::write(dir.path().join("c.json"), two).unwrap();
    let o = fibcat(&["--format", "records", "check", "c.json"], dir.path());
    assert_eq!(code(&o), 1);
    let out = String::from_utf8_lossy(&o.stdout);
    let first: Value = serde_json::from_str(out.lines().next().unwrap()).unwrap();
    assert_eq!(first["pass"], false);
    assert!(out.lines().skip(1).any(|l| serde_json::from_str::<Value>(l).unwrap().get("witness").is_some()));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.json"), "{\n\"category\": 3}").unwrap();
    let o = fibcat(&["check", "bad.json"], dir.path());
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(code(&fibcat(&["check", "missing.json"], dir.path())), 2);
    let unknown = TERMINAL.replace(r#"{"*": "1"}"#, r#"{"*": "2"}"#);
    std::fs::write(dir.path().join("u.json"), unknown).unwrap();
    assert_eq!(code(&fibcat(&["check", "u.json"], dir.path())), 2);
}

#[test]
fn graph_total_has_nineteen_objects() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&fibcat(&["zoo", "graphs", "--vertex-bound", "2", "-o", "g.json"], dir.path())), 0);
    let o = fibcat(&["mongroth", "g.json", "-o", "t.json"], dir.path());
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(dir.path().join("t.json")).unwrap();
    let Entity::MonoidalFibration(m) = load(&text).unwrap() else { panic!("wrong kind") };
    assert_eq!(m.carrier.total.n_objs(), 19);
    assert_eq!(code(&fibcat(&["check", "t.json"], dir.path())), 0);
}

#[test]
fn bounds_default_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_fibcat")).args(["zoo", "graphs", "-o", "g.json"]).env("FIBCAT_VERTEX_BOUND", "1").current_dir(dir.path()).output().unwrap();
    assert_eq!(code(&o), 0);
    fibcat(&["mongroth", "g.json", "-o", "t.json"], dir.path());
    let Entity::MonoidalFibration(m) = load(&std::fs::read_to_string(dir.path().join("t.json")).unwrap()).unwrap() else { panic!() };
    assert_eq!(m.carrier.total.n_objs(), 3);
}

#[test]
fn transfers_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for fixture in ["slices-square", "random"] {
        assert_eq!(code(&fibcat(&["zoo", fixture, "--pseudo", "--seed", "7", "-o", "g.json"], dir.path())), 0);
        assert_eq!(code(&fibcat(&["transfer", "global-to-fibrewise", "g.json", "-o", "f.json"], dir.path())), 0);
        assert_eq!(code(&fibcat(&["check", "f.json", "--kind", "fibrewise"], dir.path())), 0);
        assert_eq!(code(&fibcat(&["transfer", "fibrewise-to-global", "f.json", "-o", "h.json"], dir.path())), 0);
        assert_eq!(code(&fibcat(&["roundtrip", "f.json"], dir.path())), 0);
        assert_eq!(code(&fibcat(&["roundtrip", "h.json"], dir.path())), 0);
    }
    assert_eq!(code(&fibcat(&["transfer", "fibrewise-to-global", "g.json"], dir.path())), 2);
}

#[test]
fn outputs_reload_bit_exactly() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&fibcat(&["zoo", "slices-arrow", "-o", "s.json"], dir.path())), 0);
    assert_eq!(code(&fibcat(&["groth", "s.json", "-o", "p.json"], dir.path())), 0);
    let text = std::fs::read_to_string(dir.path().join("p.json")).unwrap();
    assert_eq!(fibcat::format::dump(&load(&text).unwrap()), text);
    let stdout = fibcat(&["groth", "s.json"], dir.path()).stdout;
    assert_eq!(String::from_utf8(stdout).unwrap(), text);
}

#[test]
fn mutated_fibration_fails_its_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    fibcat(&["zoo", "slices-arrow", "-o", "s.json"], dir.path());
    fibcat(&["groth", "s.json", "-o", "p.json"], dir.path());
    assert_eq!(code(&fibcat(&["roundtrip", "p.json"], dir.path())), 0);
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("p.json")).unwrap()).unwrap();
    let p = &mut doc["fibration"];
    let base_ids: Vec<String> = p["base"]["identity"].as_object().unwrap().values().map(|v| v.as_str().unwrap().to_string()).collect();
    let total_ids = p["total"]["identity"].clone();
    let (key, start) = p["cleavage"]
        .as_object()
        .unwrap()
        .keys()
        .find_map(|k| {
            let parts = split_tuple(k)?;
            (!base_ids.contains(&parts[0])).then(|| (k.clone(), parts[1].clone()))
        })
        .unwrap();
    p["cleavage"][&key] = total_ids[&start].clone();
    std::fs::write(dir.path().join("bad.json"), serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    let o = fibcat(&["--format", "records", "roundtrip", "bad.json"], dir.path());
    assert_eq!(code(&o), 1);
    let out = String::from_utf8_lossy(&o.stdout);
    assert!(out.lines().any(|l| l.contains("\"witness\"")), "{out}");
}
