use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use colorlie_core::algebra::Kind;
use colorlie_core::constructions::mat_associative;
use colorlie_core::factor::Bicharacter;
use colorlie_core::grading::AbelianGroup;
use colorlie_core::spec_file::{AlgebraSpecFile, AssociativeSpecFile};
use tempfile::TempDir;

fn colorlie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_colorlie")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn build(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(format!("{name}.json"));
    let mut all = vec!["build"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["-o", path.to_str().unwrap()]);
    let o = colorlie(&all);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn mat3_spec_has_nine_blocks_and_a_rep() {
    let dir = TempDir::new().unwrap();
    let p = build(dir.path(), "mat3", &["mat3", "--sizes", "1,1,1"]);
    let file = AlgebraSpecFile::from_json(&fs::read_to_string(&p).unwrap()).unwrap();
    let labels: Vec<_> = file.basis.iter().map(|b| b.label.as_str()).collect();
    assert_eq!(labels.len(), 9);
    for letter in ["X", "Y", "Z"] {
        assert_eq!(labels.iter().filter(|l| l.starts_with(letter)).count(), 3);
    }
    assert_eq!(file.representation.as_ref().unwrap().dimension, 3);
}

#[test]
fn iso3_verifies_with_four_jacobi_identities() {
    let dir = TempDir::new().unwrap();
    let p = build(dir.path(), "iso3", &["iso3", "--dim", "4"]);
    assert_eq!(AlgebraSpecFile::from_json(&fs::read_to_string(&p).unwrap()).unwrap().basis.len(), 14);
    let report = dir.path().join("r.json");
    let o = colorlie(&["verify", p.to_str().unwrap(), "--report", report.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(report).unwrap()).unwrap();
    let jacobi = doc["sections"].as_array().unwrap().iter().find(|s| s["section"] == "jacobi").unwrap();
    assert_eq!(jacobi["identities"].as_array().unwrap().len(), 4);
    assert_eq!(doc["status"], "pass");
}

#[test]
fn negated_constant_is_reported() {
    let dir = TempDir::new().unwrap();
    let p = build(dir.path(), "mat3", &["mat3", "--sizes", "1,1,1"]);
    let mut v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&p).unwrap()).unwrap();
    let num = &mut v["f_ary"][0]["value"][0]["scalar"][0]["num"];
    *num = (-num.as_i64().unwrap()).into();
    fs::write(&p, serde_json::to_string(&v).unwrap()).unwrap();
    let o = colorlie(&["verify", p.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("counterexample for"));
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("nonsense.json");
    fs::write(&bad, "{ not json").unwrap();
    assert_eq!(code(&colorlie(&["verify", bad.to_str().unwrap()])), 2);
    assert_eq!(code(&colorlie(&["verify", dir.path().join("missing.json").to_str().unwrap()])), 2);
    fs::write(&bad, "{\"version\": 99}").unwrap();
    assert_eq!(code(&colorlie(&["verify", bad.to_str().unwrap()])), 2);
    // degree incompatible constant
    let p = build(dir.path(), "gl", &["color_gl", "--sizes", "1,1", "--group", "2", "--factor-order", "2", "--exponents", "1"]);
    let mut v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&p).unwrap()).unwrap();
    v["basis"][0]["degree"] = serde_json::json!([1]);
    fs::write(&p, serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(code(&colorlie(&["verify", p.to_str().unwrap()])), 2);
}

#[test]
fn invalid_parameters_exit_2() {
    assert_eq!(code(&colorlie(&["build", "mat3", "--sizes", "1,1"])), 2);
    assert_eq!(code(&colorlie(&["build", "iso3"])), 2);
    assert_eq!(code(&colorlie(&["build", "color_gl", "--sizes", "1", "--group", "3", "--exponents", "1"])), 2);
    assert_eq!(code(&colorlie(&["build", "nosuch"])), 2);
}

#[test]
fn realize_modes() {
    let dir = TempDir::new().unwrap();
    let mat = build(dir.path(), "mat3", &["mat3", "--sizes", "1,1,1"]);
    let o = colorlie(&["realize", mat.to_str().unwrap(), "--mode", "quon"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("X1_1 -> a0^1 a0_1"));

    let gl = build(dir.path(), "gl", &["color_gl", "--sizes", "1,1", "--group", "2", "--factor-order", "2", "--exponents", "1"]);
    for eps in ["+1", "-1"] {
        assert_eq!(code(&colorlie(&["realize", gl.to_str().unwrap(), "--mode", "oscillator", "--epsilon", eps])), 0);
    }
    assert_eq!(code(&colorlie(&["realize", gl.to_str().unwrap(), "--mode", "oscillator", "--epsilon", "2"])), 2);

    let iso = build(dir.path(), "iso", &["iso3", "--dim", "2"]);
    assert_eq!(code(&colorlie(&["realize", iso.to_str().unwrap(), "--mode", "quon"])), 2);
    assert_eq!(code(&colorlie(&["realize", iso.to_str().unwrap(), "--mode", "lambda", "--multiplicity", "1"])), 2);

    let tc = build(dir.path(), "tc", &["tensor_clifford", "--sizes", "1"]);
    assert_eq!(code(&colorlie(&["realize", tc.to_str().unwrap(), "--mode", "lambda"])), 0);
}

#[test]
fn from_associative_and_decolor() {
    let dir = TempDir::new().unwrap();
    let g = AbelianGroup::trivial();
    let assoc = AssociativeSpecFile::from_associative(Kind::LieOrderF, &Bicharacter::trivial(g), &mat_associative(1, 1, 1).unwrap());
    let input = dir.path().join("assoc.json");
    fs::write(&input, assoc.to_json()).unwrap();
    let env = build(dir.path(), "env", &["from_associative", "--input", input.to_str().unwrap()]);
    let mat = build(dir.path(), "mat", &["mat3", "--sizes", "1,1,1"]);
    let strip = |p: &Path| {
        let mut f = AlgebraSpecFile::from_json(&fs::read_to_string(p).unwrap()).unwrap();
        f.representation = None;
        f
    };
    assert_eq!(strip(&env), strip(&mat));

    let tc = build(dir.path(), "tc", &["tensor_clifford", "--sizes", "1"]);
    let dc = build(dir.path(), "dc", &["decolor", "--input", tc.to_str().unwrap()]);
    let file = AlgebraSpecFile::from_json(&fs::read_to_string(&dc).unwrap()).unwrap();
    assert!(file.factor().unwrap().is_trivial());
    assert!(file.multiplier.is_some());
    assert_eq!(code(&colorlie(&["verify", dc.to_str().unwrap()])), 0);
}

#[test]
fn sampled_reports_record_the_seed() {
    let dir = TempDir::new().unwrap();
    let p = build(dir.path(), "mat3", &["mat3", "--sizes", "2,2,2"]);
    let o = colorlie(&["verify", p.to_str().unwrap(), "--checks", "jacobi", "--budget", "500", "--json"]);
    assert_eq!(code(&o), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(doc["sections"][0]["sample_seed"].is_u64());
    assert_eq!(doc["budget"], 500);
}

#[test]
fn build_save_load_save_is_stable() {
    let dir = TempDir::new().unwrap();
    for (name, args) in [
        ("gl", &["color_gl", "--sizes", "2,1", "--group", "2", "--factor-order", "2", "--exponents", "1"][..]),
        ("cl", &["clifford", "--n", "3", "--p", "2"]),
        ("c3", &["color3_family", "--sizes", "1,1"]),
        ("ad", &["adjoint3", "--sizes", "2"]),
    ] {
        let p = build(dir.path(), name, args);
        let text = fs::read_to_string(&p).unwrap();
        let file = AlgebraSpecFile::from_json(&text).unwrap();
        let a = file.to_algebra().unwrap();
        let mut again = AlgebraSpecFile::from_algebra(&a);
        if let Some(r) = file.representation(&a).unwrap() {
            again = again.with_representation(&a, &r).unwrap();
        }
        assert_eq!(again.to_json(), text, "{name}");
    }
}
