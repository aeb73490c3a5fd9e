use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const SL2: &str = r#"{"dim": 3, "brackets": [
    {"i": 0, "j": 1, "v": [0, 0, 2]},
    {"i": 0, "j": 2, "v": [0, -2, 0]},
    {"i": 1, "j": 2, "v": [-2, 0, 0]}]}"#;
const HEIS3: &str = r#"{"dim": 3, "brackets": [{"i": 0, "j": 1, "v": [0, 0, 1]}]}"#;
const IDENTITY: &str = r#"{"dim": 3, "g": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}"#;

fn lieharm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lieharm")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Self(TempDir::new().expect("tempdir"))
    }

    fn put(&self, name: &str, body: &str) -> PathBuf {
        let p = self.0.path().join(name);
        fs::write(&p, body).expect("write");
        p
    }
}

fn s(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).expect("json output")
}

#[test]
fn analyze_sl2_harmonic_metric() {
    let f = Files::new();
    let a = f.put("a.json", SL2);
    let g = f.put("g.json", r#"{"dim": 3, "g": [[3, 0, 0], [0, 2, 0], [0, 0, 1]]}"#);
    let o = lieharm(&["analyze", s(&a), s(&g), "--json"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("\"harmonic_dim\": 2"));
    assert_eq!(json(&o)["harmonic_dim"], 2);
}

#[test]
fn analyze_heis3_has_no_harmonic_spinors() {
    let f = Files::new();
    let a = f.put("a.json", HEIS3);
    let g = f.put("g.json", IDENTITY);
    let o = lieharm(&["analyze", s(&a), s(&g)]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["harmonic_dim"], 0);
    assert_eq!(v["dim"], 3);
}

#[test]
fn analyze_text_and_opposite_irrep() {
    let f = Files::new();
    let a = f.put("a.json", SL2);
    let g = f.put("g.json", r#"{"dim": 3, "g": [[3, 0, 0], [0, 2, 0], [0, 0, 1]]}"#);
    let o = lieharm(&["analyze", s(&a), s(&g), "--text", "--irrep", "opposite", "--seed", "3"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("# seed=3"));
    assert!(out.contains("harmonic_dim: 2"));
}

#[test]
fn analyze_malformed_json_is_a_parse_error() {
    let f = Files::new();
    let a = f.put("a.json", "{\"dim\": 3, \"brackets\": [");
    let g = f.put("g.json", IDENTITY);
    let o = lieharm(&["analyze", s(&a), s(&g)]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
}

#[test]
fn analyze_missing_file_is_a_usage_error() {
    let o = lieharm(&["analyze", "/nonexistent/a.json", "/nonexistent/g.json"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn analyze_jacobi_violation() {
    let f = Files::new();
    let a = f.put(
        "a.json",
        r#"{"dim": 3, "brackets": [
            {"i": 0, "j": 1, "v": [0, 0, 1]},
            {"i": 0, "j": 2, "v": [0, 0, 1]},
            {"i": 1, "j": 2, "v": [1, 0, 0]}]}"#,
    );
    let g = f.put("g.json", IDENTITY);
    let o = lieharm(&["analyze", s(&a), s(&g)]);
    assert_eq!(code(&o), 3);
    let err = String::from_utf8_lossy(&o.stderr).to_lowercase();
    assert!(err.contains("jacobi"), "{err}");
}

#[test]
fn analyze_degenerate_metric() {
    let f = Files::new();
    let a = f.put("a.json", SL2);
    let g = f.put("g.json", r#"{"dim": 3, "g": [[1, 0, 0], [0, 1, 0], [0, 0, 0]]}"#);
    let o = lieharm(&["analyze", s(&a), s(&g)]);
    assert_eq!(code(&o), 4);
}

#[test]
fn reproduce_riemannian_passes() {
    let o = lieharm(&["reproduce", "--group", "riemannian", "--density", "5"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["density"], 5);
    assert_eq!(v["seed"], 0);
    assert!(!v["rows"].as_array().expect("rows").is_empty());
}

#[test]
fn reproduce_two_dim_text() {
    let o = lieharm(&["reproduce", "--group", "two_dim", "--text", "--seed", "7"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("g₀ kernel 1"), "{out}");
    assert!(out.contains("seed=7"));
}

#[test]
fn reproduce_unknown_group() {
    let o = lieharm(&["reproduce", "--group", "hyperbolic"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn reproduce_is_deterministic() {
    let a = lieharm(&["reproduce", "--group", "appendix", "--density", "3"]);
    let b = lieharm(&["reproduce", "--group", "appendix", "--density", "3"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn catalog_lists_and_evaluates() {
    let o = lieharm(&["catalog", "--group", "two_dim"]);
    assert_eq!(code(&o), 0);
    let ids: Vec<String> =
        json(&o).as_array().expect("list").iter().map(|f| f["id"].as_str().unwrap().to_string()).collect();
    assert_eq!(ids, ["g+(t)", "g-(t)", "g0"]);

    let o = lieharm(&["catalog", "--family", "sl2 g(lambda,mu,nu)", "--at", "3,2,1"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["kernel_dim"], 2);
    assert_eq!(v["pass"], true);

    let o = lieharm(&["catalog", "--family", "sl2 g(lambda,mu,nu)", "--at", "1,1,2"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("mu >= nu"));
}

fn csv_rows(out: &str) -> Vec<Vec<String>> {
    csv::Reader::from_reader(out.as_bytes())
        .records()
        .map(|r| r.expect("record").iter().map(String::from).collect())
        .collect()
}

#[test]
fn sweep_sl2_crosses_the_harmonic_locus_once() {
    let f = Files::new();
    let spec = f.put("spec.json", r#"{"family": "sl2 g(lambda,mu,nu)", "fixed": {"mu": 2, "nu": 1}}"#);
    let o = lieharm(&["sweep", s(&spec), "--param", "lambda=2.5:3.5:0.25"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("lambda,kernel_dim,ricci_signature,scalar\n"));
    assert!(!out.contains('\r'));
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 5);
    for r in &rows {
        let harmonic = r[0] == "3";
        assert_eq!(r[1], if harmonic { "2" } else { "0" }, "{r:?}");
        assert_eq!(r[2], "(1,2,0)");
    }
}

#[test]
fn sweep_su_lorentzian_crossing() {
    let f = Files::new();
    let spec = f.put("spec.json", r#"{"family": "su", "fixed": {"mu1": 2, "mu2": 1}}"#);
    let o = lieharm(&["sweep", s(&spec), "--param", "mu3=2:4:0.5"]);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 5);
    for r in &rows {
        assert_eq!(r[1], if r[0] == "3" { "2" } else { "0" }, "{r:?}");
    }
}

#[test]
fn sweep_metric_template_with_two_ranges() {
    let f = Files::new();
    let spec = f.put("spec.json", r#"{"metric": [["a", 0, 0], [0, "b", 0], [0, 0, 1]]}"#);
    let alg = f.put("a.json", SL2);
    let o = lieharm(&["sweep", s(&spec), "--algebra", s(&alg), "--param", "a=2:3:1", "--param", "b=1:2:1"]);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&stdout(&o));
    let pts: Vec<(String, String, String)> =
        rows.iter().map(|r| (r[0].clone(), r[1].clone(), r[2].clone())).collect();
    assert_eq!(
        pts,
        [
            ("2".into(), "1".into(), "2".into()),
            ("2".into(), "2".into(), "0".into()),
            ("3".into(), "1".into(), "0".into()),
            ("3".into(), "2".into(), "2".into()),
        ]
    );
}

#[test]
fn sweep_empty_range_prints_header_only() {
    let f = Files::new();
    let spec = f.put("spec.json", r#"{"family": "sl2 g(lambda,mu,nu)", "fixed": {"mu": 2, "nu": 1}}"#);
    let o = lieharm(&["sweep", s(&spec), "--param", "lambda=3:2:0.25"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "lambda,kernel_dim,ricci_signature,scalar\n");
}

#[test]
fn sweep_out_of_range_names_the_constraint() {
    let f = Files::new();
    let spec = f.put("spec.json", r#"{"family": "sl2 g(lambda,mu,nu)", "fixed": {"mu": 2, "nu": 1}}"#);
    let o = lieharm(&["sweep", s(&spec), "--param", "lambda=-1:1:0.5"]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("lambda > 0"));
}

#[test]
fn sweep_rejects_unknown_parameter() {
    let f = Files::new();
    let spec = f.put("spec.json", r#"{"family": "sl2 g(lambda,mu,nu)", "fixed": {"mu": 2, "nu": 1}}"#);
    let o = lieharm(&["sweep", s(&spec), "--param", "kappa=1:2:1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn sweep_is_deterministic_and_writes_files() {
    let f = Files::new();
    let spec = f.put("spec.json", r#"{"family": "sl2 g(lambda,mu,nu)", "fixed": {"nu": 1}}"#);
    let out1 = f.0.path().join("one.csv");
    let out2 = f.0.path().join("two.csv");
    for out in [&out1, &out2] {
        let o = lieharm(&["sweep", s(&spec), "--param", "lambda=1:4:0.5", "--param", "mu=1:3:1", "-o", s(out)]);
        assert_eq!(code(&o), 0);
    }
    let a = fs::read(&out1).expect("read");
    assert!(!a.is_empty());
    assert_eq!(a, fs::read(&out2).expect("read"));
}

#[test]
fn verify_equivalence_accepts_and_rejects() {
    let f = Files::new();
    let a = f.put("a.json", HEIS3);
    let g1 = f.put("g1.json", IDENTITY);
    let g2 = f.put("g2.json", r#"{"dim": 3, "g": [[4, 0, 0], [0, 1, 0], [0, 0, 4]]}"#);
    let good = f.put("A.json", "[[2, 0, 0], [0, 1, 0], [0, 0, 2]]");
    let o = lieharm(&["verify-equivalence", s(&a), s(&g1), s(&g2), s(&good)]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["equivalent"], true);

    let bad = f.put("B.json", r#"{"dim": 3, "a": [[2, 0, 0], [0, 1, 0], [0, 0, 1]]}"#);
    let g3 = f.put("g3.json", r#"{"dim": 3, "g": [[4, 0, 0], [0, 1, 0], [0, 0, 1]]}"#);
    let o = lieharm(&["verify-equivalence", s(&a), s(&g1), s(&g3), s(&bad), "--text"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("equivalent: false"));
}
