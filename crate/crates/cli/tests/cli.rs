use std::io::Write;
use std::process::{Command, Output};

use posmap_core::choi::HermMap;
use posmap_core::numkernel::{parse_poly, parse_rational};
use tempfile::NamedTempFile;

fn posmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_posmap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn map_file(phi: &HermMap) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(phi.to_json().as_bytes()).unwrap();
    f
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

#[test]
fn tarski_example() {
    let o = posmap(&["sturm", "tarski", "x^3 - x", "x"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn sturm_exit_codes() {
    let yes = posmap(&["sturm", "exists-pos", "x", "1 - x"]);
    assert_eq!((yes.status.code(), stdout(&yes).as_str()), (Some(0), "true\n"));
    let no = posmap(&["sturm", "exists-pos", "x", "-x"]);
    assert_eq!((no.status.code(), stdout(&no).as_str()), (Some(1), "false\n"));
    let count = posmap(&["sturm", "count", "x^3 - x", "x + 2", "1"]);
    assert_eq!(stdout(&count), "3\n");
    let neg = posmap(&["nonneg", "-x1^2"]);
    assert_eq!(neg.status.code(), Some(1));
}

#[test]
fn sum_of_squares_is_nonnegative() {
    let o = posmap(&["nonneg", "x1^2 + x2^2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: yes"));
}

#[test]
fn negative_form_has_witness() {
    let o = posmap(&["--seed", "3", "nonneg", "x1^2 - 4x1x2"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("verdict: no"));
    assert!(text.contains("seed: 3"));
}

#[test]
fn usage_errors() {
    assert_eq!(posmap(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(posmap(&["sturm", "tarski", "x^^2", "x"]).status.code(), Some(64));
    assert_eq!(posmap(&["decide", "/nonexistent/map.json"]).status.code(), Some(64));
    assert_eq!(posmap(&["--route", "sideways", "poly", "m.json"]).status.code(), Some(64));
    assert_eq!(posmap(&["--help"]).status.code(), Some(0));
}

#[test]
fn malformed_map_is_a_parse_error() {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(b"{\"n\": 1, \"terms\": [{\"alpha\": \"0.5\", \"matrix\": [[{\"re\": \"1\", \"im\": \"0\"}]]}]}")
        .unwrap();
    let o = posmap(&["poly", path(&f)]);
    assert_eq!(o.status.code(), Some(64));
    assert!(!o.stderr.is_empty());
}

#[test]
fn poly_routes_agree_bytewise() {
    for phi in [HermMap::identity(2), HermMap::transpose2(), HermMap::negation(1)] {
        let f = map_file(&phi);
        let kraus = posmap(&["--route", "kraus", "poly", path(&f)]);
        let choi = posmap(&["--route", "choi", "poly", path(&f)]);
        let dsum = posmap(&["--route", "doublesum", "poly", path(&f)]);
        assert_eq!(kraus.status.code(), Some(0));
        assert_eq!(kraus.stdout, choi.stdout);
        assert_eq!(kraus.stdout, dsum.stdout);
    }
}

#[test]
fn poly_output_reparses() {
    let phi = HermMap::transpose2();
    let f = map_file(&phi);
    let text = stdout(&posmap(&["poly", path(&f)]));
    let p = posmap_core::choi::positivity_poly(&phi, posmap_core::choi::Route::Kraus).unwrap();
    let reparsed = parse_poly(text.trim(), Some(8)).unwrap();
    assert_eq!(&reparsed, p.poly());
}

#[test]
fn negation_map_decision() {
    let f = map_file(&HermMap::negation(1));
    let o = posmap(&["decide", path(&f)]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("verdict: no"));
    assert!(text.lines().any(|l| l.starts_with("x = (")));
    assert!(text.lines().any(|l| l.starts_with("y = (")));
    let value = text.lines().find_map(|l| l.strip_prefix("witness value: ")).unwrap();
    assert!(parse_rational(value).unwrap() < posmap_core::numkernel::int(0));
}

#[test]
fn identity_map_capped() {
    let f = map_file(&HermMap::identity(1));
    let o = posmap(&["--samples", "2000", "decide", path(&f)]);
    assert_eq!(o.status.code(), Some(2));
    let text = stdout(&o);
    assert!(text.contains("verdict: unknown-capped"));
    assert!(text.contains("mode: capped"));
    assert!(text.contains("samples: 2000"));
}

#[test]
fn transpose_falsifier_finds_nothing() {
    let f = map_file(&HermMap::transpose2());
    let o = posmap(&["--samples", "3000", "falsify", path(&f)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("no negative value in 3000 samples"));
}

#[test]
fn choi_entries_listed() {
    let f = map_file(&HermMap::identity(1));
    let o = posmap(&["choi", path(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "T(1,1)(1,1) = 1\n");
}

#[test]
fn structured_output_is_json() {
    let o = posmap(&["--format", "structured", "sturm", "tarski", "x^2 - 1", "x"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["tarski"], 0);
    let f = map_file(&HermMap::negation(1));
    let o = posmap(&["--format", "structured", "decide", path(&f)]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "no");
    assert_eq!(v["x"].as_array().unwrap().len(), 1);
}

#[test]
fn reruns_are_byte_identical() {
    let f = map_file(&HermMap::negation(2));
    for args in [
        vec!["--seed", "11", "decide", path(&f)],
        vec!["--seed", "11", "--format", "structured", "decide", path(&f)],
        vec!["--seed", "5", "falsify", "x1^2 - 3x1x2 + x2^2"],
        vec!["choi", path(&f)],
    ] {
        let a = posmap(&args);
        let b = posmap(&args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.status.code(), b.status.code());
    }
}
