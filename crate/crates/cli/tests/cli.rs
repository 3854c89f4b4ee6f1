use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use sgq_core::json::{self, RingCache};
use sgq_core::smoothness::{Presentation, RationalPoint};
use sgq_core::{scalar, SuperElement, SuperMatrix, SuperRingSpec, SuperShape};
use tempfile::TempDir;

fn sgq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sgq")).args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

/// `[[1, t1], [t2, 1]]` over Λ[t1, t2].
fn example_matrix() -> SuperMatrix {
    let r = SuperRingSpec::grassmann(2).unwrap();
    let t = |i: usize| SuperElement::var(&r, &format!("t{i}")).unwrap();
    let one = SuperElement::one(&r);
    SuperMatrix::validate(SuperShape::square(1, 1), &r, vec![vec![one.clone(), t(1)], vec![t(2), one]]).unwrap()
}

fn matrix_file(dir: &TempDir, name: &str, m: &SuperMatrix) -> PathBuf {
    write(dir, name, &json::to_string(&json::encode_matrix(m)))
}

fn decode_matrix(v: &Value) -> SuperMatrix {
    json::decode_matrix(&serde_json::from_value(v.clone()).unwrap(), &mut RingCache::default()).unwrap()
}

fn decode_element(v: &Value) -> SuperElement {
    json::decode_element(&serde_json::from_value(v.clone()).unwrap(), &mut RingCache::default()).unwrap()
}

#[test]
fn factor_example() {
    let dir = TempDir::new().unwrap();
    let g = example_matrix();
    let input = matrix_file(&dir, "g.json", &g);
    let out = dir.path().join("out.json");
    let o = sgq(&["factor", "--in", s(&input), "--out", s(&out), "--profile", "1,1,1,0"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = read_json(&out);
    let r = g.ring().clone();
    let t = |i: usize| SuperElement::var(&r, &format!("t{i}")).unwrap();
    assert_eq!(decode_matrix(&doc["n"]["xi"]).get(0, 0), &t(2));
    let p = decode_matrix(&doc["p"]);
    let one = SuperElement::one(&r);
    let expected = SuperMatrix::validate(
        SuperShape::square(1, 1),
        &r,
        vec![vec![one.clone(), t(1)], vec![SuperElement::zero(&r), &one - &(&t(2) * &t(1))]],
    )
    .unwrap();
    assert_eq!(p, expected);
}

#[test]
fn ber_of_identity_is_one() {
    let dir = TempDir::new().unwrap();
    let r = SuperRingSpec::grassmann(3).unwrap();
    let input = matrix_file(&dir, "id.json", &SuperMatrix::identity(&r, 2, 2));
    let o = sgq(&["ber", "--in", s(&input)]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(decode_element(&doc["berezinian"]).is_one());
}

#[test]
fn malformed_json_exits_two() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "bad.json", "{\"shape\": ");
    let out = dir.path().join("out.json");
    let o = sgq(&["ber", "--in", s(&input), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    assert!(!out.exists());

    let o = sgq(&["factor", "--in", s(&input), "--profile", "1,1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = sgq(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one_with_a_document() {
    let dir = TempDir::new().unwrap();
    let r = SuperRingSpec::grassmann(2).unwrap();
    let singular = SuperMatrix::zeros(&r, SuperShape::square(1, 1));
    let input = matrix_file(&dir, "zero.json", &singular);
    let out = dir.path().join("out.json");
    let o = sgq(&["minv", "--in", s(&input), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(read_json(&out)["error"]["kind"], "NotInvertible");

    // An odd generator in an even position.
    let mut doc = serde_json::to_value(json::encode_matrix(&example_matrix())).unwrap();
    doc["entries"][0][0] = doc["entries"][0][1].clone();
    let input = write(&dir, "pattern.json", &doc.to_string());
    let o = sgq(&["ber", "--in", s(&input), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(read_json(&out)["error"]["kind"], "ParityPatternViolation");

    // Identity is invertible but g11 = 0 after swapping the even rows.
    let swap = SuperMatrix::validate(
        SuperShape::square(2, 0),
        &r,
        vec![
            vec![SuperElement::zero(&r), SuperElement::one(&r)],
            vec![SuperElement::one(&r), SuperElement::zero(&r)],
        ],
    )
    .unwrap();
    let input = matrix_file(&dir, "swap.json", &swap);
    let o = sgq(&["factor", "--in", s(&input), "--profile", "2,0,1,0", "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(read_json(&out)["error"]["kind"], "NotInBigCell");
}

#[test]
fn charts_orbits_and_cosets() {
    let dir = TempDir::new().unwrap();
    let g = example_matrix();
    let input = matrix_file(&dir, "g.json", &g);
    let point = dir.path().join("point.json");
    assert_eq!(sgq(&["orbit", "--in", s(&input), "--profile", "1,1,1,0", "--out", s(&point)]).status.code(), Some(0));
    let point_doc = read_json(&point)["point"].clone();
    let point = write(&dir, "p.json", &point_doc.to_string());

    let down = dir.path().join("down.json");
    assert_eq!(sgq(&["chart-down", "--in", s(&point), "--out", s(&down)]).status.code(), Some(0));
    let n_doc = read_json(&down)["n"].clone();
    let n_file = write(&dir, "n.json", &n_doc.to_string());

    let up = dir.path().join("up.json");
    assert_eq!(sgq(&["chart-up", "--in", s(&n_file), "--profile", "1,1,1,0", "--out", s(&up)]).status.code(), Some(0));
    // The orbit point of g is framed by its first column, which is already normalized.
    assert_eq!(read_json(&up)["point"], point_doc);

    let o = sgq(&["coset-eq", "--in", s(&input), "--in2", s(&input), "--profile", "1,1,1,0"]);
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["equal"], true);
    let id = matrix_file(&dir, "id.json", &SuperMatrix::identity(g.ring(), 1, 1));
    let o = sgq(&["coset-eq", "--in", s(&input), "--in2", s(&id), "--profile", "1,1,1,0"]);
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["equal"], false);
}

#[test]
fn smooth_command() {
    let dir = TempDir::new().unwrap();
    let r = SuperRingSpec::new(["x"], ["a", "b"]).unwrap();
    let el = |n: &str| SuperElement::var(&r, n).unwrap();
    let f = &(&el("x").pow(2) - &SuperElement::one(&r)) + &(&el("a") * &el("b"));
    let pres = Presentation::absolute(&r, vec![f], vec![]).unwrap();
    let pres_file = write(&dir, "pres.json", &json::to_string(&json::encode_presentation(&pres)));
    let at = |x: i64| json::to_string(&json::encode_rational_point(&RationalPoint::new([("x", scalar::from_int(x))])));
    let pt = write(&dir, "pt.json", &at(1));
    let o = sgq(&["smooth", "--in", s(&pres_file), "--in2", s(&pt)]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["smooth"], true);
    assert_eq!(doc["etale"], false);
    assert_eq!(doc["relative_dimension"], serde_json::json!([0, 2]));

    let off = write(&dir, "off.json", &at(3));
    let o = sgq(&["smooth", "--in", s(&pres_file), "--in2", s(&off)]);
    assert_eq!(o.status.code(), Some(1));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["error"]["kind"], "NotAPoint");
}

#[test]
fn documents_round_trip_byte_for_byte() {
    let dir = TempDir::new().unwrap();
    let input = matrix_file(&dir, "g.json", &example_matrix());
    let out = dir.path().join("inv.json");
    assert_eq!(sgq(&["minv", "--in", s(&input), "--out", s(&out)]).status.code(), Some(0));
    let inv = read_json(&out)["inverse"].clone();
    let text = json::to_string(&inv);
    let reencoded = json::to_string(&json::encode_matrix(&decode_matrix(&inv)));
    assert_eq!(text, reencoded);
}

#[test]
fn proptest_with_zero_trials_passes() {
    let o = sgq(&["proptest", "--suite", "factorization", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["trials"], 0);
}

#[test]
fn proptest_matrix_suite_passes() {
    let o = sgq(&["proptest", "--suite", "matrix", "--trials", "200", "--seed", "42", "--size", "2,2,1,1,4"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    let ber = doc["properties"].as_array().unwrap().iter().find(|p| p["name"] == "berezinian_multiplicative").unwrap();
    assert_eq!(ber["passed"], 200);
    assert_eq!(ber["failed"], 0);
}

#[test]
fn proptest_is_deterministic() {
    let args = ["proptest", "--suite", "all", "--trials", "5", "--seed", "7", "--size", "3,2,2,1,3"];
    let a = sgq(&args);
    let b = sgq(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let other = sgq(&["proptest", "--suite", "nope"]);
    assert_eq!(other.status.code(), Some(1));
}
