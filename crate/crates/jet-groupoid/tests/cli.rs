//! End-to-end tests of the `jetgroupoid` binary: exit codes, JSON
//! output stability, and the jet file pipeline.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use jet_groupoid::germ::sample_exp_germ;
use jet_groupoid::jets::TrivializedJet;
use jet_groupoid::lie::{so3_generators, AlgebraElement, GroupElement, GroupTag};
use jet_groupoid::tensor::GValuedTensor;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_jetgroupoid"));
    cmd.env_remove("JETGROUPOID_TOL");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("jetgroupoid-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).expect("scratch dir");
    dir
}

/// Germ of exp(t E₃) over ℝ¹ at truncation 2.
fn rotation_curve_germ() -> jet_groupoid::germ::MatrixGerm {
    let [_, _, e3] = so3_generators();
    sample_exp_germ(
        1,
        2,
        GroupTag::SpecialOrthogonal3,
        &[e3],
        &[AlgebraElement::zero(GroupTag::SpecialOrthogonal3)],
    )
    .unwrap()
}

#[test]
fn partitions_counts_and_exit_codes() {
    let out = run(&["partitions", "--kind", "p1plus", "--j", "1"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["count"], 1);
    assert_eq!(doc["partitions"][0], serde_json::json!([[1]]));
    assert_eq!(doc["signs"][0], 1);

    let out = run(&["partitions", "--kind", "p1plus", "--j", "3"]);
    assert_eq!(stdout_json(&out)["count"], 6);

    let out = run(&["partitions", "--kind", "antilex", "--j", "3"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["count"], 5);
    assert!(doc.get("signs").is_none());

    // usage errors exit 2
    let out = run(&["partitions", "--kind", "antilex", "--j", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["partitions", "--kind", "bogus", "--j", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_reports_and_is_reproducible() {
    let args = [
        "verify", "--group", "so3", "--n", "2", "--k", "3", "--trials", "50", "--seed", "42",
    ];
    let out1 = run(&args);
    assert!(out1.status.success(), "{}", String::from_utf8_lossy(&out1.stderr));
    let doc = stdout_json(&out1);
    assert_eq!(doc["all_pass"], true);
    assert_eq!(doc["group"], "special-orthogonal(3)");
    assert_eq!(doc["seed"], 42);
    assert!(doc["properties"].as_array().unwrap().len() >= 9);

    // byte-identical output for the same seed
    let out2 = run(&args);
    assert_eq!(out1.stdout, out2.stdout);

    // degenerate trial count is a usage error
    let out = run(&["verify", "--group", "so3", "--n", "1", "--k", "1", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(2));

    // unsupported group name
    let out = run(&["verify", "--group", "su2", "--n", "1", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));

    // an impossibly tight tolerance must be reported as failure (exit 1)
    let out = bin()
        .env("JETGROUPOID_TOL", "1e-30")
        .args(["verify", "--group", "so3", "--n", "2", "--k", "2", "--trials", "5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["all_pass"], false);
}

#[test]
fn jet_pipeline_trivialize_multiply_inverse() {
    let dir = scratch_dir("pipeline");
    let germ_path = dir.join("germ.json");
    fs::write(&germ_path, serde_json::to_string(&rotation_curve_germ()).unwrap()).unwrap();

    // trivialize the rotation curve: expect (I, E₃, 0)
    let jet_path = dir.join("jet.json");
    let out = run(&[
        "jet",
        "trivialize",
        germ_path.to_str().unwrap(),
        "--k",
        "2",
        "-o",
        jet_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let jet: TrivializedJet = serde_json::from_str(&fs::read_to_string(&jet_path).unwrap()).unwrap();
    let [_, _, e3] = so3_generators();
    assert!((jet.group().matrix() - nalgebra::DMatrix::identity(3, 3)).norm() < 1e-12);
    assert!((jet.tensor(1).unwrap().entry(&[0]).unwrap() - e3.matrix()).norm() < 1e-12);
    assert!(jet.tensor(2).unwrap().max_abs() < 1e-12);

    // multiply by the inverse file: identity jet within tolerance
    let inv_path = dir.join("inv.json");
    let out = run(&[
        "jet",
        "inverse",
        jet_path.to_str().unwrap(),
        "-o",
        inv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = run(&[
        "jet",
        "multiply",
        jet_path.to_str().unwrap(),
        inv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let product: TrivializedJet = serde_json::from_slice(&out.stdout).unwrap();
    let identity = TrivializedJet::identity(1, 2, GroupTag::SpecialOrthogonal3).unwrap();
    assert!(product.max_abs_diff(&identity).unwrap() < 1e-12);

    // check-image accepts the trivialized jet
    let out = run(&["jet", "check-image", jet_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["in_image"], true);

    fs::remove_dir_all(&dir).ok();
}

#[test]
fn check_image_rejects_non_image_jet() {
    let dir = scratch_dir("image");
    let [e1, e2, _] = so3_generators();
    let tag = GroupTag::SpecialOrthogonal3;
    let xi1 =
        GValuedTensor::new(1, 2, tag, vec![e1.matrix().clone(), e2.matrix().clone()]).unwrap();
    let jet = TrivializedJet::from_parts(
        GroupElement::identity(tag),
        vec![xi1, GValuedTensor::zeros(2, 2, tag)],
    )
    .unwrap();
    let path = dir.join("free.json");
    fs::write(&path, serde_json::to_string(&jet).unwrap()).unwrap();

    let out = run(&["jet", "check-image", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let doc = stdout_json(&out);
    assert_eq!(doc["in_image"], false);
    assert!(doc["residual"].as_f64().unwrap() > 0.4);

    fs::remove_dir_all(&dir).ok();
}

#[test]
fn schema_violations_name_the_invariant_and_exit_2() {
    let dir = scratch_dir("schema");
    let jet = rotation_curve_germ().trivialize_flat(2).unwrap();
    let mut doc = serde_json::to_value(&jet).unwrap();
    doc["g"] = serde_json::json!([[0, 0, 0], [0, 0, 0], [0, 0, 0]]);
    let tampered = dir.join("tampered.json");
    fs::write(&tampered, doc.to_string()).unwrap();

    let good = dir.join("good.json");
    fs::write(&good, serde_json::to_string(&jet).unwrap()).unwrap();

    let out = run(&[
        "jet",
        "multiply",
        tampered.to_str().unwrap(),
        good.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("invertible"), "stderr: {err}");

    // a tensor entry pushed off the subalgebra is also named
    let mut doc = serde_json::to_value(&jet).unwrap();
    doc["xi"][0]["entries"][0] = serde_json::json!([[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
    fs::write(&tampered, doc.to_string()).unwrap();
    let out = run(&["jet", "inverse", tampered.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("residual"), "stderr: {err}");

    // missing file
    let out = run(&["jet", "inverse", dir.join("absent.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    fs::remove_dir_all(&dir).ok();
}

#[test]
fn trivialize_with_christoffel_file() {
    let dir = scratch_dir("covariant");
    let germ_path = dir.join("germ.json");
    fs::write(&germ_path, serde_json::to_string(&rotation_curve_germ()).unwrap()).unwrap();

    // Γ¹₁₁ = 0.6 over ℝ¹: ξ⁽²⁾ = −0.6·E₃ for the rotation curve
    let gamma_path = dir.join("gamma.json");
    fs::write(
        &gamma_path,
        serde_json::json!({
            "n": 1,
            "truncation": 2,
            "components": [
                {"sigma": 1, "mu": 1, "nu": 1, "terms": [{"exponents": [0], "coefficient": 0.6}]}
            ]
        })
        .to_string(),
    )
    .unwrap();

    let out = run(&[
        "jet",
        "trivialize",
        germ_path.to_str().unwrap(),
        "--k",
        "2",
        "--christoffel",
        gamma_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let jet: TrivializedJet = serde_json::from_slice(&out.stdout).unwrap();
    let [_, _, e3] = so3_generators();
    let xi2 = jet.tensor(2).unwrap().entry(&[0, 0]).unwrap().clone();
    assert!((xi2 - e3.matrix() * (-0.6)).norm() < 1e-12);

    fs::remove_dir_all(&dir).ok();
}
