use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbitkit"))
        .args(args)
        .env_remove("ORBITKIT_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_str(stdout(out).trim()).expect("json output")
}

#[test]
fn algebra_check_reports_class() {
    let out = run(&["algebra", "check", &fixture("freefall.lie")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out), json!({ "antisymmetric": true, "jacobi": true, "nilpotent_class": 3 }));

    let out = run(&["algebra", "check", &fixture("heisenberg.lie")]);
    assert_eq!(json_of(&out)["nilpotent_class"], 2);
}

#[test]
fn broken_table_is_an_input_error() {
    let out = run(&["algebra", "check", &fixture("broken.lie")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn polarizations_of_the_bundled_algebras() {
    for (file, h) in [
        ("heisenberg.lie", json!(["e_a", "e_b"])),
        ("bargmann.lie", json!(["e_a", "e_c", "e_e"])),
        ("alg6.lie", json!(["e1", "e2", "e3", "e6"])),
    ] {
        let out = run(&["orbit", "polarize", &fixture(file)]);
        assert_eq!(out.status.code(), Some(0), "{file}");
        assert_eq!(
            json_of(&out),
            json!({ "h": h, "subordinate": true, "polarization": true, "pukanszky": true }),
            "{file}"
        );
    }
}

#[test]
fn failed_check_exits_one() {
    let out = run(&["orbit", "polarize", &fixture("heisenberg.lie"), "--a", "e_a"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["subordinate"], true);
    assert_eq!(v["polarization"], false);
}

#[test]
fn span_of_freefall() {
    let out = run(&["orbit", "span", &fixture("freefall.lie")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["orbit_dim"], 2);
    assert_eq!(v["affine_hull_dim"], 3);
    assert_eq!(v["o"], json!(["e1-e2"]));
    assert_eq!(v["c"], json!(["e1", "e2"]));
}

#[test]
fn flat_of_freefall() {
    let out = run(&["orbit", "flat", &fixture("freefall.lie")]);
    assert_eq!(json_of(&out), json!({ "flat": false, "corwin": true, "witness_a": ["e1", "e2", "e3"] }));
}

#[test]
fn projection_csv_is_exact_and_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let paths = [dir.path().join("a.csv"), dir.path().join("b.csv")];
    for p in &paths {
        let out = run(&["orbit", "project", &fixture("freefall.lie"), "--a", "e3,e4", "-o", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        let v = json_of(&out);
        assert_eq!(v["coords"], json!(["-x4 + x5", "x3 + 1/2*x5^2"]));
        assert_eq!(v["exact_region"], true);
    }
    let a = std::fs::read(&paths[0]).unwrap();
    assert_eq!(a, std::fs::read(&paths[1]).unwrap());
    let text = String::from_utf8(a).unwrap();
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("e3,e4"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 358);
    assert!(rows.iter().all(|r| r.split(',').count() == 2));
}

#[test]
fn little_group_of_galilei() {
    let out = run(&["orbit", "littlegroup", &fixture("galilei.lie"), "--x", "massive", "--a", "gamma,phi"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!((v["dim_gh"].as_u64(), v["dim_y"].as_u64(), v["dim_x"].as_u64()), (Some(3), Some(2), Some(8)));
    assert_eq!(v["induction_dim"], 8);
    assert_eq!(v["a"], json!(["gamma1", "gamma2", "gamma3", "phi"]));
}

#[test]
fn bad_inputs_exit_two() {
    let cases: [&[&str]; 5] = [
        &["orbit", "span", "no_such_file.lie"],
        &["orbit", "span", &fixture("freefall.lie"), "--x", "1,2"],
        &["orbit", "littlegroup", &fixture("galilei.lie"), "--x", "massive", "--a", "gamma"],
        &["compact", "quantum-list", "--mu", "0,1"],
        &["compact", "quantum-list"],
    ];
    for args in cases {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn tolerance_resolution() {
    let bin = env!("CARGO_BIN_EXE_orbitkit");
    let args = ["compact", "quantum-list", "--mu", "1,0"];
    let bad = Command::new(bin).args(args).env("ORBITKIT_TOL", "abc").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let flag = Command::new(bin).arg("--tol").arg("1e-9").args(args).env("ORBITKIT_TOL", "abc").output().unwrap();
    assert_eq!(flag.status.code(), Some(0));
    assert_eq!(run(&["--tol", "-1", "compact", "quantum-list", "--mu", "1,0"]).status.code(), Some(2));
}

#[test]
fn quantum_lists() {
    let out = run(&["compact", "quantum-list", "--mu", "2,0,-1"]);
    assert_eq!(stdout(&out), "2,0,-1\n1,0,0\n1,1,-1\n");
    let out = run(&["compact", "quantum-list", "--mu", "0,0,1,1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["compact", "quantum-list", "--mu", "1,1,0"]);
    assert_eq!(stdout(&out), "1,1,0\n");
}

#[test]
fn convexity_sampling_passes() {
    let out = run(&["compact", "convexity", "--spectrum", "3,1,0", "--samples", "500", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["pass_fraction"], 1.0);
}

#[test]
fn highest_weight_state_is_normalized() {
    let out = run(&["compact", "state", "--mu", "2,0,-1", "--samples", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert!((v["identity"]["re"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(v["max_abs"].as_f64().unwrap() <= 1.0 + 1e-12);
    assert_eq!(v["values"].as_array().unwrap().len(), 5);
}

#[test]
fn fig2_layers() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig2.csv");
    let out = run(&["emit", "fig2", "--mu", "2,0,-1", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        json_of(&out),
        json!({ "vertices": 6, "interior": 3, "boundary": 3, "modules": [[2, 0, -1], [1, 0, 0], [1, 1, -1]] })
    );
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("layer,module,multiplicity,w1,w2,w3\n"));
    let modules: Vec<&str> = text.lines().filter(|l| l.starts_with("module,")).collect();
    assert_eq!(modules, ["module,0,15,2,0,-1", "module,1,3,1,0,0", "module,2,6,1,1,-1"]);
    let again = run(&["emit", "fig2", "--mu", "2,0,-1"]);
    assert_eq!(stdout(&again), text);

    let out = run(&["emit", "fig2", "--mu", "1,0,0"]);
    let body = stdout(&out);
    assert_eq!(body.lines().filter(|l| l.starts_with("vertex,")).count(), 3);
    assert_eq!(body.lines().filter(|l| l.starts_with("interior,")).count(), 0);
}

#[test]
fn fig1_cloud_is_a_cylinder() {
    let out = run(&["emit", "fig1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("j,p1,p2"));
    let pts: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(pts.len(), 1944);
    for p in &pts {
        assert!((p[1].hypot(p[2]) - 2.0).abs() < 1e-9, "{p:?}");
    }
    assert_eq!(run(&["emit", "fig1", "--x", "1,2"]).status.code(), Some(2));
}
