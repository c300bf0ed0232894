use std::process::{Command, Output};

use serde_json::Value;

fn mvop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mvop")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn eigen_base_point() {
    let v = json_of(&mvop(&["eigen", "--n", "2", "--k", "1", "--ell", "1", "--m", "0", "--w", "1", "--r", "0"]));
    assert_eq!(v["lambda"].as_f64(), Some(-4.0));
    assert_eq!(v["mu"].as_f64(), Some(-4.0));
    assert_eq!(v["label"]["w"], 1);
    assert_eq!(v["coeffs"].as_array().unwrap().len(), 2);
}

#[test]
fn eigen_constant_at_origin() {
    let v = json_of(&mvop(&["eigen", "--w", "0", "--r", "0"]));
    let coeffs = v["coeffs"].as_array().unwrap();
    assert_eq!(coeffs.len(), 1);
    assert_eq!(coeffs[0], v["value_at_zero"]);
}

#[test]
fn json_round_trip_is_byte_identical() {
    for args in [
        vec!["eigen", "--n", "3", "--k", "2", "--ell", "2", "--m", "1", "--w", "3", "--r", "1"],
        vec!["family", "--jacobi", "--alpha", "0.5", "--beta", "1.5", "--k", "1", "--ell", "2", "--wmax", "2"],
        vec!["recursion", "--wmax", "3"],
    ] {
        let out = mvop(&args);
        let text = String::from_utf8(out.stdout.clone()).unwrap();
        let mut again = serde_json::to_string_pretty(&json_of(&out)).unwrap();
        again.push('\n');
        assert_eq!(again, text, "{args:?}");
    }
}

#[test]
fn malformed_k_exits_with_input_error() {
    for args in [vec!["eigen", "--k", "x"], vec!["eigen", "--n", "2", "--k", "2"], vec!["eigen", "--w", "0", "--r", "5"]] {
        let out = mvop(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn walk_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("walk{i}.csv"))).collect();
    for p in &paths {
        let out = mvop(&["walk", "--steps", "1000", "--seed", "42", "--out", p.to_str().unwrap()]);
        assert!(out.status.success());
    }
    let (a, b) = (std::fs::read(&paths[0]).unwrap(), std::fs::read(&paths[1]).unwrap());
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().count(), 1002);
    assert!(text.starts_with("step,w,r\n0,0,0\n"));
}

#[test]
fn jacobi_gram_is_diagonal() {
    let out = mvop(&["gram", "--jacobi", "--alpha", "0.5", "--beta", "1.5", "--k", "1", "--ell", "1", "--wmax", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').skip(1).map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 8);
    for (i, row) in rows.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if i != j {
                assert!(x.abs() <= 1e-9 * (rows[i][i] * rows[j][j]).sqrt(), "({i},{j}) = {x}");
            }
        }
    }
}

#[test]
fn verify_base_point_passes() {
    let out = mvop(&["verify", "--suite", "all", "--n", "2", "--k", "1", "--ell", "1", "--m", "0", "--wmax", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["checks"].as_array().unwrap().len(), 12);
}

#[test]
fn verify_default_grid_passes() {
    let out = Command::new(env!("CARGO_BIN_EXE_mvop"))
        .arg("verify")
        .env("MVOP_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn jacobi_twin_reproduces_integer_residuals() {
    let integer = json_of(&mvop(&["verify", "--n", "3", "--k", "2", "--ell", "2", "--m", "1"]));
    let twin = json_of(&mvop(&["verify", "--jacobi", "--alpha", "1", "--beta", "2", "--k", "2", "--ell", "2"]));
    let (a, b) = (integer["checks"].as_array().unwrap(), twin["checks"].as_array().unwrap());
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(b) {
        assert_eq!(x["name"], y["name"]);
        let gap = (x["max_residual"].as_f64().unwrap() - y["max_residual"].as_f64().unwrap()).abs();
        assert!(gap <= 1e-12, "{}: {gap:e}", x["name"]);
    }
}

#[test]
fn weight_commands_reject_negative_m() {
    let out = mvop(&["verify", "--suite", "ortho", "--m", "-1"]);
    assert_eq!(out.status.code(), Some(2));
}
