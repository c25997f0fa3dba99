mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::*;
use serde_json::Value;

use moebius_dual::cli::exit_code;
use moebius_dual::{Error, RationalMatrix};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moebius-dual"))
        .args(args)
        .env_remove("MOEBIUS_DUAL_MAX_STATES")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_kernel(dir: &Path, name: &str, rows: &[&[&str]]) -> String {
    let entries: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
    let body = serde_json::json!({ "rows": rows.len(), "cols": rows[0].len(), "entries": entries });
    let path = dir.join(name);
    std::fs::write(&path, body.to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn partition_moebius_bottom_to_top() {
    let out = run(&["lattice", "partitions", "--n", "3", "--emit", "moebius"]);
    assert_eq!(out.status.code(), Some(0));
    let m = RationalMatrix::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!((m.rows(), m.cols()), (5, 5));
    let v = json(&out);
    let labels: Vec<&str> = v["row_labels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l.as_str().unwrap())
        .collect();
    let bottom = labels.iter().position(|l| *l == "{1}{2}{3}").unwrap();
    let top = labels.iter().position(|l| *l == "{1 2 3}").unwrap();
    assert_eq!(m[(bottom, top)], qi(2));
    assert!(m.entries().all(|x| x.is_integer()));
}

#[test]
fn duality_certificate_for_uniform_kernel() {
    let dir = tempfile::tempdir().unwrap();
    let quarter: &[&str] = &["1/4"; 4];
    let path = write_kernel(dir.path(), "p.json", &[quarter; 4]);
    let out = run(&[
        "duality",
        "--poset",
        "subsets",
        "--n",
        "2",
        "--variant",
        "zeta",
        "--kernel",
        &path,
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);

    let masks = [0b00u32, 0b01, 0b10, 0b11];
    let z = zeta(4, |i, j| subset_leq(masks[i], masks[j]));
    let p = vec![vec![q(1, 4); 4]; 4];
    let expected = transpose(&mul(&mul(&inverse(&z).unwrap(), &p), &z));
    let got: Vec<Vec<Q>> = v["Q"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            r.as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_str().unwrap().parse().unwrap())
                .collect()
        })
        .collect();
    assert_eq!(got, expected);
    assert_eq!(v["condition_i"], Value::Bool(nonnegative(&expected)));
    assert_eq!(v["variant"], "zeta");
}

#[test]
fn emitted_matrices_round_trip() {
    for args in [
        vec!["lattice", "subsets", "--n", "3", "--emit", "moebius"],
        vec![
            "coarsen",
            "--poset",
            "partitions",
            "--n",
            "4",
            "--matrix",
            "moebius",
        ],
        vec![
            "coarsen",
            "--poset",
            "subsets",
            "--n",
            "5",
            "--closed-form",
            "--matrix",
            "moebius-transpose",
        ],
        vec![
            "cannings", "--model", "moran", "--N", "3", "--emit", "backward",
        ],
        vec![
            "cannings",
            "--model",
            "wf",
            "--N",
            "2",
            "--T",
            "2",
            "--emit",
            "coarse-backward",
        ],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let text = String::from_utf8(out.stdout).unwrap();
        let m = RationalMatrix::from_json(&text).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        let labels: Vec<String> = v["row_labels"]
            .as_array()
            .unwrap()
            .iter()
            .map(|l| l.as_str().unwrap().to_string())
            .collect();
        assert_eq!(format!("{}\n", m.to_json(Some(&labels))), text, "{args:?}");
    }
}

#[test]
fn csv_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z.csv");
    let out = run(&[
        "lattice",
        "chain",
        "--n",
        "3",
        "--format",
        "csv",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        text,
        ",0,1,2\n0,1/1,1/1,1/1\n1,0/1,1/1,1/1\n2,0/1,0/1,1/1\n"
    );
}

#[test]
fn identical_flags_give_identical_bytes() {
    let args = [
        "simulate",
        "--N",
        "4",
        "--steps",
        "2",
        "--reps",
        "3000",
        "--seed",
        "9",
        "--start",
        "2",
        "--dual-start",
        "1",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let masks: Vec<u32> = (0..16).collect();
    let class: Vec<usize> = masks.iter().map(|m| m.count_ones() as usize).collect();
    let p = coarsen_rows(&forward_set_kernel(4, &wf_atoms(4), &masks), &class, 5).unwrap();
    let exact = mul(&mul(&p, &p), &hypergeometric(4))[2][1].clone();
    let v = json(&a);
    assert_eq!(v["exact"], format!("{}/{}", exact.numer(), exact.denom()));
}

#[test]
fn cannings_report_passes() {
    for model in ["wf", "moran"] {
        for t in ["1", "2"] {
            let out = run(&["cannings", "--model", model, "--N", "3", "--T", t]);
            assert_eq!(out.status.code(), Some(0), "{model} T={t}");
            assert_eq!(json(&out)["passed"], Value::Bool(true));
        }
    }
}

#[test]
fn incompatible_kernel_reports_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_kernel(
        dir.path(),
        "p.json",
        &[
            &["1/1", "0/1", "0/1", "0/1"],
            &["0/1", "1/1", "0/1", "0/1"],
            &["0/1", "1/2", "0/1", "1/2"],
            &["0/1", "0/1", "0/1", "1/1"],
        ],
    );
    let out = run(&[
        "coarsen",
        "--poset",
        "subsets",
        "--n",
        "2",
        "--variant",
        "zeta",
        "--kernel",
        &path,
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["compatible"], Value::Bool(false));
    assert_eq!(v["matrix"], "P");
    assert_eq!(v["witness"]["class"], 1);
}

#[test]
fn compatible_kernel_runs_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let quarter: &[&str] = &["1/4"; 4];
    let path = write_kernel(dir.path(), "p.json", &[quarter; 4]);
    let out = run(&[
        "coarsen",
        "--poset",
        "subsets",
        "--n",
        "2",
        "--variant",
        "moebius",
        "--kernel",
        &path,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["P_coarse_stochastic"], Value::Bool(true));
    assert_eq!(v["h_hat"], serde_json::json!(["1/1", "2/1", "1/1"]));
}

#[test]
fn invalid_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("float.json");
    std::fs::write(&path, r#"{"rows":1,"cols":1,"entries":[[0.5]]}"#).unwrap();
    let out = run(&[
        "duality",
        "--poset",
        "chain",
        "--n",
        "1",
        "--variant",
        "zeta",
        "--kernel",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("p/q"));

    assert_eq!(run(&["lattice", "subsets"]).status.code(), Some(2));
    assert_eq!(
        run(&[
            "duality",
            "--poset",
            "subsets",
            "--n",
            "2",
            "--variant",
            "sideways",
            "--kernel",
            "x"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        run(&["cannings", "--model", "moran", "--N", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn size_cap_exits_3() {
    let out = Command::new(env!("CARGO_BIN_EXE_moebius-dual"))
        .args(["lattice", "subsets", "--n", "4"])
        .env("MOEBIUS_DUAL_MAX_STATES", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(
        run(&["cannings", "--model", "wf", "--N", "9"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn verification_errors_map_to_1() {
    assert_eq!(exit_code(&Error::Verification("x".into())), 1);
    assert_eq!(exit_code(&Error::Parse("x".into())), 2);
}
