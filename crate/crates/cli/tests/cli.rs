use std::path::Path;
use std::process::Command;

use ccpt_core::foccpt::foccpt;
use ccpt_core::transform::analyze;
use ccpt_core::Family;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["ccpt"];
    full.extend_from_slice(args);
    let code = ccpt_cli::run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write_csv(dir: &Path, name: &str, x: &[f64]) -> String {
    let p = dir.join(name);
    let mut s = String::from("value\n");
    for v in x {
        s.push_str(&format!("{v:e}\n"));
    }
    std::fs::write(&p, s).unwrap();
    p.to_str().unwrap().to_string()
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
}

fn read_signal(s: &str) -> Vec<f64> {
    s.lines().skip(1).map(|l| l.parse().unwrap()).collect()
}

#[test]
fn ramp_transform_matches_library_bit_for_bit() {
    let dir = tempfile::tempdir().unwrap();
    let x: Vec<f64> = (0..8).map(|t| t as f64).collect();
    let path = write_csv(dir.path(), "ramp.csv", &x);
    let (code, out, _) = run(&["transform", &path, "--family", "occpt"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["method"], "foccpt");
    let (c, _) = foccpt(&x).unwrap();
    let got = floats(&v["flat"]);
    assert_eq!(got.iter().map(|f| f.to_bits()).collect::<Vec<_>>(), c.flat().iter().map(|f| f.to_bits()).collect::<Vec<_>>());
}

#[test]
fn ccpt1_on_54_samples() {
    let dir = tempfile::tempdir().unwrap();
    let x: Vec<f64> = (0..54).map(|t| ((t * 7) % 11) as f64 - 5.0).collect();
    let path = write_csv(dir.path(), "x.csv", &x);
    let (code, out, _) = run(&["transform", &path, "--family", "ccpt1"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 54);
    let lib = analyze(Family::Ccpt1, &x).unwrap();
    assert_eq!(floats(&v["flat"]), lib.flat());
}

#[test]
fn malformed_row_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.csv");
    std::fs::write(&p, "value\n1.0\n2.0x\n3\n").unwrap();
    let (code, _, err) = run(&["transform", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn argument_errors_exit_one() {
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["--version"]).0, 0);
    assert_eq!(run(&["nonsense"]).0, 1);
    assert_eq!(run(&["transform", "/nonexistent/input.csv"]).0, 1);
    let dir = tempfile::tempdir().unwrap();
    let path = write_csv(dir.path(), "x.csv", &[1.0, 2.0, 3.0, 4.0]);
    assert_eq!(run(&["periods", &path, "--threshold", "0"]).0, 1);
    assert_eq!(run(&["periods", &path, "--threshold", "1.5"]).0, 1);
    assert_eq!(run(&["transform", &path, "--family", "haar"]).0, 1);
    assert_eq!(run(&["transform", &path, "--n", "9"]).0, 1);
    assert_eq!(run(&["filter-band", &path, "--band", "1:2"]).0, 1);
    assert_eq!(run(&["filter-band", &path, "--fs", "10", "--band", "1:6"]).0, 1);
    assert_eq!(run(&["filter-band", &path, "--fs", "10", "--band", "3:1"]).0, 1);
    assert_eq!(run(&["filter-band", &path, "--fs", "10", "--band", "1:2", "--family", "rpt"]).0, 1);
}

fn fixture(dir: &Path, args: &[&str]) -> String {
    let name = format!("{}.csv", args.join("_").replace('-', ""));
    let p = dir.join(name).to_str().unwrap().to_string();
    let mut full = vec!["fixture"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &p]);
    assert_eq!(run(&full).0, 0);
    p
}

#[test]
fn periods_on_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let x1 = fixture(dir.path(), &["x1", "--clean"]);
    let v = json(&run(&["periods", &x1, "--fs", "360"]).1);
    assert_eq!(v["report"]["estimated_period"], 18);
    let tone = v["components"].as_array().unwrap().iter().find(|c| c["p"] == 18 && c["k"] == 5).unwrap().clone();
    assert!((tone["freq_hz"].as_f64().unwrap() - 100.0).abs() < 1e-9);
    assert!((tone["phase_rad"].as_f64().unwrap() - std::f64::consts::FRAC_PI_3).abs() < 1e-9);

    let x2 = fixture(dir.path(), &["x2"]);
    let v = json(&run(&["periods", &x2]).1);
    assert_eq!(v["report"]["estimated_period"], 54);

    let csv = dir.path().join("s.csv");
    let (code, _, _) = run(&["periods", &x2, "--method", "dictionary", "--pmax", "50", "--csv", csv.to_str().unwrap()]);
    assert_eq!(code, 0);
    let table = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(table.lines().next().unwrap(), "period,strength");
    assert_eq!(table.lines().count(), 51);
}

#[test]
fn constant_input_has_period_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_csv(dir.path(), "c.csv", &[2.5; 12]);
    for method in ["matrix", "dictionary"] {
        let v = json(&run(&["periods", &path, "--method", method]).1);
        assert_eq!(v["report"]["estimated_period"], 1, "{method}");
    }
}

#[test]
fn candidates_method() {
    let dir = tempfile::tempdir().unwrap();
    let x: Vec<f64> = (0..20).map(|t| (std::f64::consts::TAU * 3.0 * t as f64 / 8.0).cos()).collect();
    let path = write_csv(dir.path(), "x.csv", &x);
    let v = json(&run(&["periods", &path, "--method", "candidates", "--candidates", "6,8"]).1);
    assert_eq!(v["n_min"], 12);
    assert_eq!(v["identified"], serde_json::json!([8]));
    assert_eq!(run(&["periods", &path, "--method", "candidates", "--candidates", "6"]).0, 1);
}

#[test]
fn full_band_is_identity_and_single_tone_selection() {
    let dir = tempfile::tempdir().unwrap();
    let fs = 60.0;
    let n = 60;
    let a: Vec<f64> = (0..n).map(|t| (std::f64::consts::TAU * 5.0 * t as f64 / fs).cos()).collect();
    let b: Vec<f64> = (0..n).map(|t| 0.5 * (std::f64::consts::TAU * 12.0 * t as f64 / fs + 0.3).sin()).collect();
    let x: Vec<f64> = a.iter().zip(&b).map(|(u, v)| u + v + 0.25).collect();
    let path = write_csv(dir.path(), "x.csv", &x);
    for family in ["occpt", "ccpt1", "ccpt2", "dft-npm"] {
        let (code, out, _) = run(&["filter-band", &path, "--fs", "60", "--band", "0:30", "--family", family]);
        assert_eq!(code, 0);
        let y = read_signal(&out);
        for (u, v) in x.iter().zip(&y) {
            assert!((u - v).abs() <= 1e-10, "{family}");
        }
        let y = read_signal(&run(&["filter-band", &path, "--fs", "60", "--band", "10:14", "--family", family]).1);
        for (u, v) in b.iter().zip(&y) {
            assert!((u - v).abs() <= 1e-10, "{family}");
        }
    }
}

#[test]
fn benchmark_rows() {
    let v = json(&run(&["benchmark", "--sizes", "1,7,8"]).1);
    let sizes = v["sizes"].as_array().unwrap();
    let row = |i: usize, t: &str| sizes[i]["transforms"].as_array().unwrap().iter().find(|r| r["transform"] == t).unwrap().clone();
    assert!(sizes[0]["transforms"].as_array().unwrap().iter().all(|r| r["mults"] == 0 && r["adds"] == 0));
    assert_eq!((row(1, "DFT")["mults"].as_u64(), row(1, "DFT")["adds"].as_u64()), (Some(196), Some(182)));
    assert_eq!((row(1, "OCCPT")["mults"].as_u64(), row(1, "OCCPT")["adds"].as_u64()), (Some(98), Some(84)));
    let f = &sizes[2]["foccpt_real_input"];
    assert_eq!(f["measured"]["mults"], 17);
    assert_eq!(f["measured"]["adds"], 25);
    assert_eq!(f["equal"], true);
}

#[test]
fn matrix_dump_with_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("e.csv");
    assert_eq!(run(&["matrix", "--family", "occpt", "--n", "6", "--out", csv.to_str().unwrap()]).0, 0);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 6);
    let side = json(&std::fs::read_to_string(dir.path().join("e.json")).unwrap());
    assert_eq!(side["columns"].as_array().unwrap().len(), 6);
    assert_eq!(run(&["matrix", "--n", "0"]).0, 1);
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let ecg = fixture(dir.path(), &["ecg"]);
    let again = std::fs::read_to_string(fixture(dir.path(), &["ecg", "--seed", "3"])).unwrap();
    assert_eq!(std::fs::read_to_string(&ecg).unwrap(), again);
    let a = run(&["periods", &ecg, "--fs", "62.5"]).1;
    let b = run(&["periods", &ecg, "--fs", "62.5"]).1;
    assert_eq!(a, b);
    let a = run(&["transform", &ecg, "--family", "ccpt2"]).1;
    assert_eq!(a, run(&["transform", &ecg, "--family", "ccpt2"]).1);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ccpt");
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "1\n\nfoo\n").unwrap();
    let out = Command::new(bin).args(["transform", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let out = Command::new(bin).args(["benchmark", "--sizes", "8"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.ends_with(b"\n"));
    assert_eq!(Command::new(bin).arg("--bogus").output().unwrap().status.code(), Some(1));
}
