use std::path::Path;
use std::process::{Command, Output};

use isokit::verify::fd_forms_oracle;
use isokit::calculus::{curvatures, Rect, SurfaceChart};
use isokit::isotropic::Point3;

fn isokit(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isokit"))
        .current_dir(dir)
        .args(args)
        .env_remove("ISOKIT_SEED")
        .output()
        .expect("binary runs")
}

fn csv_rows(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

fn column(header: &[String], rows: &[Vec<String>], name: &str) -> Vec<f64> {
    let k = header.iter().position(|h| h == name).unwrap();
    rows.iter().map(|r| r[k].parse().unwrap()).collect()
}

#[test]
fn flat_helicoidal_family_has_zero_k() {
    let dir = tempfile::tempdir().unwrap();
    let out = isokit(
        dir.path(),
        &["family", "flat-helicoidal", "--alpha", "1", "--h", "1", "--u", "1.01:5", "--v", "0:12.566", "--n", "51x51", "--out", "fig1"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = csv_rows(&dir.path().join("fig1.csv"));
    assert_eq!(header, ["u", "v", "x1", "x2", "x3", "K", "H_def", "H_s3"]);
    assert_eq!(rows.len(), 51 * 51);
    assert!(column(&header, &rows, "K").iter().all(|k| k.abs() <= 1e-8));
    let obj = std::fs::read_to_string(dir.path().join("fig1.obj")).unwrap();
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 51 * 51);
    assert_eq!(obj.lines().filter(|l| l.starts_with("# vk ")).count(), 51 * 51);
    assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 2 * 50 * 50);
}

#[test]
fn constant_h_family_with_negative_arguments() {
    let dir = tempfile::tempdir().unwrap();
    let out = isokit(
        dir.path(),
        &["family", "constantH", "--H0", "-1", "--alpha", "1", "--beta", "0", "--h", "1.5", "--u", "0.5:5", "--v", "-3.1416:3.1416", "--n", "11x9"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = csv_rows(&dir.path().join("isokit_constant-h.csv"));
    assert!(column(&header, &rows, "H_s3").iter().all(|h| (h + 1.0).abs() < 1e-10));
    assert!(column(&header, &rows, "H_def").iter().all(|h| (h + 0.5).abs() < 1e-10));
}

#[test]
fn parabolic_sphere_csv_is_deterministic_and_matches_positions() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["family", "parabolic-sphere", "--A", "2", "--n", "7x7", "--out", "s"];
    assert!(isokit(dir.path(), &args).status.success());
    let first = std::fs::read(dir.path().join("s.csv")).unwrap();
    let obj_first = std::fs::read(dir.path().join("s.obj")).unwrap();
    assert!(isokit(dir.path(), &args).status.success());
    assert_eq!(first, std::fs::read(dir.path().join("s.csv")).unwrap());
    assert_eq!(obj_first, std::fs::read(dir.path().join("s.obj")).unwrap());

    let (header, rows) = csv_rows(&dir.path().join("s.csv"));
    let k = column(&header, &rows, "K");
    assert!(k.iter().all(|k| (k - 4.0).abs() < 1e-12));
    // recompute from the vertex positions written to the OBJ file
    let obj = String::from_utf8(obj_first).unwrap();
    let verts: Vec<[f64; 3]> = obj
        .lines()
        .filter_map(|l| l.strip_prefix("v "))
        .map(|l| {
            let p: Vec<f64> = l.split_whitespace().map(|x| x.parse().unwrap()).collect();
            [p[0], p[1], p[2]]
        })
        .collect();
    let (us, vs, hs) = (column(&header, &rows, "u"), column(&header, &rows, "v"), column(&header, &rows, "H_def"));
    for (idx, p) in verts.iter().enumerate() {
        let (x, y, z) = (p[0], p[1], p[2]);
        let a = (us[idx], vs[idx]);
        assert!((x - a.0).abs() < 1e-15 && (y - a.1).abs() < 1e-15);
        assert!((z - (x * x + y * y)).abs() < 1e-12);
    }
    let chart = SurfaceChart::from_positions("sphere", Rect::PLANE, 1e-2, |x, y| Ok(Point3::new(x, y, x * x + y * y)));
    for idx in [0, 10, 24, 48] {
        let (g, h) = fd_forms_oracle(&chart, us[idx], vs[idx], 1e-2).unwrap();
        let c = curvatures(&g, &h).unwrap();
        assert!((c.k - k[idx]).abs() < 1e-4 && (c.h - hs[idx]).abs() < 1e-4);
    }
}

#[test]
fn invalid_parameters_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = isokit(dir.path(), &["family", "flat-helicoidal", "--alpha", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty range"));
    assert_eq!(isokit(dir.path(), &["family", "parabolic-sphere", "--A", "0"]).status.code(), Some(2));
    assert_eq!(isokit(dir.path(), &["family", "minimal", "--u", "5:1"]).status.code(), Some(2));
    assert_eq!(isokit(dir.path(), &["family", "minimal", "--n", "1x4"]).status.code(), Some(2));
    assert_eq!(isokit(dir.path(), &["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_single_claims() {
    let dir = tempfile::tempdir().unwrap();
    let a = isokit(dir.path(), &["verify", "--only", "Thm4.3", "--seed", "7"]);
    let b = isokit(dir.path(), &["verify", "--only", "Thm4.3", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let report: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report["seed"], 7);
    assert_eq!(report["claims"][0]["status"], "pass");

    let out = isokit(dir.path(), &["verify", "--only", "Thm3.1.ii", "--K0", "0.5", "--gamma", "1", "--h", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let claim = &report["claims"][0];
    assert_eq!(claim["status"], "pass");
    assert!(claim["max_abs_error"].as_f64().unwrap() <= 1e-8);
    assert!(claim["notes"].as_str().unwrap().contains("mean K 0.500000000000"));
}

#[test]
fn seed_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_isokit"))
        .current_dir(dir.path())
        .args(["verify", "--only", "Thm4.1", "--draws", "10"])
        .env("ISOKIT_SEED", "11")
        .output()
        .unwrap();
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["seed"], 11);
}

#[test]
fn verify_all_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = isokit(dir.path(), &["verify", "--all", "--out", "r.json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    let claims = report["claims"].as_array().unwrap();
    assert!(claims.iter().all(|c| !c["anchor"].as_str().unwrap().is_empty()));
    let documented: Vec<&str> = claims
        .iter()
        .filter(|c| c["status"] == "discrepancy-documented")
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(documented, ["Thm3.3.Hdef", "Thm4.2.ii", "Thm2.1.i", "Thm2.2.iii"]);
}

fn curve_csv(dir: &Path, args: &[&str]) -> (Vec<String>, Vec<Vec<String>>) {
    let out = isokit(dir, args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let path = dir.join("curve.csv");
    std::fs::write(&path, &out.stdout).unwrap();
    csv_rows(&path)
}

#[test]
fn curve_columns() {
    let dir = tempfile::tempdir().unwrap();
    let (h, rows) = curve_csv(dir.path(), &["curve", "constant-h", "--h", "1.5", "--curve", "v-const:0.3", "--t", "0.5:4"]);
    assert!(column(&h, &rows, "kappa_g").iter().all(|k| k.abs() < 1e-12));
    let (h, rows) = curve_csv(dir.path(), &["curve", "constant-h", "--h", "1.5", "--curve", "u-const:2", "--t", "-3:3"]);
    assert!(column(&h, &rows, "kappa_g").iter().all(|k| (k - 0.5).abs() < 1e-12));
    let s = column(&h, &rows, "s");
    assert!((s.last().unwrap() - 12.0).abs() < 1e-9);
    for curve in ["u-const:2", "v-const:1"] {
        let (h, rows) = curve_csv(dir.path(), &["curve", "minimal", "--h", "0", "--curve", curve, "--t", "1:3"]);
        assert!(column(&h, &rows, "tau_g_numerator").iter().all(|t| t.abs() < 1e-12));
    }
    let out = isokit(dir.path(), &["curve", "flat-helicoidal", "--curve", "v-const:0", "--t", "0.5:3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn forms_dump() {
    let dir = tempfile::tempdir().unwrap();
    let out = isokit(dir.path(), &["forms", "parabolic-sphere", "--A", "-2", "--at", "0.3,-1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["K"].as_f64().unwrap() - 4.0).abs() < 1e-12);
    assert!((v["H_def"].as_f64().unwrap() + 2.0).abs() < 1e-12);
    assert_eq!(v["g"]["a11"], 1.0);
}
