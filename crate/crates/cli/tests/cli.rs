use std::path::Path;
use std::process::{Command, Output};

use pseudoiso::revolution::{make_revolution, solve_profile, ProfileFamily};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pseudoiso"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn csv_column(text: &str, name: &str) -> Vec<String> {
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let idx = header.iter().position(|h| *h == name).unwrap();
    lines
        .map(|l| l.split(',').nth(idx).unwrap().to_string())
        .collect()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn classify_timelike_arc_length_curve() {
    let o = run(&[
        "classify",
        "--curve",
        "cosh(s),sinh(s),s",
        "--range",
        "-1:1",
        "-n",
        "64",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "timelike, admissible, arc-length");
}

#[test]
fn classify_vectors() {
    for (v, want) in [
        ("0,0,1", "isotropic"),
        ("1,0,0", "spacelike"),
        ("0,1,0", "timelike"),
        ("1,-1,5", "lightlike"),
    ] {
        let o = run(&["classify", "--vector", v]);
        assert_eq!(code(&o), 0, "{v}");
        assert_eq!(stdout(&o).trim(), want, "{v}");
    }
}

#[test]
fn classify_lightlike_curve_reports_plane() {
    let o = run(&["classify", "--curve", "s,s,s^3", "--range", "-1:1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "lightlike, plane x-y=0");
}

#[test]
fn classify_mixed_causality_exits_2() {
    let o = run(&["classify", "--curve", "s,s^2,0", "--range", "0:1"]);
    assert_eq!(code(&o), 2, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn parse_error_exits_1_with_offset() {
    let o = run(&["parse", "x*-", "--vars", "x"]);
    assert_eq!(code(&o), 1);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("offset 2"), "{err}");

    let o = run(&["classify", "--curve", "cosh(s),sinh(s),q", "--range", "0:1"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn parse_dumps_tree_and_jets() {
    let o = run(&["parse", "cosh(s)", "--vars", "s", "--at", "0"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("Unary cosh"), "{out}");
    assert!(out.contains("Var s"), "{out}");
    assert!(out.contains("value 1.0 d1 0.0 d2 1.0 d3 0.0"), "{out}");
}

#[test]
fn curve_constant_torsion_three() {
    let o = run(&[
        "curve",
        "--curve",
        "cosh(s),sinh(s),3*s + 0.5*exp(s) - 0.25*exp(-s) + 1",
        "--range",
        "-1:1",
        "-n",
        "41",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.starts_with("s,x,y,z,kappa,tau,Tx,Ty,Tz,Nx,Ny,Nz\n"));
    let tau = csv_column(&out, "tau");
    assert_eq!(tau.len(), 41);
    for t in tau {
        let t: f64 = t.parse().unwrap();
        assert!((t - 3.0).abs() < 1e-9, "tau = {t}");
    }
}

#[test]
fn curve_unit_hyperbola_is_planar() {
    let o = run(&[
        "curve",
        "--curve",
        "sinh(s),cosh(s),0",
        "--range",
        "0:2",
        "-n",
        "11",
    ]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    for k in csv_column(&out, "kappa") {
        assert!((k.parse::<f64>().unwrap() - 1.0).abs() < 1e-12);
    }
    for t in csv_column(&out, "tau") {
        assert!(t.parse::<f64>().unwrap().abs() < 1e-12);
    }
}

#[test]
fn curve_preconditions() {
    let o = run(&["curve", "--curve", "2*s,0,0"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("arc length"));

    let o = run(&["curve", "--curve", "s,0,0", "-n", "3"]);
    assert_eq!(code(&o), 3);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 4);
    assert!(csv_column(&out, "tau").iter().all(String::is_empty));
}

#[test]
fn surface_graph_csv_and_degenerate_points() {
    let o = run(&["surface", "--graph", "x^2+y^2", "--grid", "3x3"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("u1,u2,x,y,z,g11,g12,g22,h11,h12,h22,K,H\n"));
    for k in csv_column(&out, "K") {
        assert!((k.parse::<f64>().unwrap() + 4.0).abs() < 1e-12);
    }
    assert!(String::from_utf8_lossy(&o.stderr).contains("u1 = x, u2 = y"));

    let o = run(&["surface", "--surface", "u,u,v", "--grid", "2x2"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn revolve_flat_example() {
    let dir = tempfile::tempdir().unwrap();
    let obj = dir.path().join("flat.obj");
    let o = run(&[
        "revolve",
        "--profile",
        "u",
        "--range",
        "1:2",
        "--vrange",
        "0:1",
        "--grid",
        "20x20",
        "--out",
        obj.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let s = json(&o);
    let k = &s["K_stats"];
    let max_abs = k["max"]
        .as_f64()
        .unwrap()
        .abs()
        .max(k["min"].as_f64().unwrap().abs());
    assert!(max_abs < 1e-9, "{max_abs}");
    for key in [
        "family",
        "params",
        "grid",
        "H_stats",
        "max_abs_K_minus_K0",
        "max_abs_H_minus_H0",
        "max_abs_H2_minus_K",
    ] {
        assert!(s.get(key).is_some(), "missing {key}");
    }
    check_obj(&obj, 20, 20);
}

fn check_obj(path: &Path, nu: usize, nv: usize) {
    let text = std::fs::read_to_string(path).unwrap();
    let v = text.lines().filter(|l| l.starts_with("v ")).count();
    let f: Vec<&str> = text.lines().filter(|l| l.starts_with("f ")).collect();
    assert_eq!(v, nu * nv);
    assert_eq!(f.len(), (nu - 1) * (nv - 1));
    let first_v = text.lines().position(|l| l.starts_with("v ")).unwrap();
    let first_f = text.lines().position(|l| l.starts_with("f ")).unwrap();
    assert!(first_v < first_f);
    for line in f {
        let idx: Vec<usize> = line[2..].split(' ').map(|t| t.parse().unwrap()).collect();
        assert_eq!(idx.len(), 4);
        assert!(idx.iter().all(|&i| (1..=v).contains(&i)));
    }
}

#[test]
fn revolve_constant_mean_curvature_two() {
    let o = run(&[
        "revolve",
        "--family",
        "constant-h",
        "--h0",
        "2",
        "--c1",
        "1",
        "--c2",
        "0",
        "--range",
        "1:2",
        "--vrange",
        "-1:1",
    ]);
    assert_eq!(code(&o), 0);
    let s = json(&o);
    for key in ["min", "max", "mean"] {
        assert!((s["H_stats"][key].as_f64().unwrap() - 2.0).abs() < 1e-8);
    }
    assert!(s["max_abs_H_minus_H0"].as_f64().unwrap() < 1e-8);
    assert_eq!(s["pass"], true);
}

#[test]
fn revolve_parabolic_sphere_passes() {
    let o = run(&[
        "revolve",
        "--family",
        "parabolic-sphere",
        "--c1",
        "2",
        "--grid",
        "30x30",
    ]);
    assert_eq!(code(&o), 0);
    let s = json(&o);
    assert_eq!(s["pass"], true);
    assert!(s["max_abs_H2_minus_K"].as_f64().unwrap() < 1e-8);
    assert!(s["negative_control"].as_f64().unwrap() > 1e-8);
}

#[test]
fn revolve_empty_domain_exits_2() {
    let o = run(&[
        "revolve",
        "--family",
        "constant-k",
        "--k0",
        "-1",
        "--c1",
        "1",
        "--range",
        "1:2",
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn revolve_obj_matches_surface_evaluation() {
    let dir = tempfile::tempdir().unwrap();
    let obj = dir.path().join("k.obj");
    let o = run(&[
        "revolve",
        "--family",
        "constant-k",
        "--k0",
        "1",
        "--c1",
        "1",
        "--grid",
        "7x5",
        "--out",
        obj.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let fam = ProfileFamily::constant_k(1.0, 1.0, 0.0);
    let sj = make_revolution(&solve_profile(&fam, (1.0, 2.0)).unwrap(), (-1.0, 1.0));
    let text = std::fs::read_to_string(&obj).unwrap();
    let verts: Vec<[f64; 3]> = text
        .lines()
        .filter(|l| l.starts_with("v "))
        .map(|l| {
            let c: Vec<f64> = l[2..].split(' ').map(|t| t.parse().unwrap()).collect();
            [c[0], c[1], c[2]]
        })
        .collect();
    let mut k = 0;
    for i in 0..7 {
        let u = 1.0 + i as f64 / 6.0;
        for j in 0..5 {
            let v = -1.0 + 2.0 * j as f64 / 4.0;
            let r = sj.eval(u, v).unwrap().r.to_array();
            assert_eq!(verts[k], r, "vertex {k}");
            k += 1;
        }
    }
}

#[test]
fn verify_suite_passes_and_unattainable_tolerance_fails() {
    let o = run(&["verify", "--suite", "paper"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let s = json(&o);
    assert_eq!(s["pass"], true);
    let checks = s["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 14);
    for c in checks {
        for key in ["name", "reference", "measured", "tolerance", "pass"] {
            assert!(c.get(key).is_some(), "missing {key}");
        }
    }

    let o = run(&["verify", "--suite", "paper", "--tol", "1e-30"]);
    assert_eq!(code(&o), 4);
    assert_eq!(json(&o)["pass"], false);
}

#[test]
fn verify_list_and_filters() {
    let o = run(&["verify", "--list"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 14);
    assert!(out.contains("parabolic_sphere"));

    let o = run(&["verify", "--check", "torsion_law", "--check", "profile_ode"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["checks"].as_array().unwrap().len(), 2);

    assert_eq!(code(&run(&["verify", "--check", "nope"])), 2);
    assert_eq!(code(&run(&["verify", "--suite", "other"])), 2);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let cases: [&[&str]; 4] = [
        &["curve", "--curve", "cosh(s),sinh(s),s^2", "--range", "-1:1"],
        &["surface", "--surface", "u,v,u*v", "--format", "json"],
        &[
            "revolve",
            "--family",
            "constant-k",
            "--k0",
            "2",
            "--c1",
            "-1",
            "--range",
            "1:1.9",
        ],
        &[
            "verify",
            "--check",
            "motion_invariance",
            "--check",
            "jet_vs_finite_difference",
        ],
    ];
    for args in cases {
        let a = run(args);
        let b = run(args);
        assert_eq!(code(&a), code(&b));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn bad_ranges_and_grids_exit_2() {
    assert_eq!(
        code(&run(&["curve", "--curve", "s,0,0", "--range", "1:1"])),
        2
    );
    assert_eq!(code(&run(&["surface", "--graph", "x", "--grid", "1x5"])), 2);
}
