use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qudit-eraser"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn rows(out: &Output) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    r.records()
        .map(|rec| rec.unwrap().iter().map(str::to_owned).collect())
        .collect()
}

fn header(out: &Output) -> Vec<String> {
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    r.headers().unwrap().iter().map(str::to_owned).collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn duality_three_points() {
    let out = run(&["duality", "--points", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(header(&out), ["alpha", "V", "D", "D2_plus_V2", "H_path_given_Ms", "I_path_Ms"]);
    let r = rows(&out);
    assert_eq!(r.len(), 3);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for (row, (v, d)) in r.iter().zip([(1.0, 0.0), (h, h), (0.0, 1.0)]) {
        assert!((num(&row[1]) - v).abs() < 1e-11);
        assert!((num(&row[2]) - d).abs() < 1e-11);
        assert!((num(&row[3]) - 1.0).abs() < 1e-12);
    }
}

#[test]
fn bad_sweeps_are_usage_errors() {
    for args in [
        &["duality", "--start", "1", "--stop", "1"][..],
        &["figure3", "--start", "pi", "--stop", "0"],
        &["duality", "--points", "1"],
        &["duality", "--stop", "banana"],
        &["erase"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn figure3_default_sweep_verifies() {
    let out = run(&["figure3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = rows(&out);
    assert_eq!(r.len(), 33);
    for row in &r {
        assert!((num(&row[2]) - 1.0).abs() < 1e-9);
        assert!(num(&row[6]) < 1e-6);
    }
    // endpoints: identity holds to float noise
    assert!(num(&r[0][6]) < 1e-12 && num(&r[32][6]) < 1e-12);
}

#[test]
fn figure3_random_orientation() {
    let out = run(&["figure3", "--beta", "1.234", "--gamma", "5.1", "--points", "9"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(rows(&out).iter().all(|row| num(&row[6]) < 1e-6));
}

#[test]
fn output_is_deterministic() {
    let a = run(&["figure3", "--points", "17"]);
    let b = run(&["figure3", "--points", "17"]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["qudit-demo", "--seed", "7", "--points", "500"]);
    let b = run(&["qudit-demo", "--seed", "7", "--points", "500"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("qudit-eraser-{}.csv", std::process::id()));
    let out = run(&["duality", "--points", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert!(text.starts_with("alpha,V,D,"));
}

#[test]
fn average_e_is_chi_independent() {
    let out = run(&["average-e", "--panels", "512"]);
    assert_eq!(out.status.code(), Some(0));
    let r = rows(&out);
    assert_eq!(r.len(), 8);
    for row in &r {
        assert!((num(&row[1]) - 0.389).abs() < 1e-3);
    }
    let odd = run(&["average-e", "--panels", "63"]);
    assert_eq!(odd.status.code(), Some(2));
}

#[test]
fn erase_exit_codes() {
    let ok = run(&["erase", "--alpha", "0.75pi"]);
    assert_eq!(ok.status.code(), Some(0));
    let r = rows(&ok);
    assert!(num(&r[0][10]) < 1e-6);
    // a deliberately poor erasing basis breaks the identity
    let bad = run(&["erase", "--alpha", "0.75pi", "--chi", "1"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(rows(&bad).len(), 1);
}

#[test]
fn michelson_extreme_case() {
    let out = run(&["michelson", "--eta", "pi"]);
    assert_eq!(out.status.code(), Some(0));
    let h = header(&out);
    let r = &rows(&out)[0];
    let col = |name: &str| num(&r[h.iter().position(|c| c == name).unwrap()]);
    assert!(col("V") < 1e-12);
    assert!((col("V_erased_1") - 1.0).abs() < 1e-9 && (col("V_erased_2") - 1.0).abs() < 1e-9);
    assert!(col("energy_basis_angle") < 1e-3);
    assert!(col("identity_residual") < 1e-6);
}

#[test]
fn michelson_from_cavity() {
    // photon on the bare resonance, dressed mode 20κ away (Δ in angular units)
    let kappa = 1.0e3;
    let fc = 1.0e9 + 20.0 * kappa / (2.0 * std::f64::consts::PI);
    let out = run(&[
        "michelson",
        "--f0",
        "1e9",
        "--f-uncoupled",
        "1e9",
        "--f-coupled",
        &fc.to_string(),
        "--kappa",
        &kappa.to_string(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let eta = num(&rows(&out)[0][0]);
    assert!((eta - std::f64::consts::PI).abs() < 0.1, "η = {eta}");
}

#[test]
fn michelson_near_product_state() {
    let out = run(&["michelson", "--eta", "0.01"]);
    assert_eq!(out.status.code(), Some(0));
    let h = header(&out);
    let r = &rows(&out)[0];
    let i = num(&r[h.iter().position(|c| c == "I_path_Ms").unwrap()]);
    assert!(i < 1e-3);
}

#[test]
fn michelson_input_modes_are_exclusive() {
    assert_eq!(run(&["michelson"]).status.code(), Some(2));
    assert_eq!(run(&["michelson", "--eta", "pi", "--kappa", "1"]).status.code(), Some(2));
    assert_eq!(run(&["michelson", "--f0", "1", "--kappa", "1"]).status.code(), Some(2));
    assert_eq!(run(&["michelson", "--eta", "0"]).status.code(), Some(2));
}

#[test]
fn qudit_demo_runs() {
    let out = run(&["qudit-demo", "--dim", "4", "--seed", "3", "--points", "1000"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &rows(&out)[0];
    assert_eq!(r[0], "4");
    assert!((num(&r[7]) - 1.0).abs() < 1e-10);
    assert_eq!(run(&["qudit-demo", "--dim", "1"]).status.code(), Some(2));
}

#[test]
fn angles_in_pi_units() {
    let a = run(&["erase", "--alpha", "3pi/4"]);
    let b = run(&["erase", "--alpha", "2.356194490192345"]);
    assert_eq!(a.stdout, b.stdout);
}
