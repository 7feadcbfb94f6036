//! End-to-end checks of the command-line interface: output shapes,
//! determinism and the documented exit codes.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ldbounds"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary should run")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("ldbounds-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn table_pretty_shows_published_values() {
    let out = run(&["table"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for needle in [
        "224.88", "99.1015", "23.0608", "0.666406", "1.53824", "inf", "2/e",
    ] {
        assert!(
            text.contains(needle),
            "missing {needle} in table output:\n{text}"
        );
    }
}

#[test]
fn table_csv_is_deterministic() {
    let a = run(&["table", "--format", "csv"]);
    let b = run(&["table", "--format", "csv"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "repeated runs must be byte-identical");
    let text = stdout(&a);
    assert!(text.starts_with("c_l,kappa_max,kappa_min\n"));
    assert!(text.contains("0,inf,0.000000000e0"));
    assert_eq!(text.lines().count(), 10);
    assert!(!text.contains('\r'));
}

#[test]
fn curves_and_flatplate_emit_csv() {
    let out = run(&["curves", "--n", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("c_l,c_d_min,c_d_max,kappa_max,kappa_min,epsilon,q1,q2\n"));
    assert_eq!(text.lines().count(), 5);

    let out = run(&["flatplate", "--n", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("alpha,c_l,c_d,kappa\n"));
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn extremal_export_then_eval_round_trip() {
    // published table: C_L = 0.5 has kappa_max = 23.0608
    let csv = tmp_path("min-extremal.csv");
    let out = run(&[
        "extremal",
        "--q",
        "0.25",
        "--branch",
        "min",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let descriptor = stdout(&out);
    assert!(descriptor.contains("branch=min_piecewise"));
    assert!(descriptor.contains("gamma="));

    let out = run(&["eval", "--in", csv.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "eval failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    let kappa_line = text.lines().find(|l| l.starts_with("kappa")).unwrap();
    let kappa: f64 = kappa_line
        .split('=')
        .nth(1)
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!((kappa - 23.0608).abs() / 23.0608 < 1e-3, "kappa = {kappa}");
    let c_l_line = text.lines().find(|l| l.starts_with("C_L")).unwrap();
    let c_l: f64 = c_l_line.split('=').nth(1).unwrap().trim().parse().unwrap();
    assert!((c_l - 0.5).abs() < 1e-4, "C_L = {c_l}");
    assert!(text.contains("admissible"));
    fs::remove_file(csv).ok();

    // max branch: the exported distribution vanishes at sigma = 0, which
    // exercises the singular tabulated drag path on reload
    let csv = tmp_path("max-extremal.csv");
    let out = run(&[
        "extremal",
        "--q",
        "0.3",
        "--branch",
        "max",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("branch=max_upper"));
    let out = run(&["eval", "--in", csv.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "eval failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    let c_l_line = text.lines().find(|l| l.starts_with("C_L")).unwrap();
    let c_l: f64 = c_l_line.split('=').nth(1).unwrap().trim().parse().unwrap();
    assert!((c_l - 0.6).abs() < 2e-3, "C_L = {c_l}");
    fs::remove_file(csv).ok();
}

#[test]
fn eval_unit_distribution_gives_zero_coefficients() {
    let csv = tmp_path("unit.csv");
    let mut body = String::from("sigma,u\n");
    for i in 0..=10 {
        body.push_str(&format!("{},1.0\n", i as f64 / 10.0));
    }
    fs::write(&csv, body).unwrap();
    let out = run(&["eval", "--in", csv.to_str().unwrap(), "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let row = text.lines().nth(1).unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    let c_l: f64 = fields[0].parse().unwrap();
    let c_d: f64 = fields[1].parse().unwrap();
    assert!(c_l.abs() < 1e-12 && c_d.abs() < 1e-12, "{row}");
    assert_eq!(fields[3], "true");
    fs::remove_file(csv).ok();
}

#[test]
fn eval_two_arc_split() {
    let u1 = tmp_path("u1.csv");
    let u2 = tmp_path("u2.csv");
    let mut body = String::from("sigma,u\n");
    for i in 0..=10 {
        body.push_str(&format!("{},0.36787944117144233\n", i as f64 / 10.0));
    }
    fs::write(&u1, &body).unwrap();
    fs::write(&u2, &body).unwrap();
    let out = run(&[
        "eval",
        "--in",
        u2.to_str().unwrap(),
        "--epsilon",
        "0.5",
        "--u1",
        u1.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    let fields: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let c_l: f64 = fields[0].parse().unwrap();
    let c_d: f64 = fields[1].parse().unwrap();
    assert!(c_l.abs() < 1e-10);
    let want = 4.0 / (std::f64::consts::PI * std::f64::consts::E);
    assert!((c_d - want).abs() < 1e-8, "C_D = {c_d}, want {want}");
    fs::remove_file(u1).ok();
    fs::remove_file(u2).ok();
}

#[test]
fn exit_codes_follow_the_documented_mapping() {
    // 2: usage (clap) and flag coupling
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    let csv = tmp_path("coupling.csv");
    fs::write(&csv, "sigma,u\n").unwrap();
    assert_eq!(
        run(&["eval", "--in", csv.to_str().unwrap(), "--epsilon", "0.5"])
            .status
            .code(),
        Some(2)
    );
    fs::remove_file(csv).ok();

    // 3: domain violations
    assert_eq!(
        run(&["extremal", "--q", "0.9", "--branch", "min"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["extremal", "--q", "-0.1", "--branch", "max"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(run(&["curves", "--n", "1"]).status.code(), Some(3));

    // 4: I/O and malformed CSV
    assert_eq!(
        run(&["eval", "--in", "/definitely/not/there.csv"])
            .status
            .code(),
        Some(4)
    );
    let bad = tmp_path("bad.csv");
    fs::write(&bad, "wrong,header\n0,0\n").unwrap();
    assert_eq!(
        run(&["eval", "--in", bad.to_str().unwrap()]).status.code(),
        Some(4)
    );
    fs::write(&bad, "sigma,u\n0.0,0.5\nnot-a-number,0.5\n").unwrap();
    assert_eq!(
        run(&["eval", "--in", bad.to_str().unwrap()]).status.code(),
        Some(4)
    );
    fs::remove_file(bad).ok();
}

#[test]
fn eval_rejects_inadmissible_distribution_with_report() {
    let csv = tmp_path("violating.csv");
    let mut body = String::from("sigma,u\n");
    for i in 0..=10 {
        let s = i as f64 / 10.0;
        body.push_str(&format!("{s},{}\n", 1.0 + s));
    }
    fs::write(&csv, body).unwrap();
    let out = run(&["eval", "--in", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("BRILLOUIN VIOLATION"), "stderr: {err}");
    fs::remove_file(csv).ok();
}

#[test]
fn verify_small_run_passes_and_is_deterministic() {
    let a = run(&[
        "verify",
        "--n",
        "25",
        "--restarts",
        "4",
        "--seed",
        "3",
        "--grid",
        "3",
    ]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let b = run(&[
        "verify",
        "--n",
        "25",
        "--restarts",
        "4",
        "--seed",
        "3",
        "--grid",
        "3",
    ]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("no violations"));

    let csv = run(&[
        "verify",
        "--n",
        "25",
        "--restarts",
        "4",
        "--seed",
        "3",
        "--grid",
        "3",
        "--format",
        "csv",
    ]);
    assert!(csv.status.success());
    let text = stdout(&csv);
    assert!(text.starts_with("q,mode,j_analytic,j_oracle,gap\n"));
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn out_flag_writes_file_instead_of_stdout() {
    let path = tmp_path("curves.csv");
    let out = run(&["curves", "--n", "3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("c_l,"));
    assert_eq!(text.lines().count(), 4);
    fs::remove_file(path).ok();
}
