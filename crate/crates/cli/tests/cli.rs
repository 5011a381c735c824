//! End-to-end behaviour of the `fho` binary and its library entry point.

use std::path::Path;
use std::process::Command;

use fho::cli::Command as Sub;
use fho::formats::{self, parse_json, read_strichartz_csv, read_table};
use fho::parse_args;
use tempfile::TempDir;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fho").chain(args.iter().copied());
    let code = fho::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn bin(args: &[&str], env: &[(&str, &str)]) -> std::process::Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_fho"));
    c.args(args).env_remove("FHO_SEED").env_remove("FHO_THREADS");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).display().to_string()
}

fn read(p: &str) -> String {
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn decay_scan_example_is_a_valid_config() {
    let inv = parse_args(["fho", "decay-scan", "--dim", "1", "--beta", "1", "--p", "1", "--q", "inf"]).unwrap();
    let Sub::DecayScan(a) = inv.config.command else { panic!("wrong subcommand") };
    assert_eq!((a.dim, a.beta, a.p, a.q), (1, 1.0, 1.0, f64::INFINITY));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["solve", "--gamma", "0.5"]).0, 4);
    assert_eq!(run(&["propagate", "--route", "mehler", "--beta", "0.5"]).0, 4);
    assert_eq!(run(&["decay-scan", "--p", "0.5"]).0, 4);
    assert_eq!(run(&["decay-scan", "--bogus", "1"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["decay-scan", "--dim", "abc"]).0, 3);
    assert_eq!(run(&["propagate", "--route", "heat"]).0, 3);
    assert_eq!(run(&["propagate", "--input", "/nonexistent/in.csv"]).0, 5);
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("missing").join("s.csv").display().to_string();
    assert_eq!(run(&["subcheck", "--out", &out]).0, 5);
    // Mehler cannot resolve t = 1e-4 on the default grid
    assert_eq!(run(&["propagate", "--route", "mehler", "--t", "1e-4"]).0, 6);
}

#[test]
fn print_config_round_trips() {
    let cases: [&[&str]; 6] = [
        &["propagate", "--route", "mehler", "--t", "0.3", "--out", "x.csv"],
        &["decay-scan", "--q", "inf", "--p", "2", "--seed", "9", "--t-min", "0.002"],
        &["solve", "--gamma", "2.5", "--u0", "gaussian:amp=3,width=0.5", "--p", "inf"],
        &["strichartz", "--r", "1.5", "--count", "4"],
        &["subcheck", "--t", "0.1,0.2", "--u", "3"],
        &["selftest"],
    ];
    for args in cases {
        let (code, printed, _) = run(&[args, &["--print-config"][..]].concat());
        assert_eq!(code, 0);
        let reparsed = parse_args(printed.split_whitespace()).unwrap();
        let original = parse_args(std::iter::once("fho").chain(args.iter().copied())).unwrap();
        assert_eq!(reparsed.config, original.config, "{printed}");
    }
}

#[test]
fn config_file_merges_and_cli_wins() {
    let dir = TempDir::new().unwrap();
    let cfg = path(&dir, "run.toml");
    std::fs::write(&cfg, "dim = 2\nbeta = 0.5\nt_min = 0.01\nq = \"inf\"\nnum-t = 11\n").unwrap();
    let inv = parse_args(["fho", "decay-scan", "--config", &cfg, "--beta", "2"]).unwrap();
    let Sub::DecayScan(a) = inv.config.command else { panic!("wrong subcommand") };
    assert_eq!((a.dim, a.beta, a.t_min, a.num_t), (2, 2.0, 0.01, 11));
    assert_eq!(a.q, f64::INFINITY);

    std::fs::write(&cfg, "dimension = 2\n").unwrap();
    assert_eq!(run(&["decay-scan", "--config", &cfg]).0, 2);
    std::fs::write(&cfg, "dim = \"two\"\n").unwrap();
    assert_eq!(run(&["decay-scan", "--config", &cfg]).0, 3);
    assert_eq!(run(&["decay-scan", "--config", &path(&dir, "absent.toml")]).0, 5);
}

#[test]
fn decay_scan_outputs_are_deterministic_and_readable() {
    let dir = TempDir::new().unwrap();
    let args = |csv: &str, json: &str| {
        vec![
            "decay-scan".to_string(), "--modes".into(), "16".into(), "--num-t".into(), "25".into(),
            "--t-min".into(), "0.01".into(), "--out".into(), csv.into(), "--summary".into(), json.into(),
        ]
    };
    let (a, b) = (path(&dir, "a.csv"), path(&dir, "b.csv"));
    let (aj, bj) = (path(&dir, "a.json"), path(&dir, "b.json"));
    let one = bin(&args(&a, &aj).iter().map(String::as_str).collect::<Vec<_>>(), &[("FHO_THREADS", "1")]);
    let four = bin(&args(&b, &bj).iter().map(String::as_str).collect::<Vec<_>>(), &[("FHO_THREADS", "4")]);
    assert!(one.status.success() && four.status.success());
    assert_eq!(read(&a), read(&b));
    assert_eq!(read(&aj), read(&bj));

    let rows = read_table(&read(&a), &formats::SCAN_HEADER).unwrap();
    assert_eq!(rows.len(), 25);
    assert!(rows.iter().all(|r| r[1] > 0.0));
    let summary = parse_json(&read(&aj)).unwrap();
    assert_eq!(summary["sigma_expected"], 0.5);
    let slope = summary["fitted_small_t_slope"].as_f64().unwrap();
    assert!((slope + 0.5).abs() < 0.05, "{slope}");
}

#[test]
fn seed_comes_from_flag_or_environment() {
    let scan = |extra: &[&str], env: &[(&str, &str)]| {
        let mut args = vec!["decay-scan", "--modes", "8", "--num-t", "19", "--t-min", "0.01", "--p", "2", "--q", "2"];
        args.extend_from_slice(extra);
        let o = bin(&args, env);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        String::from_utf8(o.stdout).unwrap()
    };
    let default = scan(&[], &[]);
    assert_eq!(default, scan(&["--seed", "42"], &[]));
    assert_eq!(scan(&[], &[("FHO_SEED", "7")]), scan(&["--seed", "7"], &[]));
    assert_eq!(scan(&["--seed", "42"], &[("FHO_SEED", "7")]), default);
    assert!(!bin(&["decay-scan"], &[("FHO_SEED", "x")]).status.success());
}

#[test]
fn propagate_round_trips_through_files() {
    let dir = TempDir::new().unwrap();
    let (spec_out, grid_in, grid_out) = (path(&dir, "s.csv"), path(&dir, "g.csv"), path(&dir, "g2.csv"));
    assert_eq!(run(&["propagate", "--modes", "6", "--t", "0.5", "--out", &spec_out]).0, 0);
    let f = formats::read_spectral_csv(&read(&spec_out)).unwrap();
    // e^{-0.5H}Φ_0 = e^{-0.5}Φ_0
    assert!((f.coeff(&[0]).unwrap().re - (-0.5f64).exp()).abs() < 1e-15);

    std::fs::write(&grid_in, formats::write_grid_csv(&f.synthesize())).unwrap();
    let code = run(&["propagate", "--route", "mehler", "--t", "0.5", "--modes", "6", "--input", &grid_in, "--out", &grid_out]).0;
    assert_eq!(code, 0);
    let g = formats::read_grid_csv(&read(&grid_out)).unwrap();
    let expected = f.synthesize().scaled(fho_core::Complex::new((-0.5f64).exp(), 0.0));
    assert!(g.max_abs_diff(&expected).unwrap() < 1e-6);
    assert_eq!(run(&["propagate", "--dim", "2", "--input", &grid_in]).0, 4);
}

#[test]
fn solve_reports_blow_up() {
    let dir = TempDir::new().unwrap();
    let (csv, json) = (path(&dir, "traj.csv"), path(&dir, "sum.json"));
    let phi0_amp = format!("gaussian:amp={},width=1", 10.0 * std::f64::consts::PI.powf(-0.25));
    let code = run(&[
        "solve", "--gamma", "3", "--p", "4", "--u0", &phi0_amp, "--t-end", "1", "--dt", "1e-4",
        "--out", &csv, "--summary", &json,
    ]).0;
    assert_eq!(code, 0);
    let s = parse_json(&read(&json)).unwrap();
    assert_eq!(s["status"], "blew_up");
    let t = s["t_max_est"].as_f64().unwrap();
    assert!(t > 0.0089 && t < 0.0091, "{t}");
    assert!(s["fitted_blowup_exponent"].as_f64().unwrap() <= -0.275);
    let rows = read_table(&read(&csv), &formats::TRAJECTORY_HEADER).unwrap();
    assert!(rows.last().unwrap()[0] < t);
}

#[test]
fn solve_with_coefficient_file() {
    let dir = TempDir::new().unwrap();
    let coeffs = path(&dir, "u0.csv");
    std::fs::write(&coeffs, "alpha1,re,im\n0,0.01,0\n1,0,0\n2,0.002,0\n").unwrap();
    let (code, out, _) = run(&["solve", "--u0", &format!("coeffs:{coeffs}"), "--t-end", "0.5", "--dt", "0.1"]);
    assert_eq!(code, 0);
    let mut parts = out.splitn(2, '{');
    let csv = parts.next().unwrap();
    let rows = read_table(csv, &formats::TRAJECTORY_HEADER).unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(parse_json(&format!("{{{}", parts.next().unwrap())).unwrap()["status"], "completed");
}

#[test]
fn strichartz_and_subcheck_tables() {
    let dir = TempDir::new().unwrap();
    let s = path(&dir, "s.csv");
    assert_eq!(run(&["strichartz", "--t-end", "5", "--out", &s]).0, 0);
    let rows = read_strichartz_csv(&read(&s)).unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.stable && r.r == 2.0 && r.sup_ratio.is_finite()));
    assert_eq!(rows[2].p, f64::INFINITY);

    let (code, out, _) = run(&["subcheck"]);
    assert_eq!(code, 0);
    let rows = read_table(&out, &formats::SUBCHECK_HEADER).unwrap();
    assert_eq!(rows.len(), 15);
    assert!(rows.iter().all(|r| r[4] <= 1e-8));
}

#[test]
fn selftest_passes() {
    let dir = TempDir::new().unwrap();
    let p = path(&dir, "report.json");
    assert_eq!(run(&["selftest", "--out", &p]).0, 0);
    let report = parse_json(&read(&p)).unwrap();
    assert_eq!(report["pass"], true);
    let ids: Vec<i64> = report["criteria"].as_array().unwrap().iter().map(|c| c["id"].as_i64().unwrap()).collect();
    assert_eq!(ids, [1, 3, 5]);
    assert!(Path::new(&p).exists());
}
