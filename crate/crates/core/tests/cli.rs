use std::process::{Command, Output};

use beilinson_hh::cli::HilbertReport;
use beilinson_hh::grothendieck::K0Report;
use beilinson_hh::hochschild::SweepRow;
use beilinson_hh::resolution::ResolutionReport;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_beilinson-hh"))
        .args(args)
        .env_remove("BEILINSON_HH_MAX_N")
        .output()
        .expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn sweep_two_to_three_has_seven_rows() {
    let o = bin(&["sweep", "--n-min", "2", "--n-max", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<SweepRow> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().all(SweepRow::agrees));
    for n in [2, 3] {
        let euler: Vec<i64> =
            rows.iter().filter(|r| r.n == n).map(|r| r.report.as_ref().unwrap().brute.euler()).collect();
        assert!(euler.windows(2).all(|w| w[0] == w[1]));
    }
}

#[test]
fn sweep_n1_has_three_rows() {
    let o = bin(&["sweep", "--n-min", "1", "--n-max", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 4);
    assert!(stdout(&o).contains("ALPHA_ZERO"));
}

#[test]
fn sweep_cap_from_environment() {
    let exe = env!("CARGO_BIN_EXE_beilinson-hh");
    let capped = Command::new(exe).args(["sweep", "--n-max", "3"]).env("BEILINSON_HH_MAX_N", "2").output().unwrap();
    assert_eq!(capped.status.code(), Some(2));
    let raised = Command::new(exe)
        .args(["sweep", "--n-min", "6", "--n-max", "6", "--format", "json"])
        .env("BEILINSON_HH_MAX_N", "6")
        .output()
        .unwrap();
    assert_eq!(raised.status.code(), Some(0));
    let rows: Vec<SweepRow> = serde_json::from_slice(&raised.stdout).unwrap();
    let delta = rows.iter().find(|r| r.case.as_str() == "DELTA_ZERO").unwrap();
    assert!(!delta.exercised);
}

#[test]
fn resolution_json() {
    let o = bin(&["resolution", "--n", "2", "--alpha", "1", "--beta", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: ResolutionReport = serde_json::from_slice(&o.stdout).unwrap();
    assert!(r.exact && r.minimal);
    assert_eq!(r.dims.lambda, 41);
    let o = bin(&["resolution", "--n", "3", "--alpha", "0", "--beta", "1", "--format", "json"]);
    let r: ResolutionReport = serde_json::from_slice(&o.stdout).unwrap();
    assert!(r.exact);
}

#[test]
fn grothendieck_json() {
    let get = |n: &str, a: &str| -> K0Report {
        let o = bin(&["grothendieck", "--n", n, "--alpha", a, "--beta", "1", "--format", "json"]);
        assert_eq!(o.status.code(), Some(0));
        serde_json::from_slice(&o.stdout).unwrap()
    };
    let r = get("2", "0");
    assert!(r.unipotent);
    assert_eq!((r.neg_trace_coxeter.to_string(), r.euler_hh), ("6".to_string(), 6));
    let r = get("3", "1");
    assert!(!r.unipotent);
    assert_eq!(r.neg_trace_coxeter.to_string(), "5");
    assert_eq!(get("1", "1").neg_trace_coxeter.to_string(), "4");
}

#[test]
fn hilbert_json_and_table() {
    let o = bin(&["hilbert", "--n", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: HilbertReport = serde_json::from_slice(&o.stdout).unwrap();
    assert!(r.ok);
    assert!(r.blocks.iter().filter(|b| b.degree == 5).all(|b| b.basis == 3));
    let table = stdout(&bin(&["hilbert", "--n", "2"]));
    assert!(table.contains("  1 1 2 3 4 5\n"));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("beilinson-hh-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let path_str = path.to_str().unwrap();
    let o = bin(&["compute", "--n", "2", "--alpha", "2", "--beta", "-1", "--format", "json", "--out", path_str]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"case\": \"DISC_ZERO\""));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors() {
    assert_eq!(bin(&["compute", "--n", "2", "--alpha", "1", "--beta", "0"]).status.code(), Some(2));
    assert_eq!(bin(&["compute", "--n", "2", "--alpha", "1", "--beta", "1", "--d", "4"]).status.code(), Some(2));
    assert_eq!(bin(&["compute", "--n", "2", "--alpha", "1+sqrt(5)", "--beta", "1"]).status.code(), Some(2));
    assert_eq!(bin(&["hilbert", "--n", "0"]).status.code(), Some(2));
    assert_eq!(bin(&[]).status.code(), Some(2));
}

#[test]
fn quadratic_scalars_carry_their_field() {
    let o = bin(&["compute", "--n", "2", "--alpha", "2", "--beta", "-1", "--d", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("2+0*sqrt(5)"));
}
