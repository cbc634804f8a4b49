use std::process::{Command, Output};

use qcanon::laurent::IntLaurent;
use qcanon::ratfunc::{inv_one_minus_v2_pow, RatFunc};
use qcanon_cli::report::{Report, SCHEMA};

fn qcanon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcanon"))
        .args(args)
        .env_remove("QCANON_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn report(args: &[&str]) -> Report {
    let o = qcanon(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).expect("valid report JSON")
}

fn lp(s: &str) -> IntLaurent {
    s.parse().unwrap()
}

#[test]
fn canbase_p_q_json() {
    let r = report(&["canbase", "--dimvec", "1,2,1", "--emit", "p,q", "--format", "json"]);
    assert_eq!(r.schema, SCHEMA);
    assert_eq!(r.partitions.len(), 5);
    assert_eq!(r.partitions[4].partition.mult(), [0, 0, 1, 1, 0, 0]);
    let p = r.p.unwrap();
    assert_eq!(p.get(3, 0), &lp("v^-1 + v^-3"));
    assert_eq!(p.get(4, 0), &lp("v^-4"));
    let q = r.q.unwrap();
    assert!(q.get(1, 0).is_one() && q.get(4, 2).is_one() && q.get(4, 0).is_zero());
    assert!(r.psi.is_none());
}

#[test]
fn json_output_round_trips() {
    let o = qcanon(&[
        "hecke", "--dimvec", "1,2,1", "--emit",
        "kp,orbits,patterns,psi,l,d,p,q,multiplicities,h,f,dims,intersections",
    ]);
    let text = stdout(&o);
    let r: Report = serde_json::from_str(&text).unwrap();
    let again: Report = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(again, r);
    assert_eq!(r.intersections.unwrap().len(), 24);
}

#[test]
fn canbase_psi_for_2_2() {
    let r = report(&["canbase", "--dimvec", "2,2", "--emit", "psi"]);
    let psi = r.psi.unwrap();
    assert_eq!(psi.get(1, 1), &inv_one_minus_v2_pow(4));
    let g = qcanon::ratfunc::cyclotomic_product(&[(1, 2), (2, 2)]);
    assert_eq!(psi.get(0, 2), &RatFunc::new(lp("v^-4"), g).unwrap());
}

#[test]
fn canbase_trivial_weight() {
    let r = report(&["canbase", "--dimvec", "1", "--emit", "psi,p"]);
    assert_eq!(r.psi.unwrap().get(0, 0), &inv_one_minus_v2_pow(1));
    assert!(r.p.unwrap().get(0, 0).is_one());
}

#[test]
fn hecke_dims_and_multiplicities() {
    let r = report(&["hecke", "--dimvec", "1,2,1", "--emit", "dims,multiplicities"]);
    let dims: Vec<String> = r.dims.unwrap().iter().map(|x| x.to_string()).collect();
    assert_eq!(dims, ["4", "6", "6", "2", "4"]);
    let m = r.multiplicities.unwrap();
    assert_eq!(m.get(0, 3).to_string(), "2");
    assert_eq!(m.get(1, 2).to_string(), "0");
    assert_eq!(m.get(4, 0).to_string(), "0");
    let r = report(&["hecke", "--dimvec", "1", "--emit", "dims"]);
    assert_eq!(r.dims.unwrap()[0].to_string(), "1");
}

#[test]
fn pretty_and_latex_formats() {
    let o = qcanon(&["canbase", "--dimvec", "2,2", "--emit", "psi", "--format", "pretty"]);
    assert!(stdout(&o).contains("Psi = 1/((1-v^-2)^2(1-v^-4)^2) *"));
    let o = qcanon(&["canbase", "--dimvec", "2,2", "--emit", "d", "--format", "latex"]);
    let text = stdout(&o);
    assert!(text.contains("D = \\frac{1}{(1-v^{-2})^{2}(1-v^{-4})^{2}} \\begin{pmatrix}"), "{text}");
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = qcanon(&["canbase", "--dimvec", "2,2", "--emit", "orbits", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let r: Report = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r.orbits, Some(vec![0, 3, 4]));
}

#[test]
fn worker_count_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_qcanon"))
        .args(["canbase", "--dimvec", "2,2", "--emit", "l"])
        .env("QCANON_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = qcanon(&["canbase", "--dimvec", "2,2", "--workers", "1"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn resource_limit_exit_code() {
    let o = qcanon(&["canbase", "--dimvec", "3,3", "--max-summands", "35"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("resource limit"));
    let o = qcanon(&["hecke", "--dimvec", "1,2,1", "--emit", "dims", "--max-summands", "23"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors() {
    assert_eq!(qcanon(&["canbase", "--dimvec", "1,x"]).status.code(), Some(2));
    assert_eq!(qcanon(&["canbase", "--dimvec", "1", "--emit", "bogus"]).status.code(), Some(2));
    assert_eq!(qcanon(&["canbase", "--dimvec", "1", "--emit", "dims"]).status.code(), Some(2));
    assert_eq!(qcanon(&["canbase"]).status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let o = qcanon(&["selftest"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.contains("PASS v=(1,2,1) simple module dimensions"));
    assert!(text.trim_end().ends_with("passed, 0 failed"));
}

#[test]
fn selftest_list() {
    let o = qcanon(&["selftest", "--list"]);
    let names: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert!(names.contains(&"v=(2,2) Psi".to_string()));
    assert!(names.contains(&"v=(1,2,1) intersections with wn".to_string()));
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn selftest_reports_corrupted_fixture() {
    let mut fixtures: serde_json::Value = serde_json::from_str(qcanon_cli::selftest::BUILTIN).unwrap();
    let fx = fixtures
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|f| f["name"] == "v=(1,2,1) P")
        .unwrap();
    fx["expected"][3][1] = "v^-3".into();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, fixtures.to_string()).unwrap();
    let o = qcanon(&["selftest", "--fixtures", path.to_str().unwrap()]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(1), "{text}");
    assert!(text.contains("FAIL v=(1,2,1) P\n  at [4][2]:\n    - v^-3\n    + v^-1"), "{text}");
    assert!(text.contains("1 failed"));
}
