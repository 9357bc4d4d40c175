//! The `ztc` binary end to end.

mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use common::root;

fn ztc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ztc"))
        .args(args)
        .env_remove("ZTC_SOLVER_BIN")
        .current_dir(root())
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const ENUM_SPEC: &str = "free STATUS ::= normal | failure;\nspec One { x : STATUS | x = normal }\n";

#[test]
fn check_accepts_the_corpus() {
    let o = ztc(&["check", "corpus/launch_vehicle.ztc", "corpus/toolkit.ztc"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("24 of 24 specs ok"));
}

#[test]
fn check_reports_undeclared_variables() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.ztc", "spec S { x : INT | y = 1 }\n");
    let o = ztc(&["check", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.contains("undeclared variable `y`"), "{err}");
}

#[test]
fn check_warns_on_empty_files() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "empty.ztc", "-- nothing here\n");
    let o = ztc(&["check", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("no specs"));
}

#[test]
fn missing_files_are_environment_errors() {
    assert_eq!(ztc(&["check", "no/such/file.ztc"]).status.code(), Some(2));
    assert_eq!(ztc(&["solve", "no/such/file.ztc"]).status.code(), Some(2));
    assert_eq!(ztc(&["solve", "--fss", "0", "corpus/toolkit.ztc"]).status.code(), Some(2));
    assert_eq!(ztc(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn solve_finds_and_verifies_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "one.ztc", ENUM_SPEC);
    let json = dir.path().join("r.json");
    let o = ztc(&["solve", "--json", json.to_str().unwrap(), f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    let row = &report["rows"][0];
    assert_eq!(row["result"], "witness");
    assert_eq!(row["detail"], "verified");
    assert_eq!(row["witness"]["bindings"]["x"], "normal");
    assert_eq!(report["totals"]["witness"], 1);
    assert_eq!(report["totals"]["total"], 1);
}

#[test]
fn solve_respects_max() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "two.ztc", "free S ::= a | b;\nspec T { x, y : S | x /= y }\n");
    let o = ztc(&["solve", "--max", "1", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("capped"), "{}", stdout(&o));
}

#[test]
fn emit_writes_one_script_per_spec() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = ztc(&["emit", "--dialect", "cvc3", "--variant", "--out", out.to_str().unwrap(), "corpus/toolkit.ztc"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(std::fs::read_dir(&out).unwrap().count(), 24);
    let s = std::fs::read_to_string(out.join("Fset_Basic.cvc3.cvc")).unwrap();
    assert!(s.contains("DATATYPE PID = PID1 | PID2 | PID3 END;"));
}

#[test]
fn emit_records_unsupported_specs() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "nested.ztc", "spec N { f : INT pfun (seq INT) | f = f }\n");
    let o = ztc(&["emit", "--dialect", "yices", "--out", dir.path().to_str().unwrap(), f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("error"), "{}", stdout(&o));
    assert!(stdout(&o).contains("no embedding"));
}

fn emitted_script(dir: &Path, dialect: &str) -> PathBuf {
    let o = ztc(&["emit", "--dialect", dialect, "--out", dir.to_str().unwrap(), "corpus/launch_vehicle.ztc"]);
    assert_eq!(o.status.code(), Some(0));
    dir.join(format!("DetectReferenceEvent_NR_18.{dialect}.{}", if dialect == "yices" { "ys" } else { "cvc" }))
}

#[test]
fn reconstruct_a_yices_model() {
    let dir = tempfile::tempdir().unwrap();
    let script = emitted_script(dir.path(), "yices");
    let model = root().join("tests/golden/models/handwritten/DetectReferenceEvent_NR_18.yices.sat");
    let o = ztc(&["reconstruct", script.to_str().unwrap(), model.to_str().unwrap(), "corpus/launch_vehicle.ztc"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("origin: solver-model, verdict: satisfied"), "{out}");
    assert!(out.contains("ot = {ThrustDrop1E |-> 3}"));
    assert!(out.contains("tli = {LiftOff |-> 2, ThrustDrop1E |-> 5, ThrustDrop2E |-> 4, ThrustDrop3E |-> 10}"));
}

#[test]
fn reconstruct_a_potential_witness_as_json() {
    let dir = tempfile::tempdir().unwrap();
    let script = emitted_script(dir.path(), "cvc3");
    let model = root().join("tests/golden/models/handwritten/DetectReferenceEvent_NR_18.cvc3.unknown");
    let o = ztc(&["reconstruct", "--json", script.to_str().unwrap(), model.to_str().unwrap(), "corpus/launch_vehicle.ztc"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let w: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(w["origin"], "solver-potential");
    assert_eq!(w["status"], "unknown");
    assert_eq!(w["verified"], true);
}

#[test]
fn reconstruct_against_the_wrong_spec() {
    let dir = tempfile::tempdir().unwrap();
    let script = emitted_script(dir.path(), "yices");
    let model = root().join("tests/golden/models/handwritten/DetectReferenceEvent_NR_18.yices.sat");
    let o = ztc(&[
        "reconstruct",
        "--spec",
        "DetectReferenceEvent_NR_19",
        script.to_str().unwrap(),
        model.to_str().unwrap(),
        "corpus/launch_vehicle.ztc",
    ]);
    // every NR_19 variable is bound by the NR_18 model, but NR_19 wants a failure state
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: failed"), "{}", stdout(&o));

    let f = write(dir.path(), "both.ztc", &(std::fs::read_to_string(root().join("corpus/launch_vehicle.ztc")).unwrap()
        + "\nspec Other { zz : STATUS | zz = normal }\n"));
    let o = ztc(&["reconstruct", "--spec", "Other", script.to_str().unwrap(), model.to_str().unwrap(), f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("model has no value for `zz`"), "{}", stderr(&o));
}

#[test]
fn run_solver_without_a_binary() {
    let o = ztc(&["run-solver", "--dialect", "yices", "corpus/toolkit.ztc"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("ZTC_SOLVER_BIN"));
    let o = ztc(&["run-solver", "--dialect", "yices", "--solver-bin", "/no/such/solver", "corpus/toolkit.ztc"]);
    assert_eq!(o.status.code(), Some(2));
}

#[cfg(unix)]
fn fake_solver(dir: &Path, body: &str) -> PathBuf {
    use std::os::unix::fs::PermissionsExt;
    let p = write(dir, "solver.sh", &format!("#!/bin/sh\n{body}\n"));
    std::fs::set_permissions(&p, std::fs::Permissions::from_mode(0o755)).unwrap();
    p
}

#[cfg(unix)]
#[test]
fn run_solver_with_a_stand_in_binary() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "one.ztc", ENUM_SPEC);
    // answers like a solver would for the one-assert script it is handed
    let bin = fake_solver(dir.path(), "grep -q '(assert (= x normal))' \"$1\" && printf 'sat\\n(= x normal)\\n'");
    let json = dir.path().join("r.json");
    let out = dir.path().join("scripts");
    let o = Command::new(env!("CARGO_BIN_EXE_ztc"))
        .args(["run-solver", "--dialect", "yices", "--out", out.to_str().unwrap(), "--json", json.to_str().unwrap()])
        .arg(&f)
        .env("ZTC_SOLVER_BIN", &bin)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(report["rows"][0]["result"], "sat");
    assert_eq!(report["rows"][0]["detail"], "verified");
    assert_eq!(report["totals"]["sat"], 1);
    assert!(out.join("One.yices.ys").exists());
}

#[cfg(unix)]
#[test]
fn zero_timeout_times_out_every_spec() {
    let dir = tempfile::tempdir().unwrap();
    let bin = fake_solver(dir.path(), "sleep 5; echo sat");
    let o = ztc(&[
        "run-solver",
        "--dialect",
        "cvc3",
        "--timeout",
        "0",
        "--solver-bin",
        bin.to_str().unwrap(),
        "--out",
        dir.path().join("s").to_str().unwrap(),
        "corpus/launch_vehicle.ztc",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert_eq!(out.matches("timeout").count(), 4, "{out}");
    assert!(out.contains("error=4"));
}
