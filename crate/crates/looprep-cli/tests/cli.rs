//! End-to-end tests of the binary: spawn it, parse its output, check
//! exit codes.

use serde_json::Value;
use std::process::{Command, Output};

fn looprep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_looprep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn payload(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).expect("valid JSON envelope");
    assert_eq!(v["status"], "ok");
    v["payload"].clone()
}

#[test]
fn circular_table_matches_published_values() {
    let out = looprep(&["table", "circular", "--max", "9"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 11); // header + 10 rows
    let row3: Vec<&str> = rows[4].split(',').collect();
    assert_eq!(row3[0], "3");
    assert_eq!(row3[4], "114");
    let row9: Vec<&str> = rows[10].split(',').collect();
    assert_eq!(row9[10], "7777314");
    // byte-determinism across runs
    let again = looprep(&["table", "circular", "--max", "9"]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn identity_is_the_one_step_diagonal() {
    let p = payload(&looprep(&["identity", "1"]));
    assert_eq!(p["terms"].as_array().unwrap().len(), 1);
    assert_eq!(p["terms"][0]["coeff"], "1/1");
    assert_eq!(p["terms"][0]["loop"]["steps"], "D");
}

#[test]
fn compose_through_files() {
    let dir = std::env::temp_dir().join(format!("looprep-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let id = payload(&looprep(&["identity", "2"]));
    let f = dir.join("e2.json");
    std::fs::write(&f, serde_json::to_string(&id).unwrap()).unwrap();
    let composed = payload(&looprep(&[
        "compose",
        f.to_str().unwrap(),
        f.to_str().unwrap(),
    ]));
    assert_eq!(composed, id);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn schwartz_two_has_six_summands() {
    let p = payload(&looprep(&["decompose", "schwartz", "2"]));
    let entries = p.as_array().unwrap();
    assert_eq!(entries.len(), 6);
    let total: u64 = entries.iter().map(|e| e["mult"].as_u64().unwrap()).sum();
    assert_eq!(total, 7);
}

#[test]
fn branch_pipelines_agree_via_cli() {
    let a = payload(&looprep(&["branch", "induce", "bw"]));
    let b = payload(&looprep(&["branch", "mackey", "bw"]));
    assert_eq!(a, b);
}

#[test]
fn ss_image_kills_odd_zigzags() {
    let p = payload(&looprep(&["ss", "image", "J+(0,1)"]));
    assert!(p.is_null());
    let p = payload(&looprep(&["ss", "image", "J+(0,2)"]));
    assert_eq!(p["n"], 1);
    assert_eq!(p["m"], 1);
}

#[test]
fn special_round_trip_via_files() {
    let dir = std::env::temp_dir().join(format!("looprep-cli-sp-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let module = payload(&looprep(&["special", "make", "J-(0,3)"]));
    let f = dir.join("m.json");
    std::fs::write(&f, serde_json::to_string(&module).unwrap()).unwrap();
    let labels = payload(&looprep(&["special", "decompose", f.to_str().unwrap()]));
    assert_eq!(labels.as_array().unwrap().len(), 1);
    assert_eq!(labels[0]["label"]["J"], "-");
    assert_eq!(labels[0]["mult"], 1);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn heller_closed_form_via_cli() {
    let p = payload(&looprep(&["special", "heller", "simple(2)", "1"]));
    assert_eq!(p["J"], "+");
    assert_eq!(p["n"], 1);
    assert_eq!(p["m"], 3);
}

#[test]
fn usage_errors_exit_two() {
    let out = looprep(&["loops", "enumerate", "0", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["status"], "error");
    assert_eq!(err["code"], "domain");

    let out = looprep(&["branch", "induce", "bx"]);
    assert_eq!(out.status.code(), Some(2));

    let out = looprep(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_quick_passes_and_prints_lines() {
    let out = looprep(&["verify", "--level", "quick"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let passes = text.lines().filter(|l| l.starts_with("PASS")).count();
    assert_eq!(passes, 9);
}
