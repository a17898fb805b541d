//! End-to-end runs of the `uer` binary: exit codes are the machine
//! contract, and every drawing the tool emits must re-validate.

use std::path::PathBuf;
use std::process::{Command, Output};

fn uer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uer"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_temp(name: &str, content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("uer-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

#[test]
fn recognize_accepts_grid_and_output_revalidates() {
    let grid = uer(&["gen", "grid", "3", "3", "--model", "usf"]);
    assert!(grid.status.success());
    let inst = write_temp("grid3x3.g", &String::from_utf8(grid.stdout).unwrap());

    let out_path = write_temp("grid3x3.json", "");
    let rec = uer(&[
        "recognize",
        inst.to_str().unwrap(),
        "--model",
        "usf",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(rec.status.code(), Some(0), "{rec:?}");

    // pipe-through: the emitted drawing re-validates
    let val = uer(&["validate", out_path.to_str().unwrap()]);
    assert_eq!(val.status.code(), Some(0));

    // and renders
    let ren = uer(&["render", out_path.to_str().unwrap()]);
    assert_eq!(ren.status.code(), Some(0));
    assert!(String::from_utf8(ren.stdout).unwrap().starts_with("<svg"));
}

#[test]
fn recognize_rejects_odd_cycle_with_exit_1() {
    let c5 = uer(&["gen", "cycle", "5"]);
    assert!(c5.status.success());
    let inst = write_temp("c5.g", &String::from_utf8(c5.stdout).unwrap());
    let rec = uer(&["recognize", inst.to_str().unwrap(), "--model", "rf"]);
    assert_eq!(rec.status.code(), Some(1));
    assert!(String::from_utf8(rec.stdout).unwrap().contains("reject"));
}

#[test]
fn validate_reports_violation_codes_with_exit_1() {
    // a C6 stretched to break unit lengths
    let doc = r#"{"model":"rf","vertices":[
        {"id":0,"x":0,"y":0},{"id":1,"x":1,"y":0},{"id":2,"x":3,"y":0},
        {"id":3,"x":3,"y":1},{"id":4,"x":1,"y":1},{"id":5,"x":0,"y":1}],
        "edges":[[0,1],[1,2],[2,3],[3,4],[4,5],[5,0]]}"#;
    let path = write_temp("bad.json", doc);
    let val = uer(&["validate", path.to_str().unwrap()]);
    assert_eq!(val.status.code(), Some(1));
    assert!(String::from_utf8(val.stdout)
        .unwrap()
        .contains("non-unit-edge"));
}

#[test]
fn oracle_verdicts_and_exit_codes() {
    let c4 = uer(&["gen", "cycle", "4", "--model", "usf"]);
    let inst = write_temp("c4.g", &String::from_utf8(c4.stdout).unwrap());
    let acc = uer(&[
        "oracle",
        inst.to_str().unwrap(),
        "--model",
        "usf",
        "--max-width",
        "2",
        "--max-height",
        "2",
    ]);
    assert_eq!(acc.status.code(), Some(0));

    let c5 = uer(&["gen", "cycle", "5"]);
    let inst5 = write_temp("c5o.g", &String::from_utf8(c5.stdout).unwrap());
    let rej = uer(&["oracle", inst5.to_str().unwrap(), "--model", "rf"]);
    assert_eq!(rej.status.code(), Some(1));

    let unk = uer(&[
        "oracle",
        inst5.to_str().unwrap(),
        "--model",
        "rf",
        "--max-width",
        "4",
        "--max-height",
        "4",
        "--max-vertices",
        "64",
        "--time-limit",
        "0.000000001",
    ]);
    assert_eq!(unk.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_2() {
    let bad = uer(&["recognize", "/nonexistent/file.g"]);
    assert_eq!(bad.status.code(), Some(2));
    let bad = uer(&["gen", "grid", "3"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn constraints_flow_through_flags() {
    let c8 = uer(&["gen", "cycle", "8"]);
    let inst = write_temp("c8.g", &String::from_utf8(c8.stdout).unwrap());
    let rec = uer(&[
        "recognize",
        inst.to_str().unwrap(),
        "--model",
        "rf",
        "--corners",
        "0,2,4,6",
    ]);
    assert_eq!(rec.status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_slice(&rec.stdout).expect("drawing json on stdout");
    assert_eq!(doc["model"], "rf");
    // corners 0,2,4,6 force the square split of C8
    let xs: Vec<i64> = doc["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["x"].as_i64().unwrap())
        .collect();
    let w = xs.iter().max().unwrap() - xs.iter().min().unwrap();
    assert_eq!(w, 2);
}

#[test]
fn oracle_enumerate_dumps_canonical_corpus() {
    let dump = uer(&[
        "oracle",
        "--enumerate",
        "--model",
        "usf",
        "--max-width",
        "2",
        "--max-height",
        "2",
        "--max-vertices",
        "16",
    ]);
    assert_eq!(dump.status.code(), Some(0));
    let lines: Vec<&str> = std::str::from_utf8(&dump.stdout).unwrap().lines().collect();
    assert_eq!(lines.len(), 4, "pinned 2x2 usf corpus size");
    for line in lines {
        let _: serde_json::Value = serde_json::from_str(line).expect("one json doc per line");
    }
}

#[test]
fn corpus_report_passes() {
    let rep = uer(&["corpus"]);
    assert_eq!(rep.status.code(), Some(0), "{rep:?}");
    let text = String::from_utf8(rep.stdout).unwrap();
    assert!(text.contains("cycle-family"));
    assert!(!text.contains("FAIL"));
}
