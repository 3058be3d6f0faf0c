mod common;

use std::path::Path;
use std::process::Command;

use common::DATA;

fn grips(args: &[&str]) -> std::process::Output {
    let out = Command::new(env!("CARGO_BIN_EXE_grips")).args(args).output().unwrap();
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn plan_then_plot() {
    let dir = tempfile::tempdir().unwrap();
    let (svg, json, svg2) = (dir.path().join("a.svg"), dir.path().join("a.json"), dir.path().join("b.svg"));
    let map = format!("{DATA}/maps/outdoor.map");
    let out = grips(&[
        "plan", "--map", &map, "--start", "10.5,10.5,0", "--goal", "110.5,100.5,0.7", "--algo", "grips-hs",
        "--svg", s(&svg), "--json", s(&json),
    ]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("success"));
    grips(&["plot", "--map", &map, "--result", s(&json), "--out", s(&svg2)]);
    let a = std::fs::read_to_string(&svg).unwrap();
    assert!(a.starts_with("<svg"));
    assert_eq!(a, std::fs::read_to_string(&svg2).unwrap());
}

#[test]
fn gen_scenarios_and_bench() {
    let dir = tempfile::tempdir().unwrap();
    let (maps, scen) = (dir.path().join("maps"), dir.path().join("scen"));
    std::fs::create_dir_all(&maps).unwrap();
    std::fs::create_dir_all(&scen).unwrap();
    std::fs::copy(format!("{DATA}/maps/indoor.map"), maps.join("indoor.map")).unwrap();
    grips(&[
        "gen-scenarios", "--map", s(&maps.join("indoor.map")), "--n", "6", "--min-clearance", "8", "--seed", "5",
        "--out", s(&scen.join("indoor.scen")),
    ]);
    let text = std::fs::read_to_string(scen.join("indoor.scen")).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 6);
    let csv = dir.path().join("r.csv");
    grips(&[
        "bench", "--maps", s(&maps), "--scenarios", s(&scen), "--algos", "grips,grips-hs", "--out", s(&csv),
        "--jobs", "2",
    ]);
    let report = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = report.lines().collect();
    assert_eq!(lines[0], "map,algorithm,tasks,success_rate,mean_length_m,mean_runtime_s");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("indoor,grips,6,"));
}

#[test]
fn config_file_is_applied_and_validated() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    std::fs::write(&cfg, "horizon = 0\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_grips"))
        .args(["--config", s(&cfg), "plan", "--map", &format!("{DATA}/maps/indoor.map")])
        .args(["--start", "10.5,10.5,0", "--goal", "20.5,10.5,0"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("horizon"));
}

#[test]
fn bad_input_reports_an_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_grips"))
        .args(["plan", "--map", &format!("{DATA}/maps/indoor.map"), "--start", "1,2", "--goal", "3,4,0"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad pose"));
}
