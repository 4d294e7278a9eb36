use std::fs;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dsmc-fluid"))
}

#[test]
fn euler_only_sod_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let status = bin()
        .args(["run", "--scenario", "sod", "--mode", "euler-only", "--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    for name in ["snapshots.csv", "series.csv", "config.toml", "manifest.json"] {
        assert!(dir.path().join(name).exists(), "missing {name}");
    }
    let snapshots = fs::read_to_string(dir.path().join("snapshots.csv")).unwrap();
    assert!(snapshots.starts_with("time,cell,x,rho,ux,T,h,beta,np\n"));
    let manifest = fs::read_to_string(dir.path().join("manifest.json")).unwrap();
    assert!(manifest.contains("\"euler-only\""));
}

#[test]
fn written_config_runs_again() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin().args(["show", "sod"]).output().unwrap();
    assert!(out.status.success());
    let path = dir.path().join("sod.toml");
    fs::write(&path, &out.stdout).unwrap();
    let status = bin()
        .args(["run", "--mode", "euler-only", "--scenario"])
        .arg(&path)
        .arg("--out")
        .arg(dir.path().join("run"))
        .status()
        .unwrap();
    assert!(status.success());
}

#[test]
fn list_names_builtin_scenarios() {
    let out = bin().arg("list").output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["two-freq", "unsteady-shock", "sod"] {
        assert!(text.contains(name));
    }
}

#[test]
fn unknown_scenario_fails() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["run", "--scenario", "no-such-case", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(!out.stderr.is_empty());
}
