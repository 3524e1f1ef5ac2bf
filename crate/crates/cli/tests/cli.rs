//! Exit codes and messages of the `caloron` binary.

use std::process::{Command, Output};

use tempfile::TempDir;

const TINY: &str = r#"
[suite]
group = "su2"
loop_samples = 32
resolutions = [9, 17]
seed = 3
scenarios = ["flat", "abelian"]
checks = ["caloron.round_trip", "bundle.cocycle", "bundle.higgs_difference"]
"#;

fn caloron(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_caloron"));
    cmd.args(args).env_remove("CALORON_THREADS");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn bad_config_names_the_field() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "bad.toml", &TINY.replace("[9, 17]", "[9, 8]"));
    let out = caloron(&["check", &path], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("suite.resolutions[1]"), "{}", stderr(&out));

    let missing = caloron(&["check", "/nonexistent/config.toml"], &[]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn su3_rejects_integral_scenarios() {
    let dir = TempDir::new().unwrap();
    let text = TINY
        .replace("su2", "su3")
        .replace("\"flat\", \"abelian\"", "\"loopGroupSphere\"");
    let path = write(&dir, "su3.toml", &text);
    let out = caloron(&["check", &path], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("loopGroupSphere"));

    let su3 = write(&dir, "plain.toml", &TINY.replace("su2", "su3"));
    let out = caloron(&["integrate", "loopGroupR", "--config", &su3], &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_integral_and_usage_errors() {
    assert_eq!(caloron(&["integrate", "instantonNumber"], &[]).status.code(), Some(2));
    assert_eq!(caloron(&["frobnicate"], &[]).status.code(), Some(2));
    assert_eq!(caloron(&["--help"], &[]).status.code(), Some(0));
}

#[test]
fn bad_thread_count() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "tiny.toml", TINY);
    for bad in ["0", "many"] {
        let out = caloron(&["check", &path], &[("CALORON_THREADS", bad)]);
        assert_eq!(out.status.code(), Some(2));
        assert!(stderr(&out).contains("CALORON_THREADS"));
    }
}

#[test]
fn passing_run_and_report() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "tiny.toml", TINY);
    let records = dir.path().join("out.records");
    let out = caloron(
        &[
            "check",
            &path,
            "--format",
            "records",
            "--output",
            records.to_str().unwrap(),
        ],
        &[("CALORON_THREADS", "2")],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let saved = std::fs::read_to_string(&records).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), saved);
    assert!(saved.contains("threads=2"));

    let again = caloron(&["report", "--format", "records", records.to_str().unwrap()], &[]);
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(String::from_utf8(again.stdout).unwrap(), saved);
    assert_eq!(
        caloron(&["report", records.to_str().unwrap()], &[]).status.code(),
        Some(0)
    );

    let garbled = write(&dir, "garbled.records", &saved.replacen("pass=true", "pass=maybe", 1));
    assert_eq!(caloron(&["report", &garbled], &[]).status.code(), Some(2));
}

#[test]
fn tightened_tolerance_fails() {
    let dir = TempDir::new().unwrap();
    let text = format!("{TINY}\n[tolerances]\n\"bundle.higgs_difference\" = 1e-300\n");
    let path = write(&dir, "strict.toml", &text);
    let out = caloron(&["check", &path], &[]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
}
