use std::fs;
use std::process::{Command, Output};

fn toric_lag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-lag")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn example(dir: &tempfile::TempDir, genus: i64) -> String {
    let path = dir.path().join(format!("g{genus}.json"));
    let o = toric_lag(&["example", "--genus", &genus.to_string(), "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    path.to_str().unwrap().to_string()
}

#[test]
fn example_to_stdout_matches_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = example(&dir, 3);
    let o = toric_lag(&["example", "--genus", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), fs::read_to_string(path).unwrap());
    assert!(stdout(&o).contains("\"c\": \"3\""));
}

#[test]
fn full_check_passes_and_writes_identical_json() {
    let dir = tempfile::tempdir().unwrap();
    let spec = example(&dir, 2);
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let o1 = toric_lag(&["check", &spec, "--out", a.to_str().unwrap()]);
    let o2 = toric_lag(&["check", &spec, "--out", b.to_str().unwrap()]);
    assert!(o1.status.success(), "{}", stdout(&o1));
    assert_eq!(o1.stdout, o2.stdout);
    let (ja, jb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(ja, jb);
    let text = stdout(&o1);
    assert!(text.contains("genus 2"));
    assert!(text.ends_with("summary: 13 pass, 0 fail, 0 skip\n"));
    let json: serde_json::Value = serde_json::from_slice(&ja).unwrap();
    assert_eq!(json["checks"].as_array().unwrap().len(), 13);
}

#[test]
fn verbs_select_their_checks() {
    let dir = tempfile::tempdir().unwrap();
    let spec = example(&dir, 1);
    for (verb, last) in [
        ("slice", "slice"),
        ("topology", "topology"),
        ("slag", "slag-profile"),
        ("shrinker", "shrinker-ode"),
        ("oracle", "flat-angle"),
    ] {
        let o = toric_lag(&[verb, &spec]);
        assert!(o.status.success(), "{verb}: {}", stdout(&o));
        let lines: Vec<String> = stdout(&o).lines().filter(|l| l.starts_with("PASS")).map(String::from).collect();
        assert!(lines.last().unwrap().contains(last), "{verb}");
    }
}

#[test]
fn bad_cone_fails_with_status_two() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("bad.json");
    fs::write(&spec, r#"{"dim": 3, "conormals": [[1,0,0],[1,2,0],[1,1,1]]}"#).unwrap();
    let o = toric_lag(&["check", spec.to_str().unwrap(), "--only", "validity,goodness"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("FAIL  goodness"));
    assert!(stdout(&o).contains("elementary divisors [1, 2]"));
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("junk.json");
    fs::write(&spec, r#"{"dim": 3, "conormals": [], "extra": 1}"#).unwrap();
    assert_eq!(toric_lag(&["check", spec.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(toric_lag(&["example", "--genus", "0"]).status.code(), Some(1));
    assert_eq!(toric_lag(&["check", "/nonexistent/x.json"]).status.code(), Some(1));
    let good = example(&dir, 1);
    assert_eq!(toric_lag(&["check", &good, "--only", "nope"]).status.code(), Some(1));
    assert_eq!(toric_lag(&["shrinker", &good, "--step", "0"]).status.code(), Some(1));
    assert_eq!(toric_lag(&["svg", &good]).status.code(), Some(1));
}

#[test]
fn shrinker_csv_and_tolerance_scale() {
    let dir = tempfile::tempdir().unwrap();
    let spec = example(&dir, 1);
    let csv = dir.path().join("traj.csv");
    let o = toric_lag(&["shrinker", &spec, "--step", "0.01", "--csv", csv.to_str().unwrap()]);
    // the trajectory error bound is calibrated for h = 1e-3
    assert_eq!(o.status.code(), Some(2));
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,Re c,Im c,theta"));
    assert_eq!(lines.count(), 630);
    let o = toric_lag(&["shrinker", &spec, "--step", "0.01", "--tol", "100"]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn svg_files_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let spec = example(&dir, 2);
    let out = dir.path().join("figs");
    let o = toric_lag(&["svg", &spec, "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let slice = fs::read_to_string(out.join("slice.svg")).unwrap();
    let gluing = fs::read_to_string(out.join("gluing.svg")).unwrap();
    assert!(slice.starts_with("<svg") && slice.contains(">E5<"));
    assert_eq!(gluing.matches("<polygon").count(), 8);
}

#[test]
fn reads_standard_input() {
    use std::io::Write;
    let doc = stdout(&toric_lag(&["example", "--genus", "1"]));
    let mut child = Command::new(env!("CARGO_BIN_EXE_toric-lag"))
        .args(["topology", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(doc.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).contains("genus 1"));
}
