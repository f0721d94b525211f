use std::fs;
use std::process::{Command, Output};

use seqaccel::harness::{read_report, CSV_HEADER};
use seqaccel::recycle::GuessMethod;

fn seqaccel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seqaccel")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn run_writes_a_readable_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rand.csv");
    let o = seqaccel(&[
        "run", "--grid", "12", "--nt", "8", "--dt", "1e-3", "--method", "rand", "--M", "4", "--m", "2",
        "--seed", "5", "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("mean iterations"));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.lines().any(|l| l == CSV_HEADER));
    assert!(text.contains("# seed=5"));
    let report = read_report(&out).unwrap();
    assert_eq!(report.records.len(), 8);
    assert_eq!(report.config.method, GuessMethod::Rand);
    assert_eq!((report.config.nx, report.config.history_size), (12, 4));
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.cfg");
    fs::write(&cfg, "# small run\ngrid=10x11\nnt=5\nmethod=pod\nM=3\nm=2\nseed=1\n").unwrap();
    let out = dir.path().join("r.csv");
    let o = seqaccel(&[
        "run", "--config", cfg.to_str().unwrap(), "--nt", "3", "--set", "t0=2.0", "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r = read_report(&out).unwrap();
    assert_eq!((r.config.nx, r.config.ny, r.config.nt), (10, 11, 3));
    assert_eq!(r.config.method, GuessMethod::Pod);
    assert_eq!(r.config.t0, 2.0);
}

#[test]
fn compare_prints_table_rows() {
    let dir = tempfile::tempdir().unwrap();
    let mut paths = Vec::new();
    for method in ["baseline", "pod"] {
        let p = dir.path().join(format!("{method}.csv"));
        let o = seqaccel(&[
            "run", "--grid", "10", "--nt", "6", "--method", method, "--M", "3", "--m", "2", "--out",
            p.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        paths.push(p);
    }
    let o = seqaccel(&["compare", paths[0].to_str().unwrap(), paths[1].to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("method,M,m,"));
    assert!(lines[1].starts_with("pod,3,2,"));
}

#[test]
fn invalid_input_fails_with_message() {
    let o = seqaccel(&["run", "--method", "svd", "--nt", "1"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown method"));

    let o = seqaccel(&["run", "--grid", "3", "--nt", "1"]);
    assert!(!o.status.success());

    let o = seqaccel(&["run", "--M", "2", "--m", "5", "--nt", "1"]);
    assert!(!o.status.success());

    let o = seqaccel(&["run", "--config", "/nonexistent/exp.cfg"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("/nonexistent/exp.cfg"));
}
