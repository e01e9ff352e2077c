use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn qswd(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qswd"))
        .args(args)
        .arg("--cache-dir")
        .arg(cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Output without the cache line, the only part allowed to change between
/// a cold and a warm run.
fn body(s: &str) -> String {
    s.lines().filter(|l| !l.starts_with("# cache")).collect::<Vec<_>>().join("\n")
}

#[test]
fn run_is_deterministic_across_cold_caches() {
    let cfg = fixture("a2.cfg");
    let cfg = cfg.to_str().unwrap();
    let (d1, d2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let a = qswd(&["run", "--config", cfg], d1.path());
    let b = qswd(&["run", "--config", cfg], d2.path());
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("# cache\t0 hits, 6 misses"));
    assert!(stdout(&a).contains("type\tA_2"));
}

#[test]
fn second_run_hits_the_cache() {
    let cfg = fixture("a2.cfg");
    let cfg = cfg.to_str().unwrap();
    let d = tempfile::tempdir().unwrap();
    let cold = qswd(&["run", "--config", cfg], d.path());
    let warm = qswd(&["run", "--config", cfg], d.path());
    assert!(stdout(&warm).contains("# cache\t6 hits, 0 misses"));
    assert_eq!(body(&stdout(&cold)), body(&stdout(&warm)));
    let off = qswd(&["--no-cache", "run", "--config", cfg], d.path());
    assert!(stdout(&off).contains("# cache\tdisabled"));
    assert_eq!(body(&stdout(&cold)), body(&stdout(&off)));
}

#[test]
fn corrupt_entry_is_recomputed_with_a_warning() {
    let d = tempfile::tempdir().unwrap();
    let args = ["denominators", "--N", "3", "--max-k", "2"];
    let first = qswd(&args, d.path());
    let entries: Vec<_> = fs::read_dir(d.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 1);
    fs::write(&entries[0], "{ not json").unwrap();
    let again = qswd(&args, d.path());
    assert!(again.status.success());
    assert!(stderr(&again).contains("corrupt cache entry"), "{}", stderr(&again));
    assert_eq!(body(&stdout(&first)), body(&stdout(&again)));
    // the entry was rewritten
    let third = qswd(&args, d.path());
    assert!(stderr(&third).is_empty());
    assert!(stdout(&third).contains("1 hits"));
}

#[test]
fn parse_errors_name_the_line() {
    let d = tempfile::tempdir().unwrap();
    let o = qswd(&["run", "--config", fixture("broken.cfg").to_str().unwrap()], d.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn failing_job_exits_with_one() {
    let d = tempfile::tempdir().unwrap();
    let o = qswd(&["run", "--config", fixture("bad.cfg").to_str().unwrap()], d.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("# FAILURE:"));
    assert!(stdout(&o).contains("# status\t1 job(s) failed"));
}

#[test]
fn denominators_table() {
    let d = tempfile::tempdir().unwrap();
    let o = qswd(&["denominators", "--N", "4", "--max-k", "3"], d.path());
    let out = stdout(&o);
    assert!(out.contains("2\t2\t4\t2\t(z - (-q)^2)(z - (-q)^4)"), "{out}");
    assert!(out.contains("1\t3\t4\t1\t(z - (-q)^4)"));
    assert_eq!(out.lines().filter(|l| l.split('\t').count() == 5).count(), 10);
}

#[test]
fn functor_subcommand_reports_a_witness() {
    let d = tempfile::tempdir().unwrap();
    let cfg = fixture("a2.cfg");
    let (m0, m1) = (fixture("l0.mod"), fixture("l1.mod"));
    let o = qswd(
        &[
            "functor",
            "--config",
            cfg.to_str().unwrap(),
            "--module",
            m0.to_str().unwrap(),
            "--module",
            m1.to_str().unwrap(),
            "--check",
            "conv-tensor",
        ],
        d.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("result\tisomorphic"));
    assert!(out.contains("# table: witness"));
}

#[test]
fn two_modules_need_conv_tensor() {
    let d = tempfile::tempdir().unwrap();
    let (m0, m1) = (fixture("l0.mod"), fixture("l1.mod"));
    let cfg = fixture("a2.cfg");
    let o = qswd(&["functor", "--config", cfg.to_str().unwrap(), "--module", m0.to_str().unwrap(), "--module", m1.to_str().unwrap()], d.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn rank_override_is_checked_against_the_index() {
    let d = tempfile::tempdir().unwrap();
    let cfg = fixture("a2.cfg");
    let o = qswd(&["quiver", "--config", cfg.to_str().unwrap(), "--N", "3"], d.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let o = qswd(&["quiver", "--config", cfg.to_str().unwrap(), "--N", "1"], d.path());
    assert_eq!(o.status.code(), Some(2));
}
