use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures/corpus")
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn transprop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_transprop"))
        .env_remove("TRANSPROP_CACHE_DIR")
        .args(args)
        .output()
        .expect("binary runs")
}

fn faulty_run(out: &Path, extra: &[&str]) -> Output {
    let corpus = corpus();
    let mut args = vec![
        "test",
        "--corpus",
        corpus.to_str().unwrap(),
        "--temperature",
        "0.85",
        "--budget",
        "12",
        "--seed",
        "11",
        "--out",
        out.to_str().unwrap(),
    ];
    args.extend_from_slice(extra);
    transprop(&args)
}

/// Compares against the frozen file; `UPDATE_GOLDEN=1` rewrites it.
fn assert_golden(name: &str, actual: &[u8]) {
    let path = golden(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert!(expected == actual, "{name} differs from the golden file");
}

#[test]
fn seeded_faulty_report_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let out = faulty_run(dir.path(), &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_golden("report.json", &std::fs::read(dir.path().join("report.json")).unwrap());
    assert_golden("table.txt", &out.stdout);
}

#[test]
fn warm_cache_replays_identically_without_backend_calls() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let cache = cache.to_str().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let cold = faulty_run(&a, &["--cache-dir", cache]);
    assert!(cold.status.success());
    assert!(!String::from_utf8_lossy(&cold.stderr).contains("backend calls: 0\n"));
    let warm = faulty_run(&b, &["--cache-dir", cache]);
    assert!(String::from_utf8_lossy(&warm.stderr).contains("backend calls: 0\n"));
    assert_eq!(
        std::fs::read(a.join("report.json")).unwrap(),
        std::fs::read(b.join("report.json")).unwrap()
    );
}

#[test]
fn violations_fail_only_on_request() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(faulty_run(dir.path(), &[]).status.code(), Some(0));
    assert_eq!(faulty_run(dir.path(), &["--fail-on-violation"]).status.code(), Some(1));
}

#[test]
fn configuration_errors_exit_two() {
    assert_eq!(transprop(&["test", "--corpus", "/no/such/dir"]).status.code(), Some(2));
    let corpus = corpus();
    let c = corpus.to_str().unwrap();
    assert_eq!(
        transprop(&["test", "--corpus", c, "--beam", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        transprop(&["test", "--corpus", c, "--backend", "ftp://x"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn config_file_is_overlaid_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        format!(
            "corpus = {:?}\nbudget = 3\nbeam = 3\ntemperature = 0.35\n",
            corpus().to_str().unwrap()
        ),
    )
    .unwrap();
    let out = dir.path().join("out");
    let o = transprop(&[
        "test",
        "--config",
        cfg.to_str().unwrap(),
        "--beam",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["params"]["beam"], 2);
    assert_eq!(report["reports"][0]["budget"], 3);
    assert_eq!(report["tv"], 0);
}

#[test]
fn search_succeeds_early_and_writes_trace() {
    let dir = tempfile::tempdir().unwrap();
    let program = corpus().join("gcd/func.java");
    let o = transprop(&[
        "search",
        program.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let trace: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("trace.json")).unwrap()).unwrap();
    assert_eq!(trace["success"], true);
    assert!(trace["trace"].as_array().unwrap().len() < 20);
    assert!(dir.path().join("translation.py").exists());
}

#[test]
fn exhausted_search_exits_one_and_keeps_best_translation() {
    let dir = tempfile::tempdir().unwrap();
    let program = corpus().join("sum_to_n/func.java");
    let o = transprop(&[
        "search",
        program.to_str().unwrap(),
        "--temperature",
        "2.0",
        "--search-budget",
        "1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(dir.path().join("translation.py").exists());
}

#[test]
fn corpus_check_reports_arity_mismatch_by_id() {
    let ok = transprop(&["corpus-check", "--corpus", corpus().to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("two_args");
    std::fs::create_dir(&p).unwrap();
    std::fs::write(p.join("func.java"), "int f(int a) { return a; }").unwrap();
    std::fs::write(p.join("tests.json"), r#"[{"inputs":[1,2],"expected":1}]"#).unwrap();
    let bad = transprop(&["corpus-check", "--corpus", dir.path().to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
    let text = String::from_utf8_lossy(&bad.stdout);
    assert!(text.contains("error two_args"), "{text}");
}
