use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn slc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slc"))
        .args(args)
        .env("SLC_COLOR", "0")
        .output()
        .expect("slc runs")
}

fn program(name: &str) -> String {
    corpus().join(name).display().to_string()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("slc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn linear_check_rejects_nonce_reuse() {
    let out = slc(&["check", "--mode", "linear", &program("nonce_reuse.lin")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("value used here after move"), "{}", stderr(&out));
    assert!(stderr(&out).contains("nonce_reuse.lin:5:21"));
    assert!(!stderr(&out).contains('\x1b'));
}

#[test]
fn unrestricted_check_prints_the_type() {
    let out = slc(&["check", "--mode", "unrestricted", &program("nonce_reuse.lin")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "Int\n");
}

#[test]
fn default_mode_is_linear() {
    assert_eq!(slc(&["check", &program("nonce_reuse.lin")]).status.code(), Some(1));
    assert_eq!(slc(&["check", &program("nonce_fresh.lin")]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(slc(&["check", "--mode", "linear", "does_not_exist.lin"]).status.code(), Some(64));
    assert_eq!(slc(&["check", "--mode", "quantum", &program("nonce_fresh.lin")]).status.code(), Some(64));
    assert_eq!(slc(&["run", "--seed", "1", "--entropy", "f.lin"]).status.code(), Some(64));
    assert_eq!(slc(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(slc(&[]).status.code(), Some(64));
    assert_eq!(slc(&["--help"]).status.code(), Some(0));
}

#[test]
fn syntax_errors_exit_2() {
    let lex = scratch("lex.lin", "let x = 1 § 2");
    let parse = scratch("parse.lin", "let x = in 3");
    assert_eq!(slc(&["check", lex.to_str().unwrap()]).status.code(), Some(2));
    let out = slc(&["check", "--json", parse.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["code"], "ParseError");
}

#[test]
fn json_diagnostics_are_strict_json_lines() {
    let path = scratch("many.lin", "let a = new_nonce() in let b = true in let c = 3 in c");
    let out = slc(&["check", "--json", "--mode", "linear", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2, "{text}");
    for line in lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let obj = v.as_object().unwrap();
        let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        keys.sort();
        assert_eq!(keys, ["code", "col", "len", "line", "message", "mode"]);
        assert_eq!(v["code"], "UnusedLinear");
        assert_eq!(v["mode"], "linear");
    }
}

#[test]
fn run_checks_first_and_is_deterministic() {
    let fresh = program("nonce_fresh.lin");
    let a = slc(&["run", "--mode", "linear", "--seed", "42", &fresh]);
    let b = slc(&["run", "--mode", "linear", "--seed", "42", &fresh]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a), "-5857156481191982704\n");
    assert_eq!(slc(&["run", "--mode", "linear", &program("nonce_reuse.lin")]).status.code(), Some(1));
    assert_eq!(slc(&["run", "--entropy", &fresh]).status.code(), Some(0));
}

#[test]
fn run_reports_values() {
    let path = scratch("pair.lin", "let n = new_nonce() in (true, encrypt(0, n))");
    let out = slc(&["run", "--seed", "42", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), format!("(true, {})\n", 0x28ef_e333_b266_f103_i64));
}

#[test]
fn pristine_corpus_matches() {
    let out = slc(&["corpus", "--manifest", corpus().join("corpus.tsv").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 11);
    assert!(text.lines().next().unwrap().ends_with("ordered"));
}

fn manifest_copy(name: &str, edit: impl Fn(&str) -> String) -> PathBuf {
    let original = std::fs::read_to_string(corpus().join("corpus.tsv")).unwrap();
    let dir = std::env::temp_dir().join(format!("slc-manifest-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for entry in std::fs::read_dir(corpus()).unwrap() {
        let entry = entry.unwrap();
        std::fs::copy(entry.path(), dir.join(entry.file_name())).unwrap();
    }
    let path = dir.join("corpus.tsv");
    std::fs::write(&path, edit(&original)).unwrap();
    path
}

#[test]
fn flipped_verdict_is_reported_once() {
    let path = manifest_copy("flip", |text| {
        text.lines()
            .map(|l| {
                if l.starts_with("ordered_swap\t") {
                    l.replace("reject:OutOfOrderUse", "accept")
                } else {
                    l.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join("\n")
    });
    let out = slc(&["corpus", "--manifest", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let mismatches: Vec<_> = stderr(&out).lines().filter(|l| l.starts_with("mismatch:")).map(String::from).collect();
    assert_eq!(mismatches.len(), 1, "{}", stderr(&out));
    assert!(mismatches[0].contains("ordered_swap") && mismatches[0].contains("[ordered]"));

    let out = slc(&["corpus", "--json", "--manifest", path.to_str().unwrap()]);
    let rows: Vec<serde_json::Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 10);
    let flagged: Vec<_> = rows.iter().filter(|r| !r["mismatches"].as_array().unwrap().is_empty()).collect();
    assert_eq!(flagged.len(), 1);
    assert_eq!(flagged[0]["mismatches"][0]["expected"], "accept");
    assert_eq!(flagged[0]["mismatches"][0]["actual"], "reject:OutOfOrderUse");
}

#[test]
fn empty_and_malformed_manifests() {
    let empty = manifest_copy("empty", |_| String::new());
    let out = slc(&["corpus", "--manifest", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 1);

    let bad = manifest_copy("bad", |text| format!("{text}broken\tline\n"));
    assert_eq!(slc(&["corpus", "--manifest", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(slc(&["corpus", "--manifest", "/nonexistent/corpus.tsv"]).status.code(), Some(64));
}
