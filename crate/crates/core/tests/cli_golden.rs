//! Golden tests for the binary. Cases live in `fixtures/cases.txt`, expected
//! output in `fixtures/expected/<case>.out`. Set `UPDATE_GOLDEN=1` to rewrite
//! the expected files.

use std::path::{Path, PathBuf};
use std::process::Command;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn cases() -> Vec<(String, Vec<String>)> {
    let text = std::fs::read_to_string(fixtures().join("cases.txt")).unwrap();
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut words = l.split_whitespace().map(String::from);
            let name = words.next().unwrap();
            (name, words.collect())
        })
        .collect()
}

fn transcript(args: &[String]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_esforget"))
        .current_dir(fixtures())
        .args(args)
        .output()
        .unwrap();
    format!(
        "exit: {}\n--- stdout\n{}--- stderr\n{}",
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap()
    )
}

#[test]
fn golden_outputs() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let dir = fixtures().join("expected");
    let mut failures = Vec::new();
    for (name, args) in cases() {
        let got = transcript(&args);
        let path = dir.join(format!("{name}.out"));
        if update {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(want) if want == got => {}
            Ok(want) => failures.push(format!("{name}:\n--- want\n{want}\n--- got\n{got}")),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn exit_code_contract() {
    // The expected exit code of each case is fixed by its name prefix or
    // the fixture it reads.
    for (name, args) in cases() {
        let code = Command::new(env!("CARGO_BIN_EXE_esforget"))
            .current_dir(fixtures())
            .args(&args)
            .output()
            .unwrap()
            .status
            .code()
            .unwrap();
        let want = if name.starts_with("parse_error") {
            2
        } else if name.starts_with("verify_counterexample") {
            1
        } else if (name.starts_with("forget") || name.starts_with("verify"))
            && args.iter().any(|a| a == "choice.lp")
        {
            3
        } else {
            0
        };
        assert_eq!(code, want, "{name}");
    }
}

#[test]
fn stdin_input() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_esforget"))
        .args(["models", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"a | b.").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{a}\n{b}\n");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn missing_file_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_esforget"))
        .args(["models", "no/such/file.lp"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .starts_with("error: no/such/file.lp:"));
}
