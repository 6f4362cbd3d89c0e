//! Runs every case of `cases.txt` against the binary and compares stdout with
//! `golden/<case>.out` and the exit code with the table.

use std::path::{Path, PathBuf};
use std::process::Command;

fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

struct Case {
    name: String,
    exit: i32,
    args: Vec<String>,
}

fn cases() -> Vec<Case> {
    let text = include_str!("cases.txt");
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut parts = l.split('|').map(str::trim);
            let name = parts.next().unwrap().to_string();
            let exit = parts.next().unwrap().parse().unwrap();
            let args = parts.next().unwrap().split_whitespace().map(String::from).collect();
            Case { name, exit, args }
        })
        .collect()
}

fn run(args: &[String]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_modspec"))
        .args(args)
        .current_dir(workspace_root())
        .env_remove("NO_COLOR")
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn golden_cases() {
    let mut failures = Vec::new();
    for case in cases() {
        let (code, stdout, stderr) = run(&case.args);
        let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{}.out", case.name));
        let expected = std::fs::read_to_string(&golden).unwrap_or_else(|e| panic!("{}: {e}", golden.display()));
        if code != case.exit || stdout != expected {
            failures.push(format!("{}: exit {code} (want {}), stderr: {stderr}", case.name, case.exit));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn every_subcommand_has_a_golden_case() {
    let names: Vec<String> = cases().into_iter().map(|c| c.name).collect();
    for sub in [
        "validate", "translate", "refine", "implements", "mc", "and", "or", "compose", "quotient", "prune",
        "single_initial", "equiv", "impls", "dot",
    ] {
        assert!(names.iter().any(|n| n.starts_with(&format!("{sub}_"))), "{sub}");
    }
}

#[test]
fn quotient_example_matches_the_corpus_golden_file() {
    let args: Vec<String> = ["quotient", "corpus/quotient_s.mts", "corpus/quotient_t.mts"].map(String::from).into();
    let (code, stdout, _) = run(&args);
    assert_eq!(code, 0);
    let golden = std::fs::read_to_string(workspace_root().join("corpus/golden/quotient_computed.txt")).unwrap();
    assert_eq!(stdout, golden);
}

#[test]
fn counterexamples_parse_back() {
    for case in cases().into_iter().filter(|c| c.exit == 1) {
        let (_, stdout, _) = run(&case.args);
        modspec::parse(&stdout).unwrap_or_else(|e| panic!("{}: {e}", case.name));
    }
}

#[test]
fn translations_agree_with_their_source_within_a_bound() {
    let dir = std::env::temp_dir().join(format!("modspec-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let root = workspace_root().join("corpus");
    for file in ["invariance.dmts", "until.dmts", "two_initial.dmts", "compose_s.dmts", "quotient_s.mts"] {
        let src = root.join(file).to_string_lossy().into_owned();
        let (code, naa, _) = run(&["translate".into(), "--to".into(), "naa".into(), src.clone()]);
        assert_eq!(code, 0);
        let tmp = dir.join(format!("{file}.naa"));
        std::fs::write(&tmp, naa).unwrap();
        let args = ["equiv".into(), src, tmp.to_string_lossy().into_owned(), "--max-states".into(), "2".into()];
        assert_eq!(run(&args).0, 0, "{file}");
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn stderr_is_plain_when_not_a_terminal() {
    let args: Vec<String> = ["refine", "corpus/intro.dmts", "corpus/intro_impl.lts"].map(String::from).into();
    let (_, _, stderr) = run(&args);
    assert!(!stderr.contains('\x1b'));
    assert_eq!(stderr.trim(), "does not refine");
}
