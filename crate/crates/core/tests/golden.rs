//! Canonical serializations and DOT renderings of the corpus, compared byte for byte.

use std::fs;
use std::path::PathBuf;

use modspec::quotient::{quotient_mts, QuotientOptions};
use modspec::{export_dot, parse, serialize, Spec};

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn corpus_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    files
}

fn golden(name: &str) -> String {
    fs::read_to_string(corpus_dir().join("golden").join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn serialization_matches_golden_files() {
    for path in corpus_files() {
        let name = path.file_name().unwrap().to_str().unwrap();
        let spec = parse(&fs::read_to_string(&path).unwrap()).unwrap();
        let expected = golden(&format!("{name}.txt"));
        assert_eq!(serialize(&spec), expected, "{name}");
        let again = parse(&expected).unwrap();
        assert_eq!(again, spec, "{name}");
        assert_eq!(serialize(&again), expected, "{name}");
    }
}

#[test]
fn dot_export_matches_golden_files() {
    for path in corpus_files() {
        let name = path.file_name().unwrap().to_str().unwrap();
        let spec = parse(&fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(export_dot(&spec), golden(&format!("{name}.dot")), "{name}");
    }
}

#[test]
fn quotient_example_matches_golden_file() {
    let load = |n: &str| parse(&fs::read_to_string(corpus_dir().join(n)).unwrap()).unwrap().to_dmts().unwrap();
    let (s, t) = (load("quotient_s.mts"), load("quotient_t.mts"));
    let q = quotient_mts(s.as_mts().unwrap(), t.as_mts().unwrap(), &QuotientOptions::default()).unwrap();
    let q = Spec::Dmts(q);
    assert_eq!(serialize(&q), golden("quotient_computed.txt"));
    assert_eq!(export_dot(&q), golden("quotient_computed.dot"));
}

#[test]
fn deadlock_renders_as_a_single_node() {
    let spec = parse("dmts { alphabet a; init s; state s; }").unwrap();
    let dot = export_dot(&spec);
    assert_eq!(dot.lines().filter(|l| l.trim() == "\"s\";").count(), 1);
    assert!(!dot.contains("->") || dot.lines().filter(|l| l.contains("->")).all(|l| l.contains("_init")));
}
