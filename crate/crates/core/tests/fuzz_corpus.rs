//! The checked-in fuzz seeds are all well-formed inputs.

use std::fs;
use std::path::PathBuf;

use steiner_core::io::{parse_instance, parse_layout, parse_solution, parse_tree_decomposition};

fn seeds(target: &str) -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(PathBuf, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            let text = fs::read_to_string(&path).unwrap();
            (path, text)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn instance_seeds_parse() {
    for (path, text) in seeds("parse_instance") {
        parse_instance(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    }
}

#[test]
fn decomposition_seeds_parse() {
    for (path, text) in seeds("parse_tree_decomposition") {
        parse_tree_decomposition(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    }
}

#[test]
fn layout_seeds_parse() {
    for (path, text) in seeds("parse_layout") {
        parse_layout(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    }
}

#[test]
fn solution_seeds_parse() {
    for (path, text) in seeds("parse_solution") {
        parse_solution(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    }
}
