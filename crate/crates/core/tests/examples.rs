//! Every example program runs to completion.

use std::path::PathBuf;
use std::process::Command;

const EXAMPLES: [&str; 8] =
    ["group_arithmetic", "hurwitz_systems", "schur_invariants", "orbits", "classify", "catalog", "coincidences", "consistency_checks"];

fn cargo() -> String {
    std::env::var("CARGO").unwrap_or_else(|_| "cargo".to_string())
}

#[test]
fn examples_run() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("Cargo.toml");
    for name in EXAMPLES {
        let o = Command::new(cargo())
            .args(["run", "--offline", "--quiet", "--release", "--example", name, "--manifest-path"])
            .arg(&manifest)
            .output()
            .expect("cargo runs");
        assert!(o.status.success(), "{name}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stdout.is_empty(), "{name} printed nothing");
    }
}

#[test]
fn every_example_is_listed() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples");
    let mut found: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .filter_map(|e| e.ok()?.path().file_stem()?.to_str().map(String::from))
        .collect();
    found.sort();
    let mut listed: Vec<String> = EXAMPLES.iter().map(|s| s.to_string()).collect();
    listed.sort();
    assert_eq!(found, listed);
}
