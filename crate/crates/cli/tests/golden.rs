//! Reports compared byte for byte with files under `tests/golden`.
//! `UPDATE_GOLDEN=1` rewrites them.

mod common;

use common::{golden_path, run, CASES};

#[test]
fn reports_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut mismatches = Vec::new();
    for (name, args, code) in CASES {
        let (bytes, actual) = run(args);
        assert_eq!(
            actual,
            *code,
            "{name}: exit code\n{}",
            String::from_utf8_lossy(&bytes)
        );
        let path = golden_path(name);
        if update {
            std::fs::write(&path, &bytes).unwrap();
            continue;
        }
        let expected = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        if expected != bytes {
            mismatches.push(format!("{name}:\n{}", String::from_utf8_lossy(&bytes)));
        }
    }
    assert!(
        mismatches.is_empty(),
        "golden mismatches:\n{}",
        mismatches.join("\n")
    );
}
