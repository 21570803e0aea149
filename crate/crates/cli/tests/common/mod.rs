use std::path::{Path, PathBuf};
use std::process::Command;

/// Golden file name, arguments, expected exit code.
pub const CASES: &[(&str, &[&str], i32)] = &[
    (
        "kottwitz_norm_one.txt",
        &["kottwitz", "--preset", "norm-one"],
        0,
    ),
    (
        "kottwitz_induced.json",
        &[
            "kottwitz",
            "--preset",
            "induced e=2 f=3 q=5",
            "--format",
            "json",
        ],
        0,
    ),
    (
        "kottwitz_unitary3.txt",
        &["kottwitz", "--config", "tests/data/unitary3.cfg"],
        0,
    ),
    (
        "compact_norm_one.txt",
        &["compact", "--preset", "norm-one"],
        0,
    ),
    ("compact_gl2.txt", &["compact", "--preset", "split GL2"], 0),
    (
        "cocycle_induced.txt",
        &[
            "cocycle",
            "--preset",
            "induced e=2 f=1 q=3",
            "--value",
            "(-1/2, 3/8)",
        ],
        0,
    ),
    (
        "cocycle_not_induced.txt",
        &["cocycle", "--preset", "split SL2"],
        1,
    ),
    (
        "classify_sl2_q.txt",
        &[
            "classify",
            "--preset",
            "split SL2 q=5",
            "--character",
            "(1, 0)",
        ],
        0,
    ),
    (
        "classify_sl2_q_inverse.txt",
        &[
            "classify",
            "--preset",
            "split SL2 q=5",
            "--character",
            "(-1, 0)",
        ],
        0,
    ),
    (
        "classify_gl3.json",
        &[
            "classify",
            "--preset",
            "split GL3",
            "--character",
            "(1, 0); (-1, 0); (0, 1/2)",
            "--format",
            "json",
        ],
        0,
    ),
    (
        "equal_sl2.txt",
        &[
            "equal",
            "--preset",
            "split SL2",
            "--character",
            "(1, 0)",
            "--other",
            "(-1, 0)",
        ],
        0,
    ),
    (
        "equal_unitary3.txt",
        &[
            "equal",
            "--config",
            "tests/data/unitary3.cfg",
            "--character",
            "(1, 0)",
            "--other",
            "(-1, 0)",
        ],
        0,
    ),
    ("fold_a3.txt", &["fold", "--preset", "ramified A3 sc"], 0),
    (
        "fold_a4.json",
        &["fold", "--preset", "ramified A4 sc", "--format", "json"],
        0,
    ),
    (
        "fold_d4_triality.txt",
        &["fold", "--preset", "ramified D4 triality"],
        0,
    ),
    (
        "verify_ks_a3_config.txt",
        &["verify-ks", "--config", "tests/data/a3_ramified.cfg"],
        0,
    ),
    (
        "verify_ks_a5.json",
        &[
            "verify-ks",
            "--preset",
            "ramified A5 ad",
            "--format",
            "json",
        ],
        0,
    ),
    (
        "verify_ks_d4_flip.txt",
        &["verify-ks", "--preset", "ramified D4 sc"],
        0,
    ),
    ("modulus_gl3.txt", &["modulus", "--preset", "split GL3"], 0),
    (
        "modulus_sl3_element.txt",
        &["modulus", "--preset", "split SL3", "--element", "1, -2"],
        0,
    ),
    (
        "orbits_sl2.txt",
        &["orbits", "--preset", "split SL2", "--torsion", "2"],
        0,
    ),
    (
        "orbits_norm_one.json",
        &[
            "orbits",
            "--preset",
            "norm-one",
            "--torsion",
            "2",
            "--format",
            "json",
        ],
        0,
    ),
    (
        "orbits_pgl3.txt",
        &["orbits", "--preset", "split PGL3", "--torsion", "3"],
        0,
    ),
    (
        "orbits_cap.txt",
        &[
            "orbits",
            "--preset",
            "split SL4",
            "--torsion",
            "2",
            "--max-orbit",
            "10",
        ],
        2,
    ),
    (
        "validate_unitary3.txt",
        &["validate", "--config", "tests/data/unitary3.cfg"],
        0,
    ),
    (
        "validate_bad_vector.txt",
        &["validate", "--config", "tests/data/bad_vector.cfg"],
        1,
    ),
    (
        "validate_not_pinned.json",
        &[
            "validate",
            "--config",
            "tests/data/not_pinned.cfg",
            "--format",
            "json",
        ],
        1,
    ),
    (
        "validate_bad_pairing.txt",
        &["validate", "--config", "tests/data/bad_pairing.cfg"],
        1,
    ),
    (
        "validate_wild.txt",
        &["validate", "--preset", "induced e=3 f=1 q=3"],
        1,
    ),
];

pub fn crate_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

pub fn golden_path(name: &str) -> PathBuf {
    crate_dir().join("tests/golden").join(name)
}

/// Stdout followed by stderr, and the exit code.
pub fn run(args: &[&str]) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_satake"))
        .args(args)
        .current_dir(crate_dir())
        .output()
        .expect("binary runs");
    let mut bytes = out.stdout;
    bytes.extend_from_slice(&out.stderr);
    (bytes, out.status.code().expect("exited normally"))
}
