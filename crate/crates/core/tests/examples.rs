//! Every shipped example runs to completion. `cargo test` builds the
//! examples next to the test binaries.

use std::path::PathBuf;
use std::process::Command;

const EXAMPLES: &[&str] = &[
    "series_arithmetic",
    "operators",
    "newton_polygon",
    "euler_spectrum",
    "rank_one",
    "slope_factorization",
    "cyclic_vector",
    "ramification",
    "exponent_cosets",
    "parse_and_print",
    "json_report",
    "selftest",
];

fn example_dir() -> PathBuf {
    // target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().join("examples")
}

#[test]
fn examples_run() {
    let dir = example_dir();
    for name in EXAMPLES {
        let path = dir.join(format!("{name}{}", std::env::consts::EXE_SUFFIX));
        assert!(path.exists(), "{} was not built", path.display());
        let out = Command::new(&path).output().unwrap();
        assert!(
            out.status.success(),
            "{name} failed:\n{}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(!out.stdout.is_empty(), "{name} printed nothing");
    }
}

#[test]
fn every_example_is_listed() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples");
    let mut on_disk: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .filter_map(|e| {
            let name = e.unwrap().file_name().into_string().unwrap();
            name.strip_suffix(".rs").map(str::to_string)
        })
        .collect();
    on_disk.sort();
    let mut listed: Vec<String> = EXAMPLES.iter().map(|s| s.to_string()).collect();
    listed.sort();
    assert_eq!(on_disk, listed);
}
