//! Kept in its own binary: setting the variable would redirect the output
//! of tests running in parallel.

use galcoh::cli::{run, OUT_DIR_ENV};

#[test]
fn environment_sets_the_output_directory() {
    let dir = tempfile::tempdir().unwrap();
    std::env::set_var(OUT_DIR_ENV, dir.path());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(["galcoh", "--format", "text", "fixtures", "list"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let written = std::fs::read_to_string(dir.path().join("fixtures.txt")).unwrap();
    assert!(written.contains("q2"));
}
