//! CLI acceptance: determinism (byte-identical reports on repeated runs),
//! golden-file comparisons over the fixture catalog, and the exit-code
//! contract. Runs the real binary via CARGO_BIN_EXE.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::Instant;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_manin")
}

fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .unwrap()
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .current_dir(workspace_root())
        .output()
        .expect("binary runs")
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn assert_golden(args: &[&str], golden: &str, expect_code: i32) {
    let first = run(args);
    let second = run(args);
    assert_eq!(
        first.stdout, second.stdout,
        "output of {args:?} is not deterministic"
    );
    assert_eq!(
        first.status.code(),
        Some(expect_code),
        "unexpected exit code for {args:?}: stderr {}",
        String::from_utf8_lossy(&first.stderr)
    );
    let expected = std::fs::read(golden_path(golden))
        .unwrap_or_else(|_| panic!("missing golden file {golden}"));
    assert_eq!(
        String::from_utf8_lossy(&first.stdout),
        String::from_utf8_lossy(&expected),
        "golden mismatch for {args:?}"
    );
}

#[test]
fn criterion_10_golden_reports_and_determinism() {
    let start = Instant::now();
    for name in [
        "abelian2",
        "abelian4",
        "nonabelian2",
        "sl2_delta0",
        "sl2_rEF",
        "sl2_r2EF",
        "heis3_delta0",
        "heis3_twisted",
        "dual_heis3",
        "book4",
    ] {
        assert_golden(
            &["validate", name, "--format", "json"],
            &format!("validate_{name}.json"),
            0,
        );
    }
    assert_golden(
        &["double", "nonabelian2", "--format", "json"],
        "double_nonabelian2.json",
        0,
    );
    assert_golden(
        &["drinfeld", "nonabelian2", "--format", "json"],
        "drinfeld_nonabelian2.json",
        0,
    );
    assert_golden(
        &["drinfeld", "sl2_rEF", "--format", "json"],
        "drinfeld_sl2_rEF.json",
        0,
    );
    assert_golden(
        &["twist", "heis3_twisted", "--format", "json"],
        "twist_heis3_twisted.json",
        0,
    );
    assert_golden(
        &["cohomology", "sl2_delta0", "--h", "", "--format", "json"],
        "cohomology_sl2_delta0_trivial.json",
        0,
    );
    assert_golden(
        &[
            "cohomology",
            "sl2_delta0",
            "--h",
            "",
            "--module",
            "fixtures/modules/sl2_adjoint.json",
            "--format",
            "json",
        ],
        "cohomology_sl2_delta0_adjoint.json",
        0,
    );
    assert_golden(
        &[
            "cohomology",
            "abelian2",
            "--h",
            "",
            "--nu",
            "top",
            "--pair-degree",
            "1",
            "--format",
            "json",
        ],
        "cohomology_abelian2_pairing.json",
        0,
    );
    assert_golden(
        &[
            "point",
            "sl2_rEF",
            "--frame",
            "fixtures/frames/identity3.json",
            "--format",
            "json",
        ],
        "point_sl2_rEF_identity.json",
        0,
    );
    // a committed failing case locks the witness shape and the exit code
    assert_golden(
        &[
            "drinfeld",
            "crates/manin-cli/tests/inputs/failing_drinfeld.json",
            "--format",
            "json",
        ],
        "drinfeld_failing.json",
        1,
    );
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "golden suite took {elapsed:?}");
    println!("acceptance criterion 10 (CLI determinism and goldens, {elapsed:?}): pass");
}

#[test]
fn exit_code_contract() {
    // 0: every shipped fixture passes validation (catalog self-test)
    for name in [
        "abelian2",
        "abelian4",
        "nonabelian2",
        "sl2_delta0",
        "sl2_rEF",
        "sl2_r2EF",
        "heis3_delta0",
        "heis3_twisted",
        "dual_heis3",
        "book4",
    ] {
        assert_eq!(run(&["validate", name]).status.code(), Some(0), "{name}");
    }

    let dir = std::env::temp_dir().join("manin-cli-exit-codes");
    std::fs::create_dir_all(&dir).unwrap();

    // 1: a parseable input that fails its checks — the Jacobi-violating
    // bracket from the validation examples
    let invalid = dir.join("invalid.json");
    std::fs::write(
        &invalid,
        r#"{
  "dim": 3,
  "basis": ["H", "E", "F"],
  "brackets": {
    "0,1": ["0", "2", "0"],
    "0,2": ["0", "0", "-2"],
    "1,2": ["0", "1", "0"]
  }
}"#,
    )
    .unwrap();
    let out = run(&["validate", invalid.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("Jacobi violated"));

    // 1: drinfeld checks fail on a non-invariant configuration
    let failing = dir.join("failing_drinfeld.json");
    std::fs::write(
        &failing,
        r#"{
  "dim": 3,
  "basis": ["H", "E", "F"],
  "brackets": {
    "0,1": ["0", "2", "0"],
    "0,2": ["0", "0", "-2"],
    "1,2": ["1", "0", "0"]
  },
  "lambda": ["0", "0", "1"]
}"#,
    )
    .unwrap();
    let out = run(&["drinfeld", failing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));

    // 2: unreadable or unparsable input
    assert_eq!(
        run(&["validate", "no_such_fixture_xyz"]).status.code(),
        Some(2)
    );
    let garbage = dir.join("garbage.json");
    std::fs::write(&garbage, "{ this is not json").unwrap();
    assert_eq!(
        run(&["validate", garbage.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "cohomology",
            "sl2_delta0",
            "--module",
            garbage.to_str().unwrap()
        ])
        .status
        .code(),
        Some(2)
    );

    // 3 is reserved for internal convention failures (independent routes
    // disagreeing); it cannot be triggered from well-formed input because
    // the routes are proven equal on all inputs, so the mapping itself is
    // what the contract pins down here.
    println!("exit code contract: pass");
}

#[test]
fn fixtures_dir_resolution_and_text_format() {
    // the shipped fixture files resolve through --fixtures and agree with
    // the built-in catalog
    let root = workspace_root();
    let fixtures_dir = root.join("fixtures");
    let via_file = run(&[
        "--fixtures",
        fixtures_dir.to_str().unwrap(),
        "drinfeld",
        "book4",
        "--format",
        "json",
    ]);
    assert_eq!(via_file.status.code(), Some(0));
    let builtin = run(&["drinfeld", "book4", "--format", "json"]);
    assert_eq!(via_file.stdout, builtin.stdout);

    // text format prints one line per check
    let text = run(&["drinfeld", "book4"]);
    let body = String::from_utf8_lossy(&text.stdout);
    assert!(body.contains("invariance condition"));
    assert!(body.contains("modular element"));
}

#[test]
fn shipped_fixture_files_match_catalog() {
    let root = workspace_root();
    for f in manin::fixtures::catalog() {
        let path = root.join("fixtures").join(format!("{}.json", f.name));
        let text = std::fs::read_to_string(&path)
            .unwrap_or_else(|_| panic!("missing shipped fixture {}", path.display()));
        let expected = manin::format::AlgebraFile::from_fixture(&f).to_json() + "\n";
        assert_eq!(text, expected, "fixture file {} drifted", f.name);
    }
    // shipped module files parse into the intended modules
    let sl2 = manin::fixtures::sl2_delta0().bialgebra.algebra;
    let adjoint_text =
        std::fs::read_to_string(root.join("fixtures/modules/sl2_adjoint.json")).unwrap();
    let parsed = manin::format::ModuleFile::parse(&adjoint_text)
        .unwrap()
        .module()
        .unwrap();
    assert_eq!(parsed, manin::cohomology::FiniteModule::adjoint(&sl2));
    let trivial_text =
        std::fs::read_to_string(root.join("fixtures/modules/trivial_dim3.json")).unwrap();
    let parsed = manin::format::ModuleFile::parse(&trivial_text)
        .unwrap()
        .module()
        .unwrap();
    assert_eq!(parsed, manin::cohomology::FiniteModule::trivial(3));
}
