use std::fs;
use std::path::Path;
use std::process::Command;

use facetcx::cli::{run, EXIT_NONE, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION};
use facetcx::{fixtures, parse_scx};

fn call(args: &[&str]) -> (i32, String, String) {
    let argv = std::iter::once("facetcx").chain(args.iter().copied());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write_fixture(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(format!("{name}.scx"));
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn complexity_of_the_worked_example() {
    let dir = tempfile::tempdir().unwrap();
    let l = write_fixture(dir.path(), "EX_L", fixtures::EX_L);
    let k = write_fixture(dir.path(), "EX_K", fixtures::EX_K);
    let (code, out, _) = call(&["complexity", &l, &k]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("C(EX_L;EX_K) = 2\n"), "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("group ")).count(), 2);

    let (code, out, _) = call(&["complexity", &l, &k, "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["value"], 2);
    assert_eq!(v["cover"].as_array().unwrap().len(), 2);

    let (_, out, _) = call(&["complexity", &l, &k, "--injective", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["value"], 3);
}

#[test]
fn map_check_reports_proven_absence() {
    let (code, out, _) = call(&["map-check", "@ex_l", "@ex_k", "--kind", "facet"]);
    assert_eq!(code, EXIT_NONE);
    assert_eq!(out.trim(), "NONE");
    let (code, out, _) = call(&["map-check", "@l1", "@ex_k"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("FOUND"), "{out}");
}

#[test]
fn generated_simplex_has_one_facet() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g3.scx");
    let p = path.to_str().unwrap();
    let (code, _, _) = call(&["gen", "gamma", "3", "-o", p]);
    assert_eq!(code, EXIT_OK);
    let c = parse_scx(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!((c.dim(), c.eta()), (2, 1));
    let (code, out, _) = call(&["info", p]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().any(|l| l == "dim 2"), "{out}");
    assert!(out.lines().any(|l| l == "eta 1"), "{out}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(call(&[]).0, EXIT_USAGE);
    assert_eq!(call(&["verify", "--trials", "0", "--no-fixtures"]).0, EXIT_USAGE);
    assert_eq!(call(&["verify", "--max-facet-size", "1"]).0, EXIT_USAGE);
    assert_eq!(call(&["info", "/nonexistent/file.scx"]).0, EXIT_USAGE);
    assert_eq!(call(&["info", "@no_such_fixture"]).0, EXIT_USAGE);
    let dir = tempfile::tempdir().unwrap();
    let bad = write_fixture(dir.path(), "bad", "v a b\nf\n");
    let (code, _, err) = call(&["info", &bad]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn verify_is_deterministic_and_passes_true_properties() {
    let args = ["verify", "--seed", "7", "--trials", "30", "--property", "triangle", "--property", "c-le-ic", "--json"];
    let (code, first, _) = call(&args);
    assert_eq!(code, EXIT_OK);
    let (_, second, _) = call(&args);
    assert_eq!(first, second);
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["schema"], 1);
}

#[test]
fn violations_write_bundles_that_replay() {
    let dir = tempfile::tempdir().unwrap();
    let bundles = dir.path().join("bundles");
    let (code, out, _) = call(&[
        "verify",
        "--property",
        "complete-target",
        "--no-fixtures",
        "--no-observations",
        "--bundle-dir",
        bundles.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_VIOLATION, "{out}");
    let bundle = fs::read_dir(&bundles).unwrap().next().unwrap().unwrap().path();
    let (code, out, _) = call(&["verify", "--replay", bundle.to_str().unwrap()]);
    assert_eq!(code, EXIT_VIOLATION);
    assert!(out.contains("FAIL"), "{out}");
}

#[test]
fn oracle_subcommand_agrees_with_solver() {
    let (code, out, _) = call(&["oracle", "complexity", "@ex_l", "@ex_k", "--injective", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["canonical"], 3);
    let (code, _, _) = call(&["oracle", "complexity", "@ex_l", "@ex_k"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_facetcx");
    let status = Command::new(bin).args(["map-check", "@ex_l", "@ex_k"]).output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_NONE));
    assert_eq!(String::from_utf8_lossy(&status.stdout).trim(), "NONE");
    let status = Command::new(bin).arg("nope").output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_USAGE));
}
