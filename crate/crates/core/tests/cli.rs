use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rhospace::cli::{EXIT_CAP, EXIT_INVALID, EXIT_OTHER, EXIT_PARSE};
use rhospace::constructions::{tensor, Caps};
use rhospace::io::{parse_preorder, parse_space, parse_topology, space_to_json};
use rhospace::paths::{integer_grid, LineKind};
use rhospace::symmetry::coreflective_preorder;
use rhospace::topology::future_topology;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_rhospace"));
    c.env_remove("RHOSPACE_CAP");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn rho_grid(dir: &TempDir) -> PathBuf {
    write(dir, "grid.json", &space_to_json(&integer_grid(LineKind::Rho, 4).unwrap()))
}

#[test]
fn reflective_symmetrization_of_the_rho_grid_is_chaotic() {
    let dir = TempDir::new().unwrap();
    let g = rho_grid(&dir);
    let o = run(&["symmetrize", "--mode", "reflective", "--space", s(&g), "--json"]);
    assert!(o.status.success());
    let out = parse_space(&stdout(&o)).unwrap();
    assert_eq!(out.len(), 4);
    assert!(out.matrix().entries().all(|e| e.is_neg_inf()));
}

#[test]
fn valuation_of_the_fixed_profile() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.csv", "t,y\n0,0\n1/3,3\n2/3,1\n1,2\n");
    let o = run(&["valuate", "--path", s(&p), "--kind", "rho"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for line in ["v: 2\n", "v_plus: 4\n", "v_minus: 2\n", "total_variation: 6\n"] {
        assert!(text.contains(line), "{text}");
    }
}

#[test]
fn step_path_valuation_needs_its_space() {
    let dir = TempDir::new().unwrap();
    let g = rho_grid(&dir);
    let p = write(&dir, "p.csv", "t,point\n0,0\n1/2,3\n3/4,1\n");
    let o = run(&["valuate", "--path", s(&p), "--space", s(&g), "--json"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("\"v\": \"1\""), "{}", stdout(&o));
    let o = run(&["valuate", "--path", s(&p)]);
    assert_eq!(o.status.code(), Some(EXIT_PARSE));
}

#[test]
fn bad_diagonal_is_reported() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"points": ["a", "b"], "rho": [[1, 0], [0, 0]]}"#);
    let o = run(&["validate", "--space", s(&bad)]);
    assert_eq!(o.status.code(), Some(EXIT_INVALID));
    assert!(stdout(&o).contains("diagonal at a"), "{}", stdout(&o));
}

#[test]
fn exit_codes_separate_failure_kinds() {
    let dir = TempDir::new().unwrap();
    let g = rho_grid(&dir);
    let junk = write(&dir, "junk.json", "{");
    assert_eq!(run(&["classify", "--space", s(&junk)]).status.code(), Some(EXIT_PARSE));
    let missing = dir.path().join("missing.json");
    assert_eq!(run(&["classify", "--space", s(&missing)]).status.code(), Some(EXIT_OTHER));
    let o = run(&["tensor", "--space", s(&g), "--space", s(&g), "--cap", "10"]);
    assert_eq!(o.status.code(), Some(EXIT_CAP));
    let o = bin().args(["product", "--space", s(&g), "--space", s(&g)]).env("RHOSPACE_CAP", "10").output().unwrap();
    assert_eq!(o.status.code(), Some(EXIT_CAP));
    let rel = write(&dir, "rel.json", r#"[["0", "9"]]"#);
    let o = run(&["quotient", "--space", s(&g), "--rel", s(&rel)]);
    assert_eq!(o.status.code(), Some(EXIT_INVALID));
}

#[test]
fn emitted_files_round_trip() {
    let dir = TempDir::new().unwrap();
    let g = rho_grid(&dir);
    let grid = integer_grid(LineKind::Rho, 4).unwrap();

    let o = run(&["tensor", "--space", s(&g), "--space", s(&g), "--json"]);
    let t = parse_space(&stdout(&o)).unwrap();
    assert_eq!(t, tensor(&[&grid, &grid], &Caps::default()).unwrap());
    assert_eq!(space_to_json(&t), stdout(&o));

    let o = run(&["preorder", "--space", s(&g), "--mode", "coreflective", "--json"]);
    assert_eq!(parse_preorder(&stdout(&o)).unwrap(), coreflective_preorder(&grid));

    let d = write(&dir, "delta.json", &space_to_json(&integer_grid(LineKind::Delta, 4).unwrap()));
    let o = run(&["topology", "--space", s(&d), "--json"]);
    let top = parse_topology(&stdout(&o)).unwrap();
    assert_eq!(top, future_topology(&integer_grid(LineKind::Delta, 4).unwrap()).unwrap());
}

#[test]
fn quotient_of_the_grid_loop() {
    let dir = TempDir::new().unwrap();
    let g = rho_grid(&dir);
    let rel = write(&dir, "rel.json", r#"[["0", "3"]]"#);
    let o = run(&["quotient", "--space", s(&g), "--rel", s(&rel), "--json"]);
    assert!(o.status.success());
    let q = parse_space(&stdout(&o)).unwrap();
    assert_eq!(q.len(), 3);
    assert!(q.matrix().entries().all(|e| e.is_neg_inf()));
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let g = rho_grid(&dir);
    let d = write(&dir, "delta.json", &space_to_json(&integer_grid(LineKind::Delta, 3).unwrap()));
    let cases: Vec<Vec<&str>> = vec![
        vec!["classify", "--space", s(&g)],
        vec!["exponential", "--space", s(&d), "--space", s(&g)],
        vec!["topology", "--space", s(&d), "--past"],
        vec!["properties"],
    ];
    for args in cases {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success(), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn properties_report_has_one_line_per_criterion() {
    let o = run(&["properties", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let items = v.as_array().unwrap();
    assert_eq!(items.len(), 12);
    assert!(items.iter().all(|i| i["passed"] == true));
}
