use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use parade_core::scenes::{builtin_scene, BUILTIN_SCENES};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parade"))
        .args(args)
        .current_dir(root())
        .env_remove("PARADE_DEPTH")
        .output()
        .expect("parade runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn recipes() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(root().join("recipes")).unwrap().map(|e| e.unwrap().path()).collect();
    v.sort();
    v
}

#[test]
fn analyze_one_square_is_d4() {
    let o = run(&["analyze", "scenes/one_square.json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("elements: 8\n"), "{out}");
    assert!(out.contains("is_group: true\n"), "{out}");
    assert!(out.contains("depth: 4\n"), "{out}");
}

#[test]
fn analyze_writes_report_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("square");
    let o = run(&["analyze", "builtin:one_square", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    for f in ["report.txt", "report.json", "parade.json", "parade.dot"] {
        assert!(out.join(f).is_file(), "{f} missing");
    }
    let dot = fs::read_to_string(out.join("parade.dot")).unwrap();
    assert!(dot.starts_with("digraph support {"));
    assert_eq!(dot.matches(" -> ").count(), 8);
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["elements"], 8);
    assert_eq!(report["global_group"].as_array().unwrap().len(), 8);
}

#[test]
fn analyze_six_coins_quotient_count_matches_elements() {
    let o = run(&["analyze", "scenes/six_coins_c4.json", "--depth", "3"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("elements: 62\n"), "{out}");
    assert!(out.contains("quotient_count: 62\n"), "{out}");
}

#[test]
fn depth_env_var_sets_the_default() {
    let o = Command::new(env!("CARGO_BIN_EXE_parade"))
        .args(["analyze", "builtin:two_triangles_noswap"])
        .current_dir(root())
        .env("PARADE_DEPTH", "3")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("depth: 3\n"));
}

#[test]
fn single_point_component_is_a_geometry_error() {
    let o = run(&["analyze", &fixture("single_point.json")]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("InfiniteStabilizer"), "{}", stderr(&o));
}

#[test]
fn factor_set_outside_the_normalizer_is_rejected() {
    let o = run(&["construct", &fixture("bad_factorset.json")]);
    assert_eq!(code(&o), 4);
    assert!(stderr(&o).contains("InvalidFactorSet"), "{}", stderr(&o));
}

#[test]
fn parse_errors_exit_2() {
    for f in ["truncated.json", "unknown_schema.json"] {
        let o = run(&["validate", &fixture(f)]);
        assert_eq!(code(&o), 2, "{f}: {}", stderr(&o));
    }
    let o = run(&["compare", &fixture("truncated.json"), "recipes/v01_trivial.json"]);
    assert_eq!(code(&o), 2);
    let o = run(&["analyze", "builtin:no_such_scene"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn construct_wedge_has_29_elements() {
    let o = run(&["construct", "recipes/config_3445.json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let rec: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rec["elements"].as_array().unwrap().len(), 29);
    assert!(stderr(&o).contains("elements: 29"));
}

#[test]
fn construct_trivial_semidirect_has_3_elements() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v01.json");
    let o = run(&["construct", "recipes/v01_trivial.json", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("elements: 3\n"));
    let rec: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(rec["elements"].as_array().unwrap().len(), 3);
}

#[test]
fn compare_exit_codes() {
    let o = run(&["compare", "recipes/config_3445.json", "recipes/config_3346.json"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("verdict: none"));
    let o = run(&["compare", "scenes/two_triangles_swap.json", "recipes/swap_triangles_factorset.json"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("verdict: iso"));
    assert!(stdout(&o).contains("bijection:"));
    let o = run(&["compare", "scenes/two_triangles_noswap.json", "recipes/v01_trivial.json"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn compare_gives_up_at_depth_one() {
    let o = run(&["compare", "recipes/c4_mod_c2.json", "recipes/c4_mod_c2.json", "--depth", "1"]);
    assert!([0, 5].contains(&code(&o)), "{}", stdout(&o));
    if code(&o) == 5 {
        assert!(stdout(&o).contains("verdict: inconclusive-at-depth"));
    }
}

#[test]
fn crosscheck_exit_codes() {
    let o = run(&["crosscheck", "scenes/six_coins_c4.json", "--theorem", "T12_3", "--depth", "3"]);
    assert_eq!(code(&o), 0, "{}{}", stdout(&o), stderr(&o));
    let o = run(&["crosscheck", "scenes/two_triangles_noswap.json", "--theorem", "T8_4"]);
    assert_eq!(code(&o), 6, "{}{}", stdout(&o), stderr(&o));
    assert!(stderr(&o).contains("HypothesisViolation"));
    let o = run(&["crosscheck", "scenes/two_triangles_noswap.json", "--theorem", "T12_1"]);
    assert_eq!(code(&o), 0, "{}{}", stdout(&o), stderr(&o));
}

#[test]
fn crosscheck_json_report() {
    let o = run(&["crosscheck", "builtin:two_triangles_swap", "--theorem", "t8_4", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let rep: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rep["verdict"], "pass");
}

#[test]
fn every_recipe_round_trips_through_its_record() {
    let dir = tempfile::tempdir().unwrap();
    for r in recipes() {
        let r = r.to_str().unwrap();
        let rec = dir.path().join("rec.json");
        let rec = rec.to_str().unwrap();
        let o = run(&["construct", r, "--depth", "3", "--out", rec]);
        assert_eq!(code(&o), 0, "construct {r}: {}", stderr(&o));
        let o = run(&["compare", rec, rec, "--depth", "3"]);
        assert_eq!(code(&o), 0, "{r}: record vs itself");
        let o = run(&["compare", r, rec, "--depth", "3"]);
        assert_eq!(code(&o), 0, "{r}: recipe vs record");
    }
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for d in [&a, &b] {
        let o = run(&["analyze", "scenes/two_disks_k4.json", "--depth", "3", "--out", d.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
    }
    for f in ["report.txt", "report.json", "parade.json", "parade.dot"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f} differs");
    }
    let x = run(&["construct", "recipes/fig7_semidirect.json", "--depth", "3"]);
    let y = run(&["construct", "recipes/fig7_semidirect.json", "--depth", "3"]);
    assert_eq!(x.stdout, y.stdout);
    let x = run(&["compare", "scenes/two_triangles_swap.json", "recipes/swap_triangles_factorset.json"]);
    let y = run(&["compare", "scenes/two_triangles_swap.json", "recipes/swap_triangles_factorset.json"]);
    assert_eq!(x.stdout, y.stdout);
}

#[test]
fn shipped_scene_files_match_the_builtins() {
    for name in BUILTIN_SCENES {
        let text = fs::read_to_string(root().join("scenes").join(format!("{name}.json"))).unwrap();
        assert_eq!(text.trim_end(), builtin_scene(name).unwrap().to_json(), "{name}");
    }
}

#[test]
fn validate_scene_includes_normalizer_checks() {
    let o = run(&["validate", "scenes/similar_squares.json", "--depth", "3"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("elements: 31\n"), "{out}");
    assert!(out.contains("verdict: pass"), "{out}");
}
