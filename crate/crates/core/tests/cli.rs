mod common;

use std::process::{Command, Output};

use common::example_path;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_order-voronoi")).args(args).output().unwrap()
}

fn example(name: &str) -> String {
    example_path(name).to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn cell_reports_json_by_default() {
    let o = run(&["cell", &example("three_sites_ray.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "cell");
    assert_eq!(v["report"]["lp_dim"], 1);
    assert_eq!(v["report"]["predicted_dim"], 1);
}

#[test]
fn text_format_is_plain() {
    let o = run(&["--format", "text", "dim", &example("three_sites_ray.json")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(serde_json::from_str::<serde_json::Value>(&text).is_err());
    assert!(text.contains('1'));
}

#[test]
fn neighbors_finds_the_minimal_set() {
    let o = run(&["neighbors", &example("quadrant_wedge.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["minimal_sets"], serde_json::json!([["a", "c"]]));
}

#[test]
fn relations_and_farthest_succeed() {
    assert_eq!(run(&["relations", &example("cyclic_quadrilateral.json")]).status.code(), Some(0));
    let o = run(&["--format", "text", "farthest", &example("farthest_collinear.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("mid"));
}

#[test]
fn bad_input_exits_2() {
    assert_eq!(run(&["cell", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["--max-dim", "2", "cell", &example("three_sites_ray.json")]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"dimension": 2, "sites": [{"id": "a", "coords": ["1", "x"]}], "S": ["a"]}"#).unwrap();
    assert_eq!(run(&["cell", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_passes_on_a_small_sweep() {
    let o = run(&["--seed", "3", "verify", "--n", "2", "--instances", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["failures"], serde_json::json!([]));
}

#[test]
fn gen_writes_files_that_verify_reads() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&["--seed", "5", "--out", out, "gen", "--n", "3", "--count", "3", "--fraction", "1/2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let mut files: Vec<String> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path().to_str().unwrap().to_string())
        .collect();
    files.sort();
    assert_eq!(files.len(), 3);
    assert!(files[0].ends_with("instance-0000.json"));
    let mut args = vec!["verify", "--checks", "dimension,membership"];
    args.extend(files.iter().map(String::as_str));
    assert_eq!(run(&args).status.code(), Some(0));
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.svg");
    let o = run(&["--out", path.to_str().unwrap(), "render", &example("cocircular_ambiguous.json"), "-k", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.contains("<svg") && svg.contains("<path"));
    assert_eq!(run(&["render", &example("three_sites_ray.json")]).status.code(), Some(2));
}
