use std::path::Path;
use std::process::{Command, Output};

use mapspace_cli::model::parse;
use proptest::prelude::*;

fn models() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/models"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mapspace")).args(args).output().expect("binary runs")
}

fn model(name: &str) -> String {
    models().join(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn map_model_json_is_deterministic() {
    let f = model("cp2_s6.model");
    let a = run(&["map-model", &f, "--format", "json"]);
    let b = run(&["map-model", &f, "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], "mapspace-report/1");
    assert_eq!(v["command"], "map-model");
    assert_eq!(v["generators"].as_array().unwrap().len(), 4);
}

#[test]
fn q_flag_scales_the_differential() {
    let o = run(&["map-model", &model("cp2_s6.model"), "--q", "3", "--minimal"]);
    assert!(stdout(&o).contains("d = -6*x.c2_0*x.c2_0"), "{}", stdout(&o));
    let o = run(&["map-model", &model("cp2_s6.model"), "--q", "1/2", "--minimal"]);
    assert!(stdout(&o).contains("d = -x.c2_0*x.c2_0"), "{}", stdout(&o));
}

#[test]
fn strict_exit_codes() {
    let f = model("cp2_s6.model");
    assert_eq!(run(&["split-check", &f]).status.code(), Some(0));
    assert_eq!(run(&["split-check", &f, "--strict"]).status.code(), Some(1));
    assert_eq!(run(&["split-check", &model("example_y.model"), "--strict"]).status.code(), Some(0));
    assert_eq!(run(&["decompose", &model("cp3.model"), "--strict"]).status.code(), Some(1));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.model");
    std::fs::write(&bad, "sullivan Y { gen x 3; d x = y; }").unwrap();
    let o = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("undeclared"));

    std::fs::write(&bad, "sullivan Y { gen x 3 d x = 0; }").unwrap();
    assert_eq!(run(&["analyze", bad.to_str().unwrap()]).status.code(), Some(2));

    // S^3 is too highly connected a source for a 2-connected target
    std::fs::write(&bad, "lie X { gen i 3; } sullivan S3 { gen x 3; }").unwrap();
    assert_eq!(run(&["map-model", bad.to_str().unwrap()]).status.code(), Some(2));

    assert_eq!(run(&["analyze", "/nonexistent.model"]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = run(&["decompose", &model("cayley.model"), "--format", "json", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["succeeded"], true);
    assert_eq!(v["counts"][1]["rank"], 3);
}

#[test]
fn analyze_reports_within_cap_flags() {
    let o = run(&["analyze", &model("example_y.model"), "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["sullivan"][0]["d_length"], "3");
    assert_eq!(v["sullivan"][0]["betti"]["within_cap"], 29);
    assert_eq!(v["attaches"][0]["bracket_length"]["value"], "1");
}

#[test]
fn selftest_passes() {
    let o = run(&["selftest", "--count", "30"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));
}

#[test]
fn schema_file_is_valid_json() {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
    assert_eq!(v["properties"]["schema"]["const"], "mapspace-report/1");
}

fn name() -> impl Strategy<Value = String> {
    "[a-h][0-9]?".prop_map(String::from)
}

proptest! {
    #[test]
    fn printed_files_parse_back(
        gens in proptest::collection::btree_map(name(), 1i32..9, 1..5),
        coeff in -5i64..6,
        den in 1i64..4,
    ) {
        let gens: Vec<(String, i32)> = gens.into_iter().collect();
        let mut src = String::from("cap 20;\nsullivan Y {\n");
        for (g, d) in &gens {
            src.push_str(&format!("  gen {g} {d};\n"));
        }
        let (a, da) = &gens[0];
        if let Some((b, _)) = gens.iter().skip(1).find(|(_, d)| *d == 2 * da - 1) {
            src.push_str(&format!("  d {b} = {coeff}/{den}*{a}*{a};\n"));
        }
        src.push_str("}\n");
        let f = parse(&src).unwrap();
        let printed = f.to_string();
        let g = parse(&printed).unwrap();
        prop_assert_eq!(&f, &g);
        prop_assert_eq!(printed, g.to_string());
    }
}
