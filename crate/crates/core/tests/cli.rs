use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fusion-ideal")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn fusion_g2_level_one() {
    let out = run(&["fusion", "--group", "G2", "--level", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let table = &v["report"]["table"];
    assert_eq!(table["basis"].as_array().unwrap().len(), 2);
    // 7 * 7 = 1 + 7
    assert_eq!(table["products"][1][1], serde_json::json!([[[0, 0], 1], [[1, 0], 1]]));
    assert_eq!(v["config"]["group"], "G2");
    assert!(v["version"].is_string());
}

#[test]
fn fusion_sizes() {
    let v = json(&run(&["fusion", "--group", "A1", "--level", "0"]));
    assert_eq!(v["report"]["table"]["basis"].as_array().unwrap().len(), 1);
    let v = json(&run(&["fusion", "--group", "G2", "--level", "2"]));
    assert_eq!(v["report"]["table"]["basis"].as_array().unwrap().len(), 4);
}

#[test]
fn fusion_csv() {
    let out = run(&["fusion", "--group", "A1", "--level", "1", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("a\\b,"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn verify_g2_exit_codes() {
    for k in ["1", "2"] {
        let out = run(&["verify-g2", "--level", k, "--primes", "2,3,5"]);
        assert_eq!(out.status.code(), Some(0), "level {k}");
        assert_eq!(json(&out)["report"]["verdict"], "pass");
    }
    assert_eq!(run(&["verify-g2", "--level", "0"]).status.code(), Some(2));
    assert_eq!(run(&["verify-g2", "--group", "A2", "--level", "1"]).status.code(), Some(2));
}

#[test]
fn census_counts() {
    let v = json(&run(&["census", "--group", "E7"]));
    assert_eq!(v["report"]["counts"]["2"]["total"], 14);
    let v = json(&run(&["census", "--group", "E8"]));
    assert_eq!(v["report"]["counts"]["2"]["non_vertex"], 25);
    let v = json(&run(&["census", "--group", "A5"]));
    assert_eq!(v["report"]["entries"].as_array().unwrap().len(), 0);
}

#[test]
fn complex_g2() {
    let out = run(&["complex", "--group", "G2", "--level", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["complex"]["ranks"], serde_json::json!([6, 18, 12]));
    assert_eq!(v["report"]["cokernel"]["oracle_rank"], 6);
    assert_eq!(v["report"]["d_squared"]["passed"], true);
}

#[test]
fn presentation_a1() {
    let out = run(&["presentation", "--group", "A1", "--level", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["generators"].as_array().unwrap().len(), 1);
    assert_eq!(v["report"]["codim_Q"], 8);
}

#[test]
fn presentation_rank_limit() {
    assert_eq!(run(&["presentation", "--group", "A3", "--level", "1"]).status.code(), Some(2));
}

#[test]
fn bases_check() {
    let out = run(&["bases-check", "--group", "G2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["bases"].as_array().unwrap().len(), 6);
    assert_eq!(v["report"]["level_one_identity"], true);
}

fn write_temp(name: &str, text: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("fusion-ideal-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gens.json");
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn verify_generators_file() {
    let good = r#"[{"terms":[{"weight":[2],"coeff":1}]}]"#;
    let path = write_temp("good", good);
    let out = run(&["verify", "--group", "A1", "--level", "1", "--generators", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["codim_Q"], 2);
}

#[test]
fn failed_check_exits_one() {
    // the trivial representation is not in the fusion ideal
    let path = write_temp("trivial", r#"[{"terms":[{"weight":[0,0],"coeff":1}]}]"#);
    let out = run(&["verify", "--group", "G2", "--level", "1", "--generators", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["report"]["membership"], serde_json::json!([false]));
}

#[test]
fn malformed_generators_exit_two() {
    let path = write_temp("bad", r#"[{"terms":[{"weight":[0],"coeff":"x"}]}]"#);
    let out = run(&["verify", "--group", "A1", "--level", "1", "--generators", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(run(&["verify", "--group", "A1"]).status.code(), Some(2));
}

#[test]
fn internal_limit_exits_three() {
    let out = run(&["presentation", "--group", "G2", "--level", "0", "--truncation", "0"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("internal limit"));
}

#[test]
fn invalid_input_exits_two() {
    assert_eq!(run(&["fusion", "--group", "X9"]).status.code(), Some(2));
    assert_eq!(run(&["fusion"]).status.code(), Some(2));
    assert_eq!(run(&["verify-g2", "--level", "2", "--primes", "4"]).status.code(), Some(2));
    assert_eq!(run(&["fusion", "--group", "A1", "--level", "3", "--truncation", "2"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn json_is_byte_stable() {
    let args = ["presentation", "--group", "G2", "--level", "1", "--primes", "2,3"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["census", "--group", "E7", "--threads", "1"]);
    let d = run(&["census", "--group", "E7", "--threads", "4"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn out_file_and_markdown() {
    let dir = std::env::temp_dir().join(format!("fusion-ideal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.md");
    let out = run(&["census", "--group", "G2", "--format", "md", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# fusion-ideal census"));
    std::fs::remove_dir_all(&dir).unwrap();
}
