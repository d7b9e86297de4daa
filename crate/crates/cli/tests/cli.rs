use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_linhyper"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn generate(args: &[&str]) -> String {
    let mut full = vec!["generate"];
    full.extend_from_slice(args);
    let out = run(&full, "");
    assert!(out.status.success());
    stdout(&out)
}

const PETERSEN: &str = r#"{"n":10,"edges":[[0,1],[1,2],[2,3],[3,4],[0,4],[0,5],[1,6],[2,7],[3,8],[4,9],[5,7],[7,9],[6,9],[6,8],[5,8]]}"#;

#[test]
fn fano_pipeline_analysis() {
    let out = run(&["analyze"], &generate(&["fano"]));
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!((v["n"].as_u64(), v["m"].as_u64()), (Some(7), Some(7)));
    assert_eq!((v["Delta"].as_u64(), v["maxD"].as_u64()), (Some(3), Some(6)));
}

#[test]
fn exact_color_of_k4() {
    let out = run(&["color", "--exact"], &generate(&["kn", "4"]));
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["q"], 3);
    assert_eq!(v["coloring"].as_object().unwrap().len(), 6);
}

#[test]
fn missing_file_and_bad_input_exit_2() {
    assert_eq!(run(&["analyze", "missing.json"], "").status.code(), Some(2));
    assert_eq!(run(&["analyze"], "{\"n\":2,\"edges\":[[0,1],[1,0]]}").status.code(), Some(2));
    assert_eq!(run(&["analyze"], "not json").status.code(), Some(2));
    assert_eq!(run(&["frobnicate"], "").status.code(), Some(2));
    assert_eq!(run(&["color", "--bogus"], "").status.code(), Some(2));
    assert_eq!(run(&["generate", "pg", "4"], "").status.code(), Some(2));
}

#[test]
fn instance_file_argument() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fano.json");
    std::fs::write(&path, generate(&["fano"])).unwrap();
    let out = run(&["analyze", path.to_str().unwrap()], "");
    assert_eq!(json(&out)["m"], 7);
}

#[test]
fn random_generation_is_reproducible() {
    let args = ["random", "--n", "9", "--m", "10", "--rank-max", "4", "--seed", "42"];
    let a = generate(&args);
    assert_eq!(a, generate(&args));
    let out = run(&["generate", "random", "--n", "9", "--m", "10", "--seed", "42"], "");
    assert!(String::from_utf8_lossy(&out.stderr).contains("seed 42"));
    let first = run(&["analyze"], &a);
    let second = run(&["analyze"], &a);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn dimacs_export() {
    let out = run(&["export"], &generate(&["fano"]));
    let text = stdout(&out);
    assert!(text.starts_with("p edge 7 21\ne 1 2\n"));
    assert_eq!(text.lines().count(), 22);
    let out = run(&["export"], "{\"n\":4,\"edges\":[[0,1],[2,3]]}");
    assert_eq!(stdout(&out), "p edge 2 0\n");
}

#[test]
fn analyze_csv_and_extras() {
    let out = run(&["analyze", "--format", "csv"], &generate(&["fano"]));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("n,m,delta,Delta"));
    assert!(lines.next().unwrap().starts_with("7,7,3,3"));

    let out = run(&["analyze", "--triangles", "--diagnostics", "--conditions"], &generate(&["sts", "9"]));
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["diagnostics"]["f"], "18/7");
    assert_eq!(v["triangles"][0]["t1"], 9);
    assert_eq!(v["conditions"].as_array().unwrap().len(), 6);
}

#[test]
fn choosability_verbs() {
    let triangle = generate(&["kn", "3"]);
    let v = json(&run(&["choosability", "-k", "2"], &triangle));
    assert_eq!(v["status"], "not_choosable");
    assert!(v["witness"].is_object());
    let v = json(&run(&["choosability", "-k", "3"], &triangle));
    assert_eq!(v["status"], "choosable");
    assert_eq!(run(&["choosability", "-k", "0"], &triangle).status.code(), Some(2));
    let out = run(&["choosability", "-k", "2"], PETERSEN);
    assert_eq!(out.status.code(), Some(3), "15 edges exceed the choosability cap");
}

#[test]
fn exhausted_budget_exits_3() {
    let out = run(&["color", "--exact", "--limit-nodes", "1"], PETERSEN);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["status"], "limit_exceeded");
}

#[test]
fn greedy_color_with_orders() {
    let fano = generate(&["fano"]);
    for order in ["input", "clique-rank", "random"] {
        let out = run(&["color", "--order", order, "--seed", "5"], &fano);
        assert!(out.status.success());
        let v = json(&out);
        assert_eq!(v["result"]["status"], "colored");
    }
    let out = run(&["color", "--palette", "2"], &fano);
    assert_eq!(json(&out)["result"]["status"], "stuck");
    let out = run(&["color", "--format", "csv"], &fano);
    assert!(stdout(&out).starts_with("edge,color\n0,"));
}

#[test]
fn list_and_extension_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let lists = dir.path().join("lists.json");
    std::fs::write(&lists, r#"{"0":[1,2],"1":[2,3],"2":[1,3]}"#).unwrap();
    let out = run(&["color", "--lists", lists.to_str().unwrap()], &generate(&["kn", "3"]));
    assert!(out.status.success());

    // Edge order: [0,1,2], [0,3], [1,3], [2,3], [3,4].
    let h = r#"{"n":7,"edges":[[0,1,2],[0,3],[1,3],[2,3],[3,4]]}"#;
    let request = dir.path().join("extend.json");
    let palette = "[1,2,3,4,5,6,7]";
    std::fs::write(
        &request,
        format!(r#"{{"h3":{{"0":1}},"lists":{{"1":{palette},"2":{palette},"3":{palette},"4":{palette}}},"n_colors":7}}"#),
    )
    .unwrap();
    let out = run(&["color", "--extend", request.to_str().unwrap()], h);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["hypothesis_holds"], true);
    assert_eq!(v["coloring"].as_object().unwrap().len(), 5);
}

#[test]
fn conjecture_checks() {
    let fano = generate(&["fano"]);
    let out = run(&["check", "--conjecture", "C2"], &fano);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!((v["status"].as_str(), v["bound"].as_u64()), (Some("consistent"), Some(7)));
    assert_eq!(run(&["check", "--conjecture", "C4"], &fano).status.code(), Some(2));
    assert_eq!(run(&["check", "--conjecture", "C9"], &fano).status.code(), Some(2));

    let v = json(&run(&["critical"], &fano));
    assert_eq!((v["all_e_preserve_d"].as_bool(), v["all_e_r_ge_d"].as_bool()), (Some(true), Some(true)));
    let v = json(&run(&["critical"], "{\"n\":3,\"edges\":[[0,1,2]]}"));
    assert_eq!(v["all_e_preserve_d"], false);
}

#[test]
fn sweep_outputs() {
    let out = run(&["sweep", "--count", "20", "--n-max", "7", "--seed", "9", "--jobs", "2"], "");
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("instance_id,kind,seed,n,m,delta,Delta,rho,P,maxD,maxR,"));
    assert_eq!(lines.len(), 21);
    let again = run(&["sweep", "--count", "20", "--n-max", "7", "--seed", "9", "--jobs", "1"], "");
    assert_eq!(again.stdout, out.stdout);

    let dir = tempfile::tempdir().unwrap();
    let specs = dir.path().join("specs.json");
    std::fs::write(&specs, "[]").unwrap();
    let out = run(&["sweep", "--specs", specs.to_str().unwrap()], "");
    assert_eq!(stdout(&out).lines().count(), 1);

    std::fs::write(&specs, r#"[{"kind":"projective_plane","q":2},{"kind":"projective_plane","q":3}]"#).unwrap();
    let out = run(&["sweep", "--specs", specs.to_str().unwrap(), "--format", "json"], "");
    let rows = json(&out);
    for row in rows.as_array().unwrap() {
        assert_eq!(row["q_exact"], row["n"]);
    }
}
