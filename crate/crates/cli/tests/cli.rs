use std::path::Path;
use std::process::{Command, Output};

use minorforge::extremal::{random_graph_with_edges, trial_rng};
use minorforge::graph::{complete, complete_multipartite, cycle, petersen};
use minorforge::{from_graph6, to_graph6, verify_embedding, Coloring, MinorEmbedding, PatternSpec};
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_minorforge"));
    c.env_remove("MINORFORGE_CACHE");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_cached(dir: &Path, args: &[&str]) -> Output {
    bin().env("MINORFORGE_CACHE", dir).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn minor_queries_and_exit_codes() {
    let k2222 = to_graph6(&complete_multipartite(&[2, 2, 2, 2]));
    let out = run(&["minor", "--graph", &k2222, "--pattern", "kts:8,4"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["result"], "found");
    let e: MinorEmbedding = serde_json::from_value(v["embedding"].clone()).unwrap();
    assert!(verify_embedding(&complete_multipartite(&[2, 2, 2, 2]), &PatternSpec::Family { t: 8, s: 4 }, &e));

    let out = run(&["minor", "--graph", &k2222, "--pattern", "kts:8,3", "--format", "text"]);
    assert_eq!(code(&out), 1);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "none\n");

    let out = run(&["minor", "--graph", &to_graph6(&petersen()), "--pattern", &to_graph6(&complete(6))]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["result"], "none");
}

#[test]
fn budget_exhaustion_is_exit_3() {
    let out = run(&["minor", "--graph", &to_graph6(&petersen()), "--pattern", "kts:6,0", "--node-budget", "1"]);
    assert_eq!(code(&out), 3, "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_eq!(v["result"], "unknown");
    assert_eq!(v["budgets"]["nodes"], 1);
    let out = run(&["verify", "jorgensen", "--time-limit", "0.2"]);
    assert_eq!(code(&out), 3);
    assert_eq!(json(&out)["status"], "timeout");
}

#[test]
fn usage_errors_are_exit_2() {
    assert_eq!(code(&run(&["verify", "no-such-target"])), 2);
    let out = run(&["minor", "--graph", "C~~~~", "--pattern", "kts:3,0"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte"));
    assert_eq!(code(&run(&["minor", "--graph", "Bw", "--pattern", "kts:3"])), 2);
    assert_eq!(code(&run(&["enumerate", "-n", "11"])), 2);
    assert_eq!(code(&run(&["extremal", "--n", "30", "--trials", "1"])), 2);
    assert_eq!(code(&run(&["cockade", "--copies", "0"])), 2);
}

#[test]
fn graphs_from_files_and_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let adj = dir.path().join("c5.txt");
    std::fs::write(&adj, "# five-cycle\nn 5\n0 1\n1 2\n2 3\n3 4\n4 0\n").unwrap();
    let out = run(&["color", "--graph", adj.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["palette"], 3);

    let g6 = dir.path().join("k8.g6");
    std::fs::write(&g6, format!("{}\n", to_graph6(&complete(8)))).unwrap();
    let out = run(&["color", "--graph", g6.to_str().unwrap()]);
    assert_eq!(json(&out)["result"], "minor");

    let mut child = bin()
        .args(["minor", "--graph", "-", "--pattern", "kts:5,0", "--format", "text"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(to_graph6(&complete(5)).as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(code(&out), 0);
}

#[test]
fn colouring_certificates() {
    let c5 = cycle(5);
    let out = run(&["color", "--graph", &to_graph6(&c5), "--certify"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["result"], "colored");
    let c: Coloring = serde_json::from_value(v["colors"].clone()).unwrap();
    assert!(c.is_proper(&c5));
    assert_eq!(c.palette_size(), 3);

    let out = run(&["color", "--graph", &to_graph6(&complete(8))]);
    assert_eq!(json(&out)["result"], "minor");

    let cockade = json(&run(&["cockade", "--copies", "2"]));
    let g6 = cockade["graph6"].as_str().unwrap();
    let v = json(&run(&["color", "--graph", g6, "--certify"]));
    assert_eq!(v["result"], "colored");
    assert_eq!(v["palette"], 4);

    let big = to_graph6(&cycle(20));
    assert_eq!(code(&run(&["color", "--graph", &big, "--certify"])), 3);
    assert_eq!(code(&run(&["color", "--graph", &big])), 0);
}

#[test]
fn enumeration_streams_graph6() {
    let out = run(&["enumerate", "-n", "4"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 11);
    assert!(text.lines().all(|l| from_graph6(l).unwrap().n() == 4));
    let out = run(&["enumerate", "-n", "8", "--edges", "4", "--count"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "11");
    let out = run(&["enumerate", "-n", "5", "--forbid", &to_graph6(&complete(3)), "--format", "json"]);
    let v = json(&out);
    // triangle-free graphs on 5 vertices
    assert_eq!(v["count"], 14);
}

#[test]
fn cockades_and_extremal_runs() {
    let out = run(&["cockade", "--copies", "1", "--format", "text"]);
    let g = from_graph6(String::from_utf8_lossy(&out.stdout).trim()).unwrap();
    assert!(minorforge::are_isomorphic(&g, &complete_multipartite(&[2, 2, 2, 2])));

    let dir = tempfile::tempdir().unwrap();
    let schedule = dir.path().join("glue.json");
    std::fs::write(&schedule, r#"[{"target": [0, 2, 4, 6], "source": [1, 3, 5, 7]}]"#).unwrap();
    let v = json(&run(&["cockade", "--copies", "2", "--schedule", schedule.to_str().unwrap()]));
    assert_eq!(v["n"], 12);
    assert_eq!(v["edges"], 42);
    std::fs::write(&schedule, r#"[{"target": [0, 1, 2, 3], "source": [1, 3, 5, 7]}]"#).unwrap();
    assert_eq!(code(&run(&["cockade", "--copies", "2", "--schedule", schedule.to_str().unwrap()])), 2);

    let out = run(&["verify", "cockade", "--copies", "2"]);
    assert_eq!(code(&out), 0);
    let d = &json(&out)["report"]["details"];
    assert_eq!(d["edges"], 42);
    assert_eq!(d["k8m3_minor"], false);
    assert_eq!(d["k8m4_minor"], true);

    let out = run(&["extremal", "--n", "10", "--trials", "50", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["failures"], 0);
    assert_eq!(v["seed"], 7);
}

#[test]
fn verification_targets() {
    let out = run(&["verify", "lemma-k64"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["report"]["counterexamples"], Value::Array(vec![]));
    assert_eq!(code(&run(&["verify", "lemma-h8"])), 0);
    assert_eq!(code(&run(&["verify", "gadgets"])), 0);
    assert_eq!(code(&run(&["verify", "configs"])), 0);
    assert_eq!(code(&run(&["verify", "corollary-k84"])), 0);
    let out = run(&["verify", "jorgensen", "--exhaustive-max-n", "8", "--samples", "20"]);
    assert_eq!(code(&out), 0);
    // the enumeration finds four complements where five are expected, so
    // this target reports a failure
    let out = run(&["verify", "family-counts"]);
    let d = &json(&out)["report"]["details"];
    assert_eq!(d["k8_minus_4_classes"], 11);
    assert_eq!(d["figure1_complements"], 4);
    assert_eq!(code(&out), 1);
}

#[test]
fn stable_output_is_byte_identical() {
    let args = ["extremal", "--n", "11", "--trials", "20", "--seed", "3", "--stable"];
    let a = run(&args);
    let b = bin().args(args).arg("--threads").arg("1").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert!(!String::from_utf8_lossy(&a.stdout).contains("elapsed_ms"));
    assert!(String::from_utf8_lossy(&run(&["extremal", "--n", "9", "--trials", "2"]).stdout).contains("elapsed_ms"));
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["verify", "cockade", "--copies", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["report"]["details"]["edges"], 24);
}

#[test]
fn cache_replays_match_recomputation() {
    let dir = tempfile::tempdir().unwrap();
    let patterns = ["kts:4,0", "kts:5,1", "kts:6,2", "kts:6,4", "kts:7,3"];
    for i in 0..100u64 {
        let mut r = trial_rng(99, i);
        let n = 6 + (i as usize % 5);
        let m = (n * (n - 1) / 2) * (3 + (i as usize % 5)) / 8;
        let g6 = to_graph6(&random_graph_with_edges(n, m, &mut r));
        let args: Vec<&str> = if i % 4 == 3 {
            vec!["color", "--graph", &g6, "--stable"]
        } else {
            vec!["minor", "--graph", &g6, "--pattern", patterns[i as usize % patterns.len()], "--stable"]
        };
        let fresh = run(&args);
        let miss = run_cached(dir.path(), &args);
        let hit = run_cached(dir.path(), &args);
        assert_eq!(fresh.stdout, miss.stdout, "{args:?}");
        assert_eq!(miss.stdout, hit.stdout, "{args:?}");
        assert_eq!(code(&fresh), code(&hit));
    }
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 50);
}

#[test]
fn cache_entries_are_shared_by_isomorphic_inputs_and_checked() {
    let dir = tempfile::tempdir().unwrap();
    let g = random_graph_with_edges(9, 26, &mut trial_rng(5, 0));
    let perm = [3, 7, 0, 8, 1, 5, 2, 6, 4];
    let h = g.permute(&perm);
    let args = |x: &str| vec!["minor".to_string(), "--graph".into(), x.to_string(), "--pattern".into(), "kts:6,1".into()];
    let a = bin().env("MINORFORGE_CACHE", dir.path()).args(args(&to_graph6(&g))).output().unwrap();
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let b = bin().env("MINORFORGE_CACHE", dir.path()).args(args(&to_graph6(&h))).output().unwrap();
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1, "isomorphic inputs share an entry");
    assert_eq!(code(&a), code(&b));
    if code(&b) == 0 {
        let e: MinorEmbedding = serde_json::from_value(json(&b)["embedding"].clone()).unwrap();
        assert!(verify_embedding(&h, &PatternSpec::Family { t: 6, s: 1 }, &e));
    }
    // entries from another schema version are recomputed
    let entry = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let text = std::fs::read_to_string(&entry).unwrap();
    std::fs::write(&entry, text.replace("\"schema\":1", "\"schema\":99")).unwrap();
    let c = bin().env("MINORFORGE_CACHE", dir.path()).args(args(&to_graph6(&g))).output().unwrap();
    assert_eq!(code(&a), code(&c));
    assert!(std::fs::read_to_string(&entry).unwrap().contains("\"schema\":1"));
}
