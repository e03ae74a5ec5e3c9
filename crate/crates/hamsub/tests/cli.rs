//! End-to-end checks of the binary: every subcommand emits valid JSON (or
//! graph6 for `gen`), output is byte-identical across runs and worker
//! counts, and the exit-code policy holds.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hamsub"))
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.as_mut().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn assert_json_lines(out: &[u8]) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap_or_else(|e| panic!("bad JSON line {l}: {e}")))
        .collect()
}

#[test]
fn every_subcommand_emits_valid_json() {
    let g6 = "C~\nBw\nD~{\n";
    for args in [
        vec!["count", "--nu", "--by-size"],
        vec!["pxy", "--x", "0", "--y", "1"],
        vec!["analyze"],
        vec!["certify"],
        vec!["extract-expander"],
        vec!["find-structure", "--d", "2"],
    ] {
        let out = run_with_stdin(&args, g6);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let lines = assert_json_lines(&out.stdout);
        assert!(lines.len() >= 4, "{args:?}: header plus one object per graph");
        assert_eq!(lines[0]["type"], "header");
        assert!(lines[0]["config"]["cap"].is_u64(), "header embeds the config");
    }
    let out = run_with_stdin(&["formulas", "--d", "3"], "");
    let doc = &assert_json_lines(&out.stdout)[0];
    assert_eq!(doc["complete"], 5);
    assert_eq!(doc["glued"], 6);
    assert_eq!(doc["bipartite_dd"], 10);
    assert_eq!(doc["tuza_floor"], 3);

    let komlos = run_with_stdin(&["verify-komlos", "--d", "3"], g6);
    assert!(komlos.status.success());
    let doc = &assert_json_lines(&komlos.stdout)[0];
    assert_eq!(doc["kind"], "komlos");
    assert!(doc.get("elapsed_ms").is_none(), "timing only with --timing");
    let timed = run_with_stdin(&["verify-komlos", "--d", "3", "--timing"], g6);
    assert!(assert_json_lines(&timed.stdout)[0].get("elapsed_ms").is_some());
}

#[test]
fn build_subcommands_emit_valid_json() {
    let k60 = String::from_utf8(
        bin().args(["gen", "complete", "150"]).output().unwrap().stdout,
    )
    .unwrap();
    let out = run_with_stdin(
        &["build-web", "--h0", "2", "--h1", "2", "--h2", "3", "--h3", "4", "--count", "1"],
        &k60,
    );
    assert!(out.status.success());
    let lines = assert_json_lines(&out.stdout);
    assert_eq!(lines[1]["webs"].as_array().unwrap().len(), 1);

    let k300 = String::from_utf8(
        bin().args(["gen", "complete", "300"]).output().unwrap().stdout,
    )
    .unwrap();
    let out = run_with_stdin(
        &["build-cycle", "--mode", "dense", "--z-size", "4", "--u-size", "3"],
        &k300,
    );
    let lines = assert_json_lines(&out.stdout);
    assert!(lines[1]["cycle"].is_array(), "{}", lines[1]);

    let reg = String::from_utf8(
        bin().args(["gen", "regular", "400", "4", "--seed", "12"]).output().unwrap().stdout,
    )
    .unwrap();
    let out = run_with_stdin(
        &[
            "build-cycle", "--mode", "sparse", "--z-size", "8", "--u-size", "4", "--r", "1",
            "--k", "1", "--budget", "40", "--gate", "3",
        ],
        &reg,
    );
    let lines = assert_json_lines(&out.stdout);
    assert!(lines[1]["cycle"].is_array(), "{}", lines[1]);
    assert_eq!(lines[1]["z_intersection"].as_array().unwrap().len(), 4);
}

#[test]
fn gen_emits_known_graph6() {
    let out = bin().args(["gen", "complete", "4"]).output().unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "C~");
    let out = bin().args(["gen", "figure1", "3"]).output().unwrap();
    assert_eq!(out.stdout.split(|&b| b == b'\n').filter(|l| !l.is_empty()).count(), 4);
    let out = bin().args(["gen", "stream", "4", "--min-degree", "3"]).output().unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "C~");
}

#[test]
fn output_is_byte_identical_across_runs_and_threads() {
    let stream: String = {
        let out = bin().args(["gen", "stream", "6", "--min-degree", "2"]).output().unwrap();
        String::from_utf8(out.stdout).unwrap()
    };
    let runs: Vec<Vec<u8>> = [
        vec!["verify-komlos", "--d", "2"],
        vec!["verify-komlos", "--d", "2"],
        vec!["verify-komlos", "--d", "2", "--threads", "4"],
        vec!["verify-komlos", "--d", "2", "--threads", "13"],
    ]
    .iter()
    .map(|args| run_with_stdin(args, &stream).stdout)
    .collect();
    assert_eq!(runs[0], runs[1], "identical across runs");
    assert_eq!(runs[0], runs[2], "identical across thread counts");
    assert_eq!(runs[0], runs[3]);

    let counts: Vec<Vec<u8>> = [1, 7]
        .iter()
        .map(|t| {
            run_with_stdin(&["count", "--threads", &t.to_string(), "--nu"], &stream).stdout
        })
        .collect();
    assert_eq!(counts[0], counts[1]);
}

#[test]
fn exit_codes_follow_policy() {
    // violations exit 0 by default, 1 under --strict (K_5 at d=3 is a
    // stability finding, not an exception)
    let out = run_with_stdin(&["verify-stability", "--d", "3", "--alpha", "0.1"], "D~{\n");
    assert_eq!(out.status.code(), Some(0));
    let doc = &assert_json_lines(&out.stdout)[0];
    assert_eq!(doc["violations"].as_array().unwrap().len(), 1);
    let out = run_with_stdin(
        &["verify-stability", "--d", "3", "--alpha", "0.1", "--strict"],
        "D~{\n",
    );
    assert_eq!(out.status.code(), Some(1));

    // usage errors exit 2
    let out = run_with_stdin(&["count", "--no-such-flag"], "");
    assert_eq!(out.status.code(), Some(2));

    // malformed graph6 records become error objects, the stream continues
    let out = run_with_stdin(&["count"], "C~\n!!!\nBw\n");
    assert_eq!(out.status.code(), Some(0));
    let lines = assert_json_lines(&out.stdout);
    assert_eq!(lines[2]["type"], "error");
    assert!(lines[2]["error"].as_str().unwrap().contains("offset"));
    assert_eq!(lines[3]["c"], 1);

    // cap exceedance is its own error path
    let big = String::from_utf8(
        bin().args(["gen", "cycle", "30"]).output().unwrap().stdout,
    )
    .unwrap();
    let out = run_with_stdin(&["count"], &big);
    assert_eq!(out.status.code(), Some(0));
    let lines = assert_json_lines(&out.stdout);
    assert!(lines[1]["error"].as_str().unwrap().contains("cap"));
}

#[test]
fn config_file_is_applied_and_overridden() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hamsub.conf");
    std::fs::write(&path, "cap=12\nseed=5\n").unwrap();
    let out = run_with_stdin(
        &["--config", path.to_str().unwrap(), "count"],
        "C~\n",
    );
    let lines = assert_json_lines(&out.stdout);
    assert_eq!(lines[0]["config"]["cap"], 12);
    assert_eq!(lines[0]["config"]["seed"], 5);
    let out = run_with_stdin(
        &["--config", path.to_str().unwrap(), "count", "--cap", "20"],
        "C~\n",
    );
    let lines = assert_json_lines(&out.stdout);
    assert_eq!(lines[0]["config"]["cap"], 20, "flags beat the file");
}

#[test]
fn csv_sidecar_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("counts.csv");
    let out = run_with_stdin(
        &["verify-komlos", "--d", "3", "--csv", path.to_str().unwrap()],
        "C~\nBw\n",
    );
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("graph6,n,e,c,outcome"));
    assert_eq!(lines.next(), Some("C~,4,6,5,equality"));
    assert!(lines.next().unwrap().starts_with("Bw,3,3,"));
}
