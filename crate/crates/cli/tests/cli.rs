//! End-to-end tests of the binary: output bytes, exit codes, pipes, JSON.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quasihilb"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).expect("utf-8 output")
}

#[test]
fn class_example() {
    let out = run(&["class", "--k", "2", "--h", "1,1,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1 + L\n");
}

#[test]
fn class_ab_example() {
    let out = run(&[
        "class-ab",
        "--a",
        "2",
        "--b",
        "3",
        "--h",
        "1,0,1,1,1,1,2,1,1,1,1,0,1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1 + 3*L + L^2\n");
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        vec!["class", "--k", "2", "--h", "1,1,1", "--json"],
        vec!["components", "--n", "4", "--k", "2"],
        vec!["verify", "thm3", "--k", "2", "--t-order", "6", "--json"],
        vec!["catalan", "--n", "4", "--k", "2", "--symmetry-report"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "args={args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn exit_code_matrix() {
    // Verified and plain computations exit 0.
    assert_eq!(
        run(&["verify", "thm1", "--k", "1", "--n-max", "4"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        run(&["dplus", "--k", "2", "--h", "1,1,1"]).status.code(),
        Some(0)
    );
    // A count mismatch outside the gap hypothesis exits 1.
    let out = run(&[
        "verify",
        "nested",
        "--bh",
        r#"{"parts":[[1,1,1,1],[1,1]]}"#,
        "--exploratory",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "nested: chains=2 fiber=1: MISMATCH\n");
    // Preconditions and usage problems exit 2.
    assert_eq!(
        run(&["class", "--k", "2", "--h", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["class-ab", "--a", "2", "--b", "4", "--h", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "thm3", "--k", "2", "--t-order", "31"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "nested", "--bh", r#"{"parts":[[1,1,1,1],[1,1]]}"#])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "main-id", "--k", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["class", "--k", "2", "--h", "junk"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    // The guard override admits the larger order.
    assert_eq!(
        run(&[
            "verify",
            "thm3",
            "--k",
            "1",
            "--t-order",
            "31",
            "--allow-large"
        ])
        .status
        .code(),
        Some(0)
    );
}

fn decode_piped(input: &[u8]) -> Output {
    let mut child = bin()
        .args(["hookcode", "decode"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .expect("piped stdin")
        .write_all(input)
        .expect("write stdin");
    child.wait_with_output().expect("decode finishes")
}

#[test]
fn encode_decode_pipe_roundtrip() {
    for (partition, k) in [
        ("3", "2"),
        ("4,2,1", "2"),
        ("5,3,3,1", "3"),
        ("1", "1"),
        ("", "2"),
    ] {
        let enc = run(&["hookcode", "encode", "--k", k, "--partition", partition]);
        assert_eq!(enc.status.code(), Some(0), "partition={partition}");
        let dec = decode_piped(&enc.stdout);
        assert_eq!(dec.status.code(), Some(0), "partition={partition}");
        assert_eq!(stdout(&dec), format!("{partition}\n"));
    }
}

#[test]
fn decode_rejects_bad_input() {
    assert_eq!(decode_piped(b"not json").status.code(), Some(2));
    // A sequence outside the image of the encoding.
    let seq = r#"{"H":[1,1,1,1,1,1],"k":3,"parts":[[],[],[],[2]]}"#;
    assert_eq!(decode_piped(seq.as_bytes()).status.code(), Some(2));
    // A part exceeding its bounding rectangle.
    let seq = r#"{"H":[1],"k":2,"parts":[[],[2]]}"#;
    assert_eq!(decode_piped(seq.as_bytes()).status.code(), Some(2));
}

#[test]
fn json_outputs_carry_schema() {
    for args in [
        vec!["class", "--k", "2", "--h", "1,1,1", "--json"],
        vec!["components", "--n", "2", "--k", "2", "--json"],
        vec!["dplus", "--k", "2", "--h", "1,1,1", "--json"],
        vec!["catalan", "--n", "2", "--k", "2", "--json"],
        vec!["verify", "main-id", "--k", "2", "--h", "1,1,1", "--json"],
        vec![
            "verify",
            "nested",
            "--bh",
            r#"{"parts":[[1,1],[1]]}"#,
            "--json",
        ],
        vec!["hookcode", "encode", "--k", "2", "--partition", "3"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "args={args:?}");
        let v: serde_json::Value = serde_json::from_str(stdout(&out)).expect("valid JSON");
        assert_eq!(v["schema"], 1, "args={args:?}");
    }
}

#[test]
fn class_json_shape() {
    let out = run(&["class", "--k", "2", "--h", "1,1,1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out)).unwrap();
    assert_eq!(v["k"], 2);
    assert_eq!(v["H"], serde_json::json!([1, 1, 1]));
    assert_eq!(v["oracle_match"], true);
    assert_eq!(v["class"]["vars"], serde_json::json!(["L", "t"]));
    assert_eq!(v["class"]["terms"][0]["c"], "1");
}

#[test]
fn out_file_matches_stdout() {
    let args = ["catalan", "--n", "3", "--k", "2"];
    let direct = run(&args);
    let path = std::env::temp_dir().join(format!("quasihilb-out-{}.txt", std::process::id()));
    let with_file = bin()
        .args(args)
        .args(["--out", path.to_str().unwrap()])
        .output()
        .expect("binary runs");
    assert_eq!(with_file.status.code(), Some(0));
    assert!(with_file.stdout.is_empty());
    let written = std::fs::read(&path).expect("output file written");
    std::fs::remove_file(&path).ok();
    assert_eq!(written, direct.stdout);
}

#[test]
fn verify_reports_mismatch_position() {
    // Exploratory nested JSON keeps both counts visible.
    let out = run(&[
        "verify",
        "nested",
        "--bh",
        r#"{"parts":[[1,1,1,1],[1,1]]}"#,
        "--exploratory",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(stdout(&out)).unwrap();
    assert_eq!(v["verified"], false);
    assert_eq!(v["chain_count"], 2);
    assert_eq!(v["fiber_count"], 1);
}
