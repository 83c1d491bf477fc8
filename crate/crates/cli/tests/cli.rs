use std::io::{BufRead, BufReader, Cursor, Write};
use std::net::TcpStream;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use fence_cli::run;
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(format!("{name}.json"))
        .display()
        .to_string()
}

fn fence(args: &[&str], input: &str) -> (i32, String, String) {
    let mut argv = vec!["fence"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(
        argv,
        &mut Cursor::new(input.to_string()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn area_prints_the_score() {
    let (code, out, _) = fence(&["area", &fixture("fig13")], "");
    assert_eq!((code, out.as_str()), (0, "128\n"));
    for (name, area) in [("fig12a", 29), ("fig12d", 47), ("fig8", 9), ("fig5", 5)] {
        assert_eq!(
            fence(&["area", &fixture(name)], "").1.trim(),
            area.to_string()
        );
    }
}

#[test]
fn validate_reports_violations() {
    let (code, out, _) = fence(&["validate", &fixture("fig5-corner-touch")], "");
    assert_eq!(code, 1);
    let report: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["violations"][0]["kind"], "under-connected-piece");
    let (code, out, _) = fence(&["validate", &fixture("fig12b")], "");
    assert_eq!(code, 0);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["area"], 34);
}

#[test]
fn exit_codes() {
    assert_eq!(fence(&["validate", "--bogus", &fixture("fig5")], "").0, 2);
    assert_eq!(fence(&["frobnicate"], "").0, 2);
    assert_eq!(fence(&[], "").0, 2);
    assert_eq!(fence(&["area", "/no/such/file.json"], "").0, 3);
    assert_eq!(fence(&["--help"], "").0, 0);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{").unwrap();
    let (code, _, err) = fence(&["area", bad.to_str().unwrap()], "");
    assert_eq!(code, 3);
    assert!(err.contains("malformed-json"));
}

#[test]
fn solve_small_set_and_write_solutions() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("sols");
    let (code, out, _) = fence(
        &[
            "solve",
            "--pieces",
            "i,l,o",
            "--exhaustive",
            "--box",
            "8x8",
            "--out",
            out_dir.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(code, 0);
    let summary: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(summary["maxArea"], 2);
    assert_eq!(summary["dedupCount"], 1);
    assert_eq!(summary["rawCount"], 8);
    let files: Vec<_> = std::fs::read_dir(&out_dir).unwrap().collect();
    assert_eq!(files.len(), 1);
    let path = out_dir.join("solution-001.json");
    assert_eq!(fence(&["area", path.to_str().unwrap()], "").1, "2\n");
    assert_eq!(fence(&["solve", "--pieces", "hexomino"], "").0, 2);
    assert_eq!(
        fence(&["solve", "--pieces", "i,l,o", "--time", "0"], "").0,
        2
    );
}

#[test]
fn solve_tetrominoes_exhaustively() {
    let (code, out, _) = fence(&["solve", "--pieces", "tetromino", "--exhaustive"], "");
    assert_eq!(code, 0);
    let summary: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(summary["maxArea"], 9);
    assert_eq!(summary["dedupCount"], 21);
    assert_eq!(summary["rawCount"], 168);
    assert_eq!(summary["exhaustive"], true);
}

#[test]
fn improve_prints_a_better_config() {
    let (code, out, err) = fence(&["improve", &fixture("fig12a"), "--budget", "1"], "");
    assert_eq!(code, 0);
    assert!(err.contains("area 29 -> 35"), "{err}");
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["pieceSet"], "pentomino");
    assert_eq!(fence(&["improve", &fixture("fig1-left")], "").0, 1);
}

#[test]
fn play_loop() {
    let script = "show\nmove V 270 0 0\nmove V 0 0 1\nhint\npass\npass\n";
    let (code, out, _) = fence(
        &["play", "--players", "2", "--start", &fixture("fig5")],
        script,
    );
    assert_eq!(code, 0);
    assert!(
        out.contains("rejected: the move would break the fence"),
        "{out}"
    );
    assert!(out.contains("area 8 | budgets [11, 12]"), "{out}");
    assert!(out.contains("hint:"));
    assert!(out.contains("game over"));
    assert!(out.trim_end().ends_with("final area 8"));
}

#[test]
fn serve_over_stdio() {
    let req = format!(
        "{{\"id\":1,\"op\":\"area\",\"args\":{{\"config\":{}}}}}\n",
        std::fs::read_to_string(fixture("fig13"))
            .unwrap()
            .replace('\n', "")
    );
    let (code, out, _) = fence(&["serve", "--stdio"], &req);
    assert_eq!(code, 0);
    let r: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(r["result"]["area"], 128);
}

#[test]
fn binary_honours_piece_path_and_serves_tcp() {
    let bin = env!("CARGO_BIN_EXE_fence");
    let dir = tempfile::tempdir().unwrap();
    let pieces = dir.path().join("pieces.json");
    std::fs::write(&pieces, r#"{"a":[[0,0],[1,0]]}"#).unwrap();
    let status = Command::new(bin)
        .args(["area", &fixture("fig13")])
        .env("FENCE_PIECES_PATH", &pieces)
        .stderr(Stdio::null())
        .stdout(Stdio::null())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));

    let mut child = Command::new(bin)
        .args(["serve", "--port", "0"])
        .stderr(Stdio::piped())
        .stdout(Stdio::null())
        .spawn()
        .unwrap();
    let mut banner = String::new();
    BufReader::new(child.stderr.take().unwrap())
        .read_line(&mut banner)
        .unwrap();
    let addr = banner.trim().rsplit(' ').next().unwrap().to_string();
    let mut stream = TcpStream::connect(&addr).unwrap();
    writeln!(stream, r#"{{"id":"x","op":"state"}}"#).unwrap();
    let mut line = String::new();
    BufReader::new(stream.try_clone().unwrap())
        .read_line(&mut line)
        .unwrap();
    child.kill().unwrap();
    let _ = child.wait();
    let r: Value = serde_json::from_str(&line).unwrap();
    assert_eq!(r["id"], "x");
    assert_eq!(r["error"]["code"], "bad-request");
}
