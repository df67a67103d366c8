//! Replays a scripted terminal session against a checked-in transcript.
//! Set `UPDATE_GOLDEN=1` to rewrite the transcript after an intended change.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../eval/fixtures").join(format!("{name}.json"))
}

fn run(args: &[&str], input: &str) -> (String, String, Option<i32>) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_eqnav"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("eqnav starts");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap(), out.status.code())
}

#[test]
fn stage1_1_transcript_matches() {
    let input = std::fs::read_to_string(dir().join("stage1-1.in")).unwrap();
    let bundle = fixture("stage1-1");
    let (stdout, stderr, code) = run(&["--bundle", bundle.to_str().unwrap()], &input);
    assert_eq!(code, Some(0), "{stderr}");
    let golden = dir().join("stage1-1.out");
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&golden, &stdout).unwrap();
    }
    let want = std::fs::read_to_string(&golden).expect("golden transcript exists");
    assert_eq!(stdout, want);
}

#[test]
fn json_flag_makes_the_opening_json() {
    let bundle = fixture("stage1-1");
    let (stdout, _, code) = run(&["--bundle", bundle.to_str().unwrap(), "--json"], "");
    assert_eq!(code, Some(0));
    let first: serde_json::Value = serde_json::from_str(stdout.lines().next().unwrap()).unwrap();
    assert_eq!(first["kind"], "text-block");
    let second: serde_json::Value = serde_json::from_str(stdout.lines().nth(1).unwrap()).unwrap();
    assert_eq!((second["kind"].as_str(), second["text"].as_str()), (Some("focus-changed"), Some("x")));
}

#[test]
fn missing_bundle_is_reported() {
    let (stdout, stderr, code) = run(&["--bundle", "/nonexistent/eq.json"], "");
    assert_eq!(code, Some(2));
    assert!(stdout.is_empty());
    assert!(stderr.contains("/nonexistent/eq.json"), "{stderr}");
}

#[test]
fn dump_dom_lists_adjacency() {
    let bundle = fixture("dom-example");
    let (stdout, _, code) = run(&["--bundle", bundle.to_str().unwrap(), "--dump-dom"], "");
    assert_eq!(code, Some(0));
    assert!(!stdout.is_empty());
}

#[test]
fn dump_audio_writes_numbered_wavs() {
    let tmp = tempfile::tempdir().unwrap();
    let bundle = fixture("stage1-1");
    let out = tmp.path().join("clips");
    let (_, stderr, code) =
        run(&["--bundle", bundle.to_str().unwrap(), "--dump-audio", out.to_str().unwrap()], "play\nright\n");
    assert_eq!(code, Some(0), "{stderr}");
    let mut names: Vec<String> =
        std::fs::read_dir(&out).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    assert_eq!(names, ["0001.wav", "0002.wav"]);
    let bytes = std::fs::read(out.join("0001.wav")).unwrap();
    assert_eq!(&bytes[..4], b"RIFF");
}
