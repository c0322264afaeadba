use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn pdt(args: &[&str], stdin: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pdt"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn compress_text_example() {
    let out = pdt(&["compress", "--k", "2"], b"k=2 role=0\n0110\n");
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(out.stdout, b"k=2 role=1\n01*\n");

    let back = pdt(&["decompress", "--k", "2"], &out.stdout);
    assert_eq!(back.stdout, b"k=2 role=0\n0110\n");
}

#[test]
fn no_flush_drops_pending_pop() {
    let flushed = pdt(&["compress", "--k", "2"], b"k=2 role=0\n00\n");
    assert_eq!(flushed.stdout, b"k=2 role=1\n0+\n");
    let bare = pdt(&["compress", "--k", "2", "--no-flush"], b"k=2 role=0\n00\n");
    assert_eq!(bare.stdout, b"k=2 role=1\n0\n");
}

#[test]
fn file_round_trip_is_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    let seq = dir.path().join("seq.bin");
    let packed = dir.path().join("seq.pdt");
    let back = dir.path().join("back.bin");
    for args in [
        vec!["gen", "--k", "3", "--n-max", "4", "--out", path(&seq)],
        vec!["compress", "--k", "3", "--in", path(&seq), "--out", path(&packed)],
        vec!["decompress", "--k", "3", "--in", path(&packed), "--out", path(&back)],
    ] {
        let out = pdt(&args, b"");
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let original = std::fs::read(&seq).unwrap();
    assert_eq!(&original[..4], b"PDT1");
    // Blocks 1..=4 of k = 3 hold 2·Σ n·3ⁿ = 2·(3 + 18 + 81 + 324) symbols.
    assert_eq!(original.len(), 16 + 2 * 852);
    assert_eq!(std::fs::read(&back).unwrap(), original);
    assert!(std::fs::metadata(&packed).unwrap().len() < original.len() as u64);
}

#[test]
fn format_override() {
    let out = pdt(&["compress", "--k", "2", "--format", "binary"], b"k=2 role=0\n0110\n");
    assert_eq!(out.stdout, b"PDT1\x01\x01\x02\x00\x03\0\0\0\0\0\0\0\x00\x00\x01\x00\x03\x00");
}

#[test]
fn verify_small_range_passes() {
    let out = pdt(&["verify", "--k-min", "2", "--k-max", "5", "--n-max", "4"], b"");
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 7);
    assert!(text.lines().all(|l| l.starts_with("PASS ")), "{text}");
}

#[test]
fn bound_table() {
    let out = pdt(&["bound", "--k-min", "6", "--k-max", "8"], b"");
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let sufficient: Vec<&str> = text.lines().skip(1).map(|l| l.split_whitespace().nth(3).unwrap()).collect();
    assert_eq!(sufficient, ["false", "true", "true"]);
    assert!(text.contains("9^43 < 7^49"));
}

#[test]
fn ratio_csv() {
    let out = pdt(&["ratio", "--k", "3,4", "--n-max", "3", "--csv", "-"], b"");
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,variant,n,prefix_len,out_len,rho,h_observed,h_expected,d,N,bound_ok"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[2][..3], ["3", "paired-lex", "3"]);
    // Observed and expected singleton counts agree: 72 for k = 3, n = 3.
    assert_eq!(rows[2][6..8], ["72", "72"]);
    assert!(rows.iter().all(|r| r[10] == "true"));
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(pdt(&["frobnicate"], b"").status.code(), Some(2));
    assert_eq!(pdt(&["compress"], b"").status.code(), Some(2));
    // Header says k = 3.
    assert_eq!(pdt(&["compress", "--k", "2"], b"k=3 role=0\n012\n").status.code(), Some(2));
    // A compressed stream is not valid compressor input.
    assert_eq!(pdt(&["compress", "--k", "2"], b"k=2 role=1\n01*\n").status.code(), Some(2));
    // Truncated binary.
    assert_eq!(pdt(&["decompress", "--k", "2"], b"PDT1\x01\x01\x02\x00\x05").status.code(), Some(2));
    // σ₂ with nothing to pop.
    let bad = pdt(&["decompress", "--k", "2"], b"k=2 role=1\n*\n");
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("error"));
}
