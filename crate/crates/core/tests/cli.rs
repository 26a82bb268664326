use std::io::Write;
use std::process::{Command, Output, Stdio};

use unidisk::transforms::libera;
use unidisk::zoo::koebe;
use unidisk::TruncatedSeries;

fn unidisk(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_unidisk"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or_default()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn ok(out: &Output) -> &[u8] {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    &out.stdout
}

#[test]
fn identical_invocations_give_identical_bytes() {
    for args in [
        &["sample", "--seed", "42", "--atoms", "5", "--count", "3", "--order", "16"][..],
        &["report", "--seed", "3", "--samples", "50", "--order", "32"][..],
        &["radius", "convex", "--function", "koebe"][..],
    ] {
        let a = unidisk(args, None);
        let b = unidisk(args, None);
        assert_eq!(ok(&a), ok(&b));
    }
    let a = unidisk(&["sample", "--seed", "1"], None);
    let b = unidisk(&["sample", "--seed", "2"], None);
    assert_ne!(ok(&a), ok(&b));
}

#[test]
fn double_libera_pipeline_matches_coefficient_map() {
    let built = unidisk(&["build", "koebe", "--order", "32"], None);
    let once = unidisk(&["transform", "libera"], Some(ok(&built)));
    let twice = unidisk(&["transform", "libera"], Some(ok(&once)));
    let piped: TruncatedSeries = serde_json::from_slice(ok(&twice)).unwrap();
    let direct = libera(&libera(&koebe(32)));
    assert!(piped.max_abs_diff(&direct) <= 1e-12);
}

#[test]
fn fekete_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("koebe.json");
    std::fs::write(&path, ok(&unidisk(&["build", "koebe", "--order", "8"], None))).unwrap();
    let out = unidisk(&["functional", "fekete", "--alpha", "0", "--input", path.to_str().unwrap()], None);
    let v: serde_json::Value = serde_json::from_slice(ok(&out)).unwrap();
    assert_eq!(v["value"], 3.0);
    assert_eq!(v["bound"], 3.0);
    assert_eq!(v["margin"], 0.0);
}

#[test]
fn constructors_and_checks_chain() {
    let h = unidisk(&["build", "moebius", "--order", "32"], None);
    let star = unidisk(&["build", "starlike"], Some(ok(&h)));
    let f: TruncatedSeries = serde_json::from_slice(ok(&star)).unwrap();
    assert!(f.max_abs_diff(&koebe(33)) <= 1e-10);
    let check = unidisk(&["check", "--class", "starlike", "--r", "0.7"], Some(ok(&star)));
    let v: serde_json::Value = serde_json::from_slice(ok(&check)).unwrap();
    assert_eq!(v["holds"], true);
    let csv = unidisk(&["check", "--class", "boundary", "--r", "0.5", "--angles", "8"], Some(ok(&star)));
    assert_eq!(String::from_utf8_lossy(ok(&csv)).lines().count(), 9);
}

#[test]
fn exit_codes() {
    assert_eq!(unidisk(&["nonsense"], None).status.code(), Some(2));
    assert_eq!(unidisk(&["transform", "rotate"], None).status.code(), Some(2));
    assert_eq!(unidisk(&["transform", "dilate", "--r", "1.5"], Some(b"{}")).status.code(), Some(2));
    assert_eq!(unidisk(&["transform", "libera"], Some(b"not json")).status.code(), Some(2));
    let moebius = unidisk(&["build", "moebius", "--order", "8"], None);
    assert_eq!(unidisk(&["transform", "libera"], Some(ok(&moebius))).status.code(), Some(2));
    let out = unidisk(&["radius", "local-univalence", "--function", "koebe"], None);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8_lossy(&out.stderr).lines().count(), 1);
    assert_eq!(unidisk(&["--help"], None).status.code(), Some(0));
}
