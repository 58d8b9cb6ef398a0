mod common;

use common::*;
use mci::format::{parse_structure_file, to_text, Item};
use mci::zoo::make_cyclic;

fn args(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn run_in_process(list: &[&str]) -> (i32, String) {
    let mut full = vec!["mci".to_string()];
    full.extend(args(list));
    let mut out = Vec::new();
    let code = mci::cli::run(&full, &mut out);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn golden_script_exit_codes_and_determinism() {
    let (first, bad, dir) = run_script();
    assert!(bad.is_empty(), "{}", bad.join("\n"));
    let (second, _, _) = run_script();
    assert_eq!(first, second);
    let (n, failures) = reverify_outputs(dir.path());
    assert!(n >= 10);
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn every_report_line_is_tagged() {
    let (transcript, _, _) = run_script();
    for line in transcript.lines() {
        if line.starts_with('$') || line.starts_with("[exit") {
            continue;
        }
        assert!(
            ["PASS ", "FAIL ", "ERROR ", "INFO "]
                .iter()
                .any(|p| line.starts_with(p)),
            "untagged line: {line}"
        );
    }
}

#[test]
fn export_matches_checked_in_files() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = run_bin(dir.path(), &args(&["export-zoo", "z"]));
    assert_eq!(code, 0);
    let mut n = 0;
    for e in std::fs::read_dir(dir.path().join("z")).unwrap() {
        let p = e.unwrap().path();
        let name = p.file_name().unwrap();
        let golden = std::fs::read_to_string(golden_dir().join(name)).unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), golden, "{name:?}");
        n += 1;
    }
    assert!(n > 30);
}

#[test]
fn semidirect_output_is_s3() {
    let dir = scratch_copy();
    let (code, _) = run_bin(dir.path(), &args(&["semidirect", "inv.act", "-o", "out/sd.mci"]));
    assert_eq!(code, 0);
    let sd = parse_structure_file(&std::fs::read_to_string(dir.path().join("out/sd.mci")).unwrap()).unwrap();
    let s3 = parse_structure_file(&std::fs::read_to_string(dir.path().join("s3.mci")).unwrap()).unwrap();
    assert!(brute_isomorphic(&sd, &s3));
}

#[test]
fn failure_is_exit_one_with_witness() {
    let dir = scratch_copy();
    let (code, out) = run_bin(dir.path(), &args(&["check-xmod", "broken.xm"]));
    assert_eq!(code, 1);
    let fail = out.lines().find(|l| l.starts_with("FAIL ")).unwrap();
    assert!(fail.contains(": "), "{fail}");
}

#[test]
fn structural_errors_are_exit_two() {
    let dir = scratch_copy();
    let (code, out) = run_bin(dir.path(), &args(&["verify", "bad_row.mci"]));
    assert_eq!(code, 2);
    assert!(out.starts_with("ERROR ") && out.contains("bad_row.mci:7:1:"), "{out}");
    let (code, out) = run_bin(dir.path(), &args(&["verify", "nope.mci"]));
    assert_eq!(code, 2);
    assert!(out.starts_with("ERROR "));
    let (code, _) = run_in_process(&["verify"]);
    assert_eq!(code, 2);
    let (code, _) = run_in_process(&["--help"]);
    assert_eq!(code, 0);
}

#[test]
fn size_guard_is_exit_two() {
    let dir = scratch_copy();
    let (code, out) = run_bin(
        dir.path(),
        &args(&["--max-size", "3", "check-universal", "terminal", "z4.mci"]),
    );
    assert_eq!(code, 2, "{out}");
}

#[test]
fn written_files_roundtrip_through_the_parser() {
    let z4 = make_cyclic(4).unwrap();
    let text = to_text(&Item::Structure(z4.clone()));
    let back = parse_structure_file(&text).unwrap();
    assert_eq!(*back, *z4);
}
