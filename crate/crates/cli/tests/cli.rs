use std::path::PathBuf;
use std::process::{Command, Output};

use lefschetz_core::braid::LiftClass;
use lefschetz_core::report::{decode, SCHEMA_VERSION};

fn spec(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../specs")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lefschetz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn demo_machine_report_decodes() {
    let out = run(&["analyze", "--demo", "mn", "--n", "3", "--format", "machine"]);
    assert_eq!(code(&out), 0);
    let report = decode(&stdout(&out)).unwrap();
    assert_eq!(report.schema_version, SCHEMA_VERSION);
    assert_eq!(report.source, "demo:mn:3");
    let inv = &report.analysis.invariants;
    assert_eq!((inv.chi, inv.sigma, inv.b2plus), (28, Some(-16), Some(6)));
    assert!(inv.h1.as_ref().unwrap().is_z_plus_cyclic(3));
    assert_eq!(report.analysis.lift.class(), Some(LiftClass::Trivial));
}

#[test]
fn machine_output_is_byte_identical_across_runs() {
    let args = ["analyze", "--demo", "mn", "--n", "5", "--format", "machine"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
    let m3 = spec("m3.json");
    let args = [
        "analyze",
        "--spec",
        m3.to_str().unwrap(),
        "--format",
        "machine",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn parsed_spec_reports_unknown_complex_structure() {
    let m3 = spec("m3.json");
    let out = run(&[
        "analyze",
        "--spec",
        m3.to_str().unwrap(),
        "--format",
        "machine",
    ]);
    assert_eq!(code(&out), 0);
    let report = decode(&stdout(&out)).unwrap();
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        value["analysis"]["invariants"]["complex_structure"],
        "unknown"
    );
    assert!(report.analysis.invariants.h1.unwrap().is_z_plus_cyclic(3));
}

#[test]
fn empty_spec_text_report() {
    let out = run(&["analyze", "--spec", spec("empty_g2.json").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("chi = -4"), "{text}");
    assert!(text.contains("sigma = 0"), "{text}");
    assert!(text.contains("lift = Trivial"), "{text}");
}

#[test]
fn untwisted_demo() {
    let out = run(&["analyze", "--demo", "mn", "--n", "0"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("H1 = Z^2"), "{text}");
    assert!(text.contains("complex structure: unknown"), "{text}");
}

#[test]
fn invalid_spec_exits_2() {
    let out = run(&[
        "analyze",
        "--spec",
        spec("invalid_separating.json").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("`s`"));
}

#[test]
fn invalid_spec_among_valid_ones_still_exits_2() {
    let out = run(&[
        "analyze",
        "--spec",
        spec("empty_g2.json").to_str().unwrap(),
        "--spec",
        spec("invalid_separating.json").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("chi = -4"));
}

#[test]
fn strict_undecided_exits_3() {
    let path = spec("matsumoto.json");
    let path = path.to_str().unwrap();
    let lax = run(&[
        "analyze", "--spec", path, "--budget", "1000", "--format", "machine",
    ]);
    assert_eq!(code(&lax), 0);
    let report = decode(&stdout(&lax)).unwrap();
    assert_eq!(report.analysis.lift.class(), Some(LiftClass::Undecided));
    let strict = run(&["analyze", "--spec", path, "--budget", "1000", "--strict"]);
    assert_eq!(code(&strict), 3);
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&run(&["bogus"])), 64);
    assert_eq!(code(&run(&["analyze"])), 64);
    assert_eq!(
        code(&run(&["analyze", "--spec", "/nonexistent/spec.json"])),
        64
    );
    assert_eq!(code(&run(&["classify-hypersurface", "0"])), 64);
    assert_eq!(code(&run(&["braid", "perm", "--strands", "3", "5"])), 64);
    assert_eq!(
        code(&run(&[
            "braid",
            "liftclass",
            "--strands",
            "3",
            "--ambient",
            "planar",
            "1"
        ])),
        64
    );
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn classify_hypersurfaces() {
    let out = run(&["classify-hypersurface", "3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("CP2 # 6 CP2bar, b2- = 6"));
    let out = run(&["classify-hypersurface", "2"]);
    assert!(stdout(&out).contains("(spin)"));
    let out = run(&["classify-hypersurface", "1", "--format", "machine"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["diffeo_type"], "CP2");
    assert_eq!(value["b2minus"], 0);
    let out = run(&["classify-hypersurface", "7"]);
    assert_eq!(code(&out), 4);
    assert!(stdout(&out).starts_with("Unsupported"));
    assert_eq!(
        code(&run(&["classify-hypersurface", "18446744073709551615"])),
        4
    );
}

#[test]
fn braid_queries() {
    let out = run(&["braid", "perm", "--strands", "3", "1", "2"]);
    assert_eq!(stdout(&out), "permutation: (1 3 2)\n");
    let out = run(&["braid", "degree", "--strands", "3", "1,2,-1"]);
    assert_eq!(stdout(&out), "degree: 1\n");
    let out = run(&["braid", "liftclass", "--strands", "3", "1", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("mcg-trivial: true"), "{text}");
    assert!(text.contains("lift class: FullTwist"), "{text}");
    let out = run(&["braid", "liftclass", "--strands", "3", "1"]);
    assert!(stdout(&out).contains("mcg-trivial: false"));
    let out = run(&["braid", "liftclass", "--strands", "4", "1", "1", "2", "2"]);
    assert!(stdout(&out).contains("mcg-trivial: false"));
}

#[test]
fn out_directory_receives_reports() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("reports");
    let out = run(&[
        "analyze",
        "--spec",
        spec("m3.json").to_str().unwrap(),
        "--spec",
        spec("empty_g2.json").to_str().unwrap(),
        "--format",
        "machine",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let m3 = std::fs::read_to_string(target.join("m3.json")).unwrap();
    assert_eq!(decode(&m3).unwrap().analysis.letters, 32);
    let empty = std::fs::read_to_string(target.join("empty_g2.json")).unwrap();
    assert_eq!(decode(&empty).unwrap().analysis.invariants.chi, -4);
}
