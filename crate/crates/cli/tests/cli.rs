//! End-to-end runs of the command-line front end.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use proptest::prelude::*;
use serde_json::Value;
use tempfile::TempDir;
use toric_mirror::corpus::{self, partition_corpus, square_partition};
use toric_mirror_cli::io::{parse_polytope, parse_polytopes, print_polytope, print_polytopes};
use toric_mirror_cli::run;

const SQUARE: &str = "2 4 M\n1 1\n-1 1\n1 -1\n-1 -1\n";
const DIAMOND: &str = "2 4 M\n1 0\n-1 0\n0 1\n0 -1\n";
const SHEARED_SQUARE: &str = "2 4 M\n1 2\n-1 0\n1 0\n-1 -2\n";
const DOUBLE_SQUARE: &str = "2 4 M\n2 2\n-2 2\n2 -2\n-2 -2\n";
const SEGMENT_X: &str = "2 2 M\n-1 0\n1 0\n";
const SEGMENT_Y: &str = "2 2 M\n0 -1\n0 1\n";

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn run_args(args: &[&str]) -> (i32, Value, String) {
    let mut argv = vec!["toric-mirror", "--json"];
    argv.extend_from_slice(args);
    let out = run(argv);
    let json = if out.stdout.is_empty() {
        Value::Null
    } else {
        serde_json::from_str(&out.stdout).unwrap()
    };
    (out.code, json, out.stderr)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_reports_flags_and_strict_exit_codes() {
    let dir = TempDir::new().unwrap();
    let square = write(dir.path(), "square.poly", SQUARE);
    let (code, json, _) = run_args(&["--strict", "check", s(&square)]);
    assert_eq!(code, 0);
    assert_eq!(json["results"]["flags"]["is_reflexive"], true);

    let double = write(dir.path(), "double.poly", DOUBLE_SQUARE);
    let (code, json, _) = run_args(&["check", s(&double)]);
    assert_eq!(code, 0);
    assert_eq!(json["results"]["flags"]["is_reflexive"], false);
    assert_eq!(json["results"]["flags"]["is_lattice"], true);
    assert_eq!(json["results"]["flags"]["is_q_reflexive"], false);
    let (code, _, _) = run_args(&["--strict", "check", s(&double)]);
    assert_eq!(code, 1);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.poly", "2 3 M\n1 0\n0 x\n");
    let (code, _, err) = run_args(&["check", s(&bad)]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");
    let (code, _, _) = run_args(&["check", s(&dir.path().join("missing.poly"))]);
    assert_eq!(code, 2);
    let (code, _, _) = run_args(&["no-such-command"]);
    assert_eq!(code, 2);
}

#[test]
fn nothing_is_written_without_out_dir() {
    let dir = TempDir::new().unwrap();
    let square = write(dir.path(), "square.poly", SQUARE);
    let (code, json, _) = run_args(&["dual", s(&square)]);
    assert_eq!(code, 0);
    assert_eq!(json["outputs"], Value::Array(vec![]));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn dual_round_trips_through_files() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    let square = write(dir.path(), "square.poly", SQUARE);
    run_args(&["--out-dir", s(&out), "dual", s(&square)]);
    let dual = out.join("square.dual.poly");
    assert_eq!(
        parse_polytope(&fs::read_to_string(&dual).unwrap())
            .unwrap()
            .polytope,
        parse_polytope(DIAMOND)
            .unwrap()
            .polytope
            .with_lattice(toric_mirror::Lattice::N)
    );
    run_args(&["--out-dir", s(&out), "dual", s(&dual)]);
    let back = fs::read_to_string(out.join("square.dual.dual.poly")).unwrap();
    assert_eq!(
        back,
        print_polytope(&parse_polytope(SQUARE).unwrap().polytope)
    );
}

#[test]
fn nef_dual_of_the_square_partition_is_itself() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    let a = write(dir.path(), "a.poly", SEGMENT_X);
    let b = write(dir.path(), "b.poly", SEGMENT_Y);
    let (code, json, _) = run_args(&[
        "--strict",
        "--out-dir",
        s(&out),
        "nef-dual",
        "--parts",
        s(&a),
        s(&b),
    ]);
    assert_eq!(code, 0);
    assert_eq!(json["results"]["certificate"]["all_passed"], true);
    let parts = square_partition();
    for (i, p) in parts.parts().iter().enumerate() {
        let text = fs::read_to_string(out.join(format!("nabla_{}.poly", i + 1))).unwrap();
        let expected = p.clone().with_lattice(toric_mirror::Lattice::N);
        assert_eq!(parse_polytope(&text).unwrap().polytope, expected);
    }
    let cert: Value =
        serde_json::from_str(&fs::read_to_string(out.join("certificate.json")).unwrap()).unwrap();
    assert_eq!(cert["identities"].as_array().unwrap().len(), 8);
}

#[test]
fn nef_check_rejects_a_partition_with_a_wrong_total() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.poly", SQUARE);
    let b = write(dir.path(), "b.poly", SEGMENT_Y);
    let (code, json, _) = run_args(&["--strict", "nef-check", "--parts", s(&a), s(&b)]);
    assert_eq!(code, 1);
    assert_eq!(json["results"]["is_q_nef_partition"], false);
    assert!(json["results"]["q_nef_witness"].is_string());
}

#[test]
fn emit_ci_is_reproducible_with_a_seed() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.poly", SEGMENT_X);
    let b = write(dir.path(), "b.poly", SEGMENT_Y);
    let args = ["--seed", "42", "emit-ci", "--parts", s(&a), s(&b)];
    let first = run(std::iter::once("toric-mirror").chain(args));
    let second = run(std::iter::once("toric-mirror").chain(args));
    assert_eq!(first.code, 0);
    assert_eq!(first.stdout, second.stdout);
    let (_, json, _) = run_args(&args);
    assert_eq!(json["seed"], 42);
    assert_eq!(
        json["results"]["terms_per_equation"],
        serde_json::json!([3, 3])
    );
    assert_eq!(json["results"]["nonnegative_exponents"], true);

    let (_, other, _) = run_args(&["--seed", "43", "emit-ci", "--parts", s(&a), s(&b)]);
    assert_ne!(json["results"]["text"], other["results"]["text"]);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.poly", SEGMENT_X);
    let b = write(dir.path(), "b.poly", SEGMENT_Y);
    let outs: Vec<PathBuf> = (0..2).map(|k| dir.path().join(format!("out{k}"))).collect();
    let stdouts: Vec<String> = outs
        .iter()
        .map(|o| {
            run([
                "toric-mirror",
                "--seed",
                "7",
                "--out-dir",
                s(o),
                "cayley",
                "--parts",
                s(&a),
                s(&b),
            ])
            .stdout
            .replace(s(o), "OUT")
        })
        .collect();
    assert_eq!(stdouts[0], stdouts[1]);
    for name in ["cayley.cone", "mirror.cone"] {
        assert_eq!(
            fs::read(outs[0].join(name)).unwrap(),
            fs::read(outs[1].join(name)).unwrap()
        );
    }
}

#[test]
fn cayley_cone_of_the_square_partition() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.poly", SEGMENT_X);
    let b = write(dir.path(), "b.poly", SEGMENT_Y);
    let (code, json, _) = run_args(&["--strict", "cayley", "--parts", s(&a), s(&b)]);
    assert_eq!(code, 0);
    assert_eq!(json["results"]["cayley"]["almost_reflexive_index"], 2);
    assert_eq!(json["results"]["cayley"]["reflexive_gorenstein_index"], 2);
}

#[test]
fn emit_gcy_over_the_cone_of_the_square() {
    let dir = TempDir::new().unwrap();
    let cone = write(
        dir.path(),
        "c.cone",
        "3 4 C\n1 1 1\n-1 1 1\n1 -1 1\n-1 -1 1\n",
    );
    let (code, json, _) = run_args(&["--strict", "cone-check", s(&cone)]);
    assert_eq!(code, 0);
    assert_eq!(json["results"]["almost_reflexive_index"], 1);
    let (code, json, _) = run_args(&["emit-gcy", s(&cone)]);
    assert_eq!(code, 0);
    // Lattice points of the dual diamond.
    assert_eq!(json["results"]["terms"], 5);
}

#[test]
fn enumerate_2d_finds_sixteen_classes() {
    let dir = TempDir::new().unwrap();
    let (code, json, _) = run_args(&["--out-dir", s(dir.path()), "enumerate-2d", "--bound", "2"]);
    assert_eq!(code, 0);
    assert_eq!(json["results"]["classes"], 16);
    let reps =
        parse_polytopes(&fs::read_to_string(dir.path().join("reflexive_polygons.poly")).unwrap())
            .unwrap();
    assert_eq!(reps.len(), 16);
}

#[test]
fn dedup_groups_unimodular_images() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.poly", SQUARE);
    let b = write(dir.path(), "b.poly", SHEARED_SQUARE);
    let c = write(dir.path(), "c.poly", DIAMOND);
    let (_, json, _) = run_args(&["dedup", s(&a), s(&b)]);
    assert_eq!(json["results"]["classes"], 1);
    let (_, json, _) = run_args(&["dedup", s(&a), s(&b), s(&c)]);
    assert_eq!(json["results"]["classes"], 2);
}

#[test]
fn binary_exit_status_matches_the_library() {
    let dir = TempDir::new().unwrap();
    let double = write(dir.path(), "double.poly", DOUBLE_SQUARE);
    let bin = env!("CARGO_BIN_EXE_toric-mirror");
    let ok = Command::new(bin)
        .args(["check", s(&double)])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("is_lattice: true"));
    let strict = Command::new(bin)
        .args(["--strict", "check", s(&double)])
        .output()
        .unwrap();
    assert_eq!(strict.status.code(), Some(1));
    let bad = Command::new(bin).arg("bogus").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn printed_polytopes_parse_back(seed in any::<u64>(), d in 1usize..=4) {
        let mut rng = corpus::rng(seed);
        let ps: Vec<_> = (0..3).map(|_| corpus::random_rational_polytope(&mut rng, d, 4)).collect();
        let text = print_polytopes(&ps);
        let back: Vec<_> = parse_polytopes(&text).unwrap().into_iter().map(|p| p.polytope).collect();
        prop_assert_eq!(back, ps);
    }

    #[test]
    fn printed_partitions_parse_back(k in 0usize..30) {
        let parts = partition_corpus(1, 30);
        let part = &parts[k % parts.len()];
        for p in part.parts() {
            prop_assert_eq!(&parse_polytope(&print_polytope(p)).unwrap().polytope, p);
        }
    }
}
