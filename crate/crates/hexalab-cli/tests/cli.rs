//! End-to-end runs of the binary: exit-code conventions, malformed-input
//! handling, and byte-exact golden outputs for the fixture commands.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    path.to_str().unwrap().to_owned()
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("golden {path:?}: {e}"))
}

fn hexalab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hexalab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn exit_codes_follow_the_convention() {
    // verdict true -> 0
    let ok = hexalab(&["space", "cvc", "--recipe", &fixture("z7_13.json")]);
    assert_eq!(ok.status.code(), Some(0));
    // verdict false -> 1
    let fail = hexalab(&[
        "space",
        "cvc",
        "--recipe",
        r#"{"kind":"named","name":"path","n":3}"#,
    ]);
    assert_eq!(fail.status.code(), Some(1));
    // malformed input -> 2, no panic
    let bad = hexalab(&["space", "cvc", "--recipe", "{not json"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&bad.stderr).contains("panicked"));
    // unknown flag -> 2 (usage error)
    let usage = hexalab(&["space", "cvc", "--no-such-flag"]);
    assert_eq!(usage.status.code(), Some(2));
    // missing file -> 2
    let missing = hexalab(&["symbolic", "ind", "does-not-exist.csv"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn golden_interval_law() {
    let output = hexalab(&[
        "symbolic",
        "fdist",
        &fixture("z3z4_table.csv"),
        "--subset",
        "1,0;1,2;2,0;2,1;2,2;2,3",
        "--format",
        "csv",
    ]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout_of(&output), golden("z3z4_fdist.csv"));
}

#[test]
fn golden_distance_law() {
    let output = hexalab(&[
        "space",
        "dist",
        "--recipe",
        &fixture("z3z4.json"),
        "--subset",
        "1,0;1,2;2,0;2,1;2,2;2,3",
        "--normalize",
        "--format",
        "csv",
    ]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout_of(&output), golden("z3z4_dist.csv"));
}

#[test]
fn golden_tetrachord_classes() {
    let output = hexalab(&[
        "zrel", "classes", "--n", "12", "--k", "4", "--min-size", "2", "--format", "csv",
    ]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout_of(&output), golden("tetrachords.csv"));
}

#[test]
fn golden_zero_set() {
    let output = hexalab(&[
        "tiling", "zeros", "--n", "12", "--a", "0,6", "--format", "csv",
    ]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout_of(&output), golden("zeros_tritone.csv"));
}

#[test]
fn golden_patterson() {
    let output = hexalab(&[
        "space",
        "patterson",
        "--recipe",
        &fixture("z12.json"),
        "--subset",
        "0,1,4,6",
        "--format",
        "csv",
    ]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout_of(&output), golden("patterson_z12.csv"));
}

#[test]
fn hex_command_reports_the_verdict() {
    let output = hexalab(&[
        "space",
        "hex",
        "--recipe",
        &fixture("z3z4.json"),
        "--subset",
        "1,0;1,2;2,0;2,1;2,2;2,3",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_of(&output);
    assert!(text.contains("hexachordal property: true"));
    // measure != 1/2 is an input error
    let bad = hexalab(&[
        "space",
        "hex",
        "--recipe",
        &fixture("z3z4.json"),
        "--subset",
        "1,0;1,2",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn symbolic_verdicts_on_the_fixture_tables() {
    for (file, expectations) in [
        ("table43_left.csv", [("ind", 0), ("hexprime", 0), ("hexdd", 0)]),
        ("table43_middle.csv", [("ind", 0), ("hexprime", 0), ("hexdd", 0)]),
        ("table43_right.csv", [("ind", 1), ("hexprime", 0), ("hexdd", 1)]),
    ] {
        for (verb, code) in expectations {
            let output = hexalab(&["symbolic", verb, &fixture(file)]);
            assert_eq!(output.status.code(), Some(code), "{verb} on {file}");
        }
    }
    let latin = hexalab(&[
        "symbolic",
        "latin",
        &fixture("table44.csv"),
        "--group-check",
    ]);
    let text = stdout_of(&latin);
    assert!(text.contains("latin: true"));
    assert!(text.contains("group: false"));
    assert_eq!(latin.status.code(), Some(1));
}

#[test]
fn oracle_command_finds_the_violation() {
    let output = hexalab(&[
        "symbolic",
        "oracle",
        &fixture("table43_right.csv"),
        "--mode",
        "doubleprime",
        "--trials",
        "500",
        "--seed",
        "9",
    ]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stdout_of(&output).contains("violation at trial"));
}

#[test]
fn tiling_commands() {
    let check = hexalab(&["tiling", "check", "--n", "6", "--a", "0,1,2", "--b", "0,3"]);
    assert_eq!(check.status.code(), Some(0));
    let not_tiling = hexalab(&["tiling", "check", "--n", "4", "--a", "0,1", "--b", "0,1"]);
    assert_eq!(not_tiling.status.code(), Some(1));
    let spectrum = hexalab(&["tiling", "spectrum", "--n", "8", "--a", "0,1,2,3"]);
    assert!(stdout_of(&spectrum).contains("{0,2,4,6}"));
    let complements = hexalab(&[
        "tiling",
        "complements",
        "--n",
        "12",
        "--a",
        "0,3,6,9",
        "--format",
        "json",
    ]);
    let json: serde_json::Value = serde_json::from_str(&stdout_of(&complements)).unwrap();
    assert_eq!(json["count"], 16);
    let out_of_range = hexalab(&["tiling", "zeros", "--n", "6", "--a", "0,9"]);
    assert_eq!(out_of_range.status.code(), Some(2));
}

#[test]
fn zrel_commands() {
    let ivec = hexalab(&["zrel", "ivec", "--n", "12", "--a", "0,1,4,6"]);
    assert!(stdout_of(&ivec).contains("1,1,1,1,1,1"));
    let babbitt = hexalab(&["zrel", "babbitt", "--n", "12"]);
    assert_eq!(babbitt.status.code(), Some(0));
    assert!(stdout_of(&babbitt).contains("924"));
    // over budget without --force
    let over = hexalab(&["zrel", "classes", "--n", "28", "--k", "14"]);
    assert_eq!(over.status.code(), Some(2));
}

#[test]
fn mc_commands_are_seeded_and_reproducible() {
    let args = [
        "mc",
        "sphere-band",
        "--n",
        "20000",
        "--seed",
        "42",
        "--format",
        "json",
    ];
    let first = hexalab(&args);
    let second = hexalab(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout_of(&first), stdout_of(&second));
    let json: serde_json::Value = serde_json::from_str(&stdout_of(&first)).unwrap();
    assert_eq!(json["seed"], 42);
    assert_eq!(json["threads"], 1);

    let ks = hexalab(&["mc", "ks", "--same", &fixture("sample.csv")]);
    assert_eq!(ks.status.code(), Some(0));
    assert!(stdout_of(&ks).contains("statistic 0.000000"));
}

#[test]
fn exported_spaces_reparse_identically() {
    let output = hexalab(&[
        "space",
        "export",
        "--recipe",
        &fixture("z7_13.json"),
        "--format",
        "json",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_of(&output);
    // the export is itself a valid explicit recipe
    let mut value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let object = value.as_object_mut().unwrap();
    object.remove("seed");
    object.remove("threads");
    object.insert("kind".into(), "explicit".into());
    let explicit = serde_json::to_string(&value).unwrap();
    let reparsed = hexalab(&["space", "cvc", "--recipe", &explicit]);
    assert_eq!(reparsed.status.code(), Some(0));
    assert!(stdout_of(&reparsed).contains("rho(1/1) = 5/7"));
}

#[test]
fn json_space_output_round_trips() {
    let output = hexalab(&[
        "space",
        "dist",
        "--recipe",
        &fixture("hamming5.json"),
        "--format",
        "json",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(json["total"], "1/1");
    // every mass is a decimal-free rational string
    for entry in json["entries"].as_array().unwrap() {
        let mass = entry[1].as_str().unwrap();
        assert!(mass.contains('/') && !mass.contains('.'), "mass {mass}");
    }
}
