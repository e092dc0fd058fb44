use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use homcat::bundled::bundled_fixtures;
use homcat::{emit, parse};

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn fixture(name: &str) -> PathBuf {
    fixtures_dir().join(format!("{name}.json"))
}

fn homcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homcat"))
        .args(args)
        .env_remove("HOMCAT_FIXTURES")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli");
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

/// Set `HOMCAT_UPDATE_FIXTURES=1` to rewrite the bundled files.
#[test]
fn bundled_fixtures_match_generator() {
    let update = std::env::var_os("HOMCAT_UPDATE_FIXTURES").is_some();
    for (name, text) in bundled_fixtures() {
        let path = fixtures_dir().join(&name);
        if update {
            fs::write(&path, &text).unwrap();
        }
        let on_disk = fs::read_to_string(&path).unwrap_or_default();
        assert_eq!(on_disk, text, "{name} is stale; rerun with HOMCAT_UPDATE_FIXTURES=1");
    }
}

#[test]
fn emit_after_parse_is_byte_exact() {
    for (name, text) in bundled_fixtures() {
        assert_eq!(emit(&parse(&text).unwrap()), text, "{name}");
    }
}

#[test]
fn non_canonical_input_is_normalized() {
    let text = r#"{"kind": "hom_lie_algebra", "meta": "x", "payload": {"dim": 1, "bracket": [], "alpha": [["4/2"]]}}"#;
    let emitted = emit(&parse(text).unwrap());
    assert!(emitted.contains("\"2\""));
    assert_eq!(emit(&parse(&emitted).unwrap()), emitted);
}

#[test]
fn check_exit_codes() {
    let out = homcat(&["check", fixture("sl2_composition").to_str().unwrap(), "--suite", "hom_lie"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));

    let report = scratch("non_lie_report.json");
    let out = homcat(&["check", fixture("non_lie").to_str().unwrap(), "--report", report.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let r: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["passed"], false);
    let witness = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["identity"] == "hom_jacobi")
        .unwrap();
    assert_eq!(witness["witness"], serde_json::json!(["e0", "e1", "e2"]));
    assert!(r["timing_ms"].is_u64());

    let text = fs::read_to_string(fixture("sl2")).unwrap();
    let truncated = scratch("truncated.json");
    fs::write(&truncated, &text[..text.len() / 2]).unwrap();
    assert_eq!(code(&homcat(&["check", truncated.to_str().unwrap()])), 2);

    assert_eq!(code(&homcat(&["check", fixture("sl2").to_str().unwrap(), "--suite", "nope"])), 2);
    let unknown = scratch("unknown_kind.json");
    fs::write(&unknown, r#"{"kind": "octonion", "meta": "", "payload": {}}"#).unwrap();
    assert_eq!(code(&homcat(&["check", unknown.to_str().unwrap()])), 2);
    assert_eq!(code(&homcat(&["check", "/does/not/exist.json"])), 2);
    assert_eq!(code(&homcat(&["frobnicate"])), 2);
}

#[test]
fn fixture_directory_lookup() {
    let out = Command::new(env!("CARGO_BIN_EXE_homcat"))
        .args(["check", "heisenberg_twisted"])
        .env("HOMCAT_FIXTURES", fixtures_dir())
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", stdout(&out));
}

#[test]
fn every_suite_runs_on_bundled_files() {
    let expectations: &[(&str, &str, i32)] = &[
        ("sl2", "lie_on_image", 0),
        ("sl2_composition", "adjoint", 0),
        ("heisenberg_twisted", "sym_poisson", 0),
        ("heisenberg_twisted", "dual_formula", 0),
        ("heisenberg_twisted", "exterior", 0),
        ("non_lie", "exterior", 1),
        ("sl2", "composition_criterion", 0),
        ("matrix_algebra_2x2", "commutator", 0),
        ("upper_triangular_composed", "hom_associative", 0),
        ("non_hom_associative", "hom_associative", 1),
        ("adjoint_sl2_composition", "representation", 0),
        ("pi2", "hom_poisson_manifold", 0),
        ("pi2_scaled", "bivector_pushforward", 1),
        ("non_poisson_projection", "hom_poisson_manifold", 1),
        ("line_bundle_data", "vector_field_preserved", 0),
        ("heisenberg_twisted_action_data", "action", 0),
        ("tangent_plane", "gerstenhaber", 0),
        ("corrupted_line_bundle", "hom_lie_algebroid", 1),
    ];
    for &(name, suite, want) in expectations {
        let out = homcat(&["check", fixture(name).to_str().unwrap(), "--suite", suite]);
        assert_eq!(code(&out), want, "{name} [{suite}]: {}", stdout(&out));
    }
}

#[test]
fn constructions_revalidate() {
    let cases: &[(&str, &str, &str)] = &[
        ("composition", "sl2", "hom_lie"),
        ("composition", "matrix_algebra_2x2", "hom_associative"),
        ("exterior", "heisenberg_twisted", "gerstenhaber"),
        ("exterior", "adjoint_heisenberg_twisted", "gerstenhaber"),
        ("sym_poisson", "sl2_composition", "hom_poisson"),
        ("action", "heisenberg_twisted_action_data", "hom_lie_algebroid"),
        ("line_bundle", "line_bundle_data", "hom_lie_algebroid"),
        ("cotangent", "pi2", "hom_lie_algebroid"),
        ("to_gerstenhaber", "cotangent_pi2", "gerstenhaber"),
    ];
    for &(kind, input, suite) in cases {
        let output = scratch(&format!("{kind}_{input}.json"));
        let out = homcat(&["construct", "--kind", kind, fixture(input).to_str().unwrap(), output.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{kind} on {input}: {}", stdout(&out));
        let out = homcat(&["check", output.to_str().unwrap(), "--suite", suite]);
        assert_eq!(code(&out), 0, "{kind} on {input} then {suite}: {}", stdout(&out));
    }
    let g = scratch("to_gerstenhaber_line_bundle.json");
    let a = scratch("to_algebroid_line_bundle.json");
    assert_eq!(code(&homcat(&["construct", "--kind", "to_gerstenhaber", fixture("line_bundle").to_str().unwrap(), g.to_str().unwrap()])), 0);
    assert_eq!(code(&homcat(&["construct", "--kind", "to_algebroid", g.to_str().unwrap(), a.to_str().unwrap()])), 0);
    let back = parse(&fs::read_to_string(&a).unwrap()).unwrap();
    let original = parse(&fs::read_to_string(fixture("line_bundle")).unwrap()).unwrap();
    assert_eq!(emit(&back).split_once("\"payload\"").unwrap().1, emit(&original).split_once("\"payload\"").unwrap().1);
}

#[test]
fn construction_failures() {
    let output = scratch("bad_cotangent.json");
    let report = scratch("bad_cotangent_report.json");
    let out = homcat(&[
        "construct",
        "--kind",
        "cotangent",
        fixture("pi2_scaled").to_str().unwrap(),
        output.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("bivector_pushforward"), "{}", stdout(&out));
    let r = fs::read_to_string(&report).unwrap();
    assert!(r.contains("bivector_pushforward"));
    assert!(!output.exists());
    let out = homcat(&["construct", "--kind", "composition", fixture("pi2").to_str().unwrap(), output.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let out = homcat(&["construct", "--kind", "teleport", fixture("sl2").to_str().unwrap(), output.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn roundtrips() {
    for name in ["tangent_plane", "heisenberg_action", "line_bundle", "cotangent_pi2", "cotangent_heisenberg", "point_base"] {
        let out = homcat(&["roundtrip", fixture(name).to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{name}: {}", stdout(&out));
    }
    let out = homcat(&["roundtrip", fixture("corrupted_line_bundle").to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("anchor"), "{}", stdout(&out));
    assert_eq!(code(&homcat(&["roundtrip", fixture("sl2").to_str().unwrap()])), 2);
}
