use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use moconad_core::corpus::{letters, random_transduction_pair};
use moconad_core::mealy::UnambiguousMealy;
use moconad_core::spec::SpecDocument;
use moconad_core::{Elem, Moconad};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn moconad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moconad")).args(args).env_remove("MOCONAD_SEED").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim_end().to_string()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn run_example_machine() {
    let spec = fixture("change_first_a.json");
    let o = moconad(&["run", "--spec", path(&spec), "--input", "aab"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "cdd");

    let o = moconad(&["run", "--spec", path(&spec), "--input", "[\"b\",\"a\"]", "--json-input", "--format", "json"]);
    assert_eq!(stdout(&o), r#"{"kind":"word","letters":["d","c"]}"#);
}

#[test]
fn run_rejects_unknown_letter_with_its_position() {
    let o = moconad(&["run", "--spec", path(&fixture("change_first_a.json")), "--input", "abz"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("position 3"), "{}", stderr(&o));
}

#[test]
fn run_identity_echoes_input() {
    let id = moconad_core::transduction::Transduction::identity(&Moconad::suffix_list(), &letters(3)).unwrap();
    let spec = scratch("identity.json");
    SpecDocument::Transduction(id).save(&spec).unwrap();
    let o = moconad(&["run", "--spec", path(&spec), "--input", "cabba"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "cabba");
}

#[test]
fn run_reads_input_files() {
    let input = scratch("pointed_input.json");
    std::fs::write(&input, r#"{"kind":"pointed-word","letters":["a","b","b"],"focus":2}"#).unwrap();
    let u = moconad_core::mealy::replace_first_with_last_machine().to_transduction().unwrap();
    let spec = scratch("replace_first.json");
    SpecDocument::Transduction(u).save(&spec).unwrap();
    let o = moconad(&["run", "--spec", path(&spec), "--input", path(&input), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), r#"{"focus":2,"kind":"pointed-word","letters":["b","b","b"]}"#);
}

#[test]
fn schema_errors_exit_two() {
    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"{"kind":"mealy","states":[]}"#).unwrap();
    assert_eq!(moconad(&["run", "--spec", path(&bad), "--input", "a"]).status.code(), Some(2));
    assert_eq!(moconad(&["run", "--spec", path(&fixture("parity.json"))]).status.code(), Some(2));
    assert_eq!(moconad(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn compose_parity_twice_and_verify() {
    let out = scratch("parity2.json");
    let p = fixture("parity.json");
    for method in ["generalized", "classical"] {
        let o = moconad(&[
            "compose",
            "--first",
            path(&p),
            "--second",
            path(&p),
            "--out",
            path(&out),
            "--verify-upto",
            "5",
            "--method",
            method,
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        // [1,0,1,1] → [1,1,0,1] → [1,0,0,1]
        let o = moconad(&["run", "--spec", path(&out), "--input", "1011"]);
        assert_eq!(stdout(&o), "1001");
    }
}

#[test]
fn compose_output_is_canonical() {
    let out = scratch("parity2_canonical.json");
    let p = fixture("parity.json");
    let o = moconad(&["compose", "--first", path(&p), "--second", path(&p), "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    let reparsed = SpecDocument::parse(&text).unwrap();
    assert_eq!(reparsed.to_canonical(), text);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert!(!text.contains('.'), "no floats expected");
    assert_eq!(v["kind"], "transduction");
}

#[test]
fn compose_random_pairs_verifies() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for i in 0..3 {
        let (f, g) = random_transduction_pair(&mut rng, &Moconad::pointed_list(), 3, 2);
        let (pf, pg, out) =
            (scratch(&format!("f{i}.json")), scratch(&format!("g{i}.json")), scratch(&format!("fg{i}.json")));
        SpecDocument::Transduction(f).save(&pf).unwrap();
        SpecDocument::Transduction(g).save(&pg).unwrap();
        let o = moconad(&[
            "compose",
            "--first",
            path(&pf),
            "--second",
            path(&pg),
            "--out",
            path(&out),
            "--verify-upto",
            "4",
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
}

#[test]
fn compose_alphabet_mismatch_exits_two() {
    let p = fixture("parity.json");
    let other = scratch("letters_identity.json");
    let id = moconad_core::transduction::Transduction::identity(&Moconad::prefix_list(), &letters(2)).unwrap();
    SpecDocument::Transduction(id).save(&other).unwrap();
    let o = moconad(&["compose", "--first", path(&p), "--second", path(&other), "--out", path(&scratch("x.json"))]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn check_laws_pointed_list() {
    let report = scratch("report.json");
    let o = moconad(&["check-laws", "--functor", "pointed-list", "--bound", "4", "--report", path(&report)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let laws = v["laws"].as_array().unwrap();
    assert_eq!(laws.len(), 23);
    let mut names: Vec<_> = laws.iter().map(|l| l["law"].as_str().unwrap().to_string()).collect();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), 23);
    assert_eq!(v["passed"], true);
}

#[test]
fn check_laws_random_is_seeded() {
    let run = |seed: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_moconad"));
        cmd.args(["check-laws", "--functor", "suffix-list", "--samples", "20", "--bound", "3"]);
        match seed {
            Some(s) => cmd.env("MOCONAD_SEED", s),
            None => cmd.env_remove("MOCONAD_SEED"),
        };
        cmd.output().unwrap()
    };
    let a = run(Some("17"));
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(stdout(&a), stdout(&run(Some("17"))));
    assert_eq!(run(Some("not a number")).status.code(), Some(2));
}

#[test]
fn check_laws_unknown_functor() {
    assert_eq!(moconad(&["check-laws", "--functor", "rose-tree"]).status.code(), Some(2));
}

#[test]
fn convert_mealy_round_trip() {
    let t = scratch("mealy_t.json");
    let m = scratch("mealy_back.json");
    let src = fixture("change_first_a.json");
    let o = moconad(&[
        "convert",
        "--from",
        "mealy",
        "--to",
        "transduction",
        "--spec",
        path(&src),
        "--out",
        path(&t),
        "--verify-upto",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = moconad(&[
        "convert",
        "--from",
        "transduction",
        "--to",
        "mealy",
        "--spec",
        path(&t),
        "--out",
        path(&m),
        "--verify-upto",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = moconad(&["run", "--spec", path(&m), "--input", "bbab"]);
    assert_eq!(stdout(&o), "ddcd");
}

#[test]
fn convert_unambiguous_round_trip() {
    let src = scratch("replace_first_machine.json");
    SpecDocument::UnambiguousMealy(moconad_core::mealy::replace_first_with_last_machine()).save(&src).unwrap();
    let (t, back) = (scratch("replace_first_t.json"), scratch("replace_first_back.json"));
    let o = moconad(&[
        "convert",
        "--from",
        "unambiguous-mealy",
        "--to",
        "pointed-transduction",
        "--spec",
        path(&src),
        "--out",
        path(&t),
        "--verify-upto",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = moconad(&[
        "convert",
        "--from",
        "transduction",
        "--to",
        "unambiguous-mealy",
        "--spec",
        path(&t),
        "--out",
        path(&back),
        "--verify-upto",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let SpecDocument::UnambiguousMealy(u) = SpecDocument::load(&back).unwrap() else { panic!("machine expected") };
    let w: Vec<Elem> = "abab".chars().map(|c| Elem::sym(&c.to_string())).collect();
    assert_eq!(
        UnambiguousMealy::run(&u, &w).unwrap(),
        "bbab".chars().map(|c| Elem::sym(&c.to_string())).collect::<Vec<_>>()
    );
}

#[test]
fn convert_ambiguous_machine_exits_three_with_witness() {
    let o = moconad(&[
        "convert",
        "--from",
        "unambiguous-mealy",
        "--to",
        "transduction",
        "--spec",
        path(&fixture("ambiguous.json")),
        "--out",
        path(&scratch("never.json")),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("a has more than one accepting run"), "{}", stderr(&o));
}

#[test]
fn convert_unsupported_direction_exits_two() {
    let o = moconad(&[
        "convert",
        "--from",
        "mealy",
        "--to",
        "unambiguous-mealy",
        "--spec",
        path(&fixture("change_first_a.json")),
        "--out",
        path(&scratch("never2.json")),
    ]);
    assert_eq!(o.status.code(), Some(2));
}
