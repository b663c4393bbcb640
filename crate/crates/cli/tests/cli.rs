use std::process::{Command, Output};

use galois_kit::{adjoin_root, Field, Poly, PrimeField, Rationals, TowerField};
use galois_kit_cli::build::{build_field, Construction};
use galois_kit_cli::corpus::{load_corpus, parse_corpus, run_instance, verify_corpus, InstanceRecord};
use galois_kit_cli::parse::{parse_over, parse_polynomial, BaseSpec};
use galois_kit_cli::CliError;
use proptest::prelude::*;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galois-kit"))
        .args(args)
        .env_remove("GALOIS_KIT_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn exit_codes() {
    let ok = bin(&["split", "x^2 - 2"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stderr(&ok));
    assert!(stdout(&ok).contains("degree: 2"));

    for (args, code) in [
        (&["split", "2x + 1"][..], 2),
        (&["split", "x^2 + 1/0"], 2),
        (&["--base", "F7", "split", "x/7"], 2),
        (&["--base", "F6", "split", "x"], 2),
        (&["--base", "R", "split", "x"], 2),
        (&["split", "0"], 2),
        (&["galois", "x^2 - 1"], 2),
        (&["galois"], 2),
        (&["fixed", "x^2 - 2", "--subgroup", "1"], 2),
        (&["census", "--p", "2", "--n", "1"], 2),
        (&["census", "--p", "2", "--n", "13"], 3),
        (&["galois", "--tower", "/nonexistent/tower.json"], 2),
    ] {
        let o = bin(args);
        assert_eq!(o.status.code(), Some(code), "{args:?}: {}", stderr(&o));
        assert!(stderr(&o).starts_with("error: "), "{args:?}");
    }
}

#[test]
fn syntax_errors_carry_positions() {
    let o = bin(&["split", "x^2 + $"]);
    assert!(stderr(&o).contains("column 7"), "{}", stderr(&o));
    let o = bin(&["split", "2x"]);
    assert!(stderr(&o).contains("column 2"), "{}", stderr(&o));
    assert!(stderr(&o).contains("`*`"));
}

#[test]
fn reducible_stem_names_a_factor() {
    let o = bin(&["galois", "x^2 - 1"]);
    assert!(stderr(&o).contains("x - 1") || stderr(&o).contains("x + 1"), "{}", stderr(&o));
}

#[test]
fn verbs_print_expected_facts() {
    let o = bin(&["galois", "x^3 - 2", "--split", "--intermediate", "a"]);
    let s = stdout(&o);
    assert!(s.contains("[L:K] = 6, |G| = 6"), "{s}");
    assert!(s.contains("galois: yes"));
    assert!(s.contains("fixed field equals M: yes"));

    let s = stdout(&bin(&["aut", "x^3 - 2"]));
    assert!(s.contains("|G| = 1"), "{s}");

    let s = stdout(&bin(&["aut", "x^4 - 2", "--strategy", "recursive"]));
    assert!(s.contains("|G| = 2"), "{s}");

    // The involution in Gal(F16/F2) fixes F4.
    let g: serde_json::Value =
        serde_json::from_slice(&bin(&["--base", "F2", "--json", "aut", "x^4 + x + 1"]).stdout).unwrap();
    let table = g["composition_table"].as_array().unwrap();
    let inv = (1..4).find(|&i| table[i][i] == 0).unwrap().to_string();
    let s = stdout(&bin(&["--base", "F2", "fixed", "x^4 + x + 1", "--subgroup", &format!("0,{inv}")]));
    assert!(s.contains("degree 2 over K"), "{s}");

    let s = stdout(&bin(&["census", "--p", "3", "--n", "2"]));
    assert!(s.contains("3 <= 4 < 9"), "{s}");
}

#[test]
fn tower_files_round_trip_through_split_output() {
    let o = bin(&["--json", "split", "x^3 - 2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tower.json");
    std::fs::write(&path, serde_json::to_string(&v["tower"]).unwrap()).unwrap();
    let path = path.to_str().unwrap();

    let o = bin(&["--json", "galois", "--tower", path]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["group_order"], 6);
    assert_eq!(r["verdict"], true);
    assert_eq!(r["tower"], v["tower"]);

    let o = bin(&["--base", "F5", "galois", "--tower", path]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("conflicts"));

    let o = bin(&["primitive", "--tower", path]);
    assert!(stdout(&o).contains("primitive element"), "{}", stderr(&o));
}

#[test]
fn seed_comes_from_the_environment() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_galois-kit"))
            .args(["--json", "galois", "--split", "x^3 - 2"])
            .env("GALOIS_KIT_SEED", seed)
            .output()
            .unwrap()
    };
    let a = run("7");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, run("7").stdout);
    let explicit = bin(&["--json", "--seed", "7", "galois", "--split", "x^3 - 2"]);
    assert_eq!(a.stdout, explicit.stdout);
}

#[test]
fn corpus_json_is_byte_identical_across_runs() {
    let a = bin(&["--json", "--seed", "3", "verify-corpus", "--parallelism", "4"]);
    let b = bin(&["--json", "--seed", "3", "verify-corpus", "--parallelism", "1"]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
}

fn record(name: &str, poly: &str, order: usize) -> InstanceRecord {
    serde_json::from_value(serde_json::json!({
        "name": name,
        "base": "Q",
        "construction": "stem",
        "polynomials": [poly],
        "expected": {"galois": order == 2, "group_order": order, "degree": 2},
        "provenance": "test"
    }))
    .unwrap()
}

#[test]
fn mismatched_corpus_names_the_instance() {
    let records = vec![record("zeta", "x^2 + 3", 2), record("alpha", "x^2 - 5", 1)];
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corpus.json");
    std::fs::write(&path, serde_json::to_string(&records).unwrap()).unwrap();

    let o = bin(&["verify-corpus", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("alpha"), "{}", stderr(&o));
    assert!(!stderr(&o).contains("zeta"));
    let table = stdout(&o);
    assert!(table.find("alpha").unwrap() < table.find("zeta").unwrap(), "sorted by name");
    assert!(table.contains("|G| = 2, expected 1"));

    let summary = verify_corpus(&records, 2, 0).unwrap();
    assert_eq!(summary.failed, vec!["alpha".to_string()]);
}

#[test]
fn empty_and_malformed_corpora_are_errors() {
    assert!(matches!(parse_corpus("[]"), Err(CliError::Core(galois_kit::Error::Domain(_)))));
    assert!(parse_corpus("{").is_err());
    assert!(verify_corpus(&[], 1, 0).is_err());
    let dup = serde_json::to_string(&vec![record("a", "x^2 + 1", 2), record("a", "x^2 + 1", 2)]).unwrap();
    assert!(parse_corpus(&dup).is_err());

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.json");
    std::fs::write(&path, "[]").unwrap();
    let o = bin(&["verify-corpus", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no instances"));
}

#[test]
fn instance_errors_are_reported_not_raised() {
    let out = run_instance(&record("bad", "x^2 - 1", 2), 0);
    assert!(!out.passed);
    assert!(out.problems[0].contains("reducible"), "{:?}", out.problems);
}

fn round_trip_levels<B: galois_kit::BaseField>(base: &B, r: &InstanceRecord) {
    let l = build_field(base, r.construction, &r.polynomials, &r.names, 0).unwrap();
    for i in 1..=l.level() {
        let below = l.at_level(i - 1).unwrap();
        let m = l.level_modulus(i);
        assert_eq!(parse_over(&m.to_string(), &below).unwrap(), m, "{}: {m}", r.name);
    }
    if r.construction != Construction::Tower {
        let f = parse_polynomial(&r.polynomials[0], base).unwrap();
        assert_eq!(parse_polynomial(&f.to_string(), base).unwrap(), f, "{}", r.name);
    }
}

#[test]
fn bundled_corpus_polynomials_round_trip() {
    for r in load_corpus(None).unwrap() {
        match BaseSpec::parse(&r.base).unwrap() {
            BaseSpec::Q => round_trip_levels(&Rationals, &r),
            BaseSpec::Fp(fp) => round_trip_levels(&fp, &r),
        }
    }
}

fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-30i64..30, 1i64..6), 0..7)
}

proptest! {
    #[test]
    fn rational_print_parse_is_identity(c in coeffs()) {
        let cs = c.iter().map(|&(n, d)| galois_kit::Rational::new(n.into(), d.into())).collect();
        let f = Poly::new(Rationals, cs);
        prop_assert_eq!(parse_polynomial(&f.to_string(), &Rationals).unwrap(), f);
    }

    #[test]
    fn prime_field_print_parse_is_identity(c in prop::collection::vec(0u64..7, 0..7)) {
        let f7 = PrimeField::new(7).unwrap();
        let f = Poly::new(f7, c);
        prop_assert_eq!(parse_polynomial(&f.to_string(), &f7).unwrap(), f);
    }

    #[test]
    fn tower_print_parse_is_identity(c in prop::collection::vec(prop::collection::vec(-5i64..5, 4), 0..4)) {
        let q = TowerField::base_field(Rationals);
        let a = adjoin_root(&q, &parse_over("x^2 - 2", &q).unwrap(), "a").unwrap();
        let l = adjoin_root(&a, &parse_over("x^2 - 3", &a).unwrap(), "b").unwrap();
        let cs = c.iter().map(|v| v.iter().map(|&n| Rationals.from_i64(n)).collect()).collect();
        let f = Poly::new(l.clone(), cs);
        prop_assert_eq!(parse_over(&f.to_string(), &l).unwrap(), f);
    }
}
