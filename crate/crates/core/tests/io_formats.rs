mod common;

use common::model;
use proptest::prelude::*;
use sparks::bundle::DiscreteLineBundle;
use sparks::cech::fixtures::{fixture_complex, violation_fixtures, FIXTURE_NAMES};
use sparks::complex::cohomology;
use sparks::io::{
    parse_lbd, parse_scx, parse_spc, parse_spk, parse_witness, write_lbd, write_scx, write_spc, write_spk,
    write_witness,
};
use sparks::linalg::Rat;
use sparks::spark::sample::rng;
use sparks::Error;

#[test]
fn scx_round_trips() {
    for name in FIXTURE_NAMES.iter().chain(["octahedron", "icosahedron"].iter()) {
        let k = fixture_complex(name).unwrap();
        let text = write_scx(&k);
        let back = parse_scx(&text).unwrap();
        assert_eq!(back.maximal_simplices(), k.maximal_simplices(), "{name}");
        assert_eq!(write_scx(&back), text, "{name}");
    }
}

#[test]
fn scx_accepts_comments_and_any_order() {
    let k =
        parse_scx("# a triangle\nscx v1\nvertices 3\n\nsimplex 1 2   # last edge\nsimplex 0 1\nsimplex 0 2\n").unwrap();
    assert_eq!(write_scx(&k), write_scx(&fixture_complex("circle3").unwrap()));
}

#[test]
fn scx_errors_carry_lines() {
    let cases = [
        ("scx v1\nvertices 3\nsimplex 2 1\n", 3),
        ("scx v1\nvertices 3\nsimplex 0 5\n", 3),
        ("scx v1\nvertices 3\nsimplex 0 1\nsimplex 0 1\n", 4),
        ("scx v2\nvertices 3\n", 1),
        ("scx v1\nvertices x\n", 2),
    ];
    for (text, line) in cases {
        match parse_scx(text) {
            Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
            other => panic!("{text:?} gave {other:?}"),
        }
    }
}

#[test]
fn zero_denominator_is_rejected() {
    let m = model("circle3");
    let sc = &m.spark;
    let mut text = write_spk(&sc.zero_spark(0));
    text = text.replacen("a 0", "a 3/0", 1);
    let err = parse_spk(&text, sc).unwrap_err();
    assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn empty_spc_is_zero() {
    let raw = parse_spc("spc v1\n").unwrap();
    let sc = raw.checked().unwrap();
    assert!(sc.check_axioms().unwrap().is_empty());
    for c in [sc.f(), sc.e(), sc.i()] {
        assert!(c.degrees().all(|k| c.rank(k) == 0));
    }
}

#[test]
fn spc_round_trips_and_rejects() {
    let m = model("circle6");
    let text = write_spc(&m.spark);
    let sc = parse_spc(&text).unwrap().checked().unwrap();
    assert_eq!(write_spc(&sc), text);
    for v in violation_fixtures().unwrap() {
        let raw = parse_spc(&write_spc(&v.spark)).unwrap();
        let fails = raw.unchecked().unwrap().check_axioms().unwrap();
        assert_eq!(fails.iter().map(|f| f.axiom()).collect::<Vec<_>>(), [v.axiom], "{}", v.name);
        let err = raw.checked().unwrap_err();
        assert_eq!(err.exit_code(), 1, "{}", v.name);
    }
}

#[test]
fn bundles_round_trip() {
    let m = model("circle6");
    let gen = cohomology(m.spark.i(), 1).unwrap().representatives[0].clone();
    let theta: Vec<Rat> = gen.iter().map(|v| v * &Rat::from_frac(2, 5)).collect();
    let l = DiscreteLineBundle::flat(m.clone(), &theta).unwrap();
    let back = parse_lbd(&write_lbd(&l), m.clone()).unwrap();
    assert_eq!(back.g, l.g);
    assert_eq!(back.a, l.a);
    let s = model("sphere");
    let l = DiscreteLineBundle::from_chern(s.clone(), &[sparks::linalg::Int::from(-2)]).unwrap();
    let back = parse_lbd(&write_lbd(&l), s).unwrap();
    assert_eq!(back.to_spark(), l.to_spark());
}

#[test]
fn inconsistent_bundle_names_the_overlap() {
    let m = model("circle6");
    let err = parse_lbd("lbd v1\ng 0 1 1/2 1/3\n", m).unwrap_err();
    assert!(err.to_string().contains("overlap [0, 1"), "{err}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sparks_and_witnesses_round_trip(fx in 0usize..3, k in -1i32..=1, seed in any::<u64>()) {
        let m = model(["circle3", "circle6", "rp2"][fx]);
        let sc = &m.spark;
        let mut r = rng(seed);
        let s = sc.random_spark(k, &mut r);
        prop_assert_eq!(parse_spk(&write_spk(&s), sc).unwrap(), s.clone());
        let t = sc.random_spark(k, &mut r);
        let u = sc.add(&s, &t);
        if let Some(w) = sc.sparks_equivalent(&u, &sc.add(&t, &s)) {
            let (d, w2) = parse_witness(&write_witness(k, &w)).unwrap();
            prop_assert_eq!(d, k);
            prop_assert!(sc.verify_witness(&u, &sc.add(&t, &s), &w2));
        } else {
            prop_assert!(false, "s + t and t + s are not equivalent");
        }
    }
}
