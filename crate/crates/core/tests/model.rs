mod common;

use lefschetz_core::constructions::{family_mn, matsumoto_fibration, CurveTable};
use lefschetz_core::model::{
    parse_spec, CurveClass, CurveKind, FibrationSpec, Genus, SpecError, TwistLetter,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SPECS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../specs");

fn read_spec(name: &str) -> String {
    std::fs::read_to_string(format!("{SPECS}/{name}")).unwrap()
}

fn empty_g2() -> FibrationSpec {
    FibrationSpec::new(Genus(2), vec![], vec![], true).unwrap()
}

#[test]
fn parses_the_shipped_genus_two_document() {
    let spec = parse_spec(&read_spec("matsumoto.json")).unwrap();
    assert_eq!(spec.genus(), Genus(2));
    assert_eq!(spec.letters().len(), 8);
    assert!(spec.has_section());
    assert_eq!(spec.block_signatures(), Some(&[-4][..]));
    assert_eq!(spec, matsumoto_fibration(&CurveTable::shipped()));
}

#[test]
fn empty_factorization_is_valid() {
    let spec = parse_spec(&read_spec("empty_g2.json")).unwrap();
    assert_eq!(spec, empty_g2());
    assert!(spec.letters().is_empty());
}

#[test]
fn separating_genus_above_half_is_rejected() {
    let err = parse_spec(&read_spec("invalid_separating.json")).unwrap_err();
    match err {
        SpecError::InvariantViolation { curve, .. } => assert_eq!(curve.as_deref(), Some("s")),
        other => panic!("unexpected error {other:?}"),
    }
    assert!(CurveClass::separating("s", Genus(2), 2).is_err());
    assert!(CurveClass::separating("s", Genus(2), 1).is_ok());
    assert!(CurveClass::separating("s", Genus(5), 3).is_err());
    assert!(CurveClass::separating("s", Genus(6), 3).is_ok());
}

#[test]
fn curve_validation() {
    let g = Genus(2);
    assert!(CurveClass::nonseparating("x", g, vec![2, 0, 0, 0]).is_err());
    assert!(CurveClass::nonseparating("x", g, vec![0, 0, 0, 0]).is_err());
    assert!(CurveClass::nonseparating("x", g, vec![1, 0]).is_err());
    assert!(CurveClass::nonseparating("", g, vec![1, 0, 0, 0]).is_err());
    assert!(CurveClass::nonseparating("x", g, vec![2, 3, 0, 0]).is_ok());
}

#[test]
fn spec_validation() {
    let g = Genus(1);
    let a = CurveClass::nonseparating("a", g, vec![1, 0]).unwrap();
    // A single nonseparating twist acts nontrivially on H_1.
    assert!(FibrationSpec::new(g, vec![a.clone()], vec![TwistLetter::plain("a")], true).is_err());
    assert!(FibrationSpec::new(g, vec![a.clone()], vec![TwistLetter::plain("b")], true).is_err());
    assert!(FibrationSpec::new(g, vec![a.clone(), a], vec![], true).is_err());
    assert!(FibrationSpec::new(Genus(0), vec![], vec![], true).is_err());
    assert!(FibrationSpec::new(Genus(129), vec![], vec![], true).is_err());
}

#[test]
fn malformed_documents() {
    for doc in [
        "",
        "{}",
        "[1,2]",
        r#"{"genus":2,"has_section":true,"curves":[],"letters":[],"extra":1}"#,
        r#"{"genus":2,"has_section":true,"curves":[{"id":"s","kind":"sep","vector":[0,0,0,0]}],"letters":[]}"#,
        r#"{"genus":2,"has_section":true,"curves":[{"id":"a","kind":"nonsep","h":1,"vector":[1,0,0,0]}],"letters":[]}"#,
        r#"{"genus":-1,"has_section":true,"curves":[],"letters":[]}"#,
    ] {
        assert!(
            matches!(parse_spec(doc), Err(SpecError::MalformedDocument(_))),
            "{doc}"
        );
    }
    let lift_out_of_range = r#"{"genus":1,"has_section":true,"curves":[{"id":"a","kind":"nonsep","vector":[1,0],"lift":[4]}],"letters":[]}"#;
    assert!(parse_spec(lift_out_of_range).is_err());
}

#[test]
fn reducible_counts() {
    let table = CurveTable::shipped();
    assert_eq!(empty_g2().count_reducible(), 0);
    for spec in [matsumoto_fibration(&table), family_mn(2, &table)] {
        assert_eq!(
            spec.count_reducible(),
            common::separating_letter_count(&spec)
        );
    }
    let f0 = matsumoto_fibration(&table);
    let sep_in_table = table
        .vanishing()
        .iter()
        .filter(|c| matches!(c.kind(), CurveKind::Separating(_)))
        .count();
    assert_eq!(f0.count_reducible(), 2 * sep_in_table);
    assert_eq!(family_mn(5, &table).count_reducible(), 8 * sep_in_table);
}

#[test]
fn provenance_is_not_part_of_equality() {
    let table = CurveTable::shipped();
    let built = family_mn(3, &table);
    let parsed = parse_spec(&built.to_document()).unwrap();
    assert_eq!(parsed, built);
    assert_ne!(parsed.provenance(), built.provenance());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn document_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = common::random_valid_spec(&mut rng);
        let doc = spec.to_document();
        let back = parse_spec(&doc).unwrap();
        prop_assert_eq!(&back, &spec);
        prop_assert_eq!(back.to_document(), doc);
    }

    #[test]
    fn reducible_count_survives_conjugation(seed in any::<u64>(), index in any::<prop::sample::Index>(), power in -4i64..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = common::random_valid_spec(&mut rng);
        let ids: Vec<String> = spec.curves().iter().map(|c| c.id().to_owned()).collect();
        let id = index.get(&ids);
        let letters: Vec<TwistLetter> =
            spec.letters().iter().map(|l| l.clone().conjugated_by(id, power)).collect();
        let conjugated = FibrationSpec::new(spec.genus(), spec.curves().to_vec(), letters, spec.has_section()).unwrap();
        prop_assert_eq!(conjugated.count_reducible(), spec.count_reducible());
        prop_assert_eq!(conjugated.count_reducible(), common::separating_letter_count(&spec));
    }

    #[test]
    fn separating_bound_enforced(g in 1u32..=12, h in 0u32..=8) {
        let ok = CurveClass::separating("s", Genus(g), h).is_ok();
        prop_assert_eq!(ok, h >= 1 && 2 * h <= g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn mutated_documents_never_panic(
        seed in any::<u64>(),
        edits in prop::collection::vec((any::<prop::sample::Index>(), prop::sample::select(
            vec!["0", "1", "-1", "2", "99999999999999999999", "\"", ",", "]", "}", "null", "\"sep\"", "\"nonsep\"", ""],
        )), 1..4),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut doc = common::random_valid_spec(&mut rng).to_document();
        for (at, text) in edits {
            let boundaries: Vec<usize> = (0..=doc.len()).filter(|&i| doc.is_char_boundary(i)).collect();
            let i = at.get(&boundaries);
            let end = (i + 1..=doc.len()).find(|&j| doc.is_char_boundary(j)).unwrap_or(*i);
            doc.replace_range(*i..end, text);
        }
        if let Ok(spec) = parse_spec(&doc) {
            let again = parse_spec(&spec.to_document()).unwrap();
            prop_assert_eq!(again, spec);
        }
    }
}
