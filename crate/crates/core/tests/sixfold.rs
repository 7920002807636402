mod common;

use lefschetz_core::braid::{LiftClass, LiftSearch};
use lefschetz_core::constructions::{
    family_mn, fiber_sum, twist_deformation, CurveTable, FAMILY_SPLIT,
};
use lefschetz_core::model::{CurveClass, FibrationSpec, Genus, TwistLetter};
use lefschetz_core::sixfold::{
    blow_up_ledger, bundle_type, class_of_y, intersect, y_class_record, y_diffeo_descriptor,
    BlowUpLedger, Bundle, H2Class, H4Class, SixfoldError,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn with_separating_letters(g: u32, genera: &[u32]) -> FibrationSpec {
    let curves: Vec<CurveClass> = genera
        .iter()
        .enumerate()
        .map(|(i, &h)| CurveClass::separating(format!("s{i}"), Genus(g), h).unwrap())
        .collect();
    let letters = curves.iter().map(|c| TwistLetter::plain(c.id())).collect();
    FibrationSpec::new(Genus(g), curves, letters, true).unwrap()
}

#[test]
fn intersection_table() {
    assert_eq!(intersect(H4Class::A, H2Class::ALPHA), 0);
    assert_eq!(intersect(H4Class::A, H2Class::BETA), 1);
    assert_eq!(intersect(H4Class::B, H2Class::ALPHA), 1);
    assert_eq!(intersect(H4Class::B, H2Class::BETA), 0);
    let zero = H4Class::default();
    assert_eq!(intersect(zero, H2Class { alpha: 7, beta: -3 }), 0);
}

#[test]
fn class_of_y_examples() {
    assert_eq!(class_of_y(Genus(2), 0), H4Class { a: 0, b: 6 });
    for m in [-3, 0, 5] {
        assert_eq!(class_of_y(Genus(2), m), H4Class { a: m, b: 6 });
    }
    for g in 1..=5u32 {
        for m in [-7, 0, 11] {
            let y = class_of_y(Genus(g), m);
            assert_eq!(intersect(y, H2Class::ALPHA), 2 * i64::from(g) + 2);
            assert_eq!(intersect(y, H2Class::BETA), m);
        }
    }
}

#[test]
fn twisting_keeps_class_metadata() {
    let table = CurveTable::shipped();
    let m0 = family_mn(0, &table);
    let search = LiftSearch::default();
    for n in [1, 4, -2] {
        let twisted = twist_deformation(&m0, FAMILY_SPLIT, table.twist(), n, &search).unwrap();
        for m in [None, Some(0), Some(3)] {
            assert_eq!(y_class_record(&twisted, m), y_class_record(&m0, m));
        }
    }
    let record = y_class_record(&m0, None);
    assert_eq!(record.genus, 2);
    assert_eq!(record.class, None);
    assert_eq!(
        y_class_record(&m0, Some(2)).class,
        Some(H4Class { a: 2, b: 6 })
    );
}

#[test]
fn bundle_examples() {
    let t4 = bundle_type(LiftClass::FullTwist, Genus(4)).unwrap();
    assert_eq!(t4.bundle, Bundle::Twisted { genus: 4 });
    assert!(t4.twisted_is_trivial_bundle);
    let t2 = bundle_type(LiftClass::FullTwist, Genus(2)).unwrap();
    assert_eq!(t2.bundle, Bundle::Twisted { genus: 2 });
    assert!(!t2.twisted_is_trivial_bundle);
    assert_eq!(
        bundle_type(LiftClass::Undecided, Genus(2)),
        Err(SixfoldError::UndecidedLift)
    );
    let reference = bundle_type(LiftClass::Trivial, Genus(1)).unwrap();
    assert_eq!(reference.bundle, Bundle::TrivialProduct);
    for g in 1..=20 {
        assert_eq!(
            bundle_type(LiftClass::Trivial, Genus(g)).unwrap(),
            reference
        );
        let twisted = bundle_type(LiftClass::FullTwist, Genus(g)).unwrap();
        assert_eq!(twisted.twisted_is_trivial_bundle, g % 3 == 1);
    }
}

#[test]
fn ledger_examples() {
    let none = FibrationSpec::new(Genus(2), vec![], vec![], true).unwrap();
    let l = blow_up_ledger(&none);
    assert_eq!(
        l,
        BlowUpLedger {
            fiberwise_line_blowups: 3,
            point_blowups: 0,
            curve_blowups: vec![]
        }
    );
    assert_eq!(l.euler_characteristic(), 12);

    let one = blow_up_ledger(&with_separating_letters(2, &[1]));
    assert_eq!(
        one,
        BlowUpLedger {
            fiberwise_line_blowups: 3,
            point_blowups: 2,
            curve_blowups: vec![1]
        }
    );
    assert_eq!(one.euler_characteristic(), 12 + 4 + 2);

    let g1 = FibrationSpec::new(Genus(1), vec![], vec![], true).unwrap();
    assert_eq!(
        blow_up_ledger(&g1),
        BlowUpLedger {
            fiberwise_line_blowups: 2,
            point_blowups: 0,
            curve_blowups: vec![]
        }
    );

    let table = CurveTable::shipped();
    let mn = blow_up_ledger(&family_mn(5, &table));
    assert_eq!(mn.fiberwise_line_blowups, 3);
    assert_eq!(
        mn.curve_blowups.len(),
        family_mn(5, &table).count_reducible()
    );
}

#[test]
fn ledger_euler_characteristic_decompositions() {
    for (g, genera) in [
        (2, vec![1]),
        (4, vec![1, 2, 2]),
        (6, vec![3, 1]),
        (3, vec![]),
    ] {
        let spec = with_separating_letters(g, &genera);
        let ledger = blow_up_ledger(&spec);
        // Per reducible fiber: g+3 local point blow-ups, g+1 of them shared
        // with the line locus, and 2h-1 sphere blow-ups.
        let per_fiber: i64 = genera
            .iter()
            .map(|&h| {
                let local_points = i64::from(g) + 3 - (i64::from(g) + 1);
                2 * local_points + 2 * (2 * i64::from(h) - 1)
            })
            .sum();
        assert_eq!(
            ledger.euler_characteristic(),
            6 + 2 * (i64::from(g) + 1) + per_fiber
        );
        let closed: i64 = genera.iter().map(|&h| 4 + 2 * (2 * i64::from(h) - 1)).sum();
        assert_eq!(
            ledger.euler_characteristic(),
            6 + 2 * (i64::from(g) + 1) + closed
        );
        assert_eq!(ledger.point_blowups, 2 * genera.len() as u64);
        assert_eq!(ledger.curve_blowups.len(), spec.count_reducible());
    }
}

#[test]
fn descriptor_examples() {
    let table = CurveTable::shipped();
    let none = FibrationSpec::new(Genus(2), vec![], vec![], true).unwrap();
    assert_eq!(y_diffeo_descriptor(&none, "M").descriptor, "M # 0 CP2bar");
    let one = y_diffeo_descriptor(&with_separating_letters(2, &[1]), "M");
    assert_eq!(
        (one.reducible_fibers, one.descriptor.as_str()),
        (1, "M # 1 CP2bar")
    );
    let three = y_diffeo_descriptor(&with_separating_letters(2, &[1, 1, 1]), "M");
    assert_eq!(three.descriptor, "M # 3 CP2bar");
    let spec = family_mn(3, &table);
    let d = y_diffeo_descriptor(&spec, "M(3)");
    assert_eq!(d.reducible_fibers, spec.count_reducible());
    assert_eq!(
        d.descriptor,
        format!("M(3) # {} CP2bar", spec.count_reducible())
    );
}

fn h4() -> impl Strategy<Value = H4Class> {
    (-1000i64..=1000, -1000i64..=1000).prop_map(|(a, b)| H4Class { a, b })
}

fn h2() -> impl Strategy<Value = H2Class> {
    (-1000i64..=1000, -1000i64..=1000).prop_map(|(alpha, beta)| H2Class { alpha, beta })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn intersection_is_bilinear(y1 in h4(), y2 in h4(), g1 in h2(), g2 in h2()) {
        prop_assert_eq!(intersect(y1 + y2, g1), intersect(y1, g1) + intersect(y2, g1));
        prop_assert_eq!(intersect(y1, g1 + g2), intersect(y1, g1) + intersect(y1, g2));
    }

    #[test]
    fn class_of_y_is_the_unique_solution(g in 1u32..=64, m in -500i64..=500, other in h4()) {
        let y = class_of_y(Genus(g), m);
        prop_assert_eq!(intersect(y, H2Class::ALPHA), 2 * i64::from(g) + 2);
        prop_assert_eq!(intersect(y, H2Class::BETA), m);
        // Pairing with alpha and beta reads off b and a, so the solution is unique.
        let hits = intersect(other, H2Class::ALPHA) == 2 * i64::from(g) + 2
            && intersect(other, H2Class::BETA) == m;
        prop_assert_eq!(hits, other == y);
    }

    #[test]
    fn ledger_is_additive(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s1 = common::random_valid_spec(&mut rng);
        let s2 = loop {
            let s = common::random_valid_spec(&mut rng);
            if s.genus() == s1.genus() {
                break s;
            }
        };
        let sum = fiber_sum(&s1, &s2, &[]);
        prop_assume!(sum.is_ok());
        let merged = blow_up_ledger(&s1).merge(&blow_up_ledger(&s2));
        let sum_ledger = blow_up_ledger(&sum.unwrap());
        prop_assert_eq!(&sum_ledger, &merged);
        let base = 6 + 2 * (i64::from(s1.genus().0) + 1);
        prop_assert_eq!(
            sum_ledger.euler_characteristic() - base,
            (blow_up_ledger(&s1).euler_characteristic() - base)
                + (blow_up_ledger(&s2).euler_characteristic() - base)
        );
    }
}
