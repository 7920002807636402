//! Builders for fibrations: fiber sums, the twisting construction, the
//! Matsumoto fibration and the twisted family M(n), plus end-to-end analysis.

mod analysis;
mod curve_table;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::braid::{
    letter_lifts, lift_class, Ambient, BraidError, BraidWord, LiftClass, LiftData, LiftSearch,
    ShapedWord,
};
use crate::homology::HomologyError;
use crate::model::{CurveClass, FibrationSpec, Provenance, SpecError, TwistLetter};

pub use analysis::{analyze, total_space_name, Analysis, AnalysisOptions, LiftOutcome};
pub use curve_table::{
    lift_matches_class, verify_constraints, verify_realizability, ConstraintCheck, CurveTable,
    DerivationSearch, RealizabilityCheck, TWIST_ID, VANISHING_IDS,
};

/// Signature of one Matsumoto block, whose total space is (S^2 x T^2) # 4 CP2bar.
pub const MATSUMOTO_SIGNATURE: i64 = -4;

/// Index separating the two halves of the 32-letter family.
pub const FAMILY_SPLIT: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("fiber sum of genus {left} and genus {right} fibrations")]
    GenusMismatch { left: u32, right: u32 },
    #[error("curve `{0}` is defined differently in the two summands")]
    CurveConflict(String),
    #[error("split index {split} exceeds the letter count {len}")]
    SplitOutOfRange { split: usize, len: usize },
    #[error("the global braid monodromy of the twisted part is not trivial")]
    LiftNotTrivial,
    #[error("could not decide whether the global braid monodromy of the twisted part is trivial")]
    LiftUndecided,
    #[error("invalid curve table: {0}")]
    CurveTable(String),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

fn merge_curves(
    target: &mut Vec<CurveClass>,
    lifts: &mut BTreeMap<String, Vec<i32>>,
    curves: &[CurveClass],
    extra_lifts: &BTreeMap<String, Vec<i32>>,
) -> Result<(), ConstructionError> {
    for curve in curves {
        match target.iter().find(|c| c.id() == curve.id()) {
            Some(existing) if existing != curve => {
                return Err(ConstructionError::CurveConflict(curve.id().to_owned()))
            }
            Some(_) => {}
            None => target.push(curve.clone()),
        }
        if let Some(word) = extra_lifts.get(curve.id()) {
            match lifts.get(curve.id()) {
                Some(w) if w != word => {
                    return Err(ConstructionError::CurveConflict(curve.id().to_owned()))
                }
                _ => {
                    lifts.insert(curve.id().to_owned(), word.clone());
                }
            }
        }
    }
    Ok(())
}

/// Conjugate a letter by a gluing word, listed outermost first.
fn glue_letter(letter: &TwistLetter, phi: &[(CurveClass, i64)]) -> TwistLetter {
    phi.iter()
        .rev()
        .fold(letter.clone(), |l, (c, p)| l.conjugated_by(c.id(), *p))
}

/// Fiber sum glued by the product of twists `phi` (outermost first): the
/// letters of `s1`, then those of `s2` conjugated by `phi`.
pub fn fiber_sum(
    s1: &FibrationSpec,
    s2: &FibrationSpec,
    phi: &[(CurveClass, i64)],
) -> Result<FibrationSpec, ConstructionError> {
    if s1.genus() != s2.genus() {
        return Err(ConstructionError::GenusMismatch {
            left: s1.genus().0,
            right: s2.genus().0,
        });
    }
    let mut curves = s1.curves().to_vec();
    let mut lifts = s1.lifts().clone();
    merge_curves(&mut curves, &mut lifts, s2.curves(), s2.lifts())?;
    let phi_curves: Vec<CurveClass> = phi.iter().map(|(c, _)| c.clone()).collect();
    merge_curves(&mut curves, &mut lifts, &phi_curves, &BTreeMap::new())?;
    let letters = s1
        .letters()
        .iter()
        .cloned()
        .chain(s2.letters().iter().map(|l| glue_letter(l, phi)))
        .collect();
    let blocks = match (s1.block_signatures(), s2.block_signatures()) {
        (Some(a), Some(b)) => Some([a, b].concat()),
        _ => None,
    };
    Ok(FibrationSpec::new(
        s1.genus(),
        curves,
        letters,
        s1.has_section() && s2.has_section(),
    )?
    .with_block_signatures(blocks)
    .with_lifts(lifts)?
    .with_provenance(Provenance::Derived))
}

/// Decide the lift class of the letters from `split` on.
fn tail_lift_class(
    spec: &FibrationSpec,
    split: usize,
    search: &LiftSearch,
) -> Result<LiftClass, ConstructionError> {
    let lifts = letter_lifts(spec, &LiftData::from_spec(spec))?;
    let mut shaped = ShapedWord::new(BraidWord::empty(spec.genus().strands(), Ambient::Spherical));
    for lift in &lifts[split..] {
        shaped.push_factor(lift);
    }
    match lift_class(&shaped, search) {
        Ok(decision) => Ok(decision.class),
        Err(BraidError::NotMcgTrivial) => Err(ConstructionError::LiftNotTrivial),
        Err(e) => Err(e.into()),
    }
}

/// The n-fold twisting construction: conjugate every letter from `split` on
/// by the n-th power of the twist along `c`. The letters after the split
/// must have trivial global braid monodromy, which is checked.
pub fn twist_deformation(
    spec: &FibrationSpec,
    split: usize,
    c: &CurveClass,
    n: i64,
    search: &LiftSearch,
) -> Result<FibrationSpec, ConstructionError> {
    let len = spec.letters().len();
    if split > len {
        return Err(ConstructionError::SplitOutOfRange { split, len });
    }
    if n == 0 {
        return Ok(spec.clone());
    }
    match tail_lift_class(spec, split, search)? {
        LiftClass::Trivial => {}
        LiftClass::FullTwist => return Err(ConstructionError::LiftNotTrivial),
        LiftClass::Undecided => return Err(ConstructionError::LiftUndecided),
    }
    let mut curves = spec.curves().to_vec();
    let mut lifts = spec.lifts().clone();
    merge_curves(
        &mut curves,
        &mut lifts,
        std::slice::from_ref(c),
        &BTreeMap::new(),
    )?;
    let letters = spec
        .letters()
        .iter()
        .enumerate()
        .map(|(i, l)| {
            if i < split {
                l.clone()
            } else {
                l.clone().conjugated_by(c.id(), n)
            }
        })
        .collect();
    let provenance = match spec.provenance() {
        Provenance::TwistedFamily { n: m } if split == FAMILY_SPLIT && c.id() == TWIST_ID => {
            Provenance::TwistedFamily { n: m + n }
        }
        _ => Provenance::Derived,
    };
    Ok(
        FibrationSpec::new(spec.genus(), curves, letters, spec.has_section())?
            .with_block_signatures(spec.block_signatures().map(<[i64]>::to_vec))
            .with_lifts(lifts)?
            .with_provenance(provenance),
    )
}

/// The genus-2 fibration with monodromy (t1 t2 t3 t4)^2.
pub fn matsumoto_fibration(table: &CurveTable) -> FibrationSpec {
    let letters: Vec<TwistLetter> = VANISHING_IDS
        .iter()
        .cycle()
        .take(8)
        .map(|id| TwistLetter::plain(*id))
        .collect();
    let vanishing_lifts = table
        .lifts()
        .iter()
        .filter(|(id, _)| VANISHING_IDS.contains(&id.as_str()))
        .map(|(id, w)| (id.clone(), w.clone()))
        .collect();
    FibrationSpec::new(
        table.vanishing()[0].genus(),
        table.vanishing().to_vec(),
        letters,
        true,
    )
    .expect("curve table satisfies the monodromy relation")
    .with_block_signatures(Some(vec![MATSUMOTO_SIGNATURE]))
    .with_lifts(vanishing_lifts)
    .expect("curve table lifts are in range")
    .with_provenance(Provenance::Matsumoto)
}

/// M(n): four Matsumoto blocks, the last two conjugated by the n-th power
/// of the twist along c.
pub fn family_mn(n: i64, table: &CurveTable) -> FibrationSpec {
    let letters: Vec<TwistLetter> = VANISHING_IDS
        .iter()
        .cycle()
        .take(32)
        .enumerate()
        .map(|(i, id)| {
            let l = TwistLetter::plain(*id);
            if i >= FAMILY_SPLIT {
                l.conjugated_by(TWIST_ID, n)
            } else {
                l
            }
        })
        .collect();
    FibrationSpec::new(table.twist().genus(), table.curves(), letters, true)
        .expect("curve table satisfies the monodromy relation")
        .with_block_signatures(Some(vec![MATSUMOTO_SIGNATURE; 4]))
        .with_lifts(table.lifts().clone())
        .expect("curve table lifts are in range")
        .with_provenance(Provenance::TwistedFamily { n })
}
