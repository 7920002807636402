use std::collections::BTreeMap;

use crate::model::{CurveClass, CurveKind, FibrationSpec, TwistLetter};

use super::{Ambient, BraidError, BraidWord, ShapedWord};

/// Conjugator braids placing each curve relative to the standard one under
/// the hyperelliptic quotient. The distinguished lift of the twist along a
/// curve is `w s_1 w^-1` (non-separating) or `w (s_1 ... s_2h)^(4h+2) w^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftData {
    words: BTreeMap<String, Vec<i32>>,
    missing_is_empty: bool,
}

impl LiftData {
    /// Lift words stored on the spec; curves without one use the empty word.
    pub fn from_spec(spec: &FibrationSpec) -> Self {
        LiftData {
            words: spec.lifts().clone(),
            missing_is_empty: true,
        }
    }

    /// The given words; any other curve uses the empty word.
    pub fn defaulting(words: BTreeMap<String, Vec<i32>>) -> Self {
        LiftData {
            words,
            missing_is_empty: true,
        }
    }

    /// Exactly the given words; any other curve is missing.
    pub fn explicit(words: BTreeMap<String, Vec<i32>>) -> Self {
        LiftData {
            words,
            missing_is_empty: false,
        }
    }

    pub fn conjugator(&self, curve: &CurveClass) -> Result<BraidWord, BraidError> {
        let strands = curve.genus().strands();
        match self.words.get(curve.id()) {
            Some(word) => BraidWord::new(strands, Ambient::Spherical, word.clone()),
            None if self.missing_is_empty => Ok(BraidWord::empty(strands, Ambient::Spherical)),
            None => Err(BraidError::MissingLiftData(curve.id().to_owned())),
        }
    }
}

fn base_twist(curve: &CurveClass, strands: usize) -> BraidWord {
    match curve.kind() {
        CurveKind::NonSeparating => BraidWord::generator_power(strands, Ambient::Spherical, 1, 1),
        CurveKind::Separating(h) => {
            let chain = BraidWord {
                strands,
                ambient: Ambient::Spherical,
                letters: (1..=2 * h as i32).collect(),
            };
            chain.pow(4 * i64::from(h) + 2)
        }
    }
}

/// The distinguished lift of the twist along `curve`, positioned by
/// `conjugator`.
pub fn distinguished_lift(
    curve: &CurveClass,
    conjugator: &BraidWord,
) -> Result<BraidWord, BraidError> {
    let strands = curve.genus().strands();
    if conjugator.strands() != strands {
        return Err(BraidError::GenusMismatch {
            genus: curve.genus().0,
            expected: strands,
            found: conjugator.strands(),
        });
    }
    Ok(base_twist(curve, strands).conjugate(conjugator))
}

/// Conjugator braid of a letter: the lifts of the inverse conjugator twists,
/// outermost first, followed by the curve's own positioning word.
pub fn letter_conjugator_braid(
    spec: &FibrationSpec,
    letter: &TwistLetter,
    data: &LiftData,
) -> Result<BraidWord, BraidError> {
    let strands = spec.genus().strands();
    let mut w = BraidWord::empty(strands, Ambient::Spherical);
    for term in &letter.conjugator {
        let d = spec
            .curve(&term.curve)
            .expect("conjugator terms reference validated curve ids");
        let wd = data.conjugator(d)?;
        w.append(&base_twist(d, strands).pow(-term.power).conjugate(&wd));
    }
    w.append(&data.conjugator(spec.letter_curve(letter))?);
    Ok(w)
}

/// Distinguished lift of every letter, in order.
pub fn letter_lifts(spec: &FibrationSpec, data: &LiftData) -> Result<Vec<BraidWord>, BraidError> {
    spec.letters()
        .iter()
        .map(|letter| {
            let w = letter_conjugator_braid(spec, letter, data)?;
            distinguished_lift(spec.letter_curve(letter), &w)
        })
        .collect()
}

/// Product of the distinguished lifts of all letters.
pub fn global_braid_monodromy(
    spec: &FibrationSpec,
    data: &LiftData,
) -> Result<BraidWord, BraidError> {
    Ok(shaped_global_braid_monodromy(spec, data)?.word)
}

/// As `global_braid_monodromy`, remembering where each letter's lift ends.
pub fn shaped_global_braid_monodromy(
    spec: &FibrationSpec,
    data: &LiftData,
) -> Result<ShapedWord, BraidError> {
    let mut shaped = ShapedWord::new(BraidWord::empty(spec.genus().strands(), Ambient::Spherical));
    for lift in letter_lifts(spec, data)? {
        shaped.push_factor(&lift);
    }
    Ok(shaped)
}
