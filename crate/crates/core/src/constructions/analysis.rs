use std::collections::BTreeSet;
use std::thread;

use serde::{Deserialize, Serialize};

use crate::braid::{
    lift_class, shaped_global_braid_monodromy, BraidError, LiftClass, LiftData, LiftRule,
    LiftSearch,
};
use crate::invariants::{invariant_report, InvariantReport};
use crate::model::{FibrationSpec, Provenance};
use crate::sixfold::{
    blow_up_ledger, bundle_type, y_class_record, y_diffeo_descriptor, AmbientDescriptor,
    BlowUpLedger, YClassRecord, YDescriptor,
};

use super::curve_table::lift_matches_class;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct AnalysisOptions {
    pub search: LiftSearch,
    /// Intersection of Y with the section; unknown by default.
    pub m: Option<i64>,
}

/// Result of classifying the global braid monodromy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum LiftOutcome {
    Decided {
        class: LiftClass,
        rules: BTreeSet<LiftRule>,
        states: usize,
    },
    /// The product of the lifts is not the identity mapping class, so the
    /// lift data does not describe the fibration.
    NotMcgTrivial,
}

impl LiftOutcome {
    pub fn class(&self) -> Option<LiftClass> {
        match self {
            LiftOutcome::Decided { class, .. } => Some(*class),
            LiftOutcome::NotMcgTrivial => None,
        }
    }
}

/// Everything the engine can say about a fibration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub genus: u32,
    pub letters: usize,
    pub reducible_fibers: usize,
    pub invariants: InvariantReport,
    pub lift: LiftOutcome,
    /// Letters whose lift acts on H_1 differently from the twist on their
    /// class, up to sign.
    pub inconsistent_lifts: Vec<usize>,
    pub ambient: Option<AmbientDescriptor>,
    pub y_class: YClassRecord,
    pub ledger: BlowUpLedger,
    pub ambient_euler_characteristic: i64,
    pub y_descriptor: YDescriptor,
    pub warnings: Vec<String>,
}

/// Name used for the total space in descriptors.
pub fn total_space_name(spec: &FibrationSpec) -> String {
    match spec.provenance() {
        Provenance::TwistedFamily { n } => format!("M({n})"),
        _ => "M".to_owned(),
    }
}

fn decide_lift(spec: &FibrationSpec, search: &LiftSearch) -> Result<LiftOutcome, BraidError> {
    let data = LiftData::from_spec(spec);
    let shaped = shaped_global_braid_monodromy(spec, &data)?;
    match lift_class(&shaped, search) {
        Ok(d) => Ok(LiftOutcome::Decided {
            class: d.class,
            rules: d.rules,
            states: d.states,
        }),
        Err(BraidError::NotMcgTrivial) => Ok(LiftOutcome::NotMcgTrivial),
        Err(e) => Err(e),
    }
}

fn inconsistent_letters(spec: &FibrationSpec) -> Result<Vec<usize>, crate::Error> {
    let data = LiftData::from_spec(spec);
    let mut bad = Vec::new();
    for curve in spec.curves() {
        let w = data.conjugator(curve)?;
        if !lift_matches_class(curve, &w)? {
            bad.extend(
                spec.letters()
                    .iter()
                    .enumerate()
                    .filter(|(_, l)| {
                        l.curve == curve.id() || l.conjugator.iter().any(|t| t.curve == curve.id())
                    })
                    .map(|(i, _)| i),
            );
        }
    }
    bad.sort_unstable();
    bad.dedup();
    Ok(bad)
}

/// Run every module on `spec`. The invariant and braid computations run on
/// separate threads; the result does not depend on their scheduling.
pub fn analyze(spec: &FibrationSpec, options: &AnalysisOptions) -> Result<Analysis, crate::Error> {
    let (invariants, lift) = thread::scope(|s| {
        let lift = s.spawn(|| decide_lift(spec, &options.search));
        let invariants = invariant_report(spec);
        (invariants, lift.join().expect("lift thread panicked"))
    });
    let invariants = invariants?;
    let lift = lift?;
    let inconsistent_lifts = inconsistent_letters(spec)?;

    let mut warnings = Vec::new();
    if invariants.sigma.is_none() {
        warnings.push("signature unknown: no block signatures declared".to_owned());
    }
    if invariants.h1.is_none() {
        warnings
            .push("first homology not computed: the fibration has no declared section".to_owned());
    }
    if !inconsistent_lifts.is_empty() {
        warnings.push(format!(
            "lift data disagrees with the homology classes of {} letters",
            inconsistent_lifts.len()
        ));
    }
    let ambient = match &lift {
        LiftOutcome::Decided { class, .. } => {
            if *class == LiftClass::Undecided {
                warnings.push("global braid monodromy class undecided within budget".to_owned());
            }
            bundle_type(*class, spec.genus()).ok()
        }
        LiftOutcome::NotMcgTrivial => {
            warnings.push(
                "product of the distinguished lifts is not the identity mapping class".to_owned(),
            );
            None
        }
    };

    let ledger = blow_up_ledger(spec);
    Ok(Analysis {
        genus: spec.genus().0,
        letters: spec.letters().len(),
        reducible_fibers: spec.count_reducible(),
        invariants,
        lift,
        inconsistent_lifts,
        ambient,
        y_class: y_class_record(spec, options.m),
        ambient_euler_characteristic: ledger.euler_characteristic(),
        ledger,
        y_descriptor: y_diffeo_descriptor(spec, &total_space_name(spec)),
        warnings,
    })
}
