//! Closed-form invariants of the total space of a Lefschetz fibration.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homology::{self, AbelianGroup, HomologyError};
use crate::model::{FibrationSpec, Genus, Provenance};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantsError {
    #[error("no block signatures declared; the signature is unknown")]
    MissingBlockData,
    #[error("inconsistent invariants: {0}")]
    InconsistentInvariants(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexStructure {
    /// No complex structure exists, on the manifold or any blow-up.
    Obstructed,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BettiNumbers {
    pub b2plus: i64,
    pub b2minus: i64,
}

/// Invariants of a closed oriented 4-manifold. Fields the input does not
/// determine are `None`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantReport {
    pub chi: i64,
    pub sigma: Option<i64>,
    pub b1: Option<usize>,
    pub b2plus: Option<i64>,
    pub b2minus: Option<i64>,
    pub h1: Option<AbelianGroup>,
    pub complex_structure: ComplexStructure,
}

/// 4 - 4g + k: two copies of the fiber's Euler characteristic plus one per
/// critical point.
pub fn euler_characteristic(genus: Genus, letters: usize) -> i64 {
    4 - 4 * i64::from(genus.0) + letters as i64
}

/// Sum of the signatures of the fiber-sum blocks.
pub fn signature_by_additivity(blocks: Option<&[i64]>) -> Result<i64, InvariantsError> {
    blocks
        .map(|b| b.iter().sum())
        .ok_or(InvariantsError::MissingBlockData)
}

/// b2+ and b2- from chi, sigma and b1, using b3 = b1.
pub fn betti_table(chi: i64, sigma: i64, b1: usize) -> Result<BettiNumbers, InvariantsError> {
    if (sigma + chi) % 2 != 0 {
        return Err(InvariantsError::InconsistentInvariants(format!(
            "sigma + chi = {} is odd",
            sigma + chi
        )));
    }
    let b2plus = (sigma + chi) / 2 - 1 + b1 as i64;
    let b2minus = b2plus - sigma;
    if b2plus < 0 || b2minus < 0 {
        return Err(InvariantsError::InconsistentInvariants(format!(
            "negative Betti numbers b2+ = {b2plus}, b2- = {b2minus}"
        )));
    }
    Ok(BettiNumbers { b2plus, b2minus })
}

/// Effect of `count` blow-ups at points.
pub fn blow_up_adjust(report: &InvariantReport, count: u64) -> InvariantReport {
    let count = count as i64;
    InvariantReport {
        chi: report.chi + count,
        sigma: report.sigma.map(|s| s - count),
        b2minus: report.b2minus.map(|b| b + count),
        ..report.clone()
    }
}

/// Obstructed only when the fundamental group is known to be Z + Z/n with
/// n >= 1 and b2+ >= 1. H_1 alone says nothing about the fundamental group,
/// so the provenance must certify that it is abelian.
pub fn complex_obstruction(
    h1: Option<&AbelianGroup>,
    b2plus: Option<i64>,
    provenance: Provenance,
) -> ComplexStructure {
    let Some(h1) = h1 else {
        return ComplexStructure::Unknown;
    };
    let z_plus_cyclic = h1.rank == 1 && h1.torsion.len() <= 1;
    if provenance.certifies_abelian_fundamental_group()
        && z_plus_cyclic
        && b2plus.is_some_and(|b| b >= 1)
    {
        ComplexStructure::Obstructed
    } else {
        ComplexStructure::Unknown
    }
}

/// All invariants of the total space that the spec determines.
pub fn invariant_report(spec: &FibrationSpec) -> Result<InvariantReport, crate::Error> {
    let chi = euler_characteristic(spec.genus(), spec.letters().len());
    let sigma = match signature_by_additivity(spec.block_signatures()) {
        Ok(s) => Some(s),
        // No singular fibers: the product with the sphere, signature 0.
        Err(InvariantsError::MissingBlockData) if spec.letters().is_empty() => Some(0),
        Err(InvariantsError::MissingBlockData) => None,
        Err(e) => return Err(e.into()),
    };
    let h1 = match homology::first_homology(spec) {
        Ok(h) => Some(h),
        Err(HomologyError::NoSection) => None,
        Err(e) => return Err(e.into()),
    };
    let b1 = h1.as_ref().map(|h| h.rank);
    let betti = match (sigma, b1) {
        (Some(s), Some(b)) => Some(betti_table(chi, s, b)?),
        _ => None,
    };
    let b2plus = betti.map(|b| b.b2plus);
    let complex_structure = complex_obstruction(h1.as_ref(), b2plus, spec.provenance());
    Ok(InvariantReport {
        chi,
        sigma,
        b1,
        b2plus,
        b2minus: betti.map(|b| b.b2minus),
        h1,
        complex_structure,
    })
}
