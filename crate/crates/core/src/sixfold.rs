//! Homology and blow-up bookkeeping for the 6-manifold X that contains the
//! total space as a hypersurface.
//!
//! H_4 is spanned by A (a fiber CP^2) and B (the CP^1-subbundle over the base
//! sphere); H_2 by alpha (a line in a fiber) and beta (a section). Their
//! intersections are A.alpha = 0, A.beta = 1, B.alpha = 1, B.beta = 0.

use std::ops::Add;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::LiftClass;
use crate::model::{FibrationSpec, Genus};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SixfoldError {
    #[error("the lift class is undecided, so the ambient bundle type is unknown")]
    UndecidedLift,
}

/// a A + b B in H_4(X).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct H4Class {
    pub a: i64,
    pub b: i64,
}

/// alpha_coeff alpha + beta_coeff beta in H_2(X).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct H2Class {
    pub alpha: i64,
    pub beta: i64,
}

impl H4Class {
    pub const A: H4Class = H4Class { a: 1, b: 0 };
    pub const B: H4Class = H4Class { a: 0, b: 1 };
}

impl H2Class {
    pub const ALPHA: H2Class = H2Class { alpha: 1, beta: 0 };
    pub const BETA: H2Class = H2Class { alpha: 0, beta: 1 };
}

impl Add for H4Class {
    type Output = H4Class;
    fn add(self, rhs: H4Class) -> H4Class {
        H4Class {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
        }
    }
}

impl Add for H2Class {
    type Output = H2Class;
    fn add(self, rhs: H2Class) -> H2Class {
        H2Class {
            alpha: self.alpha + rhs.alpha,
            beta: self.beta + rhs.beta,
        }
    }
}

pub fn intersect(y: H4Class, gamma: H2Class) -> i64 {
    y.a * gamma.beta + y.b * gamma.alpha
}

/// Class of the branched-cover hypersurface Y: m A + (2g+2) B, where m is
/// its intersection with the section.
pub fn class_of_y(genus: Genus, m: i64) -> H4Class {
    H4Class {
        a: m,
        b: 2 * i64::from(genus.0) + 2,
    }
}

/// The data that determine the class of Y in the blown-up X. The class
/// itself is only known once m is supplied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct YClassRecord {
    pub genus: u32,
    pub reducible_fibers: usize,
    pub m: Option<i64>,
    pub class: Option<H4Class>,
}

pub fn y_class_record(spec: &FibrationSpec, m: Option<i64>) -> YClassRecord {
    YClassRecord {
        genus: spec.genus().0,
        reducible_fibers: spec.count_reducible(),
        m,
        class: m.map(|m| class_of_y(spec.genus(), m)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Bundle {
    /// S^2 x CP^2.
    TrivialProduct,
    /// The projectivized bundle twisted by the full twist.
    Twisted { genus: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AmbientDescriptor {
    pub bundle: Bundle,
    /// Whether the twisted bundle is nevertheless trivial; false for the
    /// product.
    pub twisted_is_trivial_bundle: bool,
}

pub fn bundle_type(lift: LiftClass, genus: Genus) -> Result<AmbientDescriptor, SixfoldError> {
    match lift {
        LiftClass::Trivial => Ok(AmbientDescriptor {
            bundle: Bundle::TrivialProduct,
            twisted_is_trivial_bundle: false,
        }),
        LiftClass::FullTwist => Ok(AmbientDescriptor {
            bundle: Bundle::Twisted { genus: genus.0 },
            twisted_is_trivial_bundle: genus.0 % 3 == 1,
        }),
        LiftClass::Undecided => Err(SixfoldError::UndecidedLift),
    }
}

/// Blow-ups resolving the singular model of Y inside X.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlowUpLedger {
    /// Along the fiberwise line locus, g+1 of them.
    pub fiberwise_line_blowups: u64,
    /// Two per reducible fiber.
    pub point_blowups: u64,
    /// 2h-1 per reducible fiber of type h.
    pub curve_blowups: Vec<u64>,
}

impl BlowUpLedger {
    /// chi(X): 6 for S^2 x CP^2, plus 2 per blow-up along a sphere
    /// (exceptional divisor a CP^1-bundle over CP^1) and 2 per point
    /// blow-up (exceptional divisor CP^2).
    pub fn euler_characteristic(&self) -> i64 {
        let spheres = self.fiberwise_line_blowups + self.curve_blowups.iter().sum::<u64>();
        6 + 2 * spheres as i64 + 2 * self.point_blowups as i64
    }

    /// Ledger of the disjoint union of two sets of reducible letters over the
    /// same genus.
    pub fn merge(&self, other: &BlowUpLedger) -> BlowUpLedger {
        debug_assert_eq!(self.fiberwise_line_blowups, other.fiberwise_line_blowups);
        BlowUpLedger {
            fiberwise_line_blowups: self.fiberwise_line_blowups,
            point_blowups: self.point_blowups + other.point_blowups,
            curve_blowups: self
                .curve_blowups
                .iter()
                .chain(&other.curve_blowups)
                .copied()
                .collect(),
        }
    }
}

pub fn blow_up_ledger(spec: &FibrationSpec) -> BlowUpLedger {
    let genera = spec.separating_genera();
    BlowUpLedger {
        fiberwise_line_blowups: u64::from(spec.genus().0) + 1,
        point_blowups: 2 * genera.len() as u64,
        curve_blowups: genera.iter().map(|&h| 2 * u64::from(h) - 1).collect(),
    }
}

/// Diffeomorphism type of Y: the total space blown up once per reducible
/// fiber.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct YDescriptor {
    pub reducible_fibers: usize,
    pub descriptor: String,
}

pub fn y_diffeo_descriptor(spec: &FibrationSpec, total_space: &str) -> YDescriptor {
    let n0 = spec.count_reducible();
    YDescriptor {
        reducible_fibers: n0,
        descriptor: format!("{total_space} # {n0} CP2bar"),
    }
}
