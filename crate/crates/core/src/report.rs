//! Versioned machine-readable reports and their text rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::braid::LiftClass;
use crate::constructions::{Analysis, LiftOutcome};
use crate::invariants::ComplexStructure;
use crate::sixfold::Bundle;

pub const SCHEMA_VERSION: u32 = 1;

/// Exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit status for an undecided lift class under `--strict`.
pub const EXIT_UNDECIDED: i32 = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReportError {
    #[error("malformed report: {0}")]
    Malformed(String),
    #[error("unsupported report schema version {0}")]
    UnsupportedVersion(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MachineReport {
    pub schema_version: u32,
    pub engine_version: String,
    /// Where the input came from, e.g. a file name or `demo:mn:3`.
    pub source: String,
    /// SHA-256 of the input spec document, hex encoded.
    pub input_digest: String,
    pub analysis: Analysis,
}

pub fn digest(document: &str) -> String {
    hex::encode(Sha256::digest(document.as_bytes()))
}

impl MachineReport {
    pub fn new(source: impl Into<String>, document: &str, analysis: Analysis) -> Self {
        MachineReport {
            schema_version: SCHEMA_VERSION,
            engine_version: env!("CARGO_PKG_VERSION").to_owned(),
            source: source.into(),
            input_digest: digest(document),
            analysis,
        }
    }

    /// Pretty JSON with a trailing newline. Field order is fixed by the type,
    /// so equal reports encode to identical bytes.
    pub fn encode(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    /// 0, or 3 when `strict` and the lift class was not decided.
    pub fn exit_code(&self, strict: bool) -> i32 {
        let decided = matches!(
            self.analysis.lift,
            LiftOutcome::Decided { class, .. } if class != LiftClass::Undecided
        );
        if strict && !decided {
            EXIT_UNDECIDED
        } else {
            EXIT_OK
        }
    }

    pub fn render_text(&self) -> String {
        let a = &self.analysis;
        let inv = &a.invariants;
        let mut out = String::new();
        let opt = |x: Option<i64>| x.map_or_else(|| "unknown".to_owned(), |v| v.to_string());
        let _ = writeln!(out, "source: {}", self.source);
        let _ = writeln!(out, "sha256: {}", self.input_digest);
        let _ = writeln!(
            out,
            "genus {}, {} letters, {} reducible",
            a.genus, a.letters, a.reducible_fibers
        );
        let _ = writeln!(out, "chi = {}", inv.chi);
        let _ = writeln!(out, "sigma = {}", opt(inv.sigma));
        let _ = writeln!(out, "b1 = {}", opt(inv.b1.map(|b| b as i64)));
        let _ = writeln!(out, "b2+ = {}", opt(inv.b2plus));
        let _ = writeln!(out, "b2- = {}", opt(inv.b2minus));
        let h1 = inv
            .h1
            .as_ref()
            .map_or_else(|| "unknown".to_owned(), |h| h.to_string());
        let _ = writeln!(out, "H1 = {h1}");
        let complex = match inv.complex_structure {
            ComplexStructure::Obstructed => "obstructed",
            ComplexStructure::Unknown => "unknown",
        };
        let _ = writeln!(out, "complex structure: {complex}");
        let lift = match &a.lift {
            LiftOutcome::Decided { class, .. } => match class {
                LiftClass::Trivial => "Trivial",
                LiftClass::FullTwist => "FullTwist",
                LiftClass::Undecided => "Undecided",
            },
            LiftOutcome::NotMcgTrivial => "not mcg-trivial",
        };
        let _ = writeln!(out, "lift = {lift}");
        let ambient = match a.ambient {
            Some(d) => match d.bundle {
                Bundle::TrivialProduct => "S2 x CP2".to_owned(),
                Bundle::Twisted { genus } => format!(
                    "twisted CP2-bundle (genus {genus}, {})",
                    if d.twisted_is_trivial_bundle {
                        "trivial as a bundle"
                    } else {
                        "nontrivial"
                    }
                ),
            },
            None => "unknown".to_owned(),
        };
        let _ = writeln!(out, "ambient: {ambient}");
        let class = match a.y_class.class {
            Some(c) => format!("{} A + {} B", c.a, c.b),
            None => format!("m A + {} B", 2 * a.genus + 2),
        };
        let _ = writeln!(out, "[Y] = {class}");
        let l = &a.ledger;
        let _ = writeln!(
            out,
            "blow-ups: {} along lines, {} at points, along curves {:?}; chi(X) = {}",
            l.fiberwise_line_blowups,
            l.point_blowups,
            l.curve_blowups,
            a.ambient_euler_characteristic
        );
        let _ = writeln!(out, "Y = {}", a.y_descriptor.descriptor);
        for w in &a.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}

/// Parse and check a machine report.
pub fn decode(text: &str) -> Result<MachineReport, ReportError> {
    let report: MachineReport =
        serde_json::from_str(text).map_err(|e| ReportError::Malformed(e.to_string()))?;
    if report.schema_version != SCHEMA_VERSION {
        return Err(ReportError::UnsupportedVersion(report.schema_version));
    }
    Ok(report)
}
