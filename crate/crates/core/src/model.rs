//! Surfaces, curves, twist letters and fibration specs, plus the JSON spec
//! document format.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homology::{self, HomologyError};

/// Largest genus accepted by the validator. Keeps matrix sizes bounded for
/// untrusted documents.
pub const MAX_GENUS: u32 = 128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("malformed spec document: {0}")]
    MalformedDocument(String),
    #[error("invariant violated: {invariant}{}", curve_suffix(.curve))]
    InvariantViolation {
        invariant: String,
        curve: Option<String>,
    },
}

fn curve_suffix(curve: &Option<String>) -> String {
    match curve {
        Some(id) => format!(" (curve `{id}`)"),
        None => String::new(),
    }
}

impl SpecError {
    fn violation(invariant: impl Into<String>, curve: Option<&str>) -> Self {
        SpecError::InvariantViolation {
            invariant: invariant.into(),
            curve: curve.map(str::to_owned),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Genus(pub u32);

impl Genus {
    /// Rank of H_1 of the closed surface.
    pub fn rank(self) -> usize {
        2 * self.0 as usize
    }

    /// Number of branch points of the hyperelliptic quotient.
    pub fn strands(self) -> usize {
        2 * self.0 as usize + 2
    }
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CurveKind {
    NonSeparating,
    /// Bounds a subsurface of genus `h` on one side.
    Separating(u32),
}

/// A simple closed curve, remembered only through its homology class and
/// separating type.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveClass {
    id: String,
    genus: Genus,
    kind: CurveKind,
    vector: Vec<i64>,
}

impl CurveClass {
    pub fn nonseparating(
        id: impl Into<String>,
        genus: Genus,
        vector: Vec<i64>,
    ) -> Result<Self, SpecError> {
        let curve = CurveClass {
            id: id.into(),
            genus,
            kind: CurveKind::NonSeparating,
            vector,
        };
        curve.validate()?;
        Ok(curve)
    }

    pub fn separating(id: impl Into<String>, genus: Genus, h: u32) -> Result<Self, SpecError> {
        let curve = CurveClass {
            id: id.into(),
            genus,
            kind: CurveKind::Separating(h),
            vector: vec![0; genus.rank()],
        };
        curve.validate()?;
        Ok(curve)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn vector(&self) -> &[i64] {
        &self.vector
    }

    pub fn is_separating(&self) -> bool {
        matches!(self.kind, CurveKind::Separating(_))
    }

    fn validate(&self) -> Result<(), SpecError> {
        let id = Some(self.id.as_str());
        if self.id.is_empty() {
            return Err(SpecError::violation("curve id must be non-empty", None));
        }
        if self.vector.len() != self.genus.rank() {
            return Err(SpecError::violation(
                format!(
                    "vector length {} differs from 2g = {}",
                    self.vector.len(),
                    self.genus.rank()
                ),
                id,
            ));
        }
        match self.kind {
            CurveKind::NonSeparating => {
                let content = self.vector.iter().fold(0i64, |acc, &x| acc.gcd(&x));
                if content != 1 {
                    return Err(SpecError::violation(
                        "non-separating class must be primitive and nonzero",
                        id,
                    ));
                }
            }
            CurveKind::Separating(h) => {
                if self.vector.iter().any(|&x| x != 0) {
                    return Err(SpecError::violation(
                        "separating class must be zero in homology",
                        id,
                    ));
                }
                if h == 0 || 2 * u64::from(h) > u64::from(self.genus.0) {
                    return Err(SpecError::violation(
                        format!("separating genus h = {h} must satisfy 0 < h <= g/2"),
                        id,
                    ));
                }
            }
        }
        Ok(())
    }
}

/// One factor `curve^conjugator` of a conjugator list. The first term of a
/// list is the outermost twist.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConjugatorTerm {
    pub curve: String,
    pub power: i64,
}

/// A positive Dehn twist along the image of `curve` under the twists listed
/// in `conjugator`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistLetter {
    pub curve: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub conjugator: Vec<ConjugatorTerm>,
}

impl TwistLetter {
    pub fn plain(curve: impl Into<String>) -> Self {
        TwistLetter {
            curve: curve.into(),
            conjugator: Vec::new(),
        }
    }

    /// Prepend `curve^power` as a new outermost conjugator, merging with an
    /// existing outermost term on the same curve.
    pub fn conjugated_by(mut self, curve: &str, power: i64) -> Self {
        if power == 0 {
            return self;
        }
        match self.conjugator.first_mut() {
            Some(first) if first.curve == curve => {
                first.power += power;
                if first.power == 0 {
                    self.conjugator.remove(0);
                }
            }
            _ => self.conjugator.insert(
                0,
                ConjugatorTerm {
                    curve: curve.to_owned(),
                    power,
                },
            ),
        }
        self
    }
}

/// Where a spec came from. Builders that know the fundamental group of the
/// total space is abelian say so here; nothing parsed from a document does.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum Provenance {
    Document,
    Matsumoto,
    TwistedFamily { n: i64 },
    Derived,
}

impl Provenance {
    pub fn certifies_abelian_fundamental_group(self) -> bool {
        matches!(self, Provenance::TwistedFamily { .. })
    }
}

/// Monodromy factorization of a Lefschetz fibration over the sphere.
///
/// Equality compares the factorization data and ignores provenance.
#[derive(Clone, Debug)]
pub struct FibrationSpec {
    genus: Genus,
    curves: Vec<CurveClass>,
    index: BTreeMap<String, usize>,
    letters: Vec<TwistLetter>,
    has_section: bool,
    block_signatures: Option<Vec<i64>>,
    lifts: BTreeMap<String, Vec<i32>>,
    provenance: Provenance,
}

impl PartialEq for FibrationSpec {
    fn eq(&self, other: &Self) -> bool {
        self.genus == other.genus
            && self.curves == other.curves
            && self.letters == other.letters
            && self.has_section == other.has_section
            && self.block_signatures == other.block_signatures
            && self.lifts == other.lifts
    }
}

impl Eq for FibrationSpec {}

impl FibrationSpec {
    /// Validate and assemble a spec. Checks curve invariants, references and
    /// that the product of the letters acts trivially on H_1.
    pub fn new(
        genus: Genus,
        curves: Vec<CurveClass>,
        letters: Vec<TwistLetter>,
        has_section: bool,
    ) -> Result<Self, SpecError> {
        if genus.0 == 0 || genus.0 > MAX_GENUS {
            return Err(SpecError::violation(
                format!("genus must lie in 1..={MAX_GENUS}, got {genus}"),
                None,
            ));
        }
        let mut index = BTreeMap::new();
        for (i, curve) in curves.iter().enumerate() {
            if curve.genus != genus {
                return Err(SpecError::violation(
                    format!(
                        "curve genus {} differs from spec genus {genus}",
                        curve.genus
                    ),
                    Some(&curve.id),
                ));
            }
            curve.validate()?;
            if index.insert(curve.id.clone(), i).is_some() {
                return Err(SpecError::violation("duplicate curve id", Some(&curve.id)));
            }
        }
        for letter in &letters {
            let referenced =
                std::iter::once(&letter.curve).chain(letter.conjugator.iter().map(|t| &t.curve));
            for id in referenced {
                if !index.contains_key(id) {
                    return Err(SpecError::violation(
                        "letter references an unknown curve",
                        Some(id),
                    ));
                }
            }
        }
        let spec = FibrationSpec {
            genus,
            curves,
            index,
            letters,
            has_section,
            block_signatures: None,
            lifts: BTreeMap::new(),
            provenance: Provenance::Document,
        };
        spec.check_monodromy()?;
        Ok(spec)
    }

    fn check_monodromy(&self) -> Result<(), SpecError> {
        let action = homology::factorization_h1_action(self).map_err(|e| match e {
            HomologyError::Overflow { context } => SpecError::violation(
                format!("letter class overflows 64-bit arithmetic ({context})"),
                None,
            ),
            other => SpecError::violation(other.to_string(), None),
        })?;
        if !action.is_identity() {
            return Err(SpecError::violation(
                "product of the letter transvections is not the identity on H_1",
                None,
            ));
        }
        Ok(())
    }

    pub fn with_block_signatures(mut self, blocks: Option<Vec<i64>>) -> Self {
        self.block_signatures = blocks;
        self
    }

    /// Attach conjugator braids (signed generator lists) for the distinguished
    /// lifts of the named curves.
    pub fn with_lifts(mut self, lifts: BTreeMap<String, Vec<i32>>) -> Result<Self, SpecError> {
        let bound = self.genus.strands() as i64 - 1;
        for (id, word) in &lifts {
            if !self.index.contains_key(id) {
                return Err(SpecError::violation(
                    "lift given for an unknown curve",
                    Some(id),
                ));
            }
            if let Some(bad) = word.iter().find(|&&l| l == 0 || i64::from(l).abs() > bound) {
                return Err(SpecError::violation(
                    format!("lift letter {bad} outside ±1..={bound}"),
                    Some(id),
                ));
            }
        }
        self.lifts = lifts;
        Ok(self)
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn curves(&self) -> &[CurveClass] {
        &self.curves
    }

    pub fn curve(&self, id: &str) -> Option<&CurveClass> {
        self.index.get(id).map(|&i| &self.curves[i])
    }

    pub fn letters(&self) -> &[TwistLetter] {
        &self.letters
    }

    pub fn has_section(&self) -> bool {
        self.has_section
    }

    pub fn block_signatures(&self) -> Option<&[i64]> {
        self.block_signatures.as_deref()
    }

    pub fn lifts(&self) -> &BTreeMap<String, Vec<i32>> {
        &self.lifts
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Curve underlying a letter. Letters are validated at construction, so
    /// the lookup cannot fail for letters of this spec.
    pub fn letter_curve(&self, letter: &TwistLetter) -> &CurveClass {
        self.curve(&letter.curve)
            .expect("letters reference validated curve ids")
    }

    /// Number of reducible singular fibers, i.e. separating letters.
    pub fn count_reducible(&self) -> usize {
        self.letters
            .iter()
            .filter(|l| self.letter_curve(l).is_separating())
            .count()
    }

    /// Separating genera `h` of the separating letters, in letter order.
    pub fn separating_genera(&self) -> Vec<u32> {
        self.letters
            .iter()
            .filter_map(|l| match self.letter_curve(l).kind {
                CurveKind::Separating(h) => Some(h),
                CurveKind::NonSeparating => None,
            })
            .collect()
    }

    /// Serialize to the JSON spec document format.
    pub fn to_document(&self) -> String {
        let doc = SpecDocument {
            genus: self.genus.0,
            has_section: self.has_section,
            curves: self
                .curves
                .iter()
                .map(|c| CurveEntry {
                    id: c.id.clone(),
                    kind: match c.kind {
                        CurveKind::NonSeparating => KindTag::Nonsep,
                        CurveKind::Separating(_) => KindTag::Sep,
                    },
                    h: match c.kind {
                        CurveKind::Separating(h) => Some(h),
                        CurveKind::NonSeparating => None,
                    },
                    vector: c.vector.clone(),
                    lift: self.lifts.get(&c.id).cloned(),
                })
                .collect(),
            letters: self.letters.clone(),
            block_signatures: self.block_signatures.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("spec documents always serialize")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecDocument {
    genus: u32,
    has_section: bool,
    curves: Vec<CurveEntry>,
    letters: Vec<TwistLetter>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    block_signatures: Option<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveEntry {
    id: String,
    kind: KindTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    h: Option<u32>,
    vector: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lift: Option<Vec<i32>>,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
#[serde(rename_all = "lowercase")]
enum KindTag {
    Nonsep,
    Sep,
}

/// Parse and validate a JSON spec document.
pub fn parse_spec(document: &str) -> Result<FibrationSpec, SpecError> {
    let doc: SpecDocument =
        serde_json::from_str(document).map_err(|e| SpecError::MalformedDocument(e.to_string()))?;
    if doc.genus == 0 || doc.genus > MAX_GENUS {
        return Err(SpecError::violation(
            format!("genus must lie in 1..={MAX_GENUS}, got {}", doc.genus),
            None,
        ));
    }
    let genus = Genus(doc.genus);
    let mut curves = Vec::with_capacity(doc.curves.len());
    let mut lifts = BTreeMap::new();
    let mut seen = HashSet::new();
    for entry in doc.curves {
        if !seen.insert(entry.id.clone()) {
            return Err(SpecError::violation("duplicate curve id", Some(&entry.id)));
        }
        let kind = match (entry.kind, entry.h) {
            (KindTag::Nonsep, None) => CurveKind::NonSeparating,
            (KindTag::Nonsep, Some(_)) => {
                return Err(SpecError::MalformedDocument(format!(
                    "curve `{}`: field `h` only applies to separating curves",
                    entry.id
                )))
            }
            (KindTag::Sep, Some(h)) => CurveKind::Separating(h),
            (KindTag::Sep, None) => {
                return Err(SpecError::MalformedDocument(format!(
                    "curve `{}`: separating curves need field `h`",
                    entry.id
                )))
            }
        };
        let curve = CurveClass {
            id: entry.id,
            genus,
            kind,
            vector: entry.vector,
        };
        curve.validate()?;
        if let Some(word) = entry.lift {
            lifts.insert(curve.id.clone(), word);
        }
        curves.push(curve);
    }
    FibrationSpec::new(genus, curves, doc.letters, doc.has_section)?
        .with_block_signatures(doc.block_signatures)
        .with_lifts(lifts)
}
