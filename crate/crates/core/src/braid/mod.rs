//! Words in the planar and spherical braid groups, their permutation and
//! degree invariants, distinguished lifts of Dehn twists and the decision
//! procedures for triviality in the mapping class group of the punctured
//! sphere and for the lift class of a global braid monodromy.

mod action;
mod hyperelliptic;
mod lift;
mod lift_class;
mod mcg;
mod rewrite;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use hyperelliptic::{chain_curve, hyperelliptic_h1_action};
pub use lift::{
    distinguished_lift, global_braid_monodromy, letter_conjugator_braid, letter_lifts,
    shaped_global_braid_monodromy, LiftData,
};
pub use lift_class::{lift_class, LiftClass, LiftDecision, LiftRule, LiftSearch, ShapedWord};
pub use mcg::{mcg_image_trivial, McgDecision, McgTier, McgVerdict};
pub use rewrite::{Presentation, RewriteOutcome};

/// Default node limit for rewrite searches.
pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("braid words need at least 2 strands, got {0}")]
    TooFewStrands(usize),
    #[error("generator {letter} out of range for {strands} strands")]
    IndexOutOfRange { letter: i64, strands: usize },
    #[error("malformed braid word: {0}")]
    Malformed(String),
    #[error("lift of a genus-{genus} curve needs {expected} strands, conjugator has {found}")]
    GenusMismatch {
        genus: u32,
        expected: usize,
        found: usize,
    },
    #[error("no lift data for curve `{0}`")]
    MissingLiftData(String),
    #[error("word does not map to the identity mapping class")]
    NotMcgTrivial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ambient {
    Planar,
    Spherical,
}

/// A braid word. Letters are signed generator indices: `i` is the i-th
/// Artin generator and `-i` its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    ambient: Ambient,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, ambient: Ambient, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands < 2 {
            return Err(BraidError::TooFewStrands(strands));
        }
        if let Some(&bad) = letters
            .iter()
            .find(|&&l| l == 0 || l.unsigned_abs() as usize >= strands)
        {
            return Err(BraidError::IndexOutOfRange {
                letter: bad.into(),
                strands,
            });
        }
        Ok(BraidWord {
            strands,
            ambient,
            letters,
        })
    }

    pub fn empty(strands: usize, ambient: Ambient) -> Self {
        assert!(strands >= 2, "braid words need at least 2 strands");
        BraidWord {
            strands,
            ambient,
            letters: Vec::new(),
        }
    }

    /// Parse whitespace- or comma-separated signed generator indices.
    pub fn parse(strands: usize, ambient: Ambient, text: &str) -> Result<Self, BraidError> {
        let letters = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| BraidError::Malformed(format!("`{t}` is not a signed integer")))
                    .and_then(|v| {
                        i32::try_from(v)
                            .map_err(|_| BraidError::IndexOutOfRange { letter: v, strands })
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(strands, ambient, letters)
    }

    /// The generator `i` raised to `power`.
    pub fn generator_power(strands: usize, ambient: Ambient, i: i32, power: i64) -> Self {
        let mut w = Self::empty(strands, ambient);
        let letter = if power < 0 { -i } else { i };
        for _ in 0..power.unsigned_abs() {
            w.push(letter);
        }
        w
    }

    /// s_1 ... s_{n-1} s_{n-1} ... s_1, trivial in the spherical braid group.
    pub fn rim(strands: usize, ambient: Ambient) -> Self {
        let up = 1..strands as i32;
        let letters = up.clone().chain(up.rev()).collect();
        BraidWord {
            strands,
            ambient,
            letters,
        }
    }

    /// (s_1 ... s_{n-1})^n.
    pub fn full_twist(strands: usize, ambient: Ambient) -> Self {
        let letters = (0..strands).flat_map(|_| 1..strands as i32).collect();
        BraidWord {
            strands,
            ambient,
            letters,
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Letters as (generator index, sign) pairs.
    pub fn signed_letters(&self) -> impl Iterator<Item = (usize, i8)> + '_ {
        self.letters
            .iter()
            .map(|&l| (l.unsigned_abs() as usize, if l > 0 { 1 } else { -1 }))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn with_ambient(mut self, ambient: Ambient) -> Self {
        self.ambient = ambient;
        self
    }

    /// Append one letter, cancelling it against the last letter if they are
    /// mutually inverse. Amortized O(1).
    pub fn push(&mut self, letter: i32) {
        debug_assert!(letter != 0 && (letter.unsigned_abs() as usize) < self.strands);
        if self.letters.last() == Some(&-letter) {
            self.letters.pop();
        } else {
            self.letters.push(letter);
        }
    }

    /// Concatenate `other`, cancelling inverse pairs across the seam only.
    pub fn append(&mut self, other: &BraidWord) {
        assert_eq!(self.strands, other.strands, "strand counts differ");
        let mut rest = other.letters.as_slice();
        while let (Some(&last), Some(&first)) = (self.letters.last(), rest.first()) {
            if last != -first {
                break;
            }
            self.letters.pop();
            rest = &rest[1..];
        }
        self.letters.extend_from_slice(rest);
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut out = self.clone();
        out.append(other);
        out
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            ambient: self.ambient,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> BraidWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Self::empty(self.strands, self.ambient);
        for _ in 0..k.unsigned_abs() {
            out.append(&base);
        }
        out
    }

    /// by * self * by^-1
    pub fn conjugate(&self, by: &BraidWord) -> BraidWord {
        let mut out = by.clone();
        out.append(self);
        out.append(&by.inverse());
        out
    }

    pub fn free_reduced(&self) -> BraidWord {
        let mut out = Self::empty(self.strands, self.ambient);
        for &l in &self.letters {
            out.push(l);
        }
        out
    }

    /// Image in the symmetric group. The first letter acts first.
    pub fn permutation(&self) -> Permutation {
        let mut p = Permutation::identity(self.strands);
        for (i, _) in self.signed_letters() {
            p.then_transposition(i - 1, i);
        }
        p
    }

    /// Signed letter count; reduced mod 2(n-1) for spherical words.
    pub fn degree(&self) -> Degree {
        let total: i64 = self.letters.iter().map(|&l| l.signum() as i64).sum();
        match self.ambient {
            Ambient::Planar => Degree::Integer(total),
            Ambient::Spherical => {
                let modulus = 2 * (self.strands as i64 - 1);
                Degree::Residue {
                    value: total.rem_euclid(modulus) as u64,
                    modulus: modulus as u64,
                }
            }
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.letters.iter().map(i32::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Degree {
    Integer(i64),
    Residue { value: u64, modulus: u64 },
}

impl Degree {
    pub fn is_zero(self) -> bool {
        matches!(self, Degree::Integer(0) | Degree::Residue { value: 0, .. })
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Integer(d) => write!(f, "{d}"),
            Degree::Residue { value, modulus } => write!(f, "{value} mod {modulus}"),
        }
    }
}

/// Permutation of {0, .., n-1}; `images[i]` is where point i goes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Apply `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&j| other.images[j]).collect(),
        }
    }

    fn then_transposition(&mut self, a: usize, b: usize) {
        for j in &mut self.images {
            if *j == a {
                *j = b;
            } else if *j == b {
                *j = a;
            }
        }
    }

    /// Disjoint cycles on 1-based points, fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}
