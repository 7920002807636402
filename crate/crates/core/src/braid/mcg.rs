use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::action::{self, ActionVerdict};
use super::rewrite::{Presentation, RewriteOutcome};
use super::BraidWord;

/// Longest word handed to the rewrite tier; longer words go straight to the
/// automorphism tier.
const REWRITE_MAX_LEN: usize = 32;
/// Node cap of the rewrite tier, below the caller's budget.
const REWRITE_MAX_NODES: usize = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum McgVerdict {
    Trivial,
    Nontrivial,
    Unknown,
}

/// Which test settled the verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum McgTier {
    Permutation,
    Degree,
    Rewrite,
    Automorphism,
    Exhausted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct McgDecision {
    pub verdict: McgVerdict,
    pub tier: McgTier,
}

impl McgDecision {
    fn new(verdict: McgVerdict, tier: McgTier) -> Self {
        McgDecision { verdict, tier }
    }
}

/// Is the image of `w` in the mapping class group of the n-punctured sphere
/// trivial? Tiers, cheapest first: permutation, degree modulo the
/// abelianization, a short rewrite search over the presentation, and the
/// induced automorphism of the sphere group (inner exactly when the mapping
/// class is trivial). `budget` bounds rewrite nodes plus letters processed
/// by the automorphism tier.
pub fn mcg_image_trivial(w: &BraidWord, budget: usize) -> McgDecision {
    let mut budget = budget;
    mcg_trivial_with(w.letters(), w.strands(), &mut budget, true)
}

pub(crate) fn mcg_trivial_with(
    letters: &[i32],
    strands: usize,
    budget: &mut usize,
    rewrite: bool,
) -> McgDecision {
    let word = BraidWord {
        strands,
        ambient: super::Ambient::Spherical,
        letters: letters.to_vec(),
    };
    if !word.permutation().is_identity() {
        return McgDecision::new(McgVerdict::Nontrivial, McgTier::Permutation);
    }
    let n = strands as i64;
    let abelian_order = (n - 1) * n.gcd(&2);
    let degree: i64 = letters.iter().map(|&l| i64::from(l.signum())).sum();
    if degree.rem_euclid(abelian_order) != 0 {
        return McgDecision::new(McgVerdict::Nontrivial, McgTier::Degree);
    }
    if rewrite && letters.len() <= REWRITE_MAX_LEN {
        let mut nodes = (*budget).min(REWRITE_MAX_NODES);
        let start = nodes;
        let outcome = Presentation::mapping_class(strands).search(letters, None, &mut nodes);
        *budget -= start - nodes;
        if let RewriteOutcome::Empty { .. } = outcome {
            return McgDecision::new(McgVerdict::Trivial, McgTier::Rewrite);
        }
    }
    if *budget < letters.len() {
        return McgDecision::new(McgVerdict::Unknown, McgTier::Exhausted);
    }
    *budget -= letters.len();
    // Images stay short for the words met in practice; the cap only guards
    // against exponential growth on pseudo-Anosov input.
    let max_total = (*budget).clamp(1 << 12, 1 << 22);
    match action::decide(letters, strands, max_total) {
        ActionVerdict::Inner => McgDecision::new(McgVerdict::Trivial, McgTier::Automorphism),
        ActionVerdict::NotInner => McgDecision::new(McgVerdict::Nontrivial, McgTier::Automorphism),
        ActionVerdict::TooLarge => McgDecision::new(McgVerdict::Unknown, McgTier::Exhausted),
    }
}
