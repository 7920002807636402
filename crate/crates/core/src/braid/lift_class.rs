//! Deciding whether a spherical braid with trivial mapping class is the
//! identity or the full twist, the two elements of the central kernel.
//!
//! The decision is sound but not complete. It applies four rules:
//! centrality of the full twist (a literal full twist may be deleted
//! anywhere), its order two, invariance under conjugation, and the square
//! rule (if u has trivial mapping class then u^2 is the identity, as both
//! kernel elements square to 1). Words are split at factor boundaries into
//! pieces with trivial mapping class, whose classes add mod 2. A bounded
//! rewrite search over the spherical braid presentation is the fallback.

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::mcg::{mcg_trivial_with, McgVerdict};
use super::rewrite::{cyclic_reduce, full_twist_letters, Presentation, RewriteOutcome};
use super::{BraidError, BraidWord, DEFAULT_BUDGET};

/// Words without factor boundaries up to this length are split at every
/// position.
const DENSE_SPLIT_MAX_LEN: usize = 24;
/// Longest word handed to the spherical rewrite search.
const DEEP_REWRITE_MAX_LEN: usize = 48;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftClass {
    Trivial,
    FullTwist,
    Undecided,
}

/// Rules used along the way to a decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftRule {
    Empty,
    LiteralFullTwist,
    Centrality,
    Conjugation,
    Square,
    Split,
    Rewrite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftDecision {
    pub class: LiftClass,
    pub rules: BTreeSet<LiftRule>,
    /// Budget units consumed.
    pub states: usize,
}

/// Search configuration. `schedule_seed` shuffles the order in which split
/// candidates are tried; the verdict never depends on it except through
/// budget exhaustion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiftSearch {
    pub budget: usize,
    pub schedule_seed: Option<u64>,
}

impl Default for LiftSearch {
    fn default() -> Self {
        LiftSearch {
            budget: DEFAULT_BUDGET,
            schedule_seed: None,
        }
    }
}

/// A braid word with marked factor boundaries (positions in the word).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapedWord {
    pub word: BraidWord,
    cuts: Vec<usize>,
}

impl ShapedWord {
    pub fn new(word: BraidWord) -> Self {
        ShapedWord {
            word,
            cuts: Vec::new(),
        }
    }

    /// Boundaries beyond the word length are clamped.
    pub fn with_cuts(word: BraidWord, mut cuts: Vec<usize>) -> Self {
        let len = word.len();
        for c in &mut cuts {
            *c = (*c).min(len);
        }
        ShapedWord { word, cuts }
    }

    pub fn cuts(&self) -> &[usize] {
        &self.cuts
    }

    /// Append a factor with cancellation at the seam and mark its end.
    pub fn push_factor(&mut self, factor: &BraidWord) {
        self.word.append(factor);
        let len = self.word.len();
        for c in &mut self.cuts {
            *c = (*c).min(len);
        }
        self.cuts.push(len);
    }
}

type Verdict = Option<(u8, BTreeSet<LiftRule>)>;

struct Engine {
    strands: usize,
    budget: usize,
    rng: Option<ChaCha8Rng>,
    twist: Vec<i32>,
    twist_inv: Vec<i32>,
    spherical: Option<Presentation>,
    memo: HashMap<(Vec<i32>, Vec<usize>, bool), Verdict>,
}

/// Classify a global braid monodromy word.
pub fn lift_class(shaped: &ShapedWord, search: &LiftSearch) -> Result<LiftDecision, BraidError> {
    let strands = shaped.word.strands();
    let letters = shaped.word.letters();
    let mut budget = search.budget;
    let pre = mcg_trivial_with(letters, strands, &mut budget, true);
    match pre.verdict {
        McgVerdict::Nontrivial => return Err(BraidError::NotMcgTrivial),
        McgVerdict::Unknown => {
            return Ok(LiftDecision {
                class: LiftClass::Undecided,
                rules: BTreeSet::new(),
                states: search.budget - budget,
            })
        }
        McgVerdict::Trivial => {}
    }
    if strands == 2 {
        // The full twist s_1^2 is the rim relator here, so the kernel is trivial.
        return Ok(LiftDecision {
            class: LiftClass::Trivial,
            rules: BTreeSet::from([LiftRule::Rewrite]),
            states: search.budget - budget,
        });
    }
    let twist = full_twist_letters(strands);
    let mut engine = Engine {
        strands,
        budget,
        rng: search.schedule_seed.map(ChaCha8Rng::seed_from_u64),
        twist_inv: twist.iter().rev().map(|&l| -l).collect(),
        twist,
        spherical: None,
        memo: HashMap::new(),
    };
    let mut cuts = shaped.cuts.clone();
    cuts.push(0);
    let verdict = match engine.classify(letters, &cuts, false) {
        Some(v) => Some(v),
        None => engine.classify(letters, &cuts, true),
    };
    let states = search.budget - engine.budget;
    Ok(match verdict {
        Some((parity, rules)) => LiftDecision {
            class: if parity == 0 {
                LiftClass::Trivial
            } else {
                LiftClass::FullTwist
            },
            rules,
            states,
        },
        None => LiftDecision {
            class: LiftClass::Undecided,
            rules: BTreeSet::new(),
            states,
        },
    })
}

/// Free reduction that carries boundary positions along. A boundary moves
/// down when later letters cancel into the prefix it delimits.
fn reduce_tracked(word: &[i32], cuts: &[usize]) -> (Vec<i32>, Vec<usize>) {
    let mut stack: Vec<i32> = Vec::with_capacity(word.len());
    let mut heights = Vec::with_capacity(word.len() + 1);
    heights.push(0);
    for &l in word {
        if stack.last() == Some(&-l) {
            stack.pop();
        } else {
            stack.push(l);
        }
        heights.push(stack.len());
    }
    for i in (0..word.len()).rev() {
        heights[i] = heights[i].min(heights[i + 1]);
    }
    let mapped = cuts.iter().map(|&c| heights[c.min(word.len())]).collect();
    (stack, mapped)
}

fn least_rotation(w: &[i32]) -> usize {
    let n = w.len();
    let mut best = 0;
    for r in 1..n {
        let better = (0..n)
            .map(|i| (w[(r + i) % n], w[(best + i) % n]))
            .find(|(a, b)| a != b)
            .is_some_and(|(a, b)| a < b);
        if better {
            best = r;
        }
    }
    best
}

fn rotate(w: &[i32], r: usize) -> Vec<i32> {
    w[r..].iter().chain(&w[..r]).copied().collect()
}

fn is_rotation_of(w: &[i32], target: &[i32]) -> bool {
    let n = w.len();
    n == target.len()
        && n > 0
        && (0..n).any(|r| w[r..] == target[..n - r] && w[..r] == target[n - r..])
}

/// The cyclic arc of `len` letters starting at `start`, with the boundaries
/// strictly inside it re-based to the arc. Position 0 is always a boundary.
fn arc(w: &[i32], cuts: &[usize], start: usize, len: usize) -> (Vec<i32>, Vec<usize>) {
    let n = w.len();
    let letters = (0..len).map(|i| w[(start + i) % n]).collect();
    let mut inner: Vec<usize> = cuts
        .iter()
        .map(|&c| (c + n - start) % n)
        .filter(|&o| o > 0 && o < len)
        .collect();
    inner.push(0);
    inner.sort_unstable();
    inner.dedup();
    (letters, inner)
}

fn divisors(k: usize) -> Vec<usize> {
    (1..=k).filter(|d| k.is_multiple_of(*d)).collect()
}

impl Engine {
    fn spend(&mut self, units: usize) -> bool {
        if self.budget < units {
            self.budget = 0;
            return false;
        }
        self.budget -= units;
        true
    }

    fn mcg_trivial(&mut self, letters: &[i32]) -> bool {
        mcg_trivial_with(letters, self.strands, &mut self.budget, false).verdict
            == McgVerdict::Trivial
    }

    fn classify(&mut self, word: &[i32], cuts: &[usize], deep: bool) -> Verdict {
        let (reduced, cuts) = reduce_tracked(word, cuts);
        let (core, stripped) = cyclic_reduce(&reduced);
        let len = core.len();
        let mut rules = BTreeSet::new();
        if len == 0 {
            rules.insert(LiftRule::Empty);
            return Some((0, rules));
        }
        if stripped > 0 {
            rules.insert(LiftRule::Conjugation);
        }
        if !self.spend(1) {
            return None;
        }
        if is_rotation_of(&core, &self.twist) || is_rotation_of(&core, &self.twist_inv) {
            rules.insert(LiftRule::LiteralFullTwist);
            return Some((1, rules));
        }

        let r = least_rotation(&core);
        let canon = rotate(&core, r);
        let mut canon_cuts: Vec<usize> = cuts
            .iter()
            .map(|&c| (c.saturating_sub(stripped).min(len) + len - r) % len)
            .chain(std::iter::once(0))
            .collect();
        canon_cuts.sort_unstable();
        canon_cuts.dedup();

        let key = (canon.clone(), canon_cuts.clone(), deep);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone().map(|(p, mut inner)| {
                inner.extend(rules);
                (p, inner)
            });
        }
        let verdict = self.classify_canonical(&canon, &canon_cuts, deep);
        self.memo.insert(key, verdict.clone());
        verdict.map(|(p, mut inner)| {
            inner.extend(rules);
            (p, inner)
        })
    }

    fn classify_canonical(&mut self, w: &[i32], cuts: &[usize], deep: bool) -> Verdict {
        let len = w.len();

        // Powers: w = u^k. If u^a has trivial mapping class for a proper
        // divisor a of k, then w = (u^a)^(k/a).
        for p in divisors(len).into_iter().filter(|&p| p < len) {
            if (p..len).any(|i| w[i] != w[i - p]) {
                continue;
            }
            let k = len / p;
            for a in divisors(k).into_iter().filter(|&a| a < k) {
                let block: Vec<i32> = w[..a * p].to_vec();
                if !self.mcg_trivial(&block) {
                    continue;
                }
                let b = k / a;
                if b.is_multiple_of(2) {
                    return Some((0, BTreeSet::from([LiftRule::Square])));
                }
                if let Some((parity, mut rules)) = self.classify(&block, &[0], deep) {
                    rules.insert(LiftRule::Square);
                    return Some((parity, rules));
                }
                break;
            }
            break;
        }

        // A literal full twist is central: delete it and flip the class.
        let t = self.twist.len();
        if t < len {
            for start in 0..len {
                let hit = [&self.twist, &self.twist_inv]
                    .iter()
                    .any(|lit| (0..t).all(|i| w[(start + i) % len] == lit[i]));
                if !hit {
                    continue;
                }
                let (rest, rest_cuts) = arc(w, cuts, (start + t) % len, len - t);
                if let Some((parity, mut rules)) = self.classify(&rest, &rest_cuts, deep) {
                    rules.insert(LiftRule::Centrality);
                    return Some((parity ^ 1, rules));
                }
                break;
            }
        }

        // Split the cyclic word into two arcs with trivial mapping class.
        let positions: Vec<usize> = if cuts.len() > 1 {
            cuts.to_vec()
        } else if len <= DENSE_SPLIT_MAX_LEN {
            (0..len).collect()
        } else {
            Vec::new()
        };
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for (x, &i) in positions.iter().enumerate() {
            for &j in &positions[x + 1..] {
                pairs.push((i, j));
            }
        }
        if let Some(rng) = self.rng.as_mut() {
            pairs.shuffle(rng);
        }
        for (i, j) in pairs {
            if self.budget == 0 {
                return None;
            }
            let (first, first_cuts) = arc(w, cuts, i, j - i);
            if !self.mcg_trivial(&first) {
                continue;
            }
            let Some((p1, r1)) = self.classify(&first, &first_cuts, deep) else {
                continue;
            };
            let (second, second_cuts) = arc(w, cuts, j, len - (j - i));
            let Some((p2, r2)) = self.classify(&second, &second_cuts, deep) else {
                continue;
            };
            let mut rules: BTreeSet<LiftRule> = r1.union(&r2).copied().collect();
            rules.insert(LiftRule::Split);
            return Some((p1 ^ p2, rules));
        }

        if deep && len <= DEEP_REWRITE_MAX_LEN {
            let strands = self.strands;
            let presentation = self
                .spherical
                .take()
                .unwrap_or_else(|| Presentation::spherical(strands));
            // Words shorter than the full twist may equal it, which no
            // length-non-increasing rewrite can show; appending an inverse
            // twist gives the search room to cancel against it.
            let padded: Vec<i32> = w.iter().chain(&self.twist_inv).copied().collect();
            let mut verdict = None;
            for (start, offset) in [(w.to_vec(), 0u8), (padded, 1)] {
                let outcome = presentation.search(&start, Some(&self.twist), &mut self.budget);
                if let RewriteOutcome::Empty { central_parity } = outcome {
                    verdict = Some((central_parity ^ offset, BTreeSet::from([LiftRule::Rewrite])));
                    break;
                }
            }
            self.spherical = Some(presentation);
            if verdict.is_some() {
                return verdict;
            }
        }
        None
    }
}
