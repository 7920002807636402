//! Bounded rewrite search in the spherical braid group and in the mapping
//! class group of the punctured sphere, over their finite presentations.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

/// Rewrite rules bucketed by the first letter of their left side.
type Rules = HashMap<i32, Vec<(Vec<i32>, Vec<i32>)>>;

/// A finite presentation on the generators 1..n-1 together with the
/// substitution rules derived from it.
#[derive(Clone, Debug)]
pub struct Presentation {
    strands: usize,
    relators: Vec<Vec<i32>>,
    /// Rules p -> q with |q| <= |p|, bucketed by the first letter of p.
    rules: Rules,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteOutcome {
    /// Reached the empty word; `central_parity` counts deleted full twists
    /// mod 2 (always 0 when the full twist is a relator).
    Empty { central_parity: u8 },
    /// The search space below the start length was exhausted.
    Exhausted,
    /// The node budget ran out first.
    BudgetExhausted,
}

fn inverse(w: &[i32]) -> Vec<i32> {
    w.iter().rev().map(|&l| -l).collect()
}

pub(crate) fn free_reduce(w: &[i32]) -> Vec<i32> {
    let mut out = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free and cyclic reduction. Returns the cyclically reduced core and the
/// number of letters stripped from each end of the freely reduced word.
pub(crate) fn cyclic_reduce(w: &[i32]) -> (Vec<i32>, usize) {
    let w = free_reduce(w);
    let mut lo = 0;
    let mut hi = w.len();
    while hi - lo >= 2 && w[lo] == -w[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    (w[lo..hi].to_vec(), lo)
}

/// (1 2 ... n-1)^n as a letter list.
pub(crate) fn full_twist_letters(strands: usize) -> Vec<i32> {
    (0..strands).flat_map(|_| 1..strands as i32).collect()
}

impl Presentation {
    fn base_relators(strands: usize) -> Vec<Vec<i32>> {
        let n = strands as i32;
        let mut relators = Vec::new();
        for i in 1..n - 1 {
            relators.push(vec![i, i + 1, i, -(i + 1), -i, -(i + 1)]);
        }
        for i in 1..n {
            for j in i + 2..n {
                relators.push(vec![i, j, -i, -j]);
            }
        }
        relators.push((1..n).chain((1..n).rev()).collect());
        relators
    }

    /// Braid, commutation and rim relations.
    pub fn spherical(strands: usize) -> Self {
        Self::from_relators(strands, Self::base_relators(strands))
    }

    /// The spherical relations plus the full twist.
    pub fn mapping_class(strands: usize) -> Self {
        let mut relators = Self::base_relators(strands);
        relators.push(full_twist_letters(strands));
        Self::from_relators(strands, relators)
    }

    fn from_relators(strands: usize, relators: Vec<Vec<i32>>) -> Self {
        let mut seen = HashSet::new();
        let mut rules: Rules = HashMap::new();
        for r in &relators {
            for base in [r.clone(), inverse(r)] {
                for k in 0..base.len() {
                    let rotated: Vec<i32> = base[k..].iter().chain(&base[..k]).copied().collect();
                    // rotated = p q = 1, so p -> q^-1.
                    for split in rotated.len().div_ceil(2)..=rotated.len() {
                        let p = rotated[..split].to_vec();
                        let q = inverse(&rotated[split..]);
                        if seen.insert((p.clone(), q.clone())) {
                            rules.entry(p[0]).or_default().push((p, q));
                        }
                    }
                }
            }
        }
        for bucket in rules.values_mut() {
            bucket.sort();
        }
        Presentation {
            strands,
            relators,
            rules,
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn relators(&self) -> &[Vec<i32>] {
        &self.relators
    }

    /// Best-first search in shortlex order over words no longer than the
    /// start, using length-non-increasing substitutions and cyclic rotation.
    /// When `central` is given, deleting that subword is also allowed and
    /// flips a parity bit.
    pub(crate) fn search(
        &self,
        start: &[i32],
        central: Option<&[i32]>,
        budget: &mut usize,
    ) -> RewriteOutcome {
        let (start, _) = cyclic_reduce(start);
        if start.is_empty() {
            return RewriteOutcome::Empty { central_parity: 0 };
        }
        let central_inv = central.map(inverse);
        let mut heap = BinaryHeap::new();
        let mut seen: HashSet<(Vec<i32>, u8)> = HashSet::new();
        seen.insert((start.clone(), 0));
        heap.push(Reverse((start.len(), start, 0u8)));

        while let Some(Reverse((_, word, parity))) = heap.pop() {
            let mut next: Vec<(Vec<i32>, u8)> = Vec::new();
            for pos in 0..word.len() {
                if let Some(bucket) = self.rules.get(&word[pos]) {
                    for (p, q) in bucket {
                        if word[pos..].starts_with(p) {
                            let mut w = word[..pos].to_vec();
                            w.extend_from_slice(q);
                            w.extend_from_slice(&word[pos + p.len()..]);
                            next.push((w, parity));
                        }
                    }
                }
                for c in central.iter().copied().chain(central_inv.as_deref()) {
                    if word[pos..].starts_with(c) {
                        let mut w = word[..pos].to_vec();
                        w.extend_from_slice(&word[pos + c.len()..]);
                        next.push((w, parity ^ 1));
                    }
                }
            }
            if word.len() > 1 {
                let mut left = word[1..].to_vec();
                left.push(word[0]);
                next.push((left, parity));
                let mut right = vec![word[word.len() - 1]];
                right.extend_from_slice(&word[..word.len() - 1]);
                next.push((right, parity));
            }
            for (w, par) in next {
                let (w, _) = cyclic_reduce(&w);
                if w.is_empty() {
                    return RewriteOutcome::Empty {
                        central_parity: par,
                    };
                }
                if seen.contains(&(w.clone(), par)) {
                    continue;
                }
                // Every stored node is charged, so memory stays within budget.
                if *budget == 0 {
                    return RewriteOutcome::BudgetExhausted;
                }
                *budget -= 1;
                seen.insert((w.clone(), par));
                heap.push(Reverse((w.len(), w, par)));
            }
        }
        RewriteOutcome::Exhausted
    }
}
