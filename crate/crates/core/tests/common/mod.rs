//! Independent oracles shared by the integration tests and the acceptance
//! harness.

#![allow(dead_code)]

use rand::Rng;

/// Relators of the mapping class group of the n-punctured sphere: braid and
/// commutation relations, the rim word and (s_1 ... s_{n-1})^n.
pub fn sphere_mcg_relators(n: usize) -> Vec<Vec<i8>> {
    let m = n as i8 - 1;
    let mut rels = Vec::new();
    for i in 1..m {
        rels.push(vec![i, i + 1, i, -(i + 1), -i, -(i + 1)]);
    }
    for i in 1..=m {
        for j in i + 2..=m {
            rels.push(vec![i, j, -i, -j]);
        }
    }
    let mut rim: Vec<i8> = (1..=m).collect();
    rim.extend((1..=m).rev());
    rels.push(rim);
    rels.push((0..n).flat_map(|_| 1..=m).collect());
    rels
}

const NONE: u32 = u32::MAX;

/// Breadth-first coset enumeration (HLT) over the trivial subgroup of the
/// mapping class group of the n-punctured sphere. Every relator is closed
/// at every coset within `depth` of the identity; a word is proven trivial
/// when it traces from the identity coset back to itself. Sound for any
/// bounds, and complete once the table closes.
pub struct CosetOracle {
    cols: usize,
    table: Vec<Vec<u32>>,
    parent: Vec<u32>,
    depth: Vec<u32>,
    queue: Vec<u32>,
    max_cosets: usize,
}

fn col(letter: i32) -> usize {
    let g = letter.unsigned_abs() as usize - 1;
    2 * g + usize::from(letter < 0)
}

impl CosetOracle {
    pub fn new(n: usize, depth: u32, max_cosets: usize) -> Self {
        let cols = 2 * (n - 1);
        let mut e = CosetOracle {
            cols,
            table: vec![vec![NONE; cols]],
            parent: vec![0],
            depth: vec![0],
            queue: Vec::new(),
            max_cosets,
        };
        let relators: Vec<Vec<usize>> = sphere_mcg_relators(n)
            .iter()
            .map(|r| r.iter().map(|&x| col(i32::from(x))).collect())
            .collect();
        // Depths only shrink as edges appear, so a coset may fall inside the
        // bound after its turn; sweep until nothing new qualifies.
        let mut done: Vec<bool> = Vec::new();
        loop {
            let mut progressed = false;
            let mut c = 0;
            while c < e.table.len() {
                done.resize(e.table.len(), false);
                let live = e.rep(c as u32) == c as u32;
                if live && !done[c] && e.depth[c] <= depth {
                    done[c] = true;
                    progressed = true;
                    for r in &relators {
                        if e.rep(c as u32) != c as u32 {
                            break;
                        }
                        e.scan_and_fill(c as u32, r);
                    }
                    for x in 0..cols {
                        if e.rep(c as u32) == c as u32
                            && e.table[c][x] == NONE
                            && e.depth[c] < depth
                        {
                            e.define(c as u32, x);
                        }
                    }
                }
                c += 1;
            }
            if !progressed {
                return e;
            }
        }
    }

    /// Lower depths along edges out of `start` until they are distances in
    /// the current table.
    fn relax_from(&mut self, start: u32) {
        let mut stack = vec![start];
        while let Some(a) = stack.pop() {
            let da = self.depth[a as usize];
            for x in 0..self.cols {
                let b = self.table[a as usize][x];
                if b != NONE && self.depth[b as usize] > da + 1 {
                    self.depth[b as usize] = da + 1;
                    stack.push(b);
                }
            }
        }
    }

    fn link(&mut self, a: u32, x: usize, b: u32) {
        self.table[a as usize][x] = b;
        self.table[b as usize][x ^ 1] = a;
        self.relax_from(a);
        self.relax_from(b);
    }

    fn define(&mut self, c: u32, x: usize) -> bool {
        if self.table.len() >= self.max_cosets {
            return false;
        }
        let d = self.table.len() as u32;
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(d);
        self.depth.push(self.depth[c as usize] + 1);
        self.table[c as usize][x] = d;
        self.table[d as usize][x ^ 1] = c;
        true
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut k = c;
        while self.parent[k as usize] != r {
            let next = self.parent[k as usize];
            self.parent[k as usize] = r;
            k = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi as usize] = lo;
            self.depth[lo as usize] = self.depth[lo as usize].min(self.depth[hi as usize]);
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let d = self.table[g as usize][x];
                if d == NONE {
                    continue;
                }
                if self.table[d as usize][x ^ 1] == g {
                    self.table[d as usize][x ^ 1] = NONE;
                }
                let (mu, nu) = (self.rep(g), self.rep(d));
                let mx = self.table[mu as usize][x];
                let nx = self.table[nu as usize][x ^ 1];
                if mx != NONE {
                    self.merge(nu, mx);
                } else if nx != NONE {
                    self.merge(mu, nx);
                } else {
                    self.table[mu as usize][x] = nu;
                    self.table[nu as usize][x ^ 1] = mu;
                }
            }
        }
        for k in 0..self.queue.len() {
            let r = self.rep(self.queue[k]);
            self.relax_from(r);
        }
    }

    fn scan_and_fill(&mut self, c: u32, r: &[usize]) {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, r.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.table[f as usize][r[i]] != NONE {
                f = self.table[f as usize][r[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j >= i as isize && self.table[b as usize][r[j as usize] ^ 1] != NONE {
                b = self.table[b as usize][r[j as usize] ^ 1];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return;
            }
            if j == i as isize {
                self.link(f, r[i], b);
                return;
            }
            if !self.define(f, r[i]) {
                return;
            }
        }
    }

    pub fn cosets(&self) -> usize {
        self.table.len()
    }

    /// True when the enumeration proves `word` trivial.
    pub fn proves_trivial(&mut self, word: &[i32]) -> bool {
        let mut c = self.rep(0);
        for &l in word {
            let next = self.table[c as usize][col(l)];
            if next == NONE {
                return false;
            }
            c = self.rep(next);
        }
        c == self.rep(0)
    }
}

pub fn random_word(rng: &mut impl Rng, n: usize, max_len: usize) -> Vec<i32> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let g = rng.gen_range(1..n as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect()
}

/// Permutation of a word, computed directly.
pub fn word_permutation(word: &[i32], n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for &l in word {
        let i = l.unsigned_abs() as usize - 1;
        p.swap(i, i + 1);
    }
    p
}

fn det_i128(m: &[Vec<i128>]) -> i128 {
    let k = m.len();
    if k == 0 {
        return 1;
    }
    if k == 1 {
        return m[0][0];
    }
    (0..k)
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det_i128(&minor)
        })
        .sum()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1}, where
/// D_k is the gcd of all k x k minors.
pub fn invariant_factors_by_minors(m: &[Vec<i64>]) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut divisors = vec![1i128];
    for k in 1..=rows.min(cols) {
        let mut g = 0;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| i128::from(m[r][c])).collect())
                    .collect();
                g = gcd(g, det_i128(&sub));
            }
        }
        divisors.push(g);
    }
    (1..divisors.len())
        .map(|k| {
            if divisors[k] == 0 {
                0
            } else {
                divisors[k] / divisors[k - 1]
            }
        })
        .collect()
}

pub fn random_matrix(
    rng: &mut impl Rng,
    max_rows: usize,
    max_cols: usize,
    bound: i64,
) -> Vec<Vec<i64>> {
    let rows = rng.gen_range(1..=max_rows);
    let cols = rng.gen_range(1..=max_cols);
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect()
}

/// Every freely reduced word of length at most `max_len` on n strands.
pub fn reduced_words(n: usize, max_len: usize) -> Vec<Vec<i32>> {
    let gens: Vec<i32> = (1..n as i32).flat_map(|g| [g, -g]).collect();
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<i32>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &g in &gens {
                if w.last() == Some(&-g) {
                    continue;
                }
                let mut v = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Symplectic pairing written out for the (a1, b1, ..., ag, bg) basis.
pub fn pairing(u: &[i64], v: &[i64]) -> i64 {
    u.chunks(2)
        .zip(v.chunks(2))
        .map(|(x, y)| x[0] * y[1] - x[1] * y[0])
        .sum()
}

pub fn random_primitive(rng: &mut impl Rng, len: usize, bound: i64) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..len).map(|_| rng.gen_range(-bound..=bound)).collect();
        let g = v.iter().fold(0i128, |acc, &x| gcd(acc, i128::from(x)));
        if g == 1 {
            return v;
        }
    }
}

/// Reducible letters counted straight from the curve kinds.
pub fn separating_letter_count(spec: &lefschetz_core::model::FibrationSpec) -> usize {
    spec.letters()
        .iter()
        .filter(|l| spec.curve(&l.curve).is_some_and(|c| c.is_separating()))
        .count()
}

/// A random spec that passes validation: a known relation, globally
/// conjugated, rotated, with separating letters spliced in (they act
/// trivially on homology) and random metadata.
pub fn random_valid_spec(rng: &mut impl Rng) -> lefschetz_core::model::FibrationSpec {
    use lefschetz_core::constructions::{matsumoto_fibration, CurveTable};
    use lefschetz_core::model::{CurveClass, FibrationSpec, Genus, TwistLetter};
    use std::collections::BTreeMap;

    let (genus, mut curves, mut letters) = if rng.gen_bool(0.3) {
        let g = Genus(1);
        let curves = vec![
            CurveClass::nonseparating("a", g, vec![1, 0]).unwrap(),
            CurveClass::nonseparating("b", g, vec![0, 1]).unwrap(),
        ];
        let reps = if rng.gen_bool(0.5) { 6 } else { 12 };
        let letters: Vec<TwistLetter> = ["a", "b"]
            .iter()
            .cycle()
            .take(reps * 2)
            .map(|id| TwistLetter::plain(*id))
            .collect();
        (g, curves, letters)
    } else {
        let f0 = matsumoto_fibration(&CurveTable::shipped());
        (f0.genus(), f0.curves().to_vec(), f0.letters().to_vec())
    };
    if genus.0 >= 2 && rng.gen_bool(0.5) {
        curves.push(CurveClass::separating("s", genus, 1).unwrap());
        for _ in 0..rng.gen_range(1..=3) {
            let at = rng.gen_range(0..=letters.len());
            letters.insert(at, TwistLetter::plain("s"));
        }
    }
    let nonsep: Vec<String> = curves
        .iter()
        .filter(|c| !c.is_separating())
        .map(|c| c.id().to_owned())
        .collect();
    for _ in 0..rng.gen_range(0..=3) {
        let id = &nonsep[rng.gen_range(0..nonsep.len())];
        let p = rng.gen_range(-3..=3);
        letters = letters
            .into_iter()
            .map(|l| l.conjugated_by(id, p))
            .collect();
    }
    let r = rng.gen_range(0..letters.len().max(1));
    letters.rotate_left(r);
    let blocks = rng.gen_bool(0.5).then(|| {
        (0..rng.gen_range(0..4))
            .map(|_| rng.gen_range(-10..=2))
            .collect()
    });
    let strands = genus.strands() as i32;
    let mut lifts: BTreeMap<String, Vec<i32>> = BTreeMap::new();
    for c in &curves {
        if rng.gen_bool(0.5) {
            let w = (0..rng.gen_range(0..5))
                .map(|_| rng.gen_range(1..strands) * if rng.gen_bool(0.5) { 1 } else { -1 })
                .collect();
            lifts.insert(c.id().to_owned(), w);
        }
    }
    FibrationSpec::new(genus, curves, letters, rng.gen_bool(0.7))
        .unwrap()
        .with_block_signatures(blocks)
        .with_lifts(lifts)
        .unwrap()
}
