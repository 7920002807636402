//! Integer symplectic linear algebra on H_1 of the fiber and the first
//! homology of total spaces.

mod matrix;
mod smith;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{CurveClass, FibrationSpec, Genus, TwistLetter};

pub use matrix::IntegerMatrix;
pub use smith::{smith_normal_form, SmithForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("first homology is only computed for fibrations with a section")]
    NoSection,
    #[error("64-bit overflow: {context}")]
    Overflow { context: String },
}

fn overflow(context: &str) -> HomologyError {
    HomologyError::Overflow {
        context: context.to_owned(),
    }
}

fn check_len(v: &[i64], genus: Genus) -> Result<(), HomologyError> {
    if v.len() != genus.rank() {
        return Err(HomologyError::DimensionMismatch {
            expected: genus.rank(),
            found: v.len(),
        });
    }
    Ok(())
}

/// Intersection pairing in the basis a1, b1, ..., ag, bg with <a_i, b_i> = 1.
pub fn symplectic_pairing(u: &[i64], v: &[i64], genus: Genus) -> Result<i64, HomologyError> {
    check_len(u, genus)?;
    check_len(v, genus)?;
    let mut acc: i128 = 0;
    for i in 0..genus.0 as usize {
        let (a, b) = (2 * i, 2 * i + 1);
        acc += i128::from(u[a]) * i128::from(v[b]) - i128::from(u[b]) * i128::from(v[a]);
    }
    i64::try_from(acc).map_err(|_| overflow("symplectic pairing"))
}

/// Action of the n-th power of the twist along `c`: x + n<x,c>c.
pub fn transvect(c: &CurveClass, x: &[i64], n: i64) -> Result<Vec<i64>, HomologyError> {
    transvect_vector(c.vector(), x, n, c.genus())
}

fn transvect_vector(c: &[i64], x: &[i64], n: i64, genus: Genus) -> Result<Vec<i64>, HomologyError> {
    let p = symplectic_pairing(x, c, genus)?;
    let k = p.checked_mul(n).ok_or_else(|| overflow("transvection"))?;
    x.iter()
        .zip(c)
        .map(|(&xi, &ci)| {
            k.checked_mul(ci)
                .and_then(|t| xi.checked_add(t))
                .ok_or_else(|| overflow("transvection"))
        })
        .collect()
}

/// Homology class of the curve a letter twists along, with its conjugators
/// applied innermost first.
pub fn letter_class(spec: &FibrationSpec, letter: &TwistLetter) -> Result<Vec<i64>, HomologyError> {
    let mut v = spec.letter_curve(letter).vector().to_vec();
    for term in letter.conjugator.iter().rev() {
        let c = spec
            .curve(&term.curve)
            .expect("conjugator terms reference validated curve ids");
        v = transvect(c, &v, term.power).map_err(|e| match e {
            HomologyError::Overflow { .. } => {
                overflow(&format!("class of letter on `{}`", letter.curve))
            }
            other => other,
        })?;
    }
    Ok(v)
}

/// Matrix of x -> x + <x,c>c in the standard basis.
pub fn transvection_matrix(c: &[i64], genus: Genus) -> Result<IntegerMatrix, HomologyError> {
    check_len(c, genus)?;
    let dim = genus.rank();
    let mut m = IntegerMatrix::identity(dim);
    for j in 0..dim {
        // <e_j, c>
        let p = if j % 2 == 0 { c[j + 1] } else { -c[j - 1] };
        if p == 0 {
            continue;
        }
        for (i, &ci) in c.iter().enumerate() {
            let delta = BigInt::from(p) * BigInt::from(ci);
            let entry = m.get(i, j) + delta;
            m.set(i, j, entry);
        }
    }
    Ok(m)
}

/// Action on H_1 of the whole factorization. The first letter acts first, so
/// the result is M_k ... M_1.
pub fn factorization_h1_action(spec: &FibrationSpec) -> Result<IntegerMatrix, HomologyError> {
    let mut acc = IntegerMatrix::identity(spec.genus().rank());
    for letter in spec.letters() {
        let class = letter_class(spec, letter)?;
        if class.iter().all(|&x| x == 0) {
            continue;
        }
        let t = transvection_matrix(&class, spec.genus())?;
        acc = t.mul(&acc).expect("square matrices of equal size");
    }
    Ok(acc)
}

/// Finitely generated abelian group Z^rank + Z/t_1 + ... with t_1 | t_2 | ...
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    /// Cokernel of a relation matrix whose columns span the relations.
    pub fn cokernel(relations: &IntegerMatrix) -> Result<Self, HomologyError> {
        let smith = smith_normal_form(relations);
        let mut rank = relations.rows();
        let mut torsion = Vec::new();
        for d in &smith.invariant_factors {
            if d.is_zero() {
                continue;
            }
            rank -= 1;
            if !d.is_one() {
                torsion.push(d.to_u64().ok_or_else(|| overflow("torsion coefficient"))?);
            }
        }
        Ok(AbelianGroup { rank, torsion })
    }

    /// True when the group is Z + Z/n for the given n >= 1 (Z alone for n = 1).
    pub fn is_z_plus_cyclic(&self, n: u64) -> bool {
        self.rank == 1
            && match n {
                0 => false,
                1 => self.torsion.is_empty(),
                _ => self.torsion == [n],
            }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_owned()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Relation matrix with one column per letter class.
pub fn vanishing_cycle_matrix(spec: &FibrationSpec) -> Result<IntegerMatrix, HomologyError> {
    let columns = spec
        .letters()
        .iter()
        .map(|l| letter_class(spec, l))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntegerMatrix::from_columns(spec.genus().rank(), &columns))
}

/// H_1 of the total space: Z^{2g} modulo the vanishing-cycle classes. Needs a
/// section, which makes the fiber's fundamental group surject.
pub fn first_homology(spec: &FibrationSpec) -> Result<AbelianGroup, HomologyError> {
    if !spec.has_section() {
        return Err(HomologyError::NoSection);
    }
    AbelianGroup::cokernel(&vanishing_cycle_matrix(spec)?)
}
