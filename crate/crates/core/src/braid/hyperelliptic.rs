//! The action on H_1 of the genus-g surface induced by a braid on 2g+2
//! strands through the hyperelliptic double cover: the i-th generator goes
//! to the twist along the i-th curve of the standard chain.

use crate::homology::{transvection_matrix, HomologyError, IntegerMatrix};
use crate::model::Genus;

use super::BraidWord;

/// Class of the i-th chain curve, 1 <= i <= 2g+1, in the basis
/// a1, b1, ..., ag, bg: a_1, b_1, a_2 - a_1, b_2, ..., b_g, a_g.
pub fn chain_curve(genus: Genus, i: usize) -> Vec<i64> {
    let g = genus.0 as usize;
    assert!((1..=2 * g + 1).contains(&i), "chain index out of range");
    let mut v = vec![0; 2 * g];
    if i == 2 * g + 1 {
        v[2 * (g - 1)] = 1;
    } else if i.is_multiple_of(2) {
        v[2 * (i / 2 - 1) + 1] = 1;
    } else if i == 1 {
        v[0] = 1;
    } else {
        let k = (i - 1) / 2;
        v[2 * k] = 1;
        v[2 * (k - 1)] = -1;
    }
    v
}

/// H_1 action of the braid, first letter acting first. Only defined up to
/// sign for spherical words, since the rim relation maps to the
/// hyperelliptic involution.
pub fn hyperelliptic_h1_action(
    w: &BraidWord,
    genus: Genus,
) -> Result<IntegerMatrix, HomologyError> {
    if w.strands() != genus.strands() {
        return Err(HomologyError::DimensionMismatch {
            expected: genus.strands(),
            found: w.strands(),
        });
    }
    let dim = genus.rank();
    let mut forward = Vec::with_capacity(2 * genus.0 as usize + 1);
    let mut backward = Vec::with_capacity(forward.capacity());
    for i in 1..=2 * genus.0 as usize + 1 {
        let c = chain_curve(genus, i);
        forward.push(transvection_matrix(&c, genus)?);
        backward.push(inverse_transvection(&c, genus)?);
    }
    let mut acc = IntegerMatrix::identity(dim);
    for (i, sign) in w.signed_letters() {
        let t = if sign > 0 {
            &forward[i - 1]
        } else {
            &backward[i - 1]
        };
        acc = t.mul(&acc)?;
    }
    Ok(acc)
}

fn inverse_transvection(c: &[i64], genus: Genus) -> Result<IntegerMatrix, HomologyError> {
    // T = I + N with N^2 = 0, so T^-1 = 2I - T.
    let t = transvection_matrix(c, genus)?;
    let id = IntegerMatrix::identity(genus.rank());
    let mut out = id.clone();
    for i in 0..genus.rank() {
        for j in 0..genus.rank() {
            out.set(i, j, id.get(i, j) * 2 - t.get(i, j));
        }
    }
    Ok(out)
}
