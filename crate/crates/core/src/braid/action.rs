//! Artin action of braids on the free group of the punctured plane, and the
//! innerness test that decides triviality in the mapping class group of the
//! punctured sphere.
//!
//! Free-group letters are signed indices: `j` is the loop x_j around the
//! j-th puncture and `-j` its inverse. Capping the plane to a sphere kills
//! the product x_1 ... x_n; a spherical braid is trivial as a mapping class
//! exactly when its induced automorphism of that quotient is inner.

/// Outcome of the action test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum ActionVerdict {
    Inner,
    NotInner,
    /// Intermediate images grew past the allowed total length.
    TooLarge,
}

fn push_reduced(out: &mut Vec<i32>, letter: i32) {
    if out.last() == Some(&-letter) {
        out.pop();
    } else {
        out.push(letter);
    }
}

fn push_word(out: &mut Vec<i32>, word: &[i32], inverse: bool) {
    if inverse {
        for &l in word.iter().rev() {
            push_reduced(out, -l);
        }
    } else {
        for &l in word {
            push_reduced(out, l);
        }
    }
}

/// Substitute the generator `s` into a reduced free-group word.
fn act_letter(image: &[i32], s: i32, out: &mut Vec<i32>) {
    out.clear();
    let i = s.abs();
    for &a in image {
        let j = a.abs();
        let inverse = a < 0;
        if s > 0 {
            if j == i {
                push_word(out, &[i, i + 1, -i], inverse);
            } else if j == i + 1 {
                push_word(out, &[i], inverse);
            } else {
                push_reduced(out, a);
            }
        } else if j == i {
            push_word(out, &[i + 1], inverse);
        } else if j == i + 1 {
            push_word(out, &[-(i + 1), i, i + 1], inverse);
        } else {
            push_reduced(out, a);
        }
    }
}

/// Images of x_1 .. x_n under the braid, or None if they outgrow `max_total`.
pub(crate) fn automorphism(
    word: &[i32],
    strands: usize,
    max_total: usize,
) -> Option<Vec<Vec<i32>>> {
    let mut images: Vec<Vec<i32>> = (1..=strands as i32).map(|j| vec![j]).collect();
    let mut scratch = Vec::new();
    for &s in word {
        let i = s.unsigned_abs() as usize;
        let mut total = 0;
        for image in images.iter_mut() {
            // Only images containing x_i or x_{i+1} change.
            if image.iter().any(|&a| {
                let j = a.unsigned_abs() as usize;
                j == i || j == i + 1
            }) {
                act_letter(image, s, &mut scratch);
                std::mem::swap(image, &mut scratch);
            }
            total += image.len();
        }
        if total > max_total {
            return None;
        }
    }
    Some(images)
}

/// Rewrite into the quotient where x_n = (x_1 ... x_{n-1})^-1.
fn to_sphere_group(word: &[i32], strands: usize) -> Vec<i32> {
    let n = strands as i32;
    let mut out = Vec::with_capacity(word.len());
    for &a in word {
        if a.abs() == n {
            if a > 0 {
                for j in (1..n).rev() {
                    push_reduced(&mut out, -j);
                }
            } else {
                for j in 1..n {
                    push_reduced(&mut out, j);
                }
            }
        } else {
            push_reduced(&mut out, a);
        }
    }
    out
}

fn conjugate_by_inverse(w: &[i32], image: &[i32]) -> Vec<i32> {
    // w^-1 * image * w
    let mut out = Vec::with_capacity(image.len() + 2 * w.len());
    push_word(&mut out, w, true);
    push_word(&mut out, image, false);
    push_word(&mut out, w, false);
    out
}

/// Decide whether the braid induces an inner automorphism of the sphere
/// group, i.e. whether its mapping class is trivial.
pub(crate) fn decide(word: &[i32], strands: usize, max_total: usize) -> ActionVerdict {
    let Some(images) = automorphism(word, strands, max_total) else {
        return ActionVerdict::TooLarge;
    };
    let g: Vec<Vec<i32>> = images[..strands - 1]
        .iter()
        .map(|im| to_sphere_group(im, strands))
        .collect();
    if strands == 2 {
        // The quotient is infinite cyclic, so inner means identity.
        return if g[0] == [1] {
            ActionVerdict::Inner
        } else {
            ActionVerdict::NotInner
        };
    }
    // The quotient is free on x_1 .. x_{n-1}. The image of x_1 must be
    // u x_1 u^-1; strip the conjugating shell to recover u.
    let mut core: &[i32] = &g[0];
    let mut shell = Vec::new();
    while core.len() >= 2 && core[0] == -core[core.len() - 1] {
        shell.push(core[0]);
        core = &core[1..core.len() - 1];
    }
    if core != [1] {
        return ActionVerdict::NotInner;
    }
    // The conjugator is u x_1^k; the image of x_2 fixes k.
    let z = conjugate_by_inverse(&shell, &g[1]);
    let k = z.iter().take_while(|&&a| a.abs() == 1).count();
    let power: i64 = z[..k].iter().map(|&a| i64::from(a.signum())).sum();
    let rest = &z[k..];
    if rest.first() != Some(&2) {
        return ActionVerdict::NotInner;
    }
    let tail = &rest[1..];
    if tail.len() != power.unsigned_abs() as usize
        || tail.iter().any(|&a| i64::from(a) != -power.signum())
    {
        return ActionVerdict::NotInner;
    }
    let mut conj = shell;
    let step = if power > 0 { 1 } else { -1 };
    for _ in 0..power.unsigned_abs() {
        push_reduced(&mut conj, step);
    }
    for (idx, image) in g.iter().enumerate().skip(2) {
        let expected = [idx as i32 + 1];
        if conjugate_by_inverse(&conj, image) != expected {
            return ActionVerdict::NotInner;
        }
    }
    ActionVerdict::Inner
}
