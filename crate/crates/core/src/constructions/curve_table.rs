//! Homology data of the five genus-2 curves behind the Matsumoto fibration
//! and the twisted family: four vanishing cycles and the twisting curve.
//!
//! The shipped vectors come from the derivation search in this module. The
//! search accepts any assignment satisfying the homological constraints, so
//! tests check the constraints rather than the representative.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Deserialize;

use crate::braid::{
    distinguished_lift, hyperelliptic_h1_action, mcg_image_trivial, BraidWord, LiftData, McgVerdict,
};
use crate::homology::{
    symplectic_pairing, transvect, transvection_matrix, AbelianGroup, IntegerMatrix,
};
use crate::model::{CurveClass, CurveKind, Genus};

use super::ConstructionError;

const SHIPPED: &str = include_str!("curve_table.json");

pub const VANISHING_IDS: [&str; 4] = ["c1", "c2", "c3", "c4"];
pub const TWIST_ID: &str = "c";
const GENUS: Genus = Genus(2);

/// The vanishing cycles c1..c4 and the twisting curve c, with optional
/// conjugator braids positioning their lifts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveTable {
    vanishing: [CurveClass; 4],
    twist: CurveClass,
    lifts: BTreeMap<String, Vec<i32>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableDocument {
    genus: u32,
    curves: Vec<TableEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableEntry {
    id: String,
    kind: String,
    #[serde(default)]
    h: Option<u32>,
    vector: Vec<i64>,
    #[serde(default)]
    lift: Option<Vec<i32>>,
}

fn table_error(msg: impl Into<String>) -> ConstructionError {
    ConstructionError::CurveTable(msg.into())
}

impl CurveTable {
    pub fn new(
        vanishing: [CurveClass; 4],
        twist: CurveClass,
        lifts: BTreeMap<String, Vec<i32>>,
    ) -> Result<Self, ConstructionError> {
        for (curve, id) in vanishing.iter().zip(VANISHING_IDS) {
            if curve.id() != id || curve.genus() != GENUS {
                return Err(table_error(format!(
                    "expected genus-2 curve `{id}`, got `{}`",
                    curve.id()
                )));
            }
        }
        if twist.id() != TWIST_ID || twist.genus() != GENUS || twist.is_separating() {
            return Err(table_error(
                "twisting curve must be the non-separating genus-2 curve `c`",
            ));
        }
        let bound = GENUS.strands() as i32 - 1;
        for (id, word) in &lifts {
            if !VANISHING_IDS.contains(&id.as_str()) && id != TWIST_ID {
                return Err(table_error(format!("lift for unknown curve `{id}`")));
            }
            if word.iter().any(|&l| l == 0 || l.abs() > bound) {
                return Err(table_error(format!("lift of `{id}` leaves ±1..={bound}")));
            }
        }
        Ok(CurveTable {
            vanishing,
            twist,
            lifts,
        })
    }

    /// The table compiled into the crate.
    pub fn shipped() -> Self {
        Self::from_json(SHIPPED).expect("shipped curve table is valid")
    }

    pub fn from_json(text: &str) -> Result<Self, ConstructionError> {
        let doc: TableDocument =
            serde_json::from_str(text).map_err(|e| table_error(e.to_string()))?;
        if doc.genus != GENUS.0 {
            return Err(table_error(format!(
                "curve table genus must be 2, got {}",
                doc.genus
            )));
        }
        let mut by_id = BTreeMap::new();
        let mut lifts = BTreeMap::new();
        for entry in doc.curves {
            let curve = match (entry.kind.as_str(), entry.h) {
                ("nonsep", None) => CurveClass::nonseparating(&entry.id, GENUS, entry.vector)?,
                ("sep", Some(h)) if entry.vector.iter().all(|&x| x == 0) => {
                    CurveClass::separating(&entry.id, GENUS, h)?
                }
                _ => return Err(table_error(format!("bad kind for `{}`", entry.id))),
            };
            if let Some(lift) = entry.lift {
                lifts.insert(entry.id.clone(), lift);
            }
            if by_id.insert(entry.id.clone(), curve).is_some() {
                return Err(table_error(format!("duplicate curve `{}`", entry.id)));
            }
        }
        let mut take = |id: &str| {
            by_id
                .remove(id)
                .ok_or_else(|| table_error(format!("missing curve `{id}`")))
        };
        let vanishing = [take("c1")?, take("c2")?, take("c3")?, take("c4")?];
        let twist = take(TWIST_ID)?;
        if let Some(extra) = by_id.keys().next() {
            return Err(table_error(format!("unexpected curve `{extra}`")));
        }
        Self::new(vanishing, twist, lifts)
    }

    pub fn vanishing(&self) -> &[CurveClass; 4] {
        &self.vanishing
    }

    pub fn twist(&self) -> &CurveClass {
        &self.twist
    }

    pub fn lifts(&self) -> &BTreeMap<String, Vec<i32>> {
        &self.lifts
    }

    pub fn curves(&self) -> Vec<CurveClass> {
        self.vanishing
            .iter()
            .chain(std::iter::once(&self.twist))
            .cloned()
            .collect()
    }
}

/// Outcome of each homological constraint on a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstraintCheck {
    /// (T1 T2 T3 T4)^2 is the identity on H_1.
    pub squared_product_is_identity: bool,
    /// Z^4 modulo the span of c1..c4 is Z^2.
    pub vanishing_cokernel_is_z2: bool,
    /// With c twisted n times into the second copy, the cokernel is Z + Z/n
    /// for n = 1, 2, 3.
    pub twisted_cokernels: bool,
    /// Some c_i pairs nontrivially with c.
    pub twist_curve_pairs: bool,
}

impl ConstraintCheck {
    pub fn all(&self) -> bool {
        self.squared_product_is_identity
            && self.vanishing_cokernel_is_z2
            && self.twisted_cokernels
            && self.twist_curve_pairs
    }
}

fn product_matrix(classes: &[&[i64]]) -> IntegerMatrix {
    let mut acc = IntegerMatrix::identity(GENUS.rank());
    for c in classes {
        let t = transvection_matrix(c, GENUS).expect("genus-2 vectors");
        acc = t.mul(&acc).expect("square");
    }
    acc
}

fn cokernel_of(columns: &[Vec<i64>]) -> AbelianGroup {
    AbelianGroup::cokernel(&IntegerMatrix::from_columns(GENUS.rank(), columns))
        .expect("well-formed relation matrix")
}

fn twisted_cokernel_ok(vanishing: &[CurveClass; 4], twist: &CurveClass, n: u64) -> bool {
    let mut columns: Vec<Vec<i64>> = vanishing.iter().map(|c| c.vector().to_vec()).collect();
    for c in vanishing {
        match transvect(twist, c.vector(), n as i64) {
            Ok(v) => columns.push(v),
            Err(_) => return false,
        }
    }
    cokernel_of(&columns).is_z_plus_cyclic(n)
}

/// Check the four homological constraints.
pub fn verify_constraints(table: &CurveTable) -> ConstraintCheck {
    let v = &table.vanishing;
    let classes: Vec<&[i64]> = v.iter().map(CurveClass::vector).collect();
    let p = product_matrix(&classes);
    let squared_product_is_identity = p.mul(&p).expect("square").is_identity();
    let vanishing_cokernel_is_z2 =
        cokernel_of(&v.iter().map(|c| c.vector().to_vec()).collect::<Vec<_>>())
            == AbelianGroup::free(2);
    let twisted_cokernels = (1..=3).all(|n| twisted_cokernel_ok(v, &table.twist, n));
    let twist_curve_pairs = v
        .iter()
        .any(|c| symplectic_pairing(c.vector(), table.twist.vector(), GENUS).is_ok_and(|x| x != 0));
    ConstraintCheck {
        squared_product_is_identity,
        vanishing_cokernel_is_z2,
        twisted_cokernels,
        twist_curve_pairs,
    }
}

/// Whether the table's lift data is geometrically consistent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizabilityCheck {
    /// Curves whose distinguished lift acts on H_1 as plus or minus the
    /// twist along their class.
    pub consistent_lifts: Vec<String>,
    pub inconsistent_lifts: Vec<String>,
    /// Verdict on the product of the lifts of c1 c2 c3 c4 c1 c2 c3 c4 in the
    /// mapping class group of the punctured sphere.
    pub monodromy_mcg: McgVerdict,
}

impl RealizabilityCheck {
    pub fn holds(&self) -> bool {
        self.inconsistent_lifts.is_empty() && self.monodromy_mcg == McgVerdict::Trivial
    }
}

/// Does the lift of `curve` act on H_1 as the twist along its class, up to
/// the hyperelliptic involution?
pub fn lift_matches_class(
    curve: &CurveClass,
    conjugator: &BraidWord,
) -> Result<bool, ConstructionError> {
    let lift = distinguished_lift(curve, conjugator)?;
    let genus = curve.genus();
    let action = hyperelliptic_h1_action(&lift, genus)?;
    let twist = if curve.kind() == CurveKind::NonSeparating {
        transvection_matrix(curve.vector(), genus)?
    } else {
        IntegerMatrix::identity(genus.rank())
    };
    let mut negated = twist.clone();
    for r in 0..negated.rows() {
        for c in 0..negated.cols() {
            let x: BigInt = -negated.get(r, c).clone();
            negated.set(r, c, x);
        }
    }
    Ok(action == twist || action == negated)
}

pub fn verify_realizability(
    table: &CurveTable,
    budget: usize,
) -> Result<RealizabilityCheck, ConstructionError> {
    let data = LiftData::defaulting(table.lifts.clone());
    let mut consistent_lifts = Vec::new();
    let mut inconsistent_lifts = Vec::new();
    for curve in table.curves() {
        let w = data.conjugator(&curve)?;
        if lift_matches_class(&curve, &w)? {
            consistent_lifts.push(curve.id().to_owned());
        } else {
            inconsistent_lifts.push(curve.id().to_owned());
        }
    }
    let mut product = BraidWord::empty(GENUS.strands(), crate::braid::Ambient::Spherical);
    for _ in 0..2 {
        for curve in &table.vanishing {
            product.append(&distinguished_lift(curve, &data.conjugator(curve)?)?);
        }
    }
    let monodromy_mcg = mcg_image_trivial(&product, budget).verdict;
    Ok(RealizabilityCheck {
        consistent_lifts,
        inconsistent_lifts,
        monodromy_mcg,
    })
}

/// Lazy enumeration of tables satisfying the homological constraints.
///
/// c1 and c2 range over primitive vectors with entries in [-2, 2] spanning a
/// saturated rank-2 lattice L (their 2x2 minors are coprime). c3 and c4 are
/// drawn from L with coefficients in [-4, 4], staying inside the same box;
/// c4 may also be the genus-1 separating curve, whose class vanishes. The
/// twisting curve is then searched among the primitive box vectors.
pub struct DerivationSearch {
    box_vectors: Vec<[i64; 4]>,
    i: usize,
    j: usize,
    pending: std::vec::IntoIter<CurveTable>,
}

impl Default for DerivationSearch {
    fn default() -> Self {
        Self::new()
    }
}

impl DerivationSearch {
    pub fn new() -> Self {
        let mut box_vectors = Vec::new();
        for a in -2..=2i64 {
            for b in -2..=2 {
                for c in -2..=2 {
                    for d in -2..=2 {
                        let v = [a, b, c, d];
                        if v.iter().fold(0, |g, &x| g.gcd(&x)) == 1 {
                            box_vectors.push(v);
                        }
                    }
                }
            }
        }
        box_vectors.sort_by_key(|v| (v.iter().map(|x| x.abs()).sum::<i64>(), *v));
        DerivationSearch {
            box_vectors,
            i: 0,
            j: 0,
            pending: Vec::new().into_iter(),
        }
    }

    fn hits_for_pair(&self, c1: [i64; 4], c2: [i64; 4]) -> Vec<CurveTable> {
        let minors = (0..4)
            .flat_map(|r| (r + 1..4).map(move |s| (r, s)))
            .map(|(r, s)| c1[r] * c2[s] - c1[s] * c2[r])
            .fold(0i64, |g, m| g.gcd(&m));
        if minors != 1 {
            return Vec::new();
        }
        let mut lattice = Vec::new();
        for x in -4..=4i64 {
            for y in -4..=4i64 {
                let v: [i64; 4] = std::array::from_fn(|k| x * c1[k] + y * c2[k]);
                if v.iter().all(|e| e.abs() <= 2) && v.iter().fold(0, |g, &e| g.gcd(&e)) == 1 {
                    lattice.push(v);
                }
            }
        }
        let mut hits = Vec::new();
        for &c3 in &lattice {
            let c4_choices = lattice.iter().map(Some).chain(std::iter::once(None));
            for c4 in c4_choices {
                let zero = [0i64; 4];
                let c4v = c4.unwrap_or(&zero);
                let p = product_matrix(&[&c1, &c2, &c3, c4v]);
                if !p.mul(&p).expect("square").is_identity() {
                    continue;
                }
                let vanishing = [
                    nonsep("c1", c1),
                    nonsep("c2", c2),
                    nonsep("c3", c3),
                    match c4 {
                        Some(v) => nonsep("c4", *v),
                        None => {
                            CurveClass::separating("c4", GENUS, 1).expect("genus 2 admits h = 1")
                        }
                    },
                ];
                for &c in &self.box_vectors {
                    let table = CurveTable {
                        vanishing: vanishing.clone(),
                        twist: nonsep(TWIST_ID, c),
                        lifts: BTreeMap::new(),
                    };
                    if verify_constraints(&table).all() {
                        hits.push(table);
                        break;
                    }
                }
            }
        }
        hits
    }
}

fn nonsep(id: &str, v: [i64; 4]) -> CurveClass {
    CurveClass::nonseparating(id, GENUS, v.to_vec()).expect("primitive box vector")
}

impl Iterator for DerivationSearch {
    type Item = CurveTable;

    fn next(&mut self) -> Option<CurveTable> {
        loop {
            if let Some(t) = self.pending.next() {
                return Some(t);
            }
            let n = self.box_vectors.len();
            if self.i >= n {
                return None;
            }
            let (c1, c2) = (self.box_vectors[self.i], self.box_vectors[self.j]);
            self.j += 1;
            if self.j == n {
                self.j = 0;
                self.i += 1;
            }
            self.pending = self.hits_for_pair(c1, c2).into_iter();
        }
    }
}
