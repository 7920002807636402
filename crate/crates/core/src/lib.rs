//! Symbolic engine for hyperelliptic Lefschetz fibrations.
//!
//! A fibration is described by its monodromy factorization: an ordered list of
//! positive Dehn twists on a closed genus-g surface. From that data the crate
//! computes the first homology of the total space, closed-form 4-manifold
//! invariants, spherical-braid lifts and their global braid monodromy class,
//! and the blow-up bookkeeping of the ambient 6-manifold built from a
//! hyperelliptic fibration. A small module classifies low-degree symplectic
//! hypersurfaces of the projective 3-space.

pub mod braid;
pub mod constructions;
pub mod delpezzo;
pub mod homology;
pub mod invariants;
pub mod model;
pub mod report;
pub mod sixfold;

mod error;

pub use error::Error;
