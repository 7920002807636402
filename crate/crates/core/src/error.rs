use thiserror::Error;

use crate::braid::BraidError;
use crate::constructions::ConstructionError;
use crate::delpezzo::DelPezzoError;
use crate::homology::HomologyError;
use crate::invariants::InvariantsError;
use crate::model::SpecError;
use crate::report::ReportError;
use crate::sixfold::SixfoldError;

/// Any error raised by the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Invariants(#[from] InvariantsError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Sixfold(#[from] SixfoldError),
    #[error(transparent)]
    DelPezzo(#[from] DelPezzoError),
    #[error(transparent)]
    Report(#[from] ReportError),
}
