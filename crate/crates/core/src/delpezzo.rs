//! Degree-k symplectic hypersurfaces of CP^3 for 1 <= k <= 3.
//!
//! With eta the hyperplane class, c_1 = (4-k) eta and c_2 = (k^2-4k+6) eta^2,
//! and eta^2 evaluates to k on the hypersurface. Then chi = k(k^2-4k+6) and
//! c_1^2 = 3 sigma + 2 chi gives sigma. Such a hypersurface is a rational
//! surface with b2+ = 1 and b1 = 0, so it is CP^2 # b2- CP2bar unless it is
//! spin, in which case it is S^2 x S^2.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::invariants::betti_table;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DelPezzoError {
    #[error("degree {k}: signature {numerator}/3 is not an integer")]
    NonIntegralSignature { k: u64, numerator: i128 },
    #[error("degree {k} is outside 1..=3")]
    OutOfRange { k: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DiffeoType {
    #[serde(rename = "CP2")]
    Cp2,
    #[serde(rename = "S2xS2")]
    S2xS2,
    #[serde(rename = "CP2_6CP2bar")]
    Cp2SixPointBlowup,
    Unsupported,
}

impl fmt::Display for DiffeoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiffeoType::Cp2 => "CP2",
            DiffeoType::S2xS2 => "S2 x S2",
            DiffeoType::Cp2SixPointBlowup => "CP2 # 6 CP2bar",
            DiffeoType::Unsupported => "unsupported",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HypersurfaceData {
    pub k: u64,
    /// `None` when the coefficient does not fit in an i64.
    pub c1_coefficient: Option<i64>,
    pub c2_coefficient: Option<i64>,
    pub chi: Option<i64>,
    pub sigma: Option<i64>,
    pub b2minus: Option<i64>,
    pub spin: Option<bool>,
    pub diffeo_type: DiffeoType,
    pub reason: Option<String>,
}

/// Coefficients of eta and eta^2 in c_1 and c_2.
pub fn chern_data(k: u64) -> Result<(i64, i64), DelPezzoError> {
    let out_of_range = DelPezzoError::OutOfRange { k };
    let kk = i64::try_from(k).map_err(|_| out_of_range.clone())?;
    // k^2 - 4k + 6 = (k-2)^2 + 2
    let c2 = (kk - 2)
        .checked_mul(kk - 2)
        .and_then(|s| s.checked_add(2))
        .ok_or(out_of_range)?;
    Ok((4 - kk, c2))
}

pub fn hypersurface_invariants(k: u64) -> Result<(i64, i64), DelPezzoError> {
    let (c1, c2) = chern_data(k)?;
    let kk = k as i128;
    let chi = kk * c2 as i128;
    let c1_squared = (c1 as i128) * (c1 as i128) * kk;
    let numerator = c1_squared - 2 * chi;
    if numerator % 3 != 0 {
        return Err(DelPezzoError::NonIntegralSignature { k, numerator });
    }
    let narrow = |x: i128| i64::try_from(x).map_err(|_| DelPezzoError::OutOfRange { k });
    Ok((narrow(chi)?, narrow(numerator / 3)?))
}

/// 3(k-1)^2 / (k^2-6k+11), exact on 1..=3.
pub fn b2minus(k: u64) -> Result<i64, DelPezzoError> {
    if !(1..=3).contains(&k) {
        return Err(DelPezzoError::OutOfRange { k });
    }
    let k = k as i64;
    let numerator = 3 * (k - 1) * (k - 1);
    let denominator = k * k - 6 * k + 11;
    debug_assert_eq!(numerator % denominator, 0);
    Ok(numerator / denominator)
}

pub fn classify(k: u64) -> HypersurfaceData {
    let chern = chern_data(k).ok();
    let unsupported = |reason: &str| HypersurfaceData {
        k,
        c1_coefficient: chern.map(|c| c.0),
        c2_coefficient: chern.map(|c| c.1),
        chi: None,
        sigma: None,
        b2minus: None,
        spin: None,
        diffeo_type: DiffeoType::Unsupported,
        reason: Some(reason.to_owned()),
    };
    if !(1..=3).contains(&k) {
        return unsupported("outside the supported range 1 <= k <= 3");
    }
    let (c1, c2) = chern.expect("small degree");
    let (chi, sigma) = hypersurface_invariants(k).expect("integral for 1 <= k <= 3");
    let b2m = b2minus(k).expect("in range");
    let spin = c1 % 2 == 0;
    let diffeo_type = match (b2m, spin) {
        (0, _) => DiffeoType::Cp2,
        (1, true) => DiffeoType::S2xS2,
        (6, false) => DiffeoType::Cp2SixPointBlowup,
        _ => return unsupported("no matching rational surface"),
    };
    HypersurfaceData {
        k,
        c1_coefficient: Some(c1),
        c2_coefficient: Some(c2),
        chi: Some(chi),
        sigma: Some(sigma),
        b2minus: Some(b2m),
        spin: Some(spin),
        diffeo_type,
        reason: None,
    }
}

/// b2- recomputed from chi and sigma with b1 = 0.
pub fn b2minus_from_betti(k: u64) -> Result<i64, crate::Error> {
    let (chi, sigma) = hypersurface_invariants(k)?;
    Ok(betti_table(chi, sigma, 0)?.b2minus)
}
