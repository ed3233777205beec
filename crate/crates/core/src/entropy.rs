//! Degree-based entropy functionals and the closed-form extremal bounds.
//!
//! All logarithms are base 2. For `t = 1` the entropy reduces to
//! `log(km) - h/(km)` with `h = Σ d log d`, so extremal questions about the
//! entropy at fixed `(k, m)` are extremal questions about `h` with the
//! direction reversed.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::families::FamilyTag;
use crate::hypergraph::{CycleClass, Hypergraph};

/// Absolute tolerance for comparisons against closed forms.
pub const CLOSED_FORM_TOLERANCE: f64 = 1e-12;

/// An entropy in bits.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct EntropyValue(f64);

impl EntropyValue {
    pub fn bits(self) -> f64 {
        self.0
    }
}

impl fmt::Display for EntropyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.12}", self.0)
    }
}

/// `I_d^t` of a hypergraph, computed from its sorted degree sequence only.
pub fn degree_entropy(h: &Hypergraph, t: f64) -> EntropyValue {
    EntropyValue(entropy_of_degrees(h.degree_sequence().as_slice(), t))
}

/// Shannon entropy of the distribution `p_i ∝ d_i^t`.
///
/// Degrees must be positive. The result is clamped into `[0, log n]` to
/// absorb last-ulp rounding.
pub fn entropy_of_degrees(degrees: &[usize], t: f64) -> f64 {
    if degrees.is_empty() {
        return 0.0;
    }
    let mut total = 0.0;
    let mut weighted_log = 0.0;
    for &d in degrees {
        debug_assert!(d > 0, "entropy is defined for positive degrees");
        let w = (d as f64).powf(t);
        total += w;
        if w != 1.0 {
            weighted_log += w * w.log2();
        }
    }
    let value = total.log2() - weighted_log / total;
    value.clamp(0.0, (degrees.len() as f64).log2())
}

/// `h(H) = Σ d_i log d_i`.
pub fn h_value(h: &Hypergraph) -> f64 {
    h_of_degrees(h.degree_sequence().as_slice())
}

pub fn h_of_degrees(degrees: &[usize]) -> f64 {
    degrees.iter().filter(|&&d| d > 1).map(|&d| d as f64 * (d as f64).log2()).sum()
}

/// `log(km) - h/(km)`: the `t = 1` entropy expressed through `h`.
pub fn entropy_from_h(k: usize, m: usize, h: f64) -> f64 {
    let km = (k * m) as f64;
    km.log2() - h / km
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("bounds require k >= 3 and m >= 2 (got k = {k}, m = {m})")]
    InvalidParameters { k: usize, m: usize },
}

/// A closed-form lower/upper bound together with the families claimed to
/// attain each side.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundPair {
    pub lower: f64,
    pub upper: f64,
    pub lower_witness: Vec<FamilyTag>,
    pub upper_witness: Vec<FamilyTag>,
    /// Symbolic forms, with `log 2` kept literal.
    pub lower_formula: &'static str,
    pub upper_formula: &'static str,
}

fn check_params(k: usize, m: usize) -> Result<(), BoundsError> {
    if k < 3 || m < 2 {
        Err(BoundsError::InvalidParameters { k, m })
    } else {
        Ok(())
    }
}

fn m_log_m(m: usize) -> f64 {
    let m = m as f64;
    m * m.log2()
}

/// Bounds on `h` over the class at fixed `(k, m)`.
pub fn h_bounds(class: CycleClass, k: usize, m: usize) -> Result<BoundPair, BoundsError> {
    check_params(k, m)?;
    let mf = m as f64;
    let log2 = 1.0;
    let pair = match class {
        CycleClass::Supertree => BoundPair {
            lower: 2.0 * (mf - 1.0) * log2,
            upper: m_log_m(m),
            lower_witness: vec![FamilyTag::TStar],
            upper_witness: vec![FamilyTag::Hyperstar],
            lower_formula: "2(m-1) log 2",
            upper_formula: "m log m",
        },
        CycleClass::Unicyclic => BoundPair {
            lower: 2.0 * mf * log2,
            upper: m_log_m(m) + 2.0 * log2,
            lower_witness: vec![FamilyTag::HI],
            upper_witness: vec![FamilyTag::HII],
            lower_formula: "2m log 2",
            upper_formula: "m log m + 2 log 2",
        },
        CycleClass::Bicyclic => BoundPair {
            lower: 2.0 * (mf + 1.0) * log2,
            upper: m_log_m(m) + 4.0 * log2,
            lower_witness: vec![FamilyTag::HIII],
            upper_witness: vec![FamilyTag::HIV, FamilyTag::HV],
            lower_formula: "2(m+1) log 2",
            upper_formula: "m log m + 4 log 2",
        },
    };
    Ok(pair)
}

/// Bounds on `I_d^1` over the class at fixed `(k, m)`.
pub fn theorem_bounds(class: CycleClass, k: usize, m: usize) -> Result<BoundPair, BoundsError> {
    check_params(k, m)?;
    let kmf = (k * m) as f64;
    let kf = k as f64;
    let mf = m as f64;
    let base = kmf.log2();
    let log2 = 1.0;
    let pair = match class {
        CycleClass::Supertree => BoundPair {
            lower: base - mf.log2() / kf,
            upper: base - 2.0 * (mf - 1.0) * log2 / kmf,
            lower_witness: vec![FamilyTag::Hyperstar],
            upper_witness: vec![FamilyTag::TStar],
            lower_formula: "log(km) - (log m)/k",
            upper_formula: "log(km) - 2(m-1) log 2/(km)",
        },
        CycleClass::Unicyclic => BoundPair {
            lower: base - (m_log_m(m) + 2.0 * log2) / kmf,
            upper: base - 2.0 * log2 / kf,
            lower_witness: vec![FamilyTag::HII],
            upper_witness: vec![FamilyTag::HI],
            lower_formula: "log(km) - (m log m + 2 log 2)/(km)",
            upper_formula: "log(km) - (2 log 2)/k",
        },
        CycleClass::Bicyclic => BoundPair {
            lower: base - (m_log_m(m) + 4.0 * log2) / kmf,
            upper: base - 2.0 * (mf + 1.0) * log2 / kmf,
            lower_witness: vec![FamilyTag::HIV, FamilyTag::HV],
            upper_witness: vec![FamilyTag::HIII],
            lower_formula: "log(km) - (m log m + 4 log 2)/(km)",
            upper_formula: "log(km) - 2(m+1) log 2/(km)",
        },
    };
    Ok(pair)
}
