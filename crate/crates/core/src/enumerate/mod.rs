//! Exhaustive enumeration of each cyclomatic class and extremal reporting.

mod generator;
mod random;
mod report;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

pub use generator::{naive_class_members, ClassStream};
pub use random::random_instance;
pub use report::{
    count_class, extremal_report, iso_classes, verify_theorem, Counterexample, EqualityCheck, ExtremalReport,
    Extremizer, IsoClass, ReportOptions, Verdict, VerdictStatus,
};

use crate::entropy::BoundsError;
use crate::hypergraph::CycleClass;

/// Default refusal threshold on `C(C(n, k), m)`.
pub const DEFAULT_MAX_SPACE: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("enumeration requires k >= 3 and m >= 2 (got k = {k}, m = {m})")]
    InvalidParameters { k: usize, m: usize },
    #[error("search space C(C({n},{k}),{m}) = {estimate} exceeds the limit {limit}")]
    SearchSpaceTooLarge { n: usize, k: usize, m: usize, estimate: u128, limit: u128 },
    #[error("n = {0} exceeds the 64-vertex enumeration limit")]
    TooManyVertices(usize),
    #[error("could not build a random {class} instance with k = {k}, m = {m} after {attempts} attempts")]
    RetryExhausted { class: CycleClass, k: usize, m: usize, attempts: usize },
    #[error("n = {n} exceeds the isomorphism bound {limit}")]
    IsoBoundExceeded { n: usize, limit: usize },
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

/// The three extremal theorems, one per cyclomatic class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Theorem {
    #[serde(rename = "T3.1")]
    Supertree,
    #[serde(rename = "T4.1")]
    Unicyclic,
    #[serde(rename = "T5.1")]
    Bicyclic,
}

impl Theorem {
    pub fn class(self) -> CycleClass {
        match self {
            Theorem::Supertree => CycleClass::Supertree,
            Theorem::Unicyclic => CycleClass::Unicyclic,
            Theorem::Bicyclic => CycleClass::Bicyclic,
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            Theorem::Supertree => "T3.1",
            Theorem::Unicyclic => "T4.1",
            Theorem::Bicyclic => "T5.1",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "T3.1" => Ok(Theorem::Supertree),
            "T4.1" => Ok(Theorem::Unicyclic),
            "T5.1" => Ok(Theorem::Bicyclic),
            other => Err(format!("unknown theorem `{other}` (expected T3.1, T4.1 or T5.1)")),
        }
    }
}

/// `C(n, r)`, saturating at `u128::MAX`.
pub fn binomial(n: u128, r: u128) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Number of m-subsets of candidate edges: `C(C(n, k), m)`.
pub fn search_space(n: usize, k: usize, m: usize) -> u128 {
    binomial(binomial(n as u128, k as u128), m as u128)
}

fn check_enumerable(class: CycleClass, k: usize, m: usize, max_space: u128) -> Result<usize, EnumerateError> {
    if k < 3 || m < 2 {
        return Err(EnumerateError::InvalidParameters { k, m });
    }
    let n = class.vertex_count(k, m).expect("m(k-1)+1 >= 2 for k >= 3, m >= 2");
    if n > 64 {
        return Err(EnumerateError::TooManyVertices(n));
    }
    let estimate = search_space(n, k, m);
    if estimate > max_space {
        return Err(EnumerateError::SearchSpaceTooLarge { n, k, m, estimate, limit: max_space });
    }
    Ok(n)
}

/// Every labeled member of the class on `0..n` with `m` edges,
/// `n = m(k-1) + 1 - c`, in lexicographic order of edge lists.
///
/// Infeasible classes yield an empty stream.
pub fn enumerate_class(class: CycleClass, k: usize, m: usize) -> Result<ClassStream, EnumerateError> {
    enumerate_class_bounded(class, k, m, DEFAULT_MAX_SPACE)
}

pub fn enumerate_class_bounded(
    class: CycleClass,
    k: usize,
    m: usize,
    max_space: u128,
) -> Result<ClassStream, EnumerateError> {
    let n = check_enumerable(class, k, m, max_space)?;
    Ok(ClassStream::new(class, k, m, n, 0, 1))
}

/// Shard `shard` of `shards` (partitioned on the first chosen edge).
pub fn enumerate_class_shard(
    class: CycleClass,
    k: usize,
    m: usize,
    shard: usize,
    shards: usize,
    max_space: u128,
) -> Result<ClassStream, EnumerateError> {
    let n = check_enumerable(class, k, m, max_space)?;
    Ok(ClassStream::new(class, k, m, n, shard, shards))
}
