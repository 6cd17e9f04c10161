use thiserror::Error;

use crate::space::Violation;

#[derive(Debug, Error)]
pub enum Error {
    /// The input does not even describe a square, uniquely labelled matrix.
    #[error("malformed space: {0}")]
    Structural(String),

    #[error("metric axioms violated: {}", format_violations(.0))]
    Axioms(Vec<Violation>),

    #[error("{what}: {size} exceeds the configured cap of {cap}")]
    CapExceeded { what: &'static str, size: u128, cap: u128 },

    #[error("source space is not positive; the Lipschitz weight is only defined on positive sources")]
    NotPositive,

    #[error("space is not linear")]
    NotLinear,

    #[error("map is not {0}-Lipschitz")]
    NotLipschitz(String),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("invalid relation: {0}")]
    InvalidRelation(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("norm axioms violated: {0}")]
    InvalidNorm(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A checked identity failed to hold on a concrete instance.
    #[error("property violated: {0}")]
    Property(String),
}

fn format_violations(v: &[Violation]) -> String {
    let shown: Vec<String> = v.iter().take(5).map(|x| x.to_string()).collect();
    let mut s = shown.join("; ");
    if v.len() > 5 {
        s.push_str(&format!("; ... ({} total)", v.len()));
    }
    s
}

pub type Result<T> = std::result::Result<T, Error>;
