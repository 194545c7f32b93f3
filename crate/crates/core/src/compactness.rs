//! Moore-bound arithmetic and the compactness classification of `(n, s, d)`
//! parameter triples.
//!
//! An s-regular graph of diameter d has at most `1 + s·Σ_{i=1..d}(s-1)^(i-1)`
//! vertices (the Moore bound). A graph order n is "compact" for `(s, d)` when
//! d is the smallest diameter admitting n vertices at degree s, i.e. when n
//! lies strictly above the bound for diameter `d-1` and at most the bound for
//! diameter `d`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompactnessError {
    #[error("degree must be at least 2 (got {0})")]
    DegreeTooSmall(usize),
    #[error("diameter must be at least 1 (got {0})")]
    DiameterTooSmall(usize),
    #[error("order must be at least 1 (got {0})")]
    OrderTooSmall(usize),
    #[error("Moore bound overflows for degree {s} and diameter {d}")]
    Overflow { s: usize, d: usize },
}

/// Where an order n falls relative to the Moore bounds for `(s, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompactnessClass {
    /// `n <= Moore(s, d-1)`: a smaller diameter would already suffice.
    TooSmall,
    /// `Moore(s, d-1) < n < Moore(s, d)`: compact with `replicas` spare slots
    /// (`c = Moore(s, d) - n`) in every d-level projection.
    Compact { replicas: usize },
    /// `n = Moore(s, d)`: limit-compact, replica-free projections.
    LimitCompact,
    /// `n > Moore(s, d)`: no s-regular graph of diameter d has n vertices.
    Impossible,
}

impl fmt::Display for CompactnessClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompactnessClass::TooSmall => write!(f, "not compact: a smaller diameter suffices"),
            CompactnessClass::Compact { replicas } => write!(f, "compact (c = {})", replicas),
            CompactnessClass::LimitCompact => write!(f, "limit-compact (c = 0)"),
            CompactnessClass::Impossible => write!(f, "impossible: order exceeds the Moore bound"),
        }
    }
}

/// `1 + s·Σ_{i=1..d}(s-1)^(i-1)`, the largest order of an s-regular graph
/// with diameter d.
pub fn moore_bound(s: usize, d: usize) -> Result<usize, CompactnessError> {
    if s < 2 {
        return Err(CompactnessError::DegreeTooSmall(s));
    }
    if d < 1 {
        return Err(CompactnessError::DiameterTooSmall(d));
    }
    moore_bound_total(s, d)
}

/// Same sum but total in d, with `Moore(s, 0) = 1` (the root alone).
fn moore_bound_total(s: usize, d: usize) -> Result<usize, CompactnessError> {
    let overflow = || CompactnessError::Overflow { s, d };
    let mut total = 1usize;
    let mut layer = 1usize;
    for i in 1..=d {
        layer = if i == 1 {
            s
        } else {
            layer.checked_mul(s - 1).ok_or_else(overflow)?
        };
        total = total.checked_add(layer).ok_or_else(overflow)?;
    }
    Ok(total)
}

/// Classifies `n` against the Moore bounds for `(s, d)`.
pub fn classify_compactness(
    n: usize,
    s: usize,
    d: usize,
) -> Result<CompactnessClass, CompactnessError> {
    if n < 1 {
        return Err(CompactnessError::OrderTooSmall(n));
    }
    let upper = moore_bound(s, d)?;
    let lower = moore_bound_total(s, d - 1)?;
    Ok(if n > upper {
        CompactnessClass::Impossible
    } else if n == upper {
        CompactnessClass::LimitCompact
    } else if n > lower {
        CompactnessClass::Compact {
            replicas: upper - n,
        }
    } else {
        CompactnessClass::TooSmall
    })
}
