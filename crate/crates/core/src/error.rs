use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A constraint of the low-height regions B and C, named in error messages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Constraint {
    /// 0 < c < 1
    CInUnitInterval,
    /// 0 < r < 1
    RInUnitInterval,
    /// a₀/(a₁ − a₀) · c < r
    CoefficientRatio,
    /// d₂ > √(r(r + c))/2
    SecondSplit,
}

impl std::fmt::Display for Constraint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Constraint::CInUnitInterval => "0 < c < 1",
            Constraint::RInUnitInterval => "0 < r < 1",
            Constraint::CoefficientRatio => "a0/(a1 - a0) * c < r",
            Constraint::SecondSplit => "d2 > sqrt(r(r + c))/2",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("polynomial has no coefficients")]
    EmptyPolynomial,
    #[error("coefficient a_{index} is not finite")]
    NonFiniteCoefficient { index: usize },
    #[error("declared degree {degree} does not match {len} coefficients")]
    DegreeMismatch { degree: usize, len: usize },
    #[error("coefficient constraints violated: {0}")]
    Inadmissible(String),
    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole: {0}")]
    Pole(&'static str),
    #[error("audit failed: {0}")]
    Audit(String),
    #[error("{count} sign changes of the derivative found; expected at most one")]
    AmbiguousRoot { count: usize },
    #[error("no root in the scanned interval")]
    NoRoot,
    #[error("constraint violated: {0}")]
    Constraint(Constraint),
    #[error("no feasible point: {0}")]
    Infeasible(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub(crate) fn check_range(
    name: &'static str,
    value: f64,
    range: &'static str,
    ok: bool,
) -> Result<f64> {
    if ok && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::OutOfRange { name, value, range })
    }
}
