use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter or argument violates its documented domain.
    #[error("domain error: {field} = {value} ({reason})")]
    Domain {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },
    /// The confinement scale `Δ₁Mω` vanishes, so no discrete spectrum exists.
    #[error("degenerate problem: confinement scale Δ₁Mω = {lambda} must be > 0")]
    Degenerate { lambda: f64 },
    #[error("no root bracketed for n = {n} in |E| <= {e_max}")]
    NoRoot { n: u32, e_max: f64 },
    #[error("quadrature did not reach tolerance: estimate {estimate}, error {error}")]
    Quadrature { estimate: f64, error: f64 },
    #[error("invalid finite-difference grid: {0}")]
    Grid(&'static str),
    #[error("ambiguous adjudication: {0}")]
    Adjudication(&'static str),
}

impl Error {
    /// Short stable identifier, used for gap rows in tabular output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "domain",
            Error::Degenerate { .. } => "degenerate",
            Error::NoRoot { .. } => "no-root",
            Error::Quadrature { .. } => "quadrature",
            Error::Grid(_) => "grid",
            Error::Adjudication(_) => "adjudication",
        }
    }
}
