use thiserror::Error;

use crate::probability::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("unknown symbol `{symbol}` for variable `{variable}`")]
    UnknownSymbol { variable: String, symbol: String },

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("invalid pmf: {0}")]
    InvalidPmf(String),

    #[error("alphabet mismatch for `{0}` between law and channel")]
    AlphabetMismatch(String),

    #[error("variable sets overlap on `{0}`")]
    OverlappingSets(String),

    #[error("conditioning on zero-probability event {variable} = {symbol}")]
    ZeroProbabilityEvent { variable: String, symbol: String },

    #[error("validation failed:\n{0}")]
    Validation(ValidationReport),

    #[error("factorization produced positive mass on a tuple violating {0}")]
    RestrictionViolated(String),

    #[error("joint table too large ({0} entries)")]
    TableTooLarge(usize),

    #[error("negative information quantity {0:.3e} bits beyond numerical floor")]
    NegativeInformation(f64),

    #[error("covariance is not positive semidefinite (min eigenvalue {0:.3e})")]
    IndefiniteCovariance(f64),

    #[error("covariance is not symmetric (max asymmetry {0:.3e})")]
    AsymmetricCovariance(f64),

    #[error("quadrature did not converge on [{lo}, {hi}]")]
    QuadratureNonConvergence { lo: f64, hi: f64 },

    #[error("constraint ({id}) has negative right-hand side {value:.3e}")]
    NegativeRhs { id: char, value: f64 },

    #[error("projection is unbounded")]
    Unbounded,

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("power budget exceeded: {0}")]
    PowerBudget(String),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("all {0} parameter points were rejected")]
    AllRejected(usize),

    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
