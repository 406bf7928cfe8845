use thiserror::Error;

/// Errors raised by the lab's operations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not a Young function: {0}")]
    NotYoung(String),

    #[error("no finite conjugate representation on the scan grid: {0}")]
    DegenerateConjugate(String),

    #[error("no grid point with 0 < Φ(x) < ∞ in [{lo}, {hi}]")]
    EmptyDelta2Grid { lo: f64, hi: f64 },

    #[error("support [{lo}, {hi}] leaves the grid [-{half_width}, {half_width}]")]
    SupportOverflow { lo: f64, hi: f64, half_width: f64 },

    #[error("frequency window [{lo}, {hi}] exceeds the Nyquist range ±{nyquist}")]
    NyquistOverflow { lo: f64, hi: f64, nyquist: f64 },

    #[error("bisection could not bracket the root within {doublings} doublings")]
    NoBracket { doublings: usize },

    #[error("no μ in the scan grid gives a finite ratio")]
    NoFiniteRatio,

    #[error("factorization inequality fails at s = {s}, t = {t}: {detail}")]
    CertificateViolated { s: f64, t: f64, detail: String },

    #[error("power-law fit residual {residual} exceeds {limit}")]
    PoorFit { residual: f64, limit: f64 },

    #[error("method `{method}` is incompatible with a {form} symbol")]
    IncompatibleMethod { method: String, form: String },

    #[error("symbol is not integrable: {0}")]
    NotIntegrable(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("λ = {lambda} is not resolved by the grid (max usable λ is {max_usable})")]
    Unresolved { lambda: f64, max_usable: f64 },

    #[error("grid too small: the comb needs half-width ≥ {required}")]
    GridTooSmall { required: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
