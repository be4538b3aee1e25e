use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported size {n}: {reason}")]
    Size { n: usize, reason: String },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("integrand `{label}` returned {value} at x = {x:e}")]
    Integrand { label: String, x: f64, value: f64 },

    #[error("invalid singularity profile: {0}")]
    Profile(String),

    #[error("argument out of supported range: {0}")]
    Range(String),

    #[error("128-bit rational overflow in {0}")]
    Overflow(&'static str),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("insufficient data: {usable} usable points, need at least {required}")]
    InsufficientData { usable: usize, required: usize },

    #[error("oracle failure: {0}")]
    Oracle(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for failures caused by bad arguments or configuration rather than
    /// by the numerics themselves.
    pub fn is_configuration(&self) -> bool {
        matches!(
            self,
            Error::Size { .. }
                | Error::Input(_)
                | Error::Domain(_)
                | Error::Profile(_)
                | Error::Range(_)
                | Error::Config(_)
                | Error::Io(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
