use thiserror::Error;

/// Errors produced by the library and the command-line driver.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A caller passed inconsistent or out-of-range arguments.
    #[error("argument error: {0}")]
    Argument(String),

    /// A configuration value is unknown, malformed or out of range.
    #[error("configuration error in `{key}`: {message}")]
    Config { key: String, message: String },

    /// A linear system turned out singular or a computation produced a non-finite value.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// No connected topology was produced within the regeneration budget.
    #[error("no connected topology after {attempts} attempts (n = {n}, p = {p})")]
    TopologyExhausted { attempts: usize, n: usize, p: f64 },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_len(what: &str, got: usize, expected: usize) -> Result<()> {
    if got != expected {
        return Err(Error::arg(format!(
            "{what}: length {got} does not match expected {expected}"
        )));
    }
    Ok(())
}
