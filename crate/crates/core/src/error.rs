use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Inputs that violate a structural precondition (non-composable maps,
    /// ill-defined actions, torsion where a lattice is required, ...).
    #[error("structural error: {0}")]
    Structural(String),

    /// A computation was refused because it would exceed a configured budget.
    #[error("resource budget exceeded: {what} needs {requested}, limit is {limit}")]
    Resource { what: String, requested: usize, limit: usize },

    /// Malformed input data, with a pointer to the offending location.
    #[error("invalid input at {path}: {message}")]
    Input { path: String, message: String },
}

impl Error {
    pub fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub fn input(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Input { path: path.into(), message: message.into() }
    }
}
