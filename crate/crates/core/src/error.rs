use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which harmonic family a mode sum runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    /// Odd `n`, antisymmetric field configuration (Z1).
    Odd,
    /// Even `n`, symmetric field configuration (Z2).
    Even,
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Parity::Odd => f.write_str("odd"),
            Parity::Even => f.write_str("even"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input violates a documented precondition.
    #[error("invalid `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    /// The formulas are singular at the requested point.
    #[error("numerical domain error in {what}: {detail}")]
    Domain { what: &'static str, detail: String },

    #[error(
        "{parity} mode sum did not converge within n_max = {n_max}: partial = {partial_re:e}{partial_im:+e}i, tail estimate = {tail_estimate:e}"
    )]
    NotConverged {
        parity: Parity,
        n_max: u64,
        partial_re: f64,
        partial_im: f64,
        tail_estimate: f64,
    },

    #[error("{context}: {source}")]
    AtPoint {
        context: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field,
            reason: reason.into(),
        }
    }

    pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            what,
            detail: detail.into(),
        }
    }

    pub fn with_context(self, context: impl Into<String>) -> Self {
        Error::AtPoint {
            context: context.into(),
            source: Box::new(self),
        }
    }

    /// The innermost error, with any point context stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtPoint { source, .. } => source.root(),
            other => other,
        }
    }

    /// True when the failure is a rejected input rather than a numerical
    /// singularity or convergence failure.
    pub fn is_invalid_input(&self) -> bool {
        matches!(self.root(), Error::InvalidParameter { .. })
    }

    /// Short machine-readable tag used in sweep tables.
    pub fn kind(&self) -> &'static str {
        match self.root() {
            Error::InvalidParameter { .. } => "invalid_parameter",
            Error::Domain { .. } => "domain",
            Error::NotConverged { .. } => "not_converged",
            Error::AtPoint { .. } => unreachable!("root() strips context"),
        }
    }
}
