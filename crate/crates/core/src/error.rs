use crate::lattice::LatticeVertex;

pub type Result<T> = std::result::Result<T, Error>;

/// Crate-wide error type.
///
/// The three broad classes (invariant violation, infeasibility, numeric
/// non-convergence) map onto distinct process exit codes in the CLI.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invariant violation: {0}")]
    Invariant(String),

    #[error("height increment out of {{0,1}} on edge {from:?} -> {to:?} (delta {delta})")]
    BadIncrement {
        from: LatticeVertex,
        to: LatticeVertex,
        delta: i64,
    },

    #[error("vertex {0:?} outside domain")]
    OutsideDomain(LatticeVertex),

    #[error("domain is not simply connected")]
    NotSimplyConnected,

    #[error("boundary data admits no height-function extension")]
    Untileable,

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("quadrature did not converge: {0}")]
    QuadratureNonConvergence(String),

    #[error("solver did not converge: {0}")]
    NonConvergence(String),

    #[error("enumeration cap of {cap} states exceeded")]
    EnumerationCap { cap: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub fn infeasible(msg: impl Into<String>) -> Self {
        Error::Infeasible(msg.into())
    }

    /// Process exit code for the CLI: invariant violations, infeasibility and
    /// numeric non-convergence are distinguished per the external contract.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant(_) | Error::BadIncrement { .. } | Error::OutsideDomain(_) => 2,
            Error::NotSimplyConnected | Error::Untileable | Error::Infeasible(_) => 3,
            Error::QuadratureNonConvergence(_)
            | Error::NonConvergence(_)
            | Error::EnumerationCap { .. } => 4,
            Error::Parse(_) | Error::Io(_) => 1,
        }
    }
}
