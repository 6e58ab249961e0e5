use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error(
        "singular potential at site {site}: |sin(pi*(alpha*n + phase))| = {sin_abs:e} is below singular_eps = {eps:e}"
    )]
    SingularPotential { site: usize, sin_abs: f64, eps: f64 },

    #[error("QR iteration did not converge while deflating eigenvalue {index}")]
    NoConvergence { index: usize },

    #[error("back-substitution failed for eigenvector {index} even after pivot perturbation")]
    DegenerateEigenvector { index: usize },

    #[error("arcosh argument {argument} is outside the domain [1, inf)")]
    Domain { argument: f64 },

    #[error("vector is not normalized: |psi|_2 = {norm}")]
    NotNormalized { norm: f64 },

    #[error("rational alpha has denominator {denominator}, but the theta grid has {len} points")]
    GridMismatch { denominator: u64, len: usize },

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },

    #[error("sweep point V = {strength}: {source}")]
    SweepPoint { strength: f64, source: Box<Error> },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// True for errors caused by bad input rather than a numerical failure.
    pub fn is_validation(&self) -> bool {
        match self {
            Error::InvalidParameter { .. } | Error::GridMismatch { .. } => true,
            Error::SweepPoint { source, .. } => source.is_validation(),
            _ => false,
        }
    }

    /// True for numerical failures: singular sites, QR breakdown and friends.
    pub fn is_numeric(&self) -> bool {
        match self {
            Error::SingularPotential { .. }
            | Error::NoConvergence { .. }
            | Error::DegenerateEigenvector { .. }
            | Error::Domain { .. }
            | Error::NotNormalized { .. } => true,
            Error::SweepPoint { source, .. } => source.is_numeric(),
            _ => false,
        }
    }
}
