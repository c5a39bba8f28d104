use thiserror::Error;

use crate::ehrhart::EhrhartError;
use crate::fan::FanError;
use crate::lattice::LatticeError;
use crate::matroid::MatroidError;
use crate::pering::PeError;
use crate::plfun::PlError;
use crate::polytope::PolytopeError;

/// Any error raised by the library, each mapped to one stable code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Pl(#[from] PlError),
    #[error(transparent)]
    Ehrhart(#[from] EhrhartError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Pe(#[from] PeError),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Lattice(e) => match e {
                LatticeError::ZeroVector => "ZERO_VECTOR",
                LatticeError::Dependent { .. } => "DEPENDENT",
                LatticeError::NotUnimodular { .. } => "NOT_UNIMODULAR",
                LatticeError::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            },
            Error::Fan(e) => e.code(),
            Error::Pl(e) => e.code(),
            Error::Ehrhart(e) => e.code(),
            Error::Polytope(e) => e.code(),
            Error::Matroid(e) => e.code(),
            Error::Pe(e) => e.code(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
