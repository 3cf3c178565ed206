use std::io;
use std::path::PathBuf;

use obslab_core::complex::ComplexError;
use obslab_core::gf2::Gf2Error;
use obslab_core::graph::GraphError;
use obslab_core::realise::RealiseError;
use obslab_core::symmetry::SymmetryError;
use obslab_core::DrawingError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown graph: {0}")]
    UnknownGraph(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("invalid drawing: {0}")]
    Drawing(#[from] DrawingError),
    #[error("limit exceeded: {0}")]
    Cap(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Internal(_) => 1,
            CliError::UnknownGraph(_) => 2,
            CliError::Malformed(_) | CliError::Drawing(_) => 3,
            CliError::Cap(_) => 4,
            CliError::Argument(_) => 5,
            CliError::Io { .. } => 6,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::UnknownName(_) => CliError::UnknownGraph(e.to_string()),
            GraphError::TooManyEdges(_) | GraphError::TooManyPairs(_) => CliError::Cap(e.to_string()),
            GraphError::BadParameter { .. } => CliError::UnknownGraph(e.to_string()),
            _ => CliError::Malformed(e.to_string()),
        }
    }
}

impl From<Gf2Error> for CliError {
    fn from(e: Gf2Error) -> Self {
        match e {
            Gf2Error::SweepTooLarge(_) => CliError::Cap(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<RealiseError> for CliError {
    fn from(e: RealiseError) -> Self {
        match e {
            RealiseError::BoundDomain(_) => CliError::Argument(e.to_string()),
            RealiseError::Graph(g) => g.into(),
            RealiseError::Gf2(g) => g.into(),
            RealiseError::NotPermutation(_) => CliError::Internal(e.to_string()),
        }
    }
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::ScanTooLarge(_) => CliError::Cap(e.to_string()),
            ComplexError::Graph(g) => g.into(),
            ComplexError::NoFaces => CliError::Internal(e.to_string()),
        }
    }
}

impl From<SymmetryError> for CliError {
    fn from(e: SymmetryError) -> Self {
        match e {
            SymmetryError::TooManyVertices(_)
            | SymmetryError::GroupTooLarge
            | SymmetryError::EnumerationTooLarge { .. } => CliError::Cap(e.to_string()),
            SymmetryError::CardinalityTooLarge { .. } => CliError::Argument(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}
