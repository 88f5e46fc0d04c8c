use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid complex at degree {degree}: {reason}")]
    InvalidComplex { degree: i64, reason: String },
    #[error("chain of degree {degree} is not a cycle")]
    NotACycle { degree: i64 },
    #[error("chain of degree {degree} is not a boundary")]
    NotABoundary { degree: i64 },
    #[error("matrix does not preserve relations: {0}")]
    IllDefinedMorphism(String),
    #[error("not a chain map at degree {degree}")]
    NotAChainMap { degree: i64 },
    #[error("inadmissible elementary tor: {0}")]
    InadmissibleTor(String),
    #[error("element is not {r}-torsion")]
    NotTorsion { r: String },
    #[error("modulus must be nonzero")]
    ZeroModulus,
    #[error("complex is not torsion-free at degree {degree}")]
    NotTorsionFree { degree: i64 },
    #[error("complex is not free at degree {degree}")]
    NotFree { degree: i64 },
    #[error("chain map is not surjective at degree {degree}")]
    NotSurjective { degree: i64 },
    #[error("sequence is not exact at degree {degree}: {reason}")]
    NotExact { degree: i64, reason: String },
    #[error("tor complex is not acyclic: H_{degree} has order {order}")]
    NotTorAcyclic { degree: i64, order: String },
    #[error("supplied map is not a chain homotopy at degree {degree}")]
    NotAHomotopy { degree: i64 },
    #[error("incompatible splittings: {0}")]
    Incompatible(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
