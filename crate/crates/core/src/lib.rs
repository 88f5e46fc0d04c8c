//! Exact homological algebra over the integers: finitely presented abelian
//! groups, chain complexes, and explicit splittings of the Künneth sequence.

pub mod abelian;
pub mod complex;
pub mod error;
pub mod exactness;
pub mod kunneth;
pub mod linalg;
pub mod naturality;
pub mod random;
pub mod verify;

pub use error::{Error, Result};
pub use abelian::{ElementaryTor, FpAbGroup, GroupElement, GroupMorphism, TorProduct};
pub use linalg::{Int, IntMatrix, LatticeBasis};
pub use complex::{Chain, ChainMap, FpChainComplex, FreeChainComplex, HomologyData, TensorComplex};
pub use kunneth::{KunnethDecomposition, KunnethPair, KunnethSplitting, TorCoset};
pub use naturality::{ThetaMap, WeakSplitChainMap};
