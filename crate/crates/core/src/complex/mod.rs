//! Chain complexes of finitely presented groups, homology, tensor products,
//! chain maps and splittings.

mod approx;
mod document;
pub mod builtin;
#[allow(clippy::module_inception)]
mod complex;
mod homology;
mod map;
mod ses;
mod splitting;
mod tensor;

pub use complex::{Chain, FpChainComplex, FreeChainComplex, Validity};
pub use homology::HomologyData;
pub use map::ChainMap;
pub use splitting::{
    boundary_splitting, weak_splitting, BoundarySplitting, SplitDegree, WeakDegree, WeakSplitting,
};
pub use tensor::{mod_reduction, tensor_complex, tensor_fp, Block, TensorComplex};
pub use approx::{
    cover_surjective, dold_check, free_approximation, ses_free_approximation, ses_free_approximation_from,
    tensor_approximation, FreeApproximation, SesApproximation,
};
pub use ses::{kernel_complex, ShortExactSeq};
pub use document::{matrix_rows, parse_matrix, BoundaryDocument, ComplexDocument, ComplexKind, DegreeDocument, MapDocument};
