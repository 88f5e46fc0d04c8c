//! The interchange map, connecting homomorphisms of (weak) exact sequences,
//! and how both interact with the Künneth splittings.

mod boundary;
mod connecting;
mod interchange;

pub use boundary::BoundaryKunneth;
pub use connecting::{
    bockstein_anticommutes, exact_at, reduction_sequence, tensor_weak_exact, zigzag, Side, WeakExactSeq,
};
pub use interchange::{interchange, FlipPair, FlipReport};

#[cfg(test)]
mod tests;
