//! Weakly split chain maps, their deviation maps `Θ`, and how `λ` fails to
//! be natural.

mod category;
mod deviation;
mod map;

pub use category::{compose, direct_sum, homotopy_transport, internal_sum, theta_composition_holds};
pub use deviation::{cosets_natural_check, deviation_check, DeviationReport};
pub use map::{identity_map, reduce_mod, ThetaMap, WeakSplitChainMap};

#[cfg(test)]
mod tests;
