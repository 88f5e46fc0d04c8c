//! Cross products, the Künneth sequence, its splittings `λ` and the
//! Bockstein description of `λ`.

mod bockstein;
mod decomposition;
mod lambda;
mod pair;

pub use bockstein::{bockstein, torsion_subgroup, Bockstein, CompatibleFamily, UcSplitting};
pub use decomposition::KunnethDecomposition;
pub use lambda::{mac_lane_cycle, KunnethSplitting, Lifts, TorCoset};
pub use pair::{check_tor_acyclic, epsilon, tor_complex, KunnethPair};

#[cfg(test)]
mod tests;
