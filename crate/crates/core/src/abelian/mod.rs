//! Finitely presented abelian groups, homomorphisms, tensor and torsion
//! products.

mod group;
mod morphism;
mod tensor;
mod tor;

pub use group::{FpAbGroup, GroupElement};
pub use morphism::{GroupMorphism, PreimageSolver};
pub use tensor::{tensor_group, TensorProduct};
pub use tor::{
    tor_group, tor_order_oracle, verify_relations_with, verify_tor_relations, ElementaryTor,
    RelationReport, TorProduct, TorSymbol,
};
