use crate::linalg::{vecops, Int, IntMatrix};

use super::group::FpAbGroup;
use super::morphism::GroupMorphism;

/// `A ⊗ B` presented on generators `a_p ⊗ b_q` (index `p·gens(B) + q`).
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub a: FpAbGroup,
    pub b: FpAbGroup,
    pub group: FpAbGroup,
}

pub fn tensor_group(a: &FpAbGroup, b: &FpAbGroup) -> TensorProduct {
    let ra = a.relations().kron(&IntMatrix::identity(b.gens()));
    let rb = IntMatrix::identity(a.gens()).kron(b.relations());
    let group = FpAbGroup::new(a.gens() * b.gens(), ra.hstack(&rb)).expect("shape is consistent");
    TensorProduct {
        a: a.clone(),
        b: b.clone(),
        group,
    }
}

impl TensorProduct {
    /// The bilinear structure map `(x, y) ↦ x ⊗ y`.
    pub fn pair(&self, x: &[Int], y: &[Int]) -> Vec<Int> {
        vecops::kron(x, y)
    }

    pub fn map(&self, f: &GroupMorphism, g: &GroupMorphism, target: &TensorProduct) -> GroupMorphism {
        f.tensor(g, self.group.clone(), target.group.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let z4 = FpAbGroup::cyclic(4);
        assert_eq!(tensor_group(&FpAbGroup::free(1), &z4).group.describe(), "Z/4");
        assert_eq!(tensor_group(&z4, &FpAbGroup::cyclic(6)).group.describe(), "Z/2");
        assert_eq!(
            tensor_group(&FpAbGroup::cyclic(2), &FpAbGroup::free(2)).group.describe(),
            "Z/2 + Z/2"
        );
    }

    #[test]
    fn cyclic_tensor_is_gcd() {
        use num_integer::Integer;
        for m in 1..=8i64 {
            for n in 1..=8i64 {
                let t = tensor_group(&FpAbGroup::cyclic(m), &FpAbGroup::cyclic(n));
                assert_eq!(t.group.order(), Some(Int::from(m.gcd(&n))));
            }
        }
    }
}
