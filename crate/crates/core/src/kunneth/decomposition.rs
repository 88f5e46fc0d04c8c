use crate::abelian::{tensor_group, FpAbGroup, GroupMorphism};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

use super::lambda::{compose_is_identity, KunnethSplitting};
use super::pair::KunnethPair;

/// The Künneth sequence in one total degree, assembled over all bidegrees.
#[derive(Clone, Debug)]
pub struct KunnethDecomposition {
    pub degree: i64,
    /// `⊕ H_i(C) ⊗ H_j(D) → H_n(C⊗D)`, summands by increasing `i`.
    pub cross: GroupMorphism,
    /// `H_n(C⊗D) → ⊕ Tor(H_i(C), H_j(D))` over `i + j = n − 1`.
    pub mu: GroupMorphism,
    /// `⊕ Tor → H_n(C⊗D)` when a splitting was supplied.
    pub lambda: Option<GroupMorphism>,
    pub tensor_degrees: Vec<(i64, i64)>,
    pub tor_degrees: Vec<(i64, i64)>,
}

fn hstack_maps(source: FpAbGroup, target: &FpAbGroup, maps: &[GroupMorphism]) -> GroupMorphism {
    let m = maps
        .iter()
        .fold(IntMatrix::zeros(target.gens(), 0), |acc, f| acc.hstack(f.matrix()));
    GroupMorphism::new_unchecked(source, target.clone(), m)
}

impl KunnethPair {
    pub fn decomposition(&self, n: i64, s: Option<&KunnethSplitting>) -> Result<KunnethDecomposition> {
        let hn = self.product().homology(n).group.clone();
        let tensor_degrees = self.tensor_pairs(n);
        let tor_degrees = self.tor_pairs(n);

        let crosses: Vec<GroupMorphism> = tensor_degrees.iter().map(|&(i, j)| self.cross_map(i, j)).collect();
        let tsrc = tensor_degrees.iter().fold(FpAbGroup::trivial(), |acc, &(i, j)| {
            acc.direct_sum(&tensor_group(&self.left().homology(i).group, &self.right().homology(j).group).group)
        });
        let cross = hstack_maps(tsrc, &hn, &crosses);

        let tors: Vec<_> = tor_degrees.iter().map(|&(i, j)| self.tor(i, j)).collect();
        let tgt = tors.iter().fold(FpAbGroup::trivial(), |acc, t| acc.direct_sum(t.group()));
        let mu_rows = tor_degrees
            .iter()
            .fold(IntMatrix::zeros(0, hn.gens()), |acc, &(i, j)| acc.vstack(self.mu_map(i, j).matrix()));
        let mu = GroupMorphism::new_unchecked(hn.clone(), tgt.clone(), mu_rows);

        let lambda = match s {
            None => None,
            Some(s) => {
                let maps = tor_degrees
                    .iter()
                    .map(|&(i, j)| self.lambda_map(s, i, j))
                    .collect::<Result<Vec<_>>>()?;
                Some(hstack_maps(tgt, &hn, &maps))
            }
        };
        Ok(KunnethDecomposition {
            degree: n,
            cross,
            mu,
            lambda,
            tensor_degrees,
            tor_degrees,
        })
    }
}

impl KunnethDecomposition {
    /// `×` injective, `μ` surjective, `im × = ker μ`, and `μ λ = id` if present.
    pub fn check(&self) -> Result<()> {
        let fail = |reason: &str| Error::NotExact {
            degree: self.degree,
            reason: reason.into(),
        };
        if !self.cross.is_injective() {
            return Err(fail("cross product is not injective"));
        }
        if !self.mu.is_surjective() {
            return Err(fail("μ is not surjective"));
        }
        if !self.cross.then(&self.mu).is_zero() {
            return Err(fail("μ does not vanish on cross products"));
        }
        let solver = self.cross.preimage_solver();
        let ker = self.mu.kernel_lattice();
        if (0..ker.rank()).any(|k| solver.solve(&ker.vector(k)).is_none()) {
            return Err(fail("kernel of μ exceeds the cross products"));
        }
        if let Some(l) = &self.lambda {
            if !compose_is_identity(l, &self.mu) {
                return Err(fail("μ λ is not the identity"));
            }
        }
        Ok(())
    }

    /// `[× | λ]: (⊕ H⊗H) ⊕ (⊕ Tor) → H_n(C⊗D)`, an isomorphism when `λ` splits.
    pub fn splitting_map(&self) -> Option<GroupMorphism> {
        let l = self.lambda.as_ref()?;
        let src = self.cross.source().direct_sum(l.source());
        Some(GroupMorphism::new_unchecked(
            src,
            self.cross.target().clone(),
            self.cross.matrix().hstack(l.matrix()),
        ))
    }
}
