use crate::linalg::IntMatrix;

use super::complex::FreeChainComplex;

/// `ℤ --m--> ℤ` in degrees `n+1 → n`; `H_n = ℤ/m`.
pub fn moore(m: i64, n: i64) -> FreeChainComplex {
    FreeChainComplex::new(n, &[1, 1], vec![IntMatrix::from_rows(&[[m]])]).expect("valid complex")
}

/// Cellular chains of `S^n`: `ℤ` in degrees `0` and `n`, zero boundaries.
pub fn sphere(n: i64) -> FreeChainComplex {
    assert!(n >= 0, "sphere dimension must be nonnegative");
    if n == 0 {
        return FreeChainComplex::new(0, &[2], vec![]).expect("valid complex");
    }
    let mut ranks = vec![0usize; n as usize + 1];
    ranks[0] = 1;
    ranks[n as usize] = 1;
    let boundaries = (1..=n as usize)
        .map(|k| IntMatrix::zeros(ranks[k - 1], ranks[k]))
        .collect();
    FreeChainComplex::new(0, &ranks, boundaries).expect("valid complex")
}

/// Cellular chains of `ℝP^n`: one cell per degree, `∂_k = 1 + (−1)^k`.
pub fn rp(n: i64) -> FreeChainComplex {
    assert!(n >= 0, "projective space dimension must be nonnegative");
    let ranks = vec![1usize; n as usize + 1];
    let boundaries = (1..=n)
        .map(|k| IntMatrix::from_rows(&[[if k % 2 == 0 { 2 } else { 0 }]]))
        .collect();
    FreeChainComplex::new(0, &ranks, boundaries).expect("valid complex")
}

/// `ℤ` in degree 0: the unit for the tensor product.
pub fn point() -> FreeChainComplex {
    FreeChainComplex::new(0, &[1], vec![]).expect("valid complex")
}
