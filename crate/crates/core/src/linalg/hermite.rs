use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{Int, IntMatrix};

/// Column Hermite form `A·T = H` with `T` unimodular.
///
/// The first `pivots.len()` columns of `H` are nonzero; column `k` has its
/// leading entry at row `pivots[k]`, the pivot rows strictly increase, pivots
/// are positive, and entries left of a pivot in its row lie in `[0, pivot)`.
/// The remaining columns of `H` are zero, so the matching columns of `T` are
/// a basis of the kernel.
#[derive(Clone, Debug)]
pub struct ColumnHermite {
    pub h: IntMatrix,
    pub t: IntMatrix,
    pub pivots: Vec<usize>,
}

impl ColumnHermite {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn image_basis(&self) -> IntMatrix {
        self.h.block(0, 0, self.h.rows(), self.rank())
    }

    pub fn kernel_basis(&self) -> IntMatrix {
        let n = self.t.cols();
        self.t.block(0, self.rank(), self.t.rows(), n - self.rank())
    }
}

pub fn column_hermite(a: &IntMatrix) -> ColumnHermite {
    hermite_impl(a, true)
}

/// Hermite form without the transform; cheaper when only the image is needed.
pub fn column_hermite_image(a: &IntMatrix) -> IntMatrix {
    hermite_impl(a, false).image_basis()
}

fn hermite_impl(a: &IntMatrix, track: bool) -> ColumnHermite {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut t = if track { IntMatrix::identity(n) } else { IntMatrix::zeros(0, n) };
    let mut pivots = Vec::new();
    let mut k = 0;
    for i in 0..m {
        if k == n {
            break;
        }
        for j in k + 1..n {
            if h[(i, j)].is_zero() {
                continue;
            }
            if h[(i, k)].is_zero() {
                h.swap_cols(k, j);
                if track {
                    t.swap_cols(k, j);
                }
                continue;
            }
            let a = h[(i, k)].clone();
            let b = h[(i, j)].clone();
            if (&b % &a).is_zero() {
                let q = -(&b / &a);
                h.add_col_multiple(j, k, &q);
                if track {
                    t.add_col_multiple(j, k, &q);
                }
                continue;
            }
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let ag = &a / &g;
            let bg = &b / &g;
            combine_cols(&mut h, k, j, &x, &y, &bg, &ag);
            if track {
                combine_cols(&mut t, k, j, &x, &y, &bg, &ag);
            }
        }
        if h[(i, k)].is_zero() {
            continue;
        }
        if h[(i, k)].is_negative() {
            h.negate_col(k);
            if track {
                t.negate_col(k);
            }
        }
        let p = h[(i, k)].clone();
        for l in 0..k {
            let q = h[(i, l)].div_floor(&p);
            if !q.is_zero() {
                let nq = -q;
                h.add_col_multiple(l, k, &nq);
                if track {
                    t.add_col_multiple(l, k, &nq);
                }
            }
        }
        pivots.push(i);
        k += 1;
    }
    ColumnHermite { h, t, pivots }
}

/// Replaces columns `(k, j)` by `(x·c_k + y·c_j, −(b/g)·c_k + (a/g)·c_j)`.
fn combine_cols(m: &mut IntMatrix, k: usize, j: usize, x: &Int, y: &Int, bg: &Int, ag: &Int) {
    for r in 0..m.rows() {
        let ck = m[(r, k)].clone();
        let cj = m[(r, j)].clone();
        if ck.is_zero() && cj.is_zero() {
            continue;
        }
        m[(r, k)] = x * &ck + y * &cj;
        m[(r, j)] = ag * &cj - bg * &ck;
    }
}

/// Solves `H·y = b` for `H` in column echelon form with the given pivot rows.
/// Returns `None` when `b` is not in the integer column span.
pub fn echelon_solve(h: &IntMatrix, pivots: &[usize], b: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(h.rows(), b.len(), "right-hand side length mismatch");
    let mut rem = b.to_vec();
    let mut y = vec![Int::zero(); pivots.len()];
    let mut row = 0;
    for (k, &p) in pivots.iter().enumerate() {
        while row < p {
            if !rem[row].is_zero() {
                return None;
            }
            row += 1;
        }
        let (q, r) = rem[p].div_rem(&h[(p, k)]);
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for i in p..h.rows() {
                let e = &h[(i, k)];
                if !e.is_zero() {
                    rem[i] -= &q * e;
                }
            }
        }
        y[k] = q;
    }
    if rem.iter().all(Zero::is_zero) {
        Some(y)
    } else {
        None
    }
}

/// Pivot rows of a matrix already in column echelon form.
pub fn echelon_pivots(h: &IntMatrix) -> Vec<usize> {
    (0..h.cols())
        .map(|k| {
            (0..h.rows())
                .find(|&i| !h[(i, k)].is_zero())
                .expect("zero column in echelon basis")
        })
        .collect()
}
