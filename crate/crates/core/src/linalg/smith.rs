use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{Int, IntMatrix};

/// `U·A·V = S` with `S` diagonal, `d_1 | d_2 | … | d_rank` positive.
/// The inverses of `U` and `V` are carried along because the group layer
/// needs both directions of the change of basis.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    pub fn invariant_factors(&self) -> Vec<Int> {
        (0..self.rank).map(|i| self.s[(i, i)].clone()).collect()
    }
}

struct Tracker {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Tracker {
    fn add_row(&mut self, t: usize, s: usize, q: &Int) {
        self.a.add_row_multiple(t, s, q);
        self.u.add_row_multiple(t, s, q);
        self.u_inv.add_col_multiple(s, t, &-q);
    }

    fn add_col(&mut self, t: usize, s: usize, q: &Int) {
        self.a.add_col_multiple(t, s, q);
        self.v.add_col_multiple(t, s, q);
        self.v_inv.add_row_multiple(s, t, &-q);
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut tr = Tracker {
        a: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    let mut rank = 0;
    for t in 0..m.min(n) {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = &tr.a[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| x.abs() < tr.a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            tr.swap_rows(t, pi);
            tr.swap_cols(t, pj);
            let p = tr.a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..m {
                if tr.a[(i, t)].is_zero() {
                    continue;
                }
                let q = tr.a[(i, t)].div_floor(&p);
                tr.add_row(i, t, &-q);
                clean &= tr.a[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if tr.a[(t, j)].is_zero() {
                    continue;
                }
                let q = tr.a[(t, j)].div_floor(&p);
                tr.add_col(j, t, &-q);
                clean &= tr.a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !(&tr.a[(i, j)] % &p).is_zero());
            match bad {
                Some((i, _)) => tr.add_row(t, i, &Int::from(1)),
                None => break,
            }
        }
        if tr.a[(t, t)].is_zero() {
            break;
        }
        if tr.a[(t, t)].is_negative() {
            tr.negate_row(t);
        }
        rank = t + 1;
    }
    SmithDecomposition {
        u: tr.u,
        s: tr.a,
        v: tr.v,
        u_inv: tr.u_inv,
        v_inv: tr.v_inv,
        rank,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SmithDecomposition {
        let d = smith_normal_form(a);
        assert_eq!(d.u.mul(a).mul(&d.v), d.s);
        assert_eq!(d.u.mul(&d.u_inv), IntMatrix::identity(a.rows()));
        assert_eq!(d.v.mul(&d.v_inv), IntMatrix::identity(a.cols()));
        d
    }

    #[test]
    fn identity_and_zero() {
        let d = check(&IntMatrix::identity(2));
        assert_eq!(d.s, IntMatrix::identity(2));
        assert_eq!(d.rank, 2);
        let z = check(&IntMatrix::zeros(1, 1));
        assert_eq!(z.rank, 0);
        assert!(z.s.is_zero());
    }

    #[test]
    fn diag_4_6() {
        let d = check(&IntMatrix::from_rows(&[[4, 0], [0, 6]]));
        assert_eq!(d.s, IntMatrix::from_rows(&[[2, 0], [0, 12]]));
    }

    #[test]
    fn empty_shapes() {
        for (r, c) in [(0, 0), (0, 3), (3, 0)] {
            let d = check(&IntMatrix::zeros(r, c));
            assert_eq!(d.rank, 0);
        }
    }
}
