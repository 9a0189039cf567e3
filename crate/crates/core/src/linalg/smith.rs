use crate::int::Int;
use crate::linalg::matrix::IntMatrix;

/// Smith normal form `U * A * V = D` with `U`, `V` unimodular.
///
/// `u_inv` is carried along so cokernel presentations can lift classes
/// without a separate inversion.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Diagonal entries `d_1 | d_2 | ...`, length `min(rows, cols)`.
    pub fn diagonal(&self) -> alloc::vec::Vec<Int> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
    }

    /// `row[dst] += f * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, f: &Int) {
        self.a.add_row_multiple(dst, src, f);
        self.u.add_row_multiple(dst, src, f);
        self.u_inv.add_col_multiple(src, dst, &-f);
    }

    /// `col[dst] += f * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, f: &Int) {
        self.a.add_col_multiple(dst, src, f);
        self.v.add_col_multiple(dst, src, f);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work { a: a.clone(), u: IntMatrix::identity(m), u_inv: IntMatrix::identity(m), v: IntMatrix::identity(n) };

    for t in 0..m.min(n) {
        // Smallest nonzero entry of the trailing block goes to (t, t).
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = &w.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < w.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        w.swap_rows(t, bi);
        w.swap_cols(t, bj);

        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if w.a[(i, t)].is_zero() {
                    continue;
                }
                let q = w.a[(i, t)].div_floor(&w.a[(t, t)]);
                w.add_row(i, t, &-q);
                if !w.a[(i, t)].is_zero() {
                    w.swap_rows(i, t);
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if w.a[(t, j)].is_zero() {
                    continue;
                }
                let q = w.a[(t, j)].div_floor(&w.a[(t, t)]);
                w.add_col(j, t, &-q);
                if !w.a[(t, j)].is_zero() {
                    w.swap_cols(j, t);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            let pivot = w.a[(t, t)].clone();
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !pivot.divides(&w.a[(i, j)])));
            match offender {
                Some(i) => w.add_row(t, i, &Int::ONE),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.negate_row(t);
        }
    }

    Smith { u: w.u, u_inv: w.u_inv, d: w.a, v: w.v }
}
