//! Smith normal form with unimodular transforms.

use super::int::Int;
use super::matrix::Matrix;

/// `u * m * v == d`, with `d` diagonal, nonnegative, and `d[i] | d[i+1]`.
/// `u_inv` is the inverse of `u`, kept because quotient constructions need it.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: Matrix,
    pub u_inv: Matrix,
    pub v: Matrix,
    pub diag: Vec<Int>,
    pub rank: usize,
}

impl Snf {
    pub fn d_matrix(&self) -> Matrix {
        let mut d = Matrix::zero(self.u.rows(), self.v.cols());
        for (i, x) in self.diag.iter().enumerate() {
            d.set(i, i, x.clone());
        }
        d
    }
}

struct Work {
    a: Matrix,
    u: Matrix,
    u_inv: Matrix,
    v: Matrix,
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

    // row i -= c * row j
    fn row_sub(&mut self, i: usize, j: usize, c: &Int) {
        self.a.row_sub_mul(i, j, c);
        self.u.row_sub_mul(i, j, c);
        // inverse: column j += c * column i
        self.u_inv.col_sub_mul(j, i, &-c);
    }

    fn col_sub(&mut self, i: usize, j: usize, c: &Int) {
        self.a.col_sub_mul(i, j, c);
        self.v.col_sub_mul(i, j, c);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

/// Smallest nonzero |entry| in the trailing block starting at `k`; ties go to the
/// lowest (row, column) in row-major order.
fn pick_pivot(a: &Matrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in k..a.rows() {
        for j in k..a.cols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if x.cmp_abs(a.get(bi, bj)) == std::cmp::Ordering::Less {
                        best = Some((i, j));
                    }
                }
            }
            if x.is_unit() && best == Some((i, j)) {
                // nothing can beat a unit, and later ties lose
                return best;
            }
        }
    }
    best
}

pub fn smith_normal_form(m: &Matrix) -> Snf {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.clone(),
        u: Matrix::identity(rows),
        u_inv: Matrix::identity(rows),
        v: Matrix::identity(cols),
    };
    let mut k = 0;
    while k < rows.min(cols) {
        let Some((pi, pj)) = pick_pivot(&w.a, k) else { break };
        w.swap_rows(k, pi);
        w.swap_cols(k, pj);
        loop {
            let mut dirty = false;
            let p = w.a.get(k, k).clone();
            for i in k + 1..rows {
                let x = w.a.get(i, k).clone();
                if x.is_zero() {
                    continue;
                }
                let (q, r) = x.div_rem_euclid(&p);
                w.row_sub(i, k, &q);
                if !r.is_zero() {
                    dirty = true;
                }
            }
            for j in k + 1..cols {
                let x = w.a.get(k, j).clone();
                if x.is_zero() {
                    continue;
                }
                let (q, r) = x.div_rem_euclid(&p);
                w.col_sub(j, k, &q);
                if !r.is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a smaller remainder exists in row or column k; re-pivot on it
                let (pi, pj) = pick_pivot(&w.a, k).expect("nonzero block");
                w.swap_rows(k, pi);
                w.swap_cols(k, pj);
                continue;
            }
            // row and column k are clear; enforce divisibility of the trailing block
            let mut offender = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if !p.divides(w.a.get(i, j)) {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    w.row_sub(k, i, &Int::from(-1));
                }
                None => break,
            }
        }
        if w.a.get(k, k).is_negative() {
            w.negate_row(k);
        }
        k += 1;
    }
    let n = rows.min(cols);
    let diag: Vec<Int> = (0..n).map(|i| w.a.get(i, i).clone()).collect();
    let rank = diag.iter().filter(|x| !x.is_zero()).count();
    Snf { u: w.u, u_inv: w.u_inv, v: w.v, diag, rank }
}
