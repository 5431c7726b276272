//! Smith and Hermite normal forms over the integers.

use num_traits::{One, Signed, Zero};

use super::int::{div_floor, Int};
use super::matrix::IntMatrix;

/// `U * source * V = D` with `U`, `V` unimodular and `D` diagonal,
/// diagonal entries non-negative and each dividing the next.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub source: IntMatrix,
    u_inv: IntMatrix,
    v_inv: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries `d_1, ..., d_min(rows, cols)`, zeros included.
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }

    pub fn u_inverse(&self) -> &IntMatrix {
        &self.u_inv
    }

    pub fn v_inverse(&self) -> &IntMatrix {
        &self.v_inv
    }

    /// Recompose `U * source * V` and compare to `D` entry by entry.
    pub fn verify(&self) -> bool {
        self.u.mul(&self.source).mul(&self.v) == self.d && self.u.mul(&self.u_inv).is_identity() && self.v.mul(&self.v_inv).is_identity()
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
    // row[dst] += k * row[src]
    fn row_add(&mut self, dst: usize, src: usize, k: &Int) {
        self.a.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        self.u_inv.add_col_multiple(src, dst, &-k);
    }

    fn row_swap(&mut self, x: usize, y: usize) {
        self.a.swap_rows(x, y);
        self.u.swap_rows(x, y);
        self.u_inv.swap_cols(x, y);
    }

    fn row_negate(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    // col[dst] += k * col[src]
    fn col_add(&mut self, dst: usize, src: usize, k: &Int) {
        self.a.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
        self.v_inv.add_row_multiple(src, dst, &-k);
    }

    fn col_swap(&mut self, x: usize, y: usize) {
        self.a.swap_cols(x, y);
        self.v.swap_cols(x, y);
        self.v_inv.swap_rows(x, y);
    }

    /// Nonzero entry of minimal absolute value in the trailing block, ties to
    /// the lowest (row, col) position.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, Int)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let v = &self.a[(i, j)];
                if v.is_zero() {
                    continue;
                }
                let av = v.abs();
                if best.as_ref().is_none_or(|(_, _, b)| av < *b) {
                    best = Some((i, j, av));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

/// Smith normal form with transforms.
///
/// Pivot rule: the nonzero entry of minimal absolute value in the remaining
/// block, ties broken by the lowest `(row, col)` position. The output is a
/// deterministic function of the input.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut t = Tracker {
        a: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    for k in 0..rows.min(cols) {
        let Some((pi, pj)) = t.pivot(k) else { break };
        t.row_swap(k, pi);
        t.col_swap(k, pj);
        loop {
            // clear column k below and row k to the right
            let mut dirty = false;
            for i in k + 1..rows {
                if t.a[(i, k)].is_zero() {
                    continue;
                }
                let q = div_floor(&t.a[(i, k)], &t.a[(k, k)]);
                t.row_add(i, k, &-q);
                if !t.a[(i, k)].is_zero() {
                    dirty = true;
                }
            }
            for j in k + 1..cols {
                if t.a[(k, j)].is_zero() {
                    continue;
                }
                let q = div_floor(&t.a[(k, j)], &t.a[(k, k)]);
                t.col_add(j, k, &-q);
                if !t.a[(k, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder smaller than the pivot survived; re-pivot on row k / col k
                let mut best: Option<(usize, usize, Int)> = None;
                for i in k..rows {
                    let v = &t.a[(i, k)];
                    if !v.is_zero() && best.as_ref().is_none_or(|b| v.abs() < b.2) {
                        best = Some((i, k, v.abs()));
                    }
                }
                for j in k + 1..cols {
                    let v = &t.a[(k, j)];
                    if !v.is_zero() && best.as_ref().is_none_or(|b| v.abs() < b.2) {
                        best = Some((k, j, v.abs()));
                    }
                }
                let (bi, bj, _) = best.expect("pivot row/column cannot be all zero");
                t.row_swap(k, bi);
                t.col_swap(k, bj);
                continue;
            }
            // divisibility of the trailing block
            let p = t.a[(k, k)].clone();
            let offender = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !(&t.a[(i, j)] % &p).is_zero()));
            match offender {
                Some(i) => t.row_add(k, i, &Int::one()),
                None => break,
            }
        }
        if t.a[(k, k)].is_negative() {
            t.row_negate(k);
        }
    }
    SmithDecomposition { u: t.u, d: t.a, v: t.v, source: m.clone(), u_inv: t.u_inv, v_inv: t.v_inv }
}

/// Row Hermite normal form: zero rows dropped, pivots positive and strictly
/// increasing in column, entries above each pivot reduced into `[0, pivot)`.
/// The row span is unchanged.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            // smallest nonzero |a[i][c]| for i >= r
            let mut best: Option<(usize, Int)> = None;
            for i in r..rows {
                let v = &a[(i, c)];
                if !v.is_zero() && best.as_ref().is_none_or(|b| v.abs() < b.1) {
                    best = Some((i, v.abs()));
                }
            }
            let Some((bi, _)) = best else { break };
            a.swap_rows(r, bi);
            let mut done = true;
            for i in r + 1..rows {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let q = div_floor(&a[(i, c)], &a[(r, c)]);
                a.add_row_multiple(i, r, &-q);
                if !a[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                if a[(r, c)].is_negative() {
                    a.negate_row(r);
                }
                for i in 0..r {
                    let q = div_floor(&a[(i, c)], &a[(r, c)]);
                    a.add_row_multiple(i, r, &-q);
                }
                r += 1;
                break;
            }
        }
    }
    a.select_rows(&(0..r).collect::<Vec<_>>())
}

/// Reduce `v` against the rows of a Hermite normal form; returns the remainder.
/// The remainder is zero exactly when `v` lies in the row span.
pub fn hnf_reduce(hnf: &IntMatrix, v: &[Int]) -> Vec<Int> {
    let mut v = v.to_vec();
    for i in 0..hnf.rows() {
        let row = hnf.row(i);
        let Some(p) = row.iter().position(|x| !x.is_zero()) else { continue };
        if v[p].is_zero() {
            continue;
        }
        let q = div_floor(&v[p], &row[p]);
        if !q.is_zero() {
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &q * y;
                }
            }
        }
    }
    v
}

pub fn hnf_contains(hnf: &IntMatrix, v: &[Int]) -> bool {
    hnf_reduce(hnf, v).iter().all(Zero::is_zero)
}
