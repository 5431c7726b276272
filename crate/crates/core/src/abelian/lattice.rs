//! Lattice kernels and exact solvers that scale to cochain-sized systems.
//!
//! Both routines work in the space of unknowns: a basis of candidate vectors
//! is refined one constraint row at a time by unimodular column operations,
//! so the cost is governed by the number of unknowns rather than the number
//! of equations.

use num_traits::{Signed, Zero};

use super::int::{gcd, rem_euclid, Int};
use super::matrix::{axpy, IntMatrix, SparseRow};
use super::snf::hermite_normal_form;

/// One linear constraint `row . x = 0 (mod modulus)`; modulus zero means exact.
#[derive(Clone, Debug)]
pub struct Congruence {
    pub row: SparseRow,
    pub modulus: Int,
}

/// Basis of `{x in Z^n : row_i . x = 0 mod m_i for all i}`, returned as
/// column vectors in Hermite-reduced order.
pub fn congruence_kernel(n: usize, constraints: impl IntoIterator<Item = Congruence>) -> Vec<Vec<Int>> {
    let mut basis: Vec<Vec<Int>> = (0..n)
        .map(|i| {
            let mut v = vec![Int::zero(); n];
            v[i] = Int::from(1u8);
            v
        })
        .collect();
    for c in constraints {
        if basis.is_empty() {
            break;
        }
        if c.row.is_empty() {
            continue;
        }
        let m = c.modulus.abs();
        let mut vals: Vec<Int> = basis
            .iter()
            .map(|col| {
                let mut acc = Int::zero();
                for (l, a) in &c.row {
                    let b = &col[*l];
                    if !b.is_zero() {
                        acc += a * b;
                    }
                }
                rem_euclid(&acc, &m)
            })
            .collect();
        let Some(p) = reduce_to_single(&mut basis, &mut vals, &m) else { continue };
        if m.is_zero() {
            basis.remove(p);
        } else {
            let g = gcd(&vals[p], &m);
            let scale = &m / g;
            if scale != Int::from(1u8) {
                for x in basis[p].iter_mut() {
                    *x *= &scale;
                }
            }
        }
    }
    canonical_basis(n, basis)
}

/// Gcd-combine columns until at most one has a nonzero value; returns its index.
fn reduce_to_single(basis: &mut [Vec<Int>], vals: &mut [Int], m: &Int) -> Option<usize> {
    loop {
        let mut piv: Option<usize> = None;
        let mut count = 0;
        for (j, v) in vals.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            count += 1;
            if piv.is_none_or(|p| v.abs() < vals[p].abs()) {
                piv = Some(j);
            }
        }
        let p = piv?;
        if count == 1 {
            return Some(p);
        }
        let pv = vals[p].clone();
        let pcol = basis[p].clone();
        for j in 0..vals.len() {
            if j == p || vals[j].is_zero() {
                continue;
            }
            let q = &vals[j] / &pv;
            if !q.is_zero() {
                axpy(&mut basis[j], &-&q, &pcol);
                vals[j] -= &q * &pv;
            }
            if !m.is_zero() {
                vals[j] = rem_euclid(&vals[j], m);
            }
        }
    }
}

/// Hermite-reduce a generating set of a sublattice of `Z^n`, returned as columns.
pub fn canonical_basis(n: usize, gens: Vec<Vec<Int>>) -> Vec<Vec<Int>> {
    if gens.is_empty() {
        return gens;
    }
    let rows = IntMatrix::from_rows(gens, n);
    hermite_normal_form(&rows).row_vecs()
}

/// Column echelon form `A * V = E` of a generator matrix, kept in factored
/// form for repeated exact solves of `A c = y`.
#[derive(Clone, Debug)]
pub struct ColumnEchelon {
    dim: usize,
    ngens: usize,
    /// (pivot row, image column E_j, transform column v_j)
    pivots: Vec<(usize, Vec<Int>, Vec<Int>)>,
    /// transform columns spanning the kernel of A
    kernel: Vec<Vec<Int>>,
}

impl ColumnEchelon {
    /// `gens` are the columns of `A`, each of length `dim`.
    pub fn new(dim: usize, gens: &[Vec<Int>]) -> Self {
        let k = gens.len();
        let mut image: Vec<Vec<Int>> = gens.to_vec();
        let mut trans: Vec<Vec<Int>> = (0..k)
            .map(|i| {
                let mut v = vec![Int::zero(); k];
                v[i] = Int::from(1u8);
                v
            })
            .collect();
        let mut active: Vec<usize> = (0..k).collect();
        let mut pivots = Vec::new();
        let zero = Int::zero();
        for r in 0..dim {
            if active.is_empty() {
                break;
            }
            loop {
                let mut piv: Option<usize> = None;
                let mut count = 0;
                for &j in &active {
                    let v = &image[j][r];
                    if v.is_zero() {
                        continue;
                    }
                    count += 1;
                    if piv.is_none_or(|p| v.abs() < image[p][r].abs()) {
                        piv = Some(j);
                    }
                }
                let Some(p) = piv else { break };
                if count == 1 {
                    active.retain(|&j| j != p);
                    pivots.push((r, std::mem::take(&mut image[p]), std::mem::take(&mut trans[p])));
                    break;
                }
                let pv = image[p][r].clone();
                let (pimg, ptr) = (image[p].clone(), trans[p].clone());
                for &j in &active {
                    if j == p || image[j][r] == zero {
                        continue;
                    }
                    let q = &image[j][r] / &pv;
                    if !q.is_zero() {
                        let nq = -q;
                        axpy(&mut image[j], &nq, &pimg);
                        axpy(&mut trans[j], &nq, &ptr);
                    }
                }
            }
        }
        let kernel = active.into_iter().map(|j| std::mem::take(&mut trans[j])).collect();
        ColumnEchelon { dim, ngens: k, pivots, kernel }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Relations among the generators (a basis of `ker A`).
    pub fn kernel(&self) -> &[Vec<Int>] {
        &self.kernel
    }

    /// Some `c` with `A c = y`, or `None` if `y` is outside the lattice.
    pub fn solve(&self, y: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(y.len(), self.dim, "right-hand side has wrong length");
        let mut r = y.to_vec();
        let mut c = vec![Int::zero(); self.ngens];
        for (row, img, tr) in &self.pivots {
            if r[*row].is_zero() {
                continue;
            }
            let p = &img[*row];
            if !(&r[*row] % p).is_zero() {
                return None;
            }
            let q = &r[*row] / p;
            axpy(&mut r, &-&q, img);
            axpy(&mut c, &q, tr);
        }
        r.iter().all(Zero::is_zero).then_some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::super::int::int;
    use super::*;

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(c, v)| (c, int(v))).collect()
    }

    #[test]
    fn exact_kernel() {
        // a + b = 0 in Z^2
        let k = congruence_kernel(2, [Congruence { row: row(&[(0, 1), (1, 1)]), modulus: int(0) }]);
        assert_eq!(k, vec![vec![int(1), int(-1)]]);
    }

    #[test]
    fn modular_kernel() {
        // 2a + 3b = 0 mod 6  ->  index-6 sublattice of Z^2
        let k = congruence_kernel(2, [Congruence { row: row(&[(0, 2), (1, 3)]), modulus: int(6) }]);
        let det = IntMatrix::from_rows(k.clone(), 2).determinant();
        assert_eq!(det.abs(), int(6));
        for v in &k {
            assert!(((int(2) * &v[0] + int(3) * &v[1]) % int(6)).is_zero());
        }
    }

    #[test]
    fn echelon_solves_and_rejects() {
        let gens = vec![vec![int(2), int(0), int(2)], vec![int(0), int(3), int(3)]];
        let e = ColumnEchelon::new(3, &gens);
        assert_eq!(e.rank(), 2);
        let c = e.solve(&[int(4), int(-3), int(1)]).unwrap();
        assert_eq!(c, vec![int(2), int(-1)]);
        assert!(e.solve(&[int(1), int(0), int(1)]).is_none());
        assert!(e.solve(&[int(2), int(0), int(0)]).is_none());
    }

    #[test]
    fn echelon_kernel_of_dependent_gens() {
        let gens = vec![vec![int(1), int(1)], vec![int(2), int(2)], vec![int(0), int(1)]];
        let e = ColumnEchelon::new(2, &gens);
        assert_eq!(e.rank(), 2);
        assert_eq!(e.kernel().len(), 1);
        let z = &e.kernel()[0];
        for i in 0..2 {
            let s = (0..3).fold(Int::zero(), |acc, j| acc + &gens[j][i] * &z[j]);
            assert!(s.is_zero());
        }
    }
}
