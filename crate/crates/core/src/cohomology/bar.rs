//! Inhomogeneous cochains `C^n = Maps(g^n, M)`.
//!
//! A cochain is a vector of `|g|^n` blocks of module coordinates; tuple
//! `(g_1, ..., g_n)` sits at block `g_1 |g|^(n-1) + ... + g_n`.

use crate::abelian::int::rem_euclid;
use crate::abelian::{Int, IntMatrix, SparseMatrix};
use crate::group::FiniteGroup;

pub(crate) fn tuple_count(order: usize, n: usize) -> usize {
    order.pow(n as u32)
}

fn decode(mut t: usize, order: usize, n: usize, out: &mut [usize]) {
    for i in (0..n).rev() {
        out[i] = t % order;
        t /= order;
    }
}

fn encode(tuple: &[usize], order: usize) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * order + x)
}

/// `d^n : C^n -> C^(n+1)`:
/// `(df)(g_1..g_{n+1}) = g_1 f(g_2..) + sum_i (-1)^i f(..g_i g_{i+1}..) + (-1)^(n+1) f(g_1..g_n)`.
///
/// `elements[x]` is the action matrix of element `x`; row `(tuple, j)` is
/// reduced modulo `moduli[j]` when given.
pub(crate) fn bar_differential(g: &FiniteGroup, elements: &[IntMatrix], r: usize, n: usize, moduli: Option<&[Int]>) -> SparseMatrix {
    let order = g.order();
    let cols = tuple_count(order, n) * r;
    let mut d = SparseMatrix::new(cols);
    let mut tuple = vec![0usize; n + 1];
    let mut merged = vec![0usize; n];
    let one = Int::from(1u8);
    for t in 0..tuple_count(order, n + 1) {
        decode(t, order, n + 1, &mut tuple);
        let tail = encode(&tuple[1..], order);
        let head = encode(&tuple[..n], order);
        let a = &elements[tuple[0]];
        for j in 0..r {
            let mut row: Vec<(usize, Int)> = Vec::with_capacity(r + n + 1);
            for k in 0..r {
                let v = &a[(j, k)];
                if *v != Int::from(0u8) {
                    row.push((tail * r + k, v.clone()));
                }
            }
            for i in 0..n {
                for (m, slot) in merged.iter_mut().enumerate() {
                    *slot = match m.cmp(&i) {
                        std::cmp::Ordering::Less => tuple[m],
                        std::cmp::Ordering::Equal => g.mul(tuple[i], tuple[i + 1]),
                        std::cmp::Ordering::Greater => tuple[m + 1],
                    };
                }
                let c = encode(&merged, order) * r + j;
                row.push((c, if (i + 1) % 2 == 0 { one.clone() } else { -one.clone() }));
            }
            row.push((head * r + j, if (n + 1).is_multiple_of(2) { one.clone() } else { -one.clone() }));
            if let Some(md) = moduli {
                if md[j] != Int::from(0u8) {
                    for e in row.iter_mut() {
                        e.1 = rem_euclid(&e.1, &md[j]);
                    }
                }
            }
            d.push_row(row);
        }
    }
    d
}

/// Blockwise `f(c)(tuple) = F c(tuple)` on `count` tuples.
pub(crate) fn blockwise(f: &IntMatrix, count: usize, moduli: Option<&[Int]>) -> SparseMatrix {
    let (rt, rs) = (f.rows(), f.cols());
    let mut out = SparseMatrix::new(count * rs);
    for t in 0..count {
        for i in 0..rt {
            let row: Vec<(usize, Int)> = (0..rs)
                .filter_map(|k| {
                    let mut v = f[(i, k)].clone();
                    if let Some(md) = moduli {
                        v = rem_euclid(&v, &md[i]);
                    }
                    (v != Int::from(0u8)).then(|| (t * rs + k, v))
                })
                .collect();
            out.push_row(row);
        }
    }
    out
}

/// Restrict a cochain along `emb: h -> g`, block size `r`.
pub(crate) fn restrict_cochain(c: &[Int], g_order: usize, emb: &[usize], n: usize, r: usize) -> Vec<Int> {
    let h_order = emb.len();
    let mut out = Vec::with_capacity(tuple_count(h_order, n) * r);
    let mut tuple = vec![0usize; n];
    for t in 0..tuple_count(h_order, n) {
        decode(t, h_order, n, &mut tuple);
        let gt = tuple.iter().fold(0, |acc, &x| acc * g_order + emb[x]);
        out.extend_from_slice(&c[gt * r..(gt + 1) * r]);
    }
    out
}
