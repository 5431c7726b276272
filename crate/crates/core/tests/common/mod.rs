//! Independent oracles. Nothing here calls the library's Smith, Hermite or
//! lattice routines; module and group data are only read.

#![allow(dead_code)]

use std::collections::BTreeSet;

use galcoh::abelian::int::to_i64;
use galcoh::abelian::{IntMatrix, InvariantFactors};
use galcoh::gmodule::GModule;
use galcoh::group::FiniteGroup;

pub fn to_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.row_vecs().iter().map(|r| r.iter().map(|x| to_i64(x).expect("small entry")).collect()).collect()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Bareiss elimination on a square matrix.
pub fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Rank and non-unit invariant factors from determinantal divisors:
/// `d_k = gcd of k x k minors`, factor `k` is `d_k / d_(k-1)`.
pub fn determinantal(m: &[Vec<i64>]) -> (usize, Vec<i128>) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut divisors = vec![1i128];
    for k in 1..=rows.min(cols) {
        let mut d = 0i128;
        for r in combinations(rows, k) {
            for c in combinations(cols, k) {
                let minor: Vec<Vec<i128>> = r.iter().map(|&i| c.iter().map(|&j| m[i][j] as i128).collect()).collect();
                d = gcd(d, det(&minor));
            }
        }
        if d == 0 {
            break;
        }
        divisors.push(d);
    }
    let rank = divisors.len() - 1;
    let factors = (1..=rank).map(|k| divisors[k] / divisors[k - 1]).filter(|&f| f != 1).collect();
    (rank, factors)
}

fn sub_identity(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter().enumerate().map(|(i, r)| r.iter().enumerate().map(|(j, x)| x - i64::from(i == j)).collect()).collect()
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter().map(|r| (0..n).map(|j| r.iter().zip(b).map(|(x, row)| x * row[j]).sum()).collect()).collect()
}

/// `H^d(Z/n, M)` from the periodic resolution, for `M` free with generator
/// matrix `t`: `H^0 = ker(t - 1)`, odd degrees `ker N / im(t - 1)`, even
/// positive degrees `ker(t - 1) / im N`. For `A B = 0` with `ker A`
/// saturated, `ker A / im B` has torsion equal to that of `coker B` and free
/// rank `dim - rank A - rank B`.
pub fn periodic_cohomology(t: &[Vec<i64>], n: usize, degree: usize) -> (usize, Vec<i128>) {
    let r = t.len();
    let mut norm = vec![vec![0i64; r]; r];
    let mut power: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..n {
        for i in 0..r {
            for j in 0..r {
                norm[i][j] += power[i][j];
            }
        }
        power = mat_mul(t, &power);
    }
    let t1 = sub_identity(t);
    let (a, b) = match degree {
        0 => return (r - determinantal(&t1).0, vec![]),
        d if d % 2 == 1 => (norm, t1),
        _ => (t1, norm),
    };
    let (rank_a, _) = determinantal(&a);
    let (rank_b, torsion) = determinantal(&b);
    (r - rank_a - rank_b, torsion)
}

/// Number of elements killed by `k` in a group with these invariant factors.
pub fn killed_by(f: &InvariantFactors, k: i128) -> Option<i128> {
    if f.free_rank > 0 {
        return None;
    }
    Some(f.torsion.iter().map(|t| gcd(i128::try_from(t).unwrap(), k)).product())
}

/// Brute-force `H^1(g, N)` and `Sh^1_omega(g, N)` for `N` free with
/// `e H^1 = 0`. The connecting map of `0 -> N -e-> N -> N/eN -> 0` gives
/// `H^1(g, N) = (N/eN)^g / image(N^g)`, and `x` goes to the cocycle
/// `h -> (h x - x) / e`. The same holds over every cyclic subgroup.
pub struct BruteH1 {
    pub e: i64,
    /// residues fixed by `g`
    pub fixed: Vec<Vec<i64>>,
    /// image of `N^g`
    pub invariants: BTreeSet<Vec<i64>>,
    /// residues that die on every cyclic subgroup
    pub sha: Vec<Vec<i64>>,
}

fn residues(r: usize, e: i64) -> Vec<Vec<i64>> {
    (0..(e as usize).pow(r as u32))
        .map(|mut t| {
            (0..r)
                .map(|_| {
                    let d = (t % e as usize) as i64;
                    t /= e as usize;
                    d
                })
                .collect()
        })
        .collect()
}

fn apply(a: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    a.iter().map(|r| r.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
}

fn reduce(x: &[i64], e: i64) -> Vec<i64> {
    x.iter().map(|v| v.rem_euclid(e)).collect()
}

/// Residues mod `e` of integer vectors fixed by all of `mats`, searched in a box.
fn invariant_image(mats: &[Vec<Vec<i64>>], r: usize, e: i64) -> BTreeSet<Vec<i64>> {
    residues(r, 2 * e + 1)
        .into_iter()
        .map(|v| v.iter().map(|x| x - e).collect::<Vec<_>>())
        .filter(|v| mats.iter().all(|a| apply(a, v) == *v))
        .map(|v| reduce(&v, e))
        .collect()
}

impl BruteH1 {
    pub fn new(g: &FiniteGroup, m: &GModule, e: i64) -> Self {
        assert!(m.underlying().is_free());
        let r = m.rank();
        let gens: Vec<Vec<Vec<i64>>> = g.generators().iter().map(|&s| to_rows(m.element_matrix(s))).collect();
        let fixed: Vec<Vec<i64>> = residues(r, e).into_iter().filter(|x| gens.iter().all(|a| reduce(&apply(a, x), e) == *x)).collect();
        let invariants = invariant_image(&gens, r, e);
        let sha = fixed
            .iter()
            .filter(|x| g.elements().all(|c| invariant_image(&[to_rows(m.element_matrix(c))], r, e).contains(*x)))
            .cloned()
            .collect();
        BruteH1 { e, fixed, invariants, sha }
    }

    pub fn h1_order(&self) -> usize {
        self.fixed.len() / self.invariants.len()
    }

    pub fn sha_order(&self) -> usize {
        self.sha.len() / self.invariants.len()
    }

    /// Classes of `set` killed by `k`.
    pub fn killed_by(&self, set: &[Vec<i64>], k: i64) -> usize {
        set.iter().filter(|x| self.invariants.contains(&reduce(&x.iter().map(|v| v * k).collect::<Vec<_>>(), self.e))).count()
            / self.invariants.len()
    }

    /// The cocycle `h -> (h x - x) / e` as a flat cochain.
    pub fn cocycle(&self, g: &FiniteGroup, m: &GModule, x: &[i64]) -> Vec<i64> {
        g.elements()
            .flat_map(|h| {
                let hx = apply(&to_rows(m.element_matrix(h)), x);
                hx.iter().zip(x).map(|(a, b)| (a - b) / self.e).collect::<Vec<_>>()
            })
            .collect()
    }
}

/// `|H^2(g, Z/e)|` over trivial coefficients, by enumerating normalized cocycles.
pub fn h2_trivial_mod(g: &FiniteGroup, e: i64) -> usize {
    let n = g.order();
    let id = g.identity();
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| a != id && b != id).collect();
    let mut slot = vec![None; n * n];
    for (i, &(a, b)) in cells.iter().enumerate() {
        slot[a * n + b] = Some(i);
    }
    let value = |f: &[i64], a: usize, b: usize| slot[a * n + b].map_or(0, |i| f[i]);
    let mut cocycles = 0usize;
    for f in residues(cells.len(), e) {
        let ok = (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n)
                    .all(|c| (value(&f, b, c) - value(&f, g.mul(a, b), c) + value(&f, a, g.mul(b, c)) - value(&f, a, b)).rem_euclid(e) == 0)
            })
        });
        cocycles += usize::from(ok);
    }
    let others: Vec<usize> = (0..n).filter(|&a| a != id).collect();
    let phi = |p: &[i64], a: usize| if a == id { 0 } else { p[others.iter().position(|&x| x == a).unwrap()] };
    let coboundaries: BTreeSet<Vec<i64>> = residues(others.len(), e)
        .into_iter()
        .map(|p| cells.iter().map(|&(a, b)| (phi(&p, b) - phi(&p, g.mul(a, b)) + phi(&p, a)).rem_euclid(e)).collect())
        .collect();
    cocycles / coboundaries.len()
}

/// `|Hom(g, Z/e)|`.
pub fn hom_count(g: &FiniteGroup, e: i64) -> usize {
    let n = g.order();
    residues(n, e).into_iter().filter(|p| (0..n).all(|a| (0..n).all(|b| (p[a] + p[b] - p[g.mul(a, b)]).rem_euclid(e) == 0))).count()
}

/// `|H^3(g, Z)|` when `e` is a multiple of `|g|`: universal coefficients give
/// `0 -> Hom(g, Z/e) -> H^2(g, Z/e) -> H^3(g, Z) -> 0`.
pub fn h3_integral_order(g: &FiniteGroup, e: i64) -> usize {
    h2_trivial_mod(g, e) / hom_count(g, e)
}
