//! Group cohomology `H^0..H^2` and hypercohomology of two-term complexes.
//!
//! Everything is computed on inhomogeneous cochains. Modules are first put
//! in Smith coordinates, so a cochain space is `prod Z/mu_j` over tuples.
//!
//! Two kernel strategies exist and must agree:
//!
//! * the generic path computes `Z^n` as a congruence kernel of `d^n` and
//!   divides by the image of `d^(n-1)` plus the relations;
//! * the free path, valid when every cochain space is free and `H^n` is
//!   killed by `N = |g|`, uses `H^n = L / (N Z^k + ker B)` where `B = d^(n-1)`,
//!   `k = rank C^(n-1)` and `L = {c : B c = 0 mod N}`; the class of `c` is
//!   the cocycle `B c / N`. Its unknowns live one degree lower.

mod bar;
mod hyper;

use std::sync::Arc;

use num_traits::Zero;

use crate::abelian::lattice::{congruence_kernel, ColumnEchelon, Congruence};
use crate::abelian::{AbHom, Int, IntMatrix, InvariantFactors, PresentedAbelianGroup, SparseMatrix, Subquotient};
use crate::error::{Error, Result};
use crate::gmodule::{restrict, GModule};
use crate::group::{FiniteGroup, Subgroup};

pub use hyper::{cochain_map, connecting_map, hyper_to_source, hypercohomology, hypercohomology_with, induced_map, TwoTermComplex};

pub(crate) use bar::restrict_cochain;

/// Default cap on the rank of the cochain space in the computed degree.
pub const DEFAULT_MAX_COCHAIN_RANK: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelPath {
    /// Free path whenever it applies, generic otherwise.
    Auto,
    Generic,
    /// Errors when the complex has torsion or the degree is not torsion.
    Free,
}

#[derive(Clone, Copy, Debug)]
pub struct CohomologyOptions {
    pub max_cochain_rank: usize,
    pub path: KernelPath,
}

impl Default for CohomologyOptions {
    fn default() -> Self {
        CohomologyOptions { max_cochain_rank: DEFAULT_MAX_COCHAIN_RANK, path: KernelPath::Auto }
    }
}

/// A module in Smith coordinates, with its element matrices.
#[derive(Clone, Debug)]
pub(crate) struct Diag {
    pub moduli: Vec<Int>,
    pub elements: Vec<IntMatrix>,
    pub to_new: IntMatrix,
    pub to_old: IntMatrix,
}

impl Diag {
    pub fn of(m: &GModule) -> Diag {
        let (d, to_new, to_old) = m.diagonalized();
        let elements = m.group().elements().map(|x| d.element_matrix(x).clone()).collect();
        Diag { moduli: m.underlying().diagonalization().moduli.clone(), elements, to_new, to_old }
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    fn is_free(&self) -> bool {
        self.moduli.iter().all(Zero::is_zero)
    }
}

/// Consecutive runs of `copies` module blocks, for coordinate changes.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    blocks: Vec<(usize, IntMatrix, IntMatrix)>,
}

impl Layout {
    fn old_dim(&self) -> usize {
        self.blocks.iter().map(|(c, n, _)| c * n.cols()).sum()
    }

    fn convert(&self, v: &[Int], to_new: bool) -> Vec<Int> {
        let mut out = Vec::new();
        let mut pos = 0;
        for (copies, tn, to) in &self.blocks {
            let m = if to_new { tn } else { to };
            let w = m.cols();
            for _ in 0..*copies {
                out.extend(m.mul_vec(&v[pos..pos + w]));
                pos += w;
            }
        }
        out
    }
}

/// The total complex in Smith coordinates: `C^n(A)` alone, or
/// `T^n = C^n(A) + C^(n-1)(B)` with `d(a, b) = (d_A a, f a - d_B b)`.
pub(crate) struct Total<'a> {
    pub g: &'a FiniteGroup,
    pub a: Diag,
    pub b: Option<(Diag, IntMatrix)>,
}

impl Total<'_> {
    fn parts(&self, n: usize) -> (usize, usize) {
        let o = self.g.order();
        let pa = bar::tuple_count(o, n) * self.a.rank();
        let pb = match (&self.b, n) {
            (Some((b, _)), n) if n >= 1 => bar::tuple_count(o, n - 1) * b.rank(),
            _ => 0,
        };
        (pa, pb)
    }

    fn dim(&self, n: usize) -> usize {
        let (pa, pb) = self.parts(n);
        pa + pb
    }

    fn moduli(&self, n: usize) -> Vec<Int> {
        let o = self.g.order();
        let mut out: Vec<Int> = Vec::with_capacity(self.dim(n));
        for _ in 0..bar::tuple_count(o, n) {
            out.extend(self.a.moduli.iter().cloned());
        }
        if let (Some((b, _)), true) = (&self.b, n >= 1) {
            for _ in 0..bar::tuple_count(o, n - 1) {
                out.extend(b.moduli.iter().cloned());
            }
        }
        out
    }

    fn is_free(&self) -> bool {
        self.a.is_free() && self.b.as_ref().is_none_or(|(b, _)| b.is_free())
    }

    /// `d^n : T^n -> T^(n+1)`.
    fn diff(&self, n: usize) -> SparseMatrix {
        let da = bar::bar_differential(self.g, &self.a.elements, self.a.rank(), n, Some(&self.a.moduli));
        let Some((b, f)) = &self.b else { return da };
        let (_, pb) = self.parts(n);
        let top = SparseMatrix::hconcat(&da, &SparseMatrix::zeros(da.rows(), pb));
        let fhat = bar::blockwise(f, bar::tuple_count(self.g.order(), n), Some(&b.moduli));
        let bottom = if n == 0 {
            fhat
        } else {
            let db = bar::bar_differential(self.g, &b.elements, b.rank(), n - 1, Some(&b.moduli)).negated();
            SparseMatrix::hconcat(&fhat, &db)
        };
        SparseMatrix::vconcat(&top, &bottom)
    }

    fn layout(&self, n: usize) -> Layout {
        let o = self.g.order();
        let mut blocks = vec![(bar::tuple_count(o, n), self.a.to_new.clone(), self.a.to_old.clone())];
        if let (Some((b, _)), true) = (&self.b, n >= 1) {
            blocks.push((bar::tuple_count(o, n - 1), b.to_new.clone(), b.to_old.clone()));
        }
        Layout { blocks }
    }

    /// Smallest degree from which the cohomology is killed by `|g|`.
    fn torsion_from(&self) -> usize {
        if self.b.is_some() {
            2
        } else {
            1
        }
    }
}

#[derive(Debug)]
enum Solver {
    Generic(Subquotient),
    Free { sq: Subquotient, image: ColumnEchelon, n: Int },
}

#[derive(Clone, Debug)]
pub(crate) enum Source {
    Module(GModule),
    TwoTerm(TwoTermComplex),
}

/// `H^n` (or `HH^n`) with explicit cocycle representatives and a decision
/// procedure for the class of any cocycle.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub degree: usize,
    pub group_value: PresentedAbelianGroup,
    representatives: Vec<Vec<Int>>,
    layout: Arc<Layout>,
    solver: Arc<Solver>,
    pub(crate) source: Source,
    options: CohomologyOptions,
}

impl CohomologyGroup {
    pub fn invariant_factors(&self) -> InvariantFactors {
        self.group_value.invariant_factors()
    }

    pub fn is_zero(&self) -> bool {
        self.group_value.is_trivial()
    }

    pub fn group(&self) -> &FiniteGroup {
        match &self.source {
            Source::Module(m) => m.group(),
            Source::TwoTerm(c) => c.f.source.group(),
        }
    }

    /// One cocycle per generator of `group_value`, in the module's own
    /// coordinates (for complexes: the `C^n(A)` part followed by `C^(n-1)(B)`).
    pub fn representatives(&self) -> &[Vec<Int>] {
        &self.representatives
    }

    pub fn cochain_rank(&self) -> usize {
        self.layout.old_dim()
    }

    /// Class coordinates of a cocycle, reduced modulo the torsion orders.
    pub fn membership(&self, cocycle: &[Int]) -> Result<Vec<Int>> {
        if cocycle.len() != self.cochain_rank() {
            return Err(Error::structural(format!("cochain has length {}, expected {}", cocycle.len(), self.cochain_rank())));
        }
        let z = self.layout.convert(cocycle, true);
        let coords = match self.solver.as_ref() {
            Solver::Generic(sq) => sq.coordinates(&z),
            Solver::Free { sq, image, n } => {
                let nz: Vec<Int> = z.iter().map(|x| x * n).collect();
                image.solve(&nz).and_then(|c| sq.coordinates(&c))
            }
        };
        coords.ok_or_else(|| Error::structural("cochain is not a cocycle"))
    }

    pub fn is_trivial_class(&self, cocycle: &[Int]) -> Result<bool> {
        Ok(self.membership(cocycle)?.iter().all(Zero::is_zero))
    }

    pub fn options(&self) -> CohomologyOptions {
        self.options
    }
}

pub(crate) fn compute(total: &Total, n: usize, source: Source, options: CohomologyOptions) -> Result<CohomologyGroup> {
    if n > 2 {
        return Err(Error::structural(format!("degree {n} is not supported (degrees 0, 1, 2 only)")));
    }
    let dim = total.dim(n);
    if dim > options.max_cochain_rank {
        return Err(Error::Resource { what: format!("degree-{n} cochain rank"), requested: dim, limit: options.max_cochain_rank });
    }
    let free_ok = total.is_free() && n >= total.torsion_from();
    let use_free = match options.path {
        KernelPath::Auto => free_ok,
        KernelPath::Generic => false,
        KernelPath::Free if free_ok => true,
        KernelPath::Free => return Err(Error::structural("free kernel path needs a torsion-free complex in a torsion degree")),
    };
    let (group_value, reps_new, solver) = if use_free { free_path(total, n) } else { generic_path(total, n)? };
    let layout = total.layout(n);
    let representatives = reps_new.iter().map(|z| layout.convert(z, false)).collect();
    Ok(CohomologyGroup { degree: n, group_value, representatives, layout: Arc::new(layout), solver: Arc::new(solver), source, options })
}

fn generic_path(total: &Total, n: usize) -> Result<(PresentedAbelianGroup, Vec<Vec<Int>>, Solver)> {
    let dim = total.dim(n);
    let d = total.diff(n);
    let target_moduli = total.moduli(n + 1);
    let constraints = d.row_iter().zip(&target_moduli).map(|(row, m)| Congruence { row: row.clone(), modulus: m.clone() });
    let z = congruence_kernel(dim, constraints);
    let mut gens = if n == 0 { Vec::new() } else { total.diff(n - 1).column_vecs() };
    for (i, m) in total.moduli(n).iter().enumerate() {
        if !m.is_zero() {
            let mut v = vec![Int::zero(); dim];
            v[i] = m.clone();
            gens.push(v);
        }
    }
    let sq = Subquotient::from_lattices(dim, z, gens)?;
    Ok((sq.group.clone(), sq.lifts().to_vec(), Solver::Generic(sq)))
}

fn free_path(total: &Total, n: usize) -> (PresentedAbelianGroup, Vec<Vec<Int>>, Solver) {
    let dim = total.dim(n);
    let b = total.diff(n - 1);
    let k = b.cols();
    let order = Int::from(total.g.order());
    let lambda = congruence_kernel(k, b.row_iter().map(|row| Congruence { row: row.clone(), modulus: order.clone() }));
    let image = ColumnEchelon::new(dim, &b.column_vecs());
    let mut gens: Vec<Vec<Int>> = (0..k)
        .map(|i| {
            let mut v = vec![Int::zero(); k];
            v[i] = order.clone();
            v
        })
        .collect();
    gens.extend(image.kernel().iter().cloned());
    let sq = Subquotient::from_lattices(k, lambda, gens).expect("N Z^k + ker B lies in L");
    let reps = sq.lifts().iter().map(|c| b.mul_vec(c).iter().map(|x| x / &order).collect()).collect();
    (sq.group.clone(), reps, Solver::Free { sq, image, n: order })
}

/// `H^i(g, m)` with default options.
pub fn cohomology(g: &FiniteGroup, m: &GModule, i: usize) -> Result<CohomologyGroup> {
    cohomology_with(g, m, i, CohomologyOptions::default())
}

pub fn cohomology_with(g: &FiniteGroup, m: &GModule, i: usize, options: CohomologyOptions) -> Result<CohomologyGroup> {
    if m.group() != g {
        return Err(Error::structural("module is over a different group"));
    }
    let total = Total { g, a: Diag::of(m), b: None };
    compute(&total, i, Source::Module(m.clone()), options)
}

/// `res: H^n(g, -) -> H^n(h, -)` with the target group.
pub fn restriction(c: &CohomologyGroup, h: &Subgroup) -> Result<(AbHom, CohomologyGroup)> {
    let g = c.group();
    if h.parent() != g {
        return Err(Error::structural("restriction to a subgroup of a different group"));
    }
    let n = c.degree;
    match &c.source {
        Source::Module(m) => {
            let (mh, emb) = restrict(m, h)?;
            let target = cohomology_with(mh.group(), &mh, n, c.options)?;
            let map = cochain_map(c, &target, |z| Ok(restrict_cochain(z, g.order(), &emb, n, m.rank())))?;
            Ok((map, target))
        }
        Source::TwoTerm(cx) => {
            let (ch, emb) = cx.restrict(h)?;
            let target = hypercohomology_with(ch.f.source.group(), &ch, n, c.options)?;
            let (ra, rb) = (cx.f.source.rank(), cx.f.target.rank());
            let split = bar::tuple_count(g.order(), n) * ra;
            let map = cochain_map(c, &target, |z| {
                let mut out = restrict_cochain(&z[..split], g.order(), &emb, n, ra);
                if n >= 1 {
                    out.extend(restrict_cochain(&z[split..], g.order(), &emb, n - 1, rb));
                }
                Ok(out)
            })?;
            Ok((map, target))
        }
    }
}

/// Cochain spaces `C^0..C^3` of a module in its own coordinates, with the
/// differentials `d^0, d^1, d^2`.
#[derive(Clone, Debug)]
pub struct CochainComplexSegment {
    pub group: FiniteGroup,
    pub module: GModule,
    pub spaces: Vec<PresentedAbelianGroup>,
    pub differentials: Vec<AbHom>,
}

impl CochainComplexSegment {
    pub fn new(m: &GModule) -> Result<Self> {
        let g = m.group();
        let r = m.rank();
        let elements: Vec<IntMatrix> = g.elements().map(|x| m.element_matrix(x).clone()).collect();
        let spaces: Vec<PresentedAbelianGroup> = (0..4)
            .map(|n| {
                let copies = bar::tuple_count(g.order(), n);
                let rel = m.underlying().relations();
                let blocks = vec![rel; copies];
                PresentedAbelianGroup::new(copies * r, &IntMatrix::block_diagonal(&blocks))
            })
            .collect::<Result<_>>()?;
        let differentials = (0..3)
            .map(|n| {
                let d = bar::bar_differential(g, &elements, r, n, None).to_dense();
                AbHom::new(spaces[n].clone(), spaces[n + 1].clone(), d)
            })
            .collect::<Result<_>>()?;
        Ok(CochainComplexSegment { group: g.clone(), module: m.clone(), spaces, differentials })
    }
}

#[cfg(test)]
mod tests;
