//! Two-term complexes `A -> B` (A in degree 0) and their hypercohomology.

use crate::abelian::{AbHom, Int, IntMatrix};
use crate::error::{Error, Result};
use crate::gmodule::{restrict, GModuleHom};
use crate::group::{FiniteGroup, Subgroup};

use super::{bar, compute, CohomologyGroup, CohomologyOptions, Diag, Source, Total};

#[derive(Clone, Debug, PartialEq)]
pub struct TwoTermComplex {
    pub f: GModuleHom,
}

impl TwoTermComplex {
    pub fn new(f: GModuleHom) -> Self {
        TwoTermComplex { f }
    }

    pub fn group(&self) -> &FiniteGroup {
        self.f.source.group()
    }

    /// Restrict both terms and the map to a subgroup.
    pub fn restrict(&self, h: &Subgroup) -> Result<(TwoTermComplex, Vec<usize>)> {
        let (a, emb) = restrict(&self.f.source, h)?;
        let (b, _) = restrict(&self.f.target, h)?;
        let f = GModuleHom::new(a, b, self.f.matrix.clone())?;
        Ok((TwoTermComplex { f }, emb))
    }
}

/// `HH^i(g, A -> B)` with default options.
pub fn hypercohomology(g: &FiniteGroup, c: &TwoTermComplex, i: usize) -> Result<CohomologyGroup> {
    hypercohomology_with(g, c, i, CohomologyOptions::default())
}

/// Total complex `T^n = C^n(A) + C^(n-1)(B)`, `d(a, b) = (d_A a, f a - d_B b)`.
pub fn hypercohomology_with(g: &FiniteGroup, c: &TwoTermComplex, i: usize, options: CohomologyOptions) -> Result<CohomologyGroup> {
    if c.group() != g {
        return Err(Error::structural("complex is over a different group"));
    }
    let a = Diag::of(&c.f.source);
    let b = Diag::of(&c.f.target);
    let f_new = b.to_new.mul(&c.f.matrix).mul(&a.to_old);
    let total = Total { g, a, b: Some((b, f_new)) };
    compute(&total, i, Source::TwoTerm(c.clone()), options)
}

/// The homomorphism between two cohomology groups induced by a map on
/// cocycles (given in the groups' own cochain coordinates).
pub fn cochain_map(src: &CohomologyGroup, dst: &CohomologyGroup, f: impl Fn(&[Int]) -> Result<Vec<Int>>) -> Result<AbHom> {
    let cols = src.representatives().iter().map(|z| dst.membership(&f(z)?)).collect::<Result<Vec<_>>>()?;
    let m = IntMatrix::from_columns(&cols, dst.group_value.generator_count());
    AbHom::new(src.group_value.clone(), dst.group_value.clone(), m)
}

/// `H^n(A) -> H^n(B)` induced by a module map.
pub fn induced_map(f: &GModuleHom, src: &CohomologyGroup, dst: &CohomologyGroup) -> Result<AbHom> {
    let copies = bar::tuple_count(f.source.group().order(), src.degree);
    let r = f.source.rank();
    cochain_map(src, dst, |z| Ok((0..copies).flat_map(|t| f.matrix.mul_vec(&z[t * r..(t + 1) * r])).collect()))
}

/// `HH^n(A -> B) -> H^n(A)`, `(a, b) -> a`.
pub fn hyper_to_source(hyper: &CohomologyGroup, ha: &CohomologyGroup) -> Result<AbHom> {
    let len = ha.cochain_rank();
    cochain_map(hyper, ha, |z| Ok(z[..len].to_vec()))
}

/// `H^(n-1)(B) -> HH^n(A -> B)`, `b -> (0, b)`.
pub fn connecting_map(hb: &CohomologyGroup, hyper: &CohomologyGroup) -> Result<AbHom> {
    let pad = hyper.cochain_rank() - hb.cochain_rank();
    cochain_map(hb, hyper, |z| {
        let mut v = vec![Int::from(0u8); pad];
        v.extend_from_slice(z);
        Ok(v)
    })
}
