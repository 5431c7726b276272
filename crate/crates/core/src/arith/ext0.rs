//! `Ext^0_Z(M' -> M, Z)` for a two-term complex with `M'` in degree 0.
//!
//! With free presentations `0 -> Z^q' --R'--> Z^a' -> M'` and
//! `0 -> Z^q --R--> Z^a -> M`, a lift `F` of the map and `G` with
//! `R G = F R'`, the complex
//!
//! ```text
//! Z^q'  --(R', G)-->  Z^a' + Z^q  --[F, -R]-->  Z^a
//! ```
//!
//! (degrees -1, 0, 1) is free and quasi-isomorphic to `M' -> M`. `Ext^0` is
//! its degree-0 cohomology after applying `Hom(-, Z)`.

use crate::abelian::lattice::canonical_basis;
use crate::abelian::{AbHom, ColumnEchelon, Int, IntMatrix, PresentedAbelianGroup, Subquotient};
use crate::error::{Error, Result};
use crate::gmodule::{dual_module, GModule, GModuleHom};
use crate::sha::LemmaCheck;

use super::IsogenyDatum;

/// Ext^0 together with the subquotient of `Hom(Z^a' + Z^q, Z)` it is built from.
pub(crate) struct Ext0 {
    pub module: GModule,
    pub sq: Subquotient,
}

struct Presentation {
    gens: usize,
    /// columns of `R`, a basis of the relation lattice
    rel: Vec<Vec<Int>>,
    solver: ColumnEchelon,
}

impl Presentation {
    fn of(m: &GModule) -> Self {
        let gens = m.rank();
        let rel = canonical_basis(gens, m.underlying().relations().row_vecs());
        let solver = ColumnEchelon::new(gens, &rel);
        Presentation { gens, rel, solver }
    }

    fn q(&self) -> usize {
        self.rel.len()
    }

    /// `X` with `R X = Y`, column by column.
    fn lift(&self, y: &IntMatrix) -> IntMatrix {
        let cols: Vec<Vec<Int>> =
            y.column_vecs().iter().map(|c| self.solver.solve(c).expect("column lies in the relation lattice")).collect();
        IntMatrix::from_columns(&cols, self.q())
    }

    fn matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(&self.rel, self.gens)
    }
}

pub(crate) fn compute(d: &IsogenyDatum) -> Result<Ext0> {
    let (src, dst) = (&d.f.f.source, &d.f.f.target);
    let g = src.group();
    let p_src = Presentation::of(src);
    let p_dst = Presentation::of(dst);
    let f = &d.f.f.matrix;
    let (a_src, q_dst) = (p_src.gens, p_dst.q());
    let r_src = p_src.matrix();
    let r_dst = p_dst.matrix();
    let gmat = p_dst.lift(&f.mul(&r_src));

    // d_{-1} = [R'; G], d_0 = [F, -R]
    let d_minus = r_src.vstack(&gmat);
    let d_zero = f.hstack(&r_dst.scale(&Int::from(-1)));
    let n0 = a_src + q_dst;
    let cocycles =
        AbHom { source: PresentedAbelianGroup::free(n0), target: PresentedAbelianGroup::free(d_minus.cols()), matrix: d_minus.transpose() }
            .kernel_lattice();
    let sq = Subquotient::from_lattices(n0, cocycles, d_zero.transpose().column_vecs())?;

    // Chain lift of x on degree 0: (u, z) -> (A'_x u, B_x z + H_x u) with
    // R B_x = A_x R and R H_x = F A'_x - A_x F.
    let degree_zero_action = |x: usize| -> IntMatrix {
        let a_s = src.element_matrix(x);
        let a_t = dst.element_matrix(x);
        let b = p_dst.lift(&a_t.mul(&r_dst));
        let h = p_dst.lift(&f.mul(a_s).sub(&a_t.mul(f)));
        let top = a_s.hstack(&IntMatrix::zeros(a_src, q_dst));
        top.vstack(&h.hstack(&b))
    };
    let k = sq.group.generator_count();
    let action = g
        .generators()
        .iter()
        .map(|&s| {
            let t = degree_zero_action(g.inv(s)).transpose();
            let cols = sq
                .lifts()
                .iter()
                .map(|v| sq.coordinates(&t.mul_vec(v)).ok_or_else(|| Error::structural("lifted action does not preserve Ext^0 cocycles")))
                .collect::<Result<Vec<_>>>()?;
            Ok(IntMatrix::from_columns(&cols, k))
        })
        .collect::<Result<Vec<_>>>()?;
    let module = GModule::new(g, sq.group.clone(), action)?;
    Ok(Ext0 { module, sq })
}

/// For toral data (both terms free with no relations) `Ext^0` is the
/// cokernel of the dual map `M^v -> M'^v`. The natural map from that
/// cokernel must be an isomorphism of modules.
pub fn check_toral_ext0(d: &IsogenyDatum) -> Result<LemmaCheck> {
    let mut check = LemmaCheck::new("ext0");
    let f = &d.f.f;
    if f.source.underlying().relations().rows() > 0 || f.target.underlying().relations().rows() > 0 {
        return Err(Error::structural("toral comparison needs both terms free without relations"));
    }
    let ext = compute(d)?;
    let dual = GModuleHom::new(dual_module(&f.target)?, dual_module(&f.source)?, f.matrix.transpose())?;
    let (oracle, _) = dual.cokernel_module();
    check.values.insert("Ext0".into(), ext.module.underlying().invariant_factors());
    check.values.insert("coker".into(), oracle.underlying().invariant_factors());
    let a = oracle.rank();
    let cols: Vec<Vec<Int>> = (0..a)
        .map(|j| ext.sq.coordinates(&crate::abelian::matrix::unit_vec(ext.sq.ambient_dim(), j)).expect("toral cocycles are everything"))
        .collect();
    let k = ext.module.rank();
    match GModuleHom::new(oracle, ext.module.clone(), IntMatrix::from_columns(&cols, k)) {
        Ok(nat) => {
            if !nat.is_injective() || !nat.is_surjective() {
                check.fail("natural map coker(f^T) -> Ext^0 is not bijective", vec![]);
            }
        }
        Err(e) => check.fail(format!("natural map coker(f^T) -> Ext^0 is not a module map: {e}"), vec![]),
    }
    Ok(check)
}
