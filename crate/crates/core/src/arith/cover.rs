//! Quasi-trivial covers `G' = G^sc x Q -> G` at the level of lattices.
//!
//! The radical part of `X_*(T)` is the orthogonal complement of the coroot
//! span for the invariant form `B = sum_x A_x^T A_x`. `Q` is the permutation
//! cover `P` of that complement, `pi_1(G') = P`, and the kernel `H` has
//! characters `Ext^0(P -> pi_1(G), Z)`.

use crate::abelian::{AbHom, ColumnEchelon, IntMatrix, PresentedAbelianGroup};
use crate::error::{Error, Result};
use crate::gmodule::{permutation_cover, GModule, GModuleHom, PermutationModule};
use crate::sha::LemmaCheck;

use super::{ext0, fundamental_group, submodule, CocharacterDatum, IsogenyDatum};

#[derive(Clone, Debug)]
pub struct CoverResult {
    /// `X_*(Q) = P`
    pub q_cochar: PermutationModule,
    /// `X^*(H)`
    pub h_char: GModule,
    /// `X_*` of the radical, as a submodule of `X_*(T)`
    pub radical: GModuleHom,
    /// `pi_1(G') = P -> pi_1(G)`
    pub map: GModuleHom,
    pub report: LemmaCheck,
}

fn invariant_form(m: &GModule) -> IntMatrix {
    let n = m.rank();
    m.group().elements().fold(IntMatrix::zeros(n, n), |acc, x| {
        let a = m.element_matrix(x);
        acc.add(&a.transpose().mul(a))
    })
}

pub fn quasi_trivial_cover(d: &CocharacterDatum) -> Result<CoverResult> {
    let x = &d.x_star;
    let n = x.rank();
    let coroots = &d.coroot_inclusion.matrix;
    let orth = coroots.transpose().mul(&invariant_form(x));
    let lambda =
        AbHom { source: PresentedAbelianGroup::free(n), target: PresentedAbelianGroup::free(orth.rows()), matrix: orth }.kernel_lattice();
    let mut span = lambda.clone();
    span.extend(coroots.column_vecs());
    if ColumnEchelon::new(n, &span).rank() != n {
        return Err(Error::structural("radical and coroot lattices do not span X_* rationally"));
    }
    let radical = submodule(x, lambda)?;
    let res = permutation_cover(&radical.source);
    let m = fundamental_group(d);
    let map = GModuleHom::new(res.p.module().clone(), m.clone(), radical.matrix.mul(&res.proj.matrix))?;
    let ext = ext0::compute(&IsogenyDatum::new(map.clone()))?;
    let h_char = ext.module;

    let mut report = LemmaCheck::new("cover");
    report.values.insert("pi1".into(), m.underlying().invariant_factors());
    report.values.insert("X^*(H)".into(), h_char.underlying().invariant_factors());
    if map.as_abhom().cokernel().invariant_factors().free_rank > 0 {
        report.fail("P -> pi_1 has infinite cokernel: G^sc x Q -> G is not onto", vec![]);
    }
    for k in m.action_kernel().members() {
        if !h_char.acts_trivially(*k) {
            report.fail(format!("{} splits pi_1 but acts nontrivially on X^*(H)", x.group().word_string(*k)), vec![]);
        }
        if !res.p.acts_trivially(*k) {
            report.fail(format!("{} splits pi_1 but permutes the basis of X_*(Q)", x.group().word_string(*k)), vec![]);
        }
    }
    Ok(CoverResult { q_cochar: res.p, h_char, radical, map, report })
}
