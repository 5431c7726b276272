use crate::abelian::{Int, IntMatrix};
use crate::error::{Error, Result};
use crate::group::Subgroup;

use super::{permutation_module, GModule, GModuleHom, PermutationModule};

/// `0 -> L -> P -> M -> 0` with `P` a permutation module and `L` free.
#[derive(Clone, Debug)]
pub struct PermutationResolution {
    pub module: GModule,
    pub p: PermutationModule,
    pub l: GModule,
    pub incl: GModuleHom,
    pub proj: GModuleHom,
}

impl PermutationResolution {
    /// `proj` onto, `incl` into, `im incl = ker proj`, `L` torsion-free.
    pub fn check(&self) -> Result<()> {
        if !self.proj.is_surjective() {
            return Err(Error::structural("cover map is not surjective"));
        }
        if !self.incl.is_injective() || !self.l.is_free() {
            return Err(Error::structural("kernel lattice is not a free submodule"));
        }
        let composite = self.proj.compose(&self.incl)?;
        if !composite.as_abhom().is_zero_map() {
            return Err(Error::structural("proj . incl is not zero"));
        }
        let k = self.proj.as_abhom().kernel_lattice();
        let n = self.p.rank();
        let homology = crate::abelian::Subquotient::from_lattices(n, k, self.incl.matrix.column_vecs())?;
        if !homology.group.is_trivial() {
            return Err(Error::structural("resolution is not exact at P"));
        }
        Ok(())
    }
}

/// Cover by `Z[g/Stab(m_i)]` over the presentation generators that are nonzero in `m`.
pub fn permutation_cover(m: &GModule) -> PermutationResolution {
    let n = m.rank();
    let gens: Vec<Vec<Int>> = (0..n).map(|j| crate::abelian::matrix::unit_vec(n, j)).filter(|v| !m.is_zero_element(v)).collect();
    permutation_cover_with(m, &gens).expect("presentation generators generate")
}

/// Cover over an explicit generating set of `m` (coordinate vectors).
pub fn permutation_cover_with(m: &GModule, gens: &[Vec<Int>]) -> Result<PermutationResolution> {
    let g = m.group();
    let n = m.rank();
    let mut pieces = Vec::with_capacity(gens.len());
    let mut columns: Vec<Vec<Int>> = Vec::new();
    for v in gens {
        if v.len() != n {
            return Err(Error::structural("generating vector has the wrong length"));
        }
        let stab: Vec<usize> = g
            .elements()
            .filter(|&x| {
                let d: Vec<Int> = m.act(x, v).iter().zip(v).map(|(a, b)| a - b).collect();
                m.is_zero_element(&d)
            })
            .collect();
        let stab = Subgroup::from_members(g, stab);
        let (reps, _) = super::permutation::left_cosets(&stab);
        columns.extend(reps.iter().map(|&r| m.act(r, v)));
        pieces.push(permutation_module(g, &stab));
    }
    let p = if pieces.is_empty() {
        PermutationModule::from_generator_permutations(g, &vec![vec![]; g.generators().len()])?
    } else {
        PermutationModule::direct_sum(&pieces.iter().collect::<Vec<_>>())?
    };
    let proj = GModuleHom::new(p.module().clone(), m.clone(), IntMatrix::from_columns(&columns, n))?;
    if !proj.is_surjective() {
        return Err(Error::structural("the given elements do not generate the module"));
    }
    let (l, incl) = proj.kernel_module();
    Ok(PermutationResolution { module: m.clone(), p, l, incl, proj })
}
