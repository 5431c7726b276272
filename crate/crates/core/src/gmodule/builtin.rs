//! Named modules: trivial, sign, regular, coset, augmentation ideal and quotient.

use crate::abelian::{Int, IntMatrix, PresentedAbelianGroup};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

use super::{permutation_module, GModule, GModuleHom, PermutationModule};

/// `Z^rank` with trivial action.
pub fn trivial_module(g: &FiniteGroup, rank: usize) -> GModule {
    let action = vec![IntMatrix::identity(rank); g.generators().len()];
    GModule::new(g, PresentedAbelianGroup::free(rank), action).expect("trivial action")
}

/// `Z` with generator `s_i` acting by `signs[i]` (each `1` or `-1`).
pub fn sign_module(g: &FiniteGroup, signs: &[i64]) -> Result<GModule> {
    if signs.len() != g.generators().len() || signs.iter().any(|s| s.abs() != 1) {
        return Err(Error::structural("a sign module needs one sign (+1 or -1) per generator"));
    }
    let action = signs.iter().map(|&s| IntMatrix::from_i64(&[&[s]])).collect();
    GModule::free(g, action)
}

/// `Z[g]`.
pub fn regular_module(g: &FiniteGroup) -> PermutationModule {
    permutation_module(g, &g.trivial_subgroup())
}

/// `Z[g] -> Z` (trivial action), summing coordinates.
pub fn augmentation_map(p: &PermutationModule) -> GModuleHom {
    let z = trivial_module(p.group(), 1);
    let ones = IntMatrix::from_rows(vec![vec![Int::from(1u8); p.rank()]], p.rank());
    GModuleHom::new(p.module().clone(), z, ones).expect("augmentation is equivariant")
}

/// `Z -> Z[g/h]`, `1 -> sum of the basis`.
pub fn norm_map(p: &PermutationModule) -> GModuleHom {
    let z = trivial_module(p.group(), 1);
    let col = IntMatrix::from_columns(&[vec![Int::from(1u8); p.rank()]], p.rank());
    GModuleHom::new(z, p.module().clone(), col).expect("norm element is invariant")
}

/// `I_{g/h} = ker(Z[g/h] -> Z)`; with `h` trivial this is the augmentation ideal `I_g`.
pub fn augmentation_ideal(g: &FiniteGroup, h: &Subgroup) -> GModule {
    augmentation_map(&permutation_module(g, h)).kernel_module().0
}

/// `J_{g/h} = Z[g/h] / Z.N`.
pub fn augmentation_quotient(g: &FiniteGroup, h: &Subgroup) -> GModule {
    norm_map(&permutation_module(g, h)).cokernel_module().0
}
