use std::ops::Deref;

use crate::abelian::{Int, IntMatrix};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

use super::GModule;

/// A free module whose basis is permuted by the group.
#[derive(Clone, Debug, PartialEq)]
pub struct PermutationModule {
    module: GModule,
    /// `basis_action[x][i]` is the basis index `x . e_i`.
    basis_action: Vec<Vec<usize>>,
}

impl Deref for PermutationModule {
    type Target = GModule;

    fn deref(&self) -> &GModule {
        &self.module
    }
}

impl PermutationModule {
    /// From one basis permutation per group generator.
    pub fn from_generator_permutations(group: &FiniteGroup, perms: &[Vec<usize>]) -> Result<Self> {
        let n = perms.first().map_or(0, Vec::len);
        let mut action = Vec::with_capacity(perms.len());
        for (i, p) in perms.iter().enumerate() {
            let mut seen = vec![false; n];
            if p.len() != n || p.iter().any(|&k| k >= n || std::mem::replace(&mut seen[k], true)) {
                return Err(Error::structural(format!("basis action of s{i} is not a permutation")));
            }
            action.push(permutation_matrix(p));
        }
        let module = if perms.is_empty() { GModule::free(group, vec![])? } else { GModule::free(group, action)? };
        let basis_action = group
            .elements()
            .map(|x| {
                let m = module.element_matrix(x);
                (0..n).map(|j| (0..n).find(|&i| m[(i, j)] == Int::from(1u8)).expect("permutation matrix")).collect()
            })
            .collect();
        Ok(PermutationModule { module, basis_action })
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    pub fn into_module(self) -> GModule {
        self.module
    }

    pub fn basis_action(&self, x: usize) -> &[usize] {
        &self.basis_action[x]
    }

    /// Permutation matrices are orthogonal, so the dual basis is permuted the same way.
    pub fn dual(&self) -> PermutationModule {
        self.clone()
    }

    pub fn direct_sum(parts: &[&PermutationModule]) -> Result<PermutationModule> {
        let Some(first) = parts.first() else {
            return Err(Error::structural("direct sum of no modules has no group"));
        };
        let group = first.group().clone();
        let perms: Vec<Vec<usize>> = group
            .generators()
            .iter()
            .map(|&s| {
                let mut off = 0;
                let mut p = Vec::new();
                for part in parts {
                    p.extend(part.basis_action(s).iter().map(|k| k + off));
                    off += part.rank();
                }
                p
            })
            .collect();
        if group.generators().is_empty() {
            let rank = parts.iter().map(|p| p.rank()).sum();
            return trivial_permutation(&group, rank);
        }
        Self::from_generator_permutations(&group, &perms)
    }
}

fn trivial_permutation(group: &FiniteGroup, rank: usize) -> Result<PermutationModule> {
    let module = GModule::new(group, crate::abelian::PresentedAbelianGroup::free(rank), vec![])?;
    let basis_action = vec![(0..rank).collect(); group.order()];
    Ok(PermutationModule { module, basis_action })
}

pub(super) fn permutation_matrix(p: &[usize]) -> IntMatrix {
    let mut m = IntMatrix::zeros(p.len(), p.len());
    for (j, &i) in p.iter().enumerate() {
        m[(i, j)] = Int::from(1u8);
    }
    m
}

/// Left cosets `x h`, labelled in order of their smallest element, and the
/// coset index of every element.
pub fn left_cosets(h: &Subgroup) -> (Vec<usize>, Vec<usize>) {
    let g = h.parent();
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        for &k in h.members() {
            coset_of[g.mul(x, k)] = reps.len();
        }
        reps.push(x);
    }
    (reps, coset_of)
}

/// `Z[g/h]`: basis the left cosets of `h`, action by left translation.
pub fn permutation_module(g: &FiniteGroup, h: &Subgroup) -> PermutationModule {
    assert!(h.parent() == g, "subgroup of a different group");
    let (reps, coset_of) = left_cosets(h);
    if g.generators().is_empty() {
        return trivial_permutation(g, reps.len()).expect("trivial group");
    }
    let perms: Vec<Vec<usize>> = g.generators().iter().map(|&s| reps.iter().map(|&r| coset_of[g.mul(s, r)]).collect()).collect();
    PermutationModule::from_generator_permutations(g, &perms).expect("coset action")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::symmetric;

    #[test]
    fn coset_module_examples() {
        let s3 = symmetric(3);
        let whole = permutation_module(&s3, &s3.whole());
        assert_eq!(whole.rank(), 1);
        assert!(whole.is_trivial_action());
        let reg = permutation_module(&s3, &s3.trivial_subgroup());
        assert_eq!(reg.rank(), 6);
        let t = Subgroup::generated_by(&s3, &[s3.generators()[0]]);
        let m = permutation_module(&s3, &t);
        assert_eq!(m.rank(), 3);
        for x in s3.elements() {
            assert_eq!(*m.element_matrix(x), permutation_matrix(m.basis_action(x)));
        }
    }
}
