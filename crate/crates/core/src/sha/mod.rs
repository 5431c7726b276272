//! Kernels of localization in the finite-group model.
//!
//! A [`LocalDatum`] is a finite group together with finitely many special
//! places carrying arbitrary decomposition subgroups. Every cyclic subgroup
//! is implicitly the decomposition group of infinitely many further places,
//! so excluding a finite set of places never removes a cyclic condition:
//!
//! ```text
//! Sh^i_S = ker( H^i -> prod_{C cyclic} H^i(C) x prod_{v special, v not in S} H^i(D_v) )
//! ```
//!
//! and `Sh^i_omega` is the kernel over the cyclic subgroups alone.

mod verify;

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::abelian::{AbHom, Int, IntMatrix, PresentedAbelianGroup, Subquotient};
use crate::cohomology::{cohomology_with, hypercohomology_with, restriction, CohomologyGroup, CohomologyOptions, TwoTermComplex};
use crate::error::{Error, Result};
use crate::gmodule::GModule;
use crate::group::{FiniteGroup, Subgroup};

pub(crate) use verify::check_bijection;
pub use verify::{verify_annihilation, verify_lemma_sha, verify_lemma_sha_with, Certificate, LemmaCheck};

#[derive(Clone, Debug)]
pub struct LocalDatum {
    pub group: FiniteGroup,
    pub special_places: Vec<(String, Subgroup)>,
}

impl LocalDatum {
    pub fn new(group: &FiniteGroup, special_places: Vec<(String, Subgroup)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (name, d) in &special_places {
            if !seen.insert(name.as_str()) {
                return Err(Error::input(format!("special_places.{name}"), "duplicate place name"));
            }
            if d.parent() != group {
                return Err(Error::structural(format!("decomposition group of {name} is not a subgroup of the datum group")));
            }
        }
        Ok(LocalDatum { group: group.clone(), special_places })
    }

    /// Only the cyclic backdrop, no special places.
    pub fn unramified(group: &FiniteGroup) -> Self {
        LocalDatum { group: group.clone(), special_places: Vec::new() }
    }

    pub fn place_names(&self) -> Vec<String> {
        self.special_places.iter().map(|(n, _)| n.clone()).collect()
    }
}

/// The finite set `S` of excluded places (special place names only).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PlaceSelection {
    pub excluded: BTreeSet<String>,
}

impl PlaceSelection {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn all(datum: &LocalDatum) -> Self {
        PlaceSelection { excluded: datum.place_names().into_iter().collect() }
    }

    pub fn of<I: IntoIterator<Item = S>, S: Into<String>>(names: I) -> Self {
        PlaceSelection { excluded: names.into_iter().map(Into::into).collect() }
    }

    fn validate(&self, datum: &LocalDatum) -> Result<()> {
        let names: BTreeSet<String> = datum.place_names().into_iter().collect();
        match self.excluded.iter().find(|n| !names.contains(*n)) {
            Some(n) => Err(Error::input("S", format!("unknown place `{n}`"))),
            None => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ShaOptions {
    /// One cyclic subgroup per conjugacy class instead of all of them.
    pub cyclic_up_to_conjugacy: bool,
    pub cohomology: CohomologyOptions,
}

impl Default for ShaOptions {
    fn default() -> Self {
        ShaOptions { cyclic_up_to_conjugacy: true, cohomology: CohomologyOptions::default() }
    }
}

/// Restrictions of one cohomology group to every decomposition subgroup.
#[derive(Clone, Debug)]
pub struct Localization {
    pub ambient: CohomologyGroup,
    pub cyclic: Vec<(Subgroup, AbHom)>,
    pub special: Vec<(String, AbHom)>,
}

impl Localization {
    pub fn new(ambient: CohomologyGroup, datum: &LocalDatum, opts: &ShaOptions) -> Result<Self> {
        if ambient.group() != &datum.group {
            return Err(Error::structural("cohomology group and datum have different groups"));
        }
        let cyclic_subs = datum.group.cyclic_subgroups(opts.cyclic_up_to_conjugacy);
        let cyclic = cyclic_subs.into_par_iter().map(|c| restriction(&ambient, &c).map(|(m, _)| (c, m))).collect::<Result<Vec<_>>>()?;
        let special = datum
            .special_places
            .par_iter()
            .map(|(name, d)| restriction(&ambient, d).map(|(m, _)| (name.clone(), m)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Localization { ambient, cyclic, special })
    }

    /// Kernel of the stacked restrictions kept by the selection.
    pub fn sha(&self, s: &PlaceSelection) -> ShaGroup {
        let maps: Vec<&AbHom> = self
            .cyclic
            .iter()
            .map(|(_, m)| m)
            .chain(self.special.iter().filter(|(n, _)| !s.excluded.contains(n)).map(|(_, m)| m))
            .collect();
        ShaGroup::kernel_of(&self.ambient, &maps)
    }

    pub fn sha_omega(&self) -> ShaGroup {
        let maps: Vec<&AbHom> = self.cyclic.iter().map(|(_, m)| m).collect();
        ShaGroup::kernel_of(&self.ambient, &maps)
    }

    /// `Sh_S / Sh_empty`.
    pub fn sha_quotient(&self, s: &PlaceSelection) -> PresentedAbelianGroup {
        let big = self.sha(s);
        let small = self.sha(&PlaceSelection::empty());
        let n = self.ambient.group_value.generator_count();
        Subquotient::from_lattices(n, big.sub.kernel_basis().to_vec(), small.sub.kernel_basis().to_vec())
            .expect("Sh_empty is contained in Sh_S")
            .group
    }
}

/// A subgroup of `H^i` cut out by local conditions.
#[derive(Clone, Debug)]
pub struct ShaGroup {
    pub ambient: CohomologyGroup,
    pub value: PresentedAbelianGroup,
    /// `value -> ambient.group_value`
    pub inclusion: AbHom,
    representatives: Vec<Vec<Int>>,
    sub: Subquotient,
}

impl ShaGroup {
    fn kernel_of(ambient: &CohomologyGroup, maps: &[&AbHom]) -> ShaGroup {
        let src = ambient.group_value.clone();
        let n = src.generator_count();
        let stacked = if maps.is_empty() {
            AbHom::zero(&src, &PresentedAbelianGroup::zero())
        } else {
            let target = PresentedAbelianGroup::direct_sum(&maps.iter().map(|m| &m.target).collect::<Vec<_>>());
            let matrix = maps.iter().skip(1).fold(maps[0].matrix.clone(), |acc, m| acc.vstack(&m.matrix));
            AbHom { source: src.clone(), target, matrix }
        };
        let sub = stacked.kernel();
        let inclusion = AbHom { source: sub.group.clone(), target: src, matrix: IntMatrix::from_columns(sub.lifts(), n) };
        let reps = sub.lifts().iter().map(|c| combine(ambient.representatives(), c, ambient.cochain_rank())).collect();
        ShaGroup { ambient: ambient.clone(), value: sub.group.clone(), inclusion, representatives: reps, sub }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_trivial()
    }

    /// Cocycles representing the generators of `value`.
    pub fn representatives(&self) -> &[Vec<Int>] {
        &self.representatives
    }

    /// Coordinates in `value` of a class given in ambient coordinates, or
    /// `None` if the class does not lie in this subgroup.
    pub fn coordinates(&self, class: &[Int]) -> Option<Vec<Int>> {
        self.sub.coordinates(class)
    }
}

/// `sum_i c_i reps_i`.
pub(crate) fn combine(reps: &[Vec<Int>], c: &[Int], len: usize) -> Vec<Int> {
    let mut out = vec![Int::from(0u8); len];
    for (r, k) in reps.iter().zip(c) {
        crate::abelian::matrix::axpy(&mut out, k, r);
    }
    out
}

/// `Sh^i_S(m)` for `i` in {1, 2}.
pub fn sha(datum: &LocalDatum, m: &GModule, i: usize, s: &PlaceSelection) -> Result<ShaGroup> {
    sha_with(datum, m, i, s, &ShaOptions::default())
}

pub fn sha_with(datum: &LocalDatum, m: &GModule, i: usize, s: &PlaceSelection, opts: &ShaOptions) -> Result<ShaGroup> {
    Ok(module_localization(datum, m, i, s, opts)?.sha(s))
}

/// `Sh^i_omega(m)`: cyclic conditions only.
pub fn sha_omega(datum: &LocalDatum, m: &GModule, i: usize) -> Result<ShaGroup> {
    sha_with(datum, m, i, &PlaceSelection::all(datum), &ShaOptions::default())
}

pub fn sha_quotient(datum: &LocalDatum, m: &GModule, i: usize, s: &PlaceSelection) -> Result<PresentedAbelianGroup> {
    Ok(module_localization(datum, m, i, s, &ShaOptions::default())?.sha_quotient(s))
}

/// `Sh^2_S(A -> B)` from hypercohomology.
pub fn sha_two_term(datum: &LocalDatum, c: &TwoTermComplex, i: usize, s: &PlaceSelection) -> Result<ShaGroup> {
    Ok(two_term_localization(datum, c, i, s, &ShaOptions::default())?.sha(s))
}

pub fn module_localization(datum: &LocalDatum, m: &GModule, i: usize, s: &PlaceSelection, opts: &ShaOptions) -> Result<Localization> {
    check_degree(i)?;
    s.validate(datum)?;
    let h = cohomology_with(&datum.group, m, i, opts.cohomology)?;
    Localization::new(h, datum, opts)
}

pub fn two_term_localization(
    datum: &LocalDatum,
    c: &TwoTermComplex,
    i: usize,
    s: &PlaceSelection,
    opts: &ShaOptions,
) -> Result<Localization> {
    check_degree(i)?;
    s.validate(datum)?;
    let h = hypercohomology_with(&datum.group, c, i, opts.cohomology)?;
    Localization::new(h, datum, opts)
}

fn check_degree(i: usize) -> Result<()> {
    if i == 1 || i == 2 {
        Ok(())
    } else {
        Err(Error::input("degree", format!("Sha is defined here for degrees 1 and 2, not {i}")))
    }
}

/// Serializable summary of a Sha computation.
#[derive(Clone, Debug, Serialize)]
pub struct ShaSummary {
    pub ambient: crate::abelian::InvariantFactors,
    pub value: crate::abelian::InvariantFactors,
}

impl From<&ShaGroup> for ShaSummary {
    fn from(s: &ShaGroup) -> Self {
        ShaSummary { ambient: s.ambient.invariant_factors(), value: s.value.invariant_factors() }
    }
}

#[cfg(test)]
mod tests;
