//! Seeded verification suites. Each instance is generated from its own
//! random stream (see [`crate::random::instance_rng`]), instances run in
//! parallel, and reports list failures in instance order.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::abelian::{Int, InvariantFactors};
use crate::arith::{brauer_obstruction_groups, check_toral_ext0, dual_complex, dual_complex_with, quasi_trivial_cover, IsogenyDatum};
use crate::cohomology::{cohomology, hypercohomology};
use crate::error::{Error, Result};
use crate::gmodule::{permutation_module, trivial_module, GModule};
use crate::group::{by_name, FiniteGroup};
use crate::random::*;
use crate::sha::{
    sha_omega, two_term_localization, verify_annihilation, verify_lemma_sha, Certificate, LemmaCheck, LocalDatum, ShaOptions,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    /// `(n/e) Sh^1_omega = 0`, and `Sh^1_omega = 0` for metacyclic splitting groups.
    S13,
    /// `Sh^1_omega = 0` over metacyclic groups.
    Metacyclic,
    /// `Sh^1_S(L) -> Sh^2_S(P -> L)` is bijective.
    ShaIso,
    /// Degree-1 and degree-2 computations of `B_S` agree.
    PropSh1,
    /// `Ext^0` of toral data agrees with the dual cokernel.
    Ext0,
    /// Quasi-trivial covers pass their splitting checks.
    Cover,
    /// Sh^2 of the dual complex is independent of the permutation cover.
    Resolution,
    /// `H^i(g, Z[g/h]) = H^i(h, Z)`.
    Shapiro,
}

impl Suite {
    pub const ALL: [Suite; 8] =
        [Suite::S13, Suite::Metacyclic, Suite::ShaIso, Suite::PropSh1, Suite::Ext0, Suite::Cover, Suite::Resolution, Suite::Shapiro];

    pub fn name(self) -> &'static str {
        match self {
            Suite::S13 => "s13",
            Suite::Metacyclic => "metacyclic",
            Suite::ShaIso => "sha-iso",
            Suite::PropSh1 => "prop-sh1",
            Suite::Ext0 => "ext0",
            Suite::Cover => "cover",
            Suite::Resolution => "resolution",
            Suite::Shapiro => "shapiro",
        }
    }

    /// Instance count used when none is given. For `s13` and `metacyclic`
    /// the count is per group.
    pub fn default_instances(self) -> usize {
        match self {
            Suite::S13 | Suite::Metacyclic => 100,
            Suite::ShaIso => 50,
            Suite::PropSh1 => 25,
            Suite::Ext0 | Suite::Cover | Suite::Resolution => 20,
            Suite::Shapiro => 0,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::input("suite", format!("unknown suite `{s}`")))
    }
}

pub const S13_GROUPS: [&str; 7] = ["V4", "C2xC4", "D4", "Q8", "A4", "S3", "C6"];
pub const METACYCLIC_GROUPS: [&str; 1] = ["S3"];
pub const MIXED_GROUPS: [&str; 6] = ["V4", "D4", "Q8", "A4", "S3", "C2xC4"];
pub const SHAPIRO_GROUPS: [&str; 11] = ["C2", "C4", "V4", "C6", "S3", "C8", "D4", "Q8", "C2xC2xC2", "C2xC4", "A4"];

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub instance: usize,
    pub group: String,
    pub values: std::collections::BTreeMap<String, InvariantFactors>,
    pub certificates: Vec<Certificate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub lemma: String,
    pub instances: usize,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn group(name: &str) -> FiniteGroup {
    by_name(name).expect("suite group names are in the catalog")
}

/// Run `body` on `count` indexed instances in parallel.
fn run_indexed(lemma: &str, count: usize, body: impl Fn(usize) -> Result<(String, LemmaCheck)> + Sync) -> Result<SuiteReport> {
    let results: Vec<Result<(String, LemmaCheck)>> = (0..count).into_par_iter().map(&body).collect();
    let mut failures = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        let (group, check) = r?;
        if !check.passed {
            failures.push(Failure { instance: i, group, values: check.values, certificates: check.failures });
        }
    }
    Ok(SuiteReport { lemma: lemma.into(), instances: count, failures })
}

pub fn run_suite(suite: Suite, seed: u64, instances: Option<usize>) -> Result<SuiteReport> {
    let k = instances.unwrap_or_else(|| suite.default_instances());
    match suite {
        Suite::S13 => s13(&S13_GROUPS, seed, k),
        Suite::Metacyclic => metacyclic(&METACYCLIC_GROUPS, seed, k),
        Suite::ShaIso => sha_iso(seed, k),
        Suite::PropSh1 => prop_sh1(seed, k),
        Suite::Ext0 => ext0(seed, k),
        Suite::Cover => cover(seed, k),
        Suite::Resolution => resolution(seed, k),
        Suite::Shapiro => shapiro(&SHAPIRO_GROUPS),
    }
}

/// `per_group` random modules of rank <= 4 with <= 2 torsion relators per group.
pub fn s13(groups: &[&str], seed: u64, per_group: usize) -> Result<SuiteReport> {
    let gs: Vec<FiniteGroup> = groups.iter().map(|n| group(n)).collect();
    run_indexed("s13", groups.len() * per_group, |i| {
        let gi = i / per_group;
        let m = random_module(&gs[gi], 4, 2, &mut instance_rng(seed, i as u64));
        Ok((groups[gi].to_string(), verify_annihilation(&LocalDatum::unramified(&gs[gi]), &m)?))
    })
}

/// Groups must be metacyclic; every random module has `Sh^1_omega = 0`.
pub fn metacyclic(groups: &[&str], seed: u64, per_group: usize) -> Result<SuiteReport> {
    let gs: Vec<FiniteGroup> = groups.iter().map(|n| group(n)).collect();
    if let Some(n) = groups.iter().zip(&gs).find(|(_, g)| !g.is_metacyclic()).map(|(n, _)| n) {
        return Err(Error::input("groups", format!("{n} is not metacyclic")));
    }
    run_indexed("metacyclic", groups.len() * per_group, |i| {
        let g = &gs[i / per_group];
        let m = random_module(g, 4, 2, &mut instance_rng(seed, i as u64));
        let sh = sha_omega(&LocalDatum::unramified(g), &m, 1)?;
        let mut check = LemmaCheck::new("metacyclic");
        check.values.insert("Sh1_omega".into(), sh.value.invariant_factors());
        if !sh.is_zero() {
            check.fail("Sh^1_omega is nonzero over a metacyclic group", sh.representatives()[0].clone());
        }
        Ok((groups[i / per_group].to_string(), check))
    })
}

/// `P` coset-permutation of rank <= 8, `L` a lattice of rank <= 3, a random
/// map, and one or two non-cyclic special places with a random `S`.
pub fn sha_iso(seed: u64, count: usize) -> Result<SuiteReport> {
    let gs: Vec<FiniteGroup> = MIXED_GROUPS.iter().map(|n| group(n)).collect();
    run_indexed("sha-iso", count, |i| {
        let g = &gs[i % gs.len()];
        let rng = &mut instance_rng(seed, i as u64);
        let p = random_coset_permutation(g, 8, rng);
        let l = random_lattice(g, 3, rng);
        let f = random_equivariant_map(&p, &l, rng);
        let places = rng.gen_range(1..=2);
        let (datum, s) = random_local_datum(g, places, rng);
        let check = verify_lemma_sha(&datum, &crate::cohomology::TwoTermComplex::new(f), &s)?;
        Ok((MIXED_GROUPS[i % gs.len()].to_string(), check))
    })
}

pub fn prop_sh1(seed: u64, count: usize) -> Result<SuiteReport> {
    let gs: Vec<FiniteGroup> = MIXED_GROUPS.iter().map(|n| group(n)).collect();
    run_indexed("prop-sh1", count, |i| {
        let g = &gs[i % gs.len()];
        let (h, s) = random_homspace(g, &mut instance_rng(seed, i as u64));
        Ok((MIXED_GROUPS[i % gs.len()].to_string(), brauer_obstruction_groups(&h, &s)?.check))
    })
}

const SMALL_GROUPS: [&str; 5] = ["C2", "V4", "S3", "D4", "C4"];

/// Toral isogenies `P -> X_*` with `P` coset-permutation.
pub fn ext0(seed: u64, count: usize) -> Result<SuiteReport> {
    let gs: Vec<FiniteGroup> = SMALL_GROUPS.iter().map(|n| group(n)).collect();
    run_indexed("ext0", count, |i| {
        let g = &gs[i % gs.len()];
        let rng = &mut instance_rng(seed, i as u64);
        let p = random_coset_permutation(g, 6, rng);
        let x = random_lattice(g, 4, rng);
        let f = random_equivariant_map(&p, &x, rng);
        Ok((SMALL_GROUPS[i % gs.len()].to_string(), check_toral_ext0(&IsogenyDatum::new(f))?))
    })
}

pub fn cover(seed: u64, count: usize) -> Result<SuiteReport> {
    let gs: Vec<FiniteGroup> = SMALL_GROUPS.iter().map(|n| group(n)).collect();
    run_indexed("cover", count, |i| {
        let g = &gs[i % gs.len()];
        let d = random_cocharacter_datum(g, &mut instance_rng(seed, i as u64));
        Ok((SMALL_GROUPS[i % gs.len()].to_string(), quasi_trivial_cover(&d)?.report))
    })
}

/// A second generating set: the columns of a random unimodular matrix plus
/// one random vector.
fn other_generators(m: &GModule, rng: &mut rand_chacha::ChaCha8Rng) -> Vec<Vec<Int>> {
    let n = m.rank();
    let (u, _) = random_unimodular(n, rng);
    let mut gens = u.column_vecs();
    gens.push((0..n).map(|_| Int::from(rng.gen_range(-2i64..=2))).collect());
    gens
}

pub fn resolution(seed: u64, count: usize) -> Result<SuiteReport> {
    let gs: Vec<FiniteGroup> = MIXED_GROUPS.iter().map(|n| group(n)).collect();
    run_indexed("resolution", count, |i| {
        let g = &gs[i % gs.len()];
        let rng = &mut instance_rng(seed, i as u64);
        let m = random_module(g, 3, 1, rng);
        let (datum, s) = random_local_datum(g, 1, rng);
        let a = dual_complex(&m);
        let b = dual_complex_with(&m, &other_generators(&m, rng))?;
        let mut check = LemmaCheck::new("resolution");
        let opts = ShaOptions::default();
        let mut values = Vec::new();
        for (tag, c) in [("first", &a), ("second", &b)] {
            let hh = hypercohomology(g, c, 2)?;
            let loc = two_term_localization(&datum, c, 2, &s, &opts)?;
            let v = (hh.invariant_factors(), loc.sha(&s).value.invariant_factors(), loc.sha_omega().value.invariant_factors());
            check.values.insert(format!("HH2 ({tag} cover)"), v.0.clone());
            check.values.insert(format!("Sh2_S ({tag} cover)"), v.1.clone());
            values.push(v);
        }
        if values[0] != values[1] {
            check.fail("two permutation covers give different HH^2 or Sh^2 of the dual complex", vec![]);
        }
        Ok((MIXED_GROUPS[i % gs.len()].to_string(), check))
    })
}

/// Every subgroup of every listed group, degrees 1 and 2 (degree 1 only for A4).
pub fn shapiro(groups: &[&str]) -> Result<SuiteReport> {
    let mut cases = Vec::new();
    for name in groups {
        let g = group(name);
        let top = if *name == "A4" { 1 } else { 2 };
        for h in g.subgroups() {
            for i in 1..=top {
                cases.push((name.to_string(), g.clone(), h.clone(), i));
            }
        }
    }
    run_indexed("shapiro", cases.len(), |k| {
        let (name, g, h, i) = &cases[k];
        let induced = cohomology(g, &permutation_module(g, h), *i)?;
        let (hg, _) = h.as_group();
        let restricted = cohomology(&hg, &trivial_module(&hg, 1), *i)?;
        let mut check = LemmaCheck::new("shapiro");
        check.values.insert(format!("H{i}(g, Z[g/h]) |h|={}", h.order()), induced.invariant_factors());
        check.values.insert(format!("H{i}(h, Z) |h|={}", h.order()), restricted.invariant_factors());
        if induced.invariant_factors() != restricted.invariant_factors() {
            check.fail(format!("Shapiro mismatch in degree {i} for a subgroup of order {}", h.order()), vec![]);
        }
        Ok((name.clone(), check))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_runs_pass() {
        for s in [Suite::S13, Suite::ShaIso, Suite::PropSh1, Suite::Ext0, Suite::Cover, Suite::Resolution] {
            let r = run_suite(s, 11, Some(3)).unwrap();
            assert!(r.passed(), "{s}: {:?}", r.failures);
        }
    }
}
