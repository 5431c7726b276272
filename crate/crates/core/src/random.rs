//! Seeded random instances for the verification suites.
//!
//! Every instance draws from its own ChaCha8 stream: the generator is seeded
//! with `seed_from_u64(seed)` and switched to stream `index`, so instance `i`
//! is the same whether suites run serially or in parallel.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abelian::lattice::canonical_basis;
use crate::abelian::{Int, IntMatrix, PresentedAbelianGroup};
use crate::arith::{CocharacterDatum, HomSpaceDatum};
use crate::error::Result;
use crate::gmodule::{
    augmentation_ideal, augmentation_quotient, dual_module, permutation_module, sign_module, trivial_module, GModule, GModuleHom,
    PermutationModule,
};
use crate::group::{FiniteGroup, Subgroup};
use crate::sha::{LocalDatum, PlaceSelection};

/// The stream for instance `index` of a suite run with `seed`.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn small(rng: &mut ChaCha8Rng, bound: i64) -> Int {
    Int::from(rng.gen_range(-bound..=bound))
}

/// `(U, U^-1)` as a product of random elementary operations.
pub fn random_unimodular(n: usize, rng: &mut ChaCha8Rng) -> (IntMatrix, IntMatrix) {
    let mut u = IntMatrix::identity(n);
    let mut v = IntMatrix::identity(n);
    if n < 2 {
        return (u, v);
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let k = small(rng, 2);
        // U <- E U, V <- V E^-1 with E = I + k e_ij
        u.add_row_multiple(i, j, &k);
        v.add_col_multiple(j, i, &-k);
        if rng.gen_bool(0.3) {
            u.swap_rows(i, j);
            v.swap_cols(i, j);
        }
    }
    (u, v)
}

/// Conjugate a relation-free module by a basis change `x -> U x`.
pub fn change_basis(m: &GModule, u: &IntMatrix, u_inv: &IntMatrix) -> GModule {
    let action = m.action().iter().map(|a| u.mul(a).mul(u_inv)).collect();
    GModule::new(m.group(), PresentedAbelianGroup::free(m.rank()), action).expect("conjugate action")
}

/// Relation-free presentation of a torsion-free module.
pub fn as_lattice(m: &GModule) -> GModule {
    if m.underlying().relations().rows() == 0 {
        return m.clone();
    }
    let (d, _, _) = m.diagonalized();
    debug_assert_eq!(d.underlying().relations().rows(), 0);
    d
}

/// Sign characters `g -> {+1, -1}` given on generators, all of them.
pub fn sign_characters(g: &FiniteGroup) -> Vec<Vec<i64>> {
    let k = g.generators().len();
    (0..1usize << k)
        .map(|bits| (0..k).map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }).collect::<Vec<i64>>())
        .filter(|s| sign_module(g, s).is_ok())
        .collect()
}

/// One indecomposable-ish building block of rank at most `budget`.
fn random_atom(g: &FiniteGroup, subgroups: &[Subgroup], signs: &[Vec<i64>], budget: usize, rng: &mut ChaCha8Rng) -> GModule {
    loop {
        let h = subgroups.choose(rng).expect("the trivial subgroup is always present");
        let index = g.order() / h.order();
        let atom = match rng.gen_range(0..6) {
            0 => trivial_module(g, 1),
            1 => sign_module(g, signs.choose(rng).expect("trivial sign")).expect("checked sign character"),
            2 if index <= budget => permutation_module(g, h).into_module(),
            3 if index > 1 && index - 1 <= budget => augmentation_ideal(g, h),
            4 if index > 1 && index - 1 <= budget => as_lattice(&augmentation_quotient(g, h)),
            5 if index > 1 && index - 1 <= budget => dual_module(&augmentation_ideal(g, h)).expect("lattice"),
            _ => continue,
        };
        return atom;
    }
}

/// A random lattice: a direct sum of atoms of total rank in `1..=max_rank`,
/// written in a random basis.
pub fn random_lattice(g: &FiniteGroup, max_rank: usize, rng: &mut ChaCha8Rng) -> GModule {
    let subgroups = g.subgroups();
    let signs = sign_characters(g);
    let target = rng.gen_range(1..=max_rank);
    let mut parts = Vec::new();
    let mut rank = 0;
    while rank < target {
        let a = random_atom(g, &subgroups, &signs, target - rank, rng);
        rank += a.rank();
        parts.push(a);
    }
    let sum = as_lattice(&GModule::direct_sum(&parts.iter().collect::<Vec<_>>()).expect("same group"));
    let (u, v) = random_unimodular(sum.rank(), rng);
    change_basis(&sum, &u, &v)
}

/// A random lattice, optionally with torsion: up to `max_relators` seed
/// vectors `v` contribute the relators `k (x . v)` for all `x`, `k` in {2, 3}.
pub fn random_module(g: &FiniteGroup, max_rank: usize, max_relators: usize, rng: &mut ChaCha8Rng) -> GModule {
    let lattice = random_lattice(g, max_rank, rng);
    let n = lattice.rank();
    let seeds = rng.gen_range(0..=max_relators);
    let mut rels: Vec<Vec<Int>> = Vec::new();
    for _ in 0..seeds {
        let v: Vec<Int> = (0..n).map(|_| small(rng, 1)).collect();
        if v.iter().all(|x| *x == Int::from(0u8)) {
            continue;
        }
        let k = Int::from(rng.gen_range(2..=3));
        rels.extend(g.elements().map(|x| lattice.act(x, &v).iter().map(|c| c * &k).collect::<Vec<Int>>()));
    }
    if rels.is_empty() {
        return lattice;
    }
    let underlying = PresentedAbelianGroup::new(n, &IntMatrix::from_rows(rels, n)).expect("relators have full length");
    GModule::new(g, underlying, lattice.action().to_vec()).expect("orbit-closed relators give a module")
}

/// A direct sum of coset modules `Z[g/h]` of total rank in `1..=max_rank`.
pub fn random_coset_permutation(g: &FiniteGroup, max_rank: usize, rng: &mut ChaCha8Rng) -> PermutationModule {
    let subgroups = g.subgroups();
    let target = rng.gen_range(1..=max_rank);
    let mut parts = Vec::new();
    let mut rank = 0;
    while rank < target {
        let fits: Vec<&Subgroup> = subgroups.iter().filter(|h| g.order() / h.order() <= target - rank).collect();
        let h = fits.choose(rng).expect("the whole group has index 1");
        let p = permutation_module(g, h);
        rank += p.rank();
        parts.push(p);
    }
    PermutationModule::direct_sum(&parts.iter().collect::<Vec<_>>()).expect("same group")
}

/// A random equivariant map `P -> M`: each basis orbit of `P` is sent through
/// its representative to `sum_{h in Stab} h . v` for a random `v`.
pub fn random_equivariant_map(p: &PermutationModule, m: &GModule, rng: &mut ChaCha8Rng) -> GModuleHom {
    let g = p.group();
    let n = m.rank();
    let mut cols: Vec<Option<Vec<Int>>> = vec![None; p.rank()];
    for i in 0..p.rank() {
        if cols[i].is_some() {
            continue;
        }
        let v: Vec<Int> = (0..n).map(|_| small(rng, 2)).collect();
        let mut w = vec![Int::from(0u8); n];
        for x in g.elements().filter(|&x| p.basis_action(x)[i] == i) {
            crate::abelian::matrix::axpy(&mut w, &Int::from(1u8), &m.act(x, &v));
        }
        for x in g.elements() {
            let j = p.basis_action(x)[i];
            if cols[j].is_none() {
                cols[j] = Some(m.act(x, &w));
            }
        }
    }
    let cols: Vec<Vec<Int>> = cols.into_iter().map(|c| c.expect("every basis vector lies in an orbit")).collect();
    GModuleHom::new(p.module().clone(), m.clone(), IntMatrix::from_columns(&cols, n)).expect("orbit construction is equivariant")
}

pub fn noncyclic_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    g.subgroups().into_iter().filter(|h| !h.is_cyclic()).collect()
}

/// A datum with `count` special places on random non-cyclic subgroups (or
/// on any subgroups when the group has none), and a random selection `S`.
pub fn random_local_datum(g: &FiniteGroup, count: usize, rng: &mut ChaCha8Rng) -> (LocalDatum, PlaceSelection) {
    let mut pool = noncyclic_subgroups(g);
    if pool.is_empty() {
        pool = g.subgroups();
    }
    let places: Vec<(String, Subgroup)> = (0..count).map(|i| (format!("v{i}"), pool.choose(rng).expect("nonempty pool").clone())).collect();
    let s = PlaceSelection::of(places.iter().filter(|_| rng.gen_bool(0.5)).map(|(n, _)| n.clone()));
    (LocalDatum::new(g, places).expect("distinct names"), s)
}

/// A homogeneous-space datum: `G^` coset-permutation of rank <= 8 mapping
/// to a random `H^` of rank <= 3 with at most one torsion relator.
pub fn random_homspace(g: &FiniteGroup, rng: &mut ChaCha8Rng) -> (HomSpaceDatum, PlaceSelection) {
    let g_hat = random_coset_permutation(g, 8, rng);
    let h_hat = random_module(g, 3, 1, rng);
    let res = random_equivariant_map(&g_hat, &h_hat, rng);
    let count = rng.gen_range(0..=2);
    let (datum, s) = random_local_datum(g, count, rng);
    (HomSpaceDatum::new(datum, g_hat, res).expect("consistent groups"), s)
}

/// A stable sublattice as a module, with its inclusion.
pub fn orbit_sublattice(m: &GModule, seeds: &[Vec<Int>]) -> Result<GModuleHom> {
    let g = m.group();
    let gens: Vec<Vec<Int>> = seeds.iter().flat_map(|v| g.elements().map(move |x| m.act(x, v))).collect();
    crate::arith::submodule(m, canonical_basis(m.rank(), gens))
}

/// `X_*` a random lattice of rank <= 4; coroots the orbit span of at most
/// two random vectors.
pub fn random_cocharacter_datum(g: &FiniteGroup, rng: &mut ChaCha8Rng) -> CocharacterDatum {
    let x = random_lattice(g, 4, rng);
    let n = x.rank();
    let seeds: Vec<Vec<Int>> = (0..rng.gen_range(0..=2)).map(|_| (0..n).map(|_| small(rng, 1)).collect()).collect();
    let incl = orbit_sublattice(&x, &seeds).expect("sublattice of a lattice");
    CocharacterDatum::new(incl).expect("orbit sublattice is a free submodule")
}
