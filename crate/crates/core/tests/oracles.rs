mod common;

use common::{killed_by, periodic_cohomology, to_rows, BruteH1};
use galcoh::abelian::{Int, IntMatrix};
use galcoh::arith::{fundamental_group, pi1_obstruction_groups, CocharacterDatum};
use galcoh::cohomology::cohomology;
use galcoh::gmodule::{
    augmentation_ideal, augmentation_quotient, permutation_module, regular_module, sign_module, trivial_module, GModule,
};
use galcoh::group::{by_name, cyclic, klein_four, FiniteGroup};
use galcoh::sha::{sha, sha_omega, LocalDatum, PlaceSelection};

fn periodic_matches_bar(g: &FiniteGroup, m: &GModule, n: usize) {
    let t = to_rows(m.element_matrix(g.generators()[0]));
    for degree in 0..=2 {
        let bar = cohomology(g, m, degree).unwrap().invariant_factors();
        let (free, torsion) = periodic_cohomology(&t, n, degree);
        let torsion: Vec<Int> = torsion.into_iter().map(Int::from).collect();
        assert_eq!((bar.free_rank, &bar.torsion), (free, &torsion), "Z/{n}, rank {}, H^{degree}", m.rank());
    }
}

#[test]
fn cyclic_groups_agree_with_the_periodic_resolution() {
    for n in 1..=12 {
        let g = cyclic(n);
        periodic_matches_bar(&g, &trivial_module(&g, 1), n);
        periodic_matches_bar(&g, &trivial_module(&g, 2), n);
        if n % 2 == 0 {
            periodic_matches_bar(&g, &sign_module(&g, &[-1]).unwrap(), n);
        }
        if n <= 6 {
            periodic_matches_bar(&g, regular_module(&g).module(), n);
            periodic_matches_bar(&g, &augmentation_ideal(&g, &g.trivial_subgroup()), n);
        }
        if n % 3 == 0 {
            let rot = IntMatrix::from_i64(&[&[0, -1], &[1, -1]]);
            let m = GModule::free(&g, vec![rot]).unwrap();
            periodic_matches_bar(&g, &m, n);
        }
        if n % 2 == 0 && n >= 4 {
            let h = galcoh::group::Subgroup::generated_by(&g, &[2]);
            periodic_matches_bar(&g, permutation_module(&g, &h).module(), n);
        }
    }
}

#[test]
fn biquadratic_augmentation_ideal_by_enumeration() {
    let g = klein_four();
    let ig = augmentation_ideal(&g, &g.trivial_subgroup());
    let brute = BruteH1::new(&g, &ig, 4);
    assert_eq!(brute.h1_order(), 4);
    assert_eq!(brute.killed_by(&brute.fixed, 2), 2, "an element of order 4 exists");
    assert_eq!(brute.sha_order(), 2);

    let h1 = cohomology(&g, &ig, 1).unwrap();
    let sh = sha_omega(&LocalDatum::unramified(&g), &ig, 1).unwrap();
    assert_eq!(h1.invariant_factors().to_string(), "Z/4");
    assert_eq!(sh.value.invariant_factors().to_string(), "Z/2");

    // Each enumerated cocycle lands in the class the main path assigns to it.
    let mut classes = std::collections::BTreeSet::new();
    for x in &brute.fixed {
        let c: Vec<Int> = brute.cocycle(&g, &ig, x).into_iter().map(Int::from).collect();
        let coords = h1.membership(&c).unwrap();
        let in_sha = sh.coordinates(&coords).is_some();
        assert_eq!(in_sha, brute.sha.contains(x), "{x:?}");
        classes.insert(coords);
    }
    assert_eq!(classes.len(), 4);
}

#[test]
fn special_place_quotient_by_enumeration() {
    let g = klein_four();
    let ig = augmentation_ideal(&g, &g.trivial_subgroup());
    let brute = BruteH1::new(&g, &ig, 4);
    // Sh^1_empty also dies on the whole group, which leaves only the invariants.
    let dies_on_g: Vec<_> = brute.sha.iter().filter(|x| brute.invariants.contains(*x)).collect();
    assert_eq!(brute.sha_order() / (dies_on_g.len() / brute.invariants.len()), 2);

    let datum = LocalDatum::new(&g, vec![("v0".into(), g.whole())]).unwrap();
    let s = PlaceSelection::of(["v0"]);
    let q = galcoh::sha::sha_quotient(&datum, &ig, 1, &s).unwrap();
    assert_eq!(q.invariant_factors().to_string(), "Z/2");
    assert!(sha(&datum, &ig, 1, &PlaceSelection::empty()).unwrap().is_zero());
}

#[test]
fn pi1_of_the_augmentation_ideal_by_enumeration() {
    // The dual complex of a lattice M is quasi-isomorphic to M^ = J_g in
    // degree 0, so Sh^2_omega is Sh^2_omega(J_g) = Sh^3_omega(Z). Odd
    // integral cohomology of a cyclic group vanishes, hence Sh^2_omega is
    // all of H^3(g, Z).
    let g = klein_four();
    let e = 4;
    assert_eq!(common::h3_integral_order(&cyclic(2), e), 1);
    let h3 = common::h3_integral_order(&g, e);
    assert_eq!(h3, 2);

    let ig = augmentation_ideal(&g, &g.trivial_subgroup());
    let datum = CocharacterDatum::torus(&ig).unwrap();
    let pi1 = fundamental_group(&datum);
    let p = pi1_obstruction_groups(&pi1, &LocalDatum::unramified(&g), &PlaceSelection::empty()).unwrap();
    let value = p.sh2_omega.invariant_factors();
    assert_eq!(value.order(), Some(Int::from(h3)));
    assert_eq!(value.to_string(), "Z/2");
    let j = augmentation_quotient(&g, &g.trivial_subgroup());
    assert_eq!(cohomology(&g, &j, 2).unwrap().invariant_factors(), value);
}

#[test]
fn enumeration_matches_main_path_on_small_lattices() {
    for name in ["C2", "V4", "C4", "S3"] {
        let g = by_name(name).unwrap();
        let e = g.order() as i64;
        let mut modules = vec![augmentation_ideal(&g, &g.trivial_subgroup()), trivial_module(&g, 1)];
        for signs in galcoh::random::sign_characters(&g) {
            modules.push(sign_module(&g, &signs).unwrap());
        }
        for m in modules.iter().filter(|m| m.rank() <= 5) {
            let brute = BruteH1::new(&g, m, e);
            let h1 = cohomology(&g, m, 1).unwrap().invariant_factors();
            let sh = sha_omega(&LocalDatum::unramified(&g), m, 1).unwrap().value.invariant_factors();
            for k in 1..=e {
                assert_eq!(killed_by(&h1, k as i128), Some(brute.killed_by(&brute.fixed, k) as i128), "{name} H1");
                assert_eq!(killed_by(&sh, k as i128), Some(brute.killed_by(&brute.sha, k) as i128), "{name} Sh1");
            }
        }
    }
}
