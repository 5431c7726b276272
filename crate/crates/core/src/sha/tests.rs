use super::*;
use crate::gmodule::{augmentation_ideal, augmentation_map, permutation_module, regular_module, trivial_module, GModuleHom};
use crate::group::{cyclic, klein_four, symmetric};

fn i_g() -> (FiniteGroup, GModule) {
    let g = klein_four();
    let m = augmentation_ideal(&g, &g.trivial_subgroup());
    (g, m)
}

#[test]
fn biquadratic_sha() {
    let (g, m) = i_g();
    let d = LocalDatum::unramified(&g);
    let s = sha(&d, &m, 1, &PlaceSelection::empty()).unwrap();
    assert_eq!(s.ambient.invariant_factors().to_string(), "Z/4");
    assert_eq!(s.value.invariant_factors().to_string(), "Z/2");
    // representatives die on every cyclic subgroup
    for c in g.cyclic_subgroups(false) {
        let (res, _) = crate::cohomology::restriction(&s.ambient, &c).unwrap();
        for j in 0..s.value.generator_count() {
            assert!(res.target.is_zero_element(&res.apply(&s.inclusion.matrix.column(j))));
        }
    }
}

#[test]
fn trivial_and_permutation_modules_have_no_sha() {
    let g = klein_four();
    let d = LocalDatum::unramified(&g);
    assert!(sha(&d, &trivial_module(&g, 3), 1, &PlaceSelection::empty()).unwrap().is_zero());
    for h in g.cyclic_subgroups(false) {
        let p = permutation_module(&g, &h);
        assert!(sha(&d, &p, 1, &PlaceSelection::empty()).unwrap().is_zero());
    }
}

#[test]
fn quotient_examples() {
    let (g, m) = i_g();
    let d = LocalDatum::unramified(&g);
    assert!(sha_quotient(&d, &m, 1, &PlaceSelection::empty()).unwrap().is_trivial());
    let cyc = g.cyclic_subgroups(false)[1].clone();
    let d = LocalDatum::new(&g, vec![("v_c".into(), cyc)]).unwrap();
    assert!(sha_quotient(&d, &m, 1, &PlaceSelection::of(["v_c"])).unwrap().is_trivial());
    // one special place with the full group: Sh_empty = 0 since res to g is injective
    let d = LocalDatum::new(&g, vec![("v_ram".into(), g.whole())]).unwrap();
    let q = sha_quotient(&d, &m, 1, &PlaceSelection::of(["v_ram"])).unwrap();
    assert_eq!(q.invariant_factors().to_string(), "Z/2");
    assert!(sha(&d, &m, 1, &PlaceSelection::empty()).unwrap().is_zero());
}

#[test]
fn datum_validation() {
    let g = klein_four();
    let dup = vec![("v".into(), g.whole()), ("v".into(), g.trivial_subgroup())];
    assert!(LocalDatum::new(&g, dup).is_err());
    let d = LocalDatum::unramified(&g);
    assert!(sha(&d, &trivial_module(&g, 1), 1, &PlaceSelection::of(["w"])).is_err());
    assert!(sha(&d, &trivial_module(&g, 1), 0, &PlaceSelection::empty()).is_err());
}

#[test]
fn two_term_examples() {
    let (g, m) = i_g();
    let d = LocalDatum::unramified(&g);
    let id = TwoTermComplex::new(GModuleHom::identity(&m));
    assert!(sha_two_term(&d, &id, 2, &PlaceSelection::empty()).unwrap().is_zero());
    let shift = TwoTermComplex::new(GModuleHom::zero(&trivial_module(&g, 0), &m));
    let s = sha_two_term(&d, &shift, 2, &PlaceSelection::empty()).unwrap();
    assert_eq!(s.value.invariant_factors().to_string(), "Z/2");
}

#[test]
fn lemma_sha_examples() {
    // P = Z[g] -> L = I_g, x -> (1 - s0) x
    let (g, m) = i_g();
    let reg = regular_module(&g);
    let s0 = g.generators()[0];
    let mult: IntMatrix = IntMatrix::identity(reg.rank()).sub(reg.element_matrix(s0));
    let aug = augmentation_map(&reg);
    let (_, incl) = aug.kernel_module();
    let solver = crate::abelian::ColumnEchelon::new(reg.rank(), &incl.matrix.column_vecs());
    let cols: Vec<Vec<Int>> = (0..reg.rank()).map(|j| solver.solve(&mult.column(j)).unwrap()).collect();
    let f = GModuleHom::new(reg.module().clone(), m.clone(), IntMatrix::from_columns(&cols, m.rank())).unwrap();
    let d = LocalDatum::unramified(&g);
    let check = verify_lemma_sha(&d, &TwoTermComplex::new(f), &PlaceSelection::empty()).unwrap();
    assert!(check.passed, "{check:?}");
    assert_eq!(check.values["Sh1_S(L)"].to_string(), "Z/2");

    let c2 = cyclic(2);
    let t = trivial_module(&c2, 1);
    let f = GModuleHom::zero(&t, &trivial_module(&c2, 0));
    let check = verify_lemma_sha(&LocalDatum::unramified(&c2), &TwoTermComplex::new(f), &PlaceSelection::empty()).unwrap();
    assert!(check.passed);
}

#[test]
fn annihilation_examples() {
    let (g, m) = i_g();
    let check = verify_annihilation(&LocalDatum::unramified(&g), &m).unwrap();
    assert!(check.passed);
    assert_eq!(check.values["Sh1_omega"].to_string(), "Z/2");
    let s3 = symmetric(3);
    let check = verify_annihilation(&LocalDatum::unramified(&s3), &augmentation_ideal(&s3, &s3.trivial_subgroup())).unwrap();
    assert!(check.passed);
    let c4 = cyclic(4);
    let check = verify_annihilation(&LocalDatum::unramified(&c4), &augmentation_ideal(&c4, &c4.trivial_subgroup())).unwrap();
    assert!(check.passed && check.values["Sh1_omega"].is_zero());
}

#[test]
fn conjugacy_reduction_matches_full_family() {
    let s3 = symmetric(3);
    let m = augmentation_ideal(&s3, &s3.trivial_subgroup());
    let d = LocalDatum::unramified(&s3);
    let full = ShaOptions { cyclic_up_to_conjugacy: false, ..Default::default() };
    let a = sha_with(&d, &m, 1, &PlaceSelection::empty(), &full).unwrap();
    let b = sha(&d, &m, 1, &PlaceSelection::empty()).unwrap();
    assert_eq!(a.inclusion.matrix, b.inclusion.matrix);
}
