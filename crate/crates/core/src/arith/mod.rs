//! Lattice-level data of reductive groups and homogeneous spaces, and the
//! obstruction groups attached to them.
//!
//! Nothing here is a variety. A connected reductive group enters through its
//! cocharacter lattice with the coroot sublattice, a homogeneous space
//! through the restriction map of character modules `G^ -> H^`. Verdicts
//! only say whether a computed group vanishes.

mod cover;
mod ext0;

use rayon::join;
use serde::Serialize;

use crate::abelian::{ColumnEchelon, Int, IntMatrix, InvariantFactors, PresentedAbelianGroup};
use crate::cohomology::{connecting_map, TwoTermComplex};
use crate::error::{Error, Result};
use crate::gmodule::{
    dual_module, faithful_quotient, permutation_cover, permutation_cover_with, GModule, GModuleHom, PermutationModule,
    PermutationResolution,
};
use crate::sha::{check_bijection, module_localization, two_term_localization, LemmaCheck, LocalDatum, PlaceSelection, ShaOptions};

pub use cover::{quasi_trivial_cover, CoverResult};
pub use ext0::check_toral_ext0;

pub const VANISHES: &str = "VANISHES (theorem applies)";
pub const NONZERO: &str = "NONZERO (obstruction group nontrivial; theorem silent)";

/// `X_*(T)` with the coroot sublattice `X_*(T_sc)`.
#[derive(Clone, Debug)]
pub struct CocharacterDatum {
    pub x_star: GModule,
    pub coroot_inclusion: GModuleHom,
}

impl CocharacterDatum {
    /// Both lattices free and the inclusion injective.
    pub fn new(coroot_inclusion: GModuleHom) -> Result<Self> {
        let f = &coroot_inclusion;
        if f.source.underlying().relations().rows() > 0 || f.target.underlying().relations().rows() > 0 {
            return Err(Error::structural("cocharacter and coroot lattices must be free presentations"));
        }
        if !f.is_injective() {
            return Err(Error::structural("coroot inclusion is not injective"));
        }
        Ok(CocharacterDatum { x_star: f.target.clone(), coroot_inclusion })
    }

    /// Coroot lattice spanned by the columns of `coroots`, with the action
    /// it inherits from `x_star`.
    pub fn from_coroot_matrix(x_star: &GModule, coroots: &IntMatrix) -> Result<Self> {
        if coroots.rows() != x_star.rank() {
            return Err(Error::structural(format!("coroot matrix has {} rows, X_* has rank {}", coroots.rows(), x_star.rank())));
        }
        let cols = coroots.column_vecs();
        if ColumnEchelon::new(x_star.rank(), &cols).rank() != cols.len() {
            return Err(Error::structural("coroot columns are linearly dependent"));
        }
        Self::new(submodule(x_star, cols)?)
    }

    /// A torus: no coroots.
    pub fn torus(x_star: &GModule) -> Result<Self> {
        let zero = GModule::free(x_star.group(), vec![IntMatrix::zeros(0, 0); x_star.group().generators().len()])?;
        Self::new(GModuleHom::zero(&zero, x_star))
    }
}

/// `M' -> M` with `M'` in degree 0.
#[derive(Clone, Debug)]
pub struct IsogenyDatum {
    pub f: TwoTermComplex,
}

impl IsogenyDatum {
    pub fn new(f: GModuleHom) -> Self {
        IsogenyDatum { f: TwoTermComplex::new(f) }
    }
}

/// A homogeneous space of a quasi-trivial group: `G^` a permutation module
/// and `res: G^ -> H^` restriction of characters.
#[derive(Clone, Debug)]
pub struct HomSpaceDatum {
    pub datum: LocalDatum,
    pub g_hat: PermutationModule,
    pub h_hat: GModule,
    pub res: GModuleHom,
}

impl HomSpaceDatum {
    pub fn new(datum: LocalDatum, g_hat: PermutationModule, res: GModuleHom) -> Result<Self> {
        if &res.source != g_hat.module() {
            return Err(Error::structural("res must start at G^"));
        }
        if res.source.group() != &datum.group {
            return Err(Error::structural("character modules and local datum have different groups"));
        }
        Ok(HomSpaceDatum { datum, g_hat, h_hat: res.target.clone(), res })
    }
}

/// The submodule of a relation-free module spanned by a stable lattice basis.
pub(crate) fn submodule(m: &GModule, basis: Vec<Vec<Int>>) -> Result<GModuleHom> {
    let n = m.rank();
    let k = basis.len();
    let solver = ColumnEchelon::new(n, &basis);
    let action = m
        .action()
        .iter()
        .map(|a| {
            let cols = basis
                .iter()
                .map(|b| solver.solve(&a.mul_vec(b)).ok_or_else(|| Error::structural("sublattice is not stable under the action")))
                .collect::<Result<Vec<_>>>()?;
            Ok(IntMatrix::from_columns(&cols, k))
        })
        .collect::<Result<Vec<_>>>()?;
    let sub = GModule::new(m.group(), PresentedAbelianGroup::free(k), action)?;
    GModuleHom::new(sub, m.clone(), IntMatrix::from_columns(&basis, n))
}

/// `pi_1 = X_* / im(coroots)`, generators of `X_*` with coroot relators appended.
pub fn fundamental_group(d: &CocharacterDatum) -> GModule {
    d.coroot_inclusion.cokernel_module().0
}

/// `(P^v -> L^v)` from the permutation cover `0 -> L -> P -> M -> 0`.
pub fn dual_complex(m: &GModule) -> TwoTermComplex {
    dual_of_resolution(&permutation_cover(m)).expect("duals of a lattice resolution")
}

/// As [`dual_complex`] over an explicit generating set of `m`.
pub fn dual_complex_with(m: &GModule, gens: &[Vec<Int>]) -> Result<TwoTermComplex> {
    dual_of_resolution(&permutation_cover_with(m, gens)?)
}

fn dual_of_resolution(r: &PermutationResolution) -> Result<TwoTermComplex> {
    let pv = dual_module(r.p.module())?;
    let lv = dual_module(&r.l)?;
    Ok(TwoTermComplex::new(GModuleHom::new(pv, lv, r.incl.matrix.transpose())?))
}

/// `Ext^0_Z(M' -> M, Z)` with its induced action.
pub fn ext0_isogeny(d: &IsogenyDatum) -> Result<GModule> {
    Ok(ext0::compute(d)?.module)
}

/// Vanishing report for one obstruction group.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub group: String,
    pub value: InvariantFactors,
    pub verdict: &'static str,
    /// A hypothesis that holds here and forces the group to vanish.
    pub forced_by: Option<String>,
}

impl Verdict {
    fn new(group: &str, value: &PresentedAbelianGroup, forced_by: Option<String>, check: &mut LemmaCheck) -> Self {
        let value = value.invariant_factors();
        if let (Some(h), false) = (&forced_by, value.is_zero()) {
            check.fail(format!("{group} = {value} although {h}"), vec![]);
        }
        let verdict = if value.is_zero() { VANISHES } else { NONZERO };
        Verdict { group: group.into(), value, verdict, forced_by }
    }
}

fn metacyclic_hypothesis(m: &GModule) -> Option<String> {
    let (q, _) = faithful_quotient(m);
    q.is_metacyclic().then(|| format!("the splitting group (order {}) is metacyclic", q.order()))
}

fn cyclic_s_hypothesis(datum: &LocalDatum, s: &PlaceSelection) -> Option<String> {
    datum
        .special_places
        .iter()
        .filter(|(n, _)| s.excluded.contains(n))
        .all(|(_, d)| d.is_cyclic())
        .then(|| "every place of S has a cyclic decomposition group".to_string())
}

#[derive(Clone, Debug)]
pub struct BrauerGroups {
    pub b_s: PresentedAbelianGroup,
    pub b_s_quotient: PresentedAbelianGroup,
    pub b_omega: PresentedAbelianGroup,
    pub verdicts: Vec<Verdict>,
    /// Route agreement plus the vanishing assertions behind the verdicts.
    pub check: LemmaCheck,
}

/// `B_S`, `B_S / B_empty` and `B_omega`, computed as `Sh^1(H^)` and as
/// `Sh^2(G^ -> H^)`; the routes are compared group by group and through
/// the map `b -> (0, b)`.
pub fn brauer_obstruction_groups(h: &HomSpaceDatum, s: &PlaceSelection) -> Result<BrauerGroups> {
    brauer_obstruction_groups_with(h, s, &ShaOptions::default())
}

pub fn brauer_obstruction_groups_with(h: &HomSpaceDatum, s: &PlaceSelection, opts: &ShaOptions) -> Result<BrauerGroups> {
    let c = TwoTermComplex::new(h.res.clone());
    let (loc1, loc2) = join(|| module_localization(&h.datum, &h.h_hat, 1, s, opts), || two_term_localization(&h.datum, &c, 2, s, opts));
    let (loc1, loc2) = (loc1?, loc2?);
    let phi = connecting_map(&loc1.ambient, &loc2.ambient)?;
    let mut check = LemmaCheck::new("prop-sh1");
    let all = PlaceSelection::all(&h.datum);
    let empty = PlaceSelection::empty();
    for (label, sel) in [("S", s), ("empty", &empty), ("omega", &all)] {
        let (a, b) = (loc1.sha(sel), loc2.sha(sel));
        let (ia, ib) = (a.value.invariant_factors(), b.value.invariant_factors());
        if ia != ib {
            check.fail(format!("B_{label}: degree-1 route gives {ia}, degree-2 route gives {ib}"), vec![]);
        }
        check.values.insert(format!("Sh1_{label}(H^)"), ia);
        check.values.insert(format!("Sh2_{label}(G^->H^)"), ib);
        check_bijection(&phi, &a, &b, &mut check, &format!("B_{label}: "));
    }
    let (q1, q2) = (loc1.sha_quotient(s), loc2.sha_quotient(s));
    if q1.invariant_factors() != q2.invariant_factors() {
        check.fail(format!("B_S/B_empty: routes give {} and {}", q1.invariant_factors(), q2.invariant_factors()), vec![]);
    }
    let b_s = loc1.sha(s).value;
    let b_omega = loc1.sha_omega().value;
    let verdicts = vec![
        Verdict::new("B_S", &b_s, None, &mut check),
        Verdict::new("B_S/B_empty", &q1, cyclic_s_hypothesis(&h.datum, s), &mut check),
        Verdict::new("B_omega", &b_omega, metacyclic_hypothesis(&h.h_hat), &mut check),
    ];
    Ok(BrauerGroups { b_s, b_s_quotient: q1, b_omega, verdicts, check })
}

#[derive(Clone, Debug)]
pub struct Pi1Groups {
    pub dual: TwoTermComplex,
    pub sh2_s: PresentedAbelianGroup,
    pub sh2_s_quotient: PresentedAbelianGroup,
    pub sh2_omega: PresentedAbelianGroup,
    pub verdicts: Vec<Verdict>,
    pub check: LemmaCheck,
}

/// `Sh^2_S`, `Sh^2_S / Sh^2_empty` and `Sh^2_omega` of `dual_complex(m)`.
pub fn pi1_obstruction_groups(m: &GModule, datum: &LocalDatum, s: &PlaceSelection) -> Result<Pi1Groups> {
    pi1_obstruction_groups_with(m, datum, s, &ShaOptions::default())
}

pub fn pi1_obstruction_groups_with(m: &GModule, datum: &LocalDatum, s: &PlaceSelection, opts: &ShaOptions) -> Result<Pi1Groups> {
    let dual = dual_complex(m);
    let loc = two_term_localization(datum, &dual, 2, s, opts)?;
    let sh2_s = loc.sha(s).value;
    let sh2_s_quotient = loc.sha_quotient(s);
    let sh2_omega = loc.sha_omega().value;
    let mut check = LemmaCheck::new("pi1");
    let verdicts = vec![
        Verdict::new("Sh2_S", &sh2_s, None, &mut check),
        Verdict::new("Sh2_S/Sh2_empty", &sh2_s_quotient, cyclic_s_hypothesis(datum, s), &mut check),
        Verdict::new("Sh2_omega", &sh2_omega, metacyclic_hypothesis(m), &mut check),
    ];
    for v in &verdicts {
        check.values.insert(v.group.clone(), v.value.clone());
    }
    Ok(Pi1Groups { dual, sh2_s, sh2_s_quotient, sh2_omega, verdicts, check })
}
