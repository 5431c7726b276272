//! Integral representations of finite groups.
//!
//! A [`GModule`] is a presented abelian group with one action matrix per
//! group generator. Matrices act on generator coordinates from the left:
//! `s . x = A_s x`, and `A_{xy} = A_x A_y` holds on the quotient.

mod builtin;
mod permutation;
mod resolution;

use std::sync::Arc;

use crate::abelian::lattice::ColumnEchelon;
use crate::abelian::snf::hnf_reduce;
use crate::abelian::{AbHom, Int, IntMatrix, PresentedAbelianGroup};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

pub use builtin::*;
pub use permutation::{permutation_module, PermutationModule};
pub use resolution::{permutation_cover, permutation_cover_with, PermutationResolution};

#[derive(Clone, Debug)]
pub struct GModule {
    group: FiniteGroup,
    underlying: PresentedAbelianGroup,
    action: Vec<IntMatrix>,
    elements: Arc<Vec<IntMatrix>>,
}

impl PartialEq for GModule {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.underlying == other.underlying && self.action == other.action
    }
}

impl GModule {
    /// Checks that every action matrix preserves the relations and that the
    /// induced map from the group is a homomorphism on the quotient.
    pub fn new(group: &FiniteGroup, underlying: PresentedAbelianGroup, action: Vec<IntMatrix>) -> Result<Self> {
        let n = underlying.generator_count();
        if action.len() != group.generators().len() {
            return Err(Error::structural(format!("{} action matrices for {} group generators", action.len(), group.generators().len())));
        }
        for (i, a) in action.iter().enumerate() {
            if a.rows() != n || a.cols() != n {
                return Err(Error::structural(format!("action matrix s{i} is {}x{}, expected {n}x{n}", a.rows(), a.cols())));
            }
            for r in 0..underlying.relations().rows() {
                if !underlying.is_zero_element(&a.mul_vec(underlying.relations().row(r))) {
                    return Err(Error::structural(format!("action of s{i} does not preserve the relation lattice (relator {r})")));
                }
            }
        }
        let reduce = |m: IntMatrix| -> IntMatrix {
            if underlying.relations().rows() == 0 {
                return m;
            }
            let cols: Vec<Vec<Int>> = m.column_vecs().iter().map(|c| hnf_reduce(underlying.relations(), c)).collect();
            IntMatrix::from_columns(&cols, n)
        };
        let mut elements: Vec<IntMatrix> = Vec::with_capacity(group.order());
        elements.push(IntMatrix::identity(n));
        for x in 1..group.order() {
            let w = group.element_word(x);
            let (&last, prefix) = w.split_last().expect("non-identity has a nonempty word");
            let parent = word_prefix_element(group, prefix);
            elements.push(reduce(elements[parent].mul(&action[last])));
        }
        for x in group.elements() {
            for (si, &s) in group.generators().iter().enumerate() {
                let diff = elements[x].mul(&action[si]).sub(&elements[group.mul(x, s)]);
                if !(0..n).all(|j| underlying.is_zero_element(&diff.column(j))) {
                    return Err(Error::structural(format!(
                        "action is not a group homomorphism: A({}) A(s{si}) differs from A({}*s{si})",
                        group.word_string(x),
                        group.word_string(x)
                    )));
                }
            }
        }
        Ok(GModule { group: group.clone(), underlying, action, elements: Arc::new(elements) })
    }

    /// `Z^rank` with every generator acting by the given integer matrices.
    pub fn free(group: &FiniteGroup, action: Vec<IntMatrix>) -> Result<Self> {
        let n = action.first().map_or(0, IntMatrix::rows);
        Self::new(group, PresentedAbelianGroup::free(n), action)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn underlying(&self) -> &PresentedAbelianGroup {
        &self.underlying
    }

    /// Number of generators of the underlying presentation.
    pub fn rank(&self) -> usize {
        self.underlying.generator_count()
    }

    pub fn action(&self) -> &[IntMatrix] {
        &self.action
    }

    pub fn element_matrix(&self, x: usize) -> &IntMatrix {
        &self.elements[x]
    }

    pub fn act(&self, x: usize, v: &[Int]) -> Vec<Int> {
        self.elements[x].mul_vec(v)
    }

    pub fn is_zero_element(&self, v: &[Int]) -> bool {
        self.underlying.is_zero_element(v)
    }

    pub fn is_free(&self) -> bool {
        self.underlying.is_free()
    }

    /// `g` acts as the identity on the quotient.
    pub fn acts_trivially(&self, x: usize) -> bool {
        let d = self.elements[x].sub(&IntMatrix::identity(self.rank()));
        (0..self.rank()).all(|j| self.is_zero_element(&d.column(j)))
    }

    pub fn is_trivial_action(&self) -> bool {
        (0..self.group.generators().len()).all(|i| self.acts_trivially(self.group.generators()[i]))
    }

    /// Elements acting trivially.
    pub fn action_kernel(&self) -> Subgroup {
        Subgroup::from_members(&self.group, self.group.elements().filter(|&x| self.acts_trivially(x)).collect())
    }

    pub fn direct_sum(parts: &[&GModule]) -> Result<GModule> {
        let group = match parts.first() {
            Some(p) => p.group.clone(),
            None => return Err(Error::structural("direct sum of no modules has no group")),
        };
        if parts.iter().any(|p| p.group != group) {
            return Err(Error::structural("direct sum of modules over different groups"));
        }
        let underlying = PresentedAbelianGroup::direct_sum(&parts.iter().map(|p| &p.underlying).collect::<Vec<_>>());
        let action = (0..group.generators().len())
            .map(|i| IntMatrix::block_diagonal(&parts.iter().map(|p| &p.action[i]).collect::<Vec<_>>()))
            .collect();
        GModule::new(&group, underlying, action)
    }

    /// The same module in Smith coordinates: underlying `diag(moduli)` with
    /// unit moduli dropped. Returns the module with the coordinate changes
    /// `new = to_new * old` and `old = to_old * new`.
    pub fn diagonalized(&self) -> (GModule, IntMatrix, IntMatrix) {
        let d = self.underlying.diagonalization();
        let moduli = d.moduli.clone();
        let action = self
            .action
            .iter()
            .map(|a| {
                let mut m = d.to_new.mul(a).mul(&d.to_old);
                for (i, md) in moduli.iter().enumerate() {
                    for v in m.row_mut(i) {
                        *v = crate::abelian::int::rem_euclid(v, md);
                    }
                }
                m
            })
            .collect();
        let module = GModule::new(&self.group, PresentedAbelianGroup::diagonal(&moduli), action)
            .expect("change of coordinates preserves the module axioms");
        (module, d.to_new.clone(), d.to_old.clone())
    }

    /// Trace of each element's action (free modules only).
    pub fn traces(&self) -> Vec<Int> {
        self.elements.iter().map(|m| (0..m.rows()).fold(Int::from(0u8), |acc, i| acc + &m[(i, i)])).collect()
    }
}

fn word_prefix_element(group: &FiniteGroup, word: &[usize]) -> usize {
    word.iter().fold(0, |acc, &i| group.mul(acc, group.generators()[i]))
}

/// Equivariant homomorphism `target = matrix * source`.
#[derive(Clone, Debug, PartialEq)]
pub struct GModuleHom {
    pub source: GModule,
    pub target: GModule,
    pub matrix: IntMatrix,
}

impl GModuleHom {
    pub fn new(source: GModule, target: GModule, matrix: IntMatrix) -> Result<Self> {
        if source.group != target.group {
            return Err(Error::structural("module homomorphism between modules over different groups"));
        }
        AbHom::new(source.underlying.clone(), target.underlying.clone(), matrix.clone())?;
        for i in 0..source.action.len() {
            let d = matrix.mul(&source.action[i]).sub(&target.action[i].mul(&matrix));
            if !(0..d.cols()).all(|j| target.is_zero_element(&d.column(j))) {
                return Err(Error::structural(format!("map does not commute with the action of s{i}")));
            }
        }
        Ok(GModuleHom { source, target, matrix })
    }

    pub fn identity(m: &GModule) -> Self {
        GModuleHom { source: m.clone(), target: m.clone(), matrix: IntMatrix::identity(m.rank()) }
    }

    pub fn zero(source: &GModule, target: &GModule) -> Self {
        GModuleHom { source: source.clone(), target: target.clone(), matrix: IntMatrix::zeros(target.rank(), source.rank()) }
    }

    pub fn as_abhom(&self) -> AbHom {
        AbHom { source: self.source.underlying.clone(), target: self.target.underlying.clone(), matrix: self.matrix.clone() }
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &GModuleHom) -> Result<GModuleHom> {
        if first.target != self.source {
            return Err(Error::structural("composition of non-composable module maps"));
        }
        Ok(GModuleHom { source: first.source.clone(), target: self.target.clone(), matrix: self.matrix.mul(&first.matrix) })
    }

    /// Kernel as a module in its own right, with its inclusion.
    pub fn kernel_module(&self) -> (GModule, GModuleHom) {
        let src = &self.source;
        let n = src.rank();
        let basis = self.as_abhom().kernel_lattice();
        let k = basis.len();
        let solver = ColumnEchelon::new(n, &basis);
        let solve = |v: &[Int]| solver.solve(v).expect("vector lies in the kernel lattice");
        let rel_rows: Vec<Vec<Int>> = src.underlying.relations().row_vecs().iter().map(|r| solve(r)).collect();
        let underlying = PresentedAbelianGroup::new(k, &IntMatrix::from_rows(rel_rows, k)).expect("kernel relations");
        let action = src
            .action
            .iter()
            .map(|a| {
                let cols: Vec<Vec<Int>> = basis.iter().map(|b| solve(&a.mul_vec(b))).collect();
                IntMatrix::from_columns(&cols, k)
            })
            .collect();
        let module = GModule::new(&src.group, underlying, action).expect("kernel is a submodule");
        let incl = GModuleHom { source: module.clone(), target: src.clone(), matrix: IntMatrix::from_columns(&basis, n) };
        (module, incl)
    }

    /// Cokernel as a module, with the projection from the target.
    pub fn cokernel_module(&self) -> (GModule, GModuleHom) {
        let t = &self.target;
        let rel = t.underlying.relations().vstack(&self.matrix.transpose());
        let underlying = PresentedAbelianGroup::new(t.rank(), &rel).expect("cokernel relations");
        let module = GModule::new(&t.group, underlying, t.action.clone()).expect("image is a submodule");
        let proj = GModuleHom { source: t.clone(), target: module.clone(), matrix: IntMatrix::identity(t.rank()) };
        (module, proj)
    }

    pub fn is_injective(&self) -> bool {
        self.as_abhom().is_injective()
    }

    pub fn is_surjective(&self) -> bool {
        self.as_abhom().is_surjective()
    }
}

/// Contragredient module `Hom_Z(M, Z)` with `s` acting by `(A_{s^-1})^T`.
/// Presentations with relations but no torsion are first rewritten in a basis.
pub fn dual_module(m: &GModule) -> Result<GModule> {
    let inv = m.underlying.invariant_factors();
    if !inv.torsion.is_empty() {
        let t: Vec<String> = inv.torsion.iter().map(|d| format!("Z/{d}")).collect();
        return Err(Error::structural(format!("dual of a module with torsion {}", t.join(" + "))));
    }
    let free = if m.underlying.relations().rows() == 0 { m.clone() } else { m.diagonalized().0 };
    let g = &free.group;
    let action = g.generators().iter().map(|&s| free.element_matrix(g.inv(s)).transpose()).collect();
    GModule::free(g, action)
}

/// The module viewed over a subgroup. The subgroup is rebuilt as a group via
/// [`Subgroup::as_group`]; the embedding is returned alongside.
pub fn restrict(m: &GModule, h: &Subgroup) -> Result<(GModule, Vec<usize>)> {
    if h.parent() != &m.group {
        return Err(Error::structural("restriction to a subgroup of a different group"));
    }
    if h.order() == m.group.order() {
        return Ok((m.clone(), m.group.elements().collect()));
    }
    let (hg, emb) = h.as_group();
    let action = hg.generators().iter().map(|&t| m.element_matrix(emb[t]).clone()).collect();
    Ok((GModule::new(&hg, m.underlying.clone(), action)?, emb))
}

/// The quotient of the group by the action kernel, with the module over it.
/// The quotient keeps one generator per original generator, so the action
/// matrices are unchanged.
pub fn faithful_quotient(m: &GModule) -> (FiniteGroup, GModule) {
    let kernel = m.action_kernel();
    if kernel.order() == 1 {
        return (m.group.clone(), m.clone());
    }
    let (q, _) = m.group.quotient(&kernel).expect("action kernel is normal");
    let module = GModule::new(&q, m.underlying.clone(), m.action.clone()).expect("action factors through the quotient");
    (q, module)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, cyclic_product, klein_four, symmetric};

    fn m1(v: i64) -> IntMatrix {
        IntMatrix::from_i64(&[&[v]])
    }

    #[test]
    fn rejects_ill_defined_actions() {
        let c2 = cyclic(2);
        // acting by 2 on Z is not invertible
        assert!(GModule::free(&c2, vec![m1(2)]).is_err());
        // acting by -1 on Z/3 is fine, by 1 on Z/3 too
        let z3 = PresentedAbelianGroup::cyclic(3);
        assert!(GModule::new(&c2, z3.clone(), vec![m1(-1)]).is_ok());
        // Z/4 with the generator of Z/2 acting by 3 = -1 is fine; by 2 is not
        let z4 = PresentedAbelianGroup::cyclic(4);
        assert!(GModule::new(&c2, z4.clone(), vec![m1(3)]).is_ok());
        assert!(GModule::new(&c2, z4, vec![m1(2)]).is_err());
        // the relation lattice 2Z of Z/2 inside Z^1 with action that breaks it
        let rel = PresentedAbelianGroup::new(2, &IntMatrix::from_i64(&[&[2, 0]])).unwrap();
        let swap = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert!(GModule::new(&c2, rel, vec![swap]).is_err());
    }

    #[test]
    fn element_matrices_multiply() {
        let s3 = symmetric(3);
        let reg = regular_module(&s3);
        for x in s3.elements() {
            for y in s3.elements() {
                assert_eq!(reg.element_matrix(x).mul(reg.element_matrix(y)), *reg.element_matrix(s3.mul(x, y)));
            }
        }
    }

    #[test]
    fn dual_examples() {
        let g = klein_four();
        let reg = regular_module(&g);
        let d = dual_module(&reg).unwrap();
        assert_eq!(d.traces(), reg.traces());
        let c2 = cyclic(2);
        let sgn = sign_module(&c2, &[-1]).unwrap();
        assert_eq!(dual_module(&sgn).unwrap(), sgn);
        let t = trivial_module(&c2, 1);
        assert_eq!(dual_module(&t).unwrap(), t);
        let tors = GModule::new(&c2, PresentedAbelianGroup::cyclic(2), vec![m1(1)]).unwrap();
        let err = dual_module(&tors).unwrap_err().to_string();
        assert!(err.contains("Z/2"), "{err}");
    }

    #[test]
    fn restriction_examples() {
        let g = klein_four();
        let sgn = sign_module(&g, &[-1, -1]).unwrap();
        let diag = Subgroup::generated_by(&g, &[g.mul(g.generators()[0], g.generators()[1])]);
        let (r, _) = restrict(&sgn, &diag).unwrap();
        assert!(r.is_trivial_action());
        let reg = regular_module(&g);
        let (r, _) = restrict(&reg, &g.trivial_subgroup()).unwrap();
        assert_eq!(r.rank(), 4);
        assert!(r.is_trivial_action());
        let (r, emb) = restrict(&reg, &g.whole()).unwrap();
        for x in r.group().elements() {
            assert_eq!(r.element_matrix(x), reg.element_matrix(emb[x]));
        }
    }

    #[test]
    fn faithful_quotient_examples() {
        let s3 = symmetric(3);
        let (q, m) = faithful_quotient(&trivial_module(&s3, 2));
        assert_eq!((q.order(), m.rank()), (1, 2));
        let reg = regular_module(&s3);
        assert_eq!(faithful_quotient(&reg).0.order(), 6);
        let g = klein_four();
        let m = sign_module(&g, &[1, -1]).unwrap();
        let (q, fm) = faithful_quotient(&m);
        assert_eq!(q.order(), 2);
        assert_eq!(fm.action_kernel().order(), 1);
    }

    #[test]
    fn kernel_and_cokernel_modules() {
        let g = cyclic_product(&[2, 2]);
        let reg = regular_module(&g);
        let aug = augmentation_map(&reg);
        let (i_g, incl) = aug.kernel_module();
        assert_eq!(i_g.rank(), 3);
        assert!(aug.compose(&incl).unwrap().as_abhom().is_zero_map());
        let (coker, _) = incl.cokernel_module();
        assert_eq!(coker.underlying().invariant_factors().free_rank, 1);
        assert!(coker.is_trivial_action());
    }
}
