use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use serde::Serialize;

use super::int::{is_one, rem_euclid, Int};
use super::lattice::{canonical_basis, congruence_kernel, ColumnEchelon, Congruence};
use super::matrix::{vec_is_zero, IntMatrix, SparseRow};
use super::snf::{hermite_normal_form, hnf_contains, smith_normal_form};
use crate::error::{Error, Result};

/// Canonical form `Z^free_rank + Z/t_1 + ... + Z/t_k` with `t_i | t_{i+1}`, `t_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct InvariantFactors {
    pub free_rank: usize,
    #[serde(serialize_with = "ser_ints")]
    pub torsion: Vec<Int>,
}

fn ser_ints<S: serde::Serializer>(v: &[Int], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

impl InvariantFactors {
    pub fn zero() -> Self {
        InvariantFactors { free_rank: 0, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<Int> {
        self.is_finite().then(|| self.torsion.iter().fold(Int::one(), |a, b| a * b))
    }

    /// Exponent of the torsion part.
    pub fn exponent(&self) -> Int {
        self.torsion.last().cloned().unwrap_or_else(Int::one)
    }

    pub fn torsion_i64(&self) -> Vec<i64> {
        self.torsion.iter().map(|t| i64::try_from(t).expect("torsion factor fits i64")).collect()
    }
}

impl fmt::Display for InvariantFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Change of generators that makes the relation lattice diagonal.
///
/// New coordinates `y = to_new * x` keep only the generators whose modulus
/// is not 1; modulus 0 marks a free coordinate. `x = to_old * y`.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub moduli: Vec<Int>,
    pub to_new: IntMatrix,
    pub to_old: IntMatrix,
}

/// Finitely generated abelian group `Z^n / rowspan(relations)`.
#[derive(Clone)]
pub struct PresentedAbelianGroup {
    generator_count: usize,
    relations: IntMatrix,
    invariants: OnceLock<InvariantFactors>,
    diagonal: OnceLock<Arc<Diagonalization>>,
}

impl PartialEq for PresentedAbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.generator_count == other.generator_count && self.relations == other.relations
    }
}

impl Eq for PresentedAbelianGroup {}

impl fmt::Debug for PresentedAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PresentedAbelianGroup(gens={}, relations={}, value={})", self.generator_count, self.relations, self.invariant_factors())
    }
}

impl fmt::Display for PresentedAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.invariant_factors())
    }
}

impl PresentedAbelianGroup {
    /// Relations are given as rows and stored in Hermite normal form.
    pub fn new(generator_count: usize, relations: &IntMatrix) -> Result<Self> {
        if relations.cols() != generator_count && relations.rows() > 0 {
            return Err(Error::structural(format!(
                "relation matrix has {} columns but the group has {} generators",
                relations.cols(),
                generator_count
            )));
        }
        let rel = if relations.rows() == 0 { IntMatrix::zeros(0, generator_count) } else { hermite_normal_form(relations) };
        Ok(Self::from_hnf(generator_count, rel))
    }

    fn from_hnf(generator_count: usize, relations: IntMatrix) -> Self {
        PresentedAbelianGroup { generator_count, relations, invariants: OnceLock::new(), diagonal: OnceLock::new() }
    }

    pub fn free(rank: usize) -> Self {
        Self::from_hnf(rank, IntMatrix::zeros(0, rank))
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    pub fn cyclic(n: i64) -> Self {
        Self::new(1, &IntMatrix::from_i64(&[&[n]])).expect("1x1 relation")
    }

    /// Diagonal presentation with the given moduli (0 = free coordinate).
    pub fn diagonal(moduli: &[Int]) -> Self {
        let n = moduli.len();
        let rows: Vec<Vec<Int>> = moduli
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(i, m)| {
                let mut r = vec![Int::zero(); n];
                r[i] = m.clone();
                r
            })
            .collect();
        Self::new(n, &IntMatrix::from_rows(rows, n)).expect("diagonal relations")
    }

    pub fn from_invariants(inv: &InvariantFactors) -> Self {
        let mut moduli = inv.torsion.clone();
        moduli.extend(std::iter::repeat_n(Int::zero(), inv.free_rank));
        Self::diagonal(&moduli)
    }

    pub fn direct_sum(parts: &[&PresentedAbelianGroup]) -> Self {
        let n = parts.iter().map(|p| p.generator_count).sum();
        let blocks: Vec<&IntMatrix> = parts.iter().map(|p| &p.relations).collect();
        Self::new(n, &IntMatrix::block_diagonal(&blocks)).expect("block relations")
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    /// Relations in Hermite normal form (rows).
    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn invariant_factors(&self) -> InvariantFactors {
        self.invariants
            .get_or_init(|| {
                let s = smith_normal_form(&self.relations);
                let diag = s.diagonal();
                let rank = diag.iter().filter(|d| !d.is_zero()).count();
                InvariantFactors {
                    free_rank: self.generator_count - rank,
                    torsion: diag.into_iter().filter(|d| !d.is_zero() && !is_one(d)).collect(),
                }
            })
            .clone()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors().is_zero()
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors().torsion.is_empty()
    }

    /// Whether the vector of generator coefficients is zero in the group.
    pub fn is_zero_element(&self, v: &[Int]) -> bool {
        assert_eq!(v.len(), self.generator_count);
        hnf_contains(&self.relations, v)
    }

    pub fn diagonalization(&self) -> Arc<Diagonalization> {
        self.diagonal
            .get_or_init(|| {
                let n = self.generator_count;
                let s = smith_normal_form(&self.relations);
                let diag = s.diagonal();
                let mut keep = Vec::new();
                let mut moduli = Vec::new();
                for i in 0..n {
                    let d = diag.get(i).cloned().unwrap_or_else(Int::zero);
                    if !is_one(&d) {
                        keep.push(i);
                        moduli.push(d);
                    }
                }
                Arc::new(Diagonalization {
                    moduli,
                    to_new: s.v.transpose().select_rows(&keep),
                    to_old: s.v_inverse().transpose().select_cols(&keep),
                })
            })
            .clone()
    }
}

/// Homomorphism of presented groups, acting on generator coordinates by
/// `target = matrix * source` (matrix is `target.gens x source.gens`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbHom {
    pub source: PresentedAbelianGroup,
    pub target: PresentedAbelianGroup,
    pub matrix: IntMatrix,
}

impl AbHom {
    pub fn new(source: PresentedAbelianGroup, target: PresentedAbelianGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.generator_count() || matrix.cols() != source.generator_count() {
            return Err(Error::structural(format!(
                "homomorphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.generator_count(),
                source.generator_count()
            )));
        }
        for i in 0..source.relations().rows() {
            let img = matrix.mul_vec(source.relations().row(i));
            if !target.is_zero_element(&img) {
                return Err(Error::structural(format!(
                    "homomorphism is not well defined: relator {i} of the source maps outside the target relations"
                )));
            }
        }
        Ok(AbHom { source, target, matrix })
    }

    pub fn identity(g: &PresentedAbelianGroup) -> Self {
        AbHom { source: g.clone(), target: g.clone(), matrix: IntMatrix::identity(g.generator_count()) }
    }

    pub fn zero(source: &PresentedAbelianGroup, target: &PresentedAbelianGroup) -> Self {
        AbHom {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.generator_count(), source.generator_count()),
        }
    }

    pub fn apply(&self, x: &[Int]) -> Vec<Int> {
        self.matrix.mul_vec(x)
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &AbHom) -> Result<AbHom> {
        if first.target != self.source {
            return Err(Error::structural("composition of non-composable homomorphisms"));
        }
        Ok(AbHom { source: first.source.clone(), target: self.target.clone(), matrix: self.matrix.mul(&first.matrix) })
    }

    pub fn is_zero_map(&self) -> bool {
        (0..self.source.generator_count()).all(|j| self.target.is_zero_element(&self.matrix.column(j)))
    }

    /// Basis (columns) of the preimage of the target relations, a lattice
    /// in the source generator coordinates that contains the source relations.
    pub fn kernel_lattice(&self) -> Vec<Vec<Int>> {
        let diag = self.target.diagonalization();
        let m = diag.to_new.mul(&self.matrix);
        let constraints = (0..m.rows()).map(|i| Congruence {
            row: m.row(i).iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (j, v.clone())).collect::<SparseRow>(),
            modulus: diag.moduli[i].clone(),
        });
        congruence_kernel(self.source.generator_count(), constraints)
    }

    pub fn kernel(&self) -> Subquotient {
        let n = self.source.generator_count();
        Subquotient::from_lattices(n, self.kernel_lattice(), self.source.relations().row_vecs())
            .expect("source relations lie in the kernel of a well-defined map")
    }

    pub fn cokernel(&self) -> PresentedAbelianGroup {
        let rel = self.target.relations().vstack(&self.matrix.transpose());
        PresentedAbelianGroup::new(self.target.generator_count(), &rel).expect("cokernel relations")
    }

    pub fn image(&self) -> Subquotient {
        let n = self.target.generator_count();
        let mut gens = self.matrix.column_vecs();
        gens.extend(self.target.relations().row_vecs());
        let lat = canonical_basis(n, gens);
        Subquotient::from_lattices(n, lat, self.target.relations().row_vecs()).expect("relations lie in the image lattice")
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().group.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_trivial()
    }
}

/// `K / I` for lattices `I ⊆ K ⊆ Z^n`, with explicit lifts of the
/// generators and a coordinate map for elements of `K`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub group: PresentedAbelianGroup,
    ambient_dim: usize,
    kernel_basis: Vec<Vec<Int>>,
    lifts: Vec<Vec<Int>>,
    // class coordinates = selected rows of U applied to the K-coordinates
    coord_rows: IntMatrix,
    moduli: Vec<Int>,
    solver: Arc<ColumnEchelon>,
}

impl Subquotient {
    /// `kernel_basis` must be linearly independent; `image_gens` must lie in its span.
    pub fn from_lattices(n: usize, kernel_basis: Vec<Vec<Int>>, image_gens: Vec<Vec<Int>>) -> Result<Self> {
        let k = kernel_basis.len();
        let solver = ColumnEchelon::new(n, &kernel_basis);
        if solver.rank() != k {
            return Err(Error::structural("kernel generators are not linearly independent"));
        }
        let mut coords = Vec::with_capacity(image_gens.len());
        for g in &image_gens {
            match solver.solve(g) {
                Some(c) => coords.push(c),
                None => return Err(Error::structural("image is not contained in the kernel: the composite is not the zero map")),
            }
        }
        // Z^k / span(coords)
        let c = IntMatrix::from_columns(&coords, k);
        let s = smith_normal_form(&c);
        let diag = s.diagonal();
        let mut torsion_idx = Vec::new();
        let mut free_idx = Vec::new();
        for i in 0..k {
            let d = diag.get(i).cloned().unwrap_or_else(Int::zero);
            if d.is_zero() {
                free_idx.push(i);
            } else if !is_one(&d) {
                torsion_idx.push(i);
            }
        }
        let order: Vec<usize> = torsion_idx.iter().chain(&free_idx).copied().collect();
        let moduli: Vec<Int> = order.iter().map(|&i| diag.get(i).cloned().unwrap_or_else(Int::zero)).collect();
        let u_inv = s.u_inverse();
        let kb = IntMatrix::from_columns(&kernel_basis, n);
        let lifts: Vec<Vec<Int>> = order.iter().map(|&i| kb.mul_vec(&u_inv.column(i))).collect();
        Ok(Subquotient {
            group: PresentedAbelianGroup::diagonal(&moduli),
            ambient_dim: n,
            kernel_basis,
            lifts,
            coord_rows: s.u.select_rows(&order),
            moduli,
            solver: Arc::new(solver),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Lift of generator `i` of the result to the ambient lattice.
    pub fn section(&self, i: usize) -> &[Int] {
        &self.lifts[i]
    }

    pub fn lifts(&self) -> &[Vec<Int>] {
        &self.lifts
    }

    pub fn kernel_basis(&self) -> &[Vec<Int>] {
        &self.kernel_basis
    }

    pub fn moduli(&self) -> &[Int] {
        &self.moduli
    }

    /// Class of an ambient vector, reduced modulo the torsion orders;
    /// `None` if the vector is not in the kernel lattice.
    pub fn coordinates(&self, x: &[Int]) -> Option<Vec<Int>> {
        let c = self.solver.solve(x)?;
        let y = self.coord_rows.mul_vec(&c);
        Some(y.iter().zip(&self.moduli).map(|(v, m)| rem_euclid(v, m)).collect())
    }

    /// Whether `x` (in the kernel lattice) is zero in the quotient.
    pub fn is_trivial_class(&self, x: &[Int]) -> Option<bool> {
        self.coordinates(x).map(|c| vec_is_zero(&c))
    }
}

/// `ker(kernel_of) / im(image_of)`; requires `image_of.target == kernel_of.source`
/// and `kernel_of ∘ image_of = 0`.
pub fn subquotient(kernel_of: &AbHom, image_of: &AbHom) -> Result<Subquotient> {
    if image_of.target != kernel_of.source {
        return Err(Error::structural("subquotient: image_of.target differs from kernel_of.source"));
    }
    let composite = kernel_of.compose(image_of)?;
    if !composite.is_zero_map() {
        return Err(Error::structural("subquotient: kernel_of ∘ image_of is not the zero map"));
    }
    let n = kernel_of.source.generator_count();
    let mut gens = image_of.matrix.column_vecs();
    gens.extend(kernel_of.source.relations().row_vecs());
    Subquotient::from_lattices(n, kernel_of.kernel_lattice(), gens)
}

/// Invariant factors of the cokernel of an integer matrix (columns generate).
pub fn invariant_factors(g: &PresentedAbelianGroup) -> InvariantFactors {
    g.invariant_factors()
}

/// `(Hom_Z(g, Z), Ext^1_Z(g, Z))` from the free resolution
/// `0 -> Z^q --R^T--> Z^n -> g -> 0` given by the Hermite-reduced relations.
pub fn ext1_and_hom_z(g: &PresentedAbelianGroup) -> (PresentedAbelianGroup, PresentedAbelianGroup) {
    let n = g.generator_count();
    let r = g.relations();
    let q = r.rows();
    // dual complex Z^n --R--> Z^q
    let dual = AbHom { source: PresentedAbelianGroup::free(n), target: PresentedAbelianGroup::free(q), matrix: r.clone() };
    let hom = dual.kernel().group;
    let ext1 = dual.cokernel();
    let ext1 = PresentedAbelianGroup::from_invariants(&ext1.invariant_factors());
    (hom, ext1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::int::int;

    fn inv(free: usize, tors: &[i64]) -> InvariantFactors {
        InvariantFactors { free_rank: free, torsion: tors.iter().map(|&t| int(t)).collect() }
    }

    #[test]
    fn invariant_factor_examples() {
        assert_eq!(PresentedAbelianGroup::cyclic(2).invariant_factors(), inv(0, &[2]));
        let g = PresentedAbelianGroup::new(2, &IntMatrix::from_i64(&[&[2, 4], &[6, 8]])).unwrap();
        assert_eq!(g.invariant_factors(), inv(0, &[2, 4]));
        assert_eq!(PresentedAbelianGroup::free(2).invariant_factors(), inv(2, &[]));
        assert_eq!(PresentedAbelianGroup::zero().to_string(), "0");
        assert_eq!(PresentedAbelianGroup::new(1, &IntMatrix::from_i64(&[&[1]])).unwrap().to_string(), "0");
    }

    #[test]
    fn subquotient_examples() {
        let z = PresentedAbelianGroup::free(1);
        let zero_map = AbHom::zero(&z, &z);
        let times3 = AbHom::new(z.clone(), z.clone(), IntMatrix::from_i64(&[&[3]])).unwrap();
        assert_eq!(subquotient(&zero_map, &times3).unwrap().group.invariant_factors(), inv(0, &[3]));
        let id = AbHom::identity(&z);
        assert!(subquotient(&id, &zero_map).unwrap().group.is_trivial());
        // (a,b) -> a+b  and  1 -> (2,-2):  ker = Z(1,-1), image = 2Z(1,-1)
        let z2 = PresentedAbelianGroup::free(2);
        let sum = AbHom::new(z2.clone(), z.clone(), IntMatrix::from_i64(&[&[1, 1]])).unwrap();
        let inc = AbHom::new(z.clone(), z2.clone(), IntMatrix::from_i64(&[&[2], &[-2]])).unwrap();
        let sq = subquotient(&sum, &inc).unwrap();
        assert_eq!(sq.group.invariant_factors(), inv(0, &[2]));
        let lift = sq.section(0).to_vec();
        assert_eq!(sq.coordinates(&lift), Some(vec![int(1)]));
        assert_eq!(sq.coordinates(&[int(2), int(-2)]), Some(vec![int(0)]));
        assert_eq!(sq.coordinates(&[int(1), int(0)]), None);
    }

    #[test]
    fn subquotient_rejects_non_complex() {
        let z = PresentedAbelianGroup::free(1);
        let id = AbHom::identity(&z);
        assert!(subquotient(&id, &id).is_err());
        let z2 = PresentedAbelianGroup::free(2);
        assert!(subquotient(&id, &AbHom::identity(&z2)).is_err());
    }

    #[test]
    fn ill_defined_hom_rejected() {
        let z2 = PresentedAbelianGroup::cyclic(2);
        let z3 = PresentedAbelianGroup::cyclic(3);
        assert!(AbHom::new(z2, z3, IntMatrix::from_i64(&[&[1]])).is_err());
    }

    #[test]
    fn ext_and_hom() {
        let (h, e) = ext1_and_hom_z(&PresentedAbelianGroup::cyclic(2));
        assert!(h.is_trivial());
        assert_eq!(e.invariant_factors(), inv(0, &[2]));
        let (h, e) = ext1_and_hom_z(&PresentedAbelianGroup::free(3));
        assert_eq!(h.invariant_factors(), inv(3, &[]));
        assert!(e.is_trivial());
        let g = PresentedAbelianGroup::direct_sum(&[&PresentedAbelianGroup::free(1), &PresentedAbelianGroup::cyclic(6)]);
        let (h, e) = ext1_and_hom_z(&g);
        assert_eq!(h.invariant_factors(), inv(1, &[]));
        assert_eq!(e.invariant_factors(), inv(0, &[6]));
    }
}
