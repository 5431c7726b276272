//! Finite groups given by a full multiplication table.
//!
//! Elements are indexed `0..order` with `0` the identity, in breadth-first
//! order from the identity over right multiplication by the generators
//! (applied in generator order). Permutations compose as functions:
//! `(p * q)(x) = p(q(x))`.

mod catalog;
mod subgroup;

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

pub use catalog::*;
pub use subgroup::Subgroup;

use crate::error::{Error, Result};

/// Largest group the constructors accept unless a caller raises the bound.
pub const DEFAULT_ORDER_BOUND: usize = 5000;

#[derive(Debug)]
struct GroupData {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<usize>,
    generators: Vec<usize>,
    words: Vec<Vec<usize>>,
    element_orders: Vec<usize>,
    perms: Option<Vec<Vec<usize>>>,
}

/// A finite group with its multiplication table. Cheap to clone.
#[derive(Clone)]
pub struct FiniteGroup(Arc<GroupData>);

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.table == other.0.table && self.0.generators == other.0.generators)
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order={}, generators={})", self.order(), self.generators().len())
    }
}

impl FiniteGroup {
    /// Group generated by permutations of `{0..n-1}`, given as image lists.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<Self> {
        Self::from_permutations_bounded(gens, DEFAULT_ORDER_BOUND)
    }

    pub fn from_permutations_bounded(gens: &[Vec<usize>], bound: usize) -> Result<Self> {
        let degree = gens.first().map_or(0, Vec::len);
        for (i, g) in gens.iter().enumerate() {
            if g.len() != degree {
                return Err(Error::input(
                    format!("permutation_generators[{i}]"),
                    format!("has degree {} but generator 0 has degree {degree}", g.len()),
                ));
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if x >= degree || seen[x] {
                    return Err(Error::input(format!("permutation_generators[{i}]"), "not a bijection"));
                }
                seen[x] = true;
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut perms = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (si, s) in gens.iter().enumerate() {
                let y: Vec<usize> = s.iter().map(|&k| perms[x][k]).collect();
                if index.contains_key(&y) {
                    continue;
                }
                if perms.len() >= bound {
                    return Err(Error::Resource { what: "group order".into(), requested: perms.len() + 1, limit: bound });
                }
                let mut w = words[x].clone();
                w.push(si);
                index.insert(y.clone(), perms.len());
                queue.push_back(perms.len());
                perms.push(y);
                words.push(w);
            }
        }
        let n = perms.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let c: Vec<usize> = perms[b].iter().map(|&k| perms[a][k]).collect();
                table[a * n + b] = index[&c] as u32;
            }
        }
        let generators = gens.iter().map(|g| index[g]).collect();
        Self::assemble(n, table, generators, words, Some(perms))
    }

    /// Group from an explicit table (`table[a * n + b] = a * b`) and generators.
    /// Elements are re-indexed canonically; the second value maps old indices to new.
    pub fn from_table(order: usize, table: &[usize], generators: &[usize]) -> Result<(Self, Vec<usize>)> {
        if table.len() != order * order || table.iter().any(|&x| x >= order) {
            return Err(Error::structural("multiplication table has the wrong shape"));
        }
        if order == 0 {
            return Err(Error::structural("a group has at least one element"));
        }
        let e = (0..order)
            .find(|&a| (0..order).all(|b| table[a * order + b] == b && table[b * order + a] == b))
            .ok_or_else(|| Error::structural("multiplication table has no identity"))?;
        let mut new_of = vec![usize::MAX; order];
        let mut old_of = vec![e];
        let mut words = vec![vec![]];
        new_of[e] = 0;
        let mut queue = VecDeque::from([e]);
        while let Some(x) = queue.pop_front() {
            for (si, &s) in generators.iter().enumerate() {
                let y = table[x * order + s];
                if new_of[y] != usize::MAX {
                    continue;
                }
                new_of[y] = old_of.len();
                let mut w = words[new_of[x]].clone();
                w.push(si);
                words.push(w);
                old_of.push(y);
                queue.push_back(y);
            }
        }
        if old_of.len() != order {
            return Err(Error::structural("generators do not generate the group"));
        }
        let mut t = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                t[a * order + b] = new_of[table[old_of[a] * order + old_of[b]]] as u32;
            }
        }
        let gens = generators.iter().map(|&g| new_of[g]).collect();
        Ok((Self::assemble(order, t, gens, words, None)?, new_of))
    }

    fn assemble(n: usize, table: Vec<u32>, generators: Vec<usize>, words: Vec<Vec<usize>>, perms: Option<Vec<Vec<usize>>>) -> Result<Self> {
        let mul = |a: usize, b: usize| table[a * n + b] as usize;
        // identity and inverses
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            if mul(0, a) != a || mul(a, 0) != a {
                return Err(Error::structural("element 0 is not the identity"));
            }
            match (0..n).find(|&b| mul(a, b) == 0) {
                Some(b) if mul(b, a) == 0 => inverse[a] = b,
                _ => return Err(Error::structural(format!("element {a} has no two-sided inverse"))),
            }
        }
        // Light's associativity test against the generators
        for &s in &generators {
            for x in 0..n {
                for y in 0..n {
                    if mul(mul(x, y), s) != mul(x, mul(y, s)) {
                        return Err(Error::structural("multiplication table is not associative"));
                    }
                }
            }
        }
        let element_orders = (0..n)
            .map(|a| {
                let mut k = 1;
                let mut x = a;
                while x != 0 {
                    x = mul(x, a);
                    k += 1;
                }
                k
            })
            .collect();
        Ok(FiniteGroup(Arc::new(GroupData { order: n, table, inverse, generators, words, element_orders, perms })))
    }

    pub fn trivial() -> Self {
        Self::from_permutations(&[]).expect("trivial group")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.0.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0.table[a * self.0.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.0.inverse[a]
    }

    /// `x * y * x^-1`
    pub fn conjugate(&self, y: usize, by: usize) -> usize {
        self.mul(self.mul(by, y), self.inv(by))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn generators(&self) -> &[usize] {
        &self.0.generators
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.0.element_orders[a]
    }

    /// Word in the generators (indices into `generators()`) reaching element `a`.
    pub fn element_word(&self, a: usize) -> &[usize] {
        &self.0.words[a]
    }

    pub fn word_string(&self, a: usize) -> String {
        let w = self.element_word(a);
        if w.is_empty() {
            "e".into()
        } else {
            w.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join("*")
        }
    }

    /// Evaluate a word such as `"s0*s1^2*s0^-1"`; `"e"`, `"1"` or `""` is the identity.
    pub fn parse_word(&self, word: &str) -> Result<usize> {
        let w = word.trim();
        if w.is_empty() || w == "e" || w == "1" {
            return Ok(0);
        }
        let mut acc = 0;
        for tok in w.split('*') {
            let tok = tok.trim();
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => {
                    let e: i64 = e.trim().parse().map_err(|_| Error::input(word, format!("bad exponent in `{tok}`")))?;
                    (b.trim(), e)
                }
                None => (tok, 1),
            };
            let idx: usize = base
                .strip_prefix('s')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| Error::input(word, format!("unknown generator `{base}`")))?;
            let g = *self.generators().get(idx).ok_or_else(|| Error::input(word, format!("generator s{idx} does not exist")))?;
            let g = if exp < 0 { self.inv(g) } else { g };
            for _ in 0..exp.unsigned_abs() {
                acc = self.mul(acc, g);
            }
        }
        Ok(acc)
    }

    pub fn permutation(&self, a: usize) -> Option<&[usize]> {
        self.0.perms.as_ref().map(|p| p[a].as_slice())
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.0.element_orders.iter().fold(1, |acc, &o| lcm(acc, o))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_members(self, (0..self.order()).collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_members(self, vec![0])
    }

    /// Every cyclic subgroup, or one per conjugacy class; sorted by order,
    /// then lexicographically by members. Includes the trivial subgroup.
    pub fn cyclic_subgroups(&self, up_to_conjugacy: bool) -> Vec<Subgroup> {
        let mut seen: BTreeMap<(usize, Vec<usize>), ()> = BTreeMap::new();
        for a in self.elements() {
            let members = self.cyclic_members(a);
            seen.insert((members.len(), members), ());
        }
        let all: Vec<Vec<usize>> = seen.into_keys().map(|(_, m)| m).collect();
        if !up_to_conjugacy {
            return all.into_iter().map(|m| Subgroup::from_members(self, m)).collect();
        }
        let mut covered = std::collections::HashSet::new();
        let mut reps = Vec::new();
        for m in all {
            if covered.contains(&m) {
                continue;
            }
            for x in self.elements() {
                let mut c: Vec<usize> = m.iter().map(|&h| self.conjugate(h, x)).collect();
                c.sort_unstable();
                covered.insert(c);
            }
            reps.push(Subgroup::from_members(self, m));
        }
        reps
    }

    /// Every subgroup, sorted by `(order, members)`. Each subgroup is a join
    /// of cyclic ones, so joins are closed off until nothing new appears.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let cyclic: Vec<Vec<usize>> = self.cyclic_subgroups(false).into_iter().map(|c| c.members().to_vec()).collect();
        let mut seen: BTreeMap<(usize, Vec<usize>), ()> = cyclic.iter().map(|m| ((m.len(), m.clone()), ())).collect();
        let mut frontier: Vec<Vec<usize>> = cyclic.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for c in &cyclic {
                    let gens: Vec<usize> = h.iter().chain(c).copied().collect();
                    let j = Subgroup::generated_by(self, &gens).members().to_vec();
                    if seen.insert((j.len(), j.clone()), ()).is_none() {
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        seen.into_keys().map(|(_, m)| Subgroup::from_members(self, m)).collect()
    }

    fn cyclic_members(&self, a: usize) -> Vec<usize> {
        let mut members = vec![0];
        let mut x = a;
        while x != 0 {
            members.push(x);
            x = self.mul(x, a);
        }
        members.sort_unstable();
        members
    }

    /// One Sylow p-subgroup for each prime dividing the order.
    pub fn sylow_subgroups(&self) -> BTreeMap<usize, Subgroup> {
        let mut out = BTreeMap::new();
        for (p, a) in factorize(self.order()) {
            let target = p.pow(a as u32);
            let p_elements: Vec<usize> = self.elements().filter(|&x| x != 0 && is_power_of(self.element_order(x), p)).collect();
            let mut current = self.trivial_subgroup();
            while current.order() < target {
                let next = p_elements.iter().filter(|&&x| !current.contains(x)).find_map(|&x| {
                    let mut gens = current.members().to_vec();
                    gens.push(x);
                    let h = Subgroup::generated_by(self, &gens);
                    is_power_of(h.order(), p).then_some(h)
                });
                current = next.expect("a proper p-subgroup always extends");
            }
            out.insert(p, current);
        }
        out
    }

    /// All Sylow subgroups cyclic.
    pub fn is_metacyclic(&self) -> bool {
        self.sylow_subgroups().values().all(Subgroup::is_cyclic)
    }

    /// Quotient by a normal subgroup, with the projection on element indices.
    /// The quotient keeps one generator per generator of `self`.
    pub fn quotient(&self, normal: &Subgroup) -> Result<(FiniteGroup, Vec<usize>)> {
        if !normal.is_normal() {
            return Err(Error::structural("quotient by a subgroup that is not normal"));
        }
        // cosets xN labelled by their smallest element
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for x in self.elements() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let label = reps.len();
            reps.push(x);
            for &h in normal.members() {
                coset_of[self.mul(x, h)] = label;
            }
        }
        let perm_of = |g: usize| -> Vec<usize> { reps.iter().map(|&r| coset_of[self.mul(g, r)]).collect() };
        let gens: Vec<Vec<usize>> = self.generators().iter().map(|&g| perm_of(g)).collect();
        let q = if reps.len() == 1 {
            // keep the generator count even when everything collapses
            FiniteGroup::from_permutations(&vec![vec![0]; gens.len()])?
        } else {
            FiniteGroup::from_permutations(&gens)?
        };
        let mut lookup: HashMap<Vec<usize>, usize> = HashMap::new();
        for y in q.elements() {
            lookup.insert(q.permutation(y).expect("permutation group").to_vec(), y);
        }
        let proj = self
            .elements()
            .map(|x| {
                let p = if reps.len() == 1 { vec![0] } else { perm_of(x) };
                lookup[&p]
            })
            .collect();
        Ok((q, proj))
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Prime factorization as (prime, exponent) pairs in increasing order.
pub fn factorize(mut n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut a = 0;
            while n.is_multiple_of(p) {
                n /= p;
                a += 1;
            }
            out.push((p, a));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subgroup_counts() {
        let counts: Vec<usize> = ["V4", "S3", "D4", "Q8", "A4", "C2xC4"].iter().map(|n| by_name(n).unwrap().subgroups().len()).collect();
        assert_eq!(counts, vec![5, 6, 10, 6, 10, 8]);
    }

    #[test]
    fn construction_examples() {
        assert_eq!(FiniteGroup::from_permutations(&[vec![1, 0]]).unwrap().order(), 2);
        let s3 = FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        let v4 = FiniteGroup::from_permutations(&[vec![1, 0, 2, 3], vec![0, 1, 3, 2]]).unwrap();
        assert_eq!(v4.order(), 4);
        assert_eq!(FiniteGroup::trivial().order(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(FiniteGroup::from_permutations(&[vec![0, 0]]), Err(Error::Input { .. })));
        assert!(matches!(FiniteGroup::from_permutations(&[vec![1, 0], vec![0, 1, 2]]), Err(Error::Input { .. })));
        let s6 = [vec![1, 0, 2, 3, 4, 5], vec![1, 2, 3, 4, 5, 0]];
        assert!(matches!(FiniteGroup::from_permutations_bounded(&s6, 100), Err(Error::Resource { .. })));
    }

    #[test]
    fn canonical_order_and_words() {
        let s3 = symmetric(3);
        for x in s3.elements() {
            let w = s3.word_string(x);
            assert_eq!(s3.parse_word(&w).unwrap(), x);
        }
        assert_eq!(s3.parse_word("s0*s0").unwrap(), 0);
        assert_eq!(s3.parse_word("s1^-1").unwrap(), s3.inv(s3.generators()[1]));
        assert!(s3.parse_word("s7").is_err());
        assert!(s3.parse_word("t0").is_err());
    }

    #[test]
    fn from_table_reindexes() {
        // Z/3 under a*b = a+b+1 mod 3, whose identity is 2
        let tt: Vec<usize> = (0..9).map(|i| (i / 3 + i % 3 + 1) % 3).collect();
        let (g, new_of) = FiniteGroup::from_table(3, &tt, &[0]).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(new_of[2], 0);
        assert!(FiniteGroup::from_table(2, &[0, 0, 0, 0], &[0]).is_err());
    }

    #[test]
    fn exponent_and_metacyclic() {
        let s3 = symmetric(3);
        assert!(s3.is_metacyclic());
        assert_eq!(s3.exponent(), 6);
        let v4 = klein_four();
        assert!(!v4.is_metacyclic());
        assert_eq!(v4.exponent(), 2);
        let c8 = cyclic(8);
        assert!(c8.is_metacyclic());
        assert_eq!(c8.exponent(), 8);
    }

    #[test]
    fn cyclic_subgroup_counts() {
        let v4 = klein_four();
        assert_eq!(v4.cyclic_subgroups(false).len(), 4);
        assert_eq!(v4.cyclic_subgroups(true).len(), 4);
        let s3 = symmetric(3);
        assert_eq!(s3.cyclic_subgroups(false).len(), 5);
        let reps = s3.cyclic_subgroups(true);
        assert_eq!(reps.iter().map(Subgroup::order).collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!(FiniteGroup::trivial().cyclic_subgroups(false).len(), 1);
    }

    #[test]
    fn sylow_examples() {
        let s3 = symmetric(3);
        let syl = s3.sylow_subgroups();
        assert_eq!(syl[&2].order(), 2);
        assert_eq!(syl[&3].order(), 3);
        let c12 = cyclic(12);
        let syl = c12.sylow_subgroups();
        assert_eq!((syl[&2].order(), syl[&3].order()), (4, 3));
        assert!(FiniteGroup::trivial().sylow_subgroups().is_empty());
    }

    #[test]
    fn quotient_by_center() {
        let d4 = dihedral(4);
        let center = Subgroup::from_members(&d4, d4.elements().filter(|&z| d4.elements().all(|x| d4.mul(x, z) == d4.mul(z, x))).collect());
        let (q, proj) = d4.quotient(&center).unwrap();
        assert_eq!(q.order(), 4);
        assert!(!q.is_metacyclic());
        for a in d4.elements() {
            for b in d4.elements() {
                assert_eq!(proj[d4.mul(a, b)], q.mul(proj[a], proj[b]));
            }
        }
        let (t, _) = d4.quotient(&d4.whole()).unwrap();
        assert_eq!(t.order(), 1);
        assert_eq!(t.generators().len(), d4.generators().len());
    }
}
