use std::collections::VecDeque;

use super::FiniteGroup;

/// A subgroup, stored as the sorted list of member indices in its parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    parent: FiniteGroup,
    members: Vec<usize>,
}

impl Subgroup {
    /// `members` must be closed under the group law; they are sorted here.
    pub fn from_members(parent: &FiniteGroup, mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        debug_assert!(members.first() == Some(&0));
        Subgroup { parent: parent.clone(), members }
    }

    /// Closure of a set of elements under multiplication.
    pub fn generated_by(parent: &FiniteGroup, gens: &[usize]) -> Self {
        let mut inside = vec![false; parent.order()];
        inside[0] = true;
        let mut members = vec![0];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = parent.mul(x, s);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        Self::from_members(parent, members)
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        self.members.iter().any(|&x| self.parent.element_order(x) == n)
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        g.generators().iter().all(|&s| self.members.iter().all(|&h| self.contains(g.conjugate(h, s))))
    }

    pub fn conjugate_by(&self, x: usize) -> Subgroup {
        let members = self.members.iter().map(|&h| self.parent.conjugate(h, x)).collect();
        Self::from_members(&self.parent, members)
    }

    /// Generators chosen greedily: each member, in increasing index order,
    /// that is not yet in the span of the earlier choices.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = Subgroup::from_members(&self.parent, vec![0]);
        for &x in &self.members {
            if span.order() == self.order() {
                break;
            }
            if !span.contains(x) {
                gens.push(x);
                span = Subgroup::generated_by(&self.parent, &gens);
            }
        }
        gens
    }

    /// The subgroup as a group in its own right, with the embedding into the
    /// parent on element indices. Generators are `generating_set()`.
    pub fn as_group(&self) -> (FiniteGroup, Vec<usize>) {
        let gens = self.generating_set();
        let n = self.order();
        let local = |x: usize| self.members.binary_search(&x).expect("closed subgroup");
        let table: Vec<usize> = (0..n * n).map(|k| local(self.parent.mul(self.members[k / n], self.members[k % n]))).collect();
        let local_gens: Vec<usize> = gens.iter().map(|&g| local(g)).collect();
        let (h, new_of) = FiniteGroup::from_table(n, &table, &local_gens).expect("subgroup table is a group");
        let mut embedding = vec![0; n];
        for (old, &new) in new_of.iter().enumerate() {
            embedding[new] = self.members[old];
        }
        (h, embedding)
    }
}

#[cfg(test)]
mod tests {
    use super::super::*;

    #[test]
    fn as_group_embeds_homomorphically() {
        let s4 = symmetric(4);
        for h in s4.cyclic_subgroups(false).into_iter().chain([s4.sylow_subgroups()[&2].clone()]) {
            let (g, emb) = h.as_group();
            assert_eq!(g.order(), h.order());
            for a in g.elements() {
                for b in g.elements() {
                    assert_eq!(emb[g.mul(a, b)], s4.mul(emb[a], emb[b]));
                }
            }
        }
    }

    #[test]
    fn normality() {
        let s3 = symmetric(3);
        let reps = s3.cyclic_subgroups(false);
        assert!(reps.iter().filter(|h| h.order() == 3).all(Subgroup::is_normal));
        assert!(reps.iter().filter(|h| h.order() == 2).all(|h| !h.is_normal()));
    }
}
