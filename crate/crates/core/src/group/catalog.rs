//! Small groups used in examples, tests and random instance generation.

use super::FiniteGroup;

fn cycle(n: usize) -> Vec<usize> {
    (0..n).map(|i| (i + 1) % n).collect()
}

fn build(gens: &[Vec<usize>]) -> FiniteGroup {
    FiniteGroup::from_permutations(gens).expect("catalog group")
}

/// Concatenate permutations acting on disjoint blocks.
fn disjoint(parts: &[Vec<usize>]) -> Vec<usize> {
    let mut out = Vec::new();
    for p in parts {
        let off = out.len();
        out.extend(p.iter().map(|x| x + off));
    }
    out
}

fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// Z/n acting regularly on n points.
pub fn cyclic(n: usize) -> FiniteGroup {
    if n == 1 {
        return build(&[vec![0]]);
    }
    build(&[cycle(n)])
}

/// Z/a x Z/b with one generator per factor.
pub fn cyclic_product(orders: &[usize]) -> FiniteGroup {
    let gens: Vec<Vec<usize>> = (0..orders.len())
        .map(|k| {
            let parts: Vec<Vec<usize>> = orders.iter().enumerate().map(|(i, &n)| if i == k { cycle(n) } else { identity(n) }).collect();
            disjoint(&parts)
        })
        .collect();
    build(&gens)
}

pub fn klein_four() -> FiniteGroup {
    cyclic_product(&[2, 2])
}

/// Dihedral group of order 2n: rotation then reflection.
pub fn dihedral(n: usize) -> FiniteGroup {
    let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    build(&[cycle(n), refl])
}

pub fn symmetric(n: usize) -> FiniteGroup {
    if n <= 1 {
        return build(&[identity(n.max(1))]);
    }
    let mut t = identity(n);
    t.swap(0, 1);
    if n == 2 {
        return build(&[t]);
    }
    build(&[t, cycle(n)])
}

/// A_4 generated by a 3-cycle and a double transposition.
pub fn alternating4() -> FiniteGroup {
    build(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])
}

/// Quaternion group of order 8 in its regular representation.
pub fn quaternion() -> FiniteGroup {
    // points: 1, i, -1, -i, j, -k, -j, k; generators act by right multiplication
    let i = vec![1, 2, 3, 0, 5, 6, 7, 4];
    let j = vec![4, 7, 6, 5, 2, 1, 0, 3];
    build(&[i, j])
}

/// Look up a catalog group by name: `C<n>`, `C<a>xC<b>`, `D<n>` (order 2n),
/// `S<n>`, `A4`, `Q8`, `V4`.
pub fn by_name(name: &str) -> Option<FiniteGroup> {
    let n = name.trim();
    match n {
        "A4" => return Some(alternating4()),
        "Q8" => return Some(quaternion()),
        "V4" => return Some(klein_four()),
        _ => {}
    }
    if n.contains('x') {
        let orders: Option<Vec<usize>> = n.split('x').map(|p| p.trim().strip_prefix('C').and_then(|d| d.parse().ok())).collect();
        return orders.filter(|o| o.iter().all(|&k| (1..=64).contains(&k))).map(|o| cyclic_product(&o));
    }
    let (head, rest) = n.split_at(1.min(n.len()));
    let k: usize = rest.parse().ok()?;
    match head {
        "C" if (1..=5000).contains(&k) => Some(cyclic(k)),
        "D" if (2..=2500).contains(&k) => Some(dihedral(k)),
        "S" if (1..=7).contains(&k) => Some(symmetric(k)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders() {
        assert_eq!(cyclic(1).order(), 1);
        assert_eq!(cyclic_product(&[2, 4]).order(), 8);
        assert_eq!(dihedral(4).order(), 8);
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(alternating4().order(), 12);
        assert_eq!(by_name("C2xC2").unwrap().order(), 4);
        assert!(by_name("Z9").is_none());
    }

    #[test]
    fn quaternion_structure() {
        let q = quaternion();
        assert_eq!(q.order(), 8);
        assert!(!q.is_abelian());
        let involutions = q.elements().filter(|&x| q.element_order(x) == 2).count();
        assert_eq!(involutions, 1);
        assert_eq!(q.exponent(), 4);
        assert!(!q.is_metacyclic());
    }
}
