//! Isomorphism testing for small groups.
//!
//! A cheap [`Fingerprint`] rejects most non-isomorphic pairs. Survivors go
//! to a backtracking search that maps a greedily chosen generating set of
//! one group onto element tuples of the other, pruning candidates by
//! (element order, class size, centralizer order) and by partial
//! homomorphism consistency.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::constructors::extend_homomorphism;
use crate::group::Group;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    pub class_sizes: Vec<usize>,
    /// element order -> number of elements of that order
    pub order_histogram: BTreeMap<usize, usize>,
    pub center_order: usize,
    pub derived_order: usize,
    /// Orders of G, G', G'', ... down to the first repeat.
    pub derived_series: Vec<usize>,
    pub normal_count: usize,
    pub normal_orders: Vec<usize>,
}

pub fn derived_series_orders(g: &Group) -> Vec<usize> {
    let mut orders = vec![g.order()];
    let mut cur = g.subgroup_as_group(g.derived_subgroup());
    while cur.order() != *orders.last().expect("non-empty") {
        orders.push(cur.order());
        cur = cur.subgroup_as_group(cur.derived_subgroup());
    }
    orders
}

pub fn fingerprint(g: &Group) -> Fingerprint {
    let mut class_sizes: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.size).collect();
    class_sizes.sort_unstable();
    let mut order_histogram = BTreeMap::new();
    for &o in g.element_orders() {
        *order_histogram.entry(o).or_insert(0) += 1;
    }
    let normal_orders: Vec<usize> = g.normal_subgroups().iter().map(|n| n.order()).collect();
    Fingerprint {
        order: g.order(),
        class_sizes,
        order_histogram,
        center_order: g.center().order(),
        derived_order: g.derived_subgroup().order(),
        derived_series: derived_series_orders(g),
        normal_count: normal_orders.len(),
        normal_orders,
    }
}

/// A verified isomorphism, as the image in `b` of every element index of `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub map: Vec<usize>,
}

impl Isomorphism {
    /// Bijective and multiplicative on every pair.
    pub fn verify(&self, a: &Group, b: &Group) -> bool {
        if a.order() != b.order() || self.map.len() != a.order() {
            return false;
        }
        let mut hit = vec![false; b.order()];
        for &y in &self.map {
            if y >= b.order() || std::mem::replace(&mut hit[y], true) {
                return false;
            }
        }
        (0..a.order()).all(|x| {
            (0..a.order()).all(|y| self.map[a.mul(x, y)] == b.mul(self.map[x], self.map[y]))
        })
    }
}

/// Greedy generating set: each step adds the element whose inclusion gives
/// the largest subgroup, ties going to the smaller index.
pub fn greedy_generators(g: &Group) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = g.trivial_subgroup();
    while span.order() < g.order() {
        let mut best = (0, usize::MAX);
        for x in 0..g.order() {
            if span.contains(x) {
                continue;
            }
            let size = g
                .subgroup_generated(gens.iter().copied().chain([x]))
                .order();
            if size > best.0 {
                best = (size, x);
                if size == g.order() {
                    break;
                }
            }
        }
        gens.push(best.1);
        span = g.subgroup_generated(gens.iter().copied());
    }
    gens
}

type ElementKey = (usize, usize, usize);

fn element_key(g: &Group, x: usize) -> ElementKey {
    let class = g.class_size(x);
    (g.element_order(x), class, g.order() / class)
}

/// Decides isomorphism; on success returns a witness that has been checked
/// against the full multiplication of both groups.
pub fn find_isomorphism(a: &Group, b: &Group) -> Option<Isomorphism> {
    if fingerprint(a) != fingerprint(b) {
        return None;
    }
    let gens = greedy_generators(a);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            let key = element_key(a, x);
            (0..b.order()).filter(|&y| element_key(b, y) == key).collect()
        })
        .collect();
    if gens.is_empty() {
        return Some(Isomorphism {
            map: vec![b.identity()],
        });
    }
    let mut images = Vec::with_capacity(gens.len());
    let map = backtrack(a, b, &gens, &candidates, &mut images)?;
    let iso = Isomorphism { map };
    iso.verify(a, b).then_some(iso)
}

pub fn are_isomorphic(a: &Group, b: &Group) -> bool {
    find_isomorphism(a, b).is_some()
}

fn backtrack(
    a: &Group,
    b: &Group,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let depth = images.len();
    for &y in &candidates[depth] {
        images.push(y);
        let partial = extend_homomorphism(a, &gens[..=depth], images, |p, q| b.mul(p, q), b.identity());
        if let Some(map) = partial.filter(|m| injective_where_defined(m, b.order())) {
            if depth + 1 == gens.len() {
                return Some(map);
            }
            if let Some(found) = backtrack(a, b, gens, candidates, images) {
                return Some(found);
            }
        }
        images.pop();
    }
    None
}

fn injective_where_defined(map: &[usize], target_order: usize) -> bool {
    let mut hit = vec![false; target_order];
    map.iter()
        .filter(|&&v| v != usize::MAX)
        .all(|&v| !std::mem::replace(&mut hit[v], true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::*;

    #[test]
    fn d8_vs_q8() {
        let d8 = dihedral(4).unwrap();
        let q8 = dicyclic(2).unwrap();
        let (fd, fq) = (fingerprint(&d8), fingerprint(&q8));
        assert_ne!(fd, fq);
        assert_eq!(fd.order_histogram[&2], 5);
        assert_eq!(fq.order_histogram[&2], 1);
        assert!(!are_isomorphic(&d8, &q8));
    }

    #[test]
    fn cyclic6_vs_s3() {
        assert_ne!(
            fingerprint(&cyclic(6).unwrap()),
            fingerprint(&symmetric(3).unwrap())
        );
    }

    #[test]
    fn regular_rebuild_is_isomorphic() {
        for g in [symmetric(4).unwrap(), smallgroup_24_3(), dicyclic(5).unwrap()] {
            let r = regular_of(&g);
            assert_eq!(fingerprint(&g), fingerprint(&r));
            let iso = find_isomorphism(&g, &r).expect("isomorphic");
            assert!(iso.verify(&g, &r));
        }
    }

    #[test]
    fn small_positive_and_negative_cases() {
        assert!(are_isomorphic(&dihedral(3).unwrap(), &symmetric(3).unwrap()));
        let k4 = elementary_abelian(2, 2).unwrap();
        assert!(!are_isomorphic(&k4, &cyclic(4).unwrap()));
        assert!(are_isomorphic(&k4, &dihedral(2).unwrap()));
        let z6 = direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap()).unwrap();
        assert!(are_isomorphic(&z6, &cyclic(6).unwrap()));
        assert!(are_isomorphic(&Group::trivial(), &cyclic(1).unwrap()));
    }

    #[test]
    fn derived_series() {
        assert_eq!(derived_series_orders(&symmetric(4).unwrap()), vec![24, 12, 4, 1]);
        assert_eq!(derived_series_orders(&alternating(5).unwrap()), vec![60]);
    }

    #[test]
    fn greedy_generating_sets_are_short() {
        assert_eq!(greedy_generators(&cyclic(12).unwrap()).len(), 1);
        assert_eq!(greedy_generators(&symmetric(4).unwrap()).len(), 2);
        assert_eq!(greedy_generators(&elementary_abelian(2, 3).unwrap()).len(), 3);
        assert!(greedy_generators(&Group::trivial()).is_empty());
    }

    #[test]
    fn bad_witness_rejected() {
        let g = cyclic(4).unwrap();
        assert!(!Isomorphism { map: vec![0, 0, 1, 2] }.verify(&g, &g));
        let inv = (0..4).find(|&x| g.element_order(x) == 2).unwrap();
        let gen = (0..4).find(|&x| g.element_order(x) == 4).unwrap();
        let mut map: Vec<usize> = (0..4).collect();
        map.swap(inv, gen);
        assert!(!Isomorphism { map }.verify(&g, &g));
        assert!(find_isomorphism(&g, &g).unwrap().verify(&g, &g));
    }
}
