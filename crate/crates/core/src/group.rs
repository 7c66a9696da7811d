//! Finite permutation groups with a fully enumerated element table.
//!
//! Elements are indexed by their position in the lexicographically sorted
//! table of image sequences; the identity is always index 0. Products use
//! the composition convention of [`Permutation::compose`]: `mul(a, b)` is
//! `a ∘ b`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub const DEFAULT_CAP: usize = 20_000;

/// Groups up to this order keep a full Cayley table.
const TABLE_LIMIT: usize = 1024;

/// A set of element indices of some parent group that is closed under
/// products and inverses. The parent is not stored; every operation takes
/// the group explicitly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: FixedBitSet,
}

impl Subgroup {
    pub(crate) fn from_bits(members: FixedBitSet) -> Self {
        Subgroup { members }
    }

    pub fn order(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    fn sort_key(&self) -> (usize, Vec<usize>) {
        (self.order(), self.members.ones().collect())
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.ones()).finish()
    }
}

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    /// Smallest member in canonical order.
    pub representative: usize,
    pub members: FixedBitSet,
    pub size: usize,
}

#[derive(Debug)]
struct ClassData {
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
}

pub struct Group {
    degree: usize,
    generators: Vec<Permutation>,
    generator_indices: Vec<usize>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    inverse: Vec<usize>,
    table: Option<Vec<u32>>,
    element_orders: OnceLock<Vec<usize>>,
    classes: OnceLock<ClassData>,
    center: OnceLock<Subgroup>,
    derived: OnceLock<Subgroup>,
    normals: OnceLock<Vec<Subgroup>>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl Group {
    /// Breadth-first closure of `gens` acting on `degree` points.
    ///
    /// Fails if the generators disagree on degree or if the closure grows
    /// past `cap` elements.
    pub fn generate(degree: usize, gens: Vec<Permutation>, cap: usize) -> Result<Group> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut order = vec![id.clone()];
        seen.insert(id);
        let mut head = 0;
        while head < order.len() {
            let x = order[head].clone();
            head += 1;
            for g in &gens {
                let y = x.compose_unchecked(g);
                if !seen.contains(&y) {
                    if order.len() >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    seen.insert(y.clone());
                    order.push(y);
                }
            }
        }
        drop(seen);
        order.sort_unstable();
        Ok(Group::from_sorted_elements(degree, gens, order))
    }

    fn from_sorted_elements(
        degree: usize,
        generators: Vec<Permutation>,
        elements: Vec<Permutation>,
    ) -> Group {
        let n = elements.len();
        let index: HashMap<Permutation, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let inverse = elements.iter().map(|p| index[&p.inverse()]).collect();
        let generator_indices = generators.iter().map(|g| index[g]).collect();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(index[&a.compose_unchecked(b)] as u32);
                }
            }
            t
        });
        Group {
            degree,
            generators,
            generator_indices,
            elements,
            index,
            inverse,
            table,
            element_orders: OnceLock::new(),
            classes: OnceLock::new(),
            center: OnceLock::new(),
            derived: OnceLock::new(),
            normals: OnceLock::new(),
        }
    }

    pub fn trivial() -> Group {
        Group::generate(1, Vec::new(), 1).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.index[&self.elements[a].compose_unchecked(&self.elements[b])],
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g⁻¹ x g`
    #[inline]
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.inv(g), self.mul(x, g))
    }

    /// `a⁻¹ b⁻¹ a b`
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// `x^k` for any integer `k`.
    pub fn pow(&self, x: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(x) } else { x };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn element_orders(&self) -> &[usize] {
        self.element_orders
            .get_or_init(|| self.elements.iter().map(Permutation::order).collect())
    }

    pub fn element_order(&self, x: usize) -> usize {
        self.element_orders()[x]
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generator_indices;
        gens.iter()
            .enumerate()
            .all(|(i, &a)| gens[i + 1..].iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.order())
    }

    pub fn whole(&self) -> Subgroup {
        let mut bits = self.empty_set();
        bits.insert_range(..);
        Subgroup::from_bits(bits)
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut bits = self.empty_set();
        bits.insert(self.identity());
        Subgroup::from_bits(bits)
    }

    /// Subgroup generated by the given elements.
    ///
    /// Generators already inside the running closure are skipped, so the
    /// breadth-first pass only ever multiplies by a short generating set.
    pub fn subgroup_generated<I: IntoIterator<Item = usize>>(&self, gens: I) -> Subgroup {
        let mut members = self.empty_set();
        members.insert(self.identity());
        let mut list = vec![self.identity()];
        let mut chosen: Vec<usize> = Vec::new();
        for c in gens {
            if members.contains(c) {
                continue;
            }
            chosen.push(c);
            let old_len = list.len();
            let mut i = 0;
            while i < list.len() {
                let x = list[i];
                let try_gens: &[usize] = if i < old_len {
                    std::slice::from_ref(&c)
                } else {
                    &chosen
                };
                for &g in try_gens {
                    let y = self.mul(x, g);
                    if !members.contains(y) {
                        members.insert(y);
                        list.push(y);
                    }
                }
                i += 1;
            }
        }
        Subgroup::from_bits(members)
    }

    /// True if `set` is already a subgroup.
    pub fn is_subgroup(&self, set: &FixedBitSet) -> bool {
        set.contains(self.identity()) && self.subgroup_generated(set.ones()).members == *set
    }

    /// Invariance under conjugation by the generators.
    pub fn is_normal(&self, h: &Subgroup) -> bool {
        h.members.ones().all(|x| {
            self.generator_indices
                .iter()
                .all(|&g| h.members.contains(self.conjugate(x, g)))
        })
    }

    fn class_data(&self) -> &ClassData {
        self.classes.get_or_init(|| {
            let n = self.order();
            let mut class_of = vec![usize::MAX; n];
            let mut classes = Vec::new();
            for start in 0..n {
                if class_of[start] != usize::MAX {
                    continue;
                }
                let id = classes.len();
                let mut members = self.empty_set();
                let mut queue = VecDeque::from([start]);
                class_of[start] = id;
                members.insert(start);
                while let Some(x) = queue.pop_front() {
                    for &g in &self.generator_indices {
                        let y = self.conjugate(x, g);
                        if class_of[y] == usize::MAX {
                            class_of[y] = id;
                            members.insert(y);
                            queue.push_back(y);
                        }
                    }
                }
                let size = members.count_ones(..);
                classes.push(ConjugacyClass {
                    representative: start,
                    members,
                    size,
                });
            }
            ClassData { classes, class_of }
        })
    }

    /// Conjugacy classes ordered by their minimal representative.
    pub fn conjugacy_classes(&self) -> &[ConjugacyClass] {
        &self.class_data().classes
    }

    /// Position of the class of `x` in [`conjugacy_classes`](Self::conjugacy_classes).
    pub fn class_index(&self, x: usize) -> usize {
        self.class_data().class_of[x]
    }

    pub fn class_size(&self, x: usize) -> usize {
        self.conjugacy_classes()[self.class_index(x)].size
    }

    pub fn centralizer(&self, x: usize) -> Subgroup {
        let mut bits = self.empty_set();
        for g in 0..self.order() {
            if self.mul(g, x) == self.mul(x, g) {
                bits.insert(g);
            }
        }
        Subgroup::from_bits(bits)
    }

    pub fn center(&self) -> &Subgroup {
        self.center.get_or_init(|| {
            let mut bits = self.empty_set();
            for x in 0..self.order() {
                if self
                    .generator_indices
                    .iter()
                    .all(|&g| self.mul(g, x) == self.mul(x, g))
                {
                    bits.insert(x);
                }
            }
            Subgroup::from_bits(bits)
        })
    }

    /// Normal closure of the commutators of generator pairs.
    pub fn derived_subgroup(&self) -> &Subgroup {
        self.derived.get_or_init(|| {
            let gens = &self.generator_indices;
            let mut seed = self.empty_set();
            for &a in gens {
                for &b in gens {
                    seed.insert(self.commutator(a, b));
                }
            }
            self.normal_closure(&seed)
        })
    }

    /// `G' = G`. The trivial group counts as perfect.
    pub fn is_perfect(&self) -> bool {
        self.derived_subgroup().order() == self.order()
    }

    /// Smallest normal subgroup containing every element of `seed`.
    pub fn normal_closure(&self, seed: &FixedBitSet) -> Subgroup {
        let mut conj_closed = self.empty_set();
        for x in seed.ones() {
            if !conj_closed.contains(x) {
                let class = &self.conjugacy_classes()[self.class_index(x)];
                conj_closed.union_with(&class.members);
            }
        }
        self.subgroup_generated(conj_closed.ones())
    }

    /// Product `AB` of two normal subgroups, which is again normal.
    fn join_normal(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut bits = a.members.clone();
        for x in a.members.ones() {
            for y in b.members.ones() {
                bits.insert(self.mul(x, y));
            }
        }
        Subgroup::from_bits(bits)
    }

    /// Every normal subgroup, trivial and whole group included, sorted by
    /// order and then by member list.
    ///
    /// Each normal subgroup is the join of the normal closures of the
    /// classes it contains, so saturating the set of class closures under
    /// joins with those closures reaches all of them.
    pub fn normal_subgroups(&self) -> &[Subgroup] {
        self.normals.get_or_init(|| {
            let trivial = self.trivial_subgroup();
            let mut atoms: Vec<Subgroup> = Vec::new();
            for class in self.conjugacy_classes().iter().skip(1) {
                let atom = self.normal_closure(&class.members);
                if !atoms.contains(&atom) {
                    atoms.push(atom);
                }
            }
            let mut found: HashSet<Subgroup> = HashSet::new();
            let mut work = vec![trivial.clone()];
            found.insert(trivial);
            for a in &atoms {
                if found.insert(a.clone()) {
                    work.push(a.clone());
                }
            }
            while let Some(n) = work.pop() {
                for a in &atoms {
                    if a.is_subset(&n) {
                        continue;
                    }
                    let j = self.join_normal(&n, a);
                    if found.insert(j.clone()) {
                        work.push(j);
                    }
                }
            }
            let mut out: Vec<Subgroup> = found.into_iter().collect();
            out.sort_by_cached_key(Subgroup::sort_key);
            out
        })
    }

    /// Normal subgroups other than the whole group.
    pub fn proper_normal_subgroups(&self) -> impl Iterator<Item = &Subgroup> + '_ {
        let n = self.order();
        self.normal_subgroups().iter().filter(move |s| s.order() != n)
    }

    /// `O_p(G)`: the join of every normal subgroup of `p`-power order.
    pub fn maximal_normal_p_subgroup(&self, p: usize) -> Result<Subgroup> {
        if !crate::arith::is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        let mut acc = self.trivial_subgroup();
        for n in self.normal_subgroups() {
            if crate::arith::is_power_of(n.order(), p) && !n.is_subset(&acc) {
                acc = self.join_normal(&acc, n);
            }
        }
        Ok(acc)
    }

    /// Rebuilds a subgroup as a standalone group on the same points.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> Group {
        let mut gens = Vec::new();
        let mut span = self.trivial_subgroup();
        for x in h.elements() {
            if !span.contains(x) {
                gens.push(x);
                span = self.subgroup_generated(gens.iter().copied());
            }
        }
        let perms = gens.iter().map(|&i| self.elements[i].clone()).collect();
        Group::generate(self.degree, perms, h.order()).expect("subgroup closure")
    }
}
