//! Normal subgroups as unions of conjugacy classes.
//!
//! For a normal subgroup `N` of `G`, `ncc(N)` is the number of
//! `G`-conjugacy classes contained in `N`; since `N` is normal these
//! classes partition it. `K_G` collects `ncc(N)` over the proper normal
//! subgroups (trivial subgroup included, `G` excluded), and `G` is
//! `X`-decomposable when `K_G = X`.
//!
//! Counting contained classes gives the same number as counting the
//! distinct images of the fusion map from `N`'s own classes into `G`'s,
//! so no fusion map is built.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{divisors, is_prime, is_prime_power, prime_factors};
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};

/// A strictly increasing set of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct KSet(Vec<usize>);

impl KSet {
    pub fn new<I: IntoIterator<Item = usize>>(values: I) -> Result<KSet> {
        let set: BTreeSet<usize> = values.into_iter().collect();
        if set.contains(&0) {
            return Err(Error::InvalidParameter("K-set values must be positive".into()));
        }
        Ok(KSet(set.into_iter().collect()))
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    fn from_set(set: BTreeSet<usize>) -> KSet {
        KSet(set.into_iter().collect())
    }
}

impl TryFrom<Vec<usize>> for KSet {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        KSet::new(v)
    }
}

impl From<KSet> for Vec<usize> {
    fn from(k: KSet) -> Self {
        k.0
    }
}

impl fmt::Display for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Accepts `{1,2,3}` or `1,2,3`; `{}` is the empty set.
impl FromStr for KSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .unwrap_or(t);
        let values = inner
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|p| {
                p.parse::<usize>()
                    .map_err(|_| Error::InvalidParameter(format!("bad set element {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        KSet::new(values)
    }
}

/// Number of `G`-classes making up the normal subgroup `n`.
pub fn ncc(g: &Group, n: &Subgroup) -> Result<usize> {
    if !g.is_normal(n) {
        return Err(Error::NotNormal);
    }
    Ok(contained_classes(g, n).count())
}

fn contained_classes<'a>(
    g: &'a Group,
    n: &'a Subgroup,
) -> impl Iterator<Item = &'a crate::group::ConjugacyClass> + 'a {
    g.conjugacy_classes()
        .iter()
        .filter(move |c| c.members.is_subset(n.members()))
}

/// `K_G`. Empty for the trivial group, which has no proper normal subgroup.
pub fn kset(g: &Group) -> KSet {
    KSet::from_set(
        g.proper_normal_subgroups()
            .map(|n| contained_classes(g, n).count())
            .collect(),
    )
}

pub fn is_x_decomposable(g: &Group, x: &KSet) -> bool {
    kset(g) == *x
}

/// Proper normal subgroups that are unions of exactly `n` classes.
pub fn find_n_decomposable(g: &Group, n: usize) -> Vec<Subgroup> {
    g.proper_normal_subgroups()
        .filter(|s| contained_classes(g, s).count() == n)
        .cloned()
        .collect()
}

/// K-set of any abelian group of order `n`: the divisors of `n` except `n`.
pub fn abelian_kset(n: usize) -> Result<KSet> {
    if n == 0 {
        return Err(Error::InvalidParameter("order must be positive".into()));
    }
    Ok(KSet::from_set(divisors(n).into_iter().filter(|&d| d != n).collect()))
}

/// K-set of the nonabelian group of order `pq`, `p > q` primes, `q | p−1`.
pub fn pq_kset(p: usize, q: usize) -> Result<KSet> {
    if !is_prime(p) || !is_prime(q) || p <= q || (p - 1) % q != 0 {
        return Err(Error::InvalidParameter(format!(
            "need primes p > q with q | p-1, got p={p}, q={q}"
        )));
    }
    KSet::new([1, 1 + (p - 1) / q])
}

/// K-set of the dihedral group of order `2n`, `n ≥ 3`.
pub fn dihedral_kset(n: usize) -> Result<KSet> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "dihedral formula needs n ≥ 3, got {n}"
        )));
    }
    let mut set: BTreeSet<usize> = BTreeSet::new();
    for d in divisors(n) {
        set.insert(if d % 2 == 1 { (d + 1) / 2 } else { (d + 2) / 2 });
    }
    if n % 2 == 0 {
        // the two index-2 subgroups <a², b> and <a², ab>
        set.insert(if n % 4 == 0 { n / 4 + 2 } else { (n + 6) / 4 });
    }
    Ok(KSet::from_set(set))
}

/// K-set of the dicyclic group of order `4n`, `n ≥ 2`.
pub fn quaternion_kset(n: usize) -> Result<KSet> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "dicyclic formula needs n ≥ 2, got {n}"
        )));
    }
    let mut set: BTreeSet<usize> = divisors(n)
        .into_iter()
        .filter(|d| d % 2 == 1)
        .map(|d| (d + 1) / 2)
        .collect();
    set.extend(
        divisors(2 * n)
            .into_iter()
            .filter(|d| d % 2 == 0)
            .map(|d| (d + 2) / 2),
    );
    if n % 2 == 0 {
        set.insert((n + 4) / 2);
    }
    Ok(KSet::from_set(set))
}

/// `Some(p)` if `n` is a nontrivial elementary abelian `p`-group.
pub fn elementary_abelian_prime(g: &Group, n: &Subgroup) -> Option<usize> {
    let elems: Vec<usize> = n.elements().collect();
    let p = match prime_factors(n.order()).as_slice() {
        [p] => *p,
        _ => return None,
    };
    let orders_ok = elems
        .iter()
        .all(|&x| x == g.identity() || g.element_order(x) == p);
    let abelian = elems
        .iter()
        .all(|&x| elems.iter().all(|&y| g.mul(x, y) == g.mul(y, x)));
    (orders_ok && abelian).then_some(p)
}

/// Nontrivial, and no other nontrivial normal subgroup lies strictly inside.
pub fn is_minimal_normal(g: &Group, n: &Subgroup) -> bool {
    !n.is_trivial()
        && g
            .normal_subgroups()
            .iter()
            .all(|m| m.is_trivial() || m == n || !m.is_subset(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiEntry {
    pub order: usize,
    pub prime: Option<usize>,
    pub elementary_abelian: bool,
    pub minimal_normal: bool,
    pub central_in_op: bool,
    pub order_divides: bool,
    pub group_even: bool,
}

impl ShiEntry {
    pub fn passed(&self) -> bool {
        self.elementary_abelian
            && self.minimal_normal
            && self.central_in_op
            && self.order_divides
            && self.group_even
    }
}

/// Structure of every 2-decomposable proper normal subgroup `N`:
/// elementary abelian, minimal normal, inside `Z(O_p(G))`,
/// `|N|(|N|−1)` divides `|G|`, and `|G|` even.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ShiReport {
    pub entries: Vec<ShiEntry>,
}

impl ShiReport {
    /// Vacuously true when there is no 2-decomposable subgroup.
    pub fn passed(&self) -> bool {
        self.entries.iter().all(ShiEntry::passed)
    }
}

pub fn shi_property_check(g: &Group) -> ShiReport {
    let entries = find_n_decomposable(g, 2)
        .iter()
        .map(|n| {
            let order = n.order();
            let prime = elementary_abelian_prime(g, n);
            let central_in_op = prime.is_some_and(|p| {
                let op = g.maximal_normal_p_subgroup(p).expect("prime");
                n.is_subset(&op)
                    && n.elements()
                        .all(|x| op.elements().all(|y| g.mul(x, y) == g.mul(y, x)))
            });
            ShiEntry {
                order,
                prime,
                elementary_abelian: prime.is_some(),
                minimal_normal: is_minimal_normal(g, n),
                central_in_op,
                order_divides: g.order() % (order * (order - 1)).max(1) == 0 && order > 1,
                group_even: g.order() % 2 == 0,
            }
        })
        .collect();
    ShiReport { entries }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JingEntry {
    pub order: usize,
    /// Distinct element orders occurring in the subgroup, ascending.
    pub element_orders: Vec<usize>,
    pub prime_power_orders: bool,
}

/// Every 3-decomposable proper normal subgroup has only elements of prime
/// power order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct JingReport {
    pub entries: Vec<JingEntry>,
}

impl JingReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.prime_power_orders)
    }
}

pub fn jing_property_check(g: &Group) -> JingReport {
    let entries = find_n_decomposable(g, 3)
        .iter()
        .map(|n| {
            let orders: BTreeSet<usize> = n.elements().map(|x| g.element_order(x)).collect();
            JingEntry {
                order: n.order(),
                prime_power_orders: orders.iter().all(|&o| is_prime_power(o)),
                element_orders: orders.into_iter().collect(),
            }
        })
        .collect();
    JingReport { entries }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FrobeniusCheck {
    NotApplicable(&'static str),
    Holds { order: usize, derived_order: usize },
    Fails { order: usize, derived_order: usize },
}

impl FrobeniusCheck {
    pub fn passed(&self) -> bool {
        !matches!(self, FrobeniusCheck::Fails { .. })
    }
}

/// For a non-perfect, nonabelian, centerless `G` whose derived subgroup is
/// 2-decomposable: `|G| = |G'|(|G'|−1)`.
pub fn frobenius_identity_check(g: &Group) -> FrobeniusCheck {
    use FrobeniusCheck::*;
    if g.is_perfect() {
        return NotApplicable("perfect");
    }
    if g.is_abelian() {
        return NotApplicable("abelian");
    }
    if !g.center().is_trivial() {
        return NotApplicable("nontrivial center");
    }
    let d = g.derived_subgroup();
    if ncc(g, d).expect("derived subgroup is normal") != 2 {
        return NotApplicable("derived subgroup not 2-decomposable");
    }
    let (order, derived_order) = (g.order(), d.order());
    if order == derived_order * (derived_order - 1) {
        Holds {
            order,
            derived_order,
        }
    } else {
        Fails {
            order,
            derived_order,
        }
    }
}

/// One proper normal subgroup in a [`DecompositionReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalEntry {
    pub order: usize,
    pub ncc: usize,
    pub class_sizes: Vec<usize>,
    /// Class representatives in cycle notation.
    pub class_reps: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub order: usize,
    pub abelian: bool,
    pub perfect: bool,
    pub entries: Vec<NormalEntry>,
    pub kset: KSet,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum JsonLine {
    NormalSubgroup(NormalEntry),
    Summary {
        order: usize,
        abelian: bool,
        perfect: bool,
        kset: KSet,
    },
}

impl DecompositionReport {
    pub fn new(g: &Group) -> DecompositionReport {
        let entries: Vec<NormalEntry> = g
            .proper_normal_subgroups()
            .map(|n| {
                let classes: Vec<_> = contained_classes(g, n).collect();
                NormalEntry {
                    order: n.order(),
                    ncc: classes.len(),
                    class_sizes: classes.iter().map(|c| c.size).collect(),
                    class_reps: classes
                        .iter()
                        .map(|c| g.element(c.representative).to_string())
                        .collect(),
                }
            })
            .collect();
        let kset = KSet::from_set(entries.iter().map(|e| e.ncc).collect());
        DecompositionReport {
            order: g.order(),
            abelian: g.is_abelian(),
            perfect: g.is_perfect(),
            entries,
            kset,
        }
    }

    /// ```text
    /// group order=8 abelian=false perfect=false
    /// normal order=2 ncc=2 sizes=1,1 reps=();(0 2)(1 3)
    /// K = {1,2,3}
    /// ```
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "group order={} abelian={} perfect={}\n",
            self.order, self.abelian, self.perfect
        );
        for e in &self.entries {
            let sizes: Vec<String> = e.class_sizes.iter().map(ToString::to_string).collect();
            out.push_str(&format!(
                "normal order={} ncc={} sizes={} reps={}\n",
                e.order,
                e.ncc,
                sizes.join(","),
                e.class_reps.join(";")
            ));
        }
        out.push_str(&format!("K = {}\n", self.kset));
        out
    }

    /// One `{"kind":"normal_subgroup",...}` object per entry, then a
    /// `{"kind":"summary",...}` line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&serde_json::to_string(&JsonLine::NormalSubgroup(e.clone())).unwrap());
            out.push('\n');
        }
        let summary = JsonLine::Summary {
            order: self.order,
            abelian: self.abelian,
            perfect: self.perfect,
            kset: self.kset.clone(),
        };
        out.push_str(&serde_json::to_string(&summary).unwrap());
        out.push('\n');
        out
    }

    pub fn from_json_lines(text: &str) -> std::result::Result<Self, serde_json::Error> {
        let mut entries = Vec::new();
        let mut summary = None;
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            match serde_json::from_str::<JsonLine>(line)? {
                JsonLine::NormalSubgroup(e) => entries.push(e),
                JsonLine::Summary {
                    order,
                    abelian,
                    perfect,
                    kset,
                } => summary = Some((order, abelian, perfect, kset)),
            }
        }
        let (order, abelian, perfect, kset) = summary
            .ok_or_else(|| <serde_json::Error as serde::de::Error>::custom("missing summary line"))?;
        Ok(DecompositionReport {
            order,
            abelian,
            perfect,
            entries,
            kset,
        })
    }
}
