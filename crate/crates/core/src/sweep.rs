//! Catalog sweeps: find every group with a given K-set, and the full
//! reproduction run behind `ncclab verify`.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::is_prime;
use crate::catalog::{build_all, verify_catalog, BuiltEntry, CatalogEntry};
use crate::constructors::{
    cyclic, dicyclic, dihedral, smallgroup_20_3, smallgroup_24_3, symmetric, u_presentation,
};
use crate::decomp::{
    abelian_kset, dihedral_kset, frobenius_identity_check, jing_property_check, kset, ncc,
    pq_kset, quaternion_kset, shi_property_check, FrobeniusCheck, KSet,
};
use crate::error::Result;
use crate::expr::{ActionBlock, ConstructionExpr};
use crate::group::Group;
use crate::isomorph::are_isomorphic;
use crate::presentation::{satisfies_presentation, Word};

/// Orders swept by `verify`.
pub const SWEEP_ORDERS: [usize; 8] = [6, 8, 12, 18, 20, 24, 36, 42];

/// Orders at which no group has K-set {1,2,3}.
pub const EMPTY_ORDERS: [usize; 4] = [12, 18, 36, 42];

/// `(p, q)` pairs used for the order-`pq` formula check.
pub const PQ_PAIRS: [(usize, usize); 5] = [(5, 2), (7, 2), (7, 3), (11, 2), (13, 3)];

pub fn target_kset() -> KSet {
    KSet::new([1, 2, 3]).expect("valid")
}

/// The non-perfect groups with K-set {1,2,3}: Z6, D8, Q8, S4, Z5⋊Z4, Q8⋊Z3.
pub fn theorem_groups() -> Vec<(&'static str, Group)> {
    vec![
        ("Z6", cyclic(6).unwrap()),
        ("D8", dihedral(4).unwrap()),
        ("Q8", dicyclic(2).unwrap()),
        ("S4", symmetric(4).unwrap()),
        ("SmallGroup(20,3)", smallgroup_20_3()),
        ("SmallGroup(24,3)", smallgroup_24_3()),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchHit {
    pub label: String,
    pub order: usize,
    pub gap_id: Option<(usize, usize)>,
    pub kset: KSet,
}

/// Catalog entries whose order is in `orders` (all orders if empty) and
/// whose K-set equals `x`, sorted by label. Entries that failed to build
/// are skipped.
pub fn search(built: &[BuiltEntry], orders: &[usize], x: &KSet, nonperfect_only: bool) -> Vec<SearchHit> {
    let mut hits: Vec<SearchHit> = built
        .par_iter()
        .filter(|b| orders.is_empty() || orders.contains(&b.entry.order))
        .filter_map(|b| {
            let g = b.group.as_ref().ok()?;
            if nonperfect_only && g.is_perfect() {
                return None;
            }
            let k = kset(g);
            (k == *x).then(|| SearchHit {
                label: b.entry.label.clone(),
                order: g.order(),
                gap_id: b.entry.gap_id,
                kset: k,
            })
        })
        .collect();
    hits.sort_by(|a, b| a.label.cmp(&b.label));
    hits
}

/// `Zp ⋊ Zq` with the generator of `Zq` acting by an element of
/// multiplicative order `q` mod `p`.
pub fn pq_group_expr(p: usize, q: usize) -> Option<ConstructionExpr> {
    if !is_prime(p) || !is_prime(q) || (p - 1) % q != 0 {
        return None;
    }
    let r = (2..p).find(|&r| {
        let mut acc = 1;
        for _ in 0..q {
            acc = acc * r % p;
        }
        acc == 1
    })?;
    Some(ConstructionExpr::Semidirect {
        normal: Box::new(ConstructionExpr::Cyclic(p)),
        acting: Box::new(ConstructionExpr::Cyclic(q)),
        action: vec![ActionBlock {
            images: vec![(0, Word::new(vec![(0, r as i64)]))],
        }],
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = if self.passed { "ok  " } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub hits: Vec<SearchHit>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn mismatches<T: Sync>(
    items: &[T],
    f: impl Fn(&T) -> Result<Option<String>> + Sync,
) -> Vec<String> {
    let mut out: Vec<String> = items
        .par_iter()
        .filter_map(|t| match f(t) {
            Ok(m) => m,
            Err(e) => Some(e.to_string()),
        })
        .collect();
    out.sort();
    out
}

fn summarize(name: &str, total: usize, bad: Vec<String>) -> Check {
    if bad.is_empty() {
        Check::new(name, true, format!("{total}/{total} agree"))
    } else {
        Check::new(name, false, format!("{} mismatches: {}", bad.len(), bad.join("; ")))
    }
}

/// Catalog integrity, the K-set sweep, closed-form oracles, the two
/// named-group structure checks, and the normal-subgroup property suites.
///
/// The comparison against the six expected groups only runs when `x` is
/// {1,2,3}; for any other `x` the sweep result is informational.
pub fn run_verify(entries: &[CatalogEntry], x: &KSet, cap: usize) -> VerifyReport {
    verify_built(&build_all(entries, cap), x, cap)
}

/// [`run_verify`] on entries that have already been built. `cap` bounds
/// the extra groups the oracle checks construct.
pub fn verify_built(built: &[BuiltEntry], x: &KSet, cap: usize) -> VerifyReport {
    let mut checks = Vec::new();

    let cat = verify_catalog(built);
    let counts: Vec<String> = cat.counts.iter().map(|(o, c)| format!("{o}:{c}")).collect();
    checks.push(Check::new(
        "catalog integrity",
        cat.passed(),
        format!("{} entries, counts {{{}}}", cat.entries, counts.join(", ")),
    ));
    for issue in &cat.issues {
        checks.push(Check::new("catalog", false, issue.to_string()));
    }

    let groups: Vec<&Group> = built.iter().filter_map(|b| b.group.as_ref().ok()).collect();
    let theorem = theorem_groups();
    let missing: Vec<&str> = theorem
        .par_iter()
        .filter(|(_, t)| !groups.iter().any(|g| are_isomorphic(g, t)))
        .map(|(name, _)| *name)
        .collect();
    checks.push(Check::new(
        "expected groups in catalog",
        missing.is_empty(),
        if missing.is_empty() {
            "all 6 present".to_string()
        } else {
            format!("missing {}", missing.join(", "))
        },
    ));

    let hits = search(built, &SWEEP_ORDERS, x, true);
    let labels: Vec<&str> = hits.iter().map(|h| h.label.as_str()).collect();
    if *x == target_kset() {
        let hit_groups: Vec<(&SearchHit, &Group)> = hits
            .iter()
            .filter_map(|h| {
                built
                    .iter()
                    .find(|b| b.entry.label == h.label)
                    .and_then(|b| b.group.as_ref().ok())
                    .map(|g| (h, g))
            })
            .collect();
        let matched: Vec<usize> = theorem
            .par_iter()
            .map(|(_, t)| hit_groups.iter().filter(|(_, g)| are_isomorphic(g, t)).count())
            .collect();
        let found = matched.iter().filter(|&&c| c == 1).count();
        let extras = hit_groups
            .iter()
            .filter(|(_, g)| !theorem.iter().any(|(_, t)| are_isomorphic(g, t)))
            .count();
        let duplicates = matched.iter().any(|&c| c > 1);
        checks.push(Check::new(
            "classification sweep",
            found == 6 && extras == 0 && !duplicates,
            format!(
                "{found}/6 theorem groups, {extras} extras [{}]",
                labels.join(", ")
            ),
        ));
        let empty: Vec<&str> = hits
            .iter()
            .filter(|h| EMPTY_ORDERS.contains(&h.order))
            .map(|h| h.label.as_str())
            .collect();
        checks.push(Check::new(
            "no {1,2,3} groups at orders 12, 18, 36, 42",
            empty.is_empty(),
            if empty.is_empty() {
                "none found".to_string()
            } else {
                format!("found {}", empty.join(", "))
            },
        ));
    } else {
        checks.push(Check::new(
            "sweep",
            true,
            format!("{} non-perfect groups with K = {x}: [{}]", hits.len(), labels.join(", ")),
        ));
    }

    let abelian: Vec<&BuiltEntry> = built
        .iter()
        .filter(|b| b.group.as_ref().is_ok_and(Group::is_abelian))
        .collect();
    let bad = mismatches(&abelian, |b| {
        let g = b.group.as_ref().expect("built");
        let (k, want) = (kset(g), abelian_kset(g.order())?);
        Ok((k != want).then(|| format!("{}: {k} vs {want}", b.entry.label)))
    });
    checks.push(summarize("abelian catalog groups vs divisor formula", abelian.len(), bad));

    let ns: Vec<usize> = (2..=60).collect();
    let bad = mismatches(&ns, |&n| {
        let (k, want) = (kset(&cyclic(n)?), abelian_kset(n)?);
        Ok((k != want).then(|| format!("C{n}: {k} vs {want}")))
    });
    checks.push(summarize("cyclic 2..60 vs divisor formula", ns.len(), bad));

    let ns: Vec<usize> = (3..=20).collect();
    let bad = mismatches(&ns, |&n| {
        let (k, want) = (kset(&dihedral(n)?), dihedral_kset(n)?);
        Ok((k != want).then(|| format!("D{}: {k} vs {want}", 2 * n)))
    });
    checks.push(summarize("dihedral 3..20 vs formula", ns.len(), bad));

    let ns: Vec<usize> = (2..=12).collect();
    let bad = mismatches(&ns, |&n| {
        let g = dicyclic(n)?;
        let (k, want) = (kset(&g), quaternion_kset(n)?);
        let classes = g.conjugacy_classes().len();
        Ok((k != want || classes != n + 3)
            .then(|| format!("Q{}: {k} vs {want}, {classes} classes", 4 * n)))
    });
    checks.push(summarize("dicyclic 2..12 vs formula and n+3 classes", ns.len(), bad));

    let bad = mismatches(&PQ_PAIRS, |&(p, q)| {
        let expr = pq_group_expr(p, q).expect("valid pair");
        let g = expr.build(cap)?;
        let (k, want) = (kset(&g), pq_kset(p, q)?);
        Ok((k != want || g.is_abelian()).then(|| format!("{expr}: {k} vs {want}")))
    });
    checks.push(summarize("nonabelian order pq vs formula", PQ_PAIRS.len(), bad));

    checks.push(check_frobenius_20());
    checks.push(check_q8_by_c3());

    let shi_bad = mismatches(built, |b| {
        let Ok(g) = &b.group else { return Ok(None) };
        let r = shi_property_check(g);
        Ok((!r.passed()).then(|| format!("{}: {:?}", b.entry.label, r.entries)))
    });
    checks.push(summarize("2-decomposable subgroups (catalog)", built.len(), shi_bad));

    let jing_bad = mismatches(built, |b| {
        let Ok(g) = &b.group else { return Ok(None) };
        let r = jing_property_check(g);
        Ok((!r.passed()).then(|| format!("{}: {:?}", b.entry.label, r.entries)))
    });
    checks.push(summarize("3-decomposable subgroups (catalog)", built.len(), jing_bad));

    let frob_bad = mismatches(built, |b| {
        let Ok(g) = &b.group else { return Ok(None) };
        let r = frobenius_identity_check(g);
        Ok((!r.passed()).then(|| format!("{}: {r:?}", b.entry.label)))
    });
    checks.push(summarize("|G| = |G'|(|G'|-1) identity (catalog)", built.len(), frob_bad));

    VerifyReport { checks, hits }
}

/// `Z5 ⋊ Z4`: centerless, normal subgroups of orders 1, 5, 10, 20 with
/// ncc 1, 2, 3, and `|G| = |G'|(|G'|−1)`.
pub fn check_frobenius_20() -> Check {
    let g = smallgroup_20_3();
    let mut problems = Vec::new();
    if !g.center().is_trivial() {
        problems.push("center is nontrivial".to_string());
    }
    let proper: Vec<(usize, usize)> = g
        .proper_normal_subgroups()
        .map(|n| (n.order(), ncc(&g, n).expect("normal")))
        .collect();
    if proper != [(1, 1), (5, 2), (10, 3)] {
        problems.push(format!("proper normal (order, ncc) = {proper:?}"));
    }
    if !matches!(
        frobenius_identity_check(&g),
        FrobeniusCheck::Holds {
            order: 20,
            derived_order: 5
        }
    ) {
        problems.push("|G| ≠ |G'|(|G'|-1) = 5·4".into());
    }
    structure_check("SmallGroup(20,3) structure", problems, "Z(G)=1, (5,2), (10,3), 20 = 5·4")
}

/// `Q8 ⋊ Z3`: normal subgroups of orders 1, 2, 8, 24 only, ncc 2 and 3
/// for the middle two, `|G/Z(G)| = 12`, and the three-generator
/// presentation is satisfied.
pub fn check_q8_by_c3() -> Check {
    let g = smallgroup_24_3();
    let mut problems = Vec::new();
    let normals: Vec<(usize, usize)> = g
        .normal_subgroups()
        .iter()
        .map(|n| (n.order(), ncc(&g, n).expect("normal")))
        .collect();
    let orders: Vec<usize> = normals.iter().map(|p| p.0).collect();
    if orders != [1, 2, 8, 24] {
        problems.push(format!("normal orders {orders:?}"));
    } else if normals[1].1 != 2 || normals[2].1 != 3 {
        problems.push(format!("ncc values {normals:?}"));
    }
    if g.order() / g.center().order() != 12 {
        problems.push(format!("|G/Z(G)| = {}", g.order() / g.center().order()));
    }
    match satisfies_presentation(&g, &u_presentation()) {
        Ok(Some(_)) => {}
        Ok(None) => problems.push("presentation not satisfied".into()),
        Err(e) => problems.push(e.to_string()),
    }
    structure_check(
        "SmallGroup(24,3) structure",
        problems,
        "normal orders {1,2,8,24}, ncc 2 and 3, |G/Z| = 12, presentation holds",
    )
}

fn structure_check(name: &str, problems: Vec<String>, ok: &str) -> Check {
    if problems.is_empty() {
        Check::new(name, true, ok)
    } else {
        Check::new(name, false, problems.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::shipped_entries;
    use crate::group::DEFAULT_CAP;

    #[test]
    fn pq_exprs() {
        assert_eq!(pq_group_expr(7, 3).unwrap().to_string(), "SD(C 7, C 3; a0->a0^2)");
        assert_eq!(pq_group_expr(5, 2).unwrap().to_string(), "SD(C 5, C 2; a0->a0^4)");
        assert!(pq_group_expr(7, 5).is_none());
    }

    #[test]
    fn order_8_search() {
        let built = build_all(&shipped_entries(), DEFAULT_CAP);
        let hits = search(&built, &[8], &target_kset(), false);
        let labels: Vec<&str> = hits.iter().map(|h| h.label.as_str()).collect();
        assert_eq!(labels, vec!["g8_D8", "g8_Q8"]);
    }

    #[test]
    fn named_structure_checks() {
        assert!(check_frobenius_20().passed);
        assert!(check_q8_by_c3().passed);
    }
}
