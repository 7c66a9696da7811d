//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use proptest::test_runner::{Config, TestRunner};

use ncclab_core::arith::divisors;
use ncclab_core::catalog::{
    build_all, parse_catalog, print_catalog, shipped_entries, verify_catalog, BuiltEntry, CatalogEntry,
    SHIPPED_CATALOG,
};
use ncclab_core::constructors::{cyclic, dicyclic, dihedral, smallgroup_20_3, smallgroup_24_3, u_presentation};
use ncclab_core::decomp::{
    dihedral_kset, elementary_abelian_prime, is_minimal_normal, jing_property_check, quaternion_kset,
    shi_property_check,
};
use ncclab_core::isomorph::are_isomorphic;
use ncclab_core::presentation::satisfies_presentation;
use ncclab_core::sweep::{pq_group_expr, search, target_kset, theorem_groups, EMPTY_ORDERS, PQ_PAIRS, SWEEP_ORDERS};
use ncclab_core::{kset, ncc, ConstructionExpr, Group, KSet, DEFAULT_CAP};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ks(values: impl IntoIterator<Item = usize>) -> KSet {
    KSet::new(values).unwrap()
}

fn ncclab(args: &[&str]) -> (i32, String, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_ncclab"))
        .args(args)
        .env_remove("NCCLAB_CAP")
        .output()
        .expect("binary runs");
    let code = out.status.code().unwrap_or(-1);
    (code, String::from_utf8_lossy(&out.stdout).into_owned(), start.elapsed())
}

fn built_catalog() -> Vec<BuiltEntry> {
    build_all(&shipped_entries(), DEFAULT_CAP)
}

fn group_of<'a>(built: &'a [BuiltEntry], label: &str) -> &'a Group {
    built
        .iter()
        .find(|b| b.entry.label == label)
        .and_then(|b| b.group.as_ref().ok())
        .expect("label present")
}

fn classification() -> Outcome {
    let (code, stdout, elapsed) = ncclab(&["--workers", "1", "verify"]);
    ensure(code == 0, || format!("verify exited {code}:\n{stdout}"))?;
    ensure(stdout.contains("6/6 theorem groups, 0 extras"), || stdout.clone())?;
    ensure(elapsed < Duration::from_secs(60), || format!("serial verify took {elapsed:?}"))?;

    let built = built_catalog();
    let hits = search(&built, &SWEEP_ORDERS, &target_kset(), true);
    let theorem = theorem_groups();
    ensure(hits.len() == theorem.len(), || format!("{} hits", hits.len()))?;
    let mut matched = BTreeSet::new();
    for h in &hits {
        let g = group_of(&built, &h.label);
        let names: Vec<&str> = theorem
            .iter()
            .filter(|(_, t)| are_isomorphic(g, t))
            .map(|(n, _)| *n)
            .collect();
        ensure(names.len() == 1, || format!("{} matches {names:?}", h.label))?;
        matched.insert(names[0]);
    }
    ensure(matched.len() == 6, || format!("matched {matched:?}"))?;
    Ok(format!("6/6 matched, serial verify {:.2}s", elapsed.as_secs_f64()))
}

fn negative_orders() -> Outcome {
    let built = built_catalog();
    let hits = search(&built, &EMPTY_ORDERS, &target_kset(), false);
    ensure(hits.is_empty(), || format!("{hits:?}"))?;
    let (code, stdout, _) = ncclab(&["search", "--orders", "12,18,36,42", "--x", "1,2,3"]);
    ensure(code == 0 && stdout.trim().is_empty(), || format!("exit {code}: {stdout}"))?;
    let searched = built.iter().filter(|b| EMPTY_ORDERS.contains(&b.entry.order)).count();
    Ok(format!("0 hits among {searched} groups"))
}

fn proper_divisors(n: usize) -> KSet {
    ks((1..n).filter(|d| n % d == 0))
}

fn abelian_oracle() -> Outcome {
    let built = built_catalog();
    let mut count = 0;
    for b in &built {
        let g = b.group.as_ref().unwrap();
        if g.is_abelian() {
            let k = kset(g);
            ensure(k == proper_divisors(g.order()), || format!("{}: {k}", b.entry.label))?;
            count += 1;
        }
    }
    for n in 2..=60 {
        let k = kset(&cyclic(n).unwrap());
        ensure(k == proper_divisors(n), || format!("C{n}: {k}"))?;
        ensure(k.len() + 1 == divisors(n).len(), || format!("C{n}"))?;
    }
    Ok(format!("{count} abelian catalog groups, cyclic 2..60"))
}

fn dihedral_oracle() -> Outcome {
    for n in 3..=20 {
        let g = dihedral(n).unwrap();
        let k = kset(&g);
        let want = dihedral_kset(n).unwrap();
        ensure(k == want, || format!("D{}: {k} vs {want}", 2 * n))?;
        // The index-2 subgroups beyond the rotations.
        if n % 4 == 0 {
            ensure(k.contains(n / 4 + 2), || format!("n={n}: missing n/4+2"))?;
        } else if n % 4 == 2 {
            ensure(k.contains((n + 6) / 4), || format!("n={n}: missing (n+6)/4"))?;
        }
    }
    Ok("n = 3..20".into())
}

fn dicyclic_oracle() -> Outcome {
    for n in 2..=12 {
        let g = dicyclic(n).unwrap();
        ensure(g.order() == 4 * n, || format!("Q{}", 4 * n))?;
        let (k, want) = (kset(&g), quaternion_kset(n).unwrap());
        ensure(k == want, || format!("Q{}: {k} vs {want}", 4 * n))?;
        let classes = g.conjugacy_classes().len();
        ensure(classes == n + 3, || format!("Q{}: {classes} classes", 4 * n))?;
    }
    Ok("n = 2..12".into())
}

fn pq_oracle() -> Outcome {
    for (p, q) in PQ_PAIRS {
        let expr = pq_group_expr(p, q).unwrap();
        let g = expr.build(DEFAULT_CAP).unwrap();
        ensure(g.order() == p * q && !g.is_abelian(), || format!("{expr}"))?;
        let k = kset(&g);
        ensure(k == ks([1, 1 + (p - 1) / q]), || format!("{expr}: {k}"))?;
    }
    Ok(format!("{} (p,q) pairs", PQ_PAIRS.len()))
}

fn frobenius_20() -> Outcome {
    let g = smallgroup_20_3();
    ensure(g.order() == 20, || "order".into())?;
    ensure(g.center().is_trivial(), || "center nontrivial".into())?;
    let mid: Vec<(usize, usize)> = g
        .proper_normal_subgroups()
        .filter(|n| !n.is_trivial())
        .map(|n| (n.order(), ncc(&g, n).unwrap()))
        .collect();
    ensure(mid == [(5, 2), (10, 3)], || format!("{mid:?}"))?;
    let d = g.derived_subgroup().order();
    ensure(d == 5 && g.order() == d * (d - 1), || format!("|G'| = {d}"))?;
    Ok("Z=1, (5,2), (10,3), 20 = 5·4".into())
}

fn q8_by_c3() -> Outcome {
    let g = smallgroup_24_3();
    let normals: Vec<(usize, usize)> = g
        .normal_subgroups()
        .iter()
        .map(|n| (n.order(), ncc(&g, n).unwrap()))
        .collect();
    let orders: Vec<usize> = normals.iter().map(|n| n.0).collect();
    ensure(orders == [1, 2, 8, 24], || format!("{normals:?}"))?;
    ensure(normals[1].1 == 2 && normals[2].1 == 3, || format!("{normals:?}"))?;
    let quotient = g.order() / g.center().order();
    ensure(quotient == 12, || format!("|G/Z| = {quotient}"))?;
    let witness = satisfies_presentation(&g, &u_presentation()).map_err(|e| e.to_string())?;
    ensure(witness.is_some(), || "presentation not satisfied".into())?;
    Ok("normal orders {1,2,8,24}, ncc 2 and 3, |G/Z| = 12, presentation holds".into())
}

fn prime_power(n: usize) -> bool {
    n == 1 || (2..=n).find(|p| n % p == 0).is_some_and(|p| {
        let mut m = n;
        while m % p == 0 {
            m /= p;
        }
        m == 1
    })
}

fn property_suites() -> Outcome {
    let built = built_catalog();
    let (mut twos, mut threes) = (0, 0);
    for b in &built {
        let g = b.group.as_ref().unwrap();
        let label = &b.entry.label;
        ensure(shi_property_check(g).passed(), || format!("{label}: 2-decomposable check"))?;
        ensure(jing_property_check(g).passed(), || format!("{label}: 3-decomposable check"))?;
        for n in g.proper_normal_subgroups() {
            match ncc(g, n).unwrap() {
                2 => {
                    twos += 1;
                    let o = n.order();
                    ensure(is_minimal_normal(g, n), || format!("{label}: not minimal"))?;
                    ensure(elementary_abelian_prime(g, n).is_some(), || format!("{label}: not elementary"))?;
                    ensure(g.order() % (o * (o - 1)) == 0, || format!("{label}: |N|(|N|-1) ∤ |G|"))?;
                    ensure(g.order() % 2 == 0, || format!("{label}: |G| odd"))?;
                }
                3 => {
                    threes += 1;
                    ensure(n.elements().all(|x| prime_power(g.element_order(x))), || {
                        format!("{label}: element of non-prime-power order")
                    })?;
                }
                _ => {}
            }
        }
    }
    Ok(format!("{} groups, {twos} ncc-2 and {threes} ncc-3 subgroups", built.len()))
}

fn closure(g: &Group, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut set = seed.clone();
    set.insert(g.identity());
    loop {
        let new: Vec<usize> = set
            .iter()
            .flat_map(|&a| set.iter().map(move |&b| g.mul(a, b)))
            .filter(|p| !set.contains(p))
            .collect();
        if new.is_empty() {
            return set;
        }
        set.extend(new);
    }
}

fn brute_normal_subgroups(g: &Group) -> BTreeSet<BTreeSet<usize>> {
    let start = closure(g, &BTreeSet::new());
    let mut all = BTreeSet::from([start.clone()]);
    let mut stack = vec![start];
    while let Some(h) = stack.pop() {
        for x in (0..g.order()).filter(|x| !h.contains(x)) {
            let mut seed = h.clone();
            seed.insert(x);
            let k = closure(g, &seed);
            if all.insert(k.clone()) {
                stack.push(k);
            }
        }
    }
    all.into_iter()
        .filter(|h| h.iter().all(|&x| (0..g.order()).all(|y| h.contains(&g.conjugate(x, y)))))
        .collect()
}

fn structural(g: &Group) -> Result<(), String> {
    let n = g.order();
    let mut cover = vec![0u32; n];
    for c in g.conjugacy_classes() {
        for x in c.members.ones() {
            cover[x] += 1;
        }
        ensure(c.size * g.centralizer(c.representative).order() == n, || "orbit-stabilizer".into())?;
    }
    ensure(cover.iter().all(|&c| c == 1), || "classes do not partition G".into())?;
    ensure((0..n).all(|x| n % g.element_order(x) == 0), || "element order ∤ |G|".into())?;
    for sub in g.normal_subgroups() {
        ensure(n % sub.order() == 0, || "Lagrange".into())?;
        let fused: usize = g
            .conjugacy_classes()
            .iter()
            .filter(|c| sub.contains(c.representative))
            .map(|c| c.size)
            .sum();
        ensure(fused == sub.order(), || format!("fusion sum {fused} ≠ {}", sub.order()))?;
    }
    Ok(())
}

fn structural_invariants() -> Outcome {
    let built = built_catalog();
    let mut lattices = 0;
    for b in &built {
        let g = b.group.as_ref().unwrap();
        structural(g).map_err(|e| format!("{}: {e}", b.entry.label))?;
        if g.order() <= 24 {
            let actual: BTreeSet<BTreeSet<usize>> =
                g.normal_subgroups().iter().map(|s| s.elements().collect()).collect();
            ensure(actual == brute_normal_subgroups(g), || format!("{}: lattice", b.entry.label))?;
            lattices += 1;
        }
    }
    let mut runner = TestRunner::new(Config {
        cases: 64,
        failure_persistence: None,
        ..Config::default()
    });
    let exprs = proptest::sample::select(vec![
        "C 1", "C 9", "D 5", "D 6", "Q 3", "Q 4", "S 4", "A 4", "E 2 3", "E 3 2", "X(C 2, D 4)",
        "X(Q 2, C 3)", "X(S 3, S 3)", "SD(C 7, C 3; a0->a0^2)", "SD(E 2 2, C 3; a0->a1, a1->a0*a1)",
    ]);
    runner
        .run(&(exprs, 0usize..4), |(text, pick)| {
            let g = text.parse::<ConstructionExpr>().unwrap().build(DEFAULT_CAP).unwrap();
            let g = match pick {
                0 => g,
                1 => g.subgroup_as_group(g.derived_subgroup()),
                2 => g.subgroup_as_group(g.center()),
                _ => ncclab_core::constructors::direct_product(&g, &cyclic(2).unwrap()).unwrap(),
            };
            structural(&g).map_err(proptest::test_runner::TestCaseError::fail)
        })
        .map_err(|e| e.to_string())?;
    Ok(format!("{} catalog groups, {lattices} lattices brute-forced, 64 random cases", built.len()))
}

fn catalog_mutations(entries: &[CatalogEntry]) -> Vec<(String, Vec<CatalogEntry>)> {
    let mut out = Vec::new();
    for (i, e) in entries.iter().enumerate() {
        let mut deleted = entries.to_vec();
        deleted.remove(i);
        out.push((format!("delete {}", e.label), deleted));

        let mut reordered = entries.to_vec();
        reordered[i].order += 1;
        out.push((format!("order of {}", e.label), reordered));

        if let Some(other) = entries.iter().find(|o| o.order == e.order && o.label != e.label) {
            let mut dup = entries.to_vec();
            dup[i].expr = other.expr.clone();
            out.push((format!("{} duplicates {}", e.label, other.label), dup));
        }

        if let Some(k) = &e.expected_kset {
            let mut wrong = entries.to_vec();
            let mut values = k.values().to_vec();
            values.push(e.order + 1);
            wrong[i].expected_kset = Some(KSet::new(values).unwrap());
            out.push((format!("K-set of {}", e.label), wrong));
        }
    }
    out
}

fn catalog_integrity() -> Outcome {
    let entries = parse_catalog(SHIPPED_CATALOG).map_err(|e| e.to_string())?;
    ensure(entries.len() == 57, || format!("{} entries", entries.len()))?;
    let report = verify_catalog(&build_all(&entries, DEFAULT_CAP));
    let counts: Vec<usize> = report.counts.values().copied().collect();
    ensure(counts == [2, 5, 5, 5, 5, 15, 14, 6], || format!("counts {counts:?}"))?;
    ensure(report.passed(), || format!("{:?}", report.issues))?;

    let mutations = catalog_mutations(&entries);
    for (name, mutated) in &mutations {
        let r = verify_catalog(&build_all(mutated, DEFAULT_CAP));
        ensure(!r.passed(), || format!("mutation not detected: {name}"))?;
    }

    let dir = std::env::temp_dir().join(format!("ncclab-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let mut cli_runs = 0;
    for (name, mutated) in mutations.iter().filter(|(n, _)| {
        n == "delete g24_S4" || n == "order of g8_Q8" || n.starts_with("g20_F20 duplicates") || n == "K-set of g6_S3"
    }) {
        let path = dir.join("mutated.cat");
        std::fs::File::create(&path)
            .and_then(|mut f| f.write_all(print_catalog(mutated).as_bytes()))
            .map_err(|e| e.to_string())?;
        let (code, stdout, _) = ncclab(&["verify", "--catalog", path.to_str().unwrap()]);
        ensure(code == 2 && stdout.contains("FAIL"), || format!("{name}: exit {code}\n{stdout}"))?;
        if name == "delete g24_S4" {
            ensure(stdout.contains("FAIL catalog: count 14 ≠ 15 at order 24"), || stdout.clone())?;
        }
        cli_runs += 1;
    }
    let _ = std::fs::remove_dir_all(&dir);
    ensure(cli_runs == 4, || format!("{cli_runs} CLI mutation runs"))?;
    Ok(format!("57 entries, {} single-entry mutations all rejected", mutations.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("{1,2,3} classification sweep", classification),
        ("no {1,2,3} groups at orders 12, 18, 36, 42", negative_orders),
        ("abelian K-sets are proper divisors", abelian_oracle),
        ("dihedral K-set formula", dihedral_oracle),
        ("dicyclic K-set formula and n+3 classes", dicyclic_oracle),
        ("order-pq K-set formula", pq_oracle),
        ("SmallGroup(20,3) structure", frobenius_20),
        ("SmallGroup(24,3) structure", q8_by_c3),
        ("ncc-2 and ncc-3 property suites", property_suites),
        ("structural invariants", structural_invariants),
        ("catalog integrity and mutations", catalog_integrity),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2}. {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
