//! The group catalog: parsing, printing and integrity checks.
//!
//! One entry per line:
//!
//! ```text
//! label | order | expression [| gap=(n,i)] [| kset={a,b,c}] [| notes=free text]
//! ```
//!
//! `#` starts a comment. Fields are split on `|` outside parentheses, so
//! semidirect action blocks may use `|` freely.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::decomp::{kset, KSet};
use crate::error::{Error, Result};
use crate::expr::ConstructionExpr;
use crate::group::Group;
use crate::isomorph::{are_isomorphic, fingerprint};

/// The shipped catalog.
pub const SHIPPED_CATALOG: &str = include_str!("../../../catalog/small_groups.cat");

/// Number of isomorphism types for each order the catalog covers.
pub const EXPECTED_COUNTS: [(usize, usize); 8] = [
    (6, 2),
    (8, 5),
    (12, 5),
    (18, 5),
    (20, 5),
    (24, 15),
    (36, 14),
    (42, 6),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub label: String,
    pub order: usize,
    pub expr: ConstructionExpr,
    pub gap_id: Option<(usize, usize)>,
    pub expected_kset: Option<KSet>,
    pub notes: Option<String>,
}

impl CatalogEntry {
    pub fn to_line(&self) -> String {
        let mut line = format!("{} | {} | {}", self.label, self.order, self.expr);
        if let Some((n, i)) = self.gap_id {
            line.push_str(&format!(" | gap=({n},{i})"));
        }
        if let Some(k) = &self.expected_kset {
            line.push_str(&format!(" | kset={k}"));
        }
        if let Some(notes) = &self.notes {
            line.push_str(&format!(" | notes={notes}"));
        }
        line
    }

    pub fn build(&self, cap: usize) -> Result<Group> {
        self.expr.build(cap)
    }
}

/// Splits on `|` at parenthesis depth zero, returning each field trimmed
/// with the character column (1-based) where its text starts.
fn split_fields(line: &str) -> Vec<(usize, &str)> {
    let mut fields = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut bounds = Vec::new();
    for (i, c) in line.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '|' if depth == 0 => {
                bounds.push((start, i));
                start = i + 1;
            }
            _ => {}
        }
    }
    bounds.push((start, line.len()));
    for (s, e) in bounds {
        let raw = &line[s..e];
        let lead = raw.len() - raw.trim_start().len();
        let col = line[..s + lead].chars().count() + 1;
        fields.push((col, raw.trim()));
    }
    fields
}

fn catalog_err(line: usize, message: impl Into<String>) -> Error {
    Error::Catalog {
        line,
        message: message.into(),
    }
}

fn parse_gap_id(text: &str) -> Option<(usize, usize)> {
    let inner = text.trim().strip_prefix('(')?.strip_suffix(')')?;
    let (n, i) = inner.split_once(',')?;
    Some((n.trim().parse().ok()?, i.trim().parse().ok()?))
}

/// Parses catalog text into entries in file order. Expressions are parsed
/// but not built.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    let mut entries: Vec<CatalogEntry> = Vec::new();
    let mut labels: HashSet<String> = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let fields = split_fields(line);
        let (_, label) = fields[0];
        if label.is_empty() || label.contains(char::is_whitespace) {
            return Err(catalog_err(lineno, format!("bad label {label:?}")));
        }
        let (_, order_text) = fields
            .get(1)
            .copied()
            .filter(|(_, t)| !t.is_empty())
            .ok_or_else(|| catalog_err(lineno, "order field absent"))?;
        let order: usize = order_text
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| catalog_err(lineno, format!("bad order {order_text:?}")))?;
        let (expr_col, expr_text) = fields
            .get(2)
            .copied()
            .ok_or_else(|| catalog_err(lineno, "expression field absent"))?;
        let expr: ConstructionExpr = expr_text.parse().map_err(|e| match e {
            Error::Syntax { column, message } => catalog_err(
                lineno,
                format!("column {}: {message}", expr_col + column - 1),
            ),
            other => catalog_err(lineno, other.to_string()),
        })?;
        let mut entry = CatalogEntry {
            label: label.to_string(),
            order,
            expr,
            gap_id: None,
            expected_kset: None,
            notes: None,
        };
        for &(col, field) in &fields[3..] {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| catalog_err(lineno, format!("column {col}: expected key=value")))?;
            match key.trim() {
                "gap" => {
                    let id = parse_gap_id(value).ok_or_else(|| {
                        catalog_err(lineno, format!("column {col}: bad gap id {value:?}"))
                    })?;
                    if id.0 != order {
                        return Err(catalog_err(
                            lineno,
                            format!("gap id order {} differs from declared order {order}", id.0),
                        ));
                    }
                    entry.gap_id = Some(id);
                }
                "kset" => {
                    entry.expected_kset = Some(value.parse().map_err(|e: Error| {
                        catalog_err(lineno, format!("column {col}: {e}"))
                    })?)
                }
                "notes" => entry.notes = Some(value.trim().to_string()),
                other => {
                    return Err(catalog_err(
                        lineno,
                        format!("column {col}: unknown field {other:?}"),
                    ))
                }
            }
        }
        if !labels.insert(entry.label.clone()) {
            return Err(catalog_err(
                lineno,
                format!("duplicate label {:?}", entry.label),
            ));
        }
        entries.push(entry);
    }
    Ok(entries)
}

pub fn print_catalog(entries: &[CatalogEntry]) -> String {
    entries
        .iter()
        .map(|e| e.to_line() + "\n")
        .collect()
}

pub fn shipped_entries() -> Vec<CatalogEntry> {
    parse_catalog(SHIPPED_CATALOG).expect("shipped catalog parses")
}

/// A catalog entry together with its group, when it could be built.
pub struct BuiltEntry {
    pub entry: CatalogEntry,
    pub group: Result<Group>,
}

/// Builds every entry in parallel, preserving input order.
pub fn build_all(entries: &[CatalogEntry], cap: usize) -> Vec<BuiltEntry> {
    entries
        .par_iter()
        .map(|e| BuiltEntry {
            entry: e.clone(),
            group: e.build(cap),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CatalogIssue {
    BuildFailed { label: String, error: String },
    OrderMismatch { label: String, declared: usize, actual: usize },
    Isomorphic { first: String, second: String },
    CountMismatch { order: usize, expected: usize, found: usize },
    UnexpectedOrder { label: String, order: usize },
    KSetMismatch { label: String, expected: KSet, actual: KSet },
}

impl std::fmt::Display for CatalogIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use CatalogIssue::*;
        match self {
            BuildFailed { label, error } => write!(f, "{label}: build failed: {error}"),
            OrderMismatch {
                label,
                declared,
                actual,
            } => write!(f, "{label}: declared order {declared}, built order {actual}"),
            Isomorphic { first, second } => write!(f, "{first} and {second} are isomorphic"),
            CountMismatch {
                order,
                expected,
                found,
            } => write!(f, "count {found} ≠ {expected} at order {order}"),
            UnexpectedOrder { label, order } => {
                write!(f, "{label}: order {order} is outside the catalog's orders")
            }
            KSetMismatch {
                label,
                expected,
                actual,
            } => write!(f, "{label}: expected K = {expected}, computed {actual}"),
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CatalogReport {
    pub entries: usize,
    pub counts: BTreeMap<usize, usize>,
    pub issues: Vec<CatalogIssue>,
}

impl CatalogReport {
    pub fn passed(&self) -> bool {
        self.issues.is_empty()
    }
}

/// Checks that every entry builds at its declared order, that entries of
/// equal order are pairwise non-isomorphic, that the per-order counts match
/// [`EXPECTED_COUNTS`], and that declared K-sets match computed ones.
pub fn verify_catalog(built: &[BuiltEntry]) -> CatalogReport {
    let mut issues = Vec::new();
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    let mut by_order: BTreeMap<usize, Vec<(&str, &Group)>> = BTreeMap::new();
    for b in built {
        let label = b.entry.label.clone();
        *counts.entry(b.entry.order).or_default() += 1;
        match &b.group {
            Err(e) => issues.push(CatalogIssue::BuildFailed {
                label,
                error: e.to_string(),
            }),
            Ok(g) if g.order() != b.entry.order => issues.push(CatalogIssue::OrderMismatch {
                label,
                declared: b.entry.order,
                actual: g.order(),
            }),
            Ok(g) => by_order
                .entry(g.order())
                .or_default()
                .push((b.entry.label.as_str(), g)),
        }
    }

    let kset_issues: Vec<CatalogIssue> = built
        .par_iter()
        .filter_map(|b| {
            let expected = b.entry.expected_kset.as_ref()?;
            let g = b.group.as_ref().ok()?;
            let actual = kset(g);
            (actual != *expected).then(|| CatalogIssue::KSetMismatch {
                label: b.entry.label.clone(),
                expected: expected.clone(),
                actual,
            })
        })
        .collect();
    issues.extend(kset_issues);

    let pairs: Vec<(&str, &Group, &str, &Group)> = by_order
        .values()
        .flat_map(|v| {
            (0..v.len()).flat_map(move |i| (i + 1..v.len()).map(move |j| (v[i].0, v[i].1, v[j].0, v[j].1)))
        })
        .collect();
    let prints: BTreeMap<&str, _> = by_order
        .values()
        .flatten()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|(l, g)| (*l, fingerprint(g)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    let mut iso_issues: Vec<CatalogIssue> = pairs
        .par_iter()
        .filter(|(la, ga, lb, gb)| prints[la] == prints[lb] && are_isomorphic(ga, gb))
        .map(|(la, _, lb, _)| CatalogIssue::Isomorphic {
            first: la.to_string(),
            second: lb.to_string(),
        })
        .collect();
    iso_issues.sort_by(|a, b| format!("{a}").cmp(&format!("{b}")));
    issues.extend(iso_issues);

    let expected: BTreeMap<usize, usize> = EXPECTED_COUNTS.into_iter().collect();
    for (&order, &want) in &expected {
        let found = counts.get(&order).copied().unwrap_or(0);
        if found != want {
            issues.push(CatalogIssue::CountMismatch {
                order,
                expected: want,
                found,
            });
        }
    }
    for b in built {
        if !expected.contains_key(&b.entry.order) {
            issues.push(CatalogIssue::UnexpectedOrder {
                label: b.entry.label.clone(),
                order: b.entry.order,
            });
        }
    }

    CatalogReport {
        entries: built.len(),
        counts,
        issues,
    }
}
