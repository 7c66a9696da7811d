//! Generator words and a brute-force presentation checker.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::lex::Cursor;

/// A product of generator powers, read left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    pub factors: Vec<(usize, i64)>,
}

impl Word {
    pub fn new(factors: Vec<(usize, i64)>) -> Self {
        Word { factors }
    }

    pub fn identity() -> Self {
        Word::default()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.factors.iter().map(|&(g, _)| g).max()
    }

    /// Evaluates the word over the group's own generator list.
    pub fn evaluate(&self, g: &Group) -> Result<usize> {
        let gens = g.generator_indices();
        for &(i, _) in &self.factors {
            if i >= gens.len() {
                return Err(Error::InvalidAction(format!(
                    "generator a{i} out of range ({} generators)",
                    gens.len()
                )));
            }
        }
        Ok(self.evaluate_with(g, gens))
    }

    /// Evaluates the word with generator `i` bound to element `values[i]`.
    pub fn evaluate_with(&self, g: &Group, values: &[usize]) -> usize {
        self.factors
            .iter()
            .fold(g.identity(), |acc, &(i, e)| g.mul(acc, g.pow(values[i], e)))
    }

    /// Renders the word with the given generator names; the empty word is `1`.
    pub fn render(&self, names: impl Fn(usize) -> String) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        self.factors
            .iter()
            .map(|&(g, e)| match e {
                1 => names(g),
                _ => format!("{}^{e}", names(g)),
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Generators plus relations `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<(Word, Word)>,
}

/// Upper bound on the number of generator tuples tried.
pub const SEARCH_BUDGET: u128 = 100_000_000;
pub const MAX_PRESENTATION_GENERATORS: usize = 3;

/// Searches for elements of `g` satisfying every relation and generating
/// `g`. Returns the first witness tuple in canonical order, or `None`.
///
/// A witness shows `g` is a quotient of the presented group; when the
/// presented group is known to have order `|g|`, the two are isomorphic.
pub fn satisfies_presentation(g: &Group, pres: &Presentation) -> Result<Option<Vec<usize>>> {
    let k = pres.generators.len();
    if k > MAX_PRESENTATION_GENERATORS {
        return Err(Error::SearchBudget(format!(
            "{k} generators (at most {MAX_PRESENTATION_GENERATORS})"
        )));
    }
    let tuples = (g.order() as u128).pow(k as u32);
    if tuples > SEARCH_BUDGET {
        return Err(Error::SearchBudget(format!("{tuples} candidate tuples")));
    }
    // relations become checkable once every generator they mention is bound
    let mut ready: Vec<Vec<&(Word, Word)>> = vec![Vec::new(); k.max(1)];
    for rel in &pres.relations {
        let top = rel.0.max_generator().max(rel.1.max_generator()).unwrap_or(0);
        ready[top].push(rel);
    }
    let mut values = Vec::with_capacity(k);
    Ok(search(g, &ready, k, &mut values).then_some(values))
}

fn search(g: &Group, ready: &[Vec<&(Word, Word)>], k: usize, values: &mut Vec<usize>) -> bool {
    let depth = values.len();
    if depth == k {
        if k == 0 && !ready[0].iter().all(|(l, r)| l.factors.is_empty() && r.factors.is_empty()) {
            return false;
        }
        return g.subgroup_generated(values.iter().copied()).order() == g.order();
    }
    for x in 0..g.order() {
        values.push(x);
        let ok = ready[depth]
            .iter()
            .all(|(l, r)| l.evaluate_with(g, values) == r.evaluate_with(g, values));
        if ok && search(g, ready, k, values) {
            return true;
        }
        values.pop();
    }
    false
}

fn parse_word(cur: &mut Cursor, names: &[String]) -> Result<Word> {
    let mut factors = Vec::new();
    if cur.peek() == Some('1') {
        cur.pos += 1;
        return Ok(Word::identity());
    }
    loop {
        cur.skip_ws();
        let start = cur.pos;
        let name = cur.ident()?;
        let g = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| cur.err_at(start, format!("unknown generator {name:?}")))?;
        let mut e = 1;
        if cur.peek() == Some('^') {
            cur.pos += 1;
            e = cur.int()?;
        }
        factors.push((g, e));
        match cur.peek() {
            Some('*') => cur.pos += 1,
            Some(c) if c.is_ascii_alphabetic() => {}
            _ => break,
        }
    }
    Ok(Word::new(factors))
}

/// Parses `<x, y | x^4 = y^5 = 1, x^-1 y x = y^2>`. Chained equalities
/// `a = b = c` become `a = c` and `b = c`. Factors may be separated by
/// whitespace or `*`.
impl FromStr for Presentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        cur.expect('<')?;
        let mut generators = Vec::new();
        loop {
            generators.push(cur.ident()?.to_string());
            match cur.peek() {
                Some(',') => cur.pos += 1,
                _ => break,
            }
        }
        let mut relations = Vec::new();
        if cur.peek() == Some('|') {
            cur.pos += 1;
            loop {
                let mut chain = vec![parse_word(&mut cur, &generators)?];
                while cur.peek() == Some('=') {
                    cur.pos += 1;
                    chain.push(parse_word(&mut cur, &generators)?);
                }
                if chain.len() < 2 {
                    return Err(cur.err("relation needs '='"));
                }
                let last = chain.pop().expect("non-empty");
                relations.extend(chain.into_iter().map(|w| (w, last.clone())));
                match cur.peek() {
                    Some(',') => cur.pos += 1,
                    _ => break,
                }
            }
        }
        cur.expect('>')?;
        if cur.peek().is_some() {
            return Err(cur.err("trailing input"));
        }
        Ok(Presentation {
            generators,
            relations,
        })
    }
}
