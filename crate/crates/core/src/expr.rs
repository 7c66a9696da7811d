//! Construction expressions.
//!
//! ```text
//! expr   := "C" n | "D" n | "Q" n | "S" n | "A" n | "E" p k
//!         | "X(" expr "," expr ")"
//!         | "SD(" expr "," expr [ ";" block { "|" block } ] ")"
//! block  := [ gen "->" word { "," gen "->" word } ]
//! word   := "1" | factor { "*" factor }
//! factor := gen [ "^" int ]
//! gen    := "a" index
//! ```
//!
//! `D n` has order 2n and `Q n` (dicyclic) order 4n. In `SD(N, H; ...)` the
//! k-th block lists images of the generators `a0, a1, ...` of `N` under the
//! automorphism attached to the k-th generator of `H`. Generators not
//! mentioned in a block map to themselves, and missing trailing blocks are
//! the identity automorphism. See the constructor docs for generator order.

use std::fmt;
use std::str::FromStr;

use crate::arith::{factorial, is_prime};
use crate::constructors::{
    alternating, cyclic, dicyclic, dihedral, direct_product, elementary_abelian,
    semidirect_product, symmetric,
};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::lex::Cursor;
use crate::presentation::Word;

/// Images of selected normal-part generators under one automorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ActionBlock {
    pub images: Vec<(usize, Word)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ConstructionExpr {
    Cyclic(usize),
    Dihedral(usize),
    Dicyclic(usize),
    Sym(usize),
    Alt(usize),
    ElemAbelian(usize, usize),
    DirectProduct(Box<ConstructionExpr>, Box<ConstructionExpr>),
    Semidirect {
        normal: Box<ConstructionExpr>,
        acting: Box<ConstructionExpr>,
        action: Vec<ActionBlock>,
    },
}

impl ConstructionExpr {
    /// Order of the group the expression denotes, if it fits in `usize`.
    pub fn expected_order(&self) -> Option<usize> {
        use ConstructionExpr::*;
        match self {
            Cyclic(n) => Some(*n),
            Dihedral(n) => n.checked_mul(2),
            Dicyclic(n) => n.checked_mul(4),
            Sym(n) => factorial(*n),
            Alt(n) => factorial(*n).map(|f| if *n <= 2 { 1 } else { f / 2 }),
            ElemAbelian(p, k) => p.checked_pow(u32::try_from(*k).ok()?),
            DirectProduct(a, b) | Semidirect { normal: a, acting: b, .. } => {
                a.expected_order()?.checked_mul(b.expected_order()?)
            }
        }
    }

    /// Builds the group, refusing anything whose order would exceed `cap`.
    pub fn build(&self, cap: usize) -> Result<Group> {
        match self.expected_order() {
            Some(n) if n <= cap => self.build_unchecked(),
            _ => Err(Error::CapExceeded { cap }),
        }
    }

    fn build_unchecked(&self) -> Result<Group> {
        use ConstructionExpr::*;
        match self {
            Cyclic(n) => cyclic(*n),
            Dihedral(n) => dihedral(*n),
            Dicyclic(n) => dicyclic(*n),
            Sym(n) => symmetric(*n),
            Alt(n) => alternating(*n),
            ElemAbelian(p, k) => elementary_abelian(*p, *k),
            DirectProduct(a, b) => direct_product(&a.build_unchecked()?, &b.build_unchecked()?),
            Semidirect {
                normal,
                acting,
                action,
            } => {
                let n = normal.build_unchecked()?;
                let h = acting.build_unchecked()?;
                let full = expand_action(action, n.generators().len(), h.generators().len())?;
                semidirect_product(&n, &h, &full)
            }
        }
    }
}

/// Fills in identity images and identity blocks.
fn expand_action(blocks: &[ActionBlock], ngens: usize, hgens: usize) -> Result<Vec<Vec<Word>>> {
    if blocks.len() > hgens {
        return Err(Error::InvalidAction(format!(
            "{} action blocks but the acting group has {hgens} generators",
            blocks.len()
        )));
    }
    let mut out = Vec::with_capacity(hgens);
    for j in 0..hgens {
        let mut images: Vec<Option<Word>> = vec![None; ngens];
        if let Some(block) = blocks.get(j) {
            for (g, w) in &block.images {
                let slot = images.get_mut(*g).ok_or_else(|| {
                    Error::InvalidAction(format!(
                        "block {j}: a{g} is not a generator of the normal part ({ngens} generators)"
                    ))
                })?;
                if slot.replace(w.clone()).is_some() {
                    return Err(Error::InvalidAction(format!("block {j}: a{g} mapped twice")));
                }
            }
        }
        out.push(
            images
                .into_iter()
                .enumerate()
                .map(|(i, w)| w.unwrap_or_else(|| Word::new(vec![(i, 1)])))
                .collect(),
        );
    }
    Ok(out)
}

fn gen_name(i: usize) -> String {
    format!("a{i}")
}

impl fmt::Display for ActionBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .images
            .iter()
            .map(|(g, w)| format!("a{g}->{}", w.render(gen_name)))
            .collect();
        f.write_str(&parts.join(", "))
    }
}

impl fmt::Display for ConstructionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ConstructionExpr::*;
        match self {
            Cyclic(n) => write!(f, "C {n}"),
            Dihedral(n) => write!(f, "D {n}"),
            Dicyclic(n) => write!(f, "Q {n}"),
            Sym(n) => write!(f, "S {n}"),
            Alt(n) => write!(f, "A {n}"),
            ElemAbelian(p, k) => write!(f, "E {p} {k}"),
            DirectProduct(a, b) => write!(f, "X({a}, {b})"),
            Semidirect {
                normal,
                acting,
                action,
            } => {
                write!(f, "SD({normal}, {acting}")?;
                if !action.is_empty() {
                    let blocks: Vec<String> = action.iter().map(ToString::to_string).collect();
                    write!(f, "; {}", blocks.join(" | "))?;
                }
                f.write_str(")")
            }
        }
    }
}

impl FromStr for ConstructionExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        let e = parse_expr(&mut cur)?;
        if !cur.at_end() {
            return Err(cur.err("unexpected trailing input"));
        }
        Ok(e)
    }
}

fn positive(cur: &mut Cursor, min: usize, what: &str) -> Result<usize> {
    cur.skip_ws();
    let start = cur.pos;
    let n = cur.uint()?;
    if n < min {
        return Err(cur.err_at(start, format!("{what} must be ≥ {min}, got {n}")));
    }
    Ok(n)
}

fn parse_expr(cur: &mut Cursor) -> Result<ConstructionExpr> {
    use ConstructionExpr::*;
    cur.skip_ws();
    let start = cur.pos;
    let head = cur.letters();
    Ok(match head {
        "C" => Cyclic(positive(cur, 1, "cyclic order")?),
        "D" => Dihedral(positive(cur, 2, "dihedral parameter")?),
        "Q" => Dicyclic(positive(cur, 2, "dicyclic parameter")?),
        "S" => Sym(positive(cur, 1, "symmetric degree")?),
        "A" => Alt(positive(cur, 1, "alternating degree")?),
        "E" => {
            cur.skip_ws();
            let at = cur.pos;
            let p = cur.uint()?;
            if !is_prime(p) {
                return Err(cur.err_at(at, format!("{p} is not prime")));
            }
            ElemAbelian(p, positive(cur, 1, "rank")?)
        }
        "X" => {
            expect(cur, '(')?;
            let a = parse_expr(cur)?;
            expect(cur, ',')?;
            let b = parse_expr(cur)?;
            expect(cur, ')')?;
            DirectProduct(Box::new(a), Box::new(b))
        }
        "SD" => {
            expect(cur, '(')?;
            let normal = parse_expr(cur)?;
            expect(cur, ',')?;
            let acting = parse_expr(cur)?;
            let mut action = Vec::new();
            if cur.eat(';') {
                loop {
                    action.push(parse_block(cur)?);
                    if !cur.eat('|') {
                        break;
                    }
                }
            }
            expect(cur, ')')?;
            Semidirect {
                normal: Box::new(normal),
                acting: Box::new(acting),
                action,
            }
        }
        "" => return Err(cur.err_at(start, "expected a construction")),
        other => return Err(cur.err_at(start, format!("unknown construction {other:?}"))),
    })
}

fn expect(cur: &mut Cursor, c: char) -> Result<()> {
    if cur.eat(c) {
        Ok(())
    } else {
        Err(cur.err(format!("expected '{c}'")))
    }
}

fn parse_gen(cur: &mut Cursor) -> Result<usize> {
    cur.skip_ws();
    let start = cur.pos;
    if cur.letters() != "a" {
        return Err(cur.err_at(start, "expected generator a<index>"));
    }
    cur.uint()
}

fn parse_block(cur: &mut Cursor) -> Result<ActionBlock> {
    let mut images = Vec::new();
    if matches!(cur.peek(), Some('|') | Some(')')) {
        return Ok(ActionBlock { images });
    }
    loop {
        let g = parse_gen(cur)?;
        if !cur.eat_str("->") {
            return Err(cur.err("expected '->'"));
        }
        images.push((g, parse_word(cur)?));
        if !cur.eat(',') {
            break;
        }
    }
    Ok(ActionBlock { images })
}

fn parse_word(cur: &mut Cursor) -> Result<Word> {
    if cur.eat('1') {
        return Ok(Word::identity());
    }
    let mut factors = Vec::new();
    loop {
        let g = parse_gen(cur)?;
        let e = if cur.eat('^') { cur.int()? } else { 1 };
        factors.push((g, e));
        if !cur.eat('*') {
            break;
        }
    }
    Ok(Word::new(factors))
}
