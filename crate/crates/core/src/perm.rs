//! Permutations of the points `0..degree`.
//!
//! Composition follows the right-to-left functional convention:
//! `p.compose(&q)` is the permutation `x -> p(q(x))`, so `q` is applied
//! first. Group multiplication everywhere in this crate is `compose`, which
//! makes the left regular representation a homomorphism:
//! `λ(g)∘λ(h) = λ(gh)`.
//!
//! Under this convention `(0 1 2)∘(0 1) = (0 2)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A bijection on `0..degree`, stored as its image sequence.
///
/// The derived ordering is lexicographic on the image sequence, which is the
/// canonical element order used by [`Group`](crate::group::Group).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image sequence, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            let i = img as usize;
            if i >= n || seen[i] {
                return Err(Error::NotABijection(images));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles on `degree` points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &pt) in cycle.iter().enumerate() {
                let p = pt as usize;
                if p >= degree {
                    return Err(Error::PointOutOfRange { point: p, degree });
                }
                if touched[p] {
                    return Err(Error::CycleNotation(format!(
                        "point {p} appears twice"
                    )));
                }
                touched[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other
                .images
                .iter()
                .map(|&x| self.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// Disjoint cycles of length ≥ 2, each starting at its smallest point,
    /// ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut cur = self.images[start] as usize;
            while cur != start {
                seen[cur] = true;
                cycle.push(cur as u32);
                cur = self.images[cur] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Multiplicative order (lcm of cycle lengths).
    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .fold(1usize, |acc, c| lcm(acc, c.len()))
    }

    /// Parses cycle notation such as `"(0 1 2)(3 4)"` into a permutation on
    /// `degree` points. `"()"` is the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let cycles = parse_cycle_list(text)?;
        Permutation::from_cycles(degree, &cycles)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn parse_cycle_list(text: &str) -> Result<Vec<Vec<u32>>> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(Error::CycleNotation("empty input".into()));
    }
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::CycleNotation(format!("expected '(' at {rest:?}")))?;
        let close = body
            .find(')')
            .ok_or_else(|| Error::CycleNotation("unclosed cycle".into()))?;
        let points = body[..close]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<u32>()
                    .map_err(|_| Error::CycleNotation(format!("bad point {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if points.len() > 1 {
            cycles.push(points);
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(cycles)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses cycle notation with the degree inferred from the largest point.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cycles = parse_cycle_list(s)?;
        let degree = cycles
            .iter()
            .flatten()
            .map(|&p| p as usize + 1)
            .max()
            .unwrap_or(1);
        Permutation::from_cycles(degree, &cycles)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn compose_convention() {
        // apply (0 1) first: 0->1->2, 1->0->1, 2->2->0
        let r = p("(0 1 2)", 3).compose(&p("(0 1)", 3)).unwrap();
        assert_eq!(r.images(), &[2, 1, 0]);
        assert_eq!(r.to_string(), "(0 2)");
    }

    #[test]
    fn identity_and_inverse() {
        let x = p("(0 3 1)(2 4)", 5);
        let id = Permutation::identity(5);
        assert_eq!(id.compose(&x).unwrap(), x);
        assert!(x.compose(&x.inverse()).unwrap().is_identity());
        assert_eq!(id.to_string(), "()");
        assert_eq!(x.order(), 6);
    }

    #[test]
    fn degree_mismatch() {
        let e = p("(0 1)", 2).compose(&p("(0 1)", 3));
        assert!(matches!(e, Err(Error::DegreeMismatch(2, 3))));
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![2, 0, 1]).is_ok());
        assert!(Permutation::parse_cycles("(0 1)(1 2)", 3).is_err());
        assert!(Permutation::parse_cycles("(0 5)", 3).is_err());
        assert!(Permutation::parse_cycles("(0 1", 3).is_err());
    }

    #[test]
    fn display_roundtrip() {
        let x: Permutation = "(1 4)(0 2 3)".parse().unwrap();
        assert_eq!(x.to_string(), "(0 2 3)(1 4)");
        assert_eq!(Permutation::parse_cycles(&x.to_string(), 5).unwrap(), x);
    }
}
