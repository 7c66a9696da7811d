//! Named groups and group-forming combinators.
//!
//! Generator lists are part of each constructor's contract because
//! semidirect actions refer to generators by position:
//!
//! | constructor            | generators                         | degree  |
//! |------------------------|------------------------------------|---------|
//! | `cyclic(n)`            | `[a]`, an n-cycle                  | n       |
//! | `dihedral(n)`          | `[rotation, reflection]`           | n (4 for n = 2) |
//! | `dicyclic(n)`          | `[a, b]`, `a^2n = 1, b² = aⁿ`      | 4n      |
//! | `symmetric(n)`         | `[n-cycle, (0 1)]`                 | n       |
//! | `alternating(n)`       | `[(0 1 2), (0 1 3), ...]`          | n       |
//! | `elementary_abelian`   | one p-cycle per factor             | p·k     |
//! | `direct_product(a, b)` | gens of `a`, then gens of `b`      | sum     |
//! | `semidirect_product`   | gens of the normal part, then gens of the acting group | order |

use crate::arith::{factorial, is_prime};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;
use crate::presentation::{Presentation, Word};

/// A word in a group's generators: `(generator index, exponent)` factors.
pub type GeneratorWord = Word;

fn param(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}

fn cycle_perm(degree: usize, points: impl IntoIterator<Item = usize>) -> Permutation {
    let cycle: Vec<u32> = points.into_iter().map(|p| p as u32).collect();
    Permutation::from_cycles(degree, &[cycle]).expect("valid cycle")
}

/// Left regular representation of an abstract group given by its
/// multiplication on `0..order`, with `0` as identity.
pub fn regular_representation(
    order: usize,
    gens: &[usize],
    mul: impl Fn(usize, usize) -> usize,
) -> Result<Group> {
    let perms = gens
        .iter()
        .map(|&g| Permutation::from_images((0..order).map(|x| mul(g, x) as u32).collect()))
        .collect::<Result<Vec<_>>>()?;
    Group::generate(order.max(1), perms, order.max(1))
}

/// Rebuilds `g` in its left regular representation, keeping generator order.
pub fn regular_of(g: &Group) -> Group {
    regular_representation(g.order(), g.generator_indices(), |a, b| g.mul(a, b))
        .expect("regular representation of a valid group")
}

pub fn cyclic(n: usize) -> Result<Group> {
    param(n >= 1, || format!("cyclic order must be ≥ 1, got {n}"))?;
    if n == 1 {
        return Ok(Group::trivial());
    }
    Group::generate(n, vec![cycle_perm(n, 0..n)], n)
}

/// Dihedral group of order `2n`, acting on the vertices of an n-gon.
/// `n = 2` gives the Klein four-group on 4 points.
pub fn dihedral(n: usize) -> Result<Group> {
    param(n >= 2, || format!("dihedral parameter must be ≥ 2, got {n}"))?;
    if n == 2 {
        let a = Permutation::parse_cycles("(0 1)(2 3)", 4)?;
        let b = Permutation::parse_cycles("(0 2)(1 3)", 4)?;
        return Group::generate(4, vec![a, b], 4);
    }
    let rot = cycle_perm(n, 0..n);
    let refl = Permutation::from_images((0..n).map(|i| ((n - i) % n) as u32).collect())?;
    Group::generate(n, vec![rot, refl], 2 * n)
}

/// Dicyclic (generalized quaternion for 2-power n) group of order `4n`,
/// realized regularly. Elements `a^i b^j` are encoded as `2i + j`.
pub fn dicyclic(n: usize) -> Result<Group> {
    param(n >= 2, || format!("dicyclic parameter must be ≥ 2, got {n}"))?;
    let m = 2 * n;
    let mul = |x: usize, y: usize| {
        let (i1, j1) = (x / 2, x % 2);
        let (i2, j2) = (y / 2, y % 2);
        if j1 == 0 {
            2 * ((i1 + i2) % m) + j2
        } else {
            // a^i1 b a^i2 b^j2 = a^(i1 - i2) b^(1 + j2), with b² = aⁿ
            let i = (i1 + m - i2) % m;
            if j2 == 0 {
                2 * i + 1
            } else {
                2 * ((i + n) % m)
            }
        }
    };
    regular_representation(4 * n, &[2, 1], mul)
}

pub fn symmetric(n: usize) -> Result<Group> {
    param(n >= 1, || format!("symmetric degree must be ≥ 1, got {n}"))?;
    let order = factorial(n).ok_or(Error::CapExceeded { cap: usize::MAX })?;
    let gens = match n {
        1 => vec![],
        2 => vec![cycle_perm(2, 0..2)],
        _ => vec![cycle_perm(n, 0..n), cycle_perm(n, 0..2)],
    };
    Group::generate(n, gens, order)
}

pub fn alternating(n: usize) -> Result<Group> {
    param(n >= 1, || format!("alternating degree must be ≥ 1, got {n}"))?;
    let order = if n <= 2 {
        1
    } else {
        factorial(n).ok_or(Error::CapExceeded { cap: usize::MAX })? / 2
    };
    let gens = (2..n).map(|i| cycle_perm(n, [0, 1, i])).collect();
    Group::generate(n, gens, order)
}

pub fn elementary_abelian(p: usize, k: usize) -> Result<Group> {
    param(is_prime(p), || format!("{p} is not prime"))?;
    param(k >= 1, || format!("rank must be ≥ 1, got {k}"))?;
    let order = p.checked_pow(k as u32).ok_or(Error::CapExceeded { cap: usize::MAX })?;
    let degree = p * k;
    let gens = (0..k).map(|b| cycle_perm(degree, b * p..(b + 1) * p)).collect();
    Group::generate(degree, gens, order)
}

/// Acts with `a` on the first `deg(a)` points and `b` on the rest.
pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
    let (da, db) = (a.degree(), b.degree());
    let degree = da + db;
    let shift_a = |p: &Permutation| {
        let mut img: Vec<u32> = p.images().to_vec();
        img.extend(da as u32..degree as u32);
        Permutation::from_images(img)
    };
    let shift_b = |p: &Permutation| {
        let mut img: Vec<u32> = (0..da as u32).collect();
        img.extend(p.images().iter().map(|&x| x + da as u32));
        Permutation::from_images(img)
    };
    let mut gens = a.generators().iter().map(shift_a).collect::<Result<Vec<_>>>()?;
    gens.extend(b.generators().iter().map(shift_b).collect::<Result<Vec<_>>>()?);
    Group::generate(degree, gens, a.order() * b.order())
}

/// Extends `gens[i] -> images[i]` to the subgroup the `gens` generate by
/// walking a breadth-first spanning tree, checking every non-tree edge.
/// Elements outside that subgroup map to `usize::MAX`. Returns `None` if the
/// assignment does not define a homomorphism.
pub(crate) fn extend_homomorphism(
    source: &Group,
    gens: &[usize],
    images: &[usize],
    target_mul: impl Fn(usize, usize) -> usize,
    target_identity: usize,
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; source.order()];
    map[source.identity()] = target_identity;
    let mut queue = std::collections::VecDeque::from([source.identity()]);
    while let Some(x) = queue.pop_front() {
        for (i, &g) in gens.iter().enumerate() {
            let y = source.mul(x, g);
            let img = target_mul(map[x], images[i]);
            if map[y] == usize::MAX {
                map[y] = img;
                queue.push_back(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    Some(map)
}

/// `N ⋊ H` realized in its left regular representation.
///
/// `action[j][i]` is the image of the `i`-th generator of `normal` under the
/// automorphism assigned to the `j`-th generator of `acting`. Elements
/// multiply as `(n₁,h₁)(n₂,h₂) = (n₁·α_{h₁}(n₂), h₁h₂)`.
pub fn semidirect_product(
    normal: &Group,
    acting: &Group,
    action: &[Vec<GeneratorWord>],
) -> Result<Group> {
    let ng = normal.generators().len();
    if action.len() != acting.generators().len() {
        return Err(Error::InvalidAction(format!(
            "{} action blocks for {} acting generators",
            action.len(),
            acting.generators().len()
        )));
    }
    let nn = normal.order();
    let mut autos: Vec<Vec<usize>> = Vec::with_capacity(action.len());
    for (j, block) in action.iter().enumerate() {
        if block.len() != ng {
            return Err(Error::InvalidAction(format!(
                "block {j} gives {} images for {ng} generators",
                block.len()
            )));
        }
        let images = block
            .iter()
            .map(|w| w.evaluate(normal))
            .collect::<Result<Vec<_>>>()?;
        let map = extend_homomorphism(
            normal,
            normal.generator_indices(),
            &images, |a, b| normal.mul(a, b), normal.identity())
            .ok_or_else(|| {
                Error::InvalidAction(format!(
                    "block {j} does not extend to a homomorphism of the normal part"
                ))
            })?;
        let mut hit = vec![false; nn];
        for &v in &map {
            if std::mem::replace(&mut hit[v], true) {
                return Err(Error::InvalidAction(format!(
                    "block {j} is not bijective on the normal part"
                )));
            }
        }
        autos.push(map);
    }

    // θ: H → Aut(N) with θ(h·g_j) = θ(h)∘α_j, checked on every edge.
    let nh = acting.order();
    let mut theta: Vec<Option<Vec<usize>>> = vec![None; nh];
    theta[acting.identity()] = Some((0..nn).collect());
    let mut queue = std::collections::VecDeque::from([acting.identity()]);
    while let Some(h) = queue.pop_front() {
        for (j, &g) in acting.generator_indices().iter().enumerate() {
            let y = acting.mul(h, g);
            let th = theta[h].as_ref().expect("visited");
            let composed: Vec<usize> = autos[j].iter().map(|&v| th[v]).collect();
            match &theta[y] {
                None => {
                    theta[y] = Some(composed);
                    queue.push_back(y);
                }
                Some(existing) if *existing != composed => {
                    return Err(Error::InvalidAction(
                        "assignment does not respect the relations of the acting group".into(),
                    ));
                }
                Some(_) => {}
            }
        }
    }
    let theta: Vec<Vec<usize>> = theta.into_iter().map(|t| t.expect("connected")).collect();

    let order = nn * nh;
    let mul = |x: usize, y: usize| {
        let (n1, h1) = (x / nh, x % nh);
        let (n2, h2) = (y / nh, y % nh);
        normal.mul(n1, theta[h1][n2]) * nh + acting.mul(h1, h2)
    };
    let mut gens: Vec<usize> = normal
        .generator_indices()
        .iter()
        .map(|&n| n * nh + acting.identity())
        .collect();
    gens.extend(
        acting
            .generator_indices()
            .iter()
            .map(|&h| normal.identity() * nh + h),
    );
    regular_representation(order, &gens, mul)
}

/// `⟨x, y | x⁴ = y⁵ = 1, x⁻¹yx = y²⟩`
pub const V_PRESENTATION: &str = "<x, y | x^4 = y^5 = 1, x^-1 y x = y^2>";

/// `⟨x, y, z | x³ = y⁴ = 1, y² = z², z⁻¹yz = y⁻¹, x⁻¹yx = y⁻¹z⁻¹, x⁻¹zx = y⁻¹⟩`
pub const U_PRESENTATION: &str = "<x, y, z | x^3 = y^4 = 1, y^2 = z^2, z^-1 y z = y^-1, \
     x^-1 y x = y^-1 z^-1, x^-1 z x = y^-1>";

pub const DIHEDRAL_8_PRESENTATION: &str = "<a, b | a^4 = b^2 = 1, b^-1 a b = a^-1>";

/// The Frobenius group `Z5 ⋊ Z4`, generator of `Z4` acting by `y ↦ y²`.
pub fn smallgroup_20_3() -> Group {
    let word = Word::new(vec![(0, 2)]);
    semidirect_product(&cyclic(5).unwrap(), &cyclic(4).unwrap(), &[vec![word]])
        .expect("Z5 ⋊ Z4")
}

/// `Q8 ⋊ Z3`, the order-3 automorphism cycling `a → b → ab`.
pub fn smallgroup_24_3() -> Group {
    let to_b = Word::new(vec![(1, 1)]);
    let to_ab = Word::new(vec![(0, 1), (1, 1)]);
    semidirect_product(&dicyclic(2).unwrap(), &cyclic(3).unwrap(), &[vec![to_b, to_ab]])
        .expect("Q8 ⋊ Z3")
}

pub fn v_presentation() -> Presentation {
    V_PRESENTATION.parse().expect("V presentation")
}

pub fn u_presentation() -> Presentation {
    U_PRESENTATION.parse().expect("U presentation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::satisfies_presentation;

    fn order_histogram(g: &Group) -> Vec<usize> {
        let mut v = g.element_orders().to_vec();
        v.sort();
        v
    }

    #[test]
    fn cyclic_groups() {
        assert_eq!(cyclic(1).unwrap().order(), 1);
        let c6 = cyclic(6).unwrap();
        assert!(c6.is_abelian());
        assert_eq!(order_histogram(&c6), vec![1, 2, 3, 3, 6, 6]);
        let c5 = cyclic(5).unwrap();
        assert!(c5.element_orders().iter().skip(1).all(|&o| o == 5));
        assert!(cyclic(0).is_err());
    }

    #[test]
    fn dihedral_groups() {
        let d8 = dihedral(4).unwrap();
        assert_eq!(d8.order(), 8);
        assert_eq!(d8.center().order(), 2);
        assert_eq!(dihedral(5).unwrap().conjugacy_classes().len(), 4);
        assert_eq!(order_histogram(&dihedral(2).unwrap()), vec![1, 2, 2, 2]);
        assert!(dihedral(1).is_err());
        let pres: Presentation = DIHEDRAL_8_PRESENTATION.parse().unwrap();
        assert!(satisfies_presentation(&d8, &pres).unwrap().is_some());
    }

    #[test]
    fn dicyclic_groups() {
        let q8 = dicyclic(2).unwrap();
        assert_eq!(order_histogram(&q8), vec![1, 2, 4, 4, 4, 4, 4, 4]);
        let q12 = dicyclic(3).unwrap();
        assert_eq!(q12.order(), 12);
        assert_eq!(q12.conjugacy_classes().len(), 6);
        assert!(dicyclic(1).is_err());
    }

    #[test]
    fn symmetric_alternating() {
        assert_eq!(symmetric(3).unwrap().order(), 6);
        assert_eq!(symmetric(1).unwrap().order(), 1);
        assert_eq!(symmetric(2).unwrap().order(), 2);
        assert_eq!(alternating(4).unwrap().order(), 12);
        assert_eq!(alternating(2).unwrap().order(), 1);
        let s4 = symmetric(4).unwrap();
        let a4 = alternating(4).unwrap();
        let d = s4.derived_subgroup();
        let as_set: Vec<&Permutation> = d.elements().map(|i| s4.element(i)).collect();
        assert_eq!(as_set, a4.elements().iter().collect::<Vec<_>>());
    }

    #[test]
    fn elementary_abelian_groups() {
        assert_eq!(elementary_abelian(2, 1).unwrap().order(), 2);
        let e9 = elementary_abelian(3, 2).unwrap();
        assert_eq!(e9.order(), 9);
        assert_eq!(e9.element_orders().iter().filter(|&&o| o == 3).count(), 8);
        assert!(elementary_abelian(4, 2).is_err());
        assert!(elementary_abelian(2, 0).is_err());
    }

    #[test]
    fn direct_products() {
        let g = direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap()).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.degree(), 5);
        assert!(g.is_abelian());
        let t = direct_product(&Group::trivial(), &dihedral(3).unwrap()).unwrap();
        assert_eq!(t.order(), 6);
    }

    #[test]
    fn semidirect_rejects_bad_actions() {
        let c5 = cyclic(5).unwrap();
        let c4 = cyclic(4).unwrap();
        // y -> y^0 is not injective
        let e = semidirect_product(&c5, &c4, &[vec![Word::new(vec![(0, 5)])]]);
        assert!(matches!(e, Err(Error::InvalidAction(_))));
        // y -> y^2 has order 4 in Aut(Z5); Z3 cannot act that way
        let c3 = cyclic(3).unwrap();
        let e = semidirect_product(&c5, &c3, &[vec![Word::new(vec![(0, 2)])]]);
        assert!(matches!(e, Err(Error::InvalidAction(_))));
        // Q8: a -> a^2 is not a homomorphism onto anything bijective
        let q8 = dicyclic(2).unwrap();
        let e = semidirect_product(
            &q8,
            &cyclic(2).unwrap(),
            &[vec![Word::new(vec![(0, 2)]), Word::new(vec![(1, 1)])]],
        );
        assert!(e.is_err());
        // wrong block shape
        assert!(semidirect_product(&c5, &c4, &[]).is_err());
    }

    #[test]
    fn named_small_groups() {
        let v = smallgroup_20_3();
        assert_eq!(v.order(), 20);
        assert!(v.center().is_trivial());
        let u = smallgroup_24_3();
        assert_eq!(u.order(), 24);
        assert_eq!(u.center().order(), 2);
        assert!(satisfies_presentation(&v, &v_presentation()).unwrap().is_some());
        assert!(satisfies_presentation(&u, &u_presentation()).unwrap().is_some());
    }

    #[test]
    fn q8_fails_dihedral_presentation() {
        let pres: Presentation = DIHEDRAL_8_PRESENTATION.parse().unwrap();
        assert!(satisfies_presentation(&dicyclic(2).unwrap(), &pres)
            .unwrap()
            .is_none());
    }
}
