//! Generators and the monoidal and duality constructions.

use crate::embedding::{find_isomorphism, Inclusion};
use crate::error::{Error, Result};
use crate::poset::{fresh_id, Complex, ComplexBuilder, Sign};
use crate::set::ElementSet;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet};

/// Id of the pair `(x, y)` in a Gray product.
pub fn pair_id(x: &str, y: &str) -> String {
    format!("({x},{y})")
}

/// Id of `x ⋆ y` in a join whose factors have no clashing ids.
pub fn join_id(x: &str, y: &str) -> String {
    format!("{x}⋆{y}")
}

/// A pushout together with both legs into it.
#[derive(Debug, Clone)]
pub struct Pushout {
    pub complex: Complex,
    pub left: Inclusion,
    pub right: Inclusion,
}

/// Pushout of `i1: q ↪ p1` and `i2: q ↪ p2`.
///
/// Identified elements keep their names from `p1`; other names from `p2`
/// are primed until they no longer clash.
pub fn pushout(
    q: &Complex,
    p1: &Complex,
    i1: &Inclusion,
    p2: &Complex,
    i2: &Inclusion,
) -> Result<Pushout> {
    i1.check(q, p1)?;
    i2.check(q, p2)?;
    let mut names: Vec<String> = vec![String::new(); p2.len()];
    let mut glued = vec![false; p2.len()];
    for z in 0..q.len() {
        names[i2.apply(z)] = p1.id(i1.apply(z)).to_string();
        glued[i2.apply(z)] = true;
    }
    let mut taken: HashSet<String> = p1.ids().iter().cloned().collect();
    let mut b = p1.to_builder();
    for y in 0..p2.len() {
        if !glued[y] {
            names[y] = fresh_id(p2.id(y), &taken);
            taken.insert(names[y].clone());
            b.element(names[y].clone(), p2.dim(y));
        }
    }
    for (u, l, s) in p2.covers() {
        if !(glued[u] && glued[l]) {
            b.cover(names[u].clone(), names[l].clone(), s);
        }
    }
    let complex = b.build()?;
    let left = Inclusion::by_ids(p1, &complex)?;
    let right = Inclusion {
        map: (0..p2.len())
            .map(|y| complex.index(&names[y]))
            .collect::<Result<_>>()?,
    };
    right.check(p2, &complex)?;
    Ok(Pushout {
        complex,
        left,
        right,
    })
}

/// Glues `p2` onto `p1` along closed subsets whose restrictions are isomorphic.
pub fn glue(p1: &Complex, part1: &ElementSet, p2: &Complex, part2: &ElementSet) -> Result<Pushout> {
    let (q, back1) = p1.restrict(part1)?;
    let (q2, back2) = p2.restrict(part2)?;
    let iso = find_isomorphism(&q, &q2)?
        .ok_or_else(|| Error::BoundaryMismatch("gluing regions are not isomorphic".into()))?;
    let i1 = Inclusion { map: back1 };
    let i2 = Inclusion {
        map: iso.map.iter().map(|&z| back2[z]).collect(),
    };
    pushout(&q, p1, &i1, p2, &i2)
}

/// `p + q`; clashing ids from `q` are primed.
pub fn disjoint_union(p: &Complex, q: &Complex) -> Result<Complex> {
    let empty = Complex::empty();
    let none = Inclusion { map: Vec::new() };
    Ok(pushout(&empty, p, &none, q, &none)?.complex)
}

/// `U #ₖ V` for standalone complexes, glued along `∂ₖ⁺U ≅ ∂ₖ⁻V`.
pub fn paste(u: &Complex, k: usize, v: &Complex) -> Result<Pushout> {
    let out = u.boundary(&u.all(), Sign::Plus, k as isize);
    let inp = v.boundary(&v.all(), Sign::Minus, k as isize);
    glue(u, &out, v, &inp)
}

/// `ΣP`: two new points `⊥⁻`, `⊥⁺` below every old point.
pub fn suspension(p: &Complex) -> Result<Complex> {
    let taken: HashSet<String> = p.ids().iter().cloned().collect();
    let lo = fresh_id("⊥-", &taken);
    let hi = fresh_id("⊥+", &taken);
    let mut b = ComplexBuilder::new();
    b.element(lo.clone(), 0).element(hi.clone(), 0);
    for x in 0..p.len() {
        b.element(p.id(x), p.dim(x) + 1);
    }
    for (u, l, s) in p.covers() {
        b.cover(p.id(u), p.id(l), s);
    }
    for x in p.elements_of_dim(0) {
        b.cover(p.id(x), lo.clone(), Sign::Minus)
            .cover(p.id(x), hi.clone(), Sign::Plus);
    }
    b.build()
}

/// `P_⊥` as a complex: a new point below everything, all dimensions raised by one.
pub fn with_bottom(p: &Complex) -> Result<(Complex, String)> {
    let taken: HashSet<String> = p.ids().iter().cloned().collect();
    let bot = fresh_id("⊥", &taken);
    let mut b = ComplexBuilder::new();
    b.element(bot.clone(), 0);
    for x in 0..p.len() {
        b.element(p.id(x), p.dim(x) + 1);
    }
    for (u, l, s) in p.covers() {
        b.cover(p.id(u), p.id(l), s);
    }
    for x in p.elements_of_dim(0) {
        b.cover(p.id(x), bot.clone(), Sign::Plus);
    }
    Ok((b.build()?, bot))
}

/// The lax Gray product `P ⊗ Q`.
pub fn gray_product(p: &Complex, q: &Complex) -> Result<Complex> {
    let mut b = ComplexBuilder::new();
    for x in 0..p.len() {
        for y in 0..q.len() {
            b.element(pair_id(p.id(x), q.id(y)), p.dim(x) + q.dim(y));
        }
    }
    for x in 0..p.len() {
        for y in 0..q.len() {
            let here = pair_id(p.id(x), q.id(y));
            for &(x2, s) in p.faces(x) {
                b.cover(here.clone(), pair_id(p.id(x2), q.id(y)), s);
            }
            let twist = Sign::parity(p.dim(x));
            for &(y2, s) in q.faces(y) {
                b.cover(here.clone(), pair_id(p.id(x), q.id(y2)), s.times(twist));
            }
        }
    }
    b.build()
}

/// The join `P ⋆ Q`, computed as `P_⊥ ⊗ Q_⊥` without its bottom.
///
/// Ids: elements of `P` keep theirs, elements of `Q` are primed on clashes,
/// and pairs are named `x⋆y`.
pub fn join(p: &Complex, q: &Complex) -> Result<Complex> {
    let mut taken: HashSet<String> = p.ids().iter().cloned().collect();
    let qn: Vec<String> = (0..q.len())
        .map(|y| {
            let n = fresh_id(q.id(y), &taken);
            taken.insert(n.clone());
            n
        })
        .collect();
    let mut pair = vec![vec![String::new(); q.len()]; p.len()];
    for (x, row) in pair.iter_mut().enumerate() {
        for (y, slot) in row.iter_mut().enumerate() {
            *slot = fresh_id(&join_id(p.id(x), &qn[y]), &taken);
            taken.insert(slot.clone());
        }
    }
    let mut b = ComplexBuilder::new();
    for x in 0..p.len() {
        b.element(p.id(x), p.dim(x));
    }
    for y in 0..q.len() {
        b.element(qn[y].clone(), q.dim(y));
    }
    for x in 0..p.len() {
        for y in 0..q.len() {
            b.element(pair[x][y].clone(), p.dim(x) + q.dim(y) + 1);
        }
    }
    for (u, l, s) in p.covers() {
        b.cover(p.id(u), p.id(l), s);
    }
    for (u, l, s) in q.covers() {
        b.cover(qn[u].clone(), qn[l].clone(), s);
    }
    for x in 0..p.len() {
        // dimension of x inside P_⊥
        let twist = Sign::parity(p.dim(x) + 1);
        for y in 0..q.len() {
            let here = pair[x][y].clone();
            if p.faces(x).is_empty() {
                b.cover(here.clone(), qn[y].clone(), Sign::Plus);
            }
            for &(x2, s) in p.faces(x) {
                b.cover(here.clone(), pair[x2][y].clone(), s);
            }
            if q.faces(y).is_empty() {
                b.cover(here.clone(), p.id(x), twist);
            }
            for &(y2, s) in q.faces(y) {
                b.cover(here.clone(), pair[x][y2].clone(), s.times(twist));
            }
        }
    }
    b.build()
}

/// Dimensions at which a dual flips signs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum DualitySet {
    All,
    Odd,
    Even,
    Explicit(BTreeSet<usize>),
}

impl DualitySet {
    /// Whether covers whose upper element has dimension `d` are flipped.
    pub fn contains(&self, d: usize) -> bool {
        match self {
            DualitySet::All => d > 0,
            DualitySet::Odd => d % 2 == 1,
            DualitySet::Even => d > 0 && d.is_multiple_of(2),
            DualitySet::Explicit(s) => s.contains(&d),
        }
    }

    /// The explicit set of dimensions up to `top`.
    pub fn expand(&self, top: usize) -> BTreeSet<usize> {
        (1..=top).filter(|&d| self.contains(d)).collect()
    }
}

/// Flips the sign of every cover whose upper element has dimension in `j`.
pub fn j_dual(p: &Complex, j: &DualitySet) -> Result<Complex> {
    let mut b = ComplexBuilder::new();
    for x in 0..p.len() {
        b.element(p.id(x), p.dim(x));
    }
    for (u, l, s) in p.covers() {
        let s = if j.contains(p.dim(u)) { s.flip() } else { s };
        b.cover(p.id(u), p.id(l), s);
    }
    b.build()
}

pub fn opp(p: &Complex) -> Result<Complex> {
    j_dual(p, &DualitySet::Odd)
}

pub fn coo(p: &Complex) -> Result<Complex> {
    j_dual(p, &DualitySet::Even)
}

pub fn oppall(p: &Complex) -> Result<Complex> {
    j_dual(p, &DualitySet::All)
}

/// Named generator shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Generator {
    Point,
    Globe(usize),
    Path(usize),
    Atom2(usize, usize),
    Cube(usize),
    Simplex(usize),
}

impl Generator {
    pub fn build(self) -> Result<Complex> {
        match self {
            Generator::Point => {
                let mut b = ComplexBuilder::new();
                b.element("pt", 0);
                b.build()
            }
            Generator::Globe(n) => globe(n),
            Generator::Path(k) => path(k),
            Generator::Atom2(n, m) => atom2(n, m),
            Generator::Cube(n) => cube(n),
            Generator::Simplex(n) => simplex(n),
        }
    }
}

/// `Oⁿ` with ids `k-`, `k+` for `k < n` and `n` for the top.
fn globe(n: usize) -> Result<Complex> {
    let mut b = ComplexBuilder::new();
    for k in 0..n {
        b.element(format!("{k}-"), k).element(format!("{k}+"), k);
    }
    b.element(n.to_string(), n);
    for k in 1..=n {
        let uppers = if k == n {
            vec![n.to_string()]
        } else {
            vec![format!("{k}-"), format!("{k}+")]
        };
        for u in uppers {
            b.cover(u.clone(), format!("{}-", k - 1), Sign::Minus);
            b.cover(u, format!("{}+", k - 1), Sign::Plus);
        }
    }
    b.build()
}

/// A path of `k` edges `e1…ek` through vertices `v0…vk`.
fn path(k: usize) -> Result<Complex> {
    if k == 0 {
        return Err(Error::BadParams("a path needs at least one edge".into()));
    }
    let mut b = ComplexBuilder::new();
    for i in 0..=k {
        b.element(format!("v{i}"), 0);
    }
    for i in 1..=k {
        let e = format!("e{i}");
        b.element(e.clone(), 1);
        b.cover(e.clone(), format!("v{}", i - 1), Sign::Minus);
        b.cover(e, format!("v{i}"), Sign::Plus);
    }
    b.build()
}

/// The 2-atom with an input path of `n` edges `i1…` and an output path of `m` edges `o1…`
/// from `s` to `t`; the top is `x`.
fn atom2(n: usize, m: usize) -> Result<Complex> {
    if n == 0 || m == 0 {
        return Err(Error::BadParams(
            "2-atoms need nonempty input and output paths".into(),
        ));
    }
    let mut b = ComplexBuilder::new();
    b.element("s", 0).element("t", 0).element("x", 2);
    for (len, edge, vert, sign) in [(n, "i", "a", Sign::Minus), (m, "o", "b", Sign::Plus)] {
        let vertex = |j: usize| match j {
            0 => "s".to_string(),
            j if j == len => "t".to_string(),
            j => format!("{vert}{j}"),
        };
        for j in 1..len {
            b.element(vertex(j), 0);
        }
        for j in 1..=len {
            let e = format!("{edge}{j}");
            b.element(e.clone(), 1);
            b.cover(e.clone(), vertex(j - 1), Sign::Minus);
            b.cover(e.clone(), vertex(j), Sign::Plus);
            b.cover("x", e, sign);
        }
    }
    b.build()
}

/// `Kⁿ`; each element is a word over `-`, `+`, `e` giving its factor in `O¹`.
fn cube(n: usize) -> Result<Complex> {
    if n == 0 {
        return Generator::Point.build();
    }
    let mut words: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..n {
        words = words
            .into_iter()
            .flat_map(|w| {
                b"-+e".iter().copied().map(move |ch| {
                    let mut w2 = w.clone();
                    w2.push(ch);
                    w2
                })
            })
            .collect();
    }
    let name = |w: &[u8]| String::from_utf8(w.to_vec()).unwrap();
    let mut b = ComplexBuilder::new();
    for w in &words {
        b.element(name(w), w.iter().filter(|&&c| c == b'e').count());
    }
    for w in &words {
        let mut before = 0;
        for i in 0..n {
            if w[i] == b'e' {
                let twist = Sign::parity(before);
                for (ch, s) in [(b'-', Sign::Minus), (b'+', Sign::Plus)] {
                    let mut f = w.clone();
                    f[i] = ch;
                    b.cover(name(w), name(&f), s.times(twist));
                }
                before += 1;
            }
        }
    }
    b.build()
}

/// `Δⁿ` as the join of the points `0`, …, `n`.
fn simplex(n: usize) -> Result<Complex> {
    let point = |i: usize| {
        let mut b = ComplexBuilder::new();
        b.element(i.to_string(), 0);
        b.build()
    };
    let mut acc = point(0)?;
    for i in 1..=n {
        acc = join(&acc, &point(i)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::are_isomorphic;
    use crate::fixtures;

    #[test]
    fn generator_sizes() {
        for n in 0..=5 {
            assert_eq!(Generator::Globe(n).build().unwrap().len(), 2 * n + 1);
        }
        for k in 1..=4 {
            assert_eq!(Generator::Path(k).build().unwrap().len(), 2 * k + 1);
        }
        for n in 0..=4 {
            assert_eq!(
                Generator::Cube(n).build().unwrap().len(),
                3usize.pow(n as u32)
            );
            assert_eq!(
                Generator::Simplex(n).build().unwrap().len(),
                (1 << (n + 1)) - 1
            );
        }
        assert_eq!(Generator::Atom2(2, 3).build().unwrap().len(), 11);
        assert!(Generator::Path(0).build().is_err());
        assert!(Generator::Atom2(0, 1).build().is_err());
    }

    #[test]
    fn cube_is_gray_square_of_interval() {
        let i = fixtures::globe(1);
        let k2 = gray_product(&i, &i).unwrap();
        assert!(are_isomorphic(&k2, &fixtures::cube(2)).unwrap());
    }

    #[test]
    fn simplex_is_join_of_interval_and_point() {
        let d2 = join(&fixtures::globe(1), &fixtures::point()).unwrap();
        assert_eq!(d2.len(), 7);
        assert!(are_isomorphic(&d2, &fixtures::simplex(2)).unwrap());
    }

    #[test]
    fn join_of_points_is_interval() {
        let p = fixtures::point();
        let j = join(&p, &p).unwrap();
        assert!(are_isomorphic(&j, &fixtures::globe(1)).unwrap());
    }

    #[test]
    fn suspension_of_globe() {
        for n in 1..=4 {
            let s = suspension(&fixtures::globe(n - 1)).unwrap();
            assert!(are_isomorphic(&s, &fixtures::globe(n)).unwrap());
        }
        assert_eq!(suspension(&fixtures::path(2)).unwrap().len(), 7);
        assert_eq!(suspension(&Complex::empty()).unwrap().len(), 2);
    }

    #[test]
    fn pushout_of_edges_is_path() {
        let e = fixtures::globe(1);
        let end = e.set_of_ids(&["0+"]).unwrap();
        let start = e.set_of_ids(&["0-"]).unwrap();
        let p = glue(&e, &end, &e, &start).unwrap();
        assert!(are_isomorphic(&p.complex, &fixtures::path(2)).unwrap());
    }

    #[test]
    fn pushout_along_nothing_is_disjoint_union() {
        let p = fixtures::point();
        let u = disjoint_union(&p, &p).unwrap();
        assert_eq!(u.len(), 2);
        assert_eq!(u.ids(), &["pt".to_string(), "pt'".to_string()]);
    }

    #[test]
    fn gray_unit() {
        let k = fixtures::cube(2);
        assert!(are_isomorphic(&gray_product(&fixtures::point(), &k).unwrap(), &k).unwrap());
        assert!(are_isomorphic(&gray_product(&k, &fixtures::point()).unwrap(), &k).unwrap());
    }

    #[test]
    fn duals_are_involutive() {
        let c = fixtures::simplex(3);
        for j in [
            DualitySet::All,
            DualitySet::Odd,
            DualitySet::Even,
            DualitySet::Explicit([2].into()),
        ] {
            assert_eq!(j_dual(&j_dual(&c, &j).unwrap(), &j).unwrap(), c);
        }
        assert_eq!(DualitySet::Odd.expand(4), [1, 3].into());
    }

    #[test]
    fn pushout_rejects_bad_leg() {
        let e = fixtures::globe(1);
        let p = fixtures::point();
        let bad = Inclusion { map: vec![2] };
        let ok = Inclusion { map: vec![0] };
        assert!(matches!(
            pushout(&p, &e, &bad, &e, &ok),
            Err(Error::NotAnInclusion(_))
        ));
    }
}
