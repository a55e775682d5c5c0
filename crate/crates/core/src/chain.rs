//! Augmented directed complexes: based integer chain complexes whose
//! positivity cones are spanned by the basis.

use crate::error::{Error, Result};
use crate::poset::Complex;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet};

/// Based augmented chain complex, concentrated in degrees `0..bases.len()`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugmentedDirectedComplex {
    /// Basis labels per degree.
    pub bases: Vec<Vec<String>>,
    /// `boundaries[n-1]` is `dₙ`, with `rank(n-1)` rows and `rank(n)` columns.
    pub boundaries: Vec<Vec<Vec<i64>>>,
    /// `e` on the degree-0 basis.
    pub augmentation: Vec<i64>,
}

/// Coefficient of basis element `row` of degree `n-1` in `d(col)`.
fn coeff(k: &AugmentedDirectedComplex, n: usize, row: usize, col: usize) -> i64 {
    k.boundaries[n - 1][row][col]
}

impl AugmentedDirectedComplex {
    /// The zero complex, unit of the join.
    pub fn zero() -> Self {
        AugmentedDirectedComplex {
            bases: Vec::new(),
            boundaries: Vec::new(),
            augmentation: Vec::new(),
        }
    }

    /// `ℤ` in degree 0 with identity augmentation, unit of the tensor product.
    pub fn unit() -> Self {
        AugmentedDirectedComplex {
            bases: vec![vec!["•".into()]],
            boundaries: Vec::new(),
            augmentation: vec![1],
        }
    }

    pub fn rank(&self, n: usize) -> usize {
        self.bases.get(n).map_or(0, Vec::len)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    /// Top degree plus one.
    pub fn degrees(&self) -> usize {
        self.bases.len()
    }

    /// `d` of a basis element as a sparse vector over the degree below.
    pub fn boundary_of(&self, n: usize, col: usize) -> Vec<(usize, i64)> {
        if n == 0 {
            return Vec::new();
        }
        (0..self.rank(n - 1))
            .filter_map(|r| Some((r, coeff(self, n, r, col))).filter(|p| p.1 != 0))
            .collect()
    }

    /// Matrix shapes, `dd = 0` and `ed = 0`.
    pub fn verify(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvariantViolated(m));
        if self.augmentation.len() != self.rank(0) {
            return bad("augmentation length differs from the degree-0 rank".into());
        }
        if self.boundaries.len() != self.degrees().saturating_sub(1) {
            return bad("one boundary matrix per positive degree expected".into());
        }
        for n in 1..self.degrees() {
            let m = &self.boundaries[n - 1];
            if m.len() != self.rank(n - 1) || m.iter().any(|row| row.len() != self.rank(n)) {
                return bad(format!("d{n} has the wrong shape"));
            }
        }
        if self.degrees() > 1 {
            for col in 0..self.rank(1) {
                let ed: i64 = (0..self.rank(0))
                    .map(|r| self.augmentation[r] * coeff(self, 1, r, col))
                    .sum();
                if ed != 0 {
                    return bad(format!("ed ≠ 0 on {}", self.bases[1][col]));
                }
            }
        }
        for n in 2..self.degrees() {
            for col in 0..self.rank(n) {
                for r in 0..self.rank(n - 2) {
                    let dd: i64 = (0..self.rank(n - 1))
                        .map(|m| coeff(self, n - 1, r, m) * coeff(self, n, m, col))
                        .sum();
                    if dd != 0 {
                        return bad(format!("dd ≠ 0 on {}", self.bases[n][col]));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.verify().is_ok()
    }

    fn from_parts(
        bases: Vec<Vec<String>>,
        columns: Vec<Vec<Vec<(usize, i64)>>>,
        augmentation: Vec<i64>,
    ) -> Self {
        let boundaries = (1..bases.len())
            .map(|n| {
                let mut m = vec![vec![0i64; bases[n].len()]; bases[n - 1].len()];
                for (col, entries) in columns[n].iter().enumerate() {
                    for &(r, v) in entries {
                        m[r][col] += v;
                    }
                }
                m
            })
            .collect();
        AugmentedDirectedComplex {
            bases,
            boundaries,
            augmentation,
        }
    }
}

/// `K P`: basis `P⁽ⁿ⁾`, `dx = ΣΔ⁺x − ΣΔ⁻x`, `ex = 1`.
pub fn adc_of(c: &Complex) -> Result<AugmentedDirectedComplex> {
    let top = (c.dimension() + 1) as usize;
    let mut pos = vec![0usize; c.len()];
    let mut bases: Vec<Vec<String>> = vec![Vec::new(); top];
    for x in 0..c.len() {
        let b = &mut bases[c.dim(x)];
        pos[x] = b.len();
        b.push(c.id(x).to_string());
    }
    let mut columns: Vec<Vec<Vec<(usize, i64)>>> =
        bases.iter().map(|b| vec![Vec::new(); b.len()]).collect();
    for (upper, lower, sign) in c.covers() {
        columns[c.dim(upper)][pos[upper]].push((pos[lower], sign.to_int()));
    }
    let augmentation = vec![1; bases.first().map_or(0, Vec::len)];
    let k = AugmentedDirectedComplex::from_parts(bases, columns, augmentation);
    k.verify()?;
    Ok(k)
}

/// `K ⊗ L` with `d(x⊗y) = dx⊗y + (−1)^|x| x⊗dy` and basis `x⊗y` labelled `(x,y)`.
pub fn adc_tensor(
    k: &AugmentedDirectedComplex,
    l: &AugmentedDirectedComplex,
) -> AugmentedDirectedComplex {
    if k.degrees() == 0 || l.degrees() == 0 {
        return AugmentedDirectedComplex::zero();
    }
    let top = k.degrees() + l.degrees() - 1;
    let mut bases = vec![Vec::new(); top];
    let mut place: HashMap<(usize, usize, usize, usize), usize> = HashMap::new();
    for (n, basis) in bases.iter_mut().enumerate() {
        for p in 0..=n {
            if p >= k.degrees() || n - p >= l.degrees() {
                continue;
            }
            for a in 0..k.rank(p) {
                for b in 0..l.rank(n - p) {
                    place.insert((p, a, n - p, b), basis.len());
                    basis.push(format!("({},{})", k.bases[p][a], l.bases[n - p][b]));
                }
            }
        }
    }
    let mut columns: Vec<Vec<Vec<(usize, i64)>>> =
        bases.iter().map(|b| vec![Vec::new(); b.len()]).collect();
    for (&(p, a, q, b), &i) in &place {
        let col = &mut columns[p + q][i];
        for (r, v) in k.boundary_of(p, a) {
            col.push((place[&(p - 1, r, q, b)], v));
        }
        let sign = if p % 2 == 0 { 1 } else { -1 };
        for (r, v) in l.boundary_of(q, b) {
            col.push((place[&(p, a, q - 1, r)], sign * v));
        }
    }
    let augmentation = (0..k.rank(0))
        .flat_map(|a| (0..l.rank(0)).map(move |b| (a, b)))
        .map(|(a, b)| k.augmentation[a] * l.augmentation[b])
        .collect();
    AugmentedDirectedComplex::from_parts(bases, columns, augmentation)
}

/// Label of the added degree-0 generator in a suspension.
pub const SUSPENSION_POINT: &str = "⊥";

/// `ΣK`: `ℤ` in degree 0, `K` shifted up, `e` becomes `d₁`, zero augmentation.
pub fn adc_suspension(k: &AugmentedDirectedComplex) -> AugmentedDirectedComplex {
    let mut bases = vec![vec![SUSPENSION_POINT.to_string()]];
    bases.extend(k.bases.iter().cloned());
    let mut boundaries = Vec::new();
    if k.degrees() > 0 {
        boundaries.push(vec![k.augmentation.clone()]);
    }
    boundaries.extend(k.boundaries.iter().cloned());
    AugmentedDirectedComplex {
        bases,
        boundaries,
        augmentation: vec![0],
    }
}

/// Inverse of suspension on complexes with a single degree-0 generator.
pub fn adc_desuspension(k: &AugmentedDirectedComplex) -> Result<AugmentedDirectedComplex> {
    if k.rank(0) != 1 {
        return Err(Error::PreconditionFailed(
            "de-suspension needs rank 1 in degree 0".into(),
        ));
    }
    let bases = k.bases[1..].to_vec();
    let augmentation = k.boundaries.first().map_or(Vec::new(), |d1| d1[0].clone());
    let boundaries = k.boundaries.iter().skip(1).cloned().collect();
    Ok(AugmentedDirectedComplex {
        bases,
        boundaries,
        augmentation,
    })
}

/// `K ⋆ L`, characterised by `Σ(K ⋆ L) ≅ ΣK ⊗ ΣL`.
///
/// Generators are labelled `x`, `y` and `x⋆y`; labels of `L` clashing with
/// labels of `K` get primes.
pub fn adc_join(
    k: &AugmentedDirectedComplex,
    l: &AugmentedDirectedComplex,
) -> AugmentedDirectedComplex {
    let mut j = adc_desuspension(&adc_tensor(&adc_suspension(k), &adc_suspension(l)))
        .expect("rank 1 in degree 0");
    let left: HashSet<&String> = k.bases.iter().flatten().collect();
    let mut rename: HashMap<String, String> = HashMap::new();
    let mut taken: HashSet<String> = left.iter().map(|s| s.to_string()).collect();
    for y in l.bases.iter().flatten() {
        let mut fresh = y.clone();
        while taken.contains(&fresh) {
            fresh.push('\'');
        }
        taken.insert(fresh.clone());
        rename.insert(y.clone(), fresh);
    }
    let bot = SUSPENSION_POINT;
    for basis in &mut j.bases {
        for label in basis.iter_mut() {
            let inner = &label[1..label.len() - 1];
            let (a, b) = split_pair(inner, k, l);
            *label = match (a == bot, b == bot) {
                (false, true) => a.to_string(),
                (true, false) => rename[b].clone(),
                _ => format!("{a}⋆{}", rename[b]),
            };
        }
    }
    j
}

/// Splits `a,b` where `a` is `⊥` or a label of `K`.
fn split_pair<'s>(
    inner: &'s str,
    k: &AugmentedDirectedComplex,
    l: &AugmentedDirectedComplex,
) -> (&'s str, &'s str) {
    let lefts =
        std::iter::once(SUSPENSION_POINT.to_string()).chain(k.bases.iter().flatten().cloned());
    for a in lefts {
        if let Some(rest) = inner
            .strip_prefix(a.as_str())
            .and_then(|r| r.strip_prefix(','))
        {
            if rest == SUSPENSION_POINT || l.bases.iter().flatten().any(|y| y == rest) {
                return (&inner[..a.len()], rest);
            }
        }
    }
    unreachable!("tensor labels are built from both bases")
}

/// Per-degree basis bijections `K → L`.
pub type BasedIso = Vec<Vec<usize>>;

const ISO_STEP_LIMIT: usize = 5_000_000;

struct IsoSearch<'a> {
    k: &'a AugmentedDirectedComplex,
    l: &'a AugmentedDirectedComplex,
    order: Vec<(usize, usize)>,
    colour_k: Vec<Vec<u64>>,
    colour_l: Vec<Vec<u64>>,
    map: Vec<Vec<Option<usize>>>,
    used: Vec<Vec<bool>>,
    steps: usize,
}

/// Colour refinement on signed incidence, so candidates only meet their twins.
fn colours(k: &AugmentedDirectedComplex, rounds: usize) -> Vec<Vec<u64>> {
    use std::hash::{Hash, Hasher};
    let h = |v: &dyn Fn(&mut std::collections::hash_map::DefaultHasher)| {
        let mut s = std::collections::hash_map::DefaultHasher::new();
        v(&mut s);
        s.finish()
    };
    let mut col: Vec<Vec<u64>> = (0..k.degrees())
        .map(|n| {
            (0..k.rank(n))
                .map(|i| h(&|s| (n, if n == 0 { k.augmentation[i] } else { 0 }).hash(s)))
                .collect()
        })
        .collect();
    for _ in 0..rounds {
        let mut next = col.clone();
        for n in 0..k.degrees() {
            for i in 0..k.rank(n) {
                let mut down: Vec<(i64, u64)> = k
                    .boundary_of(n, i)
                    .into_iter()
                    .map(|(r, v)| (v, col[n - 1][r]))
                    .collect();
                let mut up: Vec<(i64, u64)> = if n + 1 < k.degrees() {
                    (0..k.rank(n + 1))
                        .filter(|&j| coeff(k, n + 1, i, j) != 0)
                        .map(|j| (coeff(k, n + 1, i, j), col[n + 1][j]))
                        .collect()
                } else {
                    Vec::new()
                };
                down.sort_unstable();
                up.sort_unstable();
                next[n][i] = h(&|s| (col[n][i], &down, &up).hash(s));
            }
        }
        col = next;
    }
    col
}

impl IsoSearch<'_> {
    fn consistent(&self, n: usize, a: usize, b: usize) -> bool {
        if n == 0 && self.k.augmentation[a] != self.l.augmentation[b] {
            return false;
        }
        if n > 0 {
            for r in 0..self.k.rank(n - 1) {
                if let Some(s) = self.map[n - 1][r] {
                    if coeff(self.k, n, r, a) != coeff(self.l, n, s, b) {
                        return false;
                    }
                }
            }
        }
        if n + 1 < self.k.degrees() {
            for j in 0..self.k.rank(n + 1) {
                if let Some(t) = self.map[n + 1][j] {
                    if coeff(self.k, n + 1, a, j) != coeff(self.l, n + 1, b, t) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, depth: usize) -> Result<bool> {
        if depth == self.order.len() {
            return Ok(true);
        }
        self.steps += 1;
        if self.steps > ISO_STEP_LIMIT {
            return Err(Error::BudgetExceeded(format!(
                "based isomorphism search exceeded {ISO_STEP_LIMIT} steps"
            )));
        }
        let (n, a) = self.order[depth];
        for b in 0..self.l.rank(n) {
            if self.used[n][b]
                || self.colour_k[n][a] != self.colour_l[n][b]
                || !self.consistent(n, a, b)
            {
                continue;
            }
            self.map[n][a] = Some(b);
            self.used[n][b] = true;
            if self.run(depth + 1)? {
                return Ok(true);
            }
            self.map[n][a] = None;
            self.used[n][b] = false;
        }
        Ok(false)
    }
}

/// Checks that a per-degree map is a basis bijection commuting with `d` and `e`.
pub fn is_based_iso(
    k: &AugmentedDirectedComplex,
    l: &AugmentedDirectedComplex,
    f: &BasedIso,
) -> bool {
    if k.ranks() != l.ranks() || f.len() != k.degrees() {
        return false;
    }
    for n in 0..k.degrees() {
        let mut seen = vec![false; l.rank(n)];
        if f[n].len() != k.rank(n)
            || f[n]
                .iter()
                .any(|&b| b >= l.rank(n) || std::mem::replace(&mut seen[b], true))
        {
            return false;
        }
    }
    (0..k.rank(0)).all(|a| k.augmentation[a] == l.augmentation[f[0][a]])
        && (1..k.degrees()).all(|n| {
            (0..k.rank(n)).all(|a| {
                (0..k.rank(n - 1)).all(|r| coeff(k, n, r, a) == coeff(l, n, f[n - 1][r], f[n][a]))
            })
        })
}

/// A based isomorphism, trying the label correspondence first.
pub fn based_iso(
    k: &AugmentedDirectedComplex,
    l: &AugmentedDirectedComplex,
) -> Result<Option<BasedIso>> {
    if k.ranks() != l.ranks() {
        return Ok(None);
    }
    let by_label: Option<BasedIso> = (0..k.degrees())
        .map(|n| {
            let index: BTreeMap<&String, usize> =
                l.bases[n].iter().enumerate().map(|(i, s)| (s, i)).collect();
            k.bases[n]
                .iter()
                .map(|s| index.get(s).copied())
                .collect::<Option<Vec<usize>>>()
        })
        .collect();
    if let Some(f) = by_label {
        if is_based_iso(k, l, &f) {
            return Ok(Some(f));
        }
    }
    let rounds = k.degrees() + 2;
    let (colour_k, colour_l) = (colours(k, rounds), colours(l, rounds));
    for n in 0..k.degrees() {
        let mut a = colour_k[n].clone();
        let mut b = colour_l[n].clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Ok(None);
        }
    }
    // top degree first: high cells pin down their faces quickly
    let order = (0..k.degrees())
        .rev()
        .flat_map(|n| (0..k.rank(n)).map(move |a| (n, a)))
        .collect();
    let mut search = IsoSearch {
        k,
        l,
        order,
        colour_k,
        colour_l,
        map: k.bases.iter().map(|b| vec![None; b.len()]).collect(),
        used: l.bases.iter().map(|b| vec![false; b.len()]).collect(),
        steps: 0,
    };
    if !search.run(0)? {
        return Ok(None);
    }
    Ok(Some(
        search
            .map
            .into_iter()
            .map(|m| m.into_iter().map(|b| b.expect("complete")).collect())
            .collect(),
    ))
}

pub fn are_based_isomorphic(
    k: &AugmentedDirectedComplex,
    l: &AugmentedDirectedComplex,
) -> Result<bool> {
    Ok(based_iso(k, l)?.is_some())
}

/// Whether the basis map induced by an id map of complexes commutes with `d` and `e`.
pub fn induces_chain_map(
    k: &AugmentedDirectedComplex,
    l: &AugmentedDirectedComplex,
    f: impl Fn(&str) -> Option<String>,
) -> bool {
    let place = |n: usize, label: &str| l.bases.get(n)?.iter().position(|s| s == label);
    let mut map: Vec<Vec<usize>> = Vec::new();
    for n in 0..k.degrees() {
        let mut m = Vec::new();
        for s in &k.bases[n] {
            match f(s).and_then(|t| place(n, &t)) {
                Some(i) => m.push(i),
                None => return false,
            }
        }
        let distinct: HashSet<&usize> = m.iter().collect();
        if distinct.len() != m.len() {
            return false;
        }
        map.push(m);
    }
    (0..k.rank(0)).all(|a| k.augmentation[a] == l.augmentation[map[0][a]])
        && (1..k.degrees()).all(|n| {
            (0..k.rank(n)).all(|a| {
                let image: BTreeMap<usize, i64> = l.boundary_of(n, map[n][a]).into_iter().collect();
                let pushed: BTreeMap<usize, i64> = k
                    .boundary_of(n, a)
                    .into_iter()
                    .map(|(r, v)| (map[n - 1][r], v))
                    .collect();
                image == pushed
            })
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{gray_product, join};
    use crate::fixtures;

    #[test]
    fn globe_boundaries() {
        let c = fixtures::globe(2);
        let k = adc_of(&c).unwrap();
        assert_eq!(k.ranks(), vec![2, 2, 1]);
        let top = k.boundary_of(2, 0);
        let lo = k.bases[1].iter().position(|s| s == "1-").unwrap();
        let hi = k.bases[1].iter().position(|s| s == "1+").unwrap();
        assert!(top.contains(&(lo, -1)) && top.contains(&(hi, 1)));
        assert_eq!(k.augmentation, vec![1, 1]);
    }

    #[test]
    fn point_and_path() {
        let k = adc_of(&fixtures::point()).unwrap();
        assert_eq!((k.ranks(), k.augmentation.clone()), (vec![1], vec![1]));
        let p = adc_of(&fixtures::path(2)).unwrap();
        let mut cols: Vec<Vec<i64>> = (0..2)
            .map(|c| (0..3).map(|r| p.boundaries[0][r][c]).collect())
            .collect();
        cols.sort();
        assert_eq!(cols, vec![vec![-1, 1, 0], vec![0, -1, 1]]);
    }

    #[test]
    fn tensor_of_intervals_is_square() {
        let i = adc_of(&fixtures::globe(1)).unwrap();
        let sq = adc_tensor(&i, &i);
        assert!(sq.is_valid());
        assert!(are_based_isomorphic(&sq, &adc_of(&fixtures::cube(2)).unwrap()).unwrap());
        let g = gray_product(&fixtures::globe(1), &fixtures::globe(1)).unwrap();
        assert!(based_iso(&adc_of(&g).unwrap(), &sq).unwrap().is_some());
    }

    #[test]
    fn suspension_shape() {
        let s = adc_suspension(&adc_of(&fixtures::globe(1)).unwrap());
        assert_eq!(s.ranks(), vec![1, 2, 1]);
        assert!(s.is_valid());
        assert_eq!(s.augmentation, vec![0]);
        assert!(!are_based_isomorphic(&s, &adc_of(&fixtures::globe(2)).unwrap()).unwrap());
    }

    #[test]
    fn join_of_points_is_interval() {
        let pt = adc_of(&fixtures::point()).unwrap();
        let j = adc_join(&pt, &pt);
        assert_eq!(j.ranks(), vec![2, 1]);
        assert!(are_based_isomorphic(&j, &adc_of(&fixtures::globe(1)).unwrap()).unwrap());
        let zero = AugmentedDirectedComplex::zero();
        assert_eq!(adc_join(&zero, &pt), pt);
    }

    #[test]
    fn join_matches_posets() {
        let (p, q) = (fixtures::globe(1), fixtures::point());
        let lhs = adc_of(&join(&p, &q).unwrap()).unwrap();
        assert!(
            are_based_isomorphic(&lhs, &adc_join(&adc_of(&p).unwrap(), &adc_of(&q).unwrap()))
                .unwrap()
        );
    }

    #[test]
    fn broken_complexes_are_rejected() {
        let mut k = adc_of(&fixtures::globe(1)).unwrap();
        k.augmentation[0] = 2;
        assert!(matches!(k.verify(), Err(Error::InvariantViolated(_))));
    }

    #[test]
    fn inclusions_give_chain_maps() {
        let small = fixtures::globe(1);
        let big = fixtures::globe(2);
        let (k, l) = (adc_of(&small).unwrap(), adc_of(&big).unwrap());
        assert!(induces_chain_map(&k, &l, |s| Some(if s == "1" {
            "1-".into()
        } else {
            s.to_string()
        })));
        assert!(!induces_chain_map(&k, &l, |s| Some(if s == "1" {
            "1-".into()
        } else {
            "0-".into()
        })));
    }

    #[test]
    fn unit_laws() {
        let k = adc_of(&fixtures::cube(2)).unwrap();
        let u = AugmentedDirectedComplex::unit();
        assert!(are_based_isomorphic(&adc_tensor(&k, &u), &k).unwrap());
        let z = AugmentedDirectedComplex::zero();
        assert!(are_based_isomorphic(&adc_join(&k, &z), &k).unwrap());
    }
}
