//! Oriented graded posets stored by their signed Hasse diagrams.

use crate::error::{Error, Result};
use crate::set::ElementSet;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "-")]
    Minus,
    #[serde(rename = "+")]
    Plus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Minus, Sign::Plus];

    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// `(−)^n`.
    pub fn parity(n: usize) -> Sign {
        if n.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn to_int(self) -> i64 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }

    pub fn superscript(self) -> &'static str {
        match self {
            Sign::Minus => "⁻",
            Sign::Plus => "⁺",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Minus => "-",
            Sign::Plus => "+",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Sign> {
        match s {
            "-" | "−" => Ok(Sign::Minus),
            "+" => Ok(Sign::Plus),
            other => Err(Error::BadParams(format!("unknown sign `{other}`"))),
        }
    }
}

/// A finite oriented graded poset.
///
/// Elements carry dense indices sorted by `(dim, insertion order)`.
#[derive(Clone)]
pub struct Complex {
    ids: Vec<String>,
    dims: Vec<usize>,
    faces: Vec<Vec<(usize, Sign)>>,
    cofaces: Vec<Vec<(usize, Sign)>>,
    lookup: HashMap<String, usize>,
}

/// Accumulates elements and covers before validation.
#[derive(Debug, Clone, Default)]
pub struct ComplexBuilder {
    elements: Vec<(String, usize)>,
    covers: Vec<(String, String, Sign)>,
}

impl ComplexBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn element(&mut self, id: impl Into<String>, dim: usize) -> &mut Self {
        self.elements.push((id.into(), dim));
        self
    }

    pub fn cover(
        &mut self,
        upper: impl Into<String>,
        lower: impl Into<String>,
        sign: Sign,
    ) -> &mut Self {
        self.covers.push((upper.into(), lower.into(), sign));
        self
    }

    pub fn build(&self) -> Result<Complex> {
        let mut position = HashMap::with_capacity(self.elements.len());
        for (k, (id, _)) in self.elements.iter().enumerate() {
            if position.insert(id.as_str(), k).is_some() {
                return Err(Error::DuplicateId(id.clone()));
            }
        }
        let mut edges = Vec::with_capacity(self.covers.len());
        for (u, l, s) in &self.covers {
            let ui = *position
                .get(u.as_str())
                .ok_or_else(|| Error::UnknownElement(u.clone()))?;
            let li = *position
                .get(l.as_str())
                .ok_or_else(|| Error::UnknownElement(l.clone()))?;
            edges.push((ui, li, *s));
        }
        let mut seen = HashSet::with_capacity(edges.len());
        for &(u, l, _) in &edges {
            if !seen.insert((u, l)) {
                return Err(Error::DuplicateCover {
                    upper: self.elements[u].0.clone(),
                    lower: self.elements[l].0.clone(),
                });
            }
        }
        if let Some(k) = find_cycle(self.elements.len(), &edges) {
            return Err(Error::CycleInOrder(self.elements[k].0.clone()));
        }
        for &(u, l, _) in &edges {
            if self.elements[u].1 != self.elements[l].1 + 1 {
                return Err(Error::BadCoverDimension {
                    upper: self.elements[u].0.clone(),
                    lower: self.elements[l].0.clone(),
                });
            }
        }
        let mut has_face = vec![false; self.elements.len()];
        for &(u, _, _) in &edges {
            has_face[u] = true;
        }
        for (k, (id, dim)) in self.elements.iter().enumerate() {
            if *dim > 0 && !has_face[k] {
                return Err(Error::OrphanElement(id.clone()));
            }
        }

        let mut order: Vec<usize> = (0..self.elements.len()).collect();
        order.sort_by_key(|&k| (self.elements[k].1, k));
        let mut dense = vec![0; order.len()];
        for (i, &k) in order.iter().enumerate() {
            dense[k] = i;
        }
        let n = order.len();
        let ids: Vec<String> = order.iter().map(|&k| self.elements[k].0.clone()).collect();
        let dims: Vec<usize> = order.iter().map(|&k| self.elements[k].1).collect();
        let mut faces = vec![Vec::new(); n];
        let mut cofaces = vec![Vec::new(); n];
        for &(u, l, s) in &edges {
            faces[dense[u]].push((dense[l], s));
            cofaces[dense[l]].push((dense[u], s));
        }
        for list in faces.iter_mut().chain(cofaces.iter_mut()) {
            list.sort_unstable();
        }
        let lookup = ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), i))
            .collect();
        Ok(Complex {
            ids,
            dims,
            faces,
            cofaces,
            lookup,
        })
    }
}

fn find_cycle(n: usize, edges: &[(usize, usize, Sign)]) -> Option<usize> {
    let mut indegree = vec![0usize; n];
    let mut out = vec![Vec::new(); n];
    for &(u, l, _) in edges {
        out[u].push(l);
        indegree[l] += 1;
    }
    let mut stack: Vec<usize> = (0..n).filter(|&k| indegree[k] == 0).collect();
    let mut removed = 0;
    while let Some(k) = stack.pop() {
        removed += 1;
        for &l in &out[k] {
            indegree[l] -= 1;
            if indegree[l] == 0 {
                stack.push(l);
            }
        }
    }
    if removed == n {
        None
    } else {
        (0..n).find(|&k| indegree[k] > 0)
    }
}

/// An interval `[x, y]`, where `x` may be the virtual bottom element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub bottom: bool,
    pub members: ElementSet,
}

/// A length-2 interval of `P_⊥` that is not an oriented diamond.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThinnessViolation {
    /// `None` stands for the virtual bottom.
    pub lower: Option<usize>,
    pub upper: usize,
    pub middle: Vec<usize>,
}

impl Complex {
    pub fn builder() -> ComplexBuilder {
        ComplexBuilder::new()
    }

    pub fn empty() -> Complex {
        ComplexBuilder::new()
            .build()
            .expect("empty complex is valid")
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index(&self, id: &str) -> Result<usize> {
        self.lookup
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownElement(id.to_string()))
    }

    pub fn get(&self, id: &str) -> Option<usize> {
        self.lookup.get(id).copied()
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims[i]
    }

    /// Dimension of the whole complex, `-1` when empty.
    pub fn dimension(&self) -> isize {
        self.dims.iter().max().map_or(-1, |&d| d as isize)
    }

    /// Lower covers of `i` with their signs.
    pub fn faces(&self, i: usize) -> &[(usize, Sign)] {
        &self.faces[i]
    }

    /// Upper covers of `i` with their signs.
    pub fn cofaces(&self, i: usize) -> &[(usize, Sign)] {
        &self.cofaces[i]
    }

    pub fn cover_sign(&self, upper: usize, lower: usize) -> Option<Sign> {
        self.faces[upper]
            .iter()
            .find(|&&(l, _)| l == lower)
            .map(|&(_, s)| s)
    }

    /// All covers as `(upper, lower, sign)`.
    pub fn covers(&self) -> impl Iterator<Item = (usize, usize, Sign)> + '_ {
        (0..self.len()).flat_map(move |u| self.faces[u].iter().map(move |&(l, s)| (u, l, s)))
    }

    pub fn elements_of_dim(&self, d: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.dims[i] == d)
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet::empty(self.len())
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    pub fn set_of_ids<S: AsRef<str>>(&self, ids: &[S]) -> Result<ElementSet> {
        let mut s = self.empty_set();
        for id in ids {
            s.insert(self.index(id.as_ref())?);
        }
        Ok(s)
    }

    pub fn ids_of(&self, set: &ElementSet) -> Vec<String> {
        set.iter().map(|i| self.ids[i].clone()).collect()
    }

    /// Sorted ids, the canonical textual form of a subset.
    pub fn sorted_ids(&self, set: &ElementSet) -> Vec<String> {
        let mut v = self.ids_of(set);
        v.sort();
        v
    }

    /// Smallest closed subset containing `seed`.
    pub fn closure(&self, seed: &ElementSet) -> ElementSet {
        // faces have smaller indices, so one descending sweep suffices
        let mut out = seed.clone();
        let mut bound = self.len();
        while let Some(x) = out.last_below(bound) {
            for &(z, _) in &self.faces[x] {
                out.insert(z);
            }
            bound = x;
        }
        out
    }

    pub fn closure_of(&self, x: usize) -> ElementSet {
        self.closure(&ElementSet::from_indices(self.len(), [x]))
    }

    /// Closure of a list of ids.
    pub fn closure_of_ids<S: AsRef<str>>(&self, ids: &[S]) -> Result<ElementSet> {
        Ok(self.closure(&self.set_of_ids(ids)?))
    }

    pub fn is_closed(&self, set: &ElementSet) -> bool {
        set.iter()
            .all(|x| self.faces[x].iter().all(|&(z, _)| set.contains(z)))
    }

    /// Checks closedness, naming an offending element.
    pub fn require_closed(&self, set: &ElementSet) -> Result<()> {
        match set
            .iter()
            .find(|&x| self.faces[x].iter().any(|&(z, _)| !set.contains(z)))
        {
            Some(x) => Err(Error::NotClosed(self.ids[x].clone())),
            None => Ok(()),
        }
    }

    /// Elements strictly or non-strictly above `x`.
    pub fn up_set(&self, x: usize) -> ElementSet {
        let mut out = ElementSet::from_indices(self.len(), [x]);
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            for &(w, _) in &self.cofaces[y] {
                if !out.contains(w) {
                    out.insert(w);
                    stack.push(w);
                }
            }
        }
        out
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.dims[x] <= self.dims[y] && self.closure_of(y).contains(x)
    }

    /// `[x, y]`, with `x = None` for the virtual bottom.
    pub fn interval(&self, x: Option<usize>, y: usize) -> Result<Interval> {
        let below = self.closure_of(y);
        match x {
            None => Ok(Interval {
                bottom: true,
                members: below,
            }),
            Some(x) => {
                if !below.contains(x) {
                    return Err(Error::NotComparable(
                        self.ids[x].clone(),
                        self.ids[y].clone(),
                    ));
                }
                Ok(Interval {
                    bottom: false,
                    members: below.intersection(&self.up_set(x)),
                })
            }
        }
    }

    /// Maximal elements of a subset.
    pub fn maximal(&self, set: &ElementSet) -> ElementSet {
        let mut out = self.empty_set();
        for x in set.iter() {
            if !self.cofaces[x].iter().any(|&(y, _)| set.contains(y)) {
                out.insert(x);
            }
        }
        out
    }

    /// Dimension of a subset, `-1` for the empty set.
    pub fn dim_of(&self, set: &ElementSet) -> isize {
        // indices are sorted by dimension
        set.last_below(set.universe())
            .map_or(-1, |x| self.dims[x] as isize)
    }

    /// Every maximal element has the dimension of the subset.
    pub fn is_pure(&self, set: &ElementSet) -> bool {
        let d = self.dim_of(set);
        self.maximal(set).iter().all(|x| self.dims[x] as isize == d)
    }

    /// First length-2 interval of `P_⊥` that is not an oriented diamond.
    pub fn thinness_violation(&self) -> Option<ThinnessViolation> {
        for y in 0..self.len() {
            match self.dims[y] {
                0 => {}
                1 => {
                    let f = &self.faces[y];
                    if f.len() != 2 || f[0].1 == f[1].1 {
                        return Some(ThinnessViolation {
                            lower: None,
                            upper: y,
                            middle: f.iter().map(|&(z, _)| z).collect(),
                        });
                    }
                }
                _ => {
                    let mut through: BTreeMap<usize, Vec<(usize, Sign)>> = BTreeMap::new();
                    for &(z, a) in &self.faces[y] {
                        for &(x, b) in &self.faces[z] {
                            through.entry(x).or_default().push((z, a.times(b)));
                        }
                    }
                    for (x, paths) in through {
                        if paths.len() != 2 || paths[0].1 == paths[1].1 {
                            return Some(ThinnessViolation {
                                lower: Some(x),
                                upper: y,
                                middle: paths.iter().map(|&(z, _)| z).collect(),
                            });
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_oriented_thin(&self) -> bool {
        self.thinness_violation().is_none()
    }

    /// Renders a violation as `[x, y]`.
    pub fn describe_violation(&self, v: &ThinnessViolation) -> String {
        let lower = v.lower.map_or("⊥", |x| self.ids[x].as_str());
        format!("[{}, {}]", lower, self.ids[v.upper])
    }

    /// The subset as a complex in its own right, with the list of host indices.
    pub fn restrict(&self, set: &ElementSet) -> Result<(Complex, Vec<usize>)> {
        self.require_closed(set)?;
        let mut b = ComplexBuilder::new();
        let members = set.to_vec();
        for &x in &members {
            b.element(self.ids[x].clone(), self.dims[x]);
        }
        for &x in &members {
            for &(z, s) in &self.faces[x] {
                b.cover(self.ids[x].clone(), self.ids[z].clone(), s);
            }
        }
        let c = b.build()?;
        let back = (0..c.len()).map(|i| self.lookup[c.id(i)]).collect();
        Ok((c, back))
    }

    /// Same complex with element ids rewritten by `f`.
    pub fn relabel(&self, f: impl Fn(&str) -> String) -> Result<Complex> {
        let mut b = ComplexBuilder::new();
        for i in 0..self.len() {
            b.element(f(&self.ids[i]), self.dims[i]);
        }
        for (u, l, s) in self.covers() {
            b.cover(f(&self.ids[u]), f(&self.ids[l]), s);
        }
        b.build()
    }

    /// A builder pre-populated with this complex.
    pub fn to_builder(&self) -> ComplexBuilder {
        let mut b = ComplexBuilder::new();
        for i in 0..self.len() {
            b.element(self.ids[i].clone(), self.dims[i]);
        }
        for (u, l, s) in self.covers() {
            b.cover(self.ids[u].clone(), self.ids[l].clone(), s);
        }
        b
    }

    /// Number of elements in each dimension.
    pub fn dim_counts(&self) -> Vec<usize> {
        let top = self.dimension();
        let mut counts = vec![0; (top + 1) as usize];
        for &d in &self.dims {
            counts[d] += 1;
        }
        counts
    }
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.dims == other.dims && self.faces == other.faces
    }
}

impl Eq for Complex {}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for i in 0..self.len() {
            let faces: Vec<String> = self.faces[i]
                .iter()
                .map(|&(z, s)| format!("{}{}", s, self.ids[z]))
                .collect();
            m.entry(&format!("{}:{}", self.ids[i], self.dims[i]), &faces);
        }
        m.finish()
    }
}

/// Picks `base` or `base'`, `base''`, … so that the result is not in `taken`.
pub fn fresh_id(base: &str, taken: &HashSet<String>) -> String {
    let mut candidate = base.to_string();
    while taken.contains(&candidate) {
        candidate.push('\'');
    }
    candidate
}

#[cfg(test)]
mod tests {
    use super::*;

    fn globe2() -> Complex {
        let mut b = Complex::builder();
        b.element("0-", 0)
            .element("0+", 0)
            .element("1-", 1)
            .element("1+", 1)
            .element("2", 2);
        for e in ["1-", "1+"] {
            b.cover(e, "0-", Sign::Minus).cover(e, "0+", Sign::Plus);
        }
        b.cover("2", "1-", Sign::Minus).cover("2", "1+", Sign::Plus);
        b.build().unwrap()
    }

    #[test]
    fn validates_globe() {
        let c = globe2();
        assert_eq!(c.dim_counts(), vec![2, 2, 1]);
        assert!(c.is_oriented_thin());
    }

    #[test]
    fn rejects_dimension_gap() {
        let mut b = Complex::builder();
        b.element("a", 0)
            .element("b", 2)
            .cover("b", "a", Sign::Plus);
        assert!(matches!(b.build(), Err(Error::BadCoverDimension { .. })));
    }

    #[test]
    fn rejects_duplicates_orphans_and_cycles() {
        let mut b = Complex::builder();
        b.element("a", 0).element("a", 0);
        assert_eq!(b.build(), Err(Error::DuplicateId("a".into())));

        let mut b = Complex::builder();
        b.element("a", 1);
        assert_eq!(b.build(), Err(Error::OrphanElement("a".into())));

        let mut b = Complex::builder();
        b.element("a", 0)
            .element("e", 1)
            .cover("e", "a", Sign::Plus)
            .cover("e", "a", Sign::Minus);
        assert!(matches!(b.build(), Err(Error::DuplicateCover { .. })));

        let mut b = Complex::builder();
        b.element("a", 1)
            .element("b", 1)
            .cover("a", "b", Sign::Plus)
            .cover("b", "a", Sign::Plus);
        assert!(matches!(b.build(), Err(Error::CycleInOrder(_))));

        let mut b = Complex::builder();
        b.element("a", 0).cover("a", "z", Sign::Plus);
        assert_eq!(b.build(), Err(Error::UnknownElement("z".into())));
    }

    #[test]
    fn single_point_is_valid_and_thin() {
        let mut b = Complex::builder();
        b.element("pt", 0);
        let c = b.build().unwrap();
        assert_eq!(c.len(), 1);
        assert!(c.is_oriented_thin());
    }

    #[test]
    fn closures() {
        let c = globe2();
        let top = c.index("2").unwrap();
        assert_eq!(c.closure_of(top).len(), 5);
        let e = c.closure_of_ids(&["1-"]).unwrap();
        assert_eq!(c.sorted_ids(&e), vec!["0+", "0-", "1-"]);
        assert!(c.closure(&c.empty_set()).is_empty());
    }

    #[test]
    fn intervals() {
        let c = globe2();
        let i = c
            .interval(Some(c.index("0-").unwrap()), c.index("2").unwrap())
            .unwrap();
        assert_eq!(c.sorted_ids(&i.members), vec!["0-", "1+", "1-", "2"]);
        let i = c.interval(None, c.index("1-").unwrap()).unwrap();
        assert!(i.bottom);
        assert_eq!(i.members.len(), 3);
        let x = c.index("1-").unwrap();
        assert_eq!(c.interval(Some(x), x).unwrap().members.to_vec(), vec![x]);
        assert!(matches!(
            c.interval(Some(c.index("1+").unwrap()), x),
            Err(Error::NotComparable(_, _))
        ));
    }

    #[test]
    fn flipped_sign_breaks_thinness() {
        let mut b = Complex::builder();
        b.element("0-", 0)
            .element("0+", 0)
            .element("1-", 1)
            .element("1+", 1)
            .element("2", 2);
        for e in ["1-", "1+"] {
            b.cover(e, "0-", Sign::Minus).cover(e, "0+", Sign::Plus);
        }
        b.cover("2", "1-", Sign::Minus)
            .cover("2", "1+", Sign::Minus);
        let c = b.build().unwrap();
        let v = c.thinness_violation().unwrap();
        assert_eq!(c.describe_violation(&v), "[0-, 2]");
    }

    #[test]
    fn purity_and_maximal() {
        let c = globe2();
        assert!(c.is_pure(&c.all()));
        assert!(c.is_pure(&c.empty_set()));
        let s = c.set_of_ids(&["0-", "0+", "1-"]).unwrap();
        assert_eq!(c.ids_of(&c.maximal(&s)), vec!["1-"]);
    }

    #[test]
    fn restrict_keeps_ids() {
        let c = globe2();
        let s = c.closure_of_ids(&["1+"]).unwrap();
        let (r, back) = c.restrict(&s).unwrap();
        assert_eq!(r.len(), 3);
        for (i, &h) in back.iter().enumerate() {
            assert_eq!(r.id(i), c.id(h));
        }
        let open = c.set_of_ids(&["1+"]).unwrap();
        assert!(matches!(c.restrict(&open), Err(Error::NotClosed(_))));
    }
}
