//! Closed embeddings and isomorphisms between complexes.

use crate::error::{Error, Result};
use crate::poset::Complex;
use crate::set::ElementSet;
use std::collections::HashMap;

/// Complexes larger than this are refused by the embedding search.
pub const MAX_SEARCH_ELEMENTS: usize = 4096;
const MAX_SEARCH_STEPS: u64 = 50_000_000;

/// A closed embedding, stored as the image of each source index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Inclusion {
    pub map: Vec<usize>,
}

impl Inclusion {
    pub fn identity(c: &Complex) -> Inclusion {
        Inclusion {
            map: (0..c.len()).collect(),
        }
    }

    /// Builds the map sending each source element to the target element of the same id.
    pub fn by_ids(source: &Complex, target: &Complex) -> Result<Inclusion> {
        Self::by_id_map(source, target, |s| s.to_string())
    }

    pub fn by_id_map(
        source: &Complex,
        target: &Complex,
        f: impl Fn(&str) -> String,
    ) -> Result<Inclusion> {
        let map = source
            .ids()
            .iter()
            .map(|id| {
                target
                    .index(&f(id))
                    .map_err(|e| Error::NotAnInclusion(e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        let inc = Inclusion { map };
        inc.check(source, target)?;
        Ok(inc)
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn image(&self, target: &Complex, set: &ElementSet) -> ElementSet {
        ElementSet::from_indices(target.len(), set.iter().map(|x| self.map[x]))
    }

    pub fn full_image(&self, target: &Complex) -> ElementSet {
        ElementSet::from_indices(target.len(), self.map.iter().copied())
    }

    pub fn compose(&self, then: &Inclusion) -> Inclusion {
        Inclusion {
            map: self.map.iter().map(|&x| then.map[x]).collect(),
        }
    }

    /// Inverse of a bijective inclusion.
    pub fn inverse(&self) -> Inclusion {
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Inclusion { map: inv }
    }

    /// Checks injectivity, dimension, closed image, and preservation and reflection of signed covers.
    pub fn check(&self, source: &Complex, target: &Complex) -> Result<()> {
        if self.map.len() != source.len() {
            return Err(Error::NotAnInclusion(
                "map length differs from source size".into(),
            ));
        }
        let mut used = target.empty_set();
        for (x, &y) in self.map.iter().enumerate() {
            if y >= target.len() {
                return Err(Error::NotAnInclusion(format!(
                    "image of {} out of range",
                    source.id(x)
                )));
            }
            if used.contains(y) {
                return Err(Error::NotAnInclusion(format!(
                    "{} is hit twice",
                    target.id(y)
                )));
            }
            used.insert(y);
            if source.dim(x) != target.dim(y) {
                return Err(Error::NotAnInclusion(format!(
                    "{} changes dimension",
                    source.id(x)
                )));
            }
            let mut want: Vec<_> = source
                .faces(x)
                .iter()
                .map(|&(z, s)| (self.map[z], s))
                .collect();
            want.sort_unstable();
            if want != target.faces(y) {
                return Err(Error::NotAnInclusion(format!(
                    "faces of {} are not sent onto faces of {}",
                    source.id(x),
                    target.id(y)
                )));
            }
        }
        Ok(())
    }

    pub fn is_isomorphism(&self, source: &Complex, target: &Complex) -> bool {
        source.len() == target.len() && self.check(source, target).is_ok()
    }

    /// The map as `(source id, target id)` pairs.
    pub fn id_pairs(&self, source: &Complex, target: &Complex) -> Vec<(String, String)> {
        self.map
            .iter()
            .enumerate()
            .map(|(x, &y)| (source.id(x).to_string(), target.id(y).to_string()))
            .collect()
    }
}

struct Search<'a> {
    source: &'a Complex,
    target: &'a Complex,
    bijective: bool,
    order: Vec<usize>,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
    found: Vec<Inclusion>,
    limit: usize,
    steps: u64,
}

impl Search<'_> {
    fn admissible(&self, x: usize, t: usize) -> bool {
        let (s, g) = (self.source, self.target);
        if self.used[t] || s.dim(x) != g.dim(t) || s.faces(x).len() != g.faces(t).len() {
            return false;
        }
        let (sc, tc) = (s.cofaces(x).len(), g.cofaces(t).len());
        if (self.bijective && sc != tc) || tc < sc {
            return false;
        }
        s.cofaces(x).iter().all(|&(y, sign)| match self.map[y] {
            Some(my) => g.cover_sign(my, t) == Some(sign),
            None => true,
        })
    }

    fn run(&mut self, depth: usize) -> Result<()> {
        self.steps += 1;
        if self.steps > MAX_SEARCH_STEPS {
            return Err(Error::BudgetExceeded("embedding search step limit".into()));
        }
        if depth == self.order.len() {
            let map: Vec<usize> = self.map.iter().map(|m| m.unwrap()).collect();
            self.found.push(Inclusion { map });
            return Ok(());
        }
        let x = self.order[depth];
        let candidates: Vec<usize> = match self.source.cofaces(x).first() {
            Some(&(y, _)) => {
                let my = self.map[y].expect("cofaces are placed first");
                self.target.faces(my).iter().map(|&(t, _)| t).collect()
            }
            None => self.target.elements_of_dim(self.source.dim(x)).collect(),
        };
        for t in candidates {
            if !self.admissible(x, t) {
                continue;
            }
            self.map[x] = Some(t);
            self.used[t] = true;
            self.run(depth + 1)?;
            self.used[t] = false;
            self.map[x] = None;
            if self.found.len() >= self.limit {
                return Ok(());
            }
        }
        Ok(())
    }
}

fn search(
    source: &Complex,
    target: &Complex,
    bijective: bool,
    limit: usize,
) -> Result<Vec<Inclusion>> {
    if source.len() > MAX_SEARCH_ELEMENTS || target.len() > MAX_SEARCH_ELEMENTS {
        return Err(Error::BudgetExceeded(format!(
            "embedding search is capped at {MAX_SEARCH_ELEMENTS} elements"
        )));
    }
    if source.len() > target.len() || (bijective && source.len() != target.len()) {
        return Ok(Vec::new());
    }
    if bijective && source.dim_counts() != target.dim_counts() {
        return Ok(Vec::new());
    }
    if !bijective {
        let mut have: HashMap<usize, usize> = HashMap::new();
        for i in 0..target.len() {
            *have.entry(target.dim(i)).or_default() += 1;
        }
        for (d, &n) in source.dim_counts().iter().enumerate() {
            if have.get(&d).copied().unwrap_or(0) < n {
                return Ok(Vec::new());
            }
        }
    }
    let mut order: Vec<usize> = (0..source.len()).collect();
    order.sort_by_key(|&x| (std::cmp::Reverse(source.dim(x)), x));
    let mut s = Search {
        source,
        target,
        bijective,
        order,
        map: vec![None; source.len()],
        used: vec![false; target.len()],
        found: Vec::new(),
        limit,
        steps: 0,
    };
    s.run(0)?;
    Ok(s.found)
}

/// Some closed embedding of `source` into `target`, if one exists.
pub fn find_inclusion(source: &Complex, target: &Complex) -> Result<Option<Inclusion>> {
    Ok(search(source, target, false, 1)?.pop())
}

/// Some isomorphism `p → q`, if one exists.
pub fn find_isomorphism(p: &Complex, q: &Complex) -> Result<Option<Inclusion>> {
    Ok(search(p, q, true, 1)?.pop())
}

pub fn are_isomorphic(p: &Complex, q: &Complex) -> Result<bool> {
    Ok(find_isomorphism(p, q)?.is_some())
}

/// Up to `limit` isomorphisms `p → q`.
pub fn isomorphisms(p: &Complex, q: &Complex, limit: usize) -> Result<Vec<Inclusion>> {
    search(p, q, true, limit)
}

/// Up to `limit` closed embeddings `source → target`.
pub fn inclusions(source: &Complex, target: &Complex, limit: usize) -> Result<Vec<Inclusion>> {
    search(source, target, false, limit)
}
