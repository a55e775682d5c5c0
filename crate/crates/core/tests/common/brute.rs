//! Recognizers written straight from the definitions: no memo tables, no
//! fast paths, and boundaries computed here rather than by the library.

use cdc_core::{Complex, ElementSet, Sign};
use std::collections::HashSet;

pub fn closure(c: &Complex, seed: &ElementSet) -> ElementSet {
    let mut out = seed.clone();
    let mut stack: Vec<usize> = seed.iter().collect();
    while let Some(x) = stack.pop() {
        for &(f, _) in c.faces(x) {
            if !out.contains(f) {
                out.insert(f);
                stack.push(f);
            }
        }
    }
    out
}

pub fn dim(c: &Complex, u: &ElementSet) -> isize {
    u.iter().map(|x| c.dim(x) as isize).max().unwrap_or(-1)
}

pub fn maximal(c: &Complex, u: &ElementSet) -> Vec<usize> {
    u.iter()
        .filter(|&x| c.cofaces(x).iter().all(|&(y, _)| !u.contains(y)))
        .collect()
}

/// `∂ₖ^α U = cl(Δₖ^α U) ∪ (U ∖ cl{x ∈ U : dim x > k})`.
pub fn boundary(c: &Complex, u: &ElementSet, sign: Sign, k: isize) -> ElementSet {
    let n = c.len();
    if k < 0 {
        return ElementSet::empty(n);
    }
    let high = ElementSet::from_indices(n, u.iter().filter(|&x| c.dim(x) as isize > k));
    let strict = ElementSet::from_indices(
        n,
        u.iter().filter(|&x| {
            c.dim(x) as isize == k
                && c.cofaces(x)
                    .iter()
                    .all(|&(y, s)| !u.contains(y) || s == sign)
        }),
    );
    u.difference(&closure(c, &high)).union(&closure(c, &strict))
}

fn face(c: &Complex, u: &ElementSet, sign: Sign) -> ElementSet {
    boundary(c, u, sign, dim(c, u) - 1)
}

fn pure(c: &Complex, u: &ElementSet) -> bool {
    let n = dim(c, u);
    maximal(c, u).into_iter().all(|x| c.dim(x) as isize == n)
}

/// Constructible molecule, by the recursive definition.
pub fn is_constructible(c: &Complex, u: &ElementSet) -> bool {
    if u.is_empty() {
        return false;
    }
    let n = dim(c, u);
    if n == 0 {
        return u.len() == 1;
    }
    if !pure(c, u) {
        return false;
    }
    for sign in Sign::BOTH {
        let b = face(c, u, sign);
        if dim(c, &b) != n - 1 || !is_constructible(c, &b) {
            return false;
        }
    }
    maximal(c, u).len() == 1 || !valid_splits(c, u).is_empty()
}

/// Splits `U = U₁ ∪ U₂` meeting the definition.
///
/// Both parts are pure, closed and `n`-dimensional, so each is the closure of
/// its maximal elements; a shared maximal element would put an `n`-dimensional
/// element in the overlap. Enumerating partitions is therefore exhaustive.
pub fn valid_splits(c: &Complex, u: &ElementSet) -> Vec<(ElementSet, ElementSet)> {
    let maxes = maximal(c, u);
    let m = maxes.len();
    let mut out = Vec::new();
    if m < 2 {
        return out;
    }
    for mask in 1u32..(1 << m) - 1 {
        let part = |side: bool| {
            closure(
                c,
                &ElementSet::from_indices(
                    c.len(),
                    (0..m)
                        .filter(|&i| (mask >> i) & 1 == side as u32)
                        .map(|i| maxes[i]),
                ),
            )
        };
        let (u1, u2) = (part(true), part(false));
        if is_valid_split(c, u, &u1, &u2) {
            out.push((u1, u2));
        }
    }
    out
}

fn is_valid_split(c: &Complex, u: &ElementSet, u1: &ElementSet, u2: &ElementSet) -> bool {
    let n = dim(c, u);
    let meet = u1.intersection(u2);
    let (out1, in2) = (face(c, u1, Sign::Plus), face(c, u2, Sign::Minus));
    meet == out1.intersection(&in2)
        && dim(c, &meet) == n - 1
        && is_constructible(c, u1)
        && is_constructible(c, u2)
        && is_constructible(c, &meet)
        && submolecule(c, &face(c, u1, Sign::Minus), &face(c, u, Sign::Minus))
        && submolecule(c, &face(c, u2, Sign::Plus), &face(c, u, Sign::Plus))
        && submolecule(c, &meet, &out1)
        && submolecule(c, &meet, &in2)
}

/// `V ⊑ U` for constructible molecules of equal dimension: the reflexive and
/// transitive closure of "is a part of a valid split of".
pub fn submolecule(c: &Complex, v: &ElementSet, u: &ElementSet) -> bool {
    if v == u {
        return true;
    }
    if !v.is_subset(u) {
        return false;
    }
    valid_splits(c, u)
        .iter()
        .any(|(a, b)| submolecule(c, v, a) || submolecule(c, v, b))
}

pub fn glues(c: &Complex, u1: &ElementSet, k: isize, u2: &ElementSet) -> bool {
    let meet = u1.intersection(u2);
    meet == boundary(c, u1, Sign::Plus, k) && meet == boundary(c, u2, Sign::Minus, k)
}

/// Every molecule in the gluing sense: closures of single elements, closed
/// under `U #ₖ V`, computed as a fixpoint over all pairs.
pub fn steiner_molecules(c: &Complex) -> HashSet<ElementSet> {
    let top = c.dimension();
    let mut found: Vec<ElementSet> = (0..c.len())
        .map(|x| closure(c, &ElementSet::from_indices(c.len(), [x])))
        .collect();
    let mut seen: HashSet<ElementSet> = found.iter().cloned().collect();
    loop {
        let mut fresh = Vec::new();
        for a in &found {
            for b in &found {
                for k in 0..top.max(0) {
                    if glues(c, a, k, b) {
                        let u = a.union(b);
                        if !seen.contains(&u) {
                            seen.insert(u.clone());
                            fresh.push(u);
                        }
                    }
                }
            }
        }
        if fresh.is_empty() {
            return seen;
        }
        found.extend(fresh);
    }
}
