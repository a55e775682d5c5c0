//! Molecules glued along whole `k`-boundaries, `#ₖ` composition, and the
//! finite partial ω-category they form inside a complex.

use crate::error::{Error, Result};
use crate::molecules::Budget;
use crate::poset::{Complex, Sign};
use crate::set::ElementSet;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::rc::Rc;

/// A proper decomposition `node = first #ₖ second`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub k: usize,
    pub first: ElementSet,
    pub second: ElementSet,
}

/// Certificate that a closed subset is a molecule: atoms at the leaves,
/// `#ₖ` at the branches.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompositionTree {
    pub node: ElementSet,
    pub branch: Option<Box<(usize, CompositionTree, CompositionTree)>>,
}

impl CompositionTree {
    pub fn leaf(node: ElementSet) -> Self {
        CompositionTree { node, branch: None }
    }

    pub fn is_leaf(&self) -> bool {
        self.branch.is_none()
    }

    /// All vertex labels, root first.
    pub fn nodes(&self) -> Vec<&ElementSet> {
        let mut out = vec![&self.node];
        if let Some(b) = &self.branch {
            out.extend(b.1.nodes());
            out.extend(b.2.nodes());
        }
        out
    }

    pub fn leaves(&self) -> usize {
        match &self.branch {
            None => 1,
            Some(b) => b.1.leaves() + b.2.leaves(),
        }
    }

    /// Re-checks every branch against the gluing condition.
    pub fn verify(&self, c: &Complex) -> bool {
        match &self.branch {
            None => c.maximal(&self.node).len() == 1,
            Some(b) => {
                let (k, l, r) = (&b.0, &b.1, &b.2);
                l.node.union(&r.node) == self.node
                    && glues(c, &l.node, *k, &r.node)
                    && l.verify(c)
                    && r.verify(c)
            }
        }
    }

    pub fn to_json(&self, c: &Complex) -> serde_json::Value {
        match &self.branch {
            None => serde_json::json!({ "atom": c.sorted_ids(&self.node) }),
            Some(b) => serde_json::json!({
                "node": c.sorted_ids(&self.node),
                "k": b.0,
                "left": b.1.to_json(c),
                "right": b.2.to_json(c),
            }),
        }
    }
}

/// Why a subset is not a molecule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoleculeRefusal {
    Empty,
    NotClosed,
    NoDecomposition,
}

impl fmt::Display for MoleculeRefusal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoleculeRefusal::Empty => "empty subset",
            MoleculeRefusal::NotClosed => "subset is not closed",
            MoleculeRefusal::NoDecomposition => {
                "not an atom and no #ₖ decomposition into molecules"
            }
        })
    }
}

/// `u1 ∩ u2 = ∂ₖ⁺u1 = ∂ₖ⁻u2`.
pub fn glues(c: &Complex, u1: &ElementSet, k: usize, u2: &ElementSet) -> bool {
    let k = k as isize;
    let meet = u1.intersection(u2);
    meet == c.boundary(u1, Sign::Plus, k) && meet == c.boundary(u2, Sign::Minus, k)
}

/// Memoized molecule recognizer over one complex.
pub struct SteinerOracle<'c> {
    c: &'c Complex,
    budget: Budget,
    verdicts: HashMap<ElementSet, bool>,
    candidates: HashMap<ElementSet, Rc<Vec<Decomposition>>>,
}

impl<'c> SteinerOracle<'c> {
    pub fn new(c: &'c Complex) -> Self {
        Self::with_budget(c, Budget::default())
    }

    pub fn with_budget(c: &'c Complex, budget: Budget) -> Self {
        SteinerOracle {
            c,
            budget,
            verdicts: HashMap::new(),
            candidates: HashMap::new(),
        }
    }

    fn charge(&self) -> Result<()> {
        if self.verdicts.len() + self.candidates.len() >= self.budget.memo_entries {
            return Err(Error::BudgetExceeded(format!(
                "molecule memo exceeded {} entries",
                self.budget.memo_entries
            )));
        }
        Ok(())
    }

    /// Splits of `u` satisfying the gluing condition, parts not yet checked.
    ///
    /// The maximal elements above dimension `k` are partitioned into `A`, `B`;
    /// the rest lie in both parts, and the parts are then forced to be
    /// `cl(A∪L) ∪ ∂ₖ⁻cl(B∪L)` and `cl(B∪L) ∪ ∂ₖ⁺cl(A∪L)`.
    fn candidates_of(&mut self, u: &ElementSet) -> Result<Rc<Vec<Decomposition>>> {
        if let Some(found) = self.candidates.get(u) {
            return Ok(found.clone());
        }
        let c = self.c;
        let maxes = c.maximal(u).to_vec();
        let mut found = Vec::new();
        for k in 0..c.dim_of(u).max(0) as usize {
            let (high, low): (Vec<usize>, Vec<usize>) = maxes.iter().partition(|&&x| c.dim(x) > k);
            let m = high.len();
            if m < 2 {
                continue;
            }
            if m > self.budget.max_maximal {
                return Err(Error::BudgetExceeded(format!(
                    "{m} maximal elements exceed the split-search cap of {}",
                    self.budget.max_maximal
                )));
            }
            for mask in 1u64..(1u64 << m) - 1 {
                let pick = |side: bool| {
                    let chosen = (0..m)
                        .filter(|&i| (mask & (1 << i) != 0) == side)
                        .map(|i| high[i]);
                    c.closure(&ElementSet::from_indices(
                        c.len(),
                        chosen.chain(low.iter().copied()),
                    ))
                };
                let (ca, cb) = (pick(true), pick(false));
                let first = ca.union(&c.boundary(&cb, Sign::Minus, k as isize));
                let second = cb.union(&c.boundary(&ca, Sign::Plus, k as isize));
                if first != *u
                    && second != *u
                    && first.union(&second) == *u
                    && glues(c, &first, k, &second)
                {
                    found.push(Decomposition { k, first, second });
                }
            }
        }
        self.charge()?;
        let found = Rc::new(found);
        self.candidates.insert(u.clone(), found.clone());
        Ok(found)
    }

    fn verdict(&mut self, u: &ElementSet) -> Result<bool> {
        if let Some(&v) = self.verdicts.get(u) {
            return Ok(v);
        }
        let v = if self.c.maximal(u).len() == 1 {
            true
        } else {
            let mut ok = false;
            for d in self.candidates_of(u)?.iter() {
                if self.verdict(&d.first)? && self.verdict(&d.second)? {
                    ok = true;
                    break;
                }
            }
            ok
        };
        self.charge()?;
        self.verdicts.insert(u.clone(), v);
        Ok(v)
    }

    fn refusal(&mut self, u: &ElementSet) -> Result<Option<MoleculeRefusal>> {
        if u.is_empty() {
            return Ok(Some(MoleculeRefusal::Empty));
        }
        if !self.c.is_closed(u) {
            return Ok(Some(MoleculeRefusal::NotClosed));
        }
        Ok((!self.verdict(u)?).then_some(MoleculeRefusal::NoDecomposition))
    }

    pub fn is_molecule(&mut self, u: &ElementSet) -> Result<bool> {
        Ok(self.refusal(u)?.is_none())
    }

    /// All proper decompositions of `u` into two molecules.
    pub fn decompositions(&mut self, u: &ElementSet) -> Result<Vec<Decomposition>> {
        if !self.is_molecule(u)? || self.c.maximal(u).len() == 1 {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for d in self.candidates_of(u)?.iter() {
            if self.verdict(&d.first)? && self.verdict(&d.second)? {
                out.push(d.clone());
            }
        }
        Ok(out)
    }

    pub fn certify(
        &mut self,
        u: &ElementSet,
    ) -> Result<std::result::Result<CompositionTree, MoleculeRefusal>> {
        if let Some(r) = self.refusal(u)? {
            return Ok(Err(r));
        }
        Ok(Ok(self
            .tree_through(u, None)?
            .expect("molecules have trees")))
    }

    /// `v ⊴ u`: `v` is a vertex of some composition tree of `u`.
    pub fn is_submolecule(&mut self, v: &ElementSet, u: &ElementSet) -> Result<bool> {
        Ok(self.is_molecule(u)? && self.tree_through(u, Some(v))?.is_some())
    }

    /// A composition tree of a molecule `u`, passing through `v` when given.
    pub fn tree_through(
        &mut self,
        u: &ElementSet,
        v: Option<&ElementSet>,
    ) -> Result<Option<CompositionTree>> {
        let mut reach = HashMap::new();
        self.build(u, v, &mut reach)
    }

    fn build(
        &mut self,
        u: &ElementSet,
        v: Option<&ElementSet>,
        seen: &mut HashMap<ElementSet, bool>,
    ) -> Result<Option<CompositionTree>> {
        let target_here = v.is_none_or(|v| v == u);
        if target_here {
            return self.any_tree(u).map(Some);
        }
        let v = v.expect("checked above");
        if !v.is_subset(u) || seen.get(u) == Some(&false) {
            return Ok(None);
        }
        for d in self.decompositions(u)? {
            let (found_left, other) = if v.is_subset(&d.first) {
                (self.build(&d.first, Some(v), seen)?, &d.second)
            } else {
                (None, &d.second)
            };
            if let Some(left) = found_left {
                let right = self.any_tree(other)?;
                return Ok(Some(CompositionTree {
                    node: u.clone(),
                    branch: Some(Box::new((d.k, left, right))),
                }));
            }
            if v.is_subset(&d.second) {
                if let Some(right) = self.build(&d.second, Some(v), seen)? {
                    let left = self.any_tree(&d.first)?;
                    return Ok(Some(CompositionTree {
                        node: u.clone(),
                        branch: Some(Box::new((d.k, left, right))),
                    }));
                }
            }
        }
        seen.insert(u.clone(), false);
        Ok(None)
    }

    fn any_tree(&mut self, u: &ElementSet) -> Result<CompositionTree> {
        if self.c.maximal(u).len() == 1 {
            return Ok(CompositionTree::leaf(u.clone()));
        }
        let d = self
            .decompositions(u)?
            .into_iter()
            .next()
            .expect("molecule decomposes");
        let left = self.any_tree(&d.first)?;
        let right = self.any_tree(&d.second)?;
        Ok(CompositionTree {
            node: u.clone(),
            branch: Some(Box::new((d.k, left, right))),
        })
    }
}

/// Certifies `u` as a molecule.
pub fn certify_molecule(
    c: &Complex,
    u: &ElementSet,
) -> Result<std::result::Result<CompositionTree, MoleculeRefusal>> {
    SteinerOracle::new(c).certify(u)
}

pub fn is_molecule(c: &Complex, u: &ElementSet) -> Result<bool> {
    SteinerOracle::new(c).is_molecule(u)
}

/// `u1 #ₖ u2`, with the boundary laws of the composite checked.
pub fn compose(c: &Complex, u1: &ElementSet, k: usize, u2: &ElementSet) -> Result<ElementSet> {
    c.require_closed(u1)?;
    c.require_closed(u2)?;
    if !glues(c, u1, k, u2) {
        return Err(Error::NotComposable(format!(
            "{:?} ∩ {:?} is not ∂{k}⁺ of the first and ∂{k}⁻ of the second",
            c.sorted_ids(u1),
            c.sorted_ids(u2)
        )));
    }
    let u = u1.union(u2);
    let ki = k as isize;
    let lawful = c.boundary(&u, Sign::Minus, ki) == c.boundary(u1, Sign::Minus, ki)
        && c.boundary(&u, Sign::Plus, ki) == c.boundary(u2, Sign::Plus, ki)
        && (0..ki).all(|j| {
            Sign::BOTH.iter().all(|&a| {
                let b = c.boundary(&u, a, j);
                b == c.boundary(u1, a, j) && b == c.boundary(u2, a, j)
            })
        })
        && ((ki + 1)..c.dim_of(&u).max(0)).all(|j| {
            Sign::BOTH.iter().all(|&a| {
                let (b1, b2) = (c.boundary(u1, a, j), c.boundary(u2, a, j));
                c.boundary(&u, a, j) == b1.union(&b2) && glues(c, &b1, k, &b2)
            })
        });
    if !lawful {
        return Err(Error::InvariantViolated(format!(
            "boundary laws fail for the #{k} composite"
        )));
    }
    Ok(u)
}

/// The first element whose boundaries are not molecules or not globular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedComplexWitness {
    pub element: String,
    pub reason: String,
}

impl fmt::Display for DirectedComplexWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.element, self.reason)
    }
}

pub fn directed_complex_witness(c: &Complex) -> Result<Option<DirectedComplexWitness>> {
    let mut oracle = SteinerOracle::new(c);
    for x in 0..c.len() {
        let n = c.dim(x) as isize;
        if n == 0 {
            continue;
        }
        let witness = |reason: String| {
            Some(DirectedComplexWitness {
                element: c.id(x).to_string(),
                reason,
            })
        };
        let cl = c.closure_of(x);
        for b in Sign::BOTH {
            let face = c.element_boundary(x, b);
            if !oracle.is_molecule(&face)? {
                return Ok(witness(format!(
                    "∂{}{} is not a molecule",
                    b.superscript(),
                    c.id(x)
                )));
            }
            for a in Sign::BOTH {
                if n >= 2 && c.face_boundary(&face, a) != c.boundary(&cl, a, n - 2) {
                    return Ok(witness(format!(
                        "∂{}∂{}{} differs from ∂{}{}",
                        a.superscript(),
                        b.superscript(),
                        c.id(x),
                        a.superscript(),
                        c.id(x)
                    )));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_directed_complex(c: &Complex) -> Result<bool> {
    Ok(directed_complex_witness(c)?.is_none())
}

/// Result of [`enumerate_molecules`].
#[derive(Debug, Clone)]
pub struct Enumeration {
    /// Molecules in discovery order, each with one certificate.
    pub molecules: Vec<(ElementSet, CompositionTree)>,
    /// Set when the composite budget ran out before the closure was reached.
    pub truncated: bool,
    pub composites_tried: usize,
}

impl Enumeration {
    pub fn contains(&self, u: &ElementSet) -> bool {
        self.molecules.iter().any(|(m, _)| m == u)
    }
}

/// Closes the atoms of `c` under every defined `#ₖ`, breadth first.
pub fn enumerate_molecules(c: &Complex, budget: Budget) -> Enumeration {
    let mut molecules: Vec<(ElementSet, CompositionTree)> = Vec::new();
    let mut index: HashMap<ElementSet, usize> = HashMap::new();
    // (k, sign, boundary) -> molecules with that boundary
    let mut by_boundary: HashMap<(usize, Sign, ElementSet), Vec<usize>> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut tried = 0usize;
    let mut truncated = false;

    let mut add = |u: ElementSet,
                   tree: CompositionTree,
                   molecules: &mut Vec<(ElementSet, CompositionTree)>,
                   queue: &mut VecDeque<usize>| {
        if index.contains_key(&u) {
            return;
        }
        let id = molecules.len();
        index.insert(u.clone(), id);
        molecules.push((u, tree));
        queue.push_back(id);
    };
    for x in 0..c.len() {
        let cl = c.closure_of(x);
        add(
            cl.clone(),
            CompositionTree::leaf(cl),
            &mut molecules,
            &mut queue,
        );
    }
    'outer: while let Some(i) = queue.pop_front() {
        let u = molecules[i].0.clone();
        let n = c.dim_of(&u).max(0) as usize;
        for k in 0..n {
            for s in Sign::BOTH {
                by_boundary
                    .entry((k, s, c.boundary(&u, s, k as isize)))
                    .or_default()
                    .push(i);
            }
        }
        for k in 0..n {
            let out = c.boundary(&u, Sign::Plus, k as isize);
            let inp = c.boundary(&u, Sign::Minus, k as isize);
            let after: Vec<usize> = by_boundary
                .get(&(k, Sign::Minus, out))
                .cloned()
                .unwrap_or_default();
            let before: Vec<usize> = by_boundary
                .get(&(k, Sign::Plus, inp))
                .cloned()
                .unwrap_or_default();
            let pairs = after
                .into_iter()
                .map(|j| (i, j))
                .chain(before.into_iter().map(|j| (j, i)));
            for (a, b) in pairs {
                if tried >= budget.composites {
                    truncated = true;
                    break 'outer;
                }
                tried += 1;
                let (ua, ub) = (&molecules[a].0, &molecules[b].0);
                if ua.is_subset(ub) || ub.is_subset(ua) || !glues(c, ua, k, ub) {
                    continue;
                }
                let union = ua.union(ub);
                let tree = CompositionTree {
                    node: union.clone(),
                    branch: Some(Box::new((
                        k,
                        molecules[a].1.clone(),
                        molecules[b].1.clone(),
                    ))),
                };
                add(union, tree, &mut molecules, &mut queue);
            }
        }
    }
    Enumeration {
        molecules,
        truncated,
        composites_tried: tried,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn whisker_is_a_molecule() {
        let c = fixtures::whisk();
        let tree = certify_molecule(&c, &c.all()).unwrap().unwrap();
        let b = tree.branch.as_ref().unwrap();
        assert_eq!(b.0, 0);
        assert_eq!(c.sorted_ids(&b.1.node).len(), 5);
        assert_eq!(c.sorted_ids(&b.2.node), vec!["0+", "f", "w"]);
        assert!(tree.verify(&c));
    }

    #[test]
    fn nonex9_top_is_refused() {
        let c = fixtures::nonex9();
        let x = c.index("x").unwrap();
        assert!(!is_directed_complex(&c).unwrap());
        // the closure itself is an atom, but neither boundary is a molecule
        assert!(is_molecule(&c, &c.closure_of(x)).unwrap());
        assert_eq!(
            certify_molecule(&c, &c.element_boundary(x, Sign::Minus)).unwrap(),
            Err(MoleculeRefusal::NoDecomposition)
        );
    }

    #[test]
    fn composing_edges() {
        let c = fixtures::path(2);
        let e1 = c.closure_of_ids(&["e1"]).unwrap();
        let e2 = c.closure_of_ids(&["e2"]).unwrap();
        assert_eq!(compose(&c, &e1, 0, &e2).unwrap(), c.all());
        assert!(matches!(
            compose(&c, &e2, 0, &e1),
            Err(Error::NotComposable(_))
        ));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(
            enumerate_molecules(&fixtures::globe(2), Budget::default())
                .molecules
                .len(),
            5
        );
        assert_eq!(
            enumerate_molecules(&fixtures::path(2), Budget::default())
                .molecules
                .len(),
            6
        );
        assert_eq!(
            enumerate_molecules(&fixtures::point(), Budget::default())
                .molecules
                .len(),
            1
        );
    }

    #[test]
    fn enumeration_budget_flags_truncation() {
        let e = enumerate_molecules(&fixtures::path(3), Budget::scaled(2));
        assert!(e.truncated);
        assert_eq!(e.composites_tried, 2);
    }

    #[test]
    fn empty_and_open_subsets() {
        let c = fixtures::globe(1);
        assert_eq!(
            certify_molecule(&c, &c.empty_set()).unwrap(),
            Err(MoleculeRefusal::Empty)
        );
        let open = c.set_of_ids(&["1"]).unwrap();
        assert_eq!(
            certify_molecule(&c, &open).unwrap(),
            Err(MoleculeRefusal::NotClosed)
        );
    }

    #[test]
    fn submolecule_nodes() {
        let c = fixtures::path(3);
        let mut o = SteinerOracle::new(&c);
        let mid = c.closure_of_ids(&["e2"]).unwrap();
        let tree = o.tree_through(&c.all(), Some(&mid)).unwrap().unwrap();
        assert!(tree.nodes().contains(&&mid));
        assert!(o.is_submolecule(&mid, &c.all()).unwrap());
        let vertex = c.set_of_ids(&["v0"]).unwrap();
        assert!(!o.is_submolecule(&vertex, &c.all()).unwrap());
    }
}
