use crate::error::{Error, Result};
use crate::poset::{Complex, Sign};
use crate::set::ElementSet;
use rustc_hash::FxHashMap as HashMap;
use std::fmt;

/// Search limits for the memoized recognizers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Total memo entries per oracle.
    pub memo_entries: usize,
    /// Largest number of maximal elements whose arbitrary partitions are searched
    /// by the Steiner and dividability recognizers.
    pub max_maximal: usize,
    /// Composites tried by molecule enumeration.
    pub composites: usize,
}

/// Environment variable replacing the memo and composite limits.
pub const BUDGET_ENV: &str = "CDC_BUDGET";

impl Default for Budget {
    /// Built-in limits, unless `CDC_BUDGET` holds a positive integer.
    fn default() -> Self {
        match std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            Some(n) if n > 0 => Budget::scaled(n),
            _ => Budget::builtin(),
        }
    }
}

impl Budget {
    /// Limits used when the environment sets none.
    pub fn builtin() -> Self {
        Budget {
            memo_entries: 1 << 20,
            max_maximal: 16,
            composites: 100_000,
        }
    }

    /// Budget with memo and composite limits replaced by `n`.
    pub fn scaled(n: usize) -> Self {
        Budget {
            memo_entries: n,
            composites: n,
            ..Budget::builtin()
        }
    }
}

/// Why a subset is not a constructible molecule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refusal {
    Empty,
    NotClosed,
    /// A 0-dimensional subset with more than one point.
    SeveralPoints,
    NotPure,
    BoundaryNotMolecule {
        sign: Sign,
        dim: isize,
        of: Option<String>,
    },
    NotGlobular {
        of: String,
    },
    NoValidSplit,
}

impl fmt::Display for Refusal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refusal::Empty => f.write_str("empty subset"),
            Refusal::NotClosed => f.write_str("subset is not closed"),
            Refusal::SeveralPoints => f.write_str("0-dimensional subset with several points"),
            Refusal::NotPure => f.write_str("subset is not pure"),
            Refusal::BoundaryNotMolecule { sign, dim, of } => write!(
                f,
                "∂{}{} not a {}-molecule",
                sign.superscript(),
                of.as_deref().unwrap_or("U"),
                dim
            ),
            Refusal::NotGlobular { of } => write!(f, "boundaries of {of} are not globular"),
            Refusal::NoValidSplit => f.write_str("no valid split"),
        }
    }
}

/// A decomposition `U = first ∪ second` accepted by the split conditions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Split {
    pub first: ElementSet,
    pub second: ElementSet,
}

/// Partitions of the maximal elements of one set that may be splits.
struct Candidates {
    maxes: Vec<usize>,
    /// Bit `j` set when `maxes[j]` is in the first half.
    masks: Vec<u64>,
    /// Built when first needed.
    splits: Vec<Option<Split>>,
    input: ElementSet,
    output: ElementSet,
    /// Split conditions, decided on demand.
    accepted: Vec<Option<bool>>,
}

impl Candidates {
    fn split(&mut self, c: &Complex, i: usize) -> &Split {
        let (mask, maxes) = (self.masks[i], &self.maxes);
        self.splits[i].get_or_insert_with(|| {
            let part = |inside: bool| {
                let chosen = (0..maxes.len())
                    .filter(|&j| (mask & (1 << j) != 0) == inside)
                    .map(|j| maxes[j]);
                c.closure(&ElementSet::from_indices(c.len(), chosen))
            };
            Split {
                first: part(true),
                second: part(false),
            }
        })
    }
}

/// A binary certificate of constructibility.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MergerTree {
    pub node: ElementSet,
    pub children: Option<Box<(MergerTree, MergerTree)>>,
}

impl MergerTree {
    pub fn leaf(node: ElementSet) -> Self {
        MergerTree {
            node,
            children: None,
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_none()
    }

    /// All node subsets, root first.
    pub fn nodes(&self) -> Vec<&ElementSet> {
        let mut out = vec![&self.node];
        if let Some(ch) = &self.children {
            out.extend(ch.0.nodes());
            out.extend(ch.1.nodes());
        }
        out
    }

    pub fn leaves(&self) -> usize {
        match &self.children {
            None => 1,
            Some(ch) => ch.0.leaves() + ch.1.leaves(),
        }
    }

    pub fn to_json(&self, c: &Complex) -> serde_json::Value {
        let mut obj = serde_json::json!({ "node": c.sorted_ids(&self.node) });
        if let Some(ch) = &self.children {
            obj["children"] = serde_json::json!([ch.0.to_json(c), ch.1.to_json(c)]);
        }
        obj
    }
}

/// Why a complex is not a constructible directed complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplexWitness {
    NotThin(String),
    NotAtom { element: String, refusal: Refusal },
}

impl fmt::Display for ComplexWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexWitness::NotThin(i) => write!(f, "interval {i} is not an oriented diamond"),
            ComplexWitness::NotAtom { element, refusal } => {
                write!(f, "closure of {element} is not an atom: {refusal}")
            }
        }
    }
}

/// Memoized recognizer for constructible molecules and the submolecule order
/// inside one host complex.
pub struct MoleculeOracle<'c> {
    c: &'c Complex,
    budget: Budget,
    thin_violation: Option<String>,
    verdicts: HashMap<ElementSet, Option<Refusal>>,
    splits: HashMap<ElementSet, Candidates>,
    subs: HashMap<(ElementSet, ElementSet), bool>,
}

impl<'c> MoleculeOracle<'c> {
    pub fn new(c: &'c Complex) -> Self {
        Self::with_budget(c, Budget::default())
    }

    pub fn with_budget(c: &'c Complex, budget: Budget) -> Self {
        let thin_violation = c.thinness_violation().map(|v| c.describe_violation(&v));
        MoleculeOracle {
            c,
            budget,
            thin_violation,
            verdicts: HashMap::default(),
            splits: HashMap::default(),
            subs: HashMap::default(),
        }
    }

    pub fn complex(&self) -> &'c Complex {
        self.c
    }

    fn require_thin(&self) -> Result<()> {
        match &self.thin_violation {
            Some(v) => Err(Error::HostNotThin(v.clone())),
            None => Ok(()),
        }
    }

    fn charge(&self) -> Result<()> {
        if self.verdicts.len() + self.splits.len() + self.subs.len() >= self.budget.memo_entries {
            return Err(Error::BudgetExceeded(format!(
                "more than {} memo entries",
                self.budget.memo_entries
            )));
        }
        Ok(())
    }

    /// `None` when `u` is a constructible molecule, otherwise the reason it is not.
    pub fn refusal(&mut self, u: &ElementSet) -> Result<Option<Refusal>> {
        self.require_thin()?;
        if !self.c.is_closed(u) {
            return Ok(Some(Refusal::NotClosed));
        }
        self.verdict(u)
    }

    pub fn is_molecule(&mut self, u: &ElementSet) -> Result<bool> {
        Ok(self.refusal(u)?.is_none())
    }

    fn verdict(&mut self, u: &ElementSet) -> Result<Option<Refusal>> {
        if let Some(v) = self.verdicts.get(u) {
            return Ok(v.clone());
        }
        let v = self.compute_verdict(u)?;
        self.charge()?;
        self.verdicts.insert(u.clone(), v.clone());
        Ok(v)
    }

    fn compute_verdict(&mut self, u: &ElementSet) -> Result<Option<Refusal>> {
        let c = self.c;
        if u.is_empty() {
            return Ok(Some(Refusal::Empty));
        }
        let n = c.dim_of(u);
        if n == 0 {
            return Ok((u.len() > 1).then_some(Refusal::SeveralPoints));
        }
        if !c.is_pure(u) {
            return Ok(Some(Refusal::NotPure));
        }
        let maxes = c.maximal(u);
        let top = (maxes.len() == 1).then(|| c.id(maxes.first().unwrap()).to_string());
        for sign in Sign::BOTH {
            let b = c.pure_face_boundary(u, sign);
            if c.dim_of(&b) != n - 1 || self.verdict(&b)?.is_some() {
                return Ok(Some(Refusal::BoundaryNotMolecule {
                    sign,
                    dim: n - 1,
                    of: top,
                }));
            }
        }
        if let Some(top) = top {
            if !c.check_globularity(u) {
                return Ok(Some(Refusal::NotGlobular { of: top }));
            }
            return Ok(None);
        }
        if n == 1 {
            return Ok(self
                .path_edges(u)
                .is_none()
                .then_some(Refusal::NoValidSplit));
        }
        Ok(self
            .first_split(u)?
            .is_none()
            .then_some(Refusal::NoValidSplit))
    }

    /// The edges of a 1-dimensional `u` in flow order, if `u` is a directed path
    /// from its input vertex to its output vertex.
    fn path_edges(&self, u: &ElementSet) -> Option<Vec<usize>> {
        let c = self.c;
        let source = c.pure_face_boundary(u, Sign::Minus);
        let target = c.pure_face_boundary(u, Sign::Plus);
        if source.len() != 1 || target.len() != 1 {
            return None;
        }
        let edges: Vec<usize> = u.iter().filter(|&x| c.dim(x) == 1).collect();
        let mut out_edge: HashMap<usize, usize> = HashMap::default();
        for &e in &edges {
            for &(v, s) in c.faces(e) {
                if s == Sign::Minus && out_edge.insert(v, e).is_some() {
                    return None;
                }
            }
        }
        let end = target.first().unwrap();
        let mut at = source.first().unwrap();
        let mut order = Vec::with_capacity(edges.len());
        while at != end {
            let e = *out_edge.get(&at)?;
            if order.len() == edges.len() {
                return None;
            }
            order.push(e);
            at = c.faces(e).iter().find(|&&(_, s)| s == Sign::Plus)?.0;
        }
        (order.len() == edges.len()).then_some(order)
    }

    /// Candidate splits of `u`, assumed pure with constructible boundaries.
    fn candidates(&mut self, u: &ElementSet) -> Result<Candidates> {
        if let Some(t) = self.splits.remove(u) {
            return Ok(t);
        }
        let c = self.c;
        let n = c.dim_of(u);
        let mut t = Candidates {
            maxes: c.maximal(u).to_vec(),
            masks: Vec::new(),
            splits: Vec::new(),
            input: c.pure_face_boundary(u, Sign::Minus),
            output: c.pure_face_boundary(u, Sign::Plus),
            accepted: Vec::new(),
        };
        if n == 1 {
            if let Some(order) = self.path_edges(u) {
                for i in 1..order.len() {
                    let first = c.closure(&ElementSet::from_indices(
                        c.len(),
                        order[..i].iter().copied(),
                    ));
                    let second = c.closure(&ElementSet::from_indices(
                        c.len(),
                        order[i..].iter().copied(),
                    ));
                    let mask = t
                        .maxes
                        .iter()
                        .enumerate()
                        .filter(|(_, m)| first.contains(**m))
                        .fold(0, |a, (j, _)| a | 1 << j);
                    t.masks.push(mask);
                    t.splits.push(Some(Split { first, second }));
                    t.accepted.push(Some(true));
                }
            }
        } else if n > 1 && t.maxes.len() >= 2 {
            let k = t.maxes.len();
            if k > 64 {
                return Err(Error::BudgetExceeded(format!(
                    "{k} maximal elements exceed the split-search width of 64"
                )));
            }
            t.masks = first_part_masks(c, &t.maxes, self.budget.memo_entries)?;
            t.splits = vec![None; t.masks.len()];
            t.accepted = vec![None; t.masks.len()];
        }
        self.charge()?;
        Ok(t)
    }

    /// Decides candidate `i` of `t`, a table for `u`, caching the answer.
    fn decide(&mut self, u: &ElementSet, t: &mut Candidates, i: usize) -> Result<bool> {
        if let Some(b) = t.accepted[i] {
            return Ok(b);
        }
        let s = t.split(self.c, i).clone();
        let b = self.accepts_split(&s.first, &s.second, self.c.dim_of(u), &t.input, &t.output)?;
        t.accepted[i] = Some(b);
        Ok(b)
    }

    /// Runs `f` on the candidate table of `u`, then puts it back in the memo.
    ///
    /// Recursion only ever reaches strictly smaller sets, so the table is never
    /// needed while it is out.
    fn with_candidates<T>(
        &mut self,
        u: &ElementSet,
        f: impl FnOnce(&mut Self, &mut Candidates) -> Result<T>,
    ) -> Result<T> {
        let mut t = self.candidates(u)?;
        let out = f(self, &mut t);
        self.splits.insert(u.clone(), t);
        out
    }

    fn first_split(&mut self, u: &ElementSet) -> Result<Option<Split>> {
        self.with_candidates(u, |o, t| {
            for i in 0..t.splits.len() {
                if o.decide(u, t, i)? {
                    return Ok(Some(t.split(o.c, i).clone()));
                }
            }
            Ok(None)
        })
    }

    /// All accepted splits of `u`.
    fn splits_of(&mut self, u: &ElementSet) -> Result<Vec<Split>> {
        self.with_candidates(u, |o, t| {
            let mut out = Vec::new();
            for i in 0..t.splits.len() {
                if o.decide(u, t, i)? {
                    out.push(t.split(o.c, i).clone());
                }
            }
            Ok(out)
        })
    }

    fn accepts_split(
        &mut self,
        first: &ElementSet,
        second: &ElementSet,
        n: isize,
        input: &ElementSet,
        output: &ElementSet,
    ) -> Result<bool> {
        let c = self.c;
        let meet = first.intersection(second);
        if meet.is_empty() || c.dim_of(&meet) != n - 1 {
            return Ok(false);
        }
        let out1 = c.pure_face_boundary(first, Sign::Plus);
        let in2 = c.pure_face_boundary(second, Sign::Minus);
        if meet != out1.intersection(&in2) {
            return Ok(false);
        }
        let in1 = c.pure_face_boundary(first, Sign::Minus);
        let out2 = c.pure_face_boundary(second, Sign::Plus);
        if !in1.is_subset(input) || !out2.is_subset(output) {
            return Ok(false);
        }
        if self.verdict(first)?.is_some()
            || self.verdict(second)?.is_some()
            || self.verdict(&meet)?.is_some()
        {
            return Ok(false);
        }
        Ok(self.sub(&in1, input)?
            && self.sub(&out2, output)?
            && self.sub(&meet, &out1)?
            && self.sub(&meet, &in2)?)
    }

    /// `v ⊑ u` for constructible molecules `v ⊆ u` of equal dimension.
    fn sub(&mut self, v: &ElementSet, u: &ElementSet) -> Result<bool> {
        if v == u {
            return Ok(true);
        }
        if !v.is_subset(u) || self.c.maximal(u).len() == 1 {
            return Ok(false);
        }
        let key = (v.clone(), u.clone());
        if let Some(&b) = self.subs.get(&key) {
            return Ok(b);
        }
        let result = self.with_candidates(u, |o, t| {
            let inside = t
                .maxes
                .iter()
                .enumerate()
                .filter(|(_, &m)| v.contains(m))
                .fold(0u64, |a, (j, _)| a | 1 << j);
            for i in 0..t.splits.len() {
                let mask = t.masks[i];
                // v is the closure of its maximal elements, so this places it on one side
                let in_first = match (inside & !mask == 0, inside & mask == 0) {
                    (true, _) => true,
                    (_, true) => false,
                    _ => continue,
                };
                if !o.decide(u, t, i)? {
                    continue;
                }
                let s = t.split(o.c, i);
                let side = if in_first {
                    s.first.clone()
                } else {
                    s.second.clone()
                };
                if o.sub(v, &side)? {
                    return Ok(true);
                }
            }
            Ok(false)
        })?;
        self.charge()?;
        self.subs.insert(key, result);
        Ok(result)
    }

    /// Decides `v ⊑ u`; both must be constructible molecules of the same dimension.
    pub fn is_submolecule(&mut self, v: &ElementSet, u: &ElementSet) -> Result<bool> {
        self.require_thin()?;
        for (name, s) in [("V", v), ("U", u)] {
            if let Some(r) = self.refusal(s)? {
                return Err(Error::PreconditionFailed(format!(
                    "{name} is not a constructible molecule: {r}"
                )));
            }
        }
        let (dv, du) = (self.c.dim_of(v), self.c.dim_of(u));
        if dv != du {
            return Err(Error::DimensionMismatch(format!(
                "dim V = {dv}, dim U = {du}"
            )));
        }
        self.sub(v, u)
    }

    /// All accepted splits of a constructible molecule.
    pub fn splits(&mut self, u: &ElementSet) -> Result<Vec<Split>> {
        if self.refusal(u)?.is_some() || self.c.maximal(u).len() == 1 {
            return Ok(Vec::new());
        }
        self.splits_of(u)
    }

    /// Checks a proposed decomposition against the split conditions.
    pub fn is_valid_split(
        &mut self,
        u: &ElementSet,
        first: &ElementSet,
        second: &ElementSet,
    ) -> Result<bool> {
        self.require_thin()?;
        let c = self.c;
        if first.union(second) != *u || !c.is_closed(first) || !c.is_closed(second) {
            return Ok(false);
        }
        if self.verdict(u)?.is_some() {
            return Ok(false);
        }
        let n = c.dim_of(u);
        if c.dim_of(first) != n || c.dim_of(second) != n || !c.is_pure(first) || !c.is_pure(second)
        {
            return Ok(false);
        }
        let input = c.pure_face_boundary(u, Sign::Minus);
        let output = c.pure_face_boundary(u, Sign::Plus);
        self.accepts_split(first, second, n, &input, &output)
    }

    /// A merger tree for `u`, or the reason there is none.
    pub fn certify(&mut self, u: &ElementSet) -> Result<std::result::Result<MergerTree, Refusal>> {
        if let Some(r) = self.refusal(u)? {
            return Ok(Err(r));
        }
        Ok(Ok(self.tree(u)?))
    }

    fn tree(&mut self, u: &ElementSet) -> Result<MergerTree> {
        if self.c.maximal(u).len() == 1 {
            return Ok(MergerTree::leaf(u.clone()));
        }
        let split = self.first_split(u)?.expect("certified molecules split");
        let left = self.tree(&split.first)?;
        let right = self.tree(&split.second)?;
        Ok(MergerTree {
            node: u.clone(),
            children: Some(Box::new((left, right))),
        })
    }

    /// Number of distinct merger trees of a constructible molecule.
    pub fn count_merger_trees(&mut self, u: &ElementSet) -> Result<u128> {
        if self.refusal(u)?.is_some() {
            return Ok(0);
        }
        self.count_trees(u)
    }

    fn count_trees(&mut self, u: &ElementSet) -> Result<u128> {
        if self.c.maximal(u).len() == 1 {
            return Ok(1);
        }
        let mut total = 0u128;
        for s in self.splits_of(u)?.iter() {
            total += self.count_trees(&s.first)? * self.count_trees(&s.second)?;
        }
        Ok(total)
    }

    /// Up to `limit` distinct merger trees.
    pub fn merger_trees(&mut self, u: &ElementSet, limit: usize) -> Result<Vec<MergerTree>> {
        if self.refusal(u)?.is_some() {
            return Ok(Vec::new());
        }
        self.all_trees(u, limit)
    }

    fn all_trees(&mut self, u: &ElementSet, limit: usize) -> Result<Vec<MergerTree>> {
        if self.c.maximal(u).len() == 1 {
            return Ok(vec![MergerTree::leaf(u.clone())]);
        }
        let mut out = Vec::new();
        for s in self.splits_of(u)?.iter() {
            let lefts = self.all_trees(&s.first, limit)?;
            let rights = self.all_trees(&s.second, limit)?;
            for l in &lefts {
                for r in &rights {
                    if out.len() >= limit {
                        return Ok(out);
                    }
                    out.push(MergerTree {
                        node: u.clone(),
                        children: Some(Box::new((l.clone(), r.clone()))),
                    });
                }
            }
        }
        Ok(out)
    }

    /// Oriented thin, with every element closure an atom.
    pub fn directed_complex_witness(&mut self) -> Result<Option<ComplexWitness>> {
        if let Some(v) = &self.thin_violation {
            return Ok(Some(ComplexWitness::NotThin(v.clone())));
        }
        for x in 0..self.c.len() {
            if let Some(refusal) = self.verdict(&self.c.closure_of(x))? {
                return Ok(Some(ComplexWitness::NotAtom {
                    element: self.c.id(x).to_string(),
                    refusal,
                }));
            }
        }
        Ok(None)
    }
}

/// Masks of the proper nonempty subsets of `maxes` that can be the first half of a split.
///
/// A top-dimensional face that is an output of `a` and an input of `b` lies in
/// both halves but outside `∂⁺` of the first whenever `b` is first and `a` second,
/// so the first half must contain every such `a` along with `b`.
fn first_part_masks(c: &Complex, maxes: &[usize], limit: usize) -> Result<Vec<u64>> {
    let k = maxes.len();
    let position: HashMap<usize, usize> = maxes.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    // before[j]: maxes feeding an input face of maxes[j], transitively
    let mut before = vec![0u64; k];
    for (i, &a) in maxes.iter().enumerate() {
        for &(f, s) in c.faces(a) {
            if s != Sign::Plus {
                continue;
            }
            for &(b, t) in c.cofaces(f) {
                if let (Sign::Minus, Some(&j)) = (t, position.get(&b)) {
                    before[j] |= 1 << i;
                }
            }
        }
    }
    for m in 0..k {
        for j in 0..k {
            if before[j] & (1 << m) != 0 {
                before[j] |= before[m];
            }
        }
    }
    let mut after = vec![0u64; k];
    for j in 0..k {
        for i in 0..k {
            if before[j] & (1 << i) != 0 {
                after[i] |= 1 << j;
            }
        }
    }
    let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    let mut out = Vec::new();
    fn go(
        i: usize,
        inside: u64,
        outside: u64,
        before: &[u64],
        after: &[u64],
        limit: usize,
        out: &mut Vec<u64>,
    ) {
        if out.len() > limit {
            return;
        }
        if i == before.len() {
            out.push(inside);
            return;
        }
        let bit = 1u64 << i;
        if (inside | outside) & bit != 0 {
            return go(i + 1, inside, outside, before, after, limit, out);
        }
        // propagation over the transitive relation leaves no dead ends
        go(
            i + 1,
            inside,
            outside | bit | after[i],
            before,
            after,
            limit,
            out,
        );
        go(
            i + 1,
            inside | bit | before[i],
            outside,
            before,
            after,
            limit,
            out,
        );
    }
    go(0, 0, 0, &before, &after, limit, &mut out);
    if out.len() > limit {
        return Err(Error::BudgetExceeded(format!(
            "more than {limit} candidate splits"
        )));
    }
    out.retain(|&m| m != 0 && m != full);
    out.sort_unstable();
    Ok(out)
}

/// Merger tree of `u` in `c`, or the reason `u` is not a constructible molecule.
pub fn certify_constructible(
    c: &Complex,
    u: &ElementSet,
) -> Result<std::result::Result<MergerTree, Refusal>> {
    MoleculeOracle::new(c).certify(u)
}

pub fn is_constructible_molecule(c: &Complex, u: &ElementSet) -> Result<bool> {
    MoleculeOracle::new(c).is_molecule(u)
}

pub fn is_constructible_submolecule(c: &Complex, v: &ElementSet, u: &ElementSet) -> Result<bool> {
    MoleculeOracle::new(c).is_submolecule(v, u)
}

/// A constructible molecule with a greatest element.
pub fn is_constructible_atom(c: &Complex, u: &ElementSet) -> Result<bool> {
    Ok(c.maximal(u).len() == 1 && is_constructible_molecule(c, u)?)
}

/// `None` when `c` is a constructible directed complex, otherwise a witness.
pub fn constructible_directed_complex_witness(c: &Complex) -> Result<Option<ComplexWitness>> {
    MoleculeOracle::new(c).directed_complex_witness()
}

pub fn is_constructible_directed_complex(c: &Complex) -> Result<bool> {
    Ok(constructible_directed_complex_witness(c)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn globe_is_an_atom_leaf() {
        let c = fixtures::globe(3);
        let t = certify_constructible(&c, &c.all()).unwrap().unwrap();
        assert!(t.is_leaf());
    }

    #[test]
    fn nonex9_is_refused_with_witness() {
        let c = fixtures::nonex9();
        assert!(c.is_oriented_thin());
        let r = certify_constructible(&c, &c.all()).unwrap().unwrap_err();
        assert_eq!(r.to_string(), "∂⁻x not a 1-molecule");
        match constructible_directed_complex_witness(&c).unwrap() {
            Some(ComplexWitness::NotAtom { element, .. }) => assert_eq!(element, "x"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn two_merger_trees() {
        let c = fixtures::three_cell_diagram();
        let mut o = MoleculeOracle::new(&c);
        assert_eq!(o.count_merger_trees(&c.all()).unwrap(), 2);
        let trees = o.merger_trees(&c.all(), 10).unwrap();
        assert_eq!(trees.len(), 2);
        assert_ne!(trees[0], trees[1]);
    }

    #[test]
    fn submolecules_of_path() {
        let c = fixtures::path(2);
        let e1 = c.closure_of_ids(&["e1"]).unwrap();
        assert!(is_constructible_submolecule(&c, &e1, &c.all()).unwrap());
        assert!(is_constructible_submolecule(&c, &c.all(), &c.all()).unwrap());
    }

    #[test]
    fn submolecule_requires_equal_dimension() {
        let c = fixtures::globe(2);
        let b = c.face_boundary(&c.all(), Sign::Minus);
        assert!(matches!(
            is_constructible_submolecule(&c, &b, &c.all()),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn generators_are_constructible_directed_complexes() {
        assert!(is_constructible_directed_complex(&fixtures::cube(3)).unwrap());
        assert!(is_constructible_directed_complex(&fixtures::simplex(3)).unwrap());
        assert!(is_constructible_directed_complex(&fixtures::two_points()).unwrap());
    }

    #[test]
    fn host_must_be_thin() {
        let c = fixtures::non_thin_disc();
        assert!(matches!(
            certify_constructible(&c, &c.all()),
            Err(Error::HostNotThin(_))
        ));
    }

    #[test]
    fn merger_tree_json_lists_sorted_ids() {
        let c = fixtures::path(2);
        let t = certify_constructible(&c, &c.all()).unwrap().unwrap();
        let j = t.to_json(&c);
        assert_eq!(j["node"].as_array().unwrap().len(), 5);
        assert_eq!(j["children"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn split_candidates_respect_flow() {
        // a path of three 2-cells: only prefixes can come first
        let c = crate::constructions::paste(&fixtures::globe(2), 1, &fixtures::globe(2))
            .unwrap()
            .complex;
        let c = crate::constructions::paste(&c, 1, &fixtures::globe(2))
            .unwrap()
            .complex;
        let maxes = c.maximal(&c.all()).to_vec();
        let masks = first_part_masks(&c, &maxes, 100).unwrap();
        assert_eq!(masks.len(), 2);
        let mut o = MoleculeOracle::new(&c);
        assert_eq!(o.splits(&c.all()).unwrap().len(), 2);
        assert!(matches!(
            first_part_masks(&c, &maxes, 1),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn budget_cap_is_an_error() {
        let c = fixtures::cube(3);
        let mut o = MoleculeOracle::with_budget(
            &c,
            Budget {
                memo_entries: 3,
                ..Budget::default()
            },
        );
        assert!(matches!(
            o.is_molecule(&c.all()),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
