//! Substitution, simple mergers, reduction to atoms and the standard merger to the globe.

use crate::constructions::{pushout, Generator};
use crate::embedding::{find_isomorphism, Inclusion};
use crate::error::{Error, Result};
use crate::molecules::MoleculeOracle;
use crate::poset::{fresh_id, Complex, Sign};
use crate::set::ElementSet;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

/// A partial function between the element sets of two complexes.
#[derive(Debug, Clone)]
pub struct PartialMap {
    pub source: Arc<Complex>,
    pub target: Arc<Complex>,
    pub assignment: Vec<Option<usize>>,
}

impl PartialMap {
    pub fn identity(c: Arc<Complex>) -> PartialMap {
        let assignment = (0..c.len()).map(Some).collect();
        PartialMap {
            source: c.clone(),
            target: c,
            assignment,
        }
    }

    fn from_inclusion(source: Arc<Complex>, target: Arc<Complex>, inc: &Inclusion) -> PartialMap {
        let assignment = inc.map.iter().map(|&y| Some(y)).collect();
        PartialMap {
            source,
            target,
            assignment,
        }
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.assignment[x]
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &PartialMap) -> Result<PartialMap> {
        if *self.target != *next.source {
            return Err(Error::NotComposable("target and source differ".into()));
        }
        let assignment = self
            .assignment
            .iter()
            .map(|a| a.and_then(|y| next.assignment[y]))
            .collect();
        Ok(PartialMap {
            source: self.source.clone(),
            target: next.target.clone(),
            assignment,
        })
    }

    /// Elements of the source sent into `set`.
    pub fn preimage(&self, set: &ElementSet) -> ElementSet {
        ElementSet::from_indices(
            self.source.len(),
            (0..self.source.len()).filter(|&x| self.assignment[x].is_some_and(|y| set.contains(y))),
        )
    }

    pub fn image(&self, set: &ElementSet) -> ElementSet {
        ElementSet::from_indices(
            self.target.len(),
            set.iter().filter_map(|x| self.assignment[x]),
        )
    }

    /// The map spelled out on ids.
    pub fn id_assignment(&self) -> Vec<(String, Option<String>)> {
        (0..self.source.len())
            .map(|x| {
                (
                    self.source.id(x).to_string(),
                    self.assignment[x].map(|y| self.target.id(y).to_string()),
                )
            })
            .collect()
    }
}

/// Equality of the underlying partial functions between equal complexes.
impl PartialEq for PartialMap {
    fn eq(&self, other: &Self) -> bool {
        *self.source == *other.source
            && *self.target == *other.target
            && self.id_assignment() == other.id_assignment()
    }
}

/// One simple merger.
#[derive(Debug, Clone, PartialEq)]
pub struct MergeStep {
    pub map: PartialMap,
    pub removed: String,
    pub identified: [String; 2],
    pub merged: String,
}

/// A chain of simple mergers and its composite.
///
/// The composite of a standard merger also includes the final renaming onto `Oⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct MergerSequence {
    pub steps: Vec<MergeStep>,
    pub composite: PartialMap,
}

impl MergerSequence {
    pub fn result(&self) -> &Complex {
        &self.composite.target
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.steps
                .iter()
                .map(|s| {
                    serde_json::json!({
                        "removed": s.removed,
                        "identified": s.identified,
                        "into": s.merged,
                    })
                })
                .collect(),
        )
    }
}

/// Deterministic choice among two-maximal submolecules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// First pair of maximal elements in index order.
    Leftmost,
    /// Last pair of maximal elements in index order.
    Rightmost,
}

struct Merge {
    x1: usize,
    x2: usize,
    y: usize,
}

fn locate_merge(p: &Complex, u: &ElementSet) -> Result<Merge> {
    let maxes = p.maximal(u).to_vec();
    if maxes.len() != 2 {
        return Err(Error::PreconditionFailed(format!(
            "U must have exactly two maximal elements, found {}",
            maxes.len()
        )));
    }
    for (x1, x2) in [(maxes[0], maxes[1]), (maxes[1], maxes[0])] {
        let meet = p.closure_of(x1).intersection(&p.closure_of(x2));
        let shared = p
            .element_boundary(x1, Sign::Plus)
            .intersection(&p.element_boundary(x2, Sign::Minus));
        let tops = p.maximal(&meet).to_vec();
        if meet != shared || tops.len() != 1 || p.dim(tops[0]) + 1 != p.dim(x1) {
            continue;
        }
        let y = tops[0];
        let mut covering: Vec<usize> = p.cofaces(y).iter().map(|&(z, _)| z).collect();
        covering.sort_unstable();
        let mut pair = vec![x1, x2];
        pair.sort_unstable();
        if covering != pair {
            return Err(Error::PreconditionFailed(format!(
                "{} is covered by elements other than {} and {}",
                p.id(y),
                p.id(x1),
                p.id(x2)
            )));
        }
        return Ok(Merge { x1, x2, y });
    }
    Err(Error::PreconditionFailed(
        "the closures of the maximal elements do not meet in ∂⁺x₁ ∩ ∂⁻x₂ = cl{y}".into(),
    ))
}

fn perform_merge(p: &Arc<Complex>, m: &Merge) -> Result<MergeStep> {
    let taken: HashSet<String> = p.ids().iter().cloned().collect();
    let merged = fresh_id(&format!("{}∨{}", p.id(m.x1), p.id(m.x2)), &taken);
    let name = |x: usize| {
        if x == m.x1 || x == m.x2 {
            merged.clone()
        } else {
            p.id(x).to_string()
        }
    };
    let mut b = Complex::builder();
    for x in 0..p.len() {
        if x != m.y && x != m.x2 {
            b.element(name(x), p.dim(x));
        }
    }
    let mut seen: HashMap<(String, String), Sign> = HashMap::new();
    for (u, l, s) in p.covers() {
        if u == m.y || l == m.y {
            continue;
        }
        let key = (name(u), name(l));
        match seen.get(&key) {
            Some(&t) if t != s => {
                return Err(Error::PreconditionFailed(format!(
                    "conflicting orientations on {} -> {}",
                    key.0, key.1
                )))
            }
            Some(_) => {}
            None => {
                b.cover(key.0.clone(), key.1.clone(), s);
                seen.insert(key, s);
            }
        }
    }
    let target = Arc::new(b.build()?);
    let assignment = (0..p.len())
        .map(|x| if x == m.y { None } else { target.get(&name(x)) })
        .collect();
    Ok(MergeStep {
        map: PartialMap {
            source: p.clone(),
            target,
            assignment,
        },
        removed: p.id(m.y).to_string(),
        identified: [p.id(m.x1).to_string(), p.id(m.x2).to_string()],
        merged,
    })
}

/// Deletes the shared face of a two-maximal molecule `u` and identifies its maximal elements.
pub fn simple_merger(p: &Complex, u: &ElementSet) -> Result<(Complex, PartialMap)> {
    let m = locate_merge(p, u)?;
    if let Some(r) = MoleculeOracle::new(p).refusal(u)? {
        return Err(Error::PreconditionFailed(format!(
            "U is not a constructible molecule: {r}"
        )));
    }
    let step = perform_merge(&Arc::new(p.clone()), &m)?;
    Ok(((*step.map.target).clone(), step.map))
}

struct Merger {
    start: Arc<Complex>,
    current: Arc<Complex>,
    steps: Vec<MergeStep>,
    strategy: Strategy,
}

impl Merger {
    fn new(c: &Complex, strategy: Strategy) -> Merger {
        let c = Arc::new(c.clone());
        Merger {
            start: c.clone(),
            current: c,
            steps: Vec::new(),
            strategy,
        }
    }

    fn set(&self, ids: &BTreeSet<String>) -> ElementSet {
        ElementSet::from_indices(
            self.current.len(),
            ids.iter().map(|i| self.current.get(i).expect("tracked id")),
        )
    }

    fn ids(&self, set: &ElementSet) -> BTreeSet<String> {
        set.iter().map(|x| self.current.id(x).to_string()).collect()
    }

    /// Two maximal elements of the molecule `w` whose closure is a submolecule of `w`.
    fn choose_pair(&self, w: &ElementSet) -> Result<(String, String)> {
        let c = &*self.current;
        let mut oracle = MoleculeOracle::new(c);
        let maxes = c.maximal(w).to_vec();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for i in 0..maxes.len() {
            for j in i + 1..maxes.len() {
                pairs.push((maxes[i], maxes[j]));
            }
        }
        if self.strategy == Strategy::Rightmost {
            pairs.reverse();
        }
        for (a, b) in pairs {
            let v = c.closure(&ElementSet::from_indices(c.len(), [a, b]));
            if oracle.is_molecule(&v)? && oracle.is_submolecule(&v, w)? {
                return Ok((c.id(a).to_string(), c.id(b).to_string()));
            }
        }
        Err(Error::InvariantViolated(
            "no two-maximal submolecule found".into(),
        ))
    }

    fn record(&mut self, step: MergeStep) {
        self.current = step.map.target.clone();
        self.steps.push(step);
    }

    /// Merges the top-dimensional elements `a` and `b`, first reducing their
    /// shared boundary to an atom.  Returns the merged id.
    fn merge_pair(&mut self, a: &str, b: &str) -> Result<String> {
        loop {
            let c = self.current.clone();
            let (x1, x2) = (c.index(a)?, c.index(b)?);
            let meet = c.closure_of(x1).intersection(&c.closure_of(x2));
            if c.maximal(&meet).len() == 1 {
                let pair = c.closure(&ElementSet::from_indices(c.len(), [x1, x2]));
                let step = perform_merge(&c, &locate_merge(&c, &pair)?)?;
                let merged = step.merged.clone();
                self.record(step);
                return Ok(merged);
            }
            let (y1, y2) = self.choose_pair(&meet)?;
            self.merge_pair(&y1, &y2)?;
        }
    }

    /// Reduces the tracked molecule to an atom; returns its top id.
    fn atomize(&mut self, v: &mut BTreeSet<String>) -> Result<String> {
        loop {
            let set = self.set(v);
            let maxes = self.current.maximal(&set);
            if maxes.len() == 1 {
                return Ok(self.current.id(maxes.first().unwrap()).to_string());
            }
            let (a, b) = self.choose_pair(&set)?;
            let before = self.steps.len();
            self.merge_pair(&a, &b)?;
            for step in &self.steps[before..] {
                follow(v, step);
            }
        }
    }

    /// Atomizes `v`, then its `k`-boundaries one level at a time from the top.
    ///
    /// Finishing a level before descending means a shared face at level `k`
    /// is covered only by the two elements being merged.
    fn standardize(&mut self, v: &mut BTreeSet<String>) -> Result<()> {
        let top = self.atomize(v)?;
        let n = self.current.dim(self.current.index(&top)?) as isize;
        for k in (0..n).rev() {
            for sign in Sign::BOTH {
                let c = self.current.clone();
                let b = c.boundary(&c.closure_of(c.index(&top)?), sign, k);
                let mut ids = self.ids(&b);
                self.atomize(&mut ids)?;
            }
        }
        Ok(())
    }

    fn composite(&self) -> Result<PartialMap> {
        let mut acc = PartialMap::identity(self.start.clone());
        for s in &self.steps {
            acc = acc.then(&s.map)?;
        }
        Ok(acc)
    }
}

/// Updates a set of ids across one merger.
fn follow(ids: &mut BTreeSet<String>, step: &MergeStep) {
    ids.remove(&step.removed);
    let mut hit = false;
    for i in &step.identified {
        hit |= ids.remove(i);
    }
    if hit {
        ids.insert(step.merged.clone());
    }
}

fn require_molecule(c: &Complex) -> Result<()> {
    match MoleculeOracle::new(c).refusal(&c.all())? {
        Some(r) => Err(Error::PreconditionFailed(format!(
            "not a constructible molecule: {r}"
        ))),
        None => Ok(()),
    }
}

/// Reduces a constructible molecule to an atom by simple mergers.
pub fn merge_to_atom(u: &Complex) -> Result<(Complex, MergerSequence)> {
    merge_to_atom_with(u, Strategy::Leftmost)
}

pub fn merge_to_atom_with(u: &Complex, strategy: Strategy) -> Result<(Complex, MergerSequence)> {
    require_molecule(u)?;
    let mut m = Merger::new(u, strategy);
    let mut all: BTreeSet<String> = u.ids().iter().cloned().collect();
    m.atomize(&mut all)?;
    let composite = m.composite()?;
    Ok((
        (*m.current).clone(),
        MergerSequence {
            steps: m.steps,
            composite,
        },
    ))
}

/// The merger of a constructible `n`-molecule onto `Oⁿ`.
pub fn standard_merger(u: &Complex) -> Result<MergerSequence> {
    standard_merger_with(u, Strategy::Leftmost)
}

pub fn standard_merger_with(u: &Complex, strategy: Strategy) -> Result<MergerSequence> {
    require_molecule(u)?;
    let mut m = Merger::new(u, strategy);
    let mut all: BTreeSet<String> = u.ids().iter().cloned().collect();
    m.standardize(&mut all)?;
    let n = u.dimension().max(0) as usize;
    let globe = Arc::new(Generator::Globe(n).build()?);
    let iso = find_isomorphism(&m.current, &globe)?.ok_or_else(|| {
        Error::InvariantViolated("standard merger did not reach the globe".into())
    })?;
    let rename = PartialMap::from_inclusion(m.current.clone(), globe, &iso);
    let composite = m.composite()?.then(&rename)?;
    Ok(MergerSequence {
        steps: m.steps,
        composite,
    })
}

/// `cl(m⁻¹(V′))`.
pub fn merger_preimage(m: &MergerSequence, v: &ElementSet) -> ElementSet {
    m.composite.source.closure(&m.composite.preimage(v))
}

/// Maps `∂u` onto `∂v` by matching input and output boundaries separately.
fn boundary_match(
    u: &Complex,
    us: &ElementSet,
    v: &Complex,
    vs: &ElementSet,
) -> Result<HashMap<usize, usize>> {
    let mut out: HashMap<usize, usize> = HashMap::new();
    for sign in Sign::BOTH {
        let bu = u.face_boundary(us, sign);
        let bv = v.face_boundary(vs, sign);
        let (cu, back_u) = u.restrict(&bu)?;
        let (cv, back_v) = v.restrict(&bv)?;
        let iso = find_isomorphism(&cu, &cv)?.ok_or_else(|| {
            Error::BoundaryMismatch(format!(
                "∂{} boundaries are not isomorphic",
                sign.superscript()
            ))
        })?;
        for (i, &j) in iso.map.iter().enumerate() {
            let (x, y) = (back_u[i], back_v[j]);
            if out.insert(x, y).is_some_and(|prev| prev != y) {
                return Err(Error::BoundaryMismatch(
                    "input and output isomorphisms disagree".into(),
                ));
            }
        }
    }
    Ok(out)
}

fn require_same_dim(u: &Complex, v: &Complex) -> Result<usize> {
    if u.dimension() != v.dimension() || u.is_empty() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {}",
            u.dimension(),
            v.dimension()
        )));
    }
    Ok(u.dimension() as usize)
}

/// The atom `U ⇒ V`; the new top is `⊤`.
pub fn cell(u: &Complex, v: &Complex) -> Result<Complex> {
    cell_named(u, v, "⊤")
}

pub fn cell_named(u: &Complex, v: &Complex, top: &str) -> Result<Complex> {
    let n = require_same_dim(u, v)?;
    require_molecule(u)?;
    require_molecule(v)?;
    let bu = u.boundary_both(&u.all(), n as isize - 1);
    let matching = boundary_match(u, &u.all(), v, &v.all())?;
    let (q, back) = u.restrict(&bu)?;
    let i1 = Inclusion { map: back.clone() };
    let i2 = Inclusion {
        map: back.iter().map(|x| matching[x]).collect(),
    };
    let glued = pushout(&q, u, &i1, v, &i2)?;
    let c = &glued.complex;
    let taken: HashSet<String> = c.ids().iter().cloned().collect();
    let top = fresh_id(top, &taken);
    let mut b = c.to_builder();
    b.element(top.clone(), n + 1);
    for (leg, src, sign) in [(&glued.left, u, Sign::Minus), (&glued.right, v, Sign::Plus)] {
        for x in src.elements_of_dim(n) {
            b.cover(top.clone(), c.id(leg.apply(x)), sign);
        }
    }
    b.build()
}

/// The result of `U[W/V]`.
#[derive(Debug, Clone)]
pub struct Substitution {
    pub complex: Complex,
    /// The image of `W`.
    pub inserted: ElementSet,
}

/// Replaces the submolecule `v ⊑ u` by `w`, glued along `∂w ≅ ∂v`.
pub fn substitute(u: &Complex, v: &ElementSet, w: &Complex) -> Result<Substitution> {
    let mut oracle = MoleculeOracle::new(u);
    match oracle.is_submolecule(v, &u.all()) {
        Ok(true) => {}
        Ok(false) => return Err(Error::NotSubmolecule("V is not a submolecule of U".into())),
        Err(Error::PreconditionFailed(m)) | Err(Error::DimensionMismatch(m)) => {
            return Err(Error::NotSubmolecule(m))
        }
        Err(e) => return Err(e),
    }
    require_molecule(w)?;
    let n = u.dim_of(v);
    if w.dimension() != n {
        return Err(Error::BoundaryMismatch(format!(
            "dim W = {}, dim V = {n}",
            w.dimension()
        )));
    }
    let matching = boundary_match(w, &w.all(), u, v)?;
    let bv = u.boundary_both(v, n - 1);
    let keep = u.all().difference(&v.difference(&bv));
    let (kept, kept_back) = u.restrict(&keep)?;
    let host_to_kept: HashMap<usize, usize> =
        kept_back.iter().enumerate().map(|(i, &h)| (h, i)).collect();
    let bw = w.boundary_both(&w.all(), n - 1);
    let (q, q_back) = w.restrict(&bw)?;
    let i1 = Inclusion {
        map: q_back.iter().map(|z| host_to_kept[&matching[z]]).collect(),
    };
    let i2 = Inclusion { map: q_back };
    let glued = pushout(&q, &kept, &i1, w, &i2)?;
    let inserted = glued.right.full_image(&glued.complex);
    Ok(Substitution {
        complex: glued.complex,
        inserted,
    })
}
