//! Shape classes of molecules and the loop structure of complexes.

use crate::error::{Error, Result};
use crate::molecules::{Budget, MoleculeOracle};
use crate::omega::enumerate_molecules;
use crate::poset::{Complex, Sign};
use crate::set::ElementSet;
use serde::Serialize;
use std::collections::{HashMap, VecDeque};

/// A directed graph on elements of a complex, kept as index adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    /// Complex indices of the vertices, ascending.
    pub vertices: Vec<usize>,
    succ: Vec<Vec<usize>>,
}

impl DirectedGraph {
    fn on(vertices: &ElementSet) -> Self {
        let vertices = vertices.to_vec();
        let succ = vec![Vec::new(); vertices.len()];
        DirectedGraph { vertices, succ }
    }

    fn position(&self, x: usize) -> Option<usize> {
        self.vertices.binary_search(&x).ok()
    }

    fn add_edge(&mut self, from: usize, to: usize) {
        if let (Some(a), Some(b)) = (self.position(from), self.position(to)) {
            if !self.succ[a].contains(&b) {
                self.succ[a].push(b);
                self.succ[a].sort_unstable();
            }
        }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.position(x).is_some()
    }

    /// Edges as pairs of complex indices.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, next) in self.succ.iter().enumerate() {
            out.extend(next.iter().map(|&b| (self.vertices[a], self.vertices[b])));
        }
        out
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        match (self.position(from), self.position(to)) {
            (Some(a), Some(b)) => self.succ[a].contains(&b),
            _ => false,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    /// Kahn's algorithm.
    pub fn is_acyclic(&self) -> bool {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for next in &self.succ {
            for &b in next {
                indeg[b] += 1;
            }
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = ready.pop() {
            seen += 1;
            for &b in &self.succ[v] {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    ready.push(b);
                }
            }
        }
        seen == n
    }

    /// A shortest cycle, started at its least vertex, as complex indices.
    pub fn shortest_cycle(&self) -> Option<Vec<usize>> {
        if self.is_acyclic() {
            return None;
        }
        let mut best: Option<Vec<usize>> = None;
        for s in 0..self.vertices.len() {
            // only cycles whose least vertex is `s`
            let mut parent: HashMap<usize, usize> = HashMap::new();
            let mut queue = VecDeque::from([s]);
            let mut closing = None;
            'bfs: while let Some(v) = queue.pop_front() {
                for &w in &self.succ[v] {
                    if w == s {
                        closing = Some(v);
                        break 'bfs;
                    }
                    if w > s && !parent.contains_key(&w) {
                        parent.insert(w, v);
                        queue.push_back(w);
                    }
                }
            }
            if let Some(mut v) = closing {
                let mut cycle = vec![v];
                while v != s {
                    v = parent[&v];
                    cycle.push(v);
                }
                cycle.reverse();
                if best.as_ref().is_none_or(|b| cycle.len() < b.len()) {
                    best = Some(cycle);
                }
            }
        }
        best.map(|cycle| cycle.into_iter().map(|p| self.vertices[p]).collect())
    }
}

/// `H⃗U`: Hasse diagram of `u` with `−`-labelled edges reversed.
pub fn hasso(c: &Complex, u: &ElementSet) -> DirectedGraph {
    let mut g = DirectedGraph::on(u);
    for (upper, lower, sign) in c.covers() {
        match sign {
            Sign::Plus => g.add_edge(upper, lower),
            Sign::Minus => g.add_edge(lower, upper),
        }
    }
    g
}

fn flow_edges(c: &Complex, g: &mut DirectedGraph, n: usize, high: impl Iterator<Item = usize>) {
    let ni = n as isize;
    for x in high {
        let cl = c.closure_of(x);
        let frame = c.boundary_both(&cl, ni - 1);
        for y in c.boundary(&cl, Sign::Minus, ni).difference(&frame).iter() {
            g.add_edge(y, x);
        }
        for y in c.boundary(&cl, Sign::Plus, ni).difference(&frame).iter() {
            g.add_edge(x, y);
        }
    }
}

/// `⋔ₙU`.
pub fn loopd(c: &Complex, u: &ElementSet, n: usize) -> DirectedGraph {
    let mut g = DirectedGraph::on(u);
    flow_edges(c, &mut g, n, u.iter().filter(|&x| c.dim(x) > n));
    g
}

/// The subgraph of `⋔ₙU` keeping only maximal elements above dimension `n`.
pub fn maxd(c: &Complex, u: &ElementSet, n: usize) -> DirectedGraph {
    let maxes = c.maximal(u);
    let keep = ElementSet::from_indices(
        c.len(),
        u.iter().filter(|&x| c.dim(x) <= n || maxes.contains(x)),
    );
    let mut g = DirectedGraph::on(&keep);
    flow_edges(c, &mut g, n, keep.iter().filter(|&x| c.dim(x) > n));
    g
}

/// A cycle found in a flow graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoopWitness {
    /// `"hasso"` or `"loopd_n"`.
    pub graph: String,
    pub cycle: Vec<String>,
}

fn witness(c: &Complex, graph: String, cycle: Vec<usize>) -> LoopWitness {
    LoopWitness {
        graph,
        cycle: cycle.into_iter().map(|x| c.id(x).to_string()).collect(),
    }
}

/// First `n` for which `⋔ₙP` has a cycle.
pub fn loop_free_witness(c: &Complex) -> Option<LoopWitness> {
    let all = c.all();
    (0..c.dimension().max(0) as usize).find_map(|n| {
        loopd(c, &all, n)
            .shortest_cycle()
            .map(|cy| witness(c, format!("loopd_{n}"), cy))
    })
}

pub fn is_loop_free(c: &Complex) -> bool {
    loop_free_witness(c).is_none()
}

pub fn totally_loop_free_witness(c: &Complex) -> Option<LoopWitness> {
    hasso(c, &c.all())
        .shortest_cycle()
        .map(|cy| witness(c, "hasso".into(), cy))
}

pub fn is_totally_loop_free(c: &Complex) -> bool {
    hasso(c, &c.all()).is_acyclic()
}

fn require_constructible(o: &mut MoleculeOracle<'_>, u: &ElementSet) -> Result<()> {
    if let Some(r) = o.refusal(u)? {
        return Err(Error::PreconditionFailed(format!(
            "not a constructible molecule: {r}"
        )));
    }
    Ok(())
}

fn has_greatest(c: &Complex, u: &ElementSet) -> bool {
    c.maximal(u).len() == 1
}

/// Recursive check with splits whose overlap is a single atom.
pub fn is_simple(c: &Complex, u: &ElementSet) -> Result<bool> {
    let mut o = MoleculeOracle::new(c);
    require_constructible(&mut o, u)?;
    let mut memo = HashMap::new();
    simple_rec(&mut o, u, &mut memo)
}

fn simple_rec(
    o: &mut MoleculeOracle<'_>,
    u: &ElementSet,
    memo: &mut HashMap<ElementSet, bool>,
) -> Result<bool> {
    if let Some(&v) = memo.get(u) {
        return Ok(v);
    }
    let c = o.complex();
    let v = if c.dim_of(u) == 0 {
        true
    } else {
        let mut ok = true;
        for s in Sign::BOTH {
            if !simple_rec(o, &c.face_boundary(u, s), memo)? {
                ok = false;
                break;
            }
        }
        if ok && !has_greatest(c, u) {
            ok = false;
            for split in o.splits(u)? {
                let meet = split.first.intersection(&split.second);
                let glued = c
                    .face_boundary(&split.first, Sign::Plus)
                    .intersection(&c.face_boundary(&split.second, Sign::Minus));
                if meet == glued
                    && has_greatest(c, &meet)
                    && simple_rec(o, &split.first, memo)?
                    && simple_rec(o, &split.second, memo)?
                {
                    ok = true;
                    break;
                }
            }
        }
        ok
    };
    memo.insert(u.clone(), v);
    Ok(v)
}

/// Every positive-dimensional element has an atomic output boundary.
pub fn is_positive_opetope(c: &Complex, u: &ElementSet) -> Result<bool> {
    let mut o = MoleculeOracle::new(c);
    require_constructible(&mut o, u)?;
    Ok(u.iter()
        .filter(|&x| c.dim(x) > 0)
        .all(|x| has_greatest(c, &c.element_boundary(x, Sign::Plus))))
}

fn reachable(g: &DirectedGraph, universe: usize, from: usize) -> ElementSet {
    let mut seen = ElementSet::empty(universe);
    let mut stack = vec![from];
    seen.insert(from);
    while let Some(v) = stack.pop() {
        let p = g.position(v).expect("vertex");
        for &w in &g.succ[p] {
            let w = g.vertices[w];
            if !seen.contains(w) {
                seen.insert(w);
                stack.push(w);
            }
        }
    }
    seen
}

/// Every input face reaches every output face through the top two dimensions.
///
/// Only meaningful for constructible molecules; callers check that.
pub fn flow_connected(c: &Complex, u: &ElementSet) -> bool {
    let n = c.dim_of(u);
    if n <= 0 {
        return true;
    }
    let band = ElementSet::from_indices(c.len(), u.iter().filter(|&x| c.dim(x) as isize >= n - 1));
    let g = hasso(c, &band);
    let outputs = c.strict_boundary(u, Sign::Plus, n - 1);
    c.strict_boundary(u, Sign::Minus, n - 1)
        .iter()
        .all(|x| outputs.is_subset(&reachable(&g, c.len(), x)))
}

pub fn is_flow_connected(c: &Complex, u: &ElementSet) -> Result<bool> {
    let mut o = MoleculeOracle::new(c);
    require_constructible(&mut o, u)?;
    Ok(flow_connected(c, u))
}

/// All `∂ₖ^α x` with `k < dim x` are flow-connected.
pub fn element_has_flow_connected_boundaries(c: &Complex, x: usize) -> bool {
    let cl = c.closure_of(x);
    (0..c.dim(x)).all(|k| {
        Sign::BOTH
            .iter()
            .all(|&a| flow_connected(c, &c.boundary(&cl, a, k as isize)))
    })
}

/// The first element without flow-connected boundaries.
pub fn flow_connected_boundaries_witness(c: &Complex) -> Option<usize> {
    (0..c.len()).find(|&x| !element_has_flow_connected_boundaries(c, x))
}

pub fn has_flow_connected_boundaries(c: &Complex) -> bool {
    flow_connected_boundaries_witness(c).is_none()
}

/// Dimension of the union of pairwise overlaps of maximal closures; `−1` if none.
pub fn frame_dimension(c: &Complex, u: &ElementSet) -> isize {
    let maxes = c.maximal(u).to_vec();
    let closures: Vec<ElementSet> = maxes.iter().map(|&x| c.closure_of(x)).collect();
    let mut frame = c.empty_set();
    for i in 0..closures.len() {
        for j in i + 1..closures.len() {
            frame.union_with(&closures[i].intersection(&closures[j]));
        }
    }
    c.dim_of(&frame)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FreeGenerationVerdict {
    FlowConnectedBoundaries,
    MaxdAcyclicSampled,
    Unknown,
}

/// One-sided evidence that every molecule of a complex is split.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreeGenerationCertificate {
    pub verdict: FreeGenerationVerdict,
    pub evidence: Vec<String>,
    /// Composite budget given to molecule enumeration.
    pub molecule_budget: usize,
    /// The verdict is `Unknown` because enumeration ran out of budget.
    pub truncated: bool,
}

/// Tries the flow-connected criterion, then `maxd` acyclicity on all enumerated molecules.
pub fn free_generation_certificate(
    c: &Complex,
    molecule_budget: usize,
) -> Result<FreeGenerationCertificate> {
    let mut evidence = Vec::new();
    let cert = |verdict, evidence| FreeGenerationCertificate {
        verdict,
        evidence,
        molecule_budget,
        truncated: false,
    };
    match flow_connected_boundaries_witness(c) {
        None => {
            evidence.push(format!(
                "all {} atoms have flow-connected boundaries",
                c.len()
            ));
            return Ok(cert(
                FreeGenerationVerdict::FlowConnectedBoundaries,
                evidence,
            ));
        }
        Some(x) => evidence.push(format!("{} lacks flow-connected boundaries", c.id(x))),
    }
    let found = enumerate_molecules(
        c,
        Budget {
            composites: molecule_budget,
            ..Budget::default()
        },
    );
    if found.truncated {
        evidence.push(format!(
            "molecule enumeration stopped after {} composites",
            found.composites_tried
        ));
        return Ok(FreeGenerationCertificate {
            truncated: true,
            ..cert(FreeGenerationVerdict::Unknown, evidence)
        });
    }
    for (u, _) in &found.molecules {
        let fr = frame_dimension(c, u);
        if fr >= 0 {
            if let Some(cycle) = maxd(c, u, fr as usize).shortest_cycle() {
                evidence.push(format!(
                    "maxd_{fr} of {:?} has cycle {:?}",
                    c.sorted_ids(u),
                    cycle.iter().map(|&x| c.id(x)).collect::<Vec<_>>()
                ));
                return Ok(cert(FreeGenerationVerdict::Unknown, evidence));
            }
        }
    }
    evidence.push(format!(
        "maxd acyclic at frame dimension on all {} molecules",
        found.molecules.len()
    ));
    Ok(cert(FreeGenerationVerdict::MaxdAcyclicSampled, evidence))
}
