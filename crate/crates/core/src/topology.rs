//! Order complexes of closed subsets and their integer homology.
//!
//! Homology is a necessary condition only: matching a ball or sphere here
//! does not certify the homeomorphism type.

use crate::error::{Error, Result};
use crate::molecules::Budget;
use crate::poset::Complex;
use crate::set::ElementSet;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap, HashSet};

/// Largest matrix side handed to the dense Smith normal form.
pub const DENSE_LIMIT: usize = 5000;
/// Largest number of chains a nerve may have.
pub const SIMPLEX_LIMIT: usize = 2_000_000;

/// Nondegenerate simplices of a nerve, as ascending tuples of vertex positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicialComplex {
    pub vertices: Vec<String>,
    /// `simplices[k]` holds the `k`-simplices.
    pub simplices: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn dimension(&self) -> isize {
        self.simplices.len() as isize - 1
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// Every face of every simplex is present.
    pub fn is_face_closed(&self) -> bool {
        let present: HashSet<&Vec<usize>> = self.simplices.iter().flatten().collect();
        self.simplices.iter().skip(1).flatten().all(|s| {
            (0..s.len()).all(|i| {
                let mut f = s.clone();
                f.remove(i);
                present.contains(&f)
            })
        })
    }
}

/// The nerve of `u`: one simplex per strict chain.
pub fn nerve(c: &Complex, u: &ElementSet) -> Result<SimplicialComplex> {
    let members = u.to_vec();
    let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    // dense indices are sorted by dimension, so ascending tuples are chains read bottom-up
    let above: Vec<Vec<usize>> = members
        .iter()
        .map(|&x| {
            let mut up: Vec<usize> = c
                .up_set(x)
                .iter()
                .filter(|&y| y != x && u.contains(y))
                .map(|y| pos[&y])
                .collect();
            up.sort_unstable();
            up
        })
        .collect();
    let mut simplices: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut count = 0usize;
    let mut stack: Vec<Vec<usize>> = (0..members.len()).rev().map(|i| vec![i]).collect();
    while let Some(chain) = stack.pop() {
        count += 1;
        if count > SIMPLEX_LIMIT {
            return Err(Error::BudgetExceeded(format!(
                "nerve has more than {SIMPLEX_LIMIT} simplices"
            )));
        }
        let last = *chain.last().expect("nonempty chain");
        for &y in above[last].iter().rev() {
            let mut longer = chain.clone();
            longer.push(y);
            stack.push(longer);
        }
        let k = chain.len() - 1;
        if simplices.len() <= k {
            simplices.resize(k + 1, Vec::new());
        }
        simplices[k].push(chain);
    }
    for level in &mut simplices {
        level.sort();
    }
    let vertices = members.iter().map(|&x| c.id(x).to_string()).collect();
    Ok(SimplicialComplex {
        vertices,
        simplices,
    })
}

/// One reduced homology group `ℤ^rank ⊕ ⊕ ℤ/t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub degree: isize,
    pub rank: usize,
    pub torsion: Vec<String>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// Reduced integer homology from degree `−1` up, with unreduced Betti numbers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyResult {
    pub reduced: Vec<HomologyGroup>,
    pub betti: Vec<usize>,
    pub euler_characteristic: i64,
}

impl HomologyResult {
    pub fn group(&self, degree: isize) -> Option<&HomologyGroup> {
        self.reduced.iter().find(|g| g.degree == degree)
    }

    /// All reduced groups vanish.
    pub fn is_acyclic(&self) -> bool {
        self.reduced.iter().all(HomologyGroup::is_trivial)
    }

    /// Reduced homology of `Sⁿ`: `ℤ` in degree `n` only.
    pub fn is_sphere(&self, n: isize) -> bool {
        self.reduced.iter().all(|g| {
            if g.degree == n {
                g.rank == 1 && g.torsion.is_empty()
            } else {
                g.is_trivial()
            }
        }) && self.group(n).is_some()
    }
}

/// Rank and non-unit invariant factors of an integer matrix.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Reduction {
    rank: usize,
    torsion: Vec<BigInt>,
}

/// Sparse columns: `cols[j]` maps row to entry.
fn reduce(rows: usize, cols: Vec<BTreeMap<usize, i64>>) -> Result<Reduction> {
    match eliminate_units(rows, cols.clone()) {
        Some((rank, rest)) => {
            let mut tail = dense_invariants(rest)?;
            tail.rank += rank;
            Ok(tail)
        }
        None => dense_invariants(
            cols.into_iter()
                .map(|c| c.into_iter().map(|(r, v)| (r, BigInt::from(v))).collect())
                .collect(),
        ),
    }
}

/// Pivots on `±1` entries until none is left; `None` on overflow.
fn eliminate_units(
    rows: usize,
    mut cols: Vec<BTreeMap<usize, i64>>,
) -> Option<(usize, Vec<BTreeMap<usize, BigInt>>)> {
    let mut in_row: Vec<HashSet<usize>> = vec![HashSet::new(); rows];
    for (j, col) in cols.iter().enumerate() {
        for &r in col.keys() {
            in_row[r].insert(j);
        }
    }
    let mut alive = vec![true; cols.len()];
    let mut rank = 0;
    loop {
        let pivot = (0..cols.len()).filter(|&j| alive[j]).find_map(|j| {
            cols[j]
                .iter()
                .find(|(_, v)| v.abs() == 1)
                .map(|(&r, &v)| (j, r, v))
        });
        let Some((j, r, p)) = pivot else { break };
        rank += 1;
        alive[j] = false;
        let pivot_col = std::mem::take(&mut cols[j]);
        for &r2 in pivot_col.keys() {
            in_row[r2].remove(&j);
        }
        let others: Vec<usize> = in_row[r].iter().copied().collect();
        for k in others {
            let factor = cols[k][&r].checked_mul(p)?; // p = ±1, so p⁻¹ = p
            for (&r2, &v) in &pivot_col {
                let entry = cols[k].entry(r2).or_insert(0);
                *entry = entry.checked_sub(factor.checked_mul(v)?)?;
                if *entry == 0 {
                    cols[k].remove(&r2);
                    in_row[r2].remove(&k);
                } else {
                    in_row[r2].insert(k);
                }
            }
        }
        // row `r` now meets only the pivot column; drop it
        for k in in_row[r].drain() {
            cols[k].remove(&r);
        }
    }
    let rest = cols
        .into_iter()
        .zip(alive)
        .filter(|(c, a)| *a && !c.is_empty())
        .map(|(c, _)| c.into_iter().map(|(r, v)| (r, BigInt::from(v))).collect())
        .collect();
    Some((rank, rest))
}

/// Diagonalises what is left, then normalises the diagonal to invariant factors.
fn dense_invariants(cols: Vec<BTreeMap<usize, BigInt>>) -> Result<Reduction> {
    if cols.is_empty() {
        return Ok(Reduction::default());
    }
    let mut row_ids: Vec<usize> = cols.iter().flat_map(|c| c.keys().copied()).collect();
    row_ids.sort_unstable();
    row_ids.dedup();
    if row_ids.len() > DENSE_LIMIT || cols.len() > DENSE_LIMIT {
        return Err(Error::BudgetExceeded(format!(
            "{}×{} matrix exceeds the {DENSE_LIMIT} cap for Smith normal form",
            row_ids.len(),
            cols.len()
        )));
    }
    let at: HashMap<usize, usize> = row_ids.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let (m, n) = (row_ids.len(), cols.len());
    let mut a = vec![vec![BigInt::zero(); n]; m];
    for (j, col) in cols.into_iter().enumerate() {
        for (r, v) in col {
            a[at[&r]][j] = v;
        }
    }
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        loop {
            let best = (t..m)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((i, j)) = best else { break };
            a.swap(t, i);
            for row in a.iter_mut() {
                row.swap(t, j);
            }
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &p;
                for j in t..n {
                    let d = &q * &a[t][j];
                    a[i][j] -= d;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &p;
                for i in t..m {
                    let d = &q * &a[i][t];
                    a[i][j] -= d;
                }
                clean &= a[t][j].is_zero();
            }
            if clean {
                diag.push(p.abs());
                break;
            }
        }
        if diag.len() <= t {
            break;
        }
    }
    // gcd/lcm sweeps turn any diagonal form into invariant factors
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = num_integer_gcd(&diag[i], &diag[j]);
            let l = &diag[i] / &g * &diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    }
    let torsion = diag.iter().filter(|d| !d.is_one()).cloned().collect();
    Ok(Reduction {
        rank: diag.len(),
        torsion,
    })
}

fn num_integer_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut x, mut y) = (a.abs(), b.abs());
    while !y.is_zero() {
        let r = &x % &y;
        x = y;
        y = r;
    }
    x
}

/// Reduced homology via the augmented simplicial chain complex.
pub fn homology(s: &SimplicialComplex) -> Result<HomologyResult> {
    let top = s.simplices.len();
    // ranks[k + 1] = rank of C_k for k ≥ −1
    let mut sizes = vec![1usize];
    sizes.extend(s.f_vector());
    let mut reductions = vec![Reduction::default(); top + 2];
    for k in 0..top {
        // ∂ₖ : C_k → C_{k−1}
        let index: HashMap<&Vec<usize>, usize> = if k == 0 {
            HashMap::new()
        } else {
            s.simplices[k - 1]
                .iter()
                .enumerate()
                .map(|(i, f)| (f, i))
                .collect()
        };
        let cols: Vec<BTreeMap<usize, i64>> = s.simplices[k]
            .iter()
            .map(|simplex| {
                if k == 0 {
                    return BTreeMap::from([(0, 1)]);
                }
                (0..simplex.len())
                    .map(|i| {
                        let mut face = simplex.clone();
                        face.remove(i);
                        (index[&face], if i % 2 == 0 { 1 } else { -1 })
                    })
                    .collect()
            })
            .collect();
        reductions[k + 1] = reduce(sizes[k], cols)?;
    }
    let mut reduced = Vec::new();
    for k in -1..top as isize {
        let i = (k + 1) as usize;
        let rank = sizes[i] - reductions[i].rank - reductions.get(i + 1).map_or(0, |r| r.rank);
        let torsion = reductions.get(i + 1).map_or(Vec::new(), |r| {
            r.torsion.iter().map(|t| t.to_string()).collect()
        });
        reduced.push(HomologyGroup {
            degree: k,
            rank,
            torsion,
        });
    }
    let mut betti: Vec<usize> = reduced
        .iter()
        .filter(|g| g.degree >= 0)
        .map(|g| g.rank)
        .collect();
    if let Some(b0) = betti.first_mut() {
        *b0 += 1;
    }
    Ok(HomologyResult {
        reduced,
        betti,
        euler_characteristic: s.euler_characteristic(),
    })
}

/// Euler characteristic of the nerve of `u`.
pub fn euler_characteristic(c: &Complex, u: &ElementSet) -> Result<i64> {
    Ok(nerve(c, u)?.euler_characteristic())
}

/// `∂U = ∂⁻U ∪ ∂⁺U` in dimension `dim U − 1`.
pub fn boundary_set(c: &Complex, u: &ElementSet) -> ElementSet {
    c.boundary_both(u, c.dim_of(u) - 1)
}

/// Recursive dividability of a closed subset, orientation ignored.
pub fn is_recursively_dividable(c: &Complex, u: &ElementSet) -> Result<bool> {
    Dividability {
        c,
        memo: HashMap::new(),
        cap: Budget::default().max_maximal,
    }
    .check(u)
}

struct Dividability<'c> {
    c: &'c Complex,
    memo: HashMap<ElementSet, bool>,
    cap: usize,
}

impl Dividability<'_> {
    fn check(&mut self, u: &ElementSet) -> Result<bool> {
        if u.is_empty() {
            return Ok(true);
        }
        if let Some(&v) = self.memo.get(u) {
            return Ok(v);
        }
        let v = self.compute(u)?;
        self.memo.insert(u.clone(), v);
        Ok(v)
    }

    fn compute(&mut self, u: &ElementSet) -> Result<bool> {
        let c = self.c;
        if !c.is_closed(u) || !c.is_pure(u) {
            return Ok(false);
        }
        let n = c.dim_of(u);
        let maxes = c.maximal(u).to_vec();
        for &x in &maxes {
            let mut rim = c.closure_of(x);
            rim.remove(x);
            if !self.check(&rim)? {
                return Ok(false);
            }
        }
        if maxes.len() == 1 {
            return Ok(true);
        }
        if maxes.len() > self.cap {
            return Err(Error::BudgetExceeded(format!(
                "{} maximal elements exceed the division cap",
                maxes.len()
            )));
        }
        let m = maxes.len();
        // splits up to swapping the halves: the last maximal element stays in the second half
        for mask in 1u64..(1u64 << (m - 1)) {
            let pick = |side: bool| {
                c.closure(&ElementSet::from_indices(
                    c.len(),
                    (0..m)
                        .filter(|&i| (mask & (1 << i) != 0) == side)
                        .map(|i| maxes[i]),
                ))
            };
            let (u1, u2) = (pick(true), pick(false));
            let meet = u1.intersection(&u2);
            let meet_ok = if n == 0 {
                meet.is_empty()
            } else {
                c.dim_of(&meet) == n - 1 && c.is_pure(&meet)
            };
            if meet_ok && self.check(&u1)? && self.check(&u2)? && self.check(&meet)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// First element `x` whose rim `cl{x} ∖ {x}` lacks the homology of `S^{dim x − 1}`.
pub fn cw_poset_witness(c: &Complex) -> Result<Option<String>> {
    for x in 0..c.len() {
        let mut rim = c.closure_of(x);
        rim.remove(x);
        let h = homology(&nerve(c, &rim)?)?;
        if !h.is_sphere(c.dim(x) as isize - 1) {
            return Ok(Some(c.id(x).to_string()));
        }
    }
    Ok(None)
}

pub fn cw_poset_check(c: &Complex) -> Result<bool> {
    Ok(cw_poset_witness(c)?.is_none())
}

/// Reduced homology of the nerve of `u` vanishes and that of `∂u` is a sphere's.
pub fn ball_shadow(c: &Complex, u: &ElementSet) -> Result<bool> {
    let n = c.dim_of(u);
    let inside = homology(&nerve(c, u)?)?;
    let rim = homology(&nerve(c, &boundary_set(c, u))?)?;
    Ok(inside.is_acyclic() && rim.is_sphere(n - 1))
}
