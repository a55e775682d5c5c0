use crate::poset::{Complex, Sign};
use crate::set::ElementSet;
use serde::{Deserialize, Serialize};

/// Which side of a boundary to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Input,
    Output,
    Both,
}

impl Side {
    pub fn signs(self) -> &'static [Sign] {
        match self {
            Side::Input => &[Sign::Minus],
            Side::Output => &[Sign::Plus],
            Side::Both => &Sign::BOTH,
        }
    }
}

impl From<Sign> for Side {
    fn from(s: Sign) -> Side {
        match s {
            Sign::Minus => Side::Input,
            Sign::Plus => Side::Output,
        }
    }
}

/// A boundary request: side plus optional dimension (default `dim − 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundarySpec {
    pub side: Side,
    pub k: Option<usize>,
}

impl Complex {
    /// `Δₖ^α U`: the `k`-dimensional elements of `u` all of whose covers in `u` have sign `sign`.
    pub fn strict_boundary(&self, u: &ElementSet, sign: Sign, k: isize) -> ElementSet {
        let mut out = self.empty_set();
        if k < 0 {
            return out;
        }
        for x in u.iter() {
            if self.dim(x) as isize == k
                && self
                    .cofaces(x)
                    .iter()
                    .all(|&(y, s)| !u.contains(y) || s == sign)
            {
                out.insert(x);
            }
        }
        out
    }

    /// `∂ₖ^α U`.
    pub fn boundary(&self, u: &ElementSet, sign: Sign, k: isize) -> ElementSet {
        if k < 0 {
            return self.empty_set();
        }
        let mut out = self.closure(&self.strict_boundary(u, sign, k));
        if self.maximal(u).iter().any(|x| self.dim(x) as isize <= k) {
            let high = ElementSet::from_indices(
                self.len(),
                u.iter().filter(|&x| self.dim(x) as isize > k),
            );
            out.union_with(&u.difference(&self.closure(&high)));
        }
        out
    }

    /// `∂ₖU = ∂ₖ⁺U ∪ ∂ₖ⁻U`.
    pub fn boundary_both(&self, u: &ElementSet, k: isize) -> ElementSet {
        self.boundary(u, Sign::Minus, k)
            .union(&self.boundary(u, Sign::Plus, k))
    }

    /// `∂^α U`, taken in dimension `dim U − 1`.
    pub fn face_boundary(&self, u: &ElementSet, sign: Sign) -> ElementSet {
        self.boundary(u, sign, self.dim_of(u) - 1)
    }

    /// `∂^α U` for a pure `u`, which is the closure of `Δ^α U`.
    pub(crate) fn pure_face_boundary(&self, u: &ElementSet, sign: Sign) -> ElementSet {
        self.closure(&self.face_strict_boundary(u, sign))
    }

    /// `Δ^α U` in dimension `dim U − 1`.
    pub fn face_strict_boundary(&self, u: &ElementSet, sign: Sign) -> ElementSet {
        self.strict_boundary(u, sign, self.dim_of(u) - 1)
    }

    /// `∂^α x` for a single element.
    pub fn element_boundary(&self, x: usize, sign: Sign) -> ElementSet {
        self.face_boundary(&self.closure_of(x), sign)
    }

    /// Boundary selected by a `BoundarySpec`.
    pub fn boundary_spec(&self, u: &ElementSet, spec: BoundarySpec) -> ElementSet {
        let k = spec.k.map_or(self.dim_of(u) - 1, |k| k as isize);
        let mut out = self.empty_set();
        for &s in spec.side.signs() {
            out.union_with(&self.boundary(u, s, k));
        }
        out
    }

    /// Both globularity equations for `u`; vacuous below dimension 2.
    pub fn check_globularity(&self, u: &ElementSet) -> bool {
        if self.dim_of(u) < 2 {
            return true;
        }
        let plus = self.face_boundary(u, Sign::Plus);
        let minus = self.face_boundary(u, Sign::Minus);
        for s in Sign::BOTH {
            if self.face_boundary(&plus, s) != self.face_boundary(&minus, s) {
                return false;
            }
        }
        let meet = plus.intersection(&minus);
        let edge_p = self.boundary_both(&plus, self.dim_of(&plus) - 1);
        let edge_m = self.boundary_both(&minus, self.dim_of(&minus) - 1);
        meet == edge_p && meet == edge_m
    }

    /// Iterated one-step boundaries agree with direct `k`-boundaries, and
    /// `∂ⱼ^α(∂ₖ^β U) = ∂ⱼ^α U` for all `j < k < dim U`.
    pub fn check_globelike(&self, u: &ElementSet) -> bool {
        let n = self.dim_of(u);
        for k in 0..n {
            for a in Sign::BOTH {
                let mut s = u.clone();
                for _ in 0..(n - k) {
                    s = self.face_boundary(&s, a);
                }
                if s != self.boundary(u, a, k) {
                    return false;
                }
                for j in 0..k {
                    let direct = self.boundary(u, a, j);
                    for b in Sign::BOTH {
                        if self.boundary(&self.boundary(u, b, k), a, j) != direct {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}
