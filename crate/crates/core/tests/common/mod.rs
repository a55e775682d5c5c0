//! Support shared by the integration test targets.
#![allow(dead_code)]

pub mod brute;
pub mod random;

use cdc_core::constructions::{join, paste, suspension};
use cdc_core::fixtures;
use cdc_core::{Complex, ElementSet, Sign};

/// Every closed subset, the empty set included.
pub fn closed_subsets(c: &Complex) -> Vec<ElementSet> {
    // indices are sorted by dimension, so faces are decided before cofaces
    let mut out = Vec::new();
    let mut current = c.empty_set();
    fn go(c: &Complex, i: usize, current: &mut ElementSet, out: &mut Vec<ElementSet>) {
        if i == c.len() {
            out.push(current.clone());
            return;
        }
        go(c, i + 1, current, out);
        if c.faces(i).iter().all(|&(f, _)| current.contains(f)) {
            current.insert(i);
            go(c, i + 1, current, out);
            current.remove(i);
        }
    }
    go(c, 0, &mut current, &mut out);
    out
}

/// Complexes small enough for exhaustive comparison against the brute-force recognizers.
pub fn small_complexes(max_elements: usize) -> Vec<(String, Complex)> {
    let mut out: Vec<(String, Complex)> = fixtures::corpus()
        .into_iter()
        .filter(|f| f.complex.len() <= max_elements && f.complex.is_oriented_thin())
        .map(|f| (f.name, f.complex))
        .collect();
    let o2 = fixtures::globe(2);
    let extra = [
        ("O2#1O2", paste(&o2, 1, &o2).unwrap().complex),
        (
            "O1#0O2",
            paste(&fixtures::globe(1), 0, &o2).unwrap().complex,
        ),
        ("A22", fixtures::atom2(2, 2)),
        ("A31", fixtures::atom2(3, 1)),
        ("PATH4", fixtures::path(4)),
        (
            "1*O1",
            join(&fixtures::point(), &fixtures::globe(1)).unwrap(),
        ),
        ("S(PATH2)", suspension(&fixtures::path(2)).unwrap()),
        ("S(1+1)", suspension(&fixtures::two_points()).unwrap()),
    ];
    out.extend(
        extra
            .into_iter()
            .filter(|(_, c)| c.len() <= max_elements)
            .map(|(n, c)| (n.to_string(), c)),
    );
    out
}

pub const FUZZ_SEED: u64 = 0x5eed_0001;

/// Both boundaries share their boundaries, and `∂ⱼ^α ∂ₖ^β U = ∂ⱼ^α U` for `j < k < n`,
/// all with boundaries recomputed from the definition.
pub fn globular_by_definition(c: &Complex) -> Result<(), String> {
    let u = c.all();
    let n = c.dimension();
    for k in 0..n {
        for b in Sign::BOTH {
            let uk = brute::boundary(c, &u, b, k);
            for j in 0..k {
                for a in Sign::BOTH {
                    if brute::boundary(c, &uk, a, j) != brute::boundary(c, &u, a, j) {
                        return Err(format!("∂{j}{a:?} ∂{k}{b:?} differs from ∂{j}{a:?}"));
                    }
                }
            }
        }
        // iterating one-step boundaries lands on the k-boundary
        for a in Sign::BOTH {
            let mut s = u.clone();
            for _ in k..n {
                s = brute::boundary(c, &s, a, brute::dim(c, &s) - 1);
            }
            if s != brute::boundary(c, &u, a, k) {
                return Err(format!("iterated {a:?} boundary differs at k={k}"));
            }
        }
    }
    Ok(())
}
