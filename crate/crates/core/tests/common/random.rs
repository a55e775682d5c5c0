//! Seeded random constructible molecules.
//!
//! Shapes start from paths and two-dimensional atoms and grow by `cell`,
//! pasting along the codimension-one boundary, and substituting a
//! top-dimensional atom.

use cdc_core::constructions::paste;
use cdc_core::rewriting::{cell, merge_to_atom, substitute};
use cdc_core::{fixtures, Complex, Error, Sign};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub struct Shapes {
    pub rng: ChaCha8Rng,
    pub max_dim: usize,
    pub max_elements: usize,
}

fn side(c: &Complex, sign: Sign, k: isize) -> Complex {
    c.restrict(&c.boundary(&c.all(), sign, k))
        .expect("boundaries are closed")
        .0
}

impl Shapes {
    pub fn new(seed: u64, max_dim: usize, max_elements: usize) -> Self {
        use rand::SeedableRng;
        Shapes {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_dim,
            max_elements,
        }
    }

    fn seed(&mut self) -> Complex {
        if self.rng.gen_bool(0.4) {
            fixtures::path(self.rng.gen_range(1..=3))
        } else {
            fixtures::atom2(self.rng.gen_range(1..=3), self.rng.gen_range(1..=3))
        }
    }

    /// A molecule with the same input and output boundary as `m`.
    pub fn parallel(&mut self, m: &Complex) -> Complex {
        let n = m.dimension();
        if n <= 0 {
            return m.clone();
        }
        match self.rng.gen_range(0..3) {
            0 => m.clone(),
            1 => merge_to_atom(m).expect("molecules merge").0,
            _ => {
                let out = side(m, Sign::Plus, n - 1);
                let unit = cell(&out, &out).expect("a cell on a molecule");
                paste(m, n as usize - 1, &unit)
                    .expect("output matches")
                    .complex
            }
        }
    }

    /// A molecule of dimension `d ≥ dim x` whose `k`-input boundary is `x`,
    /// where `k = dim x`.
    fn above(&mut self, x: Complex, d: usize) -> Complex {
        let mut b = x;
        while (b.dimension() as usize) < d {
            let v = self.parallel(&b);
            b = cell(&b, &v).expect("parallel molecules bound a cell");
        }
        b
    }

    fn grow(&mut self, fuel: u32) -> Complex {
        if fuel == 0 {
            return self.seed();
        }
        let a = self.grow(fuel - 1);
        let n = a.dimension().max(0) as usize;
        let next = match self.rng.gen_range(0..4) {
            0 => return a,
            // only codimension-one pastes of equal dimension stay constructible
            1 if n > 0 => {
                let k = n - 1;
                let (left, right) = if self.rng.gen_bool(0.5) {
                    let b = self.above(side(&a, Sign::Plus, k as isize), n);
                    (a.clone(), b)
                } else {
                    let b = self.above_output(side(&a, Sign::Minus, k as isize), n);
                    (b, a.clone())
                };
                paste(&left, k, &right)
                    .expect("boundaries match by construction")
                    .complex
            }
            2 if n < self.max_dim => {
                let v = self.parallel(&a);
                cell(&a, &v).expect("parallel molecules bound a cell")
            }
            _ if n > 0 => {
                let tops: Vec<usize> = a.elements_of_dim(n).collect();
                let x = tops[self.rng.gen_range(0..tops.len())];
                let v = a.closure_of(x);
                let atom = a.restrict(&v).expect("closed").0;
                let w = self.parallel(&atom);
                match substitute(&a, &v, &w) {
                    Ok(s) => s.complex,
                    Err(Error::NotSubmolecule(_)) => a.clone(),
                    Err(e) => panic!("substitution failed: {e}"),
                }
            }
            _ => return a,
        };
        if next.len() > self.max_elements {
            a
        } else {
            next
        }
    }

    /// Like `above`, but `x` becomes the `k`-output boundary.
    fn above_output(&mut self, x: Complex, d: usize) -> Complex {
        let mut b = x;
        while (b.dimension() as usize) < d {
            let v = self.parallel(&b);
            b = cell(&v, &b).expect("parallel molecules bound a cell");
        }
        b
    }

    /// The next random molecule.
    pub fn molecule(&mut self) -> Complex {
        let fuel = self.rng.gen_range(0..5);
        self.grow(fuel)
    }
}
