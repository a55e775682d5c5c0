mod common;

use cdc_core::chain::{adc_of, are_based_isomorphic};
use cdc_core::constructions::{j_dual, DualitySet};
use cdc_core::document::Document;
use cdc_core::embedding::{are_isomorphic, Inclusion};
use cdc_core::molecules::MoleculeOracle;
use cdc_core::omega::SteinerOracle;
use cdc_core::rewriting::merge_to_atom;
use cdc_core::topology::{boundary_set, homology, nerve};
use cdc_core::{ElementSet, Sign};
use common::random::Shapes;
use proptest::prelude::*;

fn molecule(seed: u64) -> cdc_core::Complex {
    Shapes::new(seed, 3, 60).molecule()
}

fn bits(universe: usize) -> impl Strategy<Value = ElementSet> {
    proptest::collection::vec(any::<bool>(), universe).prop_map(move |v| {
        ElementSet::from_indices(
            universe,
            v.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn set_algebra(a in bits(70), b in bits(70)) {
        prop_assert_eq!(a.union(&b).len() + a.intersection(&b).len(), a.len() + b.len());
        prop_assert!(a.difference(&b).is_disjoint(&b));
        prop_assert_eq!(a.difference(&b).union(&a.intersection(&b)), a.clone());
        prop_assert_eq!(a.is_subset(&b), a.union(&b) == b);
    }

    #[test]
    fn closure_is_idempotent(seed in any::<u64>(), pick in any::<u64>()) {
        let c = molecule(seed);
        let s = ElementSet::from_indices(c.len(), (0..c.len()).filter(|i| (pick >> (i % 64)) & 1 == 1));
        let cl = c.closure(&s);
        prop_assert!(c.is_closed(&cl));
        prop_assert!(s.is_subset(&cl));
        prop_assert_eq!(c.closure(&cl), cl);
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let c = molecule(seed);
        let d = Document::from_complex(&c);
        let back = Document::parse(&d.to_json()).unwrap().to_complex().unwrap();
        prop_assert!(Inclusion::by_ids(&c, &back).unwrap().is_isomorphism(&c, &back));
    }

    #[test]
    fn boundaries_of_molecules_are_molecules(seed in any::<u64>()) {
        let c = molecule(seed);
        let n = c.dimension();
        let mut oracle = MoleculeOracle::new(&c);
        for k in 0..n {
            for s in Sign::BOTH {
                let b = c.boundary(&c.all(), s, k);
                prop_assert!(oracle.is_molecule(&b).unwrap());
                prop_assert_eq!(c.dim_of(&b), k);
            }
        }
    }

    #[test]
    fn constructible_implies_steiner(seed in any::<u64>()) {
        let c = molecule(seed);
        let mut steiner = SteinerOracle::new(&c);
        prop_assert!(steiner.is_molecule(&c.all()).unwrap());
        for x in 0..c.len() {
            prop_assert!(steiner.is_molecule(&c.closure_of(x)).unwrap());
        }
    }

    #[test]
    fn merging_keeps_the_boundary(seed in any::<u64>()) {
        let c = molecule(seed);
        let n = c.dimension();
        let (atom, seq) = merge_to_atom(&c).unwrap();
        prop_assert_eq!(atom.maximal(&atom.all()).len(), 1);
        let rim = c.boundary_both(&c.all(), n - 1);
        for x in rim.iter() {
            let y = seq.composite.apply(x).expect("boundary survives");
            prop_assert_eq!(atom.id(y), c.id(x));
        }
        prop_assert_eq!(seq.composite.image(&rim), atom.boundary_both(&atom.all(), n - 1));
    }

    #[test]
    fn duals_are_involutions(seed in any::<u64>(), dims in proptest::collection::btree_set(1usize..4, 0..3)) {
        let c = molecule(seed);
        for j in [DualitySet::Odd, DualitySet::Even, DualitySet::All, DualitySet::Explicit(dims.clone())] {
            let twice = j_dual(&j_dual(&c, &j).unwrap(), &j).unwrap();
            prop_assert!(Inclusion::by_ids(&c, &twice).unwrap().is_isomorphism(&c, &twice));
        }
        let all = j_dual(&c, &DualitySet::All).unwrap();
        prop_assert!(MoleculeOracle::new(&all).is_molecule(&all.all()).unwrap());
    }

    #[test]
    fn chains_square_to_zero(seed in any::<u64>()) {
        let c = molecule(seed);
        let k = adc_of(&c).unwrap();
        prop_assert!(k.is_valid());
        prop_assert_eq!(k.ranks(), c.dim_counts());
    }

    #[test]
    fn molecules_have_ball_homology(seed in any::<u64>()) {
        let c = Shapes::new(seed, 2, 40).molecule();
        let n = c.dimension();
        let h = homology(&nerve(&c, &c.all()).unwrap()).unwrap();
        prop_assert!(h.is_acyclic());
        prop_assert_eq!(h.euler_characteristic, 1);
        let rim = homology(&nerve(&c, &boundary_set(&c, &c.all())).unwrap()).unwrap();
        prop_assert!(rim.is_sphere(n - 1));
    }

    #[test]
    fn isomorphism_ignores_names(seed in any::<u64>()) {
        let c = molecule(seed);
        let renamed = c.relabel(|id| format!("r·{id}")).unwrap();
        prop_assert!(are_isomorphic(&c, &renamed).unwrap());
        prop_assert!(are_based_isomorphic(&adc_of(&c).unwrap(), &adc_of(&renamed).unwrap()).unwrap());
    }
}
