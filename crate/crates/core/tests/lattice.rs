mod common;

use common::*;
use continuity::lattice::FiniteLattice;
use proptest::prelude::*;

fn lattice() -> impl Strategy<Value = FiniteLattice> {
    (2u32..=3, prop::collection::vec(any::<u8>(), 1..5)).prop_map(|(g, raw)| moore_from_raw(g, &raw))
}

proptest! {
    #[test]
    fn meet_and_join_are_bounds(l in lattice()) {
        for a in l.elements() {
            for b in l.elements() {
                let m = l.meet2(a, b);
                let j = l.join2(a, b);
                prop_assert!(l.leq(m, a) && l.leq(m, b));
                prop_assert!(l.leq(a, j) && l.leq(b, j));
                for c in l.elements() {
                    if l.leq(c, a) && l.leq(c, b) {
                        prop_assert!(l.leq(c, m));
                    }
                    if l.leq(a, c) && l.leq(b, c) {
                        prop_assert!(l.leq(j, c));
                    }
                }
            }
        }
    }

    #[test]
    fn well_above_matches_definition(l in lattice()) {
        for y in l.elements() {
            for x in l.elements() {
                prop_assert_eq!(l.well_above(y, x), brute_well_above(&l, y, x), "{} over {}", l.name(y), l.name(x));
            }
        }
    }

    #[test]
    fn complete_distributivity_matches_definition(l in lattice()) {
        prop_assert_eq!(l.is_completely_distributive(), brute_completely_distributive(&l));
    }
}

#[test]
fn named_lattices() {
    for k in 1..=6 {
        assert!(FiniteLattice::chain(k).is_completely_distributive());
    }
    assert!(FiniteLattice::boolean(3).is_completely_distributive());
    assert!(!FiniteLattice::diamond().is_completely_distributive());
    assert!(!FiniteLattice::pentagon().is_completely_distributive());
}

#[test]
fn well_above_on_chains_is_order() {
    let l = FiniteLattice::chain(5);
    for y in l.elements() {
        for x in l.elements() {
            assert_eq!(l.well_above(y, x), x <= y || y == l.top());
        }
    }
}

#[test]
fn rejects_non_lattices() {
    let names = vec!["a".to_string(), "b".to_string()];
    let leq = vec![vec![true, false], vec![false, true]];
    assert!(FiniteLattice::from_table(names, leq).is_err());
}
