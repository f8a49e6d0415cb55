mod common;

use std::collections::BTreeSet;

use common::*;
use continuity::oracle;
use continuity::space::metrize;
use continuity::topology::{FiniteTopology, PointSet};
use proptest::prelude::*;

fn keys(ts: &[FiniteTopology]) -> BTreeSet<Vec<u64>> {
    ts.iter().map(|t| t.opens().iter().map(|u| u.0).collect()).collect()
}

#[test]
fn enumeration_matches_preorders() {
    for (n, count) in [(1, 1), (2, 4), (3, 29), (4, 355)] {
        let listed = oracle::enumerate_topologies(n).unwrap();
        assert_eq!(listed.len(), count, "{n} points");
        assert_eq!(keys(&listed), keys(&topologies_from_preorders(n)), "{n} points");
    }
}

#[test]
fn metrization_round_trips_up_to_three_points() {
    for n in 1..=3 {
        for t in oracle::enumerate_topologies(n).unwrap() {
            let m = metrize(&t).unwrap();
            m.check_triangle().unwrap();
            assert!(m.generate_topology().same_opens(&t));
        }
    }
}

#[test]
fn metrized_predicates_match_topology() {
    for n in 1..=3 {
        for t in oracle::enumerate_topologies(n).unwrap() {
            let m = metrize(&t).unwrap();
            assert_eq!(m.is_kolmogorov(), oracle::is_t0(&t));
            assert_eq!(m.is_frechet(), oracle::is_t1(&t));
            assert_eq!(m.is_regular_metric(), oracle::is_regular(&t));
            assert_eq!(m.is_connected_metric(), oracle::is_connected(&t));
        }
    }
}

#[test]
fn closure_is_complement_of_interior() {
    for t in oracle::enumerate_topologies(3).unwrap() {
        for s in PointSet::all(3) {
            assert_eq!(t.closure(s), t.interior(s.complement(3)).complement(3));
        }
    }
}

fn space() -> impl Strategy<Value = (usize, usize, Vec<usize>, bool)> {
    (0..6usize, 1..=4usize, prop::collection::vec(0..8usize, 16), any::<bool>())
}

proptest! {
    #[test]
    fn ball_topology_matches_exhaustive((qi, n, raw, sym) in space()) {
        let (_, q) = &quantale_corpus()[qi];
        let s = space_from_raw(q, n, &raw, sym);
        let t = s.generate_topology();
        prop_assert!(t.same_opens(&s.generate_topology_exhaustive().unwrap()));
        prop_assert_eq!(s.regularity_violation().is_none(), s.regularity_violation_exhaustive().unwrap().is_none());
        prop_assert_eq!(s.is_connected_metric(), s.is_connected_metric_exhaustive().unwrap());
        prop_assert_eq!(s.is_kolmogorov(), oracle::is_t0(&t));
        prop_assert_eq!(s.is_frechet(), oracle::is_t1(&t));
        prop_assert_eq!(s.is_regular_metric(), oracle::is_regular(&t));
        prop_assert_eq!(s.is_connected_metric(), oracle::is_connected(&t));
        for c in PointSet::all(n) {
            prop_assert_eq!(s.closure_pts(c), t.closure(c));
        }
    }
}
