mod common;

use common::*;
use continuity::omega::{FiniteBase, Omega};
use continuity::quantale::{dyadic_scale, half, FiniteQuantale, Quantale};

fn laws<Q: Quantale>(q: &Q, elems: &[Q::Elem]) {
    for a in elems {
        assert_eq!(&q.plus(a, &q.bottom()), a);
        for b in elems {
            assert_eq!(q.plus(a, b), q.plus(b, a));
            for c in elems {
                assert_eq!(q.plus(&q.plus(a, b), c), q.plus(a, &q.plus(b, c)));
                if q.leq(a, b) {
                    assert!(q.leq(&q.plus(a, c), &q.plus(b, c)));
                }
                assert_eq!(q.leq_sum(c, a, b), q.leq(c, &q.plus(a, b)));
            }
        }
    }
}

#[test]
fn corpus_quantales_obey_the_axioms() {
    for (name, q) in quantale_corpus() {
        q.check_axioms().unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(q.is_value_quantale(), "{name}");
        let elems: Vec<_> = q.lattice().elements().collect();
        laws(&q, &elems);
    }
}

#[test]
fn halves_are_positive_and_well_below() {
    for (name, q) in quantale_corpus() {
        for &eps in q.positives() {
            let d = half(&q, &eps).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(q.is_positive(&d), "{name}");
            assert!(q.well_above(&eps, &q.plus(&d, &d)), "{name}");
        }
    }
}

#[test]
fn dyadic_scales_are_monotone() {
    for (name, q) in quantale_corpus() {
        for &eps in q.positives() {
            let s = dyadic_scale(&q, &eps, 3).unwrap_or_else(|e| panic!("{name}: {e}"));
            s.check_monotone(&q).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }
}

#[test]
fn omega_laws_and_sum_shortcut() {
    for k in 1..=3 {
        let base = FiniteBase::new(names(k)).unwrap();
        let omega = Omega::new(base);
        let elems = omega.enumerate().unwrap();
        laws(&omega, &elems);
        let (finite, _) = omega.to_finite().unwrap();
        assert!(finite.is_value_quantale(), "base of {k}");
    }
}

#[test]
fn join_is_not_a_value_addition_on_four_element_boolean() {
    let q = FiniteQuantale::with_join(continuity::lattice::FiniteLattice::boolean(2));
    assert!(!q.is_value_quantale());
}
