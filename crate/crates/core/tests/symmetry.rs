mod common;

use common::*;
use continuity::oracle;
use continuity::quantale::Quantale;
use continuity::symmetry;
use proptest::prelude::*;

proptest! {
    #[test]
    fn symmetrizations_are_symmetric_distances(qi in 0..6usize, n in 1..=5usize, raw in prop::collection::vec(0..8usize, 25)) {
        let (_, q) = &quantale_corpus()[qi];
        let s = space_from_raw(q, n, &raw, false);
        let (j, p, m) = (symmetry::sym_join(&s).unwrap(), symmetry::sym_plus(&s).unwrap(), symmetry::sym_path(&s).unwrap());
        for d in [&j, &p, &m] {
            prop_assert!(d.is_symmetric());
            d.check_triangle().unwrap();
        }
        for x in 0..n {
            for y in 0..n {
                prop_assert!(q.leq(m.d(x, y), &q.meet(s.d(x, y), s.d(y, x))));
                prop_assert!(q.leq(j.d(x, y), p.d(x, y)));
            }
        }
    }

    #[test]
    fn symmetrized_topologies(qi in 0..6usize, n in 1..=4usize, raw in prop::collection::vec(0..8usize, 16)) {
        let (_, q) = &quantale_corpus()[qi];
        let s = space_from_raw(q, n, &raw, false);
        let t = s.generate_topology();
        let td = symmetry::dual(&s).generate_topology();
        let join = oracle::join_topology(&t, &td).unwrap();
        let meet = oracle::meet_topology(&t, &td).unwrap();
        prop_assert!(symmetry::sym_join(&s).unwrap().generate_topology().same_opens(&join));
        prop_assert!(symmetry::sym_plus(&s).unwrap().generate_topology().same_opens(&join));
        prop_assert!(symmetry::sym_path(&s).unwrap().generate_topology().is_coarser_than(&meet));
    }
}

#[test]
fn symmetric_spaces_are_fixed() {
    for (name, s) in space_corpus(4, 2, 3).into_iter().filter(|(_, s)| s.is_symmetric()) {
        assert_eq!(symmetry::sym_join(&s).unwrap().rows(), s.rows(), "{name}");
        assert_eq!(symmetry::sym_path(&s).unwrap().rows(), s.rows(), "{name}");
    }
}
