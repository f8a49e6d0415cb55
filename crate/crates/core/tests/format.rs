mod common;

use common::*;
use continuity::format::{self, AnySpace, SectionKind};
use continuity::oracle;
use continuity::topology::Partition;
use proptest::prelude::*;

proptest! {
    #[test]
    fn finite_spaces_round_trip(qi in 0..6usize, n in 1..=4usize, raw in prop::collection::vec(0..8usize, 16), sym: bool) {
        let (qname, q) = &quantale_corpus()[qi];
        let s = space_from_raw(q, n, &raw, sym);
        let text = format::emit_finite_space("X", qname, &s);
        let doc = format::parse(&text).unwrap();
        prop_assert_eq!(&doc.quantale(qname).unwrap(), q);
        match doc.space("X").unwrap() {
            AnySpace::Finite(back) => {
                prop_assert_eq!(back.names(), s.names());
                prop_assert_eq!(back.rows(), s.rows());
            }
            AnySpace::Real(_) => prop_assert!(false, "read back over the half-line"),
        }
    }

    #[test]
    fn equivalences_round_trip(n in 1..=5usize, raw in prop::collection::vec(0..5usize, 5)) {
        let eq = Partition::from_relation(n, |x, y| raw[x] % n == raw[y] % n).unwrap();
        let pts = names(n);
        let text = format!("{}\n{}", format::emit_topology("T", &continuity::topology::FiniteTopology::discrete(n).with_names(pts.clone())), format::emit_equiv("E", &eq, &pts));
        let doc = format::parse(&text).unwrap();
        prop_assert_eq!(doc.equiv("E", &pts).unwrap(), eq);
    }
}

#[test]
fn topologies_round_trip() {
    for t in oracle::enumerate_topologies(3).unwrap() {
        let doc = format::parse(&format::emit_topology("T", &t)).unwrap();
        assert!(doc.topology("T").unwrap().same_opens(&t));
    }
}

#[test]
fn half_line_space_round_trips() {
    let doc = format::parse(include_str!("../../../data/four_points.txt")).unwrap();
    let AnySpace::Real(s) = doc.space("S").unwrap() else { panic!("expected the half-line") };
    let again = format::parse(&format::emit_space("S", "extended-reals", &s)).unwrap();
    let AnySpace::Real(back) = again.space("S").unwrap() else { panic!("expected the half-line") };
    assert_eq!(back.rows(), s.rows());
}

#[test]
fn sample_document_sections() {
    let doc = format::parse(include_str!("../../../data/sierpinski.txt")).unwrap();
    assert_eq!(doc.names_of(SectionKind::Space), ["D", "P"]);
    assert!(doc.pick(SectionKind::Space, None).is_err());
    assert_eq!(doc.pick(SectionKind::Topology, None).unwrap(), "S");
    assert!(doc.space("D").unwrap().generate_topology().same_opens(&doc.topology("S").unwrap()));
}

#[test]
fn malformed_documents_report_positions() {
    for bad in [
        "[topology T]\npoints = {a b}\nd a b = 1\n",
        "[topology T]\npoints = {a b}\nopen = {c}\n",
        "[lattice L]\nelements = {a b}\na <= \n",
        "[mystery M]\n",
        "[topology T]\npoints = {a}\n[topology T]\npoints = {b}\n",
    ] {
        let err = format::parse(bad).and_then(|d| {
            d.topology("T")?;
            Ok(())
        });
        let e = err.expect_err(bad);
        assert!(e.to_string().starts_with("line "), "{e}");
    }
}
