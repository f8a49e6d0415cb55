//! Up-closed sets of radius maps, the subsets of `U` that the
//! constructions feed into `Ω(U)`.
//!
//! A radius map assigns to each slot a value from that slot's finite poset
//! of radii. An up-closed set of maps is stored as the antichain of its
//! minimal maps.

use std::fmt;

use crate::omega::BaseSubset;
use crate::quantale::Quantale;

/// A finite join-semilattice of radii with a least element.
#[derive(Clone, PartialEq, Eq)]
pub struct SlotPoset {
    labels: Vec<String>,
    leq: Vec<bool>,
    join: Vec<u16>,
    least: u16,
}

impl fmt::Debug for SlotPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SlotPoset").field("labels", &self.labels).finish()
    }
}

impl SlotPoset {
    /// The join-closure of `family` inside `q`, with its order and joins.
    ///
    /// Returns the closed family alongside the poset, in matching order, or
    /// `None` when the family has no least element. That only happens when
    /// the positives of `q` do not form a filter.
    pub fn from_radii<Q: Quantale>(q: &Q, family: &[Q::Elem]) -> Option<(Self, Vec<Q::Elem>)> {
        let mut elems: Vec<Q::Elem> = Vec::new();
        for e in family {
            if !elems.contains(e) {
                elems.push(e.clone());
            }
        }
        let mut i = 0;
        while i < elems.len() {
            for j in 0..i {
                let j_ = q.join(&elems[i], &elems[j]);
                if !elems.contains(&j_) {
                    elems.push(j_);
                }
            }
            i += 1;
        }
        let n = elems.len();
        assert!(n <= u16::MAX as usize, "radius poset too large");
        let leq: Vec<bool> = (0..n * n).map(|k| q.leq(&elems[k / n], &elems[k % n])).collect();
        let join: Vec<u16> = (0..n * n)
            .map(|k| {
                let j = q.join(&elems[k / n], &elems[k % n]);
                elems.iter().position(|e| *e == j).expect("join-closed") as u16
            })
            .collect();
        let least = (0..n).find(|&a| (0..n).all(|b| leq[a * n + b]))? as u16;
        let labels = elems.iter().map(|e| q.render(e)).collect();
        Some((SlotPoset { labels, leq, join, least }, elems))
    }

    /// The product poset, ordered and joined coordinatewise. Values are
    /// numbered in mixed radix with the first factor most significant.
    pub fn product(factors: &[SlotPoset]) -> Self {
        let sizes: Vec<usize> = factors.iter().map(|p| p.len()).collect();
        let total: usize = sizes.iter().product();
        assert!(total <= u16::MAX as usize, "product radius poset too large");
        let coords = |mut k: usize| {
            let mut c = vec![0usize; sizes.len()];
            for i in (0..sizes.len()).rev() {
                c[i] = k % sizes[i];
                k /= sizes[i];
            }
            c
        };
        let index = |c: &[usize]| c.iter().zip(&sizes).fold(0usize, |acc, (&x, &s)| acc * s + x);
        let all: Vec<Vec<usize>> = (0..total).map(coords).collect();
        let leq = (0..total * total)
            .map(|k| {
                let (a, b) = (&all[k / total], &all[k % total]);
                factors.iter().enumerate().all(|(i, p)| p.leq(a[i] as u16, b[i] as u16))
            })
            .collect();
        let join = (0..total * total)
            .map(|k| {
                let (a, b) = (&all[k / total], &all[k % total]);
                let c: Vec<usize> = factors
                    .iter()
                    .enumerate()
                    .map(|(i, p)| p.join(a[i] as u16, b[i] as u16) as usize)
                    .collect();
                index(&c) as u16
            })
            .collect();
        let least: Vec<usize> = factors.iter().map(|p| p.least as usize).collect();
        let labels = all
            .iter()
            .map(|c| {
                let parts: Vec<&str> = c.iter().enumerate().map(|(i, &x)| factors[i].labels[x].as_str()).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        SlotPoset { labels, leq, join, least: index(&least) as u16 }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn leq(&self, a: u16, b: u16) -> bool {
        self.leq[a as usize * self.len() + b as usize]
    }

    pub fn join(&self, a: u16, b: u16) -> u16 {
        self.join[a as usize * self.len() + b as usize]
    }

    pub fn least(&self) -> u16 {
        self.least
    }

    pub fn label(&self, a: u16) -> &str {
        &self.labels[a as usize]
    }

    /// Minimal elements of `{a : pred(a)}`.
    pub fn minimal_where(&self, pred: impl Fn(u16) -> bool) -> Vec<u16> {
        let hits: Vec<u16> = (0..self.len() as u16).filter(|&a| pred(a)).collect();
        hits.iter()
            .copied()
            .filter(|&a| !hits.iter().any(|&b| b != a && self.leq(b, a)))
            .collect()
    }
}

/// The set `U` of radius maps: one value per slot, each from its slot's poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadiusMapBase {
    posets: Vec<SlotPoset>,
    slot_poset: Vec<usize>,
    slot_names: Vec<String>,
}

impl RadiusMapBase {
    pub fn new(posets: Vec<SlotPoset>, slot_poset: Vec<usize>, slot_names: Vec<String>) -> Self {
        assert_eq!(slot_poset.len(), slot_names.len());
        assert!(slot_poset.iter().all(|&p| p < posets.len()));
        RadiusMapBase { posets, slot_poset, slot_names }
    }

    pub fn slots(&self) -> usize {
        self.slot_poset.len()
    }

    pub fn poset(&self, slot: usize) -> &SlotPoset {
        &self.posets[self.slot_poset[slot]]
    }

    pub fn least_map(&self) -> Box<[u16]> {
        (0..self.slots()).map(|s| self.poset(s).least()).collect()
    }

    fn leq_map(&self, a: &[u16], b: &[u16]) -> bool {
        (0..self.slots()).all(|s| self.poset(s).leq(a[s], b[s]))
    }

    fn join_map(&self, a: &[u16], b: &[u16]) -> Box<[u16]> {
        (0..self.slots()).map(|s| self.poset(s).join(a[s], b[s])).collect()
    }

    /// Canonical antichain: the minimal maps, sorted and deduplicated.
    pub fn minimise(&self, mut maps: Vec<Box<[u16]>>) -> UpSet {
        maps.sort();
        maps.dedup();
        let keep: Vec<bool> = maps
            .iter()
            .map(|a| !maps.iter().any(|b| b != a && self.leq_map(b, a)))
            .collect();
        let mins = maps.into_iter().zip(keep).filter(|(_, k)| *k).map(|(m, _)| m).collect();
        UpSet { mins }
    }

    /// The up-closure of maps equal to `base` except that `slot` is raised to at least `value`.
    pub fn raise(&self, set: &UpSet, slot: usize, value: u16) -> Vec<Box<[u16]>> {
        let p = self.poset(slot);
        set.mins
            .iter()
            .map(|m| {
                let mut r = m.clone();
                r[slot] = p.join(r[slot], value);
                r
            })
            .collect()
    }
}

/// An up-closed set of radius maps, by its minimal elements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UpSet {
    mins: Vec<Box<[u16]>>,
}

impl UpSet {
    pub fn empty() -> Self {
        UpSet { mins: Vec::new() }
    }

    pub fn minimal_maps(&self) -> &[Box<[u16]>] {
        &self.mins
    }

    pub fn is_empty(&self) -> bool {
        self.mins.is_empty()
    }

    /// Whether `map` lies in the up-set.
    pub fn contains(&self, map: &[u16], base: &RadiusMapBase) -> bool {
        self.mins.iter().any(|m| base.leq_map(m, map))
    }
}

impl BaseSubset for UpSet {
    type Base = RadiusMapBase;

    fn full(base: &RadiusMapBase) -> Self {
        UpSet { mins: vec![base.least_map()] }
    }

    fn is_subset(&self, other: &Self, base: &RadiusMapBase) -> bool {
        self.mins.iter().all(|a| other.contains(a, base))
    }

    fn intersect(&self, other: &Self, base: &RadiusMapBase) -> Self {
        let joins = self
            .mins
            .iter()
            .flat_map(|a| other.mins.iter().map(move |b| base.join_map(a, b)))
            .collect();
        base.minimise(joins)
    }

    fn intersection_within(&self, other: &Self, target: &Self, base: &RadiusMapBase) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.mins.iter().all(|a| {
            other.mins.iter().all(|b| {
                let j = base.join_map(a, b);
                seen.contains(&j) || {
                    let ok = target.contains(&j, base);
                    seen.insert(j);
                    ok
                }
            })
        })
    }

    fn union(&self, other: &Self, base: &RadiusMapBase) -> Self {
        base.minimise(self.mins.iter().chain(&other.mins).cloned().collect())
    }

    fn fits(&self, base: &RadiusMapBase) -> bool {
        self.mins.iter().all(|m| {
            m.len() == base.slots() && m.iter().enumerate().all(|(s, &v)| (v as usize) < base.poset(s).len())
        })
    }

    fn render(&self, base: &RadiusMapBase) -> String {
        let maps: Vec<String> = self
            .mins
            .iter()
            .map(|m| {
                let least = base.least_map();
                let raised: Vec<String> = (0..base.slots())
                    .filter(|&s| m[s] != least[s])
                    .map(|s| format!("{}:{}", base.slot_names[s], base.poset(s).label(m[s])))
                    .collect();
                format!("<{}>", raised.join(","))
            })
            .collect();
        format!("{{{}}}", maps.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::FiniteQuantale;

    fn chain_base(slots: usize) -> RadiusMapBase {
        let q = FiniteQuantale::truncated_chain(2);
        let (p, _) = SlotPoset::from_radii(&q, &[0, 1, 2]).unwrap();
        RadiusMapBase::new(vec![p], vec![0; slots], (0..slots).map(|i| format!("s{i}")).collect())
    }

    #[test]
    fn lattice_operations_on_upsets() {
        let b = chain_base(2);
        let a = b.minimise(vec![Box::new([1, 0]), Box::new([2, 2])]);
        assert_eq!(a.minimal_maps().len(), 1);
        let c = b.minimise(vec![Box::new([0, 1])]);
        let i = a.intersect(&c, &b);
        assert_eq!(i.minimal_maps(), &[Box::from([1u16, 1])]);
        let u = a.union(&c, &b);
        assert!(a.is_subset(&u, &b) && c.is_subset(&u, &b));
        assert!(u.is_subset(&UpSet::full(&b), &b));
        assert!(UpSet::empty().is_subset(&a, &b));
    }

    #[test]
    fn product_poset_is_coordinatewise() {
        let q = FiniteQuantale::truncated_chain(1);
        let (p, _) = SlotPoset::from_radii(&q, &[0, 1]).unwrap();
        let pp = SlotPoset::product(&[p.clone(), p]);
        assert_eq!(pp.len(), 4);
        assert_eq!(pp.least(), 0);
        assert!(pp.leq(1, 3) && !pp.leq(1, 2));
        assert_eq!(pp.join(1, 2), 3);
        assert_eq!(pp.label(2), "(1,0)");
    }
}
