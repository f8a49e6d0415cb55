//! The quantale `Ω(S)` of downward-closed families of finite subsets of a base `S`.
//!
//! Families are ordered by reverse inclusion and added by intersection, so
//! the empty family is top and the family of all finite subsets is bottom.
//! Elements are kept symbolically as a finite antichain of generators
//! `A₁, .., A_m`, denoting `↓A₁ ∪ .. ∪ ↓A_m` where `↓A` is the powerset of
//! `A`. Every distance this crate builds over an `Ω` quantale is of this form.
//!
//! The representation of a subset of the base is pluggable through
//! [`BaseSubset`]: [`FiniteSubset`] is a plain bitmask over a labelled base,
//! while [`crate::upset::UpSet`] describes up-closed sets of radius maps too
//! large to list.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use thiserror::Error;

use crate::lattice::{FiniteLattice, LatticeError};
use crate::quantale::{FiniteQuantale, Quantale, QuantaleError};

/// A subset of some base set, with the operations generator arithmetic needs.
pub trait BaseSubset: Clone + Eq + Ord + Hash + fmt::Debug {
    type Base: fmt::Debug;

    fn full(base: &Self::Base) -> Self;
    fn is_subset(&self, other: &Self, base: &Self::Base) -> bool;
    fn intersect(&self, other: &Self, base: &Self::Base) -> Self;
    fn union(&self, other: &Self, base: &Self::Base) -> Self;
    /// `self ∩ other ⊆ target`, without building the intersection when that is cheaper.
    fn intersection_within(&self, other: &Self, target: &Self, base: &Self::Base) -> bool {
        self.intersect(other, base).is_subset(target, base)
    }
    /// Whether this value can describe a subset of `base` at all.
    fn fits(&self, base: &Self::Base) -> bool;
    fn render(&self, base: &Self::Base) -> String;
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OmegaError {
    #[error("element does not belong to the base {0}")]
    BaseMismatch(String),
    #[error("base has {0} points; enumeration is limited to {1}")]
    BaseTooLarge(usize, usize),
    #[error("base has {0} points; at most 128 are supported")]
    BaseTooWide(usize),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Quantale(#[from] QuantaleError),
}

/// A labelled finite base of at most 128 points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteBase {
    labels: Vec<String>,
}

impl FiniteBase {
    pub fn new(labels: Vec<String>) -> Result<Self, OmegaError> {
        if labels.len() > 128 {
            return Err(OmegaError::BaseTooWide(labels.len()));
        }
        Ok(FiniteBase { labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn subset<I: IntoIterator<Item = usize>>(&self, members: I) -> FiniteSubset {
        FiniteSubset(members.into_iter().fold(0u128, |acc, i| {
            assert!(i < self.len(), "point {i} outside the base");
            acc | (1u128 << i)
        }))
    }
}

/// A subset of a [`FiniteBase`], as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteSubset(pub u128);

impl FiniteSubset {
    pub fn contains(self, i: usize) -> bool {
        self.0 & (1u128 << i) != 0
    }

    pub fn members(self) -> impl Iterator<Item = usize> {
        (0..128).filter(move |&i| self.contains(i))
    }
}

impl BaseSubset for FiniteSubset {
    type Base = FiniteBase;

    fn full(base: &FiniteBase) -> Self {
        if base.len() == 128 {
            FiniteSubset(u128::MAX)
        } else {
            FiniteSubset((1u128 << base.len()) - 1)
        }
    }

    fn is_subset(&self, other: &Self, _: &FiniteBase) -> bool {
        self.0 & !other.0 == 0
    }

    fn intersect(&self, other: &Self, _: &FiniteBase) -> Self {
        FiniteSubset(self.0 & other.0)
    }

    fn union(&self, other: &Self, _: &FiniteBase) -> Self {
        FiniteSubset(self.0 | other.0)
    }

    fn fits(&self, base: &FiniteBase) -> bool {
        self.is_subset(&Self::full(base), base)
    }

    fn render(&self, base: &FiniteBase) -> String {
        let names: Vec<&str> = self.members().map(|i| base.labels[i].as_str()).collect();
        format!("{{{}}}", names.join(" "))
    }
}

/// An element of `Ω(S)` in canonical generator form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OmegaElement<S> {
    gens: Vec<S>,
}

impl<S: BaseSubset> OmegaElement<S> {
    /// Canonicalises: keeps the maximal generators, sorted and deduplicated.
    pub fn from_generators<I: IntoIterator<Item = S>>(gens: I, base: &S::Base) -> Self {
        let mut all: Vec<S> = gens.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let mut keep = Vec::with_capacity(all.len());
        for (i, a) in all.iter().enumerate() {
            let dominated = all
                .iter()
                .enumerate()
                .any(|(j, b)| i != j && a.is_subset(b, base) && a != b);
            if !dominated {
                keep.push(i);
            }
        }
        let mut idx = 0;
        all.retain(|_| {
            let k = keep.contains(&idx);
            idx += 1;
            k
        });
        OmegaElement { gens: all }
    }

    /// `↓A`: every finite subset of `A`.
    pub fn principal(a: S) -> Self {
        OmegaElement { gens: vec![a] }
    }

    /// The empty family.
    pub fn top() -> Self {
        OmegaElement { gens: Vec::new() }
    }

    pub fn bottom(base: &S::Base) -> Self {
        Self::principal(S::full(base))
    }

    pub fn generators(&self) -> &[S] {
        &self.gens
    }

    pub fn is_top(&self) -> bool {
        self.gens.is_empty()
    }

    /// Whether the finite set `c` belongs to the family.
    pub fn contains(&self, c: &S, base: &S::Base) -> bool {
        self.gens.iter().any(|a| c.is_subset(a, base))
    }
}

/// `Ω(S)` over a fixed base.
pub struct Omega<S: BaseSubset> {
    base: Arc<S::Base>,
}

impl<S: BaseSubset> Clone for Omega<S> {
    fn clone(&self) -> Self {
        Omega { base: Arc::clone(&self.base) }
    }
}

impl<S: BaseSubset> fmt::Debug for Omega<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Omega").field("base", &self.base).finish()
    }
}

impl<S: BaseSubset> Omega<S> {
    pub fn new(base: S::Base) -> Self {
        Omega { base: Arc::new(base) }
    }

    pub fn base(&self) -> &S::Base {
        &self.base
    }

    pub fn element<I: IntoIterator<Item = S>>(&self, gens: I) -> OmegaElement<S> {
        OmegaElement::from_generators(gens, &self.base)
    }

    fn check(&self, p: &OmegaElement<S>) -> Result<(), OmegaError> {
        if p.gens.iter().all(|a| a.fits(&self.base)) {
            Ok(())
        } else {
            Err(OmegaError::BaseMismatch(format!("{:?}", self.base)))
        }
    }

    /// Reverse inclusion of families, checked against the base.
    pub fn omega_leq(&self, p: &OmegaElement<S>, q: &OmegaElement<S>) -> Result<bool, OmegaError> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.leq(p, q))
    }

    /// Union of families.
    pub fn omega_meet(&self, set: &[OmegaElement<S>]) -> Result<OmegaElement<S>, OmegaError> {
        for p in set {
            self.check(p)?;
        }
        Ok(self.meet_all(set))
    }

    /// Intersection of families.
    pub fn omega_plus(&self, p: &OmegaElement<S>, q: &OmegaElement<S>) -> Result<OmegaElement<S>, OmegaError> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.plus(p, q))
    }

    /// `p ≻ q`: `p` is top, or some generator of `q` contains every generator of `p`.
    pub fn omega_well_above(&self, p: &OmegaElement<S>, q: &OmegaElement<S>) -> Result<bool, OmegaError> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.well_above(p, q))
    }
}

impl Omega<FiniteSubset> {
    /// Every element of `Ω(base)`, for bases of at most three points.
    pub fn enumerate(&self) -> Result<Vec<OmegaElement<FiniteSubset>>, OmegaError> {
        enumerate_omega(&self.base)
    }

    /// The enumerated `Ω(base)` as a table-driven quantale, with its elements
    /// in the same order as the quantale's carrier.
    pub fn to_finite(&self) -> Result<(FiniteQuantale, Vec<OmegaElement<FiniteSubset>>), OmegaError> {
        let elems = self.enumerate()?;
        let names: Vec<String> = elems.iter().map(|e| self.render(e)).collect();
        let leq = elems
            .iter()
            .map(|p| elems.iter().map(|q| self.leq(p, q)).collect())
            .collect();
        let lattice = FiniteLattice::from_table(names, leq)?;
        let index = |e: &OmegaElement<FiniteSubset>| elems.iter().position(|x| x == e).expect("closed under +");
        let q = FiniteQuantale::from_fn(lattice, |a, b| index(&self.plus(&elems[a], &elems[b])))?;
        Ok((q, elems))
    }
}

/// All downward-closed families over `base` (at most three points).
pub fn enumerate_omega(base: &FiniteBase) -> Result<Vec<OmegaElement<FiniteSubset>>, OmegaError> {
    const LIMIT: usize = 3;
    let n = base.len();
    if n > LIMIT {
        return Err(OmegaError::BaseTooLarge(n, LIMIT));
    }
    let subsets = 1usize << n;
    let mut out = Vec::new();
    // A family is a bitmask over the 2^n subsets of the base.
    for fam in 0u32..(1u32 << subsets) {
        let member = |s: usize| fam & (1 << s) != 0;
        let down_closed = (0..subsets)
            .filter(|&s| member(s))
            .all(|s| (0..subsets).all(|t| t & !s != 0 || member(t)));
        if down_closed {
            let gens = (0..subsets).filter(|&s| member(s)).map(|s| FiniteSubset(s as u128));
            out.push(OmegaElement::from_generators(gens, base));
        }
    }
    Ok(out)
}

impl<S: BaseSubset> Quantale for Omega<S> {
    type Elem = OmegaElement<S>;

    fn bottom(&self) -> Self::Elem {
        OmegaElement::bottom(self.base())
    }

    fn top(&self) -> Self::Elem {
        OmegaElement::top()
    }

    fn leq(&self, p: &Self::Elem, q: &Self::Elem) -> bool {
        q.gens.iter().all(|b| p.gens.iter().any(|a| b.is_subset(a, &self.base)))
    }

    fn meet(&self, p: &Self::Elem, q: &Self::Elem) -> Self::Elem {
        self.element(p.gens.iter().chain(&q.gens).cloned())
    }

    fn join(&self, p: &Self::Elem, q: &Self::Elem) -> Self::Elem {
        self.plus(p, q)
    }

    fn plus(&self, p: &Self::Elem, q: &Self::Elem) -> Self::Elem {
        let gens = p
            .gens
            .iter()
            .flat_map(|a| q.gens.iter().map(move |b| a.intersect(b, &self.base)));
        self.element(gens.collect::<Vec<_>>())
    }

    /// Every `a ∩ b` lies inside some generator of `c`.
    fn leq_sum(&self, c: &Self::Elem, p: &Self::Elem, q: &Self::Elem) -> bool {
        p.gens.iter().all(|a| {
            q.gens
                .iter()
                .all(|b| c.gens.iter().any(|g| a.intersection_within(b, g, &self.base)))
        })
    }

    fn well_above(&self, p: &Self::Elem, q: &Self::Elem) -> bool {
        p.is_top()
            || q.gens
                .iter()
                .any(|g| p.gens.iter().all(|a| a.is_subset(g, &self.base)))
    }

    /// `↓(A₁ ∪ .. ∪ A_m)`, the largest `δ` with `p ≻ δ = δ + δ`.
    fn half(&self, p: &Self::Elem) -> Option<Self::Elem> {
        if p.is_top() {
            return Some(OmegaElement::top());
        }
        let mut gens = p.gens.iter();
        let first = gens.next()?.clone();
        let union = gens.fold(first, |acc, a| acc.union(a, &self.base));
        Some(OmegaElement::principal(union))
    }

    fn radius_family(&self, distances: &[Self::Elem]) -> Vec<Self::Elem> {
        let mut out = vec![self.bottom(), self.top()];
        for d in distances {
            for g in &d.gens {
                let r = OmegaElement::principal(g.clone());
                if !out.contains(&r) {
                    out.push(r);
                }
            }
        }
        out
    }

    fn finest_radius(&self, _distances: &[Self::Elem]) -> Self::Elem {
        self.bottom()
    }

    fn render(&self, e: &Self::Elem) -> String {
        if e.is_top() {
            return "top".to_string();
        }
        let gens: Vec<String> = e.gens.iter().map(|g| g.render(&self.base)).collect();
        format!("↓[{}]", gens.join(" "))
    }
}
