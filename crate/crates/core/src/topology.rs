//! Finite topological spaces.
//!
//! A topology on a finite set is determined by the minimal open
//! neighbourhood of each point, so that is what [`FiniteTopology`] stores.
//! The open sets themselves are enumerated on demand.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// A set of points of a carrier with at most 64 points.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PointSet(pub u64);

/// Largest carrier a [`PointSet`] can describe.
pub const MAX_POINTS: usize = 64;

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_POINTS, "carrier of {n} points exceeds {MAX_POINTS}");
        if n == MAX_POINTS {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        PointSet(1u64 << i)
    }

    pub fn from_points<I: IntoIterator<Item = usize>>(points: I) -> Self {
        points.into_iter().fold(PointSet::EMPTY, |s, i| s.with(i))
    }

    pub fn with(self, i: usize) -> Self {
        PointSet(self.0 | (1u64 << i))
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_POINTS && self.0 & (1u64 << i) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Self) -> Self {
        PointSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        PointSet(self.0 & other.0)
    }

    pub fn minus(self, other: Self) -> Self {
        PointSet(self.0 & !other.0)
    }

    pub fn complement(self, n: usize) -> Self {
        PointSet::full(n).minus(self)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..MAX_POINTS).filter(move |&i| bits & (1u64 << i) != 0)
    }

    /// Every subset of an `n`-point carrier, in binary order.
    pub fn all(n: usize) -> impl Iterator<Item = PointSet> {
        assert!(n < MAX_POINTS);
        (0..(1u64 << n)).map(PointSet)
    }

    pub fn render(self, names: &[String]) -> String {
        let items: Vec<&str> = self.iter().map(|i| names[i].as_str()).collect();
        format!("{{{}}}", items.join(" "))
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error("carrier has {0} points; at most {MAX_POINTS} are supported")]
    TooManyPoints(usize),
    #[error("open set {0} mentions a point outside the carrier")]
    OutOfRange(String),
    #[error("opens are not closed under union: {0} and {1}")]
    NotUnionClosed(String, String),
    #[error("opens are not closed under intersection: {0} and {1}")]
    NotIntersectionClosed(String, String),
    #[error("neighbourhood of point {0} does not contain it")]
    NotReflexive(usize),
    #[error("{0} points given but {1} neighbourhoods")]
    Shape(usize, usize),
    #[error("point {0} lies in no class or in more than one")]
    NotPartition(usize),
}

/// A topology on a finite carrier.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteTopology {
    names: Vec<String>,
    nbhd: Vec<PointSet>,
}

impl fmt::Debug for FiniteTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opens: Vec<String> = self.opens().iter().map(|u| u.render(&self.names)).collect();
        f.debug_struct("FiniteTopology")
            .field("points", &self.names)
            .field("opens", &opens)
            .finish()
    }
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

impl FiniteTopology {
    /// The topology with the given open sets. `∅` and the carrier are added
    /// if missing; the family must be closed under union and intersection.
    pub fn from_opens(names: Vec<String>, opens: &[PointSet]) -> Result<Self, TopologyError> {
        let n = names.len();
        if n > MAX_POINTS {
            return Err(TopologyError::TooManyPoints(n));
        }
        let full = PointSet::full(n);
        let mut family: BTreeSet<PointSet> = opens.iter().copied().collect();
        family.insert(PointSet::EMPTY);
        family.insert(full);
        if let Some(u) = family.iter().find(|u| !u.is_subset(full)) {
            return Err(TopologyError::OutOfRange(format!("{u:?}")));
        }
        for &u in &family {
            for &v in &family {
                if !family.contains(&u.union(v)) {
                    return Err(TopologyError::NotUnionClosed(u.render(&names), v.render(&names)));
                }
                if !family.contains(&u.intersection(v)) {
                    return Err(TopologyError::NotIntersectionClosed(u.render(&names), v.render(&names)));
                }
            }
        }
        let nbhd = (0..n)
            .map(|x| {
                family
                    .iter()
                    .filter(|u| u.contains(x))
                    .fold(full, |acc, &u| acc.intersection(u))
            })
            .collect();
        Ok(FiniteTopology { names, nbhd })
    }

    /// The coarsest topology in which each `basic[x]` is a neighbourhood of `x`.
    ///
    /// The minimal neighbourhood of `x` is everything reachable from `x`
    /// along the relation `y ∈ basic[x]`.
    pub fn from_neighbourhoods(names: Vec<String>, basic: &[PointSet]) -> Result<Self, TopologyError> {
        let n = names.len();
        if n > MAX_POINTS {
            return Err(TopologyError::TooManyPoints(n));
        }
        if basic.len() != n {
            return Err(TopologyError::Shape(n, basic.len()));
        }
        if let Some(x) = (0..n).find(|&x| !basic[x].contains(x)) {
            return Err(TopologyError::NotReflexive(x));
        }
        let full = PointSet::full(n);
        if let Some(s) = basic.iter().find(|s| !s.is_subset(full)) {
            return Err(TopologyError::OutOfRange(format!("{s:?}")));
        }
        let mut nbhd = basic.to_vec();
        loop {
            let mut changed = false;
            for x in 0..n {
                let grown = nbhd[x].iter().fold(nbhd[x], |acc, y| acc.union(nbhd[y]));
                if grown != nbhd[x] {
                    nbhd[x] = grown;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Ok(FiniteTopology { names, nbhd })
    }

    /// The topology generated by a subbase.
    pub fn generated_by(names: Vec<String>, subbase: &[PointSet]) -> Result<Self, TopologyError> {
        let n = names.len();
        if n > MAX_POINTS {
            return Err(TopologyError::TooManyPoints(n));
        }
        let full = PointSet::full(n);
        let basic: Vec<PointSet> = (0..n)
            .map(|x| {
                subbase
                    .iter()
                    .filter(|s| s.contains(x))
                    .fold(full, |acc, &s| acc.intersection(s))
            })
            .collect();
        Self::from_neighbourhoods(names, &basic)
    }

    pub fn discrete(n: usize) -> Self {
        let basic: Vec<PointSet> = (0..n).map(PointSet::singleton).collect();
        Self::from_neighbourhoods(default_names(n), &basic).expect("singletons")
    }

    pub fn indiscrete(n: usize) -> Self {
        Self::from_neighbourhoods(default_names(n), &vec![PointSet::full(n); n]).expect("full sets")
    }

    /// Points `x, y` with opens `∅, {x}, {x, y}`.
    pub fn sierpinski() -> Self {
        let names = vec!["x".to_string(), "y".to_string()];
        Self::from_opens(names, &[PointSet::singleton(0)]).expect("Sierpiński opens")
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.len());
        self.names = names;
        self
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn full(&self) -> PointSet {
        PointSet::full(self.len())
    }

    /// The smallest open set containing `x`.
    pub fn neighbourhood(&self, x: usize) -> PointSet {
        self.nbhd[x]
    }

    pub fn neighbourhoods(&self) -> &[PointSet] {
        &self.nbhd
    }

    pub fn is_open(&self, u: PointSet) -> bool {
        u.is_subset(self.full()) && u.iter().all(|x| self.nbhd[x].is_subset(u))
    }

    pub fn is_closed(&self, c: PointSet) -> bool {
        self.is_open(c.complement(self.len()))
    }

    pub fn interior(&self, s: PointSet) -> PointSet {
        PointSet::from_points(s.iter().filter(|&x| self.nbhd[x].is_subset(s)))
    }

    pub fn closure(&self, s: PointSet) -> PointSet {
        PointSet::from_points((0..self.len()).filter(|&x| !self.nbhd[x].intersection(s).is_empty()))
    }

    /// All open sets, ascending.
    pub fn opens(&self) -> Vec<PointSet> {
        let mut family: BTreeSet<PointSet> = BTreeSet::from([PointSet::EMPTY]);
        for &b in &self.nbhd {
            let grown: Vec<PointSet> = family.iter().map(|&u| u.union(b)).collect();
            family.extend(grown);
        }
        family.into_iter().collect()
    }

    pub fn closed_sets(&self) -> Vec<PointSet> {
        let mut out: Vec<PointSet> = self.opens().into_iter().map(|u| u.complement(self.len())).collect();
        out.sort();
        out
    }

    /// Whether `f` (given by the image of each point) is continuous into `target`.
    pub fn is_continuous(&self, f: &[usize], target: &FiniteTopology) -> bool {
        (0..self.len()).all(|x| {
            self.nbhd[x]
                .iter()
                .all(|y| target.nbhd[f[x]].contains(f[y]))
        })
    }

    /// The coarsest topology finer than both.
    pub fn join(&self, other: &FiniteTopology) -> FiniteTopology {
        assert_eq!(self.len(), other.len());
        let nbhd = self.nbhd.iter().zip(&other.nbhd).map(|(a, b)| a.intersection(*b)).collect();
        FiniteTopology { names: self.names.clone(), nbhd }
    }

    /// The finest topology coarser than both.
    pub fn meet(&self, other: &FiniteTopology) -> FiniteTopology {
        assert_eq!(self.len(), other.len());
        let basic: Vec<PointSet> = self.nbhd.iter().zip(&other.nbhd).map(|(a, b)| a.union(*b)).collect();
        Self::from_neighbourhoods(self.names.clone(), &basic).expect("reflexive")
    }

    /// Same open sets, ignoring point names.
    pub fn same_opens(&self, other: &FiniteTopology) -> bool {
        self.nbhd == other.nbhd
    }

    /// Whether every open set of `self` is open in `other`.
    pub fn is_coarser_than(&self, other: &FiniteTopology) -> bool {
        self.len() == other.len() && (0..self.len()).all(|x| other.nbhd[x].is_subset(self.nbhd[x]))
    }
}

/// A partition of a finite carrier into equivalence classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    classes: Vec<PointSet>,
    class_of: Vec<usize>,
}

impl Partition {
    /// Classes must be disjoint and cover `0..n`; missing points become singletons.
    pub fn new(n: usize, classes: &[PointSet]) -> Result<Self, TopologyError> {
        let mut class_of = vec![usize::MAX; n];
        let mut out = Vec::new();
        for &c in classes {
            if c.is_empty() {
                continue;
            }
            for x in c.iter() {
                if x >= n || class_of[x] != usize::MAX {
                    return Err(TopologyError::NotPartition(x));
                }
                class_of[x] = out.len();
            }
            out.push(c);
        }
        for x in 0..n {
            if class_of[x] == usize::MAX {
                class_of[x] = out.len();
                out.push(PointSet::singleton(x));
            }
        }
        // Order classes by least member so equal partitions compare equal.
        let mut order: Vec<usize> = (0..out.len()).collect();
        order.sort_by_key(|&i| out[i].iter().next());
        let classes: Vec<PointSet> = order.iter().map(|&i| out[i]).collect();
        let class_of = (0..n)
            .map(|x| classes.iter().position(|c| c.contains(x)).expect("covered"))
            .collect();
        Ok(Partition { classes, class_of })
    }

    /// From an explicit relation, which must be an equivalence.
    pub fn from_relation(n: usize, related: impl Fn(usize, usize) -> bool) -> Result<Self, TopologyError> {
        for x in 0..n {
            if !related(x, x) {
                return Err(TopologyError::NotPartition(x));
            }
            for y in 0..n {
                if related(x, y) != related(y, x) {
                    return Err(TopologyError::NotPartition(x));
                }
                for z in 0..n {
                    if related(x, y) && related(y, z) && !related(x, z) {
                        return Err(TopologyError::NotPartition(x));
                    }
                }
            }
        }
        let classes: Vec<PointSet> = (0..n)
            .map(|x| PointSet::from_points((0..n).filter(|&y| related(x, y))))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        Self::new(n, &classes)
    }

    pub fn identity(n: usize) -> Self {
        Self::new(n, &[]).expect("singletons")
    }

    pub fn total(n: usize) -> Self {
        Self::new(n, &[PointSet::full(n)]).expect("one class")
    }

    pub fn classes(&self) -> &[PointSet] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn carrier_len(&self) -> usize {
        self.class_of.len()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    /// Names for the classes, built from the names of their members.
    pub fn class_names(&self, names: &[String]) -> Vec<String> {
        self.classes
            .iter()
            .map(|c| {
                let members: Vec<&str> = c.iter().map(|x| names[x].as_str()).collect();
                if members.len() == 1 {
                    members[0].to_string()
                } else {
                    members.join("~")
                }
            })
            .collect()
    }
}
