//! Walks, admission, and the limits and colimits of continuity spaces.
//!
//! Products, sums and quotients take values in `Ω(U)` for a set `U` of
//! radius maps. The distance `d(a, b)` is `↓G(a, b)`, where the good set
//! `G(a, b)` holds the maps that admit some walk from `a` to `b`. Good sets
//! are up-closed in the map, so they are stored as [`UpSet`]s and computed
//! by a reachability fixpoint over walks. When no map admits a walk the
//! distance is top.
//!
//! `U` draws each radius from the join-closure of the factor's radius
//! family; for table-driven quantales that is every positive element.

use thiserror::Error;

use crate::omega::{BaseSubset, Omega, OmegaElement};
use crate::oracle::{product_coords, product_names, sum_names};
use crate::quantale::Quantale;
use crate::space::{ContinuitySpace, PointRadiusMap, SpaceError};
use crate::topology::{Partition, PointSet};
use crate::upset::{RadiusMapBase, SlotPoset, UpSet};

/// The space type every construction in this module returns.
pub type WalkSpace = ContinuitySpace<Omega<UpSet>>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("at least one space is required")]
    NoFactors,
    #[error("walks are nonempty")]
    EmptyWalk,
    #[error("point {0} is outside the space")]
    OutOfRange(usize),
    #[error("equivalence is on {0} points but the space has {1}")]
    PartitionSize(usize, usize),
    #[error("construction has {0} points; at most {1} are supported")]
    TooLarge(usize, usize),
    #[error("the positive radii have no least element, so the quantale is not a value quantale")]
    NoLeastRadius,
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// A nonempty finite sequence of points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    points: Vec<usize>,
}

impl Walk {
    pub fn new(points: Vec<usize>) -> Result<Self, ConstructionError> {
        if points.is_empty() {
            return Err(ConstructionError::EmptyWalk);
        }
        Ok(Walk { points })
    }

    pub fn start(&self) -> usize {
        self.points[0]
    }

    pub fn end(&self) -> usize {
        *self.points.last().expect("nonempty")
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn steps(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.points.windows(2).map(|w| (w[0], w[1]))
    }

    /// `x₁ .. x_n` followed by `y₂ .. y_m`, when `x_n = y₁`.
    pub fn concat(&self, other: &Walk) -> Option<Walk> {
        (self.end() == other.start()).then(|| {
            let mut points = self.points.clone();
            points.extend_from_slice(&other.points[1..]);
            Walk { points }
        })
    }
}

/// A relation between positive radii and points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissionRelation<E> {
    pairs: Vec<(E, usize)>,
}

impl<E: Clone> AdmissionRelation<E> {
    pub fn new<Q: Quantale<Elem = E>>(q: &Q, pairs: Vec<(E, usize)>) -> Result<Self, SpaceError> {
        if let Some((r, _)) = pairs.iter().find(|(r, _)| !q.is_positive(r)) {
            return Err(SpaceError::NotPositive(q.render(r)));
        }
        Ok(AdmissionRelation { pairs })
    }

    /// The graph `{(R(x), x)}` of a radius map.
    pub fn from_map(radii: &PointRadiusMap<E>) -> Self {
        AdmissionRelation { pairs: (0..radii.len()).map(|x| (radii.get(x).clone(), x)).collect() }
    }

    pub fn pairs(&self) -> &[(E, usize)] {
        &self.pairs
    }
}

/// Whether every step `xᵢ → xᵢ₊₁` has some `(ε, xᵢ)` in the relation with `ε ≻ d(xᵢ, xᵢ₊₁)`.
pub fn admits<Q: Quantale>(space: &ContinuitySpace<Q>, r: &AdmissionRelation<Q::Elem>, w: &Walk) -> bool {
    let q = space.quantale();
    w.steps().all(|(x, y)| {
        r.pairs
            .iter()
            .any(|(eps, p)| *p == x && q.well_above(eps, space.d(x, y)))
    })
}

/// The restriction of the distance to `y`, with points in ascending order.
pub fn subspace<Q: Quantale>(space: &ContinuitySpace<Q>, y: PointSet) -> Result<ContinuitySpace<Q>, ConstructionError> {
    if let Some(p) = y.iter().find(|&p| p >= space.len()) {
        return Err(ConstructionError::OutOfRange(p));
    }
    let keep: Vec<usize> = y.iter().collect();
    let names = keep.iter().map(|&i| space.names()[i].clone()).collect();
    Ok(ContinuitySpace::from_premetric(
        space.quantale().clone(),
        names,
        keep.iter().map(|&a| keep.iter().map(|&b| space.d(a, b).clone()).collect()).collect(),
    )?)
}

/// Walks over `n` points, with radii read from slots.
struct WalkProblem {
    n: usize,
    slot_of: Vec<usize>,
    /// Minimal slot values admitting each step, or `None` when no radius does.
    steps: Vec<Option<Vec<u16>>>,
    /// Steps taken without any radius.
    free: Vec<bool>,
}

impl WalkProblem {
    fn step(&self, u: usize, v: usize) -> &Option<Vec<u16>> {
        &self.steps[u * self.n + v]
    }

    /// For each start point, the maps admitting a walk into `targets`.
    fn good_sets(&self, base: &RadiusMapBase, targets: PointSet) -> Vec<UpSet> {
        let full = UpSet::full(base);
        let mut good: Vec<UpSet> = (0..self.n)
            .map(|u| if targets.contains(u) { full.clone() } else { UpSet::empty() })
            .collect();
        loop {
            let mut changed = false;
            for u in (0..self.n).filter(|&u| !targets.contains(u)) {
                let mut maps: Vec<Box<[u16]>> = good[u].minimal_maps().to_vec();
                for v in (0..self.n).filter(|&v| v != u && !good[v].is_empty()) {
                    if self.free[u * self.n + v] {
                        maps.extend(good[v].minimal_maps().iter().cloned());
                    }
                    if let Some(reqs) = self.step(u, v) {
                        for &r in reqs {
                            maps.extend(base.raise(&good[v], self.slot_of[u], r));
                        }
                    }
                }
                let next = base.minimise(maps);
                if next != good[u] {
                    good[u] = next;
                    changed = true;
                }
            }
            if !changed {
                return good;
            }
        }
    }
}

fn distance(good: &UpSet) -> OmegaElement<UpSet> {
    if good.is_empty() {
        OmegaElement::top()
    } else {
        OmegaElement::principal(good.clone())
    }
}

fn minimal_above<Q: Quantale>(q: &Q, poset: &SlotPoset, radii: &[Q::Elem], d: &Q::Elem) -> Vec<u16> {
    poset.minimal_where(|a| q.well_above(&radii[a as usize], d))
}

const MAX_CONSTRUCTED: usize = 64;

/// The product, ordered lexicographically with the first factor most significant.
///
/// A step `u → v` is admitted by `R` when `dᵢ(uᵢ, vᵢ) ≺ πᵢ(R(u))` in every coordinate.
/// With finitely many factors the box product is the same space.
pub fn product<Q: Quantale>(factors: &[ContinuitySpace<Q>]) -> Result<WalkSpace, ConstructionError> {
    if factors.is_empty() {
        return Err(ConstructionError::NoFactors);
    }
    let sizes: Vec<usize> = factors.iter().map(|f| f.len()).collect();
    let n = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s)).unwrap_or(usize::MAX);
    if n > MAX_CONSTRUCTED {
        return Err(ConstructionError::TooLarge(n, MAX_CONSTRUCTED));
    }
    let slots: Vec<(SlotPoset, Vec<Q::Elem>)> = factors
        .iter()
        .map(|f| SlotPoset::from_radii(f.quantale(), &f.radius_family()).ok_or(ConstructionError::NoLeastRadius))
        .collect::<Result<_, _>>()?;
    let tuple = SlotPoset::product(&slots.iter().map(|(p, _)| p.clone()).collect::<Vec<_>>());
    let coords: Vec<Vec<usize>> = (0..n).map(|p| product_coords(&sizes, p)).collect();
    let mut steps = Vec::with_capacity(n * n);
    for u in 0..n {
        for v in 0..n {
            let per_factor: Vec<Vec<u16>> = factors
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    let (poset, radii) = &slots[i];
                    minimal_above(f.quantale(), poset, radii, f.d(coords[u][i], coords[v][i]))
                })
                .collect();
            steps.push(if per_factor.iter().any(|m| m.is_empty()) {
                None
            } else {
                Some(tuples(&per_factor, &slots.iter().map(|(p, _)| p.len()).collect::<Vec<_>>()))
            });
        }
    }
    let names = product_names(&factors.iter().map(|f| f.names()).collect::<Vec<_>>());
    let base = RadiusMapBase::new(vec![tuple], vec![0; n], names.clone());
    let problem = WalkProblem { n, slot_of: (0..n).collect(), steps, free: vec![false; n * n] };
    build(base, names, &problem, &(0..n).map(PointSet::singleton).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>())
}

/// Same as [`product`]; for finitely many factors `∏₀` and `∏` coincide.
pub fn box_product<Q: Quantale>(factors: &[ContinuitySpace<Q>]) -> Result<WalkSpace, ConstructionError> {
    product(factors)
}

/// Mixed-radix indices of all tuples drawn from the per-factor choices.
fn tuples(choices: &[Vec<u16>], sizes: &[usize]) -> Vec<u16> {
    let mut out = vec![0usize];
    for (c, &s) in choices.iter().zip(sizes) {
        out = out.iter().flat_map(|&acc| c.iter().map(move |&x| acc * s + x as usize)).collect();
    }
    out.into_iter().map(|x| x as u16).collect()
}

/// The disjoint union; each point draws radii from its own summand.
pub fn sum<Q: Quantale>(summands: &[ContinuitySpace<Q>]) -> Result<WalkSpace, ConstructionError> {
    if summands.is_empty() {
        return Err(ConstructionError::NoFactors);
    }
    let n: usize = summands.iter().map(|s| s.len()).sum();
    if n > MAX_CONSTRUCTED {
        return Err(ConstructionError::TooLarge(n, MAX_CONSTRUCTED));
    }
    let slots: Vec<(SlotPoset, Vec<Q::Elem>)> = summands
        .iter()
        .map(|s| SlotPoset::from_radii(s.quantale(), &s.radius_family()).ok_or(ConstructionError::NoLeastRadius))
        .collect::<Result<_, _>>()?;
    let mut owner = Vec::with_capacity(n);
    for (k, s) in summands.iter().enumerate() {
        owner.extend((0..s.len()).map(|i| (k, i)));
    }
    let mut steps = Vec::with_capacity(n * n);
    for &(ku, iu) in &owner {
        for &(kv, iv) in &owner {
            steps.push((ku == kv).then(|| {
                let s = &summands[ku];
                let (poset, radii) = &slots[ku];
                minimal_above(s.quantale(), poset, radii, s.d(iu, iv))
            }).filter(|m| !m.is_empty()));
        }
    }
    let names = sum_names(&summands.iter().map(|s| s.names()).collect::<Vec<_>>());
    let base = RadiusMapBase::new(
        slots.into_iter().map(|(p, _)| p).collect(),
        owner.iter().map(|&(k, _)| k).collect(),
        names.clone(),
    );
    let problem = WalkProblem { n, slot_of: (0..n).collect(), steps, free: vec![false; n * n] };
    build(base, names, &problem, &(0..n).map(PointSet::singleton).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>())
}

/// The quotient by `eq`. Walks run in the source space, alternating free
/// moves within a class with steps inside the ball of radius `R(class)`.
pub fn quotient<Q: Quantale>(space: &ContinuitySpace<Q>, eq: &Partition) -> Result<WalkSpace, ConstructionError> {
    let n = space.len();
    if eq.carrier_len() != n {
        return Err(ConstructionError::PartitionSize(eq.carrier_len(), n));
    }
    let (poset, radii) = SlotPoset::from_radii(space.quantale(), &space.radius_family()).ok_or(ConstructionError::NoLeastRadius)?;
    let q = space.quantale();
    let steps = (0..n * n)
        .map(|k| Some(minimal_above(q, &poset, &radii, space.d(k / n, k % n))).filter(|m| !m.is_empty()))
        .collect();
    let free = (0..n * n).map(|k| eq.related(k / n, k % n)).collect();
    let names = eq.class_names(space.names());
    let base = RadiusMapBase::new(vec![poset], vec![0; eq.len()], names.clone());
    let problem = WalkProblem { n, slot_of: (0..n).map(|y| eq.class_of(y)).collect(), steps, free };
    let reps: Vec<usize> = eq.classes().iter().map(|c| c.iter().next().expect("nonempty class")).collect();
    build(base, names, &problem, eq.classes(), &reps)
}

/// Distances between groups of walk points, each group entered anywhere
/// and left from its representative.
fn build(
    base: RadiusMapBase,
    names: Vec<String>,
    problem: &WalkProblem,
    groups: &[PointSet],
    reps: &[usize],
) -> Result<WalkSpace, ConstructionError> {
    let m = groups.len();
    let mut dist = vec![vec![OmegaElement::top(); m]; m];
    for (b, &target) in groups.iter().enumerate() {
        let good = problem.good_sets(&base, target);
        for a in 0..m {
            dist[a][b] = distance(&good[reps[a]]);
        }
    }
    Ok(ContinuitySpace::new(Omega::new(base), names, dist)?)
}
