//! Continuity spaces: finite sets with a quantale-valued distance.
//!
//! Balls are centre-first, `B_ε(x) = {y : d(x, y) ≺ ε}`. The topology a
//! space generates declares `U` open when every point of `U` has a ball
//! inside `U`; [`metrize`] goes the other way, from a topology to an
//! `Ω`-valued distance that generates it.

use std::fmt;

use thiserror::Error;

use crate::omega::{FiniteBase, FiniteSubset, Omega, OmegaElement, OmegaError};
use crate::quantale::Quantale;
use crate::topology::{FiniteTopology, PointSet, TopologyError, MAX_POINTS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error("{0} points given but the distance table has shape {1}")]
    Shape(usize, String),
    #[error("carrier has {0} points; at most {MAX_POINTS} are supported")]
    TooManyPoints(usize),
    #[error("d({0}, {0}) = {1} is not bottom")]
    Diagonal(String, String),
    #[error("{0}")]
    Triangle(Box<TriangleFailure>),
    #[error("radius {0} is not positive")]
    NotPositive(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("map has {0} entries for {1} points, or sends a point outside the target")]
    NotTotal(usize, usize),
    #[error("distance is not symmetric: d({0}, {1}) = {2} but d({1}, {0}) = {3}")]
    NotSymmetric(String, String, String, String),
    #[error("exhaustive search over {0} cases exceeds the limit {1}")]
    SearchTooLarge(u128, u128),
    #[error(transparent)]
    Omega(#[from] OmegaError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

/// Points `x, y, z` with `d(x, z)` above `d(x, y) + d(y, z)`.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("triangle inequality fails: d({x}, {z}) = {xz} exceeds d({x}, {y}) + d({y}, {z}) = {via}")]
pub struct TriangleFailure {
    pub x: String,
    pub y: String,
    pub z: String,
    pub xz: String,
    pub via: String,
}

/// A finite set with a distance valued in a quantale.
#[derive(Clone)]
pub struct ContinuitySpace<Q: Quantale> {
    quantale: Q,
    names: Vec<String>,
    dist: Vec<Q::Elem>,
}

impl<Q: Quantale> fmt::Debug for ContinuitySpace<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ContinuitySpace")
            .field("points", &self.names)
            .field("dist", &self.dist)
            .finish()
    }
}

impl<Q: Quantale> PartialEq for ContinuitySpace<Q> {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.dist == other.dist
    }
}

/// Upper bound on the number of radius maps an exhaustive search visits.
pub const SEARCH_LIMIT: u128 = 5_000_000;

impl<Q: Quantale> ContinuitySpace<Q> {
    /// A space whose table satisfies `d(x, x) = ⊥` and the triangle inequality.
    pub fn new(quantale: Q, names: Vec<String>, dist: Vec<Vec<Q::Elem>>) -> Result<Self, SpaceError> {
        let space = Self::from_premetric(quantale, names, dist)?;
        space.check_triangle()?;
        Ok(space)
    }

    /// Like [`ContinuitySpace::new`] but only the diagonal is checked.
    pub fn from_premetric(quantale: Q, names: Vec<String>, dist: Vec<Vec<Q::Elem>>) -> Result<Self, SpaceError> {
        let n = names.len();
        if n > MAX_POINTS {
            return Err(SpaceError::TooManyPoints(n));
        }
        if dist.len() != n || dist.iter().any(|row| row.len() != n) {
            let shape = format!("{}x{}", dist.len(), dist.first().map_or(0, |r| r.len()));
            return Err(SpaceError::Shape(n, shape));
        }
        let space = ContinuitySpace { quantale, names, dist: dist.into_iter().flatten().collect() };
        let bottom = space.quantale.bottom();
        for x in 0..n {
            if space.d(x, x) != &bottom {
                return Err(SpaceError::Diagonal(space.names[x].clone(), space.render(space.d(x, x))));
            }
        }
        Ok(space)
    }

    pub fn from_fn(
        quantale: Q,
        names: Vec<String>,
        d: impl Fn(usize, usize) -> Q::Elem,
    ) -> Result<Self, SpaceError> {
        let n = names.len();
        let dist = (0..n).map(|x| (0..n).map(|y| d(x, y)).collect()).collect();
        Self::new(quantale, names, dist)
    }

    pub fn check_triangle(&self) -> Result<(), SpaceError> {
        let q = &self.quantale;
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if !q.leq_sum(self.d(x, z), self.d(x, y), self.d(y, z)) {
                        let via = q.plus(self.d(x, y), self.d(y, z));
                        return Err(SpaceError::Triangle(Box::new(TriangleFailure {
                            x: self.names[x].clone(),
                            y: self.names[y].clone(),
                            z: self.names[z].clone(),
                            xz: self.render(self.d(x, z)),
                            via: self.render(&via),
                        })));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn quantale(&self) -> &Q {
        &self.quantale
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

    pub fn index_of(&self, name: &str) -> Result<usize, SpaceError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| SpaceError::UnknownPoint(name.to_string()))
    }

    pub fn d(&self, x: usize, y: usize) -> &Q::Elem {
        &self.dist[x * self.len() + y]
    }

    pub fn distances(&self) -> &[Q::Elem] {
        &self.dist
    }

    pub fn rows(&self) -> Vec<Vec<Q::Elem>> {
        self.dist.chunks(self.len().max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn render(&self, e: &Q::Elem) -> String {
        self.quantale.render(e)
    }

    pub fn radius_family(&self) -> Vec<Q::Elem> {
        self.quantale.radius_family(&self.dist)
    }

    pub fn finest_radius(&self) -> Q::Elem {
        self.quantale.finest_radius(&self.dist)
    }

    /// `{y : eps ≻ d(x, y)}`.
    pub fn ball(&self, eps: &Q::Elem, x: usize) -> Result<PointSet, SpaceError> {
        if !self.quantale.is_positive(eps) {
            return Err(SpaceError::NotPositive(self.render(eps)));
        }
        Ok(self.ball_unchecked(eps, x))
    }

    pub(crate) fn ball_unchecked(&self, eps: &Q::Elem, x: usize) -> PointSet {
        PointSet::from_points((0..self.len()).filter(|&y| self.quantale.well_above(eps, self.d(x, y))))
    }

    /// `B_R(C)`: the union of the balls `B_{R(c)}(c)` over `c ∈ C`.
    pub fn ball_around(&self, radii: &PointRadiusMap<Q::Elem>, c: PointSet) -> PointSet {
        c.iter()
            .fold(PointSet::EMPTY, |acc, x| acc.union(self.ball_unchecked(radii.get(x), x)))
    }

    /// The generated topology, from the smallest ball around each point.
    pub fn generate_topology(&self) -> FiniteTopology {
        let r = self.finest_radius();
        let basic: Vec<PointSet> = (0..self.len()).map(|x| self.ball_unchecked(&r, x)).collect();
        FiniteTopology::from_neighbourhoods(self.names.clone(), &basic).expect("balls contain their centres")
    }

    /// The generated topology by testing every subset against every radius.
    pub fn generate_topology_exhaustive(&self) -> Result<FiniteTopology, SpaceError> {
        let n = self.len();
        let cases = (1u128 << n) * self.radius_family().len() as u128;
        if n >= 32 || cases > SEARCH_LIMIT {
            return Err(SpaceError::SearchTooLarge(cases, SEARCH_LIMIT));
        }
        let radii = self.radius_family();
        let balls: Vec<Vec<PointSet>> = (0..n)
            .map(|x| radii.iter().map(|r| self.ball_unchecked(r, x)).collect())
            .collect();
        let opens: Vec<PointSet> = PointSet::all(n)
            .filter(|u| u.iter().all(|x| balls[x].iter().any(|b| b.is_subset(*u))))
            .collect();
        Ok(FiniteTopology::from_opens(self.names.clone(), &opens)?)
    }

    /// `d(x, C)`, the meet of `d(x, c)` over `c ∈ C`; top when `C` is empty.
    pub fn point_set_distance(&self, x: usize, c: PointSet) -> Q::Elem {
        self.quantale.meet_all(c.iter().map(|y| self.d(x, y)))
    }

    /// `{z : d(z, C) = ⊥}`.
    pub fn closure_pts(&self, c: PointSet) -> PointSet {
        PointSet::from_points((0..self.len()).filter(|&z| self.quantale.is_bottom(&self.point_set_distance(z, c))))
    }

    pub fn is_closed(&self, c: PointSet) -> bool {
        self.closure_pts(c) == c
    }

    /// Every closed subset, by testing all subsets.
    pub fn closed_sets(&self) -> Vec<PointSet> {
        PointSet::all(self.len()).filter(|&c| self.is_closed(c)).collect()
    }

    /// Distinct `x, y` with `d(x, y) = d(y, x) = ⊥`.
    pub fn kolmogorov_violation(&self) -> Option<(usize, usize)> {
        let q = &self.quantale;
        (0..self.len())
            .flat_map(|x| (0..x).map(move |y| (y, x)))
            .find(|&(x, y)| q.is_bottom(self.d(x, y)) && q.is_bottom(self.d(y, x)))
    }

    pub fn is_kolmogorov(&self) -> bool {
        self.kolmogorov_violation().is_none()
    }

    /// Distinct `x, y` with `d(x, y) = ⊥`.
    pub fn frechet_violation(&self) -> Option<(usize, usize)> {
        let q = &self.quantale;
        (0..self.len())
            .flat_map(|x| (0..self.len()).map(move |y| (x, y)))
            .find(|&(x, y)| x != y && q.is_bottom(self.d(x, y)))
    }

    pub fn is_frechet(&self) -> bool {
        self.frechet_violation().is_none()
    }

    /// A closed `C` and a point `x` with `⋁_R d(x, B_R(C)) = ⊥` but `x ∉ C`.
    ///
    /// The join over `R` is attained at the constant finest radius, since
    /// smaller radii give smaller balls and larger distances.
    pub fn regularity_violation(&self) -> Option<(usize, PointSet)> {
        let finest = PointRadiusMap::constant(self.finest_radius(), self.len());
        self.regularity_violation_with(|c, x| self.point_set_distance(x, self.ball_around(&finest, c)))
    }

    /// As [`ContinuitySpace::regularity_violation`], joining over every map
    /// from points to the radius family.
    pub fn regularity_violation_exhaustive(&self) -> Result<Option<(usize, PointSet)>, SpaceError> {
        let family = self.radius_family();
        let cases = (family.len() as u128).checked_pow(self.len() as u32).unwrap_or(u128::MAX);
        if cases > SEARCH_LIMIT / (1u128 << self.len()).max(1) {
            return Err(SpaceError::SearchTooLarge(cases, SEARCH_LIMIT));
        }
        let q = &self.quantale;
        Ok(self.regularity_violation_with(|c, x| {
            // Only the values of R on C matter.
            let members: Vec<usize> = c.iter().collect();
            let mut acc = q.bottom();
            for_each_assignment(family.len(), members.len(), |choice| {
                let mut radii = vec![family[0].clone(); self.len()];
                for (k, &m) in members.iter().enumerate() {
                    radii[m] = family[choice[k]].clone();
                }
                let r = PointRadiusMap { radii };
                acc = q.join(&acc, &self.point_set_distance(x, self.ball_around(&r, c)));
            });
            acc
        }))
    }

    fn regularity_violation_with(&self, sup: impl Fn(PointSet, usize) -> Q::Elem) -> Option<(usize, PointSet)> {
        let q = &self.quantale;
        for c in self.closed_sets() {
            for x in (0..self.len()).filter(|&x| !c.contains(x)) {
                if q.is_bottom(&sup(c, x)) && !q.is_bottom(&self.point_set_distance(x, c)) {
                    return Some((x, c));
                }
            }
        }
        None
    }

    pub fn is_regular_metric(&self) -> bool {
        self.regularity_violation().is_none()
    }

    pub fn is_regular_metric_exhaustive(&self) -> Result<bool, SpaceError> {
        Ok(self.regularity_violation_exhaustive()?.is_none())
    }

    pub fn symmetry_violation(&self) -> Option<(usize, usize)> {
        (0..self.len())
            .flat_map(|x| (0..x).map(move |y| (x, y)))
            .find(|&(x, y)| self.d(x, y) != self.d(y, x))
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetry_violation().is_none()
    }

    pub fn require_symmetric(&self) -> Result<(), SpaceError> {
        match self.symmetry_violation() {
            None => Ok(()),
            Some((x, y)) => Err(SpaceError::NotSymmetric(
                self.names[x].clone(),
                self.names[y].clone(),
                self.render(self.d(x, y)),
                self.render(self.d(y, x)),
            )),
        }
    }

    /// Points reachable from `a` by steps `u, v` with `R(u) ≻ d(u, v)` or `R(v) ≻ d(v, u)`.
    pub fn reachable(&self, radii: &PointRadiusMap<Q::Elem>, a: usize) -> PointSet {
        let q = &self.quantale;
        let n = self.len();
        let mut seen = PointSet::singleton(a);
        let mut stack = vec![a];
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if !seen.contains(v)
                    && (q.well_above(radii.get(u), self.d(u, v)) || q.well_above(radii.get(v), self.d(v, u)))
                {
                    seen = seen.with(v);
                    stack.push(v);
                }
            }
        }
        seen
    }

    /// A pair of points joined by no walk under some radius map, using the
    /// constant finest radius, whose walks every other map also admits.
    pub fn disconnection(&self) -> Option<(usize, usize)> {
        if self.is_empty() {
            return None;
        }
        let r = PointRadiusMap::constant(self.finest_radius(), self.len());
        let reach = self.reachable(&r, 0);
        (0..self.len()).find(|&b| !reach.contains(b)).map(|b| (0, b))
    }

    pub fn is_connected_metric(&self) -> bool {
        self.disconnection().is_none()
    }

    /// Connectedness by trying every map from points to the radius family.
    pub fn is_connected_metric_exhaustive(&self) -> Result<bool, SpaceError> {
        if self.is_empty() {
            return Ok(true);
        }
        let family = self.radius_family();
        let cases = (family.len() as u128).checked_pow(self.len() as u32).unwrap_or(u128::MAX);
        if cases > SEARCH_LIMIT {
            return Err(SpaceError::SearchTooLarge(cases, SEARCH_LIMIT));
        }
        let full = self.full();
        let mut connected = true;
        for_each_assignment(family.len(), self.len(), |choice| {
            if connected {
                let radii = PointRadiusMap { radii: choice.iter().map(|&i| family[i].clone()).collect() };
                connected = self.reachable(&radii, 0) == full;
            }
        });
        Ok(connected)
    }

    /// The transposed table, `d*(x, y) = d(y, x)`.
    pub fn dual(&self) -> Self {
        let n = self.len();
        ContinuitySpace {
            quantale: self.quantale.clone(),
            names: self.names.clone(),
            dist: (0..n * n).map(|i| self.dist[(i % n) * n + i / n].clone()).collect(),
        }
    }

    /// Same quantale, new table; checked like [`ContinuitySpace::new`].
    pub fn with_table(&self, names: Vec<String>, d: impl Fn(usize, usize) -> Q::Elem) -> Result<Self, SpaceError> {
        Self::from_fn(self.quantale.clone(), names, d)
    }
}

/// Calls `f` with every tuple in `{0..base}^len`, last position fastest.
pub(crate) fn for_each_assignment(base: usize, len: usize, mut f: impl FnMut(&[usize])) {
    if base == 0 && len > 0 {
        return;
    }
    let mut choice = vec![0usize; len];
    loop {
        f(&choice);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < base {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// An assignment of a positive radius to each point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointRadiusMap<E> {
    radii: Vec<E>,
}

impl<E: Clone> PointRadiusMap<E> {
    pub fn new<Q: Quantale<Elem = E>>(q: &Q, radii: Vec<E>) -> Result<Self, SpaceError> {
        if let Some(r) = radii.iter().find(|r| !q.is_positive(r)) {
            return Err(SpaceError::NotPositive(q.render(r)));
        }
        Ok(PointRadiusMap { radii })
    }

    pub fn constant(r: E, n: usize) -> Self {
        PointRadiusMap { radii: vec![r; n] }
    }

    pub fn get(&self, x: usize) -> &E {
        &self.radii[x]
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }
}

/// The `Ω(τ)`-valued distance of a topology: `d(x, y) = ↓{U ∈ τ : x ∈ U ⇒ y ∈ U}`.
pub fn metrize(top: &FiniteTopology) -> Result<ContinuitySpace<Omega<FiniteSubset>>, SpaceError> {
    let opens = top.opens();
    let labels = opens.iter().map(|u| u.render(top.names())).collect();
    let base = FiniteBase::new(labels)?;
    let n = top.len();
    let good = |x: usize, y: usize| {
        base.subset((0..opens.len()).filter(|&i| !opens[i].contains(x) || opens[i].contains(y)))
    };
    let dist = (0..n)
        .map(|x| (0..n).map(|y| OmegaElement::principal(good(x, y))).collect())
        .collect();
    ContinuitySpace::new(Omega::new(base), top.names().to_vec(), dist)
}

/// Whether `f` satisfies: for every `x` and radius `ε` there is `δ` with
/// `f[B_δ(x)] ⊆ B_ε(f(x))`. Radii range over each side's radius family.
pub fn epsilon_delta_continuous<P: Quantale, Q: Quantale>(
    f: &[usize],
    src: &ContinuitySpace<P>,
    dst: &ContinuitySpace<Q>,
) -> Result<bool, SpaceError> {
    if f.len() != src.len() || f.iter().any(|&y| y >= dst.len()) {
        return Err(SpaceError::NotTotal(f.len(), src.len()));
    }
    let deltas = src.radius_family();
    let epsilons = dst.radius_family();
    Ok((0..src.len()).all(|x| {
        epsilons.iter().all(|eps| {
            let target = dst.ball_unchecked(eps, f[x]);
            deltas
                .iter()
                .any(|delta| src.ball_unchecked(delta, x).iter().all(|y| target.contains(f[y])))
        })
    }))
}
