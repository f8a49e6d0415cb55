//! Symmetric distances and completely regular topologies.
//!
//! One direction builds, inside a symmetric space, a `[0, 1]`-valued
//! continuous function separating a point from the complement of an open
//! set ([`separator`]). The other metrizes a completely regular topology by
//! a symmetric distance valued in principal round filters ([`gamma_space`]).
//! [`is_completely_regular`] is an exhaustive check on finite topologies.

use std::fmt;

use num_rational::Rational64;
use thiserror::Error;

use crate::dyadic::{Dyadic, MAX_EXPONENT};
use crate::quantale::{dyadic_scale, DyadicScale, Quantale, ScaleError};
use crate::space::{for_each_assignment, ContinuitySpace, SpaceError};
use crate::topology::{FiniteTopology, PointSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CregError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Scale(#[from] ScaleError),
    #[error("{0} is not open in the generated topology")]
    NotOpen(String),
    #[error("point {0} is not in {1}")]
    NotMember(String, String),
    #[error("no radius around {0} has its ball inside {1}")]
    NoRadius(String, String),
    #[error("value {0} is off the grid of depth {1} or outside [0, 1]")]
    OffGrid(Dyadic, u32),
    #[error("function has {0} values for {1} points")]
    Arity(usize, usize),
    #[error("function {0} is not continuous")]
    NotContinuous(usize),
    #[error("function {0} does not separate a point from a closed set")]
    NotSeparating(usize),
    #[error("no functions given for a topology that is not indiscrete")]
    EmptyFamily,
    #[error("topology is not completely regular: nothing separates {0} from the complement of {1}")]
    NotCompletelyRegular(String, String),
    #[error("grid depth {0} is too shallow for {1} points")]
    DepthTooSmall(u32, usize),
    #[error("separator check failed: {0}")]
    Postcondition(String),
}

/// A function from points to the dyadic grid `{i / 2^k}` in `[0, 1]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GridFunction {
    depth: u32,
    values: Vec<Dyadic>,
}

impl fmt::Debug for GridFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.values).finish()
    }
}

impl GridFunction {
    pub fn new(depth: u32, values: Vec<Dyadic>) -> Result<Self, CregError> {
        if let Some(v) = values.iter().find(|v| v.exponent() > depth || **v > Dyadic::ONE) {
            return Err(CregError::OffGrid(*v, depth));
        }
        Ok(GridFunction { depth, values })
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn values(&self) -> &[Dyadic] {
        &self.values
    }

    pub fn value(&self, x: usize) -> Dyadic {
        self.values[x]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Preimages of `[0, t)` and `(t, 1]` are open for every grid threshold `t`.
    ///
    /// Those intervals form a subbase of the topology of `[0, 1]` as far as
    /// grid-valued functions can tell.
    pub fn is_continuous(&self, top: &FiniteTopology) -> bool {
        self.values.len() == top.len()
            && Dyadic::grid(self.depth).all(|t| {
                let below = PointSet::from_points((0..self.len()).filter(|&x| self.values[x] < t));
                let above = PointSet::from_points((0..self.len()).filter(|&x| self.values[x] > t));
                top.is_open(below) && top.is_open(above)
            })
    }

    /// `f(x) = 1` and `f` vanishes off `o`.
    pub fn separates(&self, x: usize, o: PointSet) -> bool {
        self.values[x] == Dyadic::ONE
            && (0..self.len()).all(|y| o.contains(y) || self.values[y] == Dyadic::ZERO)
    }
}

/// Smallest grid depth the complete-regularity search accepts.
pub fn min_depth(points: usize) -> u32 {
    (usize::BITS - points.leading_zeros()).max(1)
}

/// Default grid depth, one more than the number of points.
pub fn default_depth(points: usize) -> u32 {
    (points as u32 + 1).min(MAX_EXPONENT)
}

/// Connected components of the specialisation graph, which every
/// continuous map into `[0, 1]` is constant on.
pub fn components(top: &FiniteTopology) -> Vec<PointSet> {
    let n = top.len();
    let mut comp: Vec<PointSet> = Vec::new();
    for x in 0..n {
        if comp.iter().any(|c| c.contains(x)) {
            continue;
        }
        let mut c = PointSet::singleton(x);
        loop {
            let grown = (0..n)
                .filter(|&y| c.contains(y) || c.iter().any(|z| top.neighbourhood(y).contains(z) || top.neighbourhood(z).contains(y)))
                .fold(c, |acc, y| acc.with(y));
            if grown == c {
                break;
            }
            c = grown;
        }
        comp.push(c);
    }
    comp
}

fn check_depth(top: &FiniteTopology, depth: u32) -> Result<(), CregError> {
    if depth < min_depth(top.len()) || depth > MAX_EXPONENT {
        return Err(CregError::DepthTooSmall(depth, top.len()));
    }
    Ok(())
}

/// Every continuous grid function at `depth`.
///
/// Candidates are the functions constant on [`components`]; each is kept
/// only after passing [`GridFunction::is_continuous`].
pub fn continuous_grid_functions(top: &FiniteTopology, depth: u32) -> Result<Vec<GridFunction>, CregError> {
    check_depth(top, depth)?;
    let comps = components(top);
    let grid: Vec<Dyadic> = Dyadic::grid(depth).collect();
    let cases = (grid.len() as u128).checked_pow(comps.len() as u32).unwrap_or(u128::MAX);
    if cases > crate::space::SEARCH_LIMIT {
        return Err(SpaceError::SearchTooLarge(cases, crate::space::SEARCH_LIMIT).into());
    }
    let mut out = Vec::new();
    for_each_assignment(grid.len(), comps.len(), |choice| {
        let mut values = vec![Dyadic::ZERO; top.len()];
        for (c, &v) in comps.iter().zip(choice) {
            for x in c.iter() {
                values[x] = grid[v];
            }
        }
        let f = GridFunction { depth, values };
        if f.is_continuous(top) {
            out.push(f);
        }
    });
    Ok(out)
}

/// Continuous grid functions that reach both 0 and 1, each separating the
/// points where it is 1 from its closed zero set.
pub fn separating_functions(top: &FiniteTopology, depth: u32) -> Result<Vec<GridFunction>, CregError> {
    Ok(continuous_grid_functions(top, depth)?
        .into_iter()
        .filter(|f| f.values.contains(&Dyadic::ONE) && f.values.contains(&Dyadic::ZERO))
        .collect())
}

/// A point `x` and an open `O ∋ x` that no continuous grid function separates.
///
/// It is enough to try the smallest open set around each point. A separating
/// function is 1 on the component of `x` and 0 on every component leaving `O`;
/// the remaining components range over the grid until a continuous one appears.
pub fn complete_regularity_violation(top: &FiniteTopology, depth: u32) -> Result<Option<(usize, PointSet)>, CregError> {
    check_depth(top, depth)?;
    let comps = components(top);
    let grid: Vec<Dyadic> = Dyadic::grid(depth).collect();
    for x in 0..top.len() {
        let o = top.neighbourhood(x);
        if !separable(top, depth, &comps, &grid, x, o) {
            return Ok(Some((x, o)));
        }
    }
    Ok(None)
}

fn separable(top: &FiniteTopology, depth: u32, comps: &[PointSet], grid: &[Dyadic], x: usize, o: PointSet) -> bool {
    let mut fixed: Vec<Option<Dyadic>> = vec![None; comps.len()];
    for (i, c) in comps.iter().enumerate() {
        let leaves = c.iter().any(|y| !o.contains(y));
        if c.contains(x) {
            if leaves {
                return false;
            }
            fixed[i] = Some(Dyadic::ONE);
        } else if leaves {
            fixed[i] = Some(Dyadic::ZERO);
        }
    }
    let free: Vec<usize> = (0..comps.len()).filter(|&i| fixed[i].is_none()).collect();
    let mut choice = vec![0usize; free.len()];
    loop {
        let mut values = vec![Dyadic::ZERO; top.len()];
        for (i, c) in comps.iter().enumerate() {
            let v = fixed[i].unwrap_or_else(|| grid[choice[free.iter().position(|&j| j == i).unwrap()]]);
            for y in c.iter() {
                values[y] = v;
            }
        }
        let f = GridFunction { depth, values };
        if f.is_continuous(top) && f.separates(x, o) {
            return true;
        }
        let mut k = free.len();
        loop {
            if k == 0 {
                return false;
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < grid.len() {
                break;
            }
            choice[k] = 0;
        }
    }
}

pub fn is_completely_regular(top: &FiniteTopology, depth: u32) -> Result<bool, CregError> {
    Ok(complete_regularity_violation(top, depth)?.is_none())
}

/// `min{n on the grid : a ≤ n·ε}`, or 1 when there is none.
pub fn m_eps<Q: Quantale>(q: &Q, scale: &DyadicScale<Q::Elem>, a: &Q::Elem) -> Dyadic {
    scale
        .grid(q)
        .into_iter()
        .find(|(_, ne)| q.leq(a, ne))
        .map_or(Dyadic::ONE, |(n, _)| n)
}

/// The outcome of [`separator`].
#[derive(Debug, Clone)]
pub struct Separator<E> {
    /// Radius whose ball around the centre lies inside the open set.
    pub radius: E,
    /// `ε` with `radius ≻ ε + ε`.
    pub epsilon: E,
    pub scale: DyadicScale<E>,
    pub function: GridFunction,
}

/// A continuous `f` with `f(x0) = 1` vanishing off the closed `ε`-ball
/// around `x0`, for a symmetric space and an open `O ∋ x0`.
///
/// `f(y) = max(0, 1 - min(M_ε(d(x0, y)), 1))`.
pub fn separator<Q: Quantale>(
    space: &ContinuitySpace<Q>,
    x0: usize,
    o: PointSet,
) -> Result<Separator<Q::Elem>, CregError> {
    space.require_symmetric()?;
    let q = space.quantale();
    let top = space.generate_topology();
    let names = space.names();
    if !top.is_open(o) {
        return Err(CregError::NotOpen(o.render(names)));
    }
    if !o.contains(x0) {
        return Err(CregError::NotMember(names[x0].clone(), o.render(names)));
    }
    let radius = space
        .radius_family()
        .into_iter()
        .find(|p| space.ball_unchecked(p, x0).is_subset(o))
        .ok_or_else(|| CregError::NoRadius(names[x0].clone(), o.render(names)))?;
    let epsilon = crate::quantale::half(q, &radius).map_err(ScaleError::from)?;
    let depth = default_depth(space.len());
    let scale = dyadic_scale(q, &epsilon, depth)?;
    let values = (0..space.len())
        .map(|y| Dyadic::ONE.saturating_sub(m_eps(q, &scale, space.d(x0, y)).min_one()))
        .collect();
    let function = GridFunction::new(depth, values)?;

    let closed_ball = space.closure_pts(space.ball_unchecked(&epsilon, x0));
    if function.value(x0) != Dyadic::ONE {
        return Err(CregError::Postcondition(format!("f({}) = {}", names[x0], function.value(x0))));
    }
    if let Some(y) = (0..space.len()).find(|&y| !closed_ball.contains(y) && function.value(y) != Dyadic::ZERO) {
        return Err(CregError::Postcondition(format!("f({}) = {} off the closed ball", names[y], function.value(y))));
    }
    if !closed_ball.is_subset(o) {
        return Err(CregError::Postcondition(format!("closed ball {} leaves {}", closed_ball.render(names), o.render(names))));
    }
    if !function.is_continuous(&top) {
        return Err(CregError::Postcondition("f is not continuous".to_string()));
    }
    Ok(Separator { radius, epsilon, scale, function })
}

/// `g ≫ f`: `g(i) > f(i)` wherever `f(i) < 1`.
pub fn way_above(g: &[Rational64], f: &[Rational64]) -> bool {
    let one = Rational64::from_integer(1);
    g.len() == f.len() && g.iter().zip(f).all(|(a, b)| *b >= one || a > b)
}

/// The principal filter `ĝ = {h : h ≫ g}` of a map into `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrincipalFilter {
    generator: Vec<Rational64>,
}

impl PrincipalFilter {
    pub fn new(generator: Vec<Rational64>) -> Self {
        PrincipalFilter { generator }
    }

    pub fn generator(&self) -> &[Rational64] {
        &self.generator
    }

    pub fn contains(&self, h: &[Rational64]) -> bool {
        way_above(h, &self.generator)
    }

    /// Whether every value is positive, making the generator a member of `K`.
    pub fn in_k(&self) -> bool {
        self.generator.iter().all(|v| *v > Rational64::from_integer(0))
    }
}

/// Round filters over maps `F → [0, 1]`, kept as unions of principal ones.
///
/// An element is a finite antichain of generator maps, ordered so that
/// larger maps give larger elements. Addition is the truncated pointwise
/// sum `min(g + h, 1)` and join the pointwise maximum. A radius `p` is well
/// above `q` when some generator `m` of `q` lies strictly below every
/// generator of `p` on the coordinates where that generator is below 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaQuantale {
    arity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaElement {
    gens: Vec<Box<[Rational64]>>,
}

impl GammaElement {
    pub fn generators(&self) -> &[Box<[Rational64]>] {
        &self.gens
    }
}

impl GammaQuantale {
    pub fn new(arity: usize) -> Self {
        GammaQuantale { arity }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Canonical form: the pointwise-minimal generators, sorted.
    pub fn element<I: IntoIterator<Item = Vec<Rational64>>>(&self, gens: I) -> GammaElement {
        let mut all: Vec<Box<[Rational64]>> = gens.into_iter().map(|g| g.into_boxed_slice()).collect();
        assert!(all.iter().all(|g| g.len() == self.arity), "generator arity");
        all.sort();
        all.dedup();
        let keep: Vec<bool> = all
            .iter()
            .map(|a| !all.iter().any(|b| b != a && b.iter().zip(a.iter()).all(|(x, y)| x <= y)))
            .collect();
        GammaElement { gens: all.into_iter().zip(keep).filter(|(_, k)| *k).map(|(g, _)| g).collect() }
    }

    pub fn constant(&self, v: Rational64) -> GammaElement {
        self.element([vec![v; self.arity]])
    }

    /// The map equal to `t` at `f` and 1 elsewhere.
    pub fn single_support(&self, f: usize, t: Rational64) -> GammaElement {
        let mut g = vec![Rational64::from_integer(1); self.arity];
        g[f] = t;
        self.element([g])
    }

    pub fn double_support(&self, (f, s): (usize, Rational64), (g, t): (usize, Rational64)) -> GammaElement {
        let mut h = vec![Rational64::from_integer(1); self.arity];
        h[f] = s;
        h[g] = t;
        self.element([h])
    }

    fn pairwise(&self, p: &GammaElement, q: &GammaElement, op: impl Fn(Rational64, Rational64) -> Rational64) -> GammaElement {
        self.element(
            p.gens
                .iter()
                .flat_map(|a| q.gens.iter().map(|b| a.iter().zip(b.iter()).map(|(x, y)| op(*x, *y)).collect::<Vec<_>>()))
                .collect::<Vec<_>>(),
        )
    }
}

impl Quantale for GammaQuantale {
    type Elem = GammaElement;

    fn bottom(&self) -> GammaElement {
        self.constant(Rational64::from_integer(0))
    }

    fn top(&self) -> GammaElement {
        self.constant(Rational64::from_integer(1))
    }

    fn leq(&self, p: &GammaElement, q: &GammaElement) -> bool {
        q.gens
            .iter()
            .all(|h| p.gens.iter().any(|g| g.iter().zip(h.iter()).all(|(x, y)| x <= y)))
    }

    fn meet(&self, p: &GammaElement, q: &GammaElement) -> GammaElement {
        self.element(p.gens.iter().chain(&q.gens).map(|g| g.to_vec()).collect::<Vec<_>>())
    }

    fn join(&self, p: &GammaElement, q: &GammaElement) -> GammaElement {
        self.pairwise(p, q, |x, y| x.max(y))
    }

    fn plus(&self, p: &GammaElement, q: &GammaElement) -> GammaElement {
        let one = Rational64::from_integer(1);
        self.pairwise(p, q, |x, y| (x + y).min(one))
    }

    fn well_above(&self, p: &GammaElement, q: &GammaElement) -> bool {
        let one = Rational64::from_integer(1);
        *p == self.top()
            || q.gens.iter().any(|m| {
                p.gens
                    .iter()
                    .all(|g| g.iter().zip(m.iter()).all(|(a, b)| *a >= one || a > b))
            })
    }

    /// A quarter of the pointwise minimum of the generators, keeping 1 where all are 1.
    fn half(&self, p: &GammaElement) -> Option<GammaElement> {
        if !self.is_positive(p) {
            return None;
        }
        let one = Rational64::from_integer(1);
        let low: Vec<Rational64> = (0..self.arity)
            .map(|i| {
                let v = p.gens.iter().map(|g| g[i]).min().unwrap_or(one);
                if v >= one {
                    one
                } else {
                    v / Rational64::from_integer(4)
                }
            })
            .collect();
        Some(self.element([low]))
    }

    /// The finest radius, each single-support radius at the distance
    /// values, and top.
    fn radius_family(&self, distances: &[GammaElement]) -> Vec<GammaElement> {
        let eta = self.finest_radius(distances);
        let mut out = vec![eta.clone()];
        let one = Rational64::from_integer(1);
        let mut values: Vec<Rational64> = eta.gens[0].first().copied().into_iter().collect();
        for d in distances {
            for g in &d.gens {
                for v in g.iter() {
                    if *v > Rational64::from_integer(0) && *v < one && !values.contains(v) {
                        values.push(*v);
                    }
                }
            }
        }
        values.sort();
        for f in 0..self.arity {
            for &t in &values {
                let r = self.single_support(f, t);
                if !out.contains(&r) {
                    out.push(r);
                }
            }
        }
        let top = self.top();
        if !out.contains(&top) {
            out.push(top);
        }
        out
    }

    /// The constant map at half the least nonzero value in any distance.
    fn finest_radius(&self, distances: &[GammaElement]) -> GammaElement {
        let least = distances
            .iter()
            .flat_map(|d| d.gens.iter().flat_map(|g| g.iter().copied()))
            .filter(|v| *v > Rational64::from_integer(0))
            .min()
            .unwrap_or_else(|| Rational64::from_integer(1));
        self.constant(least / Rational64::from_integer(2))
    }

    fn render(&self, e: &GammaElement) -> String {
        let gens: Vec<String> = e
            .gens
            .iter()
            .map(|g| {
                let vs: Vec<String> = g.iter().map(|v| v.to_string()).collect();
                format!("({})", vs.join(","))
            })
            .collect();
        format!("^[{}]", gens.join(" "))
    }
}

/// `m(x, y)(f) = |f(x) - f(y)|`.
pub fn gamma_distance(functions: &[GridFunction], x: usize, y: usize) -> Vec<Rational64> {
    functions
        .iter()
        .map(|f| f.value(x).abs_diff(f.value(y)).to_rational())
        .collect()
}

/// The symmetric `Γ`-valued space `d(x, y) = m(x, y)^` of a completely
/// regular topology and a family of continuous separating functions.
pub fn gamma_space(top: &FiniteTopology, functions: &[GridFunction]) -> Result<ContinuitySpace<GammaQuantale>, CregError> {
    for (i, f) in functions.iter().enumerate() {
        if f.len() != top.len() {
            return Err(CregError::Arity(f.len(), top.len()));
        }
        if !f.is_continuous(top) {
            return Err(CregError::NotContinuous(i));
        }
        if !(f.values.contains(&Dyadic::ONE) && f.values.contains(&Dyadic::ZERO)) {
            return Err(CregError::NotSeparating(i));
        }
    }
    let depth = functions.iter().map(|f| f.depth).max().unwrap_or(0).max(min_depth(top.len()));
    if let Some((x, o)) = complete_regularity_violation(top, depth)? {
        return Err(CregError::NotCompletelyRegular(top.names()[x].clone(), o.render(top.names())));
    }
    if functions.is_empty() && !top.same_opens(&FiniteTopology::indiscrete(top.len())) {
        return Err(CregError::EmptyFamily);
    }
    let q = GammaQuantale::new(functions.len());
    let n = top.len();
    let dist = (0..n)
        .map(|x| (0..n).map(|y| q.element([gamma_distance(functions, x, y)])).collect())
        .collect();
    Ok(ContinuitySpace::new(q, top.names().to_vec(), dist)?)
}

/// The two inclusions behind `O(gamma_space(τ, F)) = τ`, checked directly.
///
/// Every ball whose radius is 1 off at most two functions, at values `ts`,
/// is open in `τ`; and for each `x` in an open `O` some function `f` with
/// `f(x) = 1`, `f = 0` off `O` gives a single-support radius whose ball
/// around `x` stays inside `O`.
pub fn gamma_constructive_check(
    top: &FiniteTopology,
    functions: &[GridFunction],
    space: &ContinuitySpace<GammaQuantale>,
    ts: &[Rational64],
) -> Result<(), String> {
    let q = space.quantale();
    let names = top.names();
    let k = functions.len();
    for x in 0..top.len() {
        for f in 0..k {
            for &s in ts {
                let single = space.ball_unchecked(&q.single_support(f, s), x);
                if !top.is_open(single) {
                    return Err(format!("ball {} around {} is not open", single.render(names), names[x]));
                }
                for g in (f + 1)..k {
                    for &t in ts {
                        let b = space.ball_unchecked(&q.double_support((f, s), (g, t)), x);
                        if !top.is_open(b) {
                            return Err(format!("ball {} around {} is not open", b.render(names), names[x]));
                        }
                    }
                }
            }
        }
    }
    let half = Rational64::new(1, 2);
    for o in top.opens() {
        for x in o.iter() {
            let found = functions.iter().enumerate().any(|(i, f)| {
                f.separates(x, o) && space.ball_unchecked(&q.single_support(i, half), x).is_subset(o)
            });
            if !found {
                return Err(format!("no radius around {} fits inside {}", names[x], o.render(names)));
            }
        }
    }
    Ok(())
}
