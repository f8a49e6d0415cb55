//! Value quantales: the [`Quantale`] interface shared by every distance
//! codomain in the crate, the table-driven [`FiniteQuantale`], and the
//! halving machinery behind dyadic scales.

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use thiserror::Error;

use crate::dyadic::Dyadic;
use crate::lattice::{Elem, FiniteLattice, LatticeError};

/// The operations a distance codomain must provide.
///
/// Order, meets and joins are those of a complete lattice, `plus` is the
/// monoid addition with unit `bottom`, and `well_above(y, x)` is `y ≻ x`.
/// Positive elements (`≻ bottom`) serve as ball radii.
pub trait Quantale: Clone + fmt::Debug {
    type Elem: Clone + Eq + Hash + fmt::Debug;

    fn bottom(&self) -> Self::Elem;
    fn top(&self) -> Self::Elem;
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn plus(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `y ≻ x`.
    fn well_above(&self, y: &Self::Elem, x: &Self::Elem) -> bool;

    /// A positive `δ` with `eps ≻ δ + δ`, when `eps` is positive.
    fn half(&self, eps: &Self::Elem) -> Option<Self::Elem>;

    /// A finite family of positive radii containing [`Quantale::finest_radius`].
    ///
    /// Finite quantales return every positive element.
    fn radius_family(&self, distances: &[Self::Elem]) -> Vec<Self::Elem>;

    /// A positive `r` such that, for each `d` in `distances`, `r ≻ d` holds
    /// exactly when every positive radius is well above `d`.
    fn finest_radius(&self, distances: &[Self::Elem]) -> Self::Elem;

    fn render(&self, e: &Self::Elem) -> String;

    /// `c ≤ a + b`.
    fn leq_sum(&self, c: &Self::Elem, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.leq(c, &self.plus(a, b))
    }

    fn is_positive(&self, e: &Self::Elem) -> bool {
        self.well_above(e, &self.bottom())
    }

    fn is_bottom(&self, e: &Self::Elem) -> bool {
        *e == self.bottom()
    }

    /// Meet of a family; the empty meet is top.
    fn meet_all<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.top(), |acc, e| self.meet(&acc, e))
    }

    /// Join of a family; the empty join is bottom.
    fn join_all<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.bottom(), |acc, e| self.join(&acc, e))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuantaleError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("addition table is {got} wide, expected {expected}")]
    TableShape { expected: usize, got: usize },
    #[error("`{0}` is not positive")]
    NotPositive(String),
    #[error("no positive δ with {0} ≻ δ + δ: not a value quantale")]
    NoHalf(String),
    #[error("addition is missing `{0} + {1}`")]
    MissingSum(String, String),
    #[error("conflicting sums for `{0} + {1}`")]
    ConflictingSum(String, String),
}

/// The first value-quantale axiom a [`FiniteQuantale`] violates, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    NotCompletelyDistributive { element: String },
    PositivesNotFilter { positives: Vec<String> },
    NotCommutative { a: String, b: String },
    NotAssociative { a: String, b: String, c: String },
    BottomNotNeutral { a: String },
    MeetNotDistributive { x: String, subset: Vec<String> },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::NotCompletelyDistributive { element } => {
                write!(f, "not completely distributive: {element} is not the meet of its well-above set")
            }
            AxiomViolation::PositivesNotFilter { positives } => {
                write!(f, "positives {{{}}} do not form a filter", positives.join(" "))
            }
            AxiomViolation::NotCommutative { a, b } => write!(f, "{a} + {b} != {b} + {a}"),
            AxiomViolation::NotAssociative { a, b, c } => {
                write!(f, "({a} + {b}) + {c} != {a} + ({b} + {c})")
            }
            AxiomViolation::BottomNotNeutral { a } => write!(f, "{a} + bottom != {a}"),
            AxiomViolation::MeetNotDistributive { x, subset } => {
                write!(f, "meet of {x} + {{{}}} != {x} + meet", subset.join(" "))
            }
        }
    }
}

struct FiniteInner {
    lattice: FiniteLattice,
    plus: Vec<Elem>,
    positives: Vec<Elem>,
}

/// A finite lattice with an addition table.
#[derive(Clone)]
pub struct FiniteQuantale {
    inner: Arc<FiniteInner>,
}

impl fmt::Debug for FiniteQuantale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteQuantale").field("elements", &self.lattice().names()).finish()
    }
}

impl PartialEq for FiniteQuantale {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.lattice == other.inner.lattice && self.inner.plus == other.inner.plus)
    }
}

impl FiniteQuantale {
    /// Pairs a lattice with a full addition table (`plus[a][b]`).
    ///
    /// Only the table's shape is validated here; see [`FiniteQuantale::check_axioms`].
    pub fn new(lattice: FiniteLattice, plus: Vec<Vec<Elem>>) -> Result<Self, QuantaleError> {
        let n = lattice.len();
        if plus.len() != n {
            return Err(QuantaleError::TableShape { expected: n, got: plus.len() });
        }
        if let Some(row) = plus.iter().find(|r| r.len() != n) {
            return Err(QuantaleError::TableShape { expected: n, got: row.len() });
        }
        let flat: Vec<Elem> = plus.into_iter().flatten().collect();
        for &e in &flat {
            lattice.check(e)?;
        }
        let positives = lattice.positives();
        Ok(FiniteQuantale { inner: Arc::new(FiniteInner { lattice, plus: flat, positives }) })
    }

    pub fn from_fn(lattice: FiniteLattice, f: impl Fn(Elem, Elem) -> Elem) -> Result<Self, QuantaleError> {
        let n = lattice.len();
        let table = (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect();
        Self::new(lattice, table)
    }

    /// Addition given as `(a, b, a + b)` triples; missing mirrored entries are filled by commutativity.
    pub fn from_sums(lattice: FiniteLattice, sums: &[(Elem, Elem, Elem)]) -> Result<Self, QuantaleError> {
        let n = lattice.len();
        let mut table: Vec<Vec<Option<Elem>>> = vec![vec![None; n]; n];
        let name = |e: Elem| lattice.name(e).to_string();
        for &(a, b, c) in sums {
            lattice.check(a)?;
            lattice.check(b)?;
            lattice.check(c)?;
            match table[a][b] {
                Some(prev) if prev != c => return Err(QuantaleError::ConflictingSum(name(a), name(b))),
                _ => table[a][b] = Some(c),
            }
        }
        for a in 0..n {
            for b in 0..n {
                if table[a][b].is_none() {
                    table[a][b] = table[b][a];
                }
            }
        }
        let mut full = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                full[a][b] = table[a][b].ok_or_else(|| QuantaleError::MissingSum(name(a), name(b)))?;
            }
        }
        Self::new(lattice, full)
    }

    /// `C_n = {0, .., n}` with addition `min(a + b, n)`.
    pub fn truncated_chain(n: usize) -> Self {
        let lattice = FiniteLattice::chain(n + 1);
        Self::from_fn(lattice, |a, b| (a + b).min(n)).expect("valid table")
    }

    /// Any lattice with addition `∨`.
    pub fn with_join(lattice: FiniteLattice) -> Self {
        let l = lattice.clone();
        Self::from_fn(lattice, |a, b| l.join2(a, b)).expect("valid table")
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.inner.lattice
    }

    pub fn len(&self) -> usize {
        self.inner.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn positives(&self) -> &[Elem] {
        &self.inner.positives
    }

    pub fn name(&self, e: Elem) -> &str {
        self.inner.lattice.name(e)
    }

    pub fn index_of(&self, name: &str) -> Result<Elem, LatticeError> {
        self.inner.lattice.index_of(name)
    }

    pub fn sum(&self, a: Elem, b: Elem) -> Elem {
        self.inner.plus[a * self.len() + b]
    }

    /// The first violated axiom, in the order: complete distributivity,
    /// positives form a filter, commutativity, associativity, bottom is
    /// neutral, addition distributes over nonempty meets.
    pub fn check_axioms(&self) -> Result<(), AxiomViolation> {
        let l = self.lattice();
        let name = |e: Elem| l.name(e).to_string();
        if let Some(e) = l.first_raney_failure() {
            return Err(AxiomViolation::NotCompletelyDistributive { element: name(e) });
        }
        if !l.is_filter(self.positives()) {
            return Err(AxiomViolation::PositivesNotFilter {
                positives: self.positives().iter().map(|&e| name(e)).collect(),
            });
        }
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                if self.sum(a, b) != self.sum(b, a) {
                    return Err(AxiomViolation::NotCommutative { a: name(a), b: name(b) });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.sum(self.sum(a, b), c) != self.sum(a, self.sum(b, c)) {
                        return Err(AxiomViolation::NotAssociative { a: name(a), b: name(b), c: name(c) });
                    }
                }
            }
        }
        let bot = l.bottom();
        if let Some(a) = (0..n).find(|&a| self.sum(a, bot) != a) {
            return Err(AxiomViolation::BottomNotNeutral { a: name(a) });
        }
        assert!(n < 24, "meet-distributivity check enumerates all subsets");
        for mask in 1u32..(1 << n) {
            let subset: Vec<Elem> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let m = l.meet(subset.iter().copied());
            for x in 0..n {
                let lhs = l.meet(subset.iter().map(|&s| self.sum(x, s)));
                if lhs != self.sum(x, m) {
                    return Err(AxiomViolation::MeetNotDistributive {
                        x: name(x),
                        subset: subset.iter().map(|&s| name(s)).collect(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_value_quantale(&self) -> bool {
        self.check_axioms().is_ok()
    }
}

impl Quantale for FiniteQuantale {
    type Elem = Elem;

    fn bottom(&self) -> Elem {
        self.lattice().bottom()
    }

    fn top(&self) -> Elem {
        self.lattice().top()
    }

    fn leq(&self, a: &Elem, b: &Elem) -> bool {
        self.lattice().leq(*a, *b)
    }

    fn meet(&self, a: &Elem, b: &Elem) -> Elem {
        self.lattice().meet2(*a, *b)
    }

    fn join(&self, a: &Elem, b: &Elem) -> Elem {
        self.lattice().join2(*a, *b)
    }

    fn plus(&self, a: &Elem, b: &Elem) -> Elem {
        self.sum(*a, *b)
    }

    fn well_above(&self, y: &Elem, x: &Elem) -> bool {
        self.lattice().well_above(*y, *x)
    }

    /// Among positive `δ` with `eps ≻ δ + δ`, the first maximal one in carrier order.
    fn half(&self, eps: &Elem) -> Option<Elem> {
        if !self.is_positive(eps) {
            return None;
        }
        let l = self.lattice();
        let valid: Vec<Elem> = self
            .positives()
            .iter()
            .copied()
            .filter(|&d| l.well_above(*eps, self.sum(d, d)))
            .collect();
        valid
            .iter()
            .copied()
            .find(|&d| valid.iter().all(|&e| e == d || !l.leq(d, e)))
    }

    fn radius_family(&self, _distances: &[Elem]) -> Vec<Elem> {
        self.positives().to_vec()
    }

    fn finest_radius(&self, _distances: &[Elem]) -> Elem {
        self.lattice().meet(self.positives().iter().copied())
    }

    fn render(&self, e: &Elem) -> String {
        self.name(*e).to_string()
    }
}

/// Checked halving: the positive `δ` chosen by [`Quantale::half`].
pub fn half<Q: Quantale>(q: &Q, eps: &Q::Elem) -> Result<Q::Elem, QuantaleError> {
    if !q.is_positive(eps) {
        return Err(QuantaleError::NotPositive(q.render(eps)));
    }
    q.half(eps).ok_or_else(|| QuantaleError::NoHalf(q.render(eps)))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScaleError {
    #[error(transparent)]
    Quantale(#[from] QuantaleError),
    #[error("{0} is not in [0, 1]")]
    OutOfUnitInterval(Dyadic),
    #[error("{value} needs denominator 2^{needed}, scale depth is {depth}")]
    TooFine { value: Dyadic, needed: u32, depth: u32 },
    #[error("scale is not monotone between {0} and {1}")]
    NotMonotone(Dyadic, Dyadic),
}

/// A chain `δ₀ = ε, δ₁, .., δ_k` of positives with `δ_i ≻ δ_{i+1} + δ_{i+1}`.
///
/// `δ_i` plays the role of `ε / 2^i`; [`DyadicScale::multiple`] extends it to
/// every dyadic in `[0, 1]` with denominator at most `2^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicScale<E> {
    chain: Vec<E>,
}

impl<E: Clone + Eq + Hash + fmt::Debug> DyadicScale<E> {
    /// Builds the chain by repeated [`half`], then checks monotonicity on the whole grid.
    pub fn new<Q: Quantale<Elem = E>>(q: &Q, eps: &E, depth: u32) -> Result<Self, ScaleError> {
        let mut chain = vec![eps.clone()];
        for _ in 0..depth {
            let next = half(q, chain.last().expect("nonempty"))?;
            chain.push(next);
        }
        let scale = DyadicScale { chain };
        scale.check_monotone(q)?;
        Ok(scale)
    }

    pub fn epsilon(&self) -> &E {
        &self.chain[0]
    }

    pub fn chain(&self) -> &[E] {
        &self.chain
    }

    pub fn depth(&self) -> u32 {
        (self.chain.len() - 1) as u32
    }

    /// `n·ε`: the sum of the `δ_i` whose binary digit in `n` is one.
    pub fn multiple<Q: Quantale<Elem = E>>(&self, q: &Q, n: Dyadic) -> Result<E, ScaleError> {
        if n > Dyadic::ONE {
            return Err(ScaleError::OutOfUnitInterval(n));
        }
        if n.exponent() > self.depth() {
            return Err(ScaleError::TooFine { value: n, needed: n.exponent(), depth: self.depth() });
        }
        let mut acc = q.bottom();
        for (i, delta) in self.chain.iter().enumerate() {
            if n.binary_digit(i as u32) == 1 {
                acc = q.plus(&acc, delta);
            }
        }
        Ok(acc)
    }

    /// Grid points `i / 2^k` with their multiples, ascending.
    pub fn grid<Q: Quantale<Elem = E>>(&self, q: &Q) -> Vec<(Dyadic, E)> {
        Dyadic::grid(self.depth())
            .map(|n| (n, self.multiple(q, n).expect("grid points are in range")))
            .collect()
    }

    /// `n <= m` implies `n·ε <= m·ε` across the grid.
    pub fn check_monotone<Q: Quantale<Elem = E>>(&self, q: &Q) -> Result<(), ScaleError> {
        let grid = self.grid(q);
        for w in grid.windows(2) {
            if !q.leq(&w[0].1, &w[1].1) {
                return Err(ScaleError::NotMonotone(w[0].0, w[1].0));
            }
        }
        Ok(())
    }
}

/// `dyadic_scale(q, eps, depth)`.
pub fn dyadic_scale<Q: Quantale>(q: &Q, eps: &Q::Elem, depth: u32) -> Result<DyadicScale<Q::Elem>, ScaleError> {
    DyadicScale::new(q, eps, depth)
}

/// `n·ε` for a scale built over `q`.
pub fn dyadic_multiple<Q: Quantale>(
    q: &Q,
    scale: &DyadicScale<Q::Elem>,
    n: Dyadic,
) -> Result<Q::Elem, ScaleError> {
    scale.multiple(q, n)
}
