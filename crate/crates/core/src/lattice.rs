//! Finite lattices given by an explicit order table.
//!
//! A [`FiniteLattice`] is built from a raw `<=` relation and validated: the
//! relation must be a partial order in which every pair has a meet and a
//! join, and top and bottom must exist. Elements are addressed by their
//! position in the carrier list ([`Elem`]).
//!
//! The well-above relation `y ≻ x` quantifies over *nonempty* subsets `S`:
//! `y ≻ x` holds when every nonempty `S` with `⋀S <= x` has a member
//! `s <= y`. In particular `⊤ ≻ x` for every `x`.

use std::fmt;

use thiserror::Error;

/// Index of an element in a finite carrier.
pub type Elem = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("empty carrier")]
    Empty,
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("element index {0} out of range")]
    OutOfRange(Elem),
    #[error("order table has {got} rows or columns, expected {expected}")]
    TableShape { expected: usize, got: usize },
    #[error("order is not reflexive at `{0}`")]
    NotReflexive(String),
    #[error("order is not antisymmetric: `{0}` <= `{1}` <= `{0}`")]
    NotAntisymmetric(String, String),
    #[error("order is not transitive: `{0}` <= `{1}` <= `{2}` but not `{0}` <= `{2}`")]
    NotTransitive(String, String, String),
    #[error("`{0}` and `{1}` have no {2}")]
    MissingBound(String, String, &'static str),
}

/// A finite lattice with precomputed meet and join tables.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    names: Vec<String>,
    leq: Vec<bool>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    top: Elem,
    bottom: Elem,
}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteLattice").field("elements", &self.names).finish()
    }
}

impl FiniteLattice {
    /// Builds a lattice from a full `<=` table (`leq[i][j]` is `names[i] <= names[j]`).
    pub fn from_table(names: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self, LatticeError> {
        let n = names.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(LatticeError::DuplicateElement(a.clone()));
            }
        }
        if leq.len() != n {
            return Err(LatticeError::TableShape { expected: n, got: leq.len() });
        }
        if let Some(row) = leq.iter().find(|r| r.len() != n) {
            return Err(LatticeError::TableShape { expected: n, got: row.len() });
        }
        let flat: Vec<bool> = leq.into_iter().flatten().collect();
        let le = |a: usize, b: usize| flat[a * n + b];

        for a in 0..n {
            if !le(a, a) {
                return Err(LatticeError::NotReflexive(names[a].clone()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && le(a, b) && le(b, a) {
                    return Err(LatticeError::NotAntisymmetric(names[a].clone(), names[b].clone()));
                }
                for c in 0..n {
                    if le(a, b) && le(b, c) && !le(a, c) {
                        return Err(LatticeError::NotTransitive(
                            names[a].clone(),
                            names[b].clone(),
                            names[c].clone(),
                        ));
                    }
                }
            }
        }

        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let lower: Vec<Elem> = (0..n).filter(|&c| le(c, a) && le(c, b)).collect();
                let glb = lower.iter().copied().find(|&c| lower.iter().all(|&d| le(d, c)));
                meet[a * n + b] = glb.ok_or_else(|| {
                    LatticeError::MissingBound(names[a].clone(), names[b].clone(), "meet")
                })?;
                let upper: Vec<Elem> = (0..n).filter(|&c| le(a, c) && le(b, c)).collect();
                let lub = upper.iter().copied().find(|&c| upper.iter().all(|&d| le(c, d)));
                join[a * n + b] = lub.ok_or_else(|| {
                    LatticeError::MissingBound(names[a].clone(), names[b].clone(), "join")
                })?;
            }
        }
        // Pairwise bounds in a finite poset give top and bottom by folding.
        let top = (1..n).fold(0, |acc, e| join[acc * n + e]);
        let bottom = (1..n).fold(0, |acc, e| meet[acc * n + e]);
        Ok(FiniteLattice { names, leq: flat, meet, join, top, bottom })
    }

    /// Builds a lattice from the reflexive-transitive closure of the given `<=` pairs.
    pub fn from_relation<S: AsRef<str>>(
        names: Vec<String>,
        pairs: &[(S, S)],
    ) -> Result<Self, LatticeError> {
        let n = names.len();
        let index = |s: &str| {
            names
                .iter()
                .position(|x| x == s)
                .ok_or_else(|| LatticeError::UnknownElement(s.to_string()))
        };
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in pairs {
            let (a, b) = (index(a.as_ref())?, index(b.as_ref())?);
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::from_table(names, leq)
    }

    /// The chain `0 < 1 < ... < len-1`, with elements named by their rank.
    pub fn chain(len: usize) -> Self {
        let names = (0..len).map(|i| i.to_string()).collect();
        let leq = (0..len).map(|i| (0..len).map(|j| i <= j).collect()).collect();
        Self::from_table(names, leq).expect("chains are lattices")
    }

    /// The lattice of subsets of `{0, .., k-1}` under inclusion.
    pub fn boolean(k: u32) -> Self {
        let n = 1usize << k;
        let names = (0..n).map(|m| format!("b{m:0width$b}", width = k as usize)).collect();
        let leq = (0..n).map(|a| (0..n).map(|b| a & !b == 0).collect()).collect();
        Self::from_table(names, leq).expect("powersets are lattices")
    }

    /// `M3`: bottom, three pairwise incomparable atoms `a`, `b`, `c`, top.
    pub fn diamond() -> Self {
        let names = ["bot", "a", "b", "c", "top"].map(String::from).to_vec();
        let pairs = [("bot", "a"), ("bot", "b"), ("bot", "c"), ("a", "top"), ("b", "top"), ("c", "top")];
        Self::from_relation(names, &pairs).expect("M3 is a lattice")
    }

    /// `N5`: `bot < a < b < top` and `bot < c < top`.
    pub fn pentagon() -> Self {
        let names = ["bot", "a", "b", "c", "top"].map(String::from).to_vec();
        let pairs = [("bot", "a"), ("a", "b"), ("b", "top"), ("bot", "c"), ("c", "top")];
        Self::from_relation(names, &pairs).expect("N5 is a lattice")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        0..self.len()
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<Elem, LatticeError> {
        self.names
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| LatticeError::UnknownElement(name.to_string()))
    }

    pub fn check(&self, e: Elem) -> Result<Elem, LatticeError> {
        if e < self.len() {
            Ok(e)
        } else {
            Err(LatticeError::OutOfRange(e))
        }
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn meet2(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.len() + b]
    }

    pub fn join2(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.len() + b]
    }

    /// Meet of a set of elements; the empty meet is top.
    pub fn meet<I: IntoIterator<Item = Elem>>(&self, set: I) -> Elem {
        set.into_iter().fold(self.top, |acc, e| self.meet2(acc, e))
    }

    /// Join of a set of elements; the empty join is bottom.
    pub fn join<I: IntoIterator<Item = Elem>>(&self, set: I) -> Elem {
        set.into_iter().fold(self.bottom, |acc, e| self.join2(acc, e))
    }

    /// Checked meet over named elements.
    pub fn meet_of(&self, set: &[Elem]) -> Result<Elem, LatticeError> {
        for &e in set {
            self.check(e)?;
        }
        Ok(self.meet(set.iter().copied()))
    }

    /// Checked join over named elements.
    pub fn join_of(&self, set: &[Elem]) -> Result<Elem, LatticeError> {
        for &e in set {
            self.check(e)?;
        }
        Ok(self.join(set.iter().copied()))
    }

    /// `y ≻ x`, via `y = ⊤ or ⋀{s : s ≰ y} ≰ x`.
    pub fn well_above(&self, y: Elem, x: Elem) -> bool {
        if y == self.top {
            return true;
        }
        let m = self.meet(self.elements().filter(|&s| !self.leq(s, y)));
        !self.leq(m, x)
    }

    /// Elements well above `x`.
    pub fn well_above_set(&self, x: Elem) -> Vec<Elem> {
        self.elements().filter(|&a| self.well_above(a, x)).collect()
    }

    /// Every element is the meet of the elements well above it.
    pub fn is_completely_distributive(&self) -> bool {
        self.first_raney_failure().is_none()
    }

    /// An element that differs from the meet of its well-above set.
    pub fn first_raney_failure(&self) -> Option<Elem> {
        self.elements().find(|&y| self.meet(self.well_above_set(y)) != y)
    }

    /// Elements well above bottom.
    pub fn positives(&self) -> Vec<Elem> {
        self.well_above_set(self.bottom)
    }

    /// Whether `set` is nonempty, upward closed and closed under binary meets.
    pub fn is_filter(&self, set: &[Elem]) -> bool {
        if set.is_empty() {
            return false;
        }
        let upward = set.iter().all(|&a| self.elements().all(|b| !self.leq(a, b) || set.contains(&b)));
        let meets = set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.meet2(a, b))));
        upward && meets
    }

    /// Completely distributive with a filter of positives.
    pub fn is_value_distributive(&self) -> bool {
        self.is_completely_distributive() && self.is_filter(&self.positives())
    }
}
