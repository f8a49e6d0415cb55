//! The extended half-line `[0, ∞]` with ordinary addition, on exact rationals.
//!
//! Unlike a finite chain, radii here are strict: `ε ≻ x` iff `x < ε` (or
//! `ε = ∞`), so the ball `B_ε(x)` is the usual open ball.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use thiserror::Error;

use crate::quantale::Quantale;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub enum Extended {
    Finite(Rational64),
    Infinite,
}

impl Extended {
    pub fn int(n: i64) -> Self {
        Extended::Finite(Rational64::from_integer(n))
    }
}

impl Ord for Extended {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => a.cmp(b),
            (Extended::Finite(_), Extended::Infinite) => Ordering::Less,
            (Extended::Infinite, Extended::Finite(_)) => Ordering::Greater,
            (Extended::Infinite, Extended::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Extended {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(r) => write!(f, "{r}"),
            Extended::Infinite => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("`{0}` is not a non-negative rational or `inf`")]
pub struct ParseExtendedError(String);

impl FromStr for Extended {
    type Err = ParseExtendedError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "inf" || s == "∞" {
            return Ok(Extended::Infinite);
        }
        let r: Rational64 = s.parse().map_err(|_| ParseExtendedError(s.to_string()))?;
        if r < Rational64::from_integer(0) {
            return Err(ParseExtendedError(s.to_string()));
        }
        Ok(Extended::Finite(r))
    }
}

/// `[0, ∞]` ordered as usual, with `+` and `∞` absorbing.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct HalfLine;

impl HalfLine {
    fn finite_positive_floor(distances: &[Extended]) -> Rational64 {
        distances
            .iter()
            .filter_map(|d| match d {
                Extended::Finite(r) if *r > Rational64::from_integer(0) => Some(*r),
                _ => None,
            })
            .min()
            .unwrap_or_else(|| Rational64::from_integer(1))
    }
}

impl Quantale for HalfLine {
    type Elem = Extended;

    fn bottom(&self) -> Extended {
        Extended::int(0)
    }

    fn top(&self) -> Extended {
        Extended::Infinite
    }

    fn leq(&self, a: &Extended, b: &Extended) -> bool {
        a <= b
    }

    fn meet(&self, a: &Extended, b: &Extended) -> Extended {
        *a.min(b)
    }

    fn join(&self, a: &Extended, b: &Extended) -> Extended {
        *a.max(b)
    }

    fn plus(&self, a: &Extended, b: &Extended) -> Extended {
        match (a, b) {
            (Extended::Finite(x), Extended::Finite(y)) => Extended::Finite(x + y),
            _ => Extended::Infinite,
        }
    }

    fn well_above(&self, y: &Extended, x: &Extended) -> bool {
        *y == Extended::Infinite || x < y
    }

    fn half(&self, eps: &Extended) -> Option<Extended> {
        match eps {
            Extended::Infinite => Some(Extended::Infinite),
            Extended::Finite(r) if *r > Rational64::from_integer(0) => {
                Some(Extended::Finite(r / Rational64::from_integer(4)))
            }
            _ => None,
        }
    }

    fn radius_family(&self, distances: &[Extended]) -> Vec<Extended> {
        let mut out = vec![self.finest_radius(distances)];
        for d in distances {
            if self.is_positive(d) && !out.contains(d) {
                out.push(*d);
            }
        }
        if !out.contains(&Extended::Infinite) {
            out.push(Extended::Infinite);
        }
        out
    }

    fn finest_radius(&self, distances: &[Extended]) -> Extended {
        Extended::Finite(Self::finite_positive_floor(distances) / Rational64::from_integer(2))
    }

    fn render(&self, e: &Extended) -> String {
        e.to_string()
    }
}
