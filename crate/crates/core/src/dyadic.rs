//! Exact dyadic rationals `m / 2^k`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use thiserror::Error;

/// Largest exponent a [`Dyadic`] may carry.
pub const MAX_EXPONENT: u32 = 40;

/// A non-negative dyadic rational, stored in lowest terms.
///
/// `Dyadic::new(3, 2)` is `3/4`. The numerator is odd unless the value is an
/// integer, so equal values always have equal representations.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: u64,
    exp: u32,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DyadicError {
    #[error("`{0}` is not a fraction with a power-of-two denominator")]
    NotDyadic(String),
    #[error("denominator 2^{0} exceeds the supported depth 2^{MAX_EXPONENT}")]
    TooDeep(u32),
    #[error("`{0}` is not a number")]
    Malformed(String),
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, exp: 0 };

    /// `num / 2^exp`, normalised.
    pub fn new(num: u64, exp: u32) -> Self {
        assert!(exp <= MAX_EXPONENT, "dyadic exponent {exp} too large");
        let mut d = Dyadic { num, exp };
        d.normalise();
        d
    }

    fn normalise(&mut self) {
        if self.num == 0 {
            self.exp = 0;
            return;
        }
        while self.exp > 0 && self.num.is_multiple_of(2) {
            self.num /= 2;
            self.exp -= 1;
        }
    }

    pub fn numerator(self) -> u64 {
        self.num
    }

    /// The exponent `k` of the reduced denominator `2^k`.
    pub fn exponent(self) -> u32 {
        self.exp
    }

    /// Numerator over the fixed denominator `2^depth`, if the value lies on that grid.
    pub fn on_grid(self, depth: u32) -> Option<u64> {
        if self.exp > depth {
            return None;
        }
        Some(self.num << (depth - self.exp))
    }

    /// All grid points `i / 2^depth` for `0 <= i <= 2^depth`, ascending.
    pub fn grid(depth: u32) -> impl Iterator<Item = Dyadic> {
        (0..=(1u64 << depth)).map(move |i| Dyadic::new(i, depth))
    }

    fn aligned(self, other: Dyadic) -> (u64, u64, u32) {
        let exp = self.exp.max(other.exp);
        (self.num << (exp - self.exp), other.num << (exp - other.exp), exp)
    }

    pub fn checked_add(self, other: Dyadic) -> Option<Dyadic> {
        let (a, b, exp) = self.aligned(other);
        a.checked_add(b).map(|n| Dyadic::new(n, exp))
    }

    /// `|self - other|`.
    pub fn abs_diff(self, other: Dyadic) -> Dyadic {
        let (a, b, exp) = self.aligned(other);
        Dyadic::new(a.abs_diff(b), exp)
    }

    /// `max(0, self - other)`.
    pub fn saturating_sub(self, other: Dyadic) -> Dyadic {
        let (a, b, exp) = self.aligned(other);
        Dyadic::new(a.saturating_sub(b), exp)
    }

    pub fn min_one(self) -> Dyadic {
        self.min(Dyadic::ONE)
    }

    /// Binary digit `i` after the point: the coefficient of `2^-i` (`i = 0` is the units digit).
    pub fn binary_digit(self, i: u32) -> u64 {
        if i > self.exp {
            return 0;
        }
        (self.num >> (self.exp - i)) & 1
    }

    pub fn to_rational(self) -> Rational64 {
        Rational64::new(self.num as i64, 1i64 << self.exp)
    }

    /// Converts an exact rational, failing unless the denominator is a power of two.
    pub fn from_rational(r: Rational64) -> Option<Dyadic> {
        if *r.numer() < 0 {
            return None;
        }
        let den = *r.denom() as u64;
        if !den.is_power_of_two() {
            return None;
        }
        let exp = den.trailing_zeros();
        (exp <= MAX_EXPONENT).then(|| Dyadic::new(*r.numer() as u64, exp))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(*other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, 1u64 << self.exp)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Dyadic {
    type Err = DyadicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num: u64 = n.trim().parse().map_err(|_| DyadicError::Malformed(s.to_string()))?;
        let den: u64 = d.trim().parse().map_err(|_| DyadicError::Malformed(s.to_string()))?;
        if den == 0 || !den.is_power_of_two() {
            return Err(DyadicError::NotDyadic(s.to_string()));
        }
        let exp = den.trailing_zeros();
        if exp > MAX_EXPONENT {
            return Err(DyadicError::TooDeep(exp));
        }
        Ok(Dyadic::new(num, exp))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalises_to_lowest_terms() {
        assert_eq!(Dyadic::new(2, 2), Dyadic::new(1, 1));
        assert_eq!(Dyadic::new(0, 5), Dyadic::ZERO);
        assert_eq!(Dyadic::new(4, 2), Dyadic::ONE);
    }

    #[test]
    fn parses_and_prints() {
        let d: Dyadic = "3/8".parse().unwrap();
        assert_eq!(d, Dyadic::new(3, 3));
        assert_eq!(d.to_string(), "3/8");
        assert_eq!("1".parse::<Dyadic>().unwrap(), Dyadic::ONE);
        assert!(matches!("1/3".parse::<Dyadic>(), Err(DyadicError::NotDyadic(_))));
        assert!(matches!("x/2".parse::<Dyadic>(), Err(DyadicError::Malformed(_))));
    }

    #[test]
    fn binary_digits_of_three_quarters() {
        let d = Dyadic::new(3, 2);
        assert_eq!(d.binary_digit(0), 0);
        assert_eq!(d.binary_digit(1), 1);
        assert_eq!(d.binary_digit(2), 1);
        assert_eq!(d.binary_digit(3), 0);
        assert_eq!(Dyadic::ONE.binary_digit(0), 1);
    }

    #[test]
    fn grid_and_arithmetic() {
        let g: Vec<_> = Dyadic::grid(2).collect();
        assert_eq!(g.len(), 5);
        assert_eq!(g[3], Dyadic::new(3, 2));
        assert_eq!(Dyadic::new(1, 2).checked_add(Dyadic::new(1, 1)), Some(Dyadic::new(3, 2)));
        assert_eq!(Dyadic::new(1, 2).abs_diff(Dyadic::ONE), Dyadic::new(3, 2));
        assert_eq!(Dyadic::new(1, 2).saturating_sub(Dyadic::ONE), Dyadic::ZERO);
        assert_eq!(Dyadic::new(3, 2).on_grid(3), Some(6));
        assert_eq!(Dyadic::new(3, 3).on_grid(2), None);
    }

    #[test]
    fn rational_round_trip() {
        let d = Dyadic::new(5, 4);
        assert_eq!(Dyadic::from_rational(d.to_rational()), Some(d));
        assert_eq!(Dyadic::from_rational(Rational64::new(1, 3)), None);
    }
}
