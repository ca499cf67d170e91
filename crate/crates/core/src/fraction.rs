//! Extended rationals for rational-tangle bookkeeping.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A reduced fraction with non-negative denominator; `1/0` is infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fraction {
    numerator: i128,
    denominator: i128,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Fraction {
    pub const INFINITY: Fraction = Fraction { numerator: 1, denominator: 0 };

    /// Reduces and normalizes signs. Panics on `0/0`.
    pub fn new(numerator: i128, denominator: i128) -> Self {
        assert!(numerator != 0 || denominator != 0, "0/0 is not an extended rational");
        if denominator == 0 {
            return Self::INFINITY;
        }
        let g = gcd(numerator, denominator);
        let s = denominator.signum();
        Fraction { numerator: s * numerator / g, denominator: s * denominator / g }
    }

    pub fn integer(n: i64) -> Self {
        Fraction { numerator: n as i128, denominator: 1 }
    }

    pub fn numerator(&self) -> i128 {
        self.numerator
    }

    pub fn denominator(&self) -> i128 {
        self.denominator
    }

    pub fn is_infinite(&self) -> bool {
        self.denominator == 0
    }

    pub fn is_integer(&self) -> bool {
        self.denominator == 1
    }

    /// `a - 1/self`.
    pub fn minus_reciprocal_from(&self, a: i64) -> Self {
        let a = a as i128;
        Fraction::new(a * self.numerator - self.denominator, self.numerator)
    }

    /// The fraction of the tangle rotated by a quarter turn: `p/q -> -q/p`.
    pub fn rotated(&self) -> Self {
        Fraction::new(-self.denominator, self.numerator)
    }

    /// Sum with an integer-valued fraction.
    pub fn add_integer(&self, n: i128) -> Self {
        Fraction::new(self.numerator + n * self.denominator, self.denominator)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

/// Evaluates `a1 - 1/(a2 - 1/(... - 1/an))` over the extended rationals.
pub fn cf_value(weights: &[i64]) -> Fraction {
    assert!(!weights.is_empty(), "continued fraction needs at least one term");
    let (&last, rest) = weights.split_last().unwrap();
    rest.iter().rev().fold(Fraction::integer(last), |acc, &a| acc.minus_reciprocal_from(a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        assert_eq!(Fraction::new(4, -6), Fraction::new(-2, 3));
        assert_eq!(Fraction::new(-5, 0), Fraction::INFINITY);
        assert_eq!(Fraction::new(0, -7), Fraction::integer(0));
    }

    #[test]
    fn cf_examples() {
        assert_eq!(cf_value(&[3]), Fraction::new(3, 1));
        assert_eq!(cf_value(&[2, 3]), Fraction::new(5, 3));
        assert_eq!(cf_value(&[2, 2, 2]), Fraction::new(4, 3));
    }

    #[test]
    fn cf_passes_through_infinity() {
        // 1 - 1/0 = inf, then 5 - 1/inf = 5
        assert_eq!(cf_value(&[1, 0]), Fraction::INFINITY);
        assert_eq!(cf_value(&[5, 1, 0]), Fraction::integer(5));
        assert_eq!(cf_value(&[0]), Fraction::integer(0));
    }

    #[test]
    fn rotation_has_order_four_and_negates_reciprocal() {
        let f = Fraction::new(5, 3);
        assert_eq!(f.rotated(), Fraction::new(-3, 5));
        assert_eq!(f.rotated().rotated(), f);
        assert_eq!(Fraction::integer(0).rotated(), Fraction::INFINITY);
    }
}
