//! Exact rational numbers used for every score and counting-table entry.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// An arbitrary-precision rational kept in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numerator: i64, denominator: i64) -> Result<Self, Error> {
        if denominator == 0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(numerator.into(), denominator.into())))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// The harmonic number `1 + 1/2 + ... + 1/x` (zero for `x = 0`).
    pub fn harmonic(x: usize) -> Self {
        (1..=x as i64).map(|i| Rational::new(1, i).unwrap()).sum()
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn checked_div(&self, other: &Rational) -> Result<Rational, Error> {
        if other.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(&self.0 / &other.0))
    }

    /// Smallest positive integer `l` with `l * self > bound`.
    ///
    /// `self` must be positive.
    pub fn smallest_multiplier_exceeding(&self, bound: &Rational) -> Option<u64> {
        if !self.is_positive() {
            return None;
        }
        let q = (&bound.0 / &self.0).floor() + BigRational::one();
        let l = q.to_integer().max(BigInt::one());
        u64::try_from(l).ok()
    }

    /// Always renders as `p/q`, including integers (`4/1`).
    pub fn to_pq(&self) -> String {
        format!("{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p`, `p/q` and `-p/q` with optional surrounding whitespace.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || Error::BadRational(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num, den)))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<usize> for Rational {
    fn from(n: usize) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div<&Rational> for &Rational {
    type Output = Rational;
    /// Panics on division by zero; use [`Rational::checked_div`] for input data.
    fn div(self, rhs: &Rational) -> Rational {
        Rational(&self.0 / &rhs.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<Rational> for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    #[test]
    fn canonical_form() {
        let x = r(6, -4);
        assert_eq!(x.numerator(), &BigInt::from(-3));
        assert_eq!(x.denominator(), &BigInt::from(2));
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(r(8, 2).to_pq(), "4/1");
        assert_eq!(r(8, 2).to_string(), "4");
    }

    #[test]
    fn parse() {
        assert_eq!("3/2".parse::<Rational>().unwrap(), r(3, 2));
        assert_eq!(" -7 ".parse::<Rational>().unwrap(), r(-7, 1));
        assert_eq!("10/4".parse::<Rational>().unwrap(), r(5, 2));
        assert!(matches!("1/0".parse::<Rational>(), Err(Error::ZeroDenominator)));
        assert!("x/2".parse::<Rational>().is_err());
        assert!(Rational::new(1, 0).is_err());
    }

    #[test]
    fn harmonic_numbers() {
        assert_eq!(Rational::harmonic(0), Rational::zero());
        assert_eq!(Rational::harmonic(1), Rational::one());
        assert_eq!(Rational::harmonic(2), r(3, 2));
        assert_eq!(Rational::harmonic(4), r(25, 12));
    }

    #[test]
    fn smallest_multiplier() {
        // l * 1 > 1 -> 2
        assert_eq!(Rational::one().smallest_multiplier_exceeding(&Rational::one()), Some(2));
        assert_eq!(r(1, 2).smallest_multiplier_exceeding(&Rational::one()), Some(3));
        assert_eq!(r(4, 1).smallest_multiplier_exceeding(&Rational::one()), Some(1));
        assert_eq!(r(3, 1).smallest_multiplier_exceeding(&Rational::one()), Some(1));
        assert_eq!(Rational::zero().smallest_multiplier_exceeding(&Rational::one()), None);
    }

    proptest! {
        #[test]
        fn add_matches_cross_multiplication(p in -10_000i64..10_000, q in 1i64..10_000,
                                            a in -10_000i64..10_000, b in 1i64..10_000) {
            let sum = r(p, q) + r(a, b);
            // p/q + a/b == (pb + aq) / qb, compared by cross-multiplying
            let num = BigInt::from(p * b + a * q);
            let den = BigInt::from(q * b);
            prop_assert_eq!(sum.numerator() * &den, num * sum.denominator());
            prop_assert!(sum.denominator() > &BigInt::zero());
        }

        #[test]
        fn ordering_matches_cross_multiplication(p in -10_000i64..10_000, q in 1i64..10_000,
                                                 a in -10_000i64..10_000, b in 1i64..10_000) {
            let lhs = r(p, q);
            let rhs = r(a, b);
            prop_assert_eq!(lhs.cmp(&rhs), (p * b).cmp(&(a * q)));
        }

        #[test]
        fn mul_sub_exact(p in -1000i64..1000, q in 1i64..1000, a in -1000i64..1000, b in 1i64..1000) {
            let x = r(p, q);
            let y = r(a, b);
            prop_assert_eq!(&(&x * &y) , &r(p * a, q * b));
            prop_assert_eq!(&(&x - &y) + &y, x);
        }
    }
}
