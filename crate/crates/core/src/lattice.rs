//! Exact integer and rational primitives shared by every other module.
//!
//! Nothing in this crate touches floating point. Rationals are
//! [`num_rational::BigRational`], which normalizes to lowest terms with a
//! positive denominator on construction.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(value: i64) -> BigInt {
    BigInt::from(value)
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn from_int(value: &BigInt) -> Rational {
    Rational::from_integer(value.clone())
}

/// Parses `"p/q"` or `"p"`. A sign is only accepted on the numerator.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let err = || Error::Parse {
        what: "rational",
        input: input.to_string(),
    };
    let s = input.trim();
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numer: BigInt = parse_signed_digits(numer).ok_or_else(err)?;
    let denom: BigInt = match denom {
        Some(d) if !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()) => {
            d.parse().map_err(|_| err())?
        }
        Some(_) => return Err(err()),
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(numer, denom))
}

fn parse_signed_digits(s: &str) -> Option<BigInt> {
    let digits = s
        .strip_prefix('-')
        .or_else(|| s.strip_prefix('+'))
        .unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

pub fn parse_int(input: &str) -> Result<BigInt> {
    parse_signed_digits(input.trim()).ok_or_else(|| Error::Parse {
        what: "integer",
        input: input.to_string(),
    })
}

/// Greatest common divisor of a nonempty list of positive integers.
pub fn gcd_all(values: &[BigInt]) -> Result<BigInt> {
    let (first, rest) = values.split_first().ok_or(Error::EmptyInput)?;
    let mut acc = BigInt::zero();
    for v in std::iter::once(first).chain(rest) {
        if !v.is_positive() {
            return Err(Error::NonPositive(v.clone()));
        }
        acc = acc.gcd(v);
    }
    Ok(acc)
}

/// Exact comparison by cross-multiplication.
pub fn cmp_exact(x: &Rational, y: &Rational) -> Ordering {
    // denominators are positive, so the order is preserved
    (x.numer() * y.denom()).cmp(&(y.numer() * x.denom()))
}

/// Compares `x^d` with `y` exactly. Used wherever a bound involves `y^(1/d)`.
pub fn pow_cmp(x: &Rational, d: u32, y: &Rational) -> Ordering {
    assert!(d >= 1, "pow_cmp exponent must be positive");
    debug_assert!(!x.is_negative() && !y.is_negative());
    let lhs = num_traits::pow(x.numer().clone(), d as usize) * y.denom();
    let rhs = y.numer() * num_traits::pow(x.denom().clone(), d as usize);
    lhs.cmp(&rhs)
}

/// `floor(value^(1/n))` by binary search on integers.
pub fn nth_root_floor(value: &BigInt, n: u32) -> BigInt {
    assert!(n >= 1);
    assert!(!value.is_negative(), "nth_root_floor of a negative number");
    if value.is_zero() || n == 1 {
        return value.clone();
    }
    // 2^(ceil(bits/n)) is an upper bound
    let bits = value.bits();
    let mut hi = BigInt::one() << (bits.div_ceil(n as u64) as usize);
    let mut lo = BigInt::zero();
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1usize;
        if num_traits::pow(mid.clone(), n as usize) <= *value {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if num_traits::pow(hi.clone(), n as usize) <= *value {
        hi
    } else {
        lo
    }
}

pub fn floor(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

pub fn ceil(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

/// Nearest integer, ties to even.
pub fn round_half_even(x: &Rational) -> BigInt {
    let lo = floor(x);
    let frac = x - from_int(&lo);
    match cmp_exact(&frac, &ratio(1, 2)) {
        Ordering::Less => lo,
        Ordering::Greater => lo + 1,
        Ordering::Equal => {
            if lo.is_even() {
                lo
            } else {
                lo + 1
            }
        }
    }
}

/// A point of the lattice `Z^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(Vec<BigInt>);

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(Self(coords))
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| BigInt::from(c)).collect()).expect("nonempty")
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut coords = vec![BigInt::zero(); dim];
        coords[axis] = BigInt::one();
        Self(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self(self.0.iter().map(|c| c * k).collect())
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector(self.0.iter().map(from_int).collect())
    }

    pub fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                actual: self.dim(),
            });
        }
        Ok(())
    }
}

impl Index<usize> for LatticeVector {
    type Output = BigInt;

    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(Self(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self(self.0.iter().map(|c| c * k).collect())
    }

    pub fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                actual: self.dim(),
            });
        }
        Ok(())
    }
}

impl Index<usize> for RationalVector {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_all(&ints(&[2, 3, 5])).unwrap(), int(1));
        assert_eq!(gcd_all(&ints(&[4, 6])).unwrap(), int(2));
        assert_eq!(gcd_all(&ints(&[7])).unwrap(), int(7));
        assert_eq!(gcd_all(&[]), Err(Error::EmptyInput));
        assert!(matches!(
            gcd_all(&ints(&[3, 0])),
            Err(Error::NonPositive(_))
        ));
    }

    #[test]
    fn cmp_examples() {
        assert_eq!(cmp_exact(&ratio(1, 3), &ratio(2, 6)), Ordering::Equal);
        assert_eq!(cmp_exact(&ratio(27, 26), &ratio(1, 1)), Ordering::Greater);
        assert_eq!(cmp_exact(&ratio(2, 27), &ratio(1, 2)), Ordering::Less);
    }

    #[test]
    fn pow_cmp_examples() {
        assert_eq!(pow_cmp(&ratio(1, 2), 2, &ratio(1, 4)), Ordering::Equal);
        assert_eq!(pow_cmp(&ratio(1, 3), 2, &ratio(1, 8)), Ordering::Less);
        // 27 * 4 = 108 < 125
        assert_eq!(pow_cmp(&ratio(3, 5), 3, &ratio(1, 4)), Ordering::Less);
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rational("2/6").unwrap(), ratio(1, 3));
        assert_eq!(parse_rational("-3").unwrap(), ratio(-3, 1));
        assert_eq!(parse_rational(" 5/10 ").unwrap().to_string(), "1/2");
        assert_eq!(parse_rational("4/2").unwrap().to_string(), "2");
        assert_eq!(parse_rational("-1/2").unwrap().to_string(), "-1/2");
        for bad in ["", "1/", "/2", "1/0", "1/-2", "a", "1.5", "1/2/3"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn nth_root_small() {
        for v in 0..2000i64 {
            for n in 1..6u32 {
                let r = nth_root_floor(&int(v), n);
                let r64 = r.to_string().parse::<i64>().unwrap();
                assert!(r64.pow(n) <= v && (r64 + 1).pow(n) > v, "v={v} n={n}");
            }
        }
    }

    #[test]
    fn nth_root_huge() {
        let base = int(10).pow(400u32) + int(7);
        let cube = num_traits::pow(base.clone(), 3);
        assert_eq!(nth_root_floor(&cube, 3), base);
        assert_eq!(nth_root_floor(&(&cube - 1), 3), &base - 1);
    }

    #[test]
    fn rounding() {
        assert_eq!(round_half_even(&ratio(5, 2)), int(2));
        assert_eq!(round_half_even(&ratio(7, 2)), int(4));
        assert_eq!(round_half_even(&ratio(-5, 2)), int(-2));
        assert_eq!(round_half_even(&ratio(27, 26)), int(1));
        assert_eq!(round_half_even(&ratio(14, 3)), int(5));
    }

    #[test]
    fn thousands_of_digits() {
        let big = int(3).pow(5000u32);
        let x = Rational::new(big.clone() + 1, big.clone());
        let y = Rational::new(big.clone() + 2, big.clone() + 1);
        // (b+1)/b > (b+2)/(b+1)
        assert_eq!(cmp_exact(&x, &y), Ordering::Greater);
        assert_eq!(pow_cmp(&x, 3, &(&x * &x * &x)), Ordering::Equal);
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-10_000i64..10_000, 1i64..10_000).prop_map(|(n, d)| ratio(n, d))
    }

    fn nonneg_rational() -> impl Strategy<Value = Rational> {
        (0i64..10_000, 1i64..10_000).prop_map(|(n, d)| ratio(n, d))
    }

    proptest! {
        #[test]
        fn cmp_matches_cross_multiplication(n1 in -10_000i64..10_000, d1 in 1i64..10_000,
                                            n2 in -10_000i64..10_000, d2 in 1i64..10_000) {
            let expected = (n1 * d2).cmp(&(n2 * d1));
            prop_assert_eq!(cmp_exact(&ratio(n1, d1), &ratio(n2, d2)), expected);
        }

        #[test]
        fn cmp_is_real_order(x in rational(), y in rational()) {
            prop_assert_eq!(cmp_exact(&x, &y), x.cmp(&y));
        }

        #[test]
        fn pow_cmp_matches_repeated_multiplication(x in nonneg_rational(), d in 1u32..6,
                                                   y in nonneg_rational()) {
            let mut power = Rational::one();
            for _ in 0..d {
                power = &power * &x;
            }
            prop_assert_eq!(pow_cmp(&x, d, &y), cmp_exact(&power, &y));
        }

        #[test]
        fn display_parse_round_trip(x in rational()) {
            prop_assert_eq!(parse_rational(&x.to_string()).unwrap(), x);
        }
    }
}
