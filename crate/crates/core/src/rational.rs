//! Exact rational numbers backed by arbitrary-precision integers.
//!
//! Values are always kept in canonical form (reduced, positive denominator).
//! The textual form is `p/q`, or just `p` when the denominator is one; the
//! same string is used for JSON and CSV output.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// `numer / denom`; panics when `denom == 0`.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Rational(BigRational::new(numer, denom))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// `max(self, 0)`.
    pub fn positive_part(&self) -> Self {
        if self.0.is_negative() {
            Rational::zero()
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Integer power; `0^0 = 1`.
    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Rational::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn in_unit_interval(&self) -> bool {
        !self.is_negative() && *self <= Rational::one()
    }

    /// Range check used wherever a value must be an exponent or fraction.
    pub fn check_unit_interval(&self) -> Result<()> {
        if self.in_unit_interval() {
            Ok(())
        } else {
            Err(Error::Range {
                value: self.to_string(),
                range: "[0, 1]".into(),
            })
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<usize> for Rational {
    fn from(n: usize) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
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

fn parse_int(token: &str, whole: &str) -> Result<BigInt> {
    let t = token.trim();
    let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse {
            token: whole.to_string(),
        });
    }
    BigInt::from_str(t.strip_prefix('+').unwrap_or(t)).map_err(|_| Error::Parse {
        token: whole.to_string(),
    })
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p`, `p/q` and terminating decimals such as `-0.125`.
    /// Decimals are converted with a power-of-ten denominator, never via `f64`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::Parse {
            token: s.to_string(),
        };
        if t.is_empty() {
            return Err(bad());
        }
        if let Some((p, q)) = t.split_once('/') {
            let numer = parse_int(p, s)?;
            let denom = parse_int(q, s)?;
            if denom.is_zero() {
                return Err(bad());
            }
            return Ok(Rational(BigRational::new(numer, denom)));
        }
        if let Some((int_part, frac_part)) = t.split_once('.') {
            let negative = int_part.trim_start().starts_with('-');
            let int_digits = int_part.trim().trim_start_matches(['+', '-']);
            if frac_part.is_empty() && int_digits.is_empty() {
                return Err(bad());
            }
            if !frac_part.bytes().all(|b| b.is_ascii_digit())
                || !int_digits.bytes().all(|b| b.is_ascii_digit())
                || (int_part.trim().len() - int_digits.len()) > 1
            {
                return Err(bad());
            }
            let joined = format!("{int_digits}{frac_part}");
            let joined = if joined.is_empty() { "0".to_string() } else { joined };
            let mut numer = BigInt::from_str(&joined).map_err(|_| bad())?;
            if negative {
                numer = -numer;
            }
            let denom = num_traits::pow(BigInt::from(10u32), frac_part.len());
            return Ok(Rational(BigRational::new(numer, denom)));
        }
        Ok(Rational(BigRational::from_integer(parse_int(t, s)?)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
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

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

/// Shorthand for `Rational::new`.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_form() {
        let r = ratio(6, -4);
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(ratio(4, 2).to_string(), "2");
        assert_eq!(ratio(0, 7).to_string(), "0");
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!("1/3".parse::<Rational>().unwrap(), ratio(1, 3));
        assert_eq!("0.5".parse::<Rational>().unwrap(), ratio(1, 2));
        assert_eq!("0.25".parse::<Rational>().unwrap(), ratio(1, 4));
        assert_eq!("-1.125".parse::<Rational>().unwrap(), ratio(-9, 8));
        assert_eq!(".5".parse::<Rational>().unwrap(), ratio(1, 2));
        assert_eq!("3.".parse::<Rational>().unwrap(), ratio(3, 1));
        assert_eq!(" 7 ".parse::<Rational>().unwrap(), ratio(7, 1));
        // 0.1 is not representable in binary floating point
        assert_eq!("0.1".parse::<Rational>().unwrap(), ratio(1, 10));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "a", "1/0", "1/2/3", "1e3", "--1", "1.2.3", ".", "/3", "0x10"] {
            let err = bad.parse::<Rational>().unwrap_err();
            assert!(matches!(err, Error::Parse { .. }), "{bad}: {err:?}");
        }
    }

    #[test]
    fn zero_to_the_zero_is_one() {
        assert_eq!(Rational::zero().pow(0), Rational::one());
        assert_eq!(ratio(1, 2).pow(3), ratio(1, 8));
    }

    #[test]
    fn positive_part() {
        assert_eq!(ratio(-1, 2).positive_part(), Rational::zero());
        assert_eq!(ratio(1, 2).positive_part(), ratio(1, 2));
    }

    #[test]
    fn serde_uses_strings() {
        let json = serde_json::to_string(&vec![ratio(1, 3), ratio(2, 1)]).unwrap();
        assert_eq!(json, r#"["1/3","2"]"#);
        let back: Vec<Rational> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, vec![ratio(1, 3), ratio(2, 1)]);
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(p in -10_000i64..10_000, q in 1i64..10_000) {
            let r = ratio(p, q);
            prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
        }
    }
}
