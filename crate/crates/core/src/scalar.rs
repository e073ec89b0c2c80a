//! Exact arithmetic over the Gaussian rationals `ℚ(i)`.
//!
//! Each part is a reduced fraction held in machine words while numerator
//! and denominator fit in `i64`, promoted to [`BigRational`] otherwise.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;
use crate::field::Field;

/// Reduced fraction, denominator positive. `Small` is used whenever both
/// parts fit in `i64`, so derived equality and hashing agree with value
/// equality.
#[derive(Clone, PartialEq, Eq, Hash)]
enum Rat {
    Small(i64, i64),
    Big(BigRational),
}

impl Rat {
    const ZERO: Rat = Rat::Small(0, 1);
    const ONE: Rat = Rat::Small(1, 1);

    fn from_i128(n: i128, d: i128) -> Rat {
        debug_assert!(d != 0);
        let g = n.gcd(&d);
        let (mut n, mut d) = (n / g, d / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rat::Small(n, d),
            _ => Rat::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn from_big(r: BigRational) -> Rat {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rat::Small(n, d),
            _ => Rat::Big(r),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(r) => r.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(0, _))
    }

    fn is_one(&self) -> bool {
        matches!(self, Rat::Small(1, 1))
    }

    fn is_integer(&self) -> bool {
        match self {
            Rat::Small(_, d) => *d == 1,
            Rat::Big(r) => r.is_integer(),
        }
    }

    fn is_positive(&self) -> bool {
        match self {
            Rat::Small(n, _) => *n > 0,
            Rat::Big(r) => r.is_positive(),
        }
    }

    fn add(&self, rhs: &Rat) -> Rat {
        match (self, rhs) {
            (Rat::Small(0, _), x) | (x, Rat::Small(0, _)) => x.clone(),
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Rat::from_i128(a + c, b)
                } else {
                    Rat::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Rat::from_big(self.to_big() + rhs.to_big()),
        }
    }

    fn neg(&self) -> Rat {
        match self {
            Rat::Small(n, d) if *n != i64::MIN => Rat::Small(-n, *d),
            _ => Rat::from_big(-self.to_big()),
        }
    }

    fn sub(&self, rhs: &Rat) -> Rat {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Rat) -> Rat {
        match (self, rhs) {
            (Rat::Small(0, _), _) | (_, Rat::Small(0, _)) => Rat::ZERO,
            (Rat::Small(1, 1), x) | (x, Rat::Small(1, 1)) => x.clone(),
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                Rat::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rat::from_big(self.to_big() * rhs.to_big()),
        }
    }

    /// Panics on zero.
    fn recip(&self) -> Rat {
        match self {
            Rat::Small(n, d) => Rat::from_i128(*d as i128, *n as i128),
            Rat::Big(r) => Rat::from_big(r.recip()),
        }
    }

    fn div(&self, rhs: &Rat) -> Rat {
        self.mul(&rhs.recip())
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(n, 1) => write!(f, "{n}"),
            Rat::Small(n, d) => write!(f, "{n}/{d}"),
            Rat::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Rat::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

/// A Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    re: Rat,
    im: Rat,
}

impl Default for GaussianRational {
    fn default() -> Self {
        GaussianRational {
            re: Rat::ZERO,
            im: Rat::ZERO,
        }
    }
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational {
            re: Rat::from_big(re),
            im: Rat::from_big(im),
        }
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational {
            re: Rat::from_big(re),
            im: Rat::ZERO,
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational {
            re: Rat::ZERO,
            im: Rat::ONE,
        }
    }

    pub fn re(&self) -> BigRational {
        self.re.to_big()
    }

    pub fn im(&self) -> BigRational {
        self.im.to_big()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    /// `re² + im²`.
    pub fn norm(&self) -> BigRational {
        self.norm_rat().to_big()
    }

    fn norm_rat(&self) -> Rat {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_real() && rhs.is_real() {
            return GaussianRational {
                re: self.re.mul(&rhs.re),
                im: Rat::ZERO,
            };
        }
        GaussianRational {
            re: self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            im: self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        }
    }
}

fn write_imaginary(f: &mut fmt::Formatter<'_>, r: &Rat) -> fmt::Result {
    if r.is_one() {
        write!(f, "i")
    } else if r.neg().is_one() {
        write!(f, "-i")
    } else {
        write!(f, "{r}i")
    }
}

impl fmt::Display for GaussianRational {
    /// Canonical form: `3/2`, `-1/2+2/3i`, `i`, `1-i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write_imaginary(f, &self.im);
        }
        write!(f, "{}", self.re)?;
        if self.im.is_positive() {
            write!(f, "+")?;
        }
        write_imaginary(f, &self.im)
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussianRational {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::parse::parse_scalar(s)
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational {
            re: Rat::Small(n, 1),
            im: Rat::ZERO,
        }
    }
}

impl From<BigRational> for GaussianRational {
    fn from(r: BigRational) -> Self {
        GaussianRational::real(r)
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::default()
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational {
            re: Rat::ONE,
            im: Rat::ZERO,
        }
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        -&self
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $trait<&GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                let ($a, $b) = (self, rhs);
                $body
            }
        }
        impl $trait<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                $trait::$method(&self, rhs)
            }
        }
        impl $trait<GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                $trait::$method(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| GaussianRational {
    re: a.re.add(&b.re),
    im: a.im.add(&b.im),
});
forward_binop!(Sub, sub, |a, b| GaussianRational {
    re: a.re.sub(&b.re),
    im: a.im.sub(&b.im),
});
forward_binop!(Mul, mul, |a, b| a.mul_ref(b));
forward_binop!(Div, div, |a, b| {
    let inv = b.inverse().expect("division by zero Gaussian rational");
    a.mul_ref(&inv)
});

impl Field for GaussianRational {
    fn from_i64(n: i64) -> Self {
        n.into()
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        GaussianRational {
            re: Rat::from_i128(num as i128, den as i128),
            im: Rat::ZERO,
        }
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_real() {
            return Some(GaussianRational {
                re: self.re.recip(),
                im: Rat::ZERO,
            });
        }
        let n = self.norm_rat();
        Some(GaussianRational {
            re: self.re.div(&n),
            im: self.im.div(&n).neg(),
        })
    }

    fn to_integer(&self) -> Option<BigInt> {
        (self.is_real() && self.re.is_integer()).then(|| self.re.to_big().numer().clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::ScalarError;

    fn s(text: &str) -> GaussianRational {
        text.parse().unwrap()
    }

    #[test]
    fn product_of_conjugates() {
        assert_eq!(s("1/2+i") * s("1/2-i"), s("5/4"));
    }

    #[test]
    fn additive_identity_and_division_by_zero() {
        let x = s("-1/2+2/3i");
        assert_eq!(x.clone() + GaussianRational::zero(), x);
        assert_eq!(
            GaussianRational::one().checked_div(&GaussianRational::zero()),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn powers() {
        assert_eq!(s("2").pow_int(-2).unwrap(), s("1/4"));
        assert_eq!(GaussianRational::i().pow_int(4).unwrap(), s("1"));
        assert_eq!(GaussianRational::i().pow_int(-1).unwrap(), s("-i"));
        assert_eq!(
            GaussianRational::zero().pow_int(-1),
            Err(ScalarError::NonInvertible)
        );
    }

    #[test]
    fn canonical_rendering() {
        assert_eq!(s("3/2").to_string(), "3/2");
        assert_eq!(s("-1/2+2/3i").to_string(), "-1/2+2/3i");
        assert_eq!(s("6/4").to_string(), "3/2");
        assert_eq!(s("0+1i").to_string(), "i");
        assert_eq!(s("1-1i").to_string(), "1-i");
        assert_eq!(s("-2/3i").to_string(), "-2/3i");
    }

    #[test]
    fn integrality() {
        assert_eq!(s("3").as_positive_int(), Some(3));
        assert_eq!(s("3+i").to_integer(), None);
        assert_eq!(s("-2").as_positive_int(), None);
    }

    #[test]
    fn promotion_past_machine_words() {
        let big = GaussianRational::from(i64::MAX);
        let sq = big.clone() * big.clone();
        assert_eq!(sq.to_string(), "85070591730234615847396907784232501249");
        assert_eq!(sq.checked_div(&big).unwrap(), big);
        assert_eq!((sq.clone() - sq).to_string(), "0");
        let min = GaussianRational::from(i64::MIN);
        assert_eq!((-min.clone()).to_string(), "9223372036854775808");
        assert_eq!(-(-min.clone()), min);
        let tiny =
            GaussianRational::from_ratio(1, i64::MAX) * GaussianRational::from_ratio(1, i64::MAX);
        assert_eq!(
            tiny.inverse().unwrap(),
            GaussianRational::from(i64::MAX) * GaussianRational::from(i64::MAX)
        );
    }

    #[test]
    fn canonical_after_demotion() {
        let a = GaussianRational::from(i64::MAX) + GaussianRational::from(1);
        let b = a - GaussianRational::from(1);
        assert_eq!(b, GaussianRational::from(i64::MAX));
        let h = |x: &GaussianRational| {
            use std::hash::{Hash, Hasher};
            let mut s = std::collections::hash_map::DefaultHasher::new();
            x.hash(&mut s);
            s.finish()
        };
        assert_eq!(h(&b), h(&GaussianRational::from(i64::MAX)));
    }
}
