use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::Rational;

/// An element `re + im·i` of the Gaussian rationals ℚ(i).
///
/// Ordering is lexicographic on `(re, im)`; it carries no algebraic meaning
/// and exists so witnesses and canonical listings sort reproducibly.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::real(Rational::one())
    }

    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn real(re: Rational) -> Self {
        Self::new(re, Rational::zero())
    }

    /// Integer components, the common case in tests and demos.
    pub fn int(re: i64, im: i64) -> Self {
        Self::new(Rational::from_integer(re), Rational::from_integer(im))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    /// |z|², always rational.
    pub fn norm_sqr(&self) -> Rational {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return self.re.recip().map(Self::real);
        }
        let n = self.norm_sqr().recip()?;
        Some(Self::new(&self.re * &n, -&(&self.im * &n)))
    }

    /// `self - a*b` without intermediate clones of `self`.
    pub fn sub_mul(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let p = a * b;
        *self -= &p;
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &'a GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::real(&self.re * &rhs.re);
        }
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        GaussianRational::new(re, im)
    }
}

// Division is multiplication by the inverse.
#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &'a GaussianRational) -> GaussianRational {
        let inv = rhs.inverse().expect("division by zero");
        self * &inv
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        if rhs.is_zero() {
            return;
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        if rhs.is_zero() {
            return;
        }
        *self = &*self - rhs;
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::int(n, 0)
    }
}

/// Serialized form `a/b+c/d*i` (or `a/b-c/d*i`); both components always carry a denominator.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_negative() {
            write!(f, "{}-{}*i", self.re, self.im.abs())
        } else {
            write!(f, "{}+{}*i", self.re, self.im)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid Gaussian rational `{0}`")]
pub struct ParseGaussianError(pub String);

impl FromStr for GaussianRational {
    type Err = ParseGaussianError;

    /// Accepts the canonical `a/b+c/d*i` form plus the usual shorthands:
    /// `3`, `-1/2`, `i`, `-i`, `2i`, `1+i`, `1/2-3*i`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseGaussianError(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        let Some(body) = t.strip_suffix('i') else {
            let re: Rational = t.parse().map_err(|_| err())?;
            return Ok(Self::real(re));
        };
        // Split between the real part and the signed imaginary coefficient.
        let split =
            body.char_indices().filter(|&(k, c)| k > 0 && (c == '+' || c == '-')).map(|(k, _)| k).next_back().map(
                |k| {
                    let prev = body.as_bytes()[k - 1];
                    if k > 1 && (prev == b'+' || prev == b'-') {
                        k - 1
                    } else {
                        k
                    }
                },
            );
        let (re_part, im_part) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let re = if re_part.is_empty() { Rational::zero() } else { re_part.parse().map_err(|_| err())? };
        let coeff = im_part.strip_suffix('*').unwrap_or(im_part);
        let coeff = coeff.strip_prefix('+').unwrap_or(coeff);
        let im = match coeff {
            "" => Rational::one(),
            "-" => -Rational::one(),
            c => c.parse().map_err(|_| err())?,
        };
        Ok(Self::new(re, im))
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn parses_shorthands() {
        assert_eq!(g("i"), GaussianRational::i());
        assert_eq!(g("-i"), -GaussianRational::i());
        assert_eq!(g("1+i"), GaussianRational::int(1, 1));
        assert_eq!(g("1-i"), GaussianRational::int(1, -1));
        assert_eq!(g("2i"), GaussianRational::int(0, 2));
        assert_eq!(g("-3"), GaussianRational::int(-3, 0));
        assert_eq!(g("1/2-3/4*i"), GaussianRational::new(Rational::new(1, 2), Rational::new(-3, 4)));
        assert_eq!(g("-1/2+-3/4*i").im, Rational::new(-3, 4));
        assert!("1+".parse::<GaussianRational>().is_err());
        assert!("x".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(GaussianRational::int(1, 0).to_string(), "1/1+0/1*i");
        assert_eq!(GaussianRational::int(0, -1).to_string(), "0/1-1/1*i");
        let z = GaussianRational::new(Rational::new(-5, 3), Rational::new(7, 2));
        assert_eq!(g(&z.to_string()), z);
    }

    #[test]
    fn inverse_and_conjugate() {
        let z = GaussianRational::int(1, 1);
        let inv = z.inverse().unwrap();
        assert_eq!(&z * &inv, GaussianRational::one());
        assert_eq!(inv, GaussianRational::new(Rational::new(1, 2), Rational::new(-1, 2)));
        assert_eq!(z.conj().conj(), z);
        assert!(GaussianRational::zero().inverse().is_none());
        assert_eq!(&GaussianRational::i() * &GaussianRational::i(), GaussianRational::int(-1, 0));
    }
}
