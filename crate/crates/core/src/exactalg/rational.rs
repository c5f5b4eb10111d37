//! Gaussian rationals: the coefficient field ℚ(i).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact complex rational `re + im·i`. Both parts are kept reduced with a
/// positive denominator (guaranteed by `BigRational`), so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CRational {
    re: BigRational,
    im: BigRational,
}

impl CRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    /// `n/d` as a real rational. Panics on `d == 0`.
    pub fn ratio(n: i64, d: i64) -> Self {
        Self::new(BigRational::new(n.into(), d.into()), BigRational::zero())
    }

    pub fn complex(re: i64, im: i64) -> Self {
        Self::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
    }

    pub fn i() -> Self {
        Self::complex(0, 1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// |z|² as an exact rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Nearest exact value of a float pair (used to lift numeric samples).
    pub fn from_f64_pair(re: f64, im: f64) -> Option<Self> {
        Some(Self::new(BigRational::from_float(re)?, BigRational::from_float(im)?))
    }

    pub(crate) fn from_bigints(n: BigInt, d: BigInt) -> Self {
        Self::new(BigRational::new(n, d), BigRational::zero())
    }
}

impl Zero for CRational {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for CRational {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl From<i64> for CRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a CRational> for &'a CRational {
    type Output = CRational;
    fn add(self, o: &CRational) -> CRational {
        CRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a CRational> for &'a CRational {
    type Output = CRational;
    fn sub(self, o: &CRational) -> CRational {
        CRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a CRational> for &'a CRational {
    type Output = CRational;
    fn mul(self, o: &CRational) -> CRational {
        if self.im.is_zero() && o.im.is_zero() {
            return CRational::new(&self.re * &o.re, BigRational::zero());
        }
        CRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Add for CRational {
    type Output = CRational;
    fn add(self, o: CRational) -> CRational {
        &self + &o
    }
}

impl Sub for CRational {
    type Output = CRational;
    fn sub(self, o: CRational) -> CRational {
        &self - &o
    }
}

impl Mul for CRational {
    type Output = CRational;
    fn mul(self, o: CRational) -> CRational {
        &self * &o
    }
}

impl AddAssign<&CRational> for CRational {
    fn add_assign(&mut self, o: &CRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl Neg for CRational {
    type Output = CRational;
    fn neg(self) -> CRational {
        CRational::new(-self.re, -self.im)
    }
}

impl Neg for &CRational {
    type Output = CRational;
    fn neg(self) -> CRational {
        CRational::new(-self.re.clone(), -self.im.clone())
    }
}

fn write_ratio(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text: `a/b`, `c/d*i`, `a/b+c/d*i`, `a/b-c/d*i`; a unit imaginary
/// part is written as a bare `i`.
impl fmt::Display for CRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re_zero = self.re.is_zero();
        if self.im.is_zero() {
            return write_ratio(f, &self.re);
        }
        if !re_zero {
            write_ratio(f, &self.re)?;
            if self.im.is_positive() {
                write!(f, "+")?;
            }
        }
        if self.im.is_negative() {
            write!(f, "-")?;
        }
        let mag = self.im.abs();
        if mag.is_one() {
            write!(f, "i")
        } else {
            write_ratio(f, &mag)?;
            write!(f, "*i")
        }
    }
}

impl fmt::Debug for CRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for CRational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let ctx = super::Context::new::<&str>(&[]);
        let rf = super::parse::parse_rational_function(s, &ctx)?;
        rf.as_constant()
            .ok_or_else(|| Error::Parse { pos: 0, msg: format!("`{s}` is not a constant") })
    }
}

impl Serialize for CRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        assert_eq!(CRational::ratio(3, 6).to_string(), "1/2");
        assert_eq!(CRational::complex(0, 1).to_string(), "i");
        assert_eq!(CRational::complex(0, -2).to_string(), "-2*i");
        assert_eq!(CRational::complex(1, -1).to_string(), "1-i");
        let z = CRational::new(BigRational::new(1.into(), 2.into()), BigRational::new(3.into(), 4.into()));
        assert_eq!(z.to_string(), "1/2+3/4*i");
    }

    #[test]
    fn parse_roundtrip_examples() {
        for s in ["0", "-7", "1/2+3/4*i", "-i", "5/3-2*i", "2*i"] {
            let z: CRational = s.parse().unwrap();
            assert_eq!(z.to_string(), s);
        }
    }

    #[test]
    fn inverse_and_division() {
        let z = CRational::complex(1, 1);
        let w = z.inv().unwrap();
        assert_eq!(&z * &w, CRational::one());
        assert_eq!(CRational::zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(w, CRational::new(BigRational::new(1.into(), 2.into()), BigRational::new((-1).into(), 2.into())));
    }

    #[test]
    fn i_squared() {
        assert_eq!(&CRational::i() * &CRational::i(), CRational::from_int(-1));
    }
}
