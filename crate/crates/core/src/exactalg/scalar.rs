use std::fmt::Debug;

use num_complex::Complex64;
use num_traits::Zero;

use super::poly::MultiPoly;
use super::rational::CRational;
use super::ratfunc::RationalFunction;
use crate::error::{Error, Result};

/// Field-like scalars that geometric code can be generic over: exact
/// constants, floating complex numbers, and rational functions.
///
/// Constructors take `&self` so that context-carrying scalars can produce
/// values in the same context.
pub trait Scalar: Clone + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn constant_like(&self, c: &CRational) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn recip(&self) -> Result<Self>;
    fn is_zero_scalar(&self) -> bool;

    fn int_like(&self, n: i64) -> Self {
        self.constant_like(&CRational::from_int(n))
    }

    fn ratio_like(&self, n: i64, d: i64) -> Self {
        self.constant_like(&CRational::ratio(n, d))
    }

    fn i_like(&self) -> Self {
        self.constant_like(&CRational::i())
    }

    fn scaled(&self, c: &CRational) -> Self {
        self.times(&self.constant_like(c))
    }

    fn divided(&self, o: &Self) -> Result<Self> {
        Ok(self.times(&o.recip()?))
    }
}

impl Scalar for CRational {
    fn zero_like(&self) -> Self {
        CRational::zero()
    }
    fn one_like(&self) -> Self {
        CRational::from_int(1)
    }
    fn constant_like(&self, c: &CRational) -> Self {
        c.clone()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn recip(&self) -> Result<Self> {
        self.inv()
    }
    fn is_zero_scalar(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for Complex64 {
    fn zero_like(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one_like(&self) -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn constant_like(&self, c: &CRational) -> Self {
        c.to_complex64()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn recip(&self) -> Result<Self> {
        if self.norm_sqr() == 0.0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.inv())
        }
    }
    fn is_zero_scalar(&self) -> bool {
        self.norm_sqr() == 0.0
    }
}

impl Scalar for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.context())
    }
    fn one_like(&self) -> Self {
        MultiPoly::one(self.context())
    }
    fn constant_like(&self, c: &CRational) -> Self {
        MultiPoly::constant(self.context(), c.clone())
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn recip(&self) -> Result<Self> {
        match self.as_constant() {
            Some(c) => Ok(MultiPoly::constant(self.context(), c.inv()?)),
            None => Err(Error::NotPolynomial(format!("1/({self})"))),
        }
    }
    fn is_zero_scalar(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for RationalFunction {
    fn zero_like(&self) -> Self {
        RationalFunction::zero(self.context())
    }
    fn one_like(&self) -> Self {
        RationalFunction::one(self.context())
    }
    fn constant_like(&self, c: &CRational) -> Self {
        RationalFunction::constant(self.context(), c.clone())
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn recip(&self) -> Result<Self> {
        self.inv()
    }
    fn is_zero_scalar(&self) -> bool {
        self.is_zero()
    }
}
