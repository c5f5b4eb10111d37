//! Rational functions with a factored denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use super::poly::MultiPoly;
use super::rational::CRational;
use super::scalar::Scalar;
use super::Context;
use crate::error::{Error, Result};

/// `num / ∏ fᵢ^eᵢ` where every `fᵢ` is a monic, nonconstant polynomial.
///
/// The denominator is never expanded during arithmetic: products merge factor
/// lists and sums use the least common multiple of the lists. After each
/// operation the numerator is trial-divided by each factor. Equality is
/// decided by cross-multiplication, so no multivariate gcd is needed.
#[derive(Clone)]
pub struct RationalFunction {
    num: MultiPoly,
    factors: Vec<(MultiPoly, u32)>,
}

impl RationalFunction {
    pub fn zero(ctx: &Context) -> Self {
        Self::from_poly(MultiPoly::zero(ctx))
    }

    pub fn one(ctx: &Context) -> Self {
        Self::from_poly(MultiPoly::one(ctx))
    }

    pub fn constant(ctx: &Context, c: CRational) -> Self {
        Self::from_poly(MultiPoly::constant(ctx, c))
    }

    pub fn int(ctx: &Context, n: i64) -> Self {
        Self::constant(ctx, CRational::from_int(n))
    }

    pub fn var(ctx: &Context, name: &str) -> Result<Self> {
        Ok(Self::from_poly(MultiPoly::var(ctx, name)?))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        Self { num: p, factors: Vec::new() }
    }

    /// `num / den`; fails when `den` is the zero polynomial.
    pub fn from_parts(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        num.context().check_same(den.context())?;
        let mut out = Self::from_poly(num);
        out.divide_by_poly(den, 1)?;
        out.cancel();
        Ok(out)
    }

    pub fn context(&self) -> &Context {
        self.num.context()
    }

    /// The numerator as stored (after cancellation against the factor list).
    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    /// The expanded denominator.
    pub fn den(&self) -> MultiPoly {
        expand(self.context(), &self.factors)
    }

    /// Denominator factors with multiplicities.
    pub fn den_factors(&self) -> &[(MultiPoly, u32)] {
        &self.factors
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn as_poly(&self) -> Option<&MultiPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<CRational> {
        self.as_poly().and_then(MultiPoly::as_constant)
    }

    /// Appends `den^e` to the denominator. Units (nonzero constants and, in a
    /// Laurent context, monomials in the Laurent symbols) are moved into the
    /// numerator instead.
    fn divide_by_poly(&mut self, den: MultiPoly, e: u32) -> Result<()> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(unit_inv) = laurent_unit_inverse(&den) {
            self.num = &self.num * &unit_inv.pow(e);
            return Ok(());
        }
        let (m, lc) = den.monic();
        let scale = lc.inv()?.pow(e);
        self.num = self.num.scale(&scale);
        push_factor(&mut self.factors, m, e);
        Ok(())
    }

    /// Trial-divides the numerator by each denominator factor.
    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.factors.clear();
            return;
        }
        for (f, e) in self.factors.iter_mut() {
            while *e > 0 && could_divide(&self.num, f) {
                match self.num.div_exact(f) {
                    Some(q) => {
                        self.num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        self.factors.retain(|(_, e)| *e > 0);
    }

    /// Numerators of `self` and `o` brought over the lcm of both factor lists.
    fn common_numerators(&self, o: &Self) -> Result<(MultiPoly, MultiPoly, Vec<(MultiPoly, u32)>)> {
        self.context().check_same(o.context())?;
        if self.factors == o.factors {
            return Ok((self.num.clone(), o.num.clone(), self.factors.clone()));
        }
        let mut lcm = self.factors.clone();
        for (f, e) in &o.factors {
            match lcm.iter_mut().find(|(g, _)| g == f) {
                Some((_, le)) => *le = (*le).max(*e),
                None => lcm.push((f.clone(), *e)),
            }
        }
        let cof = |fs: &[(MultiPoly, u32)]| -> Vec<(MultiPoly, u32)> {
            lcm.iter()
                .map(|(f, le)| {
                    let have = fs.iter().find(|(g, _)| g == f).map_or(0, |(_, e)| *e);
                    (f.clone(), le - have)
                })
                .filter(|(_, e)| *e > 0)
                .collect()
        };
        let a = &self.num * &expand(self.context(), &cof(&self.factors));
        let b = &o.num * &expand(self.context(), &cof(&o.factors));
        Ok((a, b, lcm))
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        let (a, b, factors) = self.common_numerators(o)?;
        let mut out = Self { num: &a + &b, factors };
        out.cancel();
        Ok(out)
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        let (a, b, factors) = self.common_numerators(o)?;
        let mut out = Self { num: &a - &b, factors };
        out.cancel();
        Ok(out)
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.context().check_same(o.context())?;
        let mut factors = self.factors.clone();
        for (f, e) in &o.factors {
            push_factor(&mut factors, f.clone(), *e);
        }
        let mut out = Self { num: &self.num * &o.num, factors };
        out.cancel();
        Ok(out)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut out = Self::from_poly(self.den());
        out.divide_by_poly(self.num.clone(), 1)?;
        out.cancel();
        Ok(out)
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        self.checked_mul(&o.inv()?)
    }

    pub fn scale(&self, c: &CRational) -> Self {
        let mut out = Self { num: self.num.scale(c), factors: self.factors.clone() };
        if out.num.is_zero() {
            out.factors.clear();
        }
        out
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, n: i32) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let k = n.unsigned_abs();
        let mut out = Self {
            num: base.num.pow(k),
            factors: base.factors.iter().map(|(f, e)| (f.clone(), e * k)).collect(),
        };
        if k == 0 {
            out.factors.clear();
        }
        Ok(out)
    }

    /// Partial derivative in variable `k` by the quotient rule on the factor list.
    pub fn derivative(&self, k: usize) -> Self {
        let ctx = self.context();
        let dep: Vec<usize> = (0..self.factors.len())
            .filter(|&i| depends_on(&self.factors[i].0, k))
            .collect();
        let prod_dep = |skip: Option<usize>| -> MultiPoly {
            dep.iter()
                .filter(|&&i| Some(i) != skip)
                .fold(MultiPoly::one(ctx), |acc, &i| &acc * &self.factors[i].0)
        };
        let mut num = &self.num.derivative(k) * &prod_dep(None);
        for &i in &dep {
            let (f, e) = &self.factors[i];
            let term = &(&self.num * &f.derivative(k)) * &prod_dep(Some(i));
            num = &num - &term.scale(&CRational::from_int(*e as i64));
        }
        let mut factors = self.factors.clone();
        for &i in &dep {
            factors[i].1 += 1;
        }
        let mut out = Self { num, factors };
        out.cancel();
        out
    }

    pub fn derivative_by_name(&self, name: &str) -> Result<Self> {
        Ok(self.derivative(self.context().require(name)?))
    }

    /// Evaluates with one scalar per context variable.
    pub fn eval<S: Scalar>(&self, point: &[S]) -> Result<S> {
        let n = self.num.eval(point);
        let mut d = n.one_like();
        for (f, e) in &self.factors {
            let v = f.eval(point);
            for _ in 0..*e {
                d = d.times(&v);
            }
        }
        if d.is_zero_scalar() {
            return Err(Error::DivisionByZero);
        }
        n.divided(&d)
    }

    /// Substitutes rational functions of another context for each variable.
    pub fn substitute(&self, images: &[RationalFunction]) -> Result<RationalFunction> {
        if images.len() != self.context().len() {
            return Err(Error::DimensionMismatch(format!(
                "substitution has {} images for {} variables",
                images.len(),
                self.context().len()
            )));
        }
        if let Some(first) = images.first() {
            for im in images {
                first.context().check_same(im.context())?;
            }
        }
        self.eval(images)
    }

    /// Substitutes polynomials; cheaper than [`Self::substitute`] because the
    /// factor list is mapped factor by factor.
    pub fn substitute_poly(&self, images: &[MultiPoly]) -> Result<RationalFunction> {
        let mut out = Self::from_poly(self.num.substitute(images)?);
        for (f, e) in &self.factors {
            out.divide_by_poly(f.substitute(images)?, *e)?;
        }
        out.cancel();
        Ok(out)
    }

    pub fn embed_into(&self, target: &Context) -> Result<RationalFunction> {
        let mut out = Self::from_poly(self.num.embed_into(target)?);
        for (f, e) in &self.factors {
            out.divide_by_poly(f.embed_into(target)?, *e)?;
        }
        out.cancel();
        Ok(out)
    }

    /// Exact equality by cross-multiplication.
    pub fn rf_equal(&self, o: &Self) -> bool {
        match self.common_numerators(o) {
            Ok((a, b, _)) => a == b,
            Err(_) => false,
        }
    }
}

fn expand(ctx: &Context, factors: &[(MultiPoly, u32)]) -> MultiPoly {
    factors.iter().fold(MultiPoly::one(ctx), |acc, (f, e)| &acc * &f.pow(*e))
}

fn push_factor(factors: &mut Vec<(MultiPoly, u32)>, f: MultiPoly, e: u32) {
    if e == 0 {
        return;
    }
    match factors.iter_mut().find(|(g, _)| *g == f) {
        Some((_, ge)) => *ge += e,
        None => factors.push((f, e)),
    }
}

fn depends_on(p: &MultiPoly, k: usize) -> bool {
    let partner = p.context().inverse_of(k);
    !p.is_free_of(k) || partner.is_some_and(|j| !p.is_free_of(j))
}

/// Cheap necessary condition for `f | p`: degrees in each variable.
fn could_divide(p: &MultiPoly, f: &MultiPoly) -> bool {
    (0..p.context().len()).all(|k| p.degree_in(k) >= f.degree_in(k))
}

/// Inverse of `c·x^a·xinv^b` when every variable in the monomial belongs to a
/// Laurent pair.
fn laurent_unit_inverse(p: &MultiPoly) -> Option<MultiPoly> {
    if p.len() != 1 {
        return None;
    }
    let ctx = p.context();
    let (e, c) = p.terms().next()?;
    let mut inv = vec![0u16; e.len()];
    for (k, &ek) in e.iter().enumerate() {
        if ek == 0 {
            continue;
        }
        let j = ctx.inverse_of(k)?;
        inv[j] += ek;
    }
    Some(MultiPoly::monomial(ctx, inv, c.inv().ok()?))
}

impl PartialEq for RationalFunction {
    fn eq(&self, o: &Self) -> bool {
        self.rf_equal(o)
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, o: &RationalFunction) -> RationalFunction {
        self.checked_add(o).expect("rational function context mismatch")
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, o: &RationalFunction) -> RationalFunction {
        self.checked_sub(o).expect("rational function context mismatch")
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, o: &RationalFunction) -> RationalFunction {
        self.checked_mul(o).expect("rational function context mismatch")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        self.scale(&CRational::from_int(-1))
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, o: Self) -> Self {
        &self + &o
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, o: Self) -> Self {
        &self - &o
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, o: Self) -> Self {
        &self * &o
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> Self {
        -&self
    }
}

impl From<MultiPoly> for RationalFunction {
    fn from(p: MultiPoly) -> Self {
        Self::from_poly(p)
    }
}

/// `num` for polynomials, otherwise `(num)/(f1)^e1*(f2)`.
impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/(", self.num)?;
        for (idx, (g, e)) in self.factors.iter().enumerate() {
            if idx > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "({g})")?;
            } else {
                write!(f, "({g})^{e}")?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_rational_function as p;

    fn h() -> Context {
        Context::heisenberg()
    }

    #[test]
    fn inverse_times_self() {
        let t = RationalFunction::var(&h(), "t").unwrap();
        assert_eq!(&t.inv().unwrap() * &t, RationalFunction::one(&h()));
        assert!(RationalFunction::zero(&h()).inv().is_err());
    }

    #[test]
    fn difference_of_squares() {
        let a = p("(y00p*y11p - y10p*y01p - t)*(y00p*y11p - y10p*y01p + t)", &h()).unwrap();
        let b = p("(y00p*y11p - y10p*y01p)^2 - t^2", &h()).unwrap();
        assert!((&a - &b).is_zero());
    }

    #[test]
    fn cross_multiplication_equality() {
        let a = p("1/(y00p*y11p - y10p*y01p - t)", &h()).unwrap();
        let b = p("(y00p*y11p - y10p*y01p + t)/((y00p*y11p - y10p*y01p)^2 - t^2)", &h()).unwrap();
        assert_eq!(a, b);
        assert_eq!(p("2*y00p/2", &h()).unwrap(), p("y00p", &h()).unwrap());
        assert_ne!(p("t", &h()).unwrap(), p("-t", &h()).unwrap());
    }

    #[test]
    fn quotient_rule() {
        let f = p("1/(y00p^2 + t)", &h()).unwrap();
        let d = f.derivative_by_name("y00p").unwrap();
        assert_eq!(d, p("-2*y00p/(y00p^2 + t)^2", &h()).unwrap());
    }

    #[test]
    fn laurent_units_move_to_numerator() {
        let ctx = Context::heisenberg_zeta();
        let r = p("t/zeta", &ctx).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r, p("t*zetainv", &ctx).unwrap());
    }

    #[test]
    fn display_reparses() {
        let r = p("(y00p - i*t)/((y11p + 1)^2*(t - 1/2))", &h()).unwrap();
        let back = p(&r.to_string(), &h()).unwrap();
        assert_eq!(r, back);
        assert_eq!(r.to_string(), back.to_string());
    }
}
