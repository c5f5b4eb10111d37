//! Sparse multivariate polynomials over ℚ(i).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::CRational;
use super::scalar::Scalar;
use super::Context;
use crate::error::{Error, Result};

/// Exponent vector, one entry per context variable.
pub type Monomial = Vec<u16>;

/// A polynomial in the variables of its [`Context`].
///
/// Terms live in a `BTreeMap` keyed by exponent vector, so iteration is in
/// lexicographic order with the first context variable most significant. No
/// zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    ctx: Context,
    terms: BTreeMap<Monomial, CRational>,
}

impl MultiPoly {
    pub fn zero(ctx: &Context) -> Self {
        Self { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Context) -> Self {
        Self::constant(ctx, CRational::one())
    }

    pub fn constant(ctx: &Context, c: CRational) -> Self {
        Self::monomial(ctx, vec![0; ctx.len()], c)
    }

    pub fn int(ctx: &Context, n: i64) -> Self {
        Self::constant(ctx, CRational::from_int(n))
    }

    pub fn monomial(ctx: &Context, exps: Monomial, c: CRational) -> Self {
        assert_eq!(exps.len(), ctx.len(), "exponent vector length");
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            let exps = normalize_monomial(ctx, exps);
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn var_index(ctx: &Context, k: usize) -> Self {
        let mut e = vec![0; ctx.len()];
        e[k] = 1;
        Self::monomial(ctx, e, CRational::one())
    }

    pub fn var(ctx: &Context, name: &str) -> Result<Self> {
        Ok(Self::var_index(ctx, ctx.require(name)?))
    }

    /// Builds from `(coefficient, exponents)` pairs, summing repeated monomials.
    pub fn from_terms<I: IntoIterator<Item = (CRational, Monomial)>>(ctx: &Context, it: I) -> Self {
        let mut p = Self::zero(ctx);
        for (c, e) in it {
            p.add_term(normalize_monomial(ctx, e), &c);
        }
        p
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &CRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u16]) -> CRational {
        self.terms.get(exps).cloned().unwrap_or_else(CRational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn as_constant(&self) -> Option<CRational> {
        if self.is_zero() {
            Some(CRational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> CRational {
        self.coeff(&vec![0; self.ctx.len()])
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Monomial, &CRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&CRational> {
        self.leading_term().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().map(|&x| x as u32).sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, k: usize) -> u16 {
        self.terms.keys().map(|e| e[k]).max().unwrap_or(0)
    }

    /// True when no monomial involves variable `k`.
    pub fn is_free_of(&self, k: usize) -> bool {
        self.degree_in(k) == 0
    }

    fn add_term(&mut self, e: Monomial, c: &CRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.ctx.check_same(&o.ctx)?;
        let (mut big, small) = if self.len() >= o.len() { (self.clone(), o) } else { (o.clone(), self) };
        for (e, c) in &small.terms {
            big.add_term(e.clone(), c);
        }
        Ok(big)
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.ctx.check_same(&o.ctx)?;
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.ctx.check_same(&o.ctx)?;
        let mut out = Self::zero(&self.ctx);
        if self.is_zero() || o.is_zero() {
            return Ok(out);
        }
        let laurent = self.ctx.has_laurent();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let mut e: Monomial = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                if laurent {
                    e = normalize_monomial(&self.ctx, e);
                }
                out.add_term(e, &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        Self {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `k`.
    ///
    /// For a Laurent pair `(x, xinv)` the derivative of `xinv^b` is
    /// `-b·xinv^(b+1)`.
    pub fn derivative(&self, k: usize) -> Self {
        assert!(k < self.ctx.len(), "variable index out of range");
        let partner = self.ctx.inverse_of(k);
        let mut out = Self::zero(&self.ctx);
        for (e, c) in &self.terms {
            if e[k] > 0 {
                let mut e2 = e.clone();
                e2[k] -= 1;
                out.add_term(e2, &c.clone().mul(CRational::from_int(e[k] as i64)));
            } else if let Some(j) = partner {
                if e[j] > 0 {
                    let mut e2 = e.clone();
                    e2[j] += 1;
                    out.add_term(e2, &c.clone().mul(CRational::from_int(-(e[j] as i64))));
                }
            }
        }
        out
    }

    pub fn derivative_by_name(&self, name: &str) -> Result<Self> {
        Ok(self.derivative(self.ctx.require(name)?))
    }

    /// Termwise antiderivative in variable `k` with zero constant of integration.
    pub fn antiderivative(&self, k: usize) -> Self {
        assert!(self.ctx.inverse_of(k).is_none(), "cannot integrate a Laurent variable");
        let mut out = Self::zero(&self.ctx);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[k] += 1;
            let c2 = c.checked_div(&CRational::from_int(e2[k] as i64)).expect("nonzero");
            out.add_term(e2, &c2);
        }
        out
    }

    /// Evaluates at a point given as one scalar per context variable.
    ///
    /// This doubles as substitution: pass polynomials or rational functions of
    /// another context as the point.
    pub fn eval<S: Scalar>(&self, point: &[S]) -> S {
        assert_eq!(point.len(), self.ctx.len(), "point dimension");
        let template = &point.first().cloned().expect("nonempty context for eval");
        let mut powers: Vec<Vec<S>> = point.iter().map(|v| vec![v.one_like()]).collect();
        let mut acc = template.zero_like();
        for (e, c) in &self.terms {
            let mut term = template.constant_like(c);
            for (k, &ek) in e.iter().enumerate() {
                if ek == 0 {
                    continue;
                }
                while powers[k].len() <= ek as usize {
                    let next = powers[k].last().unwrap().times(&point[k]);
                    powers[k].push(next);
                }
                term = term.times(&powers[k][ek as usize]);
            }
            acc = acc.plus(&term);
        }
        acc
    }

    /// Polynomial substitution `x_k ↦ images[k]` into the images' context.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.ctx.len() {
            return Err(Error::DimensionMismatch(format!(
                "substitution has {} images for {} variables",
                images.len(),
                self.ctx.len()
            )));
        }
        if self.ctx.is_empty() {
            return Err(Error::Invalid("cannot substitute into an empty context".into()));
        }
        let target = images[0].context().clone();
        for im in images {
            target.check_same(im.context())?;
        }
        Ok(self.eval(images))
    }

    /// Re-expresses the polynomial in a context containing all of its
    /// variables (matched by name).
    pub fn embed_into(&self, target: &Context) -> Result<MultiPoly> {
        let map: Vec<usize> =
            self.ctx.names().iter().map(|n| target.require(n)).collect::<Result<_>>()?;
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut e2 = vec![0u16; target.len()];
            for (k, &ek) in e.iter().enumerate() {
                e2[map[k]] += ek;
            }
            out.add_term(normalize_monomial(target, e2), c);
        }
        Ok(out)
    }

    /// Exact division: `Some(q)` with `self = q·d`, or `None` when `d` does not
    /// divide `self` (or the lexicographic reduction cannot decide it).
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        if self.ctx != d.ctx {
            return None;
        }
        let (ld, lc) = d.leading_term()?;
        let lc_inv = lc.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.ctx);
        // Each step strictly lowers the leading monomial, so this terminates; the
        // cap only guards against pathological inputs.
        let cap = 1_000_000usize;
        for _ in 0..cap {
            let (lr, cr) = match rem.leading_term() {
                None => return Some(quot),
                Some((e, c)) => (e.clone(), c.clone()),
            };
            if lr.iter().zip(ld).any(|(a, b)| a < b) {
                return None;
            }
            let m: Monomial = lr.iter().zip(ld).map(|(a, b)| a - b).collect();
            let c = &cr * &lc_inv;
            let t = Self::monomial(&self.ctx, m, c);
            let sub = &t * d;
            rem = &rem - &sub;
            quot = &quot + &t;
        }
        None
    }

    /// Divides by the leading coefficient; returns the monic polynomial and the
    /// factor removed. Zero stays zero with factor 1.
    pub fn monic(&self) -> (MultiPoly, CRational) {
        match self.leading_coeff() {
            None => (self.clone(), CRational::one()),
            Some(c) => {
                let inv = c.inv().expect("nonzero leading coefficient");
                (self.scale(&inv), c.clone())
            }
        }
    }
}

fn normalize_monomial(ctx: &Context, mut e: Monomial) -> Monomial {
    if ctx.has_laurent() {
        for k in 0..e.len() {
            if let Some(j) = ctx.inverse_of(k) {
                if k < j {
                    let m = e[k].min(e[j]);
                    e[k] -= m;
                    e[j] -= m;
                }
            }
        }
    }
    e
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        self.checked_add(o).expect("polynomial context mismatch")
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        self.checked_sub(o).expect("polynomial context mismatch")
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        self.checked_mul(o).expect("polynomial context mismatch")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&CRational::from_int(-1))
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: MultiPoly) -> MultiPoly {
        &self + &o
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: MultiPoly) -> MultiPoly {
        &self - &o
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: MultiPoly) -> MultiPoly {
        &self * &o
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

fn needs_parens(c: &CRational) -> bool {
    !c.re().is_zero() && !c.im().is_zero()
}

/// Sorted monomials, highest first: `2*y00p^2*t - (1+i)*y11p + 3`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(k, &x)| {
                    if x == 1 {
                        self.ctx.name(k).to_string()
                    } else {
                        format!("{}^{}", self.ctx.name(k), x)
                    }
                })
                .collect();
            // pull a leading minus out of purely real or purely imaginary coefficients
            let negative = if c.im().is_zero() {
                c.re() < &num_rational::BigRational::zero()
            } else {
                c.re().is_zero() && c.im() < &num_rational::BigRational::zero()
            };
            let mag = if negative { -c } else { c.clone() };
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            let coef = if needs_parens(&mag) { format!("({mag})") } else { mag.to_string() };
            if mono.is_empty() {
                write!(f, "{coef}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{coef}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h() -> Context {
        Context::heisenberg()
    }

    fn v(name: &str) -> MultiPoly {
        MultiPoly::var(&h(), name).unwrap()
    }

    #[test]
    fn power_rule_derivative() {
        let p = &v("y00p").pow(2) * &v("t");
        let d = p.derivative_by_name("y00p").unwrap();
        assert_eq!(d, (&v("y00p") * &v("t")).scale(&CRational::from_int(2)));
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        let c = MultiPoly::int(&h(), 7);
        assert!(c.derivative_by_name("t").unwrap().is_zero());
    }

    #[test]
    fn derivative_of_norm_squared() {
        let n2 = &(&v("y00p") * &v("y11p")) - &(&v("y10p") * &v("y01p"));
        assert_eq!(n2.derivative_by_name("y11p").unwrap(), v("y00p"));
    }

    #[test]
    fn unknown_variable_is_an_error() {
        assert_eq!(v("t").derivative_by_name("q"), Err(Error::UnknownVariable("q".into())));
    }

    #[test]
    fn laurent_normalization() {
        let ctx = Context::heisenberg_zeta();
        let z = MultiPoly::var(&ctx, "zeta").unwrap();
        let zi = MultiPoly::var(&ctx, "zetainv").unwrap();
        assert_eq!(&z * &zi, MultiPoly::one(&ctx));
        let dz = zi.pow(2).derivative_by_name("zeta").unwrap();
        assert_eq!(dz, zi.pow(3).scale(&CRational::from_int(-2)));
    }

    #[test]
    fn exact_division() {
        let a = &v("y00p") + &v("t");
        let b = &v("y11p") - &v("t").scale(&CRational::from_int(3));
        let p = &a * &b;
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!(p.div_exact(&(&v("y00p") - &v("t"))).is_none());
    }

    #[test]
    fn mixing_contexts_is_an_error() {
        let r = MultiPoly::var(&Context::real(), "s").unwrap();
        assert!(matches!(v("t").checked_add(&r), Err(Error::ContextMismatch { .. })));
    }

    #[test]
    fn display_is_sorted() {
        let p = &(&v("t") - &v("y00p").pow(2).scale(&CRational::from_int(2))) + &MultiPoly::int(&h(), 3);
        assert_eq!(p.to_string(), "-2*y00p^2 + t + 3");
        let q = v("y10p").scale(&CRational::complex(1, 1));
        assert_eq!(q.to_string(), "(1+i)*y10p");
    }

    #[test]
    fn embed_into_larger_context() {
        let big = Context::heisenberg_with(&["c1"]);
        let p = v("t").embed_into(&big).unwrap();
        assert_eq!(p, MultiPoly::var(&big, "t").unwrap());
        assert!(MultiPoly::var(&big, "c1").unwrap().embed_into(&h()).is_err());
    }
}
