use std::collections::BTreeMap;
use std::fmt;

use super::poly::MultiPoly;
use super::ratfunc::RationalFunction;
use super::Context;
use crate::error::{Error, Result};

/// A finite Laurent polynomial `Σ c_k ζ^k` with rational-function coefficients.
#[derive(Clone, PartialEq)]
pub struct ZetaLaurent {
    ctx: Context,
    coeffs: BTreeMap<i32, RationalFunction>,
}

impl ZetaLaurent {
    pub fn zero(ctx: &Context) -> Self {
        Self { ctx: ctx.clone(), coeffs: BTreeMap::new() }
    }

    pub fn from_coeffs<I: IntoIterator<Item = (i32, RationalFunction)>>(ctx: &Context, it: I) -> Result<Self> {
        let mut out = Self::zero(ctx);
        for (k, c) in it {
            ctx.check_same(c.context())?;
            let sum = match out.coeffs.remove(&k) {
                Some(prev) => &prev + &c,
                None => c,
            };
            if !sum.is_zero() {
                out.coeffs.insert(k, sum);
            }
        }
        Ok(out)
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i32) -> RationalFunction {
        self.coeffs.get(&k).cloned().unwrap_or_else(|| RationalFunction::zero(&self.ctx))
    }

    pub fn support(&self) -> impl Iterator<Item = i32> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &RationalFunction)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.ctx.check_same(&o.ctx)?;
        Self::from_coeffs(&self.ctx, self.coeffs.clone().into_iter().chain(o.coeffs.clone()))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.ctx.check_same(&o.ctx)?;
        let mut prods = Vec::new();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &o.coeffs {
                prods.push((a + b, ca * cb));
            }
        }
        Self::from_coeffs(&self.ctx, prods)
    }

    /// Splits into the parts supported on `k ≤ −1`, `k = 0`, `k ≥ 1`.
    pub fn split(&self) -> (ZetaLaurent, RationalFunction, ZetaLaurent) {
        let pick = |f: &dyn Fn(i32) -> bool| Self {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().filter(|(k, _)| f(**k)).map(|(k, v)| (*k, v.clone())).collect(),
        };
        (pick(&|k| k < 0), self.coeff(0), pick(&|k| k > 0))
    }

    /// Realizes the series as a rational function in a context that contains
    /// the coefficient variables and the Laurent pair `(zeta, zetainv)`.
    pub fn to_symbolic(&self, target: &Context) -> Result<RationalFunction> {
        let z = target.require("zeta")?;
        let zi = target.require("zetainv")?;
        if target.inverse_of(z) != Some(zi) {
            return Err(Error::Invalid("target context lacks the (zeta, zetainv) pair".into()));
        }
        let mut acc = RationalFunction::zero(target);
        for (k, c) in &self.coeffs {
            let mono = if *k >= 0 {
                MultiPoly::var_index(target, z).pow(*k as u32)
            } else {
                MultiPoly::var_index(target, zi).pow(k.unsigned_abs())
            };
            acc = &acc + &(&c.embed_into(target)? * &RationalFunction::from_poly(mono));
        }
        Ok(acc)
    }
}

/// Free-function form of [`ZetaLaurent::split`].
pub fn zeta_split(l: &ZetaLaurent) -> (ZetaLaurent, RationalFunction, ZetaLaurent) {
    l.split()
}

impl fmt::Display for ZetaLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(k, v)| format!("({v})*zeta^{k}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for ZetaLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_rational_function as p;

    #[test]
    fn split_by_sign() {
        let ctx = Context::heisenberg();
        let l = ZetaLaurent::from_coeffs(
            &ctx,
            [(-1, p("y00p", &ctx).unwrap()), (0, p("t", &ctx).unwrap()), (2, p("y11p", &ctx).unwrap())],
        )
        .unwrap();
        let (n, z, pos) = zeta_split(&l);
        assert_eq!(n.support().collect::<Vec<_>>(), vec![-1]);
        assert_eq!(z, p("t", &ctx).unwrap());
        assert_eq!(pos.support().collect::<Vec<_>>(), vec![2]);
        assert_eq!(n.add(&ZetaLaurent::from_coeffs(&ctx, [(0, z)]).unwrap()).unwrap().add(&pos).unwrap(), l);
    }

    #[test]
    fn zero_splits_to_zeros() {
        let ctx = Context::heisenberg();
        let (n, z, pos) = ZetaLaurent::zero(&ctx).split();
        assert!(n.is_zero() && z.is_zero() && pos.is_zero());
    }

    #[test]
    fn symbolic_realization() {
        let ctx = Context::heisenberg();
        let big = Context::heisenberg_zeta();
        let l = ZetaLaurent::from_coeffs(&ctx, [(-1, p("t", &ctx).unwrap()), (1, p("1", &ctx).unwrap())]).unwrap();
        assert_eq!(l.to_symbolic(&big).unwrap(), p("t*zetainv + zeta", &big).unwrap());
    }
}
