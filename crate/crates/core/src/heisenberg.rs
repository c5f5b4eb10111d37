//! The complex Heisenberg group ℂ⁵ with coordinates `(y00', y10', y01', y11', t)`.
//!
//! Group law `(y, t)·(y', t') = (y + y', t + t' + B(y, y'))` with
//! `B(y, y') = y00'y11'' − y01'y10'' + y10'y01'' − y11'y00''`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{CRational, Context, MultiPoly, RationalFunction, Scalar, HEISENBERG_VARS};

/// The five left-invariant fields, in canonical coordinate order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldId {
    V00,
    V10,
    V01,
    V11,
    T,
}

impl FieldId {
    pub const ALL: [FieldId; 5] = [FieldId::V00, FieldId::V10, FieldId::V01, FieldId::V11, FieldId::T];
    pub const HORIZONTAL: [FieldId; 4] = [FieldId::V00, FieldId::V10, FieldId::V01, FieldId::V11];

    pub fn index(self) -> usize {
        self as usize
    }

    /// `V_{AA'}` from spinor indices `A, A' ∈ {0, 1}`.
    pub fn v(a: usize, a_prime: usize) -> FieldId {
        match (a, a_prime) {
            (0, 0) => FieldId::V00,
            (1, 0) => FieldId::V10,
            (0, 1) => FieldId::V01,
            (1, 1) => FieldId::V11,
            _ => panic!("spinor indices are 0 or 1"),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FieldId::V00 => "V00'",
            FieldId::V10 => "V10'",
            FieldId::V01 => "V01'",
            FieldId::V11 => "V11'",
            FieldId::T => "T",
        }
    }
}

impl fmt::Display for FieldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FieldId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.replace('\'', "p").as_str() {
            "V00p" | "V00" => Ok(FieldId::V00),
            "V10p" | "V10" => Ok(FieldId::V10),
            "V01p" | "V01" => Ok(FieldId::V01),
            "V11p" | "V11" => Ok(FieldId::V11),
            "T" => Ok(FieldId::T),
            _ => Err(Error::Invalid(format!("unknown field `{s}`"))),
        }
    }
}

/// `c` in `[a, b] = c·T`.
pub fn bracket_table(a: FieldId, b: FieldId) -> i64 {
    use FieldId::*;
    match (a, b) {
        (V00, V11) | (V10, V01) => 2,
        (V11, V00) | (V01, V10) => -2,
        _ => 0,
    }
}

/// A point of the group over any scalar type.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupPoint<S> {
    pub y00p: S,
    pub y10p: S,
    pub y01p: S,
    pub y11p: S,
    pub t: S,
}

impl<S: Scalar> GroupPoint<S> {
    pub fn from_array([y00p, y10p, y01p, y11p, t]: [S; 5]) -> Self {
        Self { y00p, y10p, y01p, y11p, t }
    }

    pub fn to_array(&self) -> [S; 5] {
        [self.y00p.clone(), self.y10p.clone(), self.y01p.clone(), self.y11p.clone(), self.t.clone()]
    }

    pub fn origin_like(template: &S) -> Self {
        let z = template.zero_like();
        Self::from_array([z.clone(), z.clone(), z.clone(), z.clone(), z])
    }

    pub fn is_origin(&self) -> bool {
        self.to_array().iter().all(Scalar::is_zero_scalar)
    }
}

impl GroupPoint<CRational> {
    pub fn origin() -> Self {
        Self::origin_like(&CRational::from_int(0))
    }

    pub fn from_ints(v: [i64; 5]) -> Self {
        Self::from_array(v.map(CRational::from_int))
    }
}

/// `B(y, y')`, the cocycle of the group law.
pub fn pairing_b<S: Scalar>(a: &GroupPoint<S>, b: &GroupPoint<S>) -> S {
    a.y00p
        .times(&b.y11p)
        .minus(&a.y01p.times(&b.y10p))
        .plus(&a.y10p.times(&b.y01p))
        .minus(&a.y11p.times(&b.y00p))
}

pub fn group_mul<S: Scalar>(a: &GroupPoint<S>, b: &GroupPoint<S>) -> GroupPoint<S> {
    GroupPoint {
        y00p: a.y00p.plus(&b.y00p),
        y10p: a.y10p.plus(&b.y10p),
        y01p: a.y01p.plus(&b.y01p),
        y11p: a.y11p.plus(&b.y11p),
        t: a.t.plus(&b.t).plus(&pairing_b(a, b)),
    }
}

/// `(−y, −t)`; valid because `B(y, y) = 0`.
pub fn group_inverse<S: Scalar>(a: &GroupPoint<S>) -> GroupPoint<S> {
    GroupPoint::from_array(a.to_array().map(|v| v.negated()))
}

/// `δ_r(y, t) = (r·y, r²·t)`.
pub fn dilation<S: Scalar>(a: &GroupPoint<S>, r: &S) -> GroupPoint<S> {
    GroupPoint {
        y00p: a.y00p.times(r),
        y10p: a.y10p.times(r),
        y01p: a.y01p.times(r),
        y11p: a.y11p.times(r),
        t: a.t.times(r).times(r),
    }
}

/// Scalars that support partial derivatives and coordinate substitution.
pub trait Differentiable: Scalar {
    fn ctx(&self) -> &Context;
    fn partial(&self, k: usize) -> Self;
    fn variable(&self, k: usize) -> Self;
    fn substitute_polys(&self, images: &[MultiPoly]) -> Result<Self>;
}

impl Differentiable for MultiPoly {
    fn ctx(&self) -> &Context {
        self.context()
    }
    fn partial(&self, k: usize) -> Self {
        self.derivative(k)
    }
    fn variable(&self, k: usize) -> Self {
        MultiPoly::var_index(self.context(), k)
    }
    fn substitute_polys(&self, images: &[MultiPoly]) -> Result<Self> {
        self.substitute(images)
    }
}

impl Differentiable for RationalFunction {
    fn ctx(&self) -> &Context {
        self.context()
    }
    fn partial(&self, k: usize) -> Self {
        self.derivative(k)
    }
    fn variable(&self, k: usize) -> Self {
        RationalFunction::from_poly(MultiPoly::var_index(self.context(), k))
    }
    fn substitute_polys(&self, images: &[MultiPoly]) -> Result<Self> {
        self.substitute_poly(images)
    }
}

/// Context positions of `(y00p, y10p, y01p, y11p, t)`.
pub fn coordinate_indices(ctx: &Context) -> Result<[usize; 5]> {
    let mut out = [0; 5];
    for (slot, name) in out.iter_mut().zip(HEISENBERG_VARS) {
        *slot = ctx.require(name)?;
    }
    Ok(out)
}

/// Applies a left-invariant field:
/// `V00' = ∂00' − y11'·∂t`, `V10' = ∂10' − y01'·∂t`,
/// `V01' = ∂01' + y10'·∂t`, `V11' = ∂11' + y00'·∂t`, `T = ∂t`.
pub fn apply_field<F: Differentiable>(id: FieldId, f: &F) -> Result<F> {
    let [i00, i10, i01, i11, it] = coordinate_indices(f.ctx())?;
    let dt = || f.partial(it);
    Ok(match id {
        FieldId::V00 => f.partial(i00).minus(&f.variable(i11).times(&dt())),
        FieldId::V10 => f.partial(i10).minus(&f.variable(i01).times(&dt())),
        FieldId::V01 => f.partial(i01).plus(&f.variable(i10).times(&dt())),
        FieldId::V11 => f.partial(i11).plus(&f.variable(i00).times(&dt())),
        FieldId::T => dt(),
    })
}

/// `[a, b]f = a(b f) − b(a f)`, computed by composition.
pub fn apply_commutator<F: Differentiable>(a: FieldId, b: FieldId, f: &F) -> Result<F> {
    Ok(apply_field(a, &apply_field(b, f)?)?.minus(&apply_field(b, &apply_field(a, f)?)?))
}

/// `Δ_b = V00'V11' − V10'V01'`.
pub fn sub_laplacian<F: Differentiable>(f: &F) -> Result<F> {
    let a = apply_field(FieldId::V00, &apply_field(FieldId::V11, f)?)?;
    let b = apply_field(FieldId::V10, &apply_field(FieldId::V01, f)?)?;
    Ok(a.minus(&b))
}

/// A one-form `Σ c_{AA'} θ^{AA'}` in the horizontal coframe, coefficients in
/// field order `θ^{00'}, θ^{10'}, θ^{01'}, θ^{11'}`.
#[derive(Clone, Debug, PartialEq)]
pub struct HorizontalOneForm<F = RationalFunction> {
    pub coeffs: [F; 4],
}

impl<F: Scalar> HorizontalOneForm<F> {
    pub fn coeff(&self, id: FieldId) -> &F {
        &self.coeffs[id.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero_scalar)
    }

    pub fn zero_like(template: &F) -> Self {
        let z = template.zero_like();
        Self { coeffs: [z.clone(), z.clone(), z.clone(), z] }
    }
}

/// `d0 f = V00'f·θ^{00'} + V10'f·θ^{10'}`.
pub fn d0<F: Differentiable>(f: &F) -> Result<HorizontalOneForm<F>> {
    let z = f.zero_like();
    Ok(HorizontalOneForm {
        coeffs: [apply_field(FieldId::V00, f)?, apply_field(FieldId::V10, f)?, z.clone(), z],
    })
}

/// `d1 f = V01'f·θ^{01'} + V11'f·θ^{11'}`.
pub fn d1<F: Differentiable>(f: &F) -> Result<HorizontalOneForm<F>> {
    let z = f.zero_like();
    Ok(HorizontalOneForm {
        coeffs: [z.clone(), z, apply_field(FieldId::V01, f)?, apply_field(FieldId::V11, f)?],
    })
}

/// Coefficient of `θ^{00'}∧θ^{10'}` in `d0 ω`, using the `θ^{A0'}` part of `ω`.
pub fn d0_form<F: Differentiable>(w: &HorizontalOneForm<F>) -> Result<F> {
    Ok(apply_field(FieldId::V00, w.coeff(FieldId::V10))?.minus(&apply_field(FieldId::V10, w.coeff(FieldId::V00))?))
}

/// Coefficient of `θ^{01'}∧θ^{11'}` in `d1 ω`, using the `θ^{A1'}` part of `ω`.
pub fn d1_form<F: Differentiable>(w: &HorizontalOneForm<F>) -> Result<F> {
    Ok(apply_field(FieldId::V01, w.coeff(FieldId::V11))?.minus(&apply_field(FieldId::V11, w.coeff(FieldId::V01))?))
}

/// Coordinate images of `L_g: p ↦ g·p` in `ctx`; variables other than the
/// five coordinates map to themselves.
pub fn left_translation(g: &GroupPoint<CRational>, ctx: &Context) -> Result<Vec<MultiPoly>> {
    let idx = coordinate_indices(ctx)?;
    let mut images: Vec<MultiPoly> = (0..ctx.len()).map(|k| MultiPoly::var_index(ctx, k)).collect();
    let c = |v: &CRational| MultiPoly::constant(ctx, v.clone());
    let p = GroupPoint::from_array(idx.map(|k| MultiPoly::var_index(ctx, k)));
    let gp = GroupPoint::from_array(g.to_array().map(|v| c(&v)));
    let prod = group_mul(&gp, &p).to_array();
    for (k, img) in idx.iter().zip(prod) {
        images[*k] = img;
    }
    Ok(images)
}

/// `f ∘ L_g`.
pub fn pullback_left<F: Differentiable>(f: &F, g: &GroupPoint<CRational>) -> Result<F> {
    f.substitute_polys(&left_translation(g, f.ctx())?)
}

/// The general quadratic in the coordinates with fifteen symbolic
/// coefficients `c1..c15`, in the context `heisenberg_with(c1..c15)`.
pub fn generic_quadratic() -> MultiPoly {
    let names: Vec<String> = (1..=15).map(|k| format!("c{k}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let ctx = Context::heisenberg_with(&refs);
    let mut q = MultiPoly::zero(&ctx);
    let mut k = 5;
    for i in 0..5 {
        for j in i..5 {
            let m = &MultiPoly::var_index(&ctx, i) * &MultiPoly::var_index(&ctx, j);
            q = &q + &(&MultiPoly::var_index(&ctx, k) * &m);
            k += 1;
        }
    }
    q
}

/// `‖y‖² = y00'y11' − y10'y01'` in `ctx`.
pub fn norm_sq(ctx: &Context) -> Result<MultiPoly> {
    let [a, b, c, d, _] = coordinate_indices(ctx)?;
    let v = |k| MultiPoly::var_index(ctx, k);
    Ok(&(&v(a) * &v(d)) - &(&v(b) * &v(c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_rational_function;

    fn rf(s: &str) -> RationalFunction {
        parse_rational_function(s, &Context::heisenberg()).unwrap()
    }

    #[test]
    fn group_law_examples() {
        let e00 = GroupPoint::from_ints([1, 0, 0, 0, 0]);
        let e11 = GroupPoint::from_ints([0, 0, 0, 1, 0]);
        assert_eq!(group_mul(&e00, &e11), GroupPoint::from_ints([1, 0, 0, 1, 1]));
        assert_eq!(group_mul(&e11, &e00), GroupPoint::from_ints([1, 0, 0, 1, -1]));
        let x = GroupPoint::from_ints([3, -1, 2, 5, 7]);
        assert_eq!(group_mul(&GroupPoint::origin(), &x), x);
        assert!(group_mul(&group_inverse(&x), &x).is_origin());
    }

    #[test]
    fn dilation_examples() {
        let x = GroupPoint::from_ints([1, 0, 0, 0, 1]);
        assert_eq!(dilation(&x, &CRational::from_int(2)), GroupPoint::from_ints([2, 0, 0, 0, 4]));
        assert_eq!(dilation(&x, &CRational::from_int(1)), x);
    }

    #[test]
    fn field_examples() {
        assert_eq!(apply_field(FieldId::V00, &rf("y00p")).unwrap(), rf("1"));
        assert_eq!(apply_field(FieldId::V00, &rf("t")).unwrap(), rf("-y11p"));
        let n4 = rf("(y00p*y11p - y10p*y01p)^2 - t^2");
        assert_eq!(
            apply_field(FieldId::V11, &n4).unwrap(),
            rf("2*y00p*(y00p*y11p - y10p*y01p - t)")
        );
    }

    #[test]
    fn sub_laplacian_examples() {
        assert!(sub_laplacian(&rf("1/((y00p*y11p - y10p*y01p)^2 - t^2)")).unwrap().is_zero());
        assert!(sub_laplacian(&rf("t")).unwrap().is_zero());
        assert_eq!(sub_laplacian(&rf("y00p*y11p")).unwrap(), rf("1"));
    }

    #[test]
    fn d_examples() {
        let w = d0(&rf("y10p")).unwrap();
        assert_eq!(w.coeffs, [rf("0"), rf("1"), rf("0"), rf("0")]);
        let w = d1(&rf("t")).unwrap();
        assert_eq!(w.coeffs, [rf("0"), rf("0"), rf("y10p"), rf("y00p")]);
        assert!(d0(&rf("5")).unwrap().is_zero());
    }

    #[test]
    fn group_json_keys() {
        let x = GroupPoint { y00p: CRational::ratio(1, 2), ..GroupPoint::from_ints([0, 0, 0, 0, 0]) };
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"y00p":"1/2","y10p":"0","y01p":"0","y11p":"0","t":"0"}"#);
        let back: GroupPoint<CRational> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }
}
