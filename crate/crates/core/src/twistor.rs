//! Twistor charts for the complex Heisenberg group.
//!
//! A point `(y, t)` and a spinor ratio `ζ` determine an α-plane, labelled by
//! `η(y, t, ζ) ∈ W`; the second chart `W̃` uses `ζ̃ = 1/ζ`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{CRational, Context, MultiPoly, RationalFunction, Scalar};
use crate::heisenberg::{apply_field, coordinate_indices, generic_quadratic, Differentiable, FieldId, GroupPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Chart {
    #[serde(rename = "W")]
    W,
    #[serde(rename = "Wtilde")]
    WTilde,
}

/// `(w0, w1, w2, ζ)` in the chart named by `chart`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwistorPoint<S> {
    pub chart: Chart,
    pub w0: S,
    pub w1: S,
    pub w2: S,
    pub zeta: S,
}

impl<S: Scalar> TwistorPoint<S> {
    pub fn new(chart: Chart, [w0, w1, w2, zeta]: [S; 4]) -> Self {
        Self { chart, w0, w1, w2, zeta }
    }

    pub fn to_array(&self) -> [S; 4] {
        [self.w0.clone(), self.w1.clone(), self.w2.clone(), self.zeta.clone()]
    }

    /// Componentwise exact (or floating) equality, ignoring nothing.
    pub fn same_as(&self, o: &Self) -> bool {
        self.chart == o.chart && self.to_array().iter().zip(o.to_array()).all(|(a, b)| a.minus(&b).is_zero_scalar())
    }
}

/// `η(y, t, ζ) = (y00' + ζy01', y10' + ζy11', t − (y00'y11' + y10'y01' + 2ζy01'y11'), ζ)`.
pub fn eta<S: Scalar>(x: &GroupPoint<S>, zeta: &S) -> TwistorPoint<S> {
    let pairing = x
        .y00p
        .times(&x.y11p)
        .plus(&x.y10p.times(&x.y01p))
        .plus(&zeta.int_like(2).times(zeta).times(&x.y01p).times(&x.y11p));
    TwistorPoint::new(
        Chart::W,
        [
            x.y00p.plus(&zeta.times(&x.y01p)),
            x.y10p.plus(&zeta.times(&x.y11p)),
            x.t.minus(&pairing),
            zeta.clone(),
        ],
    )
}

/// `η̃(y, t, ζ̃) = (ζ̃y00' + y01', ζ̃y10' + y11', t + 2ζ̃y00'y10' + y01'y10' + y00'y11', ζ̃)`.
pub fn eta_tilde<S: Scalar>(x: &GroupPoint<S>, zt: &S) -> TwistorPoint<S> {
    let w2 = x
        .t
        .plus(&zt.int_like(2).times(zt).times(&x.y00p).times(&x.y10p))
        .plus(&x.y01p.times(&x.y10p))
        .plus(&x.y00p.times(&x.y11p));
    TwistorPoint::new(
        Chart::WTilde,
        [zt.times(&x.y00p).plus(&x.y01p), zt.times(&x.y10p).plus(&x.y11p), w2, zt.clone()],
    )
}

/// Which quadratic term the `W → W̃` map uses in its third component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransitionVariant {
    /// `w2 + 2ζ⁻¹·w0·w1`, consistent with the charts.
    Derived,
    /// `w2 + 2ζ⁻¹·w1·w2`, a misprinted form kept for negative tests.
    Printed,
}

/// `(w0, w1, w2, ζ) ↦ (w0/ζ, w1/ζ, w2 + 2w0w1/ζ, 1/ζ)`.
pub fn chart_transition<S: Scalar>(p: &TwistorPoint<S>) -> Result<TwistorPoint<S>> {
    chart_transition_variant(p, TransitionVariant::Derived)
}

pub fn chart_transition_variant<S: Scalar>(p: &TwistorPoint<S>, variant: TransitionVariant) -> Result<TwistorPoint<S>> {
    if p.chart != Chart::W {
        return Err(Error::Invalid("chart_transition expects a point of W".into()));
    }
    let zi = p.zeta.recip().map_err(|_| Error::ZetaZero)?;
    let quad = match variant {
        TransitionVariant::Derived => p.w0.times(&p.w1),
        TransitionVariant::Printed => p.w1.times(&p.w2),
    };
    Ok(TwistorPoint::new(
        Chart::WTilde,
        [p.w0.times(&zi), p.w1.times(&zi), p.w2.plus(&zi.int_like(2).times(&zi).times(&quad)), zi],
    ))
}

/// `W̃ → W`: `(w̃0/ζ̃, w̃1/ζ̃, w̃2 − 2w̃0w̃1/ζ̃, 1/ζ̃)`.
pub fn chart_transition_inverse<S: Scalar>(p: &TwistorPoint<S>) -> Result<TwistorPoint<S>> {
    if p.chart != Chart::WTilde {
        return Err(Error::Invalid("inverse transition expects a point of W~".into()));
    }
    let zi = p.zeta.recip().map_err(|_| Error::ZetaZero)?;
    Ok(TwistorPoint::new(
        Chart::W,
        [
            p.w0.times(&zi),
            p.w1.times(&zi),
            p.w2.minus(&zi.int_like(2).times(&zi).times(&p.w0).times(&p.w1)),
            zi,
        ],
    ))
}

/// The α-plane of `p ∈ W` at parameters `(s0, s1)`:
/// `y01' = s0`, `y11' = s1`, `y00' = w0 − ζs0`, `y10' = w1 − ζs1`,
/// `t = w2 + s1w0 + s0w1`.
pub fn alpha_plane_point<S: Scalar>(p: &TwistorPoint<S>, s0: &S, s1: &S) -> GroupPoint<S> {
    GroupPoint {
        y00p: p.w0.minus(&p.zeta.times(s0)),
        y10p: p.w1.minus(&p.zeta.times(s1)),
        y01p: s0.clone(),
        y11p: s1.clone(),
        t: p.w2.plus(&s1.times(&p.w0)).plus(&s0.times(&p.w1)),
    }
}

/// The α-plane of `p ∈ W̃`: `y00' = s0`, `y10' = s1`,
/// `y01' = w̃0 − ζ̃s0`, `y11' = w̃1 − ζ̃s1`, `t = w̃2 − (w̃0s1 + s0w̃1)`.
pub fn alpha_plane_point_tilde<S: Scalar>(p: &TwistorPoint<S>, s0: &S, s1: &S) -> GroupPoint<S> {
    GroupPoint {
        y00p: s0.clone(),
        y10p: s1.clone(),
        y01p: p.w0.minus(&p.zeta.times(s0)),
        y11p: p.w1.minus(&p.zeta.times(s1)),
        t: p.w2.minus(&p.w0.times(s1).plus(&s0.times(&p.w1))),
    }
}

/// The `W̃` parametrization written with the `W` formula verbatim; it does not
/// land on the plane of `p` and exists only for negative tests.
pub fn alpha_plane_point_tilde_printed<S: Scalar>(p: &TwistorPoint<S>, s0: &S, s1: &S) -> GroupPoint<S> {
    alpha_plane_point(&TwistorPoint { chart: Chart::W, ..p.clone() }, s0, s1)
}

/// A named boolean sub-check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubCheck {
    pub label: String,
    pub pass: bool,
}

pub fn all_pass(checks: &[SubCheck]) -> bool {
    checks.iter().all(|c| c.pass)
}

fn symbolic_point(ctx: &Context) -> Result<GroupPoint<RationalFunction>> {
    let idx = coordinate_indices(ctx)?;
    Ok(GroupPoint::from_array(idx.map(|k| RationalFunction::from_poly(MultiPoly::var_index(ctx, k)))))
}

/// `V_A^ζ = ζV_{A0'} − V_{A1'}`.
pub fn v_zeta<F: Differentiable>(a: usize, zeta: &F, f: &F) -> Result<F> {
    Ok(zeta.times(&apply_field(FieldId::v(a, 0), f)?).minus(&apply_field(FieldId::v(a, 1), f)?))
}

/// `Ṽ_A^ζ̃ = V_{A0'} − ζ̃V_{A1'}`.
pub fn v_zeta_tilde<F: Differentiable>(a: usize, zt: &F, f: &F) -> Result<F> {
    Ok(apply_field(FieldId::v(a, 0), f)?.minus(&zt.times(&apply_field(FieldId::v(a, 1), f)?)))
}

/// `V_A^ζ` annihilates every component of `η` and `Ṽ_A^ζ̃` every component of
/// `η̃`, with ζ a free symbol.
pub fn tangency_certificate() -> Result<Vec<SubCheck>> {
    let ctx = Context::heisenberg_with(&["zeta"]);
    let x = symbolic_point(&ctx)?;
    let z = RationalFunction::var(&ctx, "zeta")?;
    let e = eta(&x, &z).to_array();
    let et = eta_tilde(&x, &z).to_array();
    let mut out = Vec::new();
    for a in 0..2 {
        for j in 0..3 {
            out.push(SubCheck { label: format!("V_{a}^zeta(eta_{j}) = 0"), pass: v_zeta(a, &z, &e[j])?.is_zero() });
        }
    }
    for a in 0..2 {
        for j in 0..3 {
            out.push(SubCheck {
                label: format!("V~_{a}^zeta~(eta~_{j}) = 0"),
                pass: v_zeta_tilde(a, &z, &et[j])?.is_zero(),
            });
        }
    }
    Ok(out)
}

/// `[V_0^ζ, V_1^ζ] = 0` on the 15-coefficient generic quadratic with ζ symbolic.
pub fn abelian_check() -> Result<bool> {
    let q = generic_quadratic();
    let mut names: Vec<String> = q.context().names().to_vec();
    names.push("zeta".into());
    let ctx = Context::new(&names);
    let q = RationalFunction::from_poly(q.embed_into(&ctx)?);
    let z = RationalFunction::var(&ctx, "zeta")?;
    let a = v_zeta(0, &z, &v_zeta(1, &z, &q)?)?;
    let b = v_zeta(1, &z, &v_zeta(0, &z, &q)?)?;
    Ok((&a - &b).is_zero())
}

/// `Φ(η(y, t, ζ)) = η̃(y, t, 1/ζ)` componentwise, over `(y, t, ζ, ζ⁻¹)`.
pub fn diagram_check(variant: TransitionVariant) -> Result<Vec<SubCheck>> {
    let ctx = Context::heisenberg_zeta();
    let x = symbolic_point(&ctx)?;
    let z = RationalFunction::var(&ctx, "zeta")?;
    let zi = RationalFunction::var(&ctx, "zetainv")?;
    let lhs = chart_transition_variant(&eta(&x, &z), variant)?.to_array();
    let rhs = eta_tilde(&x, &zi).to_array();
    Ok((0..4)
        .map(|j| SubCheck { label: format!("component {j}"), pass: lhs[j] == rhs[j] })
        .collect())
}

/// Context `(w0, w1, w2, zeta, zetainv, s0, s1)` for symbolic plane checks.
fn plane_context() -> Context {
    Context::with_laurent(&["w0", "w1", "w2", "zeta", "zetainv", "s0", "s1"], &[("zeta", "zetainv")])
}

fn symbolic_twistor(ctx: &Context, chart: Chart) -> Result<(TwistorPoint<RationalFunction>, RationalFunction, RationalFunction)> {
    let v = |n: &str| RationalFunction::var(ctx, n);
    Ok((TwistorPoint::new(chart, [v("w0")?, v("w1")?, v("w2")?, v("zeta")?]), v("s0")?, v("s1")?))
}

/// `η(alpha_plane_point(p, s), ζ) = p` with `(w, ζ, s)` symbolic.
pub fn alpha_roundtrip_symbolic() -> Result<bool> {
    let ctx = plane_context();
    let (p, s0, s1) = symbolic_twistor(&ctx, Chart::W)?;
    let x = alpha_plane_point(&p, &s0, &s1);
    Ok(eta(&x, &p.zeta).same_as(&p))
}

/// `η̃(alpha_plane_point_tilde(p̃, s), ζ̃) = p̃` with everything symbolic.
pub fn alpha_tilde_roundtrip_symbolic() -> Result<bool> {
    let ctx = plane_context();
    let (p, s0, s1) = symbolic_twistor(&ctx, Chart::WTilde)?;
    Ok(eta_tilde(&alpha_plane_point_tilde(&p, &s0, &s1), &p.zeta).same_as(&p))
}

/// The misprinted `W̃` plane fails the same roundtrip.
pub fn alpha_tilde_printed_roundtrip_symbolic() -> Result<bool> {
    let ctx = plane_context();
    let (p, s0, s1) = symbolic_twistor(&ctx, Chart::WTilde)?;
    Ok(eta_tilde(&alpha_plane_point_tilde_printed(&p, &s0, &s1), &p.zeta).same_as(&p))
}

/// Each point of the `W̃` plane of `Φ(p)` lies on the `W` plane of `p`:
/// `η(x, ζ) = p`.
pub fn planes_agree_across_charts() -> Result<bool> {
    let ctx = plane_context();
    let (p, s0, s1) = symbolic_twistor(&ctx, Chart::W)?;
    let pt = chart_transition(&p)?;
    let x = alpha_plane_point_tilde(&pt, &s0, &s1);
    Ok(eta(&x, &p.zeta).same_as(&p))
}

/// Random complex twistor points: maximum error of transition followed by its
/// inverse, and of `η ∘ alpha_plane_point`.
#[derive(Clone, Debug, Serialize)]
pub struct RoundtripStats {
    pub samples: usize,
    pub max_transition_error: f64,
    pub max_plane_error: f64,
}

pub fn numeric_roundtrip(samples: usize, seed: u64) -> Result<RoundtripStats> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = || Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    let (mut et, mut ep) = (0.0f64, 0.0f64);
    for _ in 0..samples {
        let mut zeta = c();
        while zeta.norm() < 0.1 {
            zeta = c();
        }
        let p = TwistorPoint::new(Chart::W, [c(), c(), c(), zeta]);
        let back = chart_transition_inverse(&chart_transition(&p)?)?;
        et = et.max(dist(&p, &back));
        let (s0, s1) = (c(), c());
        let q = eta(&alpha_plane_point(&p, &s0, &s1), &p.zeta);
        ep = ep.max(dist(&p, &q));
    }
    Ok(RoundtripStats { samples, max_transition_error: et, max_plane_error: ep })
}

fn dist(a: &TwistorPoint<Complex64>, b: &TwistorPoint<Complex64>) -> f64 {
    a.to_array().iter().zip(b.to_array()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Exact version of the transition roundtrip at a given point.
pub fn exact_roundtrip(p: &TwistorPoint<CRational>) -> Result<bool> {
    Ok(chart_transition_inverse(&chart_transition(p)?)?.same_as(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: [i64; 4]) -> TwistorPoint<CRational> {
        TwistorPoint::new(Chart::W, v.map(CRational::from_int))
    }

    #[test]
    fn eta_examples() {
        let z = CRational::from_int(7);
        assert!(eta(&GroupPoint::origin(), &z).same_as(&q([0, 0, 0, 7])));
        assert!(eta(&GroupPoint::from_ints([1, 0, 0, 0, 0]), &CRational::from_int(0)).same_as(&q([1, 0, 0, 0])));
        assert!(eta(&GroupPoint::from_ints([0, 0, 1, 0, 0]), &CRational::from_int(1)).same_as(&q([1, 0, 0, 1])));
    }

    #[test]
    fn eta_tilde_golden() {
        let p = eta_tilde(&GroupPoint::from_ints([1, 0, 0, 0, 0]), &CRational::from_int(1));
        assert_eq!(p.to_array(), [1, 0, 0, 1].map(CRational::from_int));
    }

    #[test]
    fn transition_examples() {
        let r = chart_transition(&q([1, 1, 0, 2])).unwrap();
        let h = CRational::ratio(1, 2);
        assert_eq!(r.to_array(), [h.clone(), h.clone(), CRational::from_int(1), h]);
        let r = chart_transition(&q([0, 0, 5, 3])).unwrap();
        assert_eq!(r.w2, CRational::from_int(5));
        assert_eq!(chart_transition(&q([1, 1, 1, 0])).unwrap_err(), Error::ZetaZero);
        assert!(exact_roundtrip(&q([3, -2, 5, 4])).unwrap());
    }

    #[test]
    fn alpha_examples() {
        let p = q([2, 3, 5, 7]);
        let zero = CRational::from_int(0);
        let x = alpha_plane_point(&p, &zero, &zero);
        assert_eq!(x, GroupPoint::from_ints([2, 3, 0, 0, 5]));
        let x = alpha_plane_point(&q([0, 0, 0, 0]), &CRational::from_int(1), &zero);
        assert_eq!(x, GroupPoint::from_ints([0, 0, 1, 0, 0]));
        assert!(eta(&x, &zero).same_as(&q([0, 0, 0, 0])));
    }

    #[test]
    fn symbolic_checks() {
        assert!(all_pass(&tangency_certificate().unwrap()));
        assert!(all_pass(&diagram_check(TransitionVariant::Derived).unwrap()));
        assert!(!all_pass(&diagram_check(TransitionVariant::Printed).unwrap()));
        assert!(abelian_check().unwrap());
        assert!(alpha_roundtrip_symbolic().unwrap());
        assert!(alpha_tilde_roundtrip_symbolic().unwrap());
        assert!(!alpha_tilde_printed_roundtrip_symbolic().unwrap());
        assert!(planes_agree_across_charts().unwrap());
    }

    #[test]
    fn numeric() {
        let s = numeric_roundtrip(50, 1).unwrap();
        assert!(s.max_transition_error < 1e-9 && s.max_plane_error < 1e-9);
    }
}
