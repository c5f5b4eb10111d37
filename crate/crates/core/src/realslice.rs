//! The real Heisenberg group inside ℂ⁵: embedding, real fields, differential
//! forms on ℝ⁵ with the Hodge star, and the contact-instanton decomposition of
//! curvature.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{CRational, Context, Mat, MatRF, MultiPoly, RationalFunction, Scalar, REAL_VARS};
use crate::gauge::{asd_residuals, curvature, ConnectionForm};
use crate::heisenberg::{apply_field, FieldId, GroupPoint};
use crate::twistor::{eta, TwistorPoint};

/// A point `(x1, x2, x3, x4, s)` of the real group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealPoint<S> {
    pub x1: S,
    pub x2: S,
    pub x3: S,
    pub x4: S,
    pub s: S,
}

impl<S: Scalar> RealPoint<S> {
    pub fn from_array([x1, x2, x3, x4, s]: [S; 5]) -> Self {
        Self { x1, x2, x3, x4, s }
    }

    pub fn to_array(&self) -> [S; 5] {
        [self.x1.clone(), self.x2.clone(), self.x3.clone(), self.x4.clone(), self.s.clone()]
    }
}

/// `⟨x, x'⟩ = 2(x1x2' − x2x1' − x3x4' + x4x3')`.
pub fn real_pairing<S: Scalar>(a: &RealPoint<S>, b: &RealPoint<S>) -> S {
    let t = a
        .x1
        .times(&b.x2)
        .minus(&a.x2.times(&b.x1))
        .minus(&a.x3.times(&b.x4))
        .plus(&a.x4.times(&b.x3));
    t.int_like(2).times(&t)
}

pub fn real_group_mul<S: Scalar>(a: &RealPoint<S>, b: &RealPoint<S>) -> RealPoint<S> {
    RealPoint {
        x1: a.x1.plus(&b.x1),
        x2: a.x2.plus(&b.x2),
        x3: a.x3.plus(&b.x3),
        x4: a.x4.plus(&b.x4),
        s: a.s.plus(&b.s).plus(&real_pairing(a, b)),
    }
}

/// `y00' = x1 + i·x2`, `y10' = x3 + i·x4`, `y01' = −x3 + i·x4`,
/// `y11' = x1 − i·x2`, `t = −i·s`.
pub fn embed<S: Scalar>(p: &RealPoint<S>) -> GroupPoint<S> {
    let i = p.x1.i_like();
    GroupPoint {
        y00p: p.x1.plus(&i.times(&p.x2)),
        y10p: p.x3.plus(&i.times(&p.x4)),
        y01p: p.x3.negated().plus(&i.times(&p.x4)),
        y11p: p.x1.minus(&i.times(&p.x2)),
        t: i.negated().times(&p.s),
    }
}

/// Images of the Heisenberg coordinates as polynomials in `ctx`, which must
/// contain `x1..x4, s`.
pub fn embed_images_in(ctx: &Context) -> Result<Vec<MultiPoly>> {
    let p = RealPoint::from_array(
        REAL_VARS.map(|n| ctx.require(n).map(|k| MultiPoly::var_index(ctx, k))).into_iter().collect::<Result<Vec<_>>>()?
            .try_into()
            .expect("five"),
    );
    Ok(embed(&p).to_array().to_vec())
}

/// `f ∘ embed` for `f` in the plain Heisenberg context.
pub fn pullback(f: &RationalFunction) -> Result<RationalFunction> {
    Context::heisenberg().check_same(f.context())?;
    f.substitute_poly(&embed_images_in(&Context::real())?)
}

pub fn pullback_mat(m: &MatRF) -> Result<MatRF> {
    m.try_map(pullback)
}

fn rc() -> Context {
    Context::real()
}

fn k(n: i64) -> RationalFunction {
    RationalFunction::int(&rc(), n)
}

fn q(re: i64, im: i64, d: i64) -> RationalFunction {
    let c = CRational::complex(re, im).checked_div(&CRational::from_int(d)).expect("nonzero");
    RationalFunction::constant(&rc(), c)
}

fn xv(name: &str) -> RationalFunction {
    RationalFunction::var(&rc(), name).expect("real variable")
}

/// A vector field `Σ v_j ∂_j` on ℝ⁵ as its five coefficients (order
/// `∂x1..∂x4, ∂s`).
pub type RealVector = [RationalFunction; 5];

/// Complex left-invariant fields on the real group:
///
/// ```text
/// V00' = ½(∂1 − i∂2) − i(x1 − i x2)∂s    V01' = ½(−∂3 − i∂4) + i(x3 + i x4)∂s
/// V10' = ½(∂3 − i∂4) + i(x3 − i x4)∂s    V11' = ½(∂1 + i∂2) + i(x1 + i x2)∂s
/// T = i∂s
/// ```
pub fn real_field_vector(id: FieldId) -> RealVector {
    let i = q(0, 1, 1);
    let z = k(0);
    let (x1, x2, x3, x4) = (xv("x1"), xv("x2"), xv("x3"), xv("x4"));
    match id {
        FieldId::V00 => [q(1, 0, 2), q(0, -1, 2), z.clone(), z, -&(&i * &(&x1 - &(&i * &x2)))],
        FieldId::V01 => [z.clone(), z, q(-1, 0, 2), q(0, -1, 2), &i * &(&x3 + &(&i * &x4))],
        FieldId::V10 => [z.clone(), z, q(1, 0, 2), q(0, -1, 2), &i * &(&x3 - &(&i * &x4))],
        FieldId::V11 => [q(1, 0, 2), q(0, 1, 2), z.clone(), z, &i * &(&x1 + &(&i * &x2))],
        FieldId::T => [z.clone(), z.clone(), z.clone(), z, i],
    }
}

/// `X1 = ½∂1 + x2∂s`, `X2 = ½∂2 − x1∂s`, `X3 = ½∂3 + x4∂s`, `X4 = ½∂4 − x3∂s`
/// (indexed from 1).
pub fn x_field_vector(j: usize) -> RealVector {
    let h = q(1, 0, 2);
    let z = k(0);
    match j {
        1 => [h, z.clone(), z.clone(), z, xv("x2")],
        2 => [z.clone(), h, z.clone(), z, -&xv("x1")],
        3 => [z.clone(), z.clone(), h, z, xv("x4")],
        4 => [z.clone(), z.clone(), z, h, -&xv("x3")],
        _ => panic!("X fields are indexed 1..=4"),
    }
}

/// Applies `Σ v_j ∂_j` to a function of the real context.
pub fn apply_vector(v: &RealVector, f: &RationalFunction) -> Result<RationalFunction> {
    rc().check_same(f.context())?;
    let mut acc = RationalFunction::zero(f.context());
    for (j, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc = &acc + &(c * &f.derivative(j));
    }
    Ok(acc)
}

pub fn real_fields(id: FieldId, f: &RationalFunction) -> Result<RationalFunction> {
    apply_vector(&real_field_vector(id), f)
}

pub fn x_fields(j: usize, f: &RationalFunction) -> Result<RationalFunction> {
    apply_vector(&x_field_vector(j), f)
}

/// `Δ_b = X1² + X2² + X3² + X4²`.
pub fn real_sub_laplacian(f: &RationalFunction) -> Result<RationalFunction> {
    let mut acc = RationalFunction::zero(f.context());
    for j in 1..=4 {
        acc = &acc + &x_fields(j, &x_fields(j, f)?)?;
    }
    Ok(acc)
}

/// `1/(|x|⁴ + s²)`.
pub fn phi_real() -> RationalFunction {
    let c = rc();
    let v = |n: &str| MultiPoly::var(&c, n).expect("real variable");
    let r2 = &(&(&v("x1").pow(2) + &v("x2").pow(2)) + &v("x3").pow(2)) + &v("x4").pow(2);
    RationalFunction::from_parts(MultiPoly::one(&c), &r2.pow(2) + &v("s").pow(2)).expect("nonzero")
}

/// Differential forms on ℝ⁵ with rational-function coefficients.
///
/// Basis monomials are bitmasks over `(dx1, dx2, dx3, dx4, ds)` (bit `j` for
/// the `j`-th one-form), wedge-ordered by increasing index.
#[derive(Clone, PartialEq)]
pub struct RealForm {
    ctx: Context,
    terms: BTreeMap<u8, RationalFunction>,
}

pub const DS: u8 = 1 << 4;
const BASIS_NAMES: [&str; 5] = ["dx1", "dx2", "dx3", "dx4", "ds"];

/// `(−1)^{#{(i, j) : i ∈ a, j ∈ b, i > j}}`.
fn merge_sign(a: u8, b: u8) -> bool {
    let mut inversions = 0;
    for i in 0..5 {
        if a & (1 << i) != 0 {
            inversions += (b & ((1u8 << i) - 1)).count_ones();
        }
    }
    inversions % 2 == 1
}

impl RealForm {
    pub fn zero(ctx: &Context) -> Self {
        Self { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn real_zero() -> Self {
        Self::zero(&rc())
    }

    pub fn monomial(mask: u8, c: RationalFunction) -> Self {
        let mut f = Self::zero(c.context());
        f.add_term(mask, c);
        f
    }

    /// `dx_j` for `j ∈ 0..5` (index 4 is `ds`).
    pub fn basis(j: usize) -> Self {
        Self::monomial(1 << j, k(1))
    }

    /// The function `f` as a 0-form.
    pub fn function(f: RationalFunction) -> Self {
        Self::monomial(0, f)
    }

    fn add_term(&mut self, mask: u8, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&mask) {
            Some(prev) => &prev + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(mask, sum);
        }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn coeff(&self, mask: u8) -> RationalFunction {
        self.terms.get(&mask).cloned().unwrap_or_else(|| RationalFunction::zero(&self.ctx))
    }

    pub fn terms(&self) -> impl Iterator<Item = (u8, &RationalFunction)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree of all terms, or `None` for a mixed or zero form.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.count_ones());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&k(-1)))
    }

    pub fn scale(&self, f: &RationalFunction) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            out.add_term(*m, c * f);
        }
        out
    }

    pub fn wedge(&self, o: &Self) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                if a & b != 0 {
                    continue;
                }
                let p = ca * cb;
                out.add_term(a | b, if merge_sign(*a, *b) { -&p } else { p });
            }
        }
        out
    }

    /// `∗(dx_I) = ε(I, J)·dx_J` with `J` the sorted complement of `I`.
    pub fn hodge_star(&self) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            let j = !m & 0x1f;
            out.add_term(j, if merge_sign(*m, j) { -c } else { c.clone() });
        }
        out
    }

    /// Interior product with `Σ v_j ∂_j`.
    pub fn contract(&self, v: &RealVector) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            let mut pos = 0;
            for j in 0..5 {
                if m & (1 << j) == 0 {
                    continue;
                }
                if !v[j].is_zero() {
                    let val = c * &v[j];
                    out.add_term(m & !(1 << j), if pos % 2 == 1 { -&val } else { val });
                }
                pos += 1;
            }
        }
        out
    }

    /// Exterior derivative.
    pub fn d(&self) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            for j in 0..5 {
                if m & (1 << j) != 0 {
                    continue;
                }
                let dc = c.derivative(j);
                if dc.is_zero() {
                    continue;
                }
                out.add_term(m | (1 << j), if merge_sign(1 << j, *m) { -&dc } else { dc });
            }
        }
        out
    }

    /// True when no term contains `ds`.
    pub fn is_ds_free(&self) -> bool {
        self.terms.keys().all(|m| m & DS == 0)
    }
}

impl fmt::Display for RealForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let names: Vec<&str> = (0..5).filter(|j| m & (1 << j) != 0).map(|j| BASIS_NAMES[j]).collect();
                if names.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", names.join("^"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for RealForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The coframe `θ^{AA'}` in field order, then `θ`:
///
/// ```text
/// θ^{00'} = dx1 + i dx2   θ^{10'} = dx3 + i dx4   θ^{01'} = −dx3 + i dx4
/// θ^{11'} = dx1 − i dx2   θ = −i ds + 2i(x1 dx2 − x2 dx1 + x4 dx3 − x3 dx4)
/// ```
pub fn coframe() -> [RealForm; 5] {
    let i = q(0, 1, 1);
    let b = RealForm::basis;
    let th00 = b(0).add(&b(1).scale(&i));
    let th10 = b(2).add(&b(3).scale(&i));
    let th01 = b(2).scale(&k(-1)).add(&b(3).scale(&i));
    let th11 = b(0).sub(&b(1).scale(&i));
    let inner = b(1)
        .scale(&xv("x1"))
        .sub(&b(0).scale(&xv("x2")))
        .add(&b(2).scale(&xv("x4")))
        .sub(&b(3).scale(&xv("x3")));
    let theta = b(4).scale(&-&i).add(&inner.scale(&q(0, 2, 1)));
    [th00, th10, th01, th11, theta]
}

pub fn theta_of(id: FieldId) -> RealForm {
    coframe()[id.index()].clone()
}

/// `ω_H = ι_T(θ ∧ ω)` and `ω_V = θ ∧ ι_T ω` with `T = i∂s`.
#[derive(Clone, Debug)]
pub struct SplitForm {
    pub horizontal: RealForm,
    pub vertical: RealForm,
}

pub fn hv_split(w: &RealForm) -> SplitForm {
    let t = real_field_vector(FieldId::T);
    let theta = theta_of(FieldId::T);
    SplitForm { horizontal: theta.wedge(w).contract(&t), vertical: theta.wedge(&w.contract(&t)) }
}

/// `∂s`, the real Reeb field used in the star contraction.
pub fn reeb() -> RealVector {
    [k(0), k(0), k(0), k(0), k(1)]
}

/// Sets `x1 = x2 = x3 = x4 = 0` in every coefficient.
pub fn restrict_to_s_axis(w: &RealForm) -> Result<RealForm> {
    let c = rc();
    let mut images: Vec<MultiPoly> = (0..4).map(|_| MultiPoly::zero(&c)).collect();
    images.push(MultiPoly::var(&c, "s").expect("s"));
    let mut out = RealForm::zero(&c);
    for (m, f) in w.terms() {
        out.add_term(m, f.substitute_poly(&images)?);
    }
    Ok(out)
}

/// `ι_R ∗ ω`.
pub fn star_contract(w: &RealForm) -> RealForm {
    w.hodge_star().contract(&reeb())
}

/// `ω_H^± = ½(1 ± ι_R∗)ω_H`.
pub fn sd_asd_split(wh: &RealForm) -> Result<(RealForm, RealForm)> {
    if !wh.is_ds_free() {
        return Err(Error::NotHorizontal);
    }
    let sc = star_contract(wh);
    let h = q(1, 0, 2);
    Ok((wh.add(&sc).scale(&h), wh.sub(&sc).scale(&h)))
}

/// `[S^{0'0'}, S^{0'1'}, S^{1'1'}]` (self-dual) and `[S^{00}, S^{01}, S^{11}]`
/// (anti-self-dual).
pub fn s_basis() -> ([RealForm; 3], [RealForm; 3]) {
    let [t00, t10, t01, t11, _] = coframe();
    let sd = [t00.wedge(&t10), t00.wedge(&t11).sub(&t10.wedge(&t01)), t01.wedge(&t11)];
    let asd = [t00.wedge(&t01), t00.wedge(&t11).add(&t10.wedge(&t01)), t10.wedge(&t11)];
    (sd, asd)
}

pub const S_NAMES: [&str; 6] = ["S^{0'0'}", "S^{0'1'}", "S^{1'1'}", "S^{00}", "S^{01}", "S^{11}"];

/// The six horizontal 2-form basis masks `dx12, dx13, dx14, dx23, dx24, dx34`.
const H2: [u8; 6] = [0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100];

fn constant_coeffs(w: &RealForm) -> Vec<CRational> {
    H2.iter().map(|m| w.coeff(*m).as_constant().expect("constant-coefficient form")).collect()
}

/// Rank of the six S-forms in the ten-dimensional space of 2-forms.
pub fn s_basis_rank() -> usize {
    let (sd, asd) = s_basis();
    let all2: Vec<u8> = (0u8..32).filter(|m| m.count_ones() == 2).collect();
    let rows: Vec<Vec<CRational>> = sd
        .iter()
        .chain(asd.iter())
        .map(|f| {
            let h = hv_split(f).horizontal;
            all2.iter().map(|m| h.coeff(*m).as_constant().expect("constant")).collect()
        })
        .collect();
    Mat::from_rows(rows).expect("6x10").rank()
}

/// Coordinates of a horizontal 2-form in the S-basis (order of [`S_NAMES`]).
pub fn s_coordinates(w: &RealForm) -> Result<[RationalFunction; 6]> {
    if !w.is_ds_free() || w.terms().any(|(m, _)| m.count_ones() != 2) {
        return Err(Error::NotHorizontal);
    }
    let (sd, asd) = s_basis();
    let cols: Vec<Vec<CRational>> = sd.iter().chain(asd.iter()).map(constant_coeffs).collect();
    let m = Mat::from_fn(6, 6, |i, j| cols[j][i].clone());
    let inv = m.inverse()?;
    let v: Vec<RationalFunction> = H2.iter().map(|mask| w.coeff(*mask)).collect();
    let ctx = w.context().clone();
    let mut out = Vec::with_capacity(6);
    for i in 0..6 {
        let mut acc = RationalFunction::zero(&ctx);
        for (j, vj) in v.iter().enumerate() {
            let c = inv.get(i, j);
            if !c.is_zero_scalar() {
                acc = &acc + &vj.scale(c);
            }
        }
        out.push(acc);
    }
    Ok(out.try_into().expect("six"))
}

/// Matrix-valued differential form.
#[derive(Clone, Debug)]
pub struct MatForm {
    n: usize,
    entries: Vec<RealForm>,
}

impl MatForm {
    pub fn get(&self, i: usize, j: usize) -> &RealForm {
        &self.entries[i * self.n + j]
    }

    pub fn from_fn(n: usize, f: impl FnMut((usize, usize)) -> RealForm) -> Self {
        let entries = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(f).collect();
        Self { n, entries }
    }

    pub fn map(&self, f: impl Fn(&RealForm) -> RealForm) -> Self {
        Self { n: self.n, entries: self.entries.iter().map(f).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { n: self.n, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn wedge(&self, o: &Self) -> Self {
        Self::from_fn(self.n, |(i, j)| {
            (0..self.n).fold(RealForm::real_zero(), |acc, k| acc.add(&self.get(i, k).wedge(o.get(k, j))))
        })
    }

    /// Entrywise coefficient extraction.
    pub fn try_coeffs(&self, f: impl Fn(&RealForm) -> Result<RationalFunction>) -> Result<MatRF> {
        let rows = (0..self.n).map(|i| (0..self.n).map(|j| f(self.get(i, j))).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        Mat::from_rows(rows)
    }
}

/// `Φ = Σ (Φ_X ∘ embed) θ^X` as a matrix of real one-forms.
pub fn connection_one_form(phi: &ConnectionForm) -> Result<MatForm> {
    let frame = coframe();
    let pulled: Vec<MatRF> = FieldId::ALL.iter().map(|id| pullback_mat(phi.block(*id))).collect::<Result<_>>()?;
    let n = phi.rank();
    Ok(MatForm::from_fn(n, |(i, j)| {
        FieldId::ALL
            .iter()
            .fold(RealForm::real_zero(), |acc, id| acc.add(&frame[id.index()].scale(pulled[id.index()].get(i, j))))
    }))
}

/// `F = dΦ + Φ ∧ Φ`.
pub fn curvature_form(phi: &ConnectionForm) -> Result<MatForm> {
    let a = connection_one_form(phi)?;
    Ok(a.map(RealForm::d).add(&a.wedge(&a)))
}

/// The contact-instanton pieces of the curvature.
#[derive(Clone, Debug)]
pub struct RealCurvatureSplit {
    /// `F_H⁺` coefficients on `S^{0'0'}, S^{0'1'}, S^{1'1'}`.
    pub fh_plus: [MatRF; 3],
    /// `F_H⁻` coefficients on `S^{00}, S^{01}, S^{11}`; only the form route
    /// fills this.
    pub fh_minus: Option<[MatRF; 3]>,
    /// `F_V` coefficients on `θ^{AA'} ∧ θ` in field order.
    pub fv: [MatRF; 4],
}

impl RealCurvatureSplit {
    pub fn fh_plus_zero(&self) -> bool {
        self.fh_plus.iter().all(MatRF::is_zero)
    }

    pub fn fv_zero(&self) -> bool {
        self.fv.iter().all(MatRF::is_zero)
    }

    /// Compares the `F_H⁺` and `F_V` coefficients exactly.
    pub fn agrees_with(&self, o: &Self) -> bool {
        self.fh_plus.iter().zip(&o.fh_plus).all(|(a, b)| a.equals(b)) && self.fv.iter().zip(&o.fv).all(|(a, b)| a.equals(b))
    }
}

/// Closed-form route: `F_H⁺ = R1·S^{0'0'} + ½R2·S^{0'1'} + R3·S^{1'1'}` and
/// `F_V = Σ F(V_{AA'}, T)·θ^{AA'} ∧ θ`, pulled back to the real slice.
pub fn real_curvature_split_formula(phi: &ConnectionForm) -> Result<RealCurvatureSplit> {
    let r = asd_residuals(phi)?;
    let half = RationalFunction::constant(phi.context(), CRational::ratio(1, 2));
    let fh_plus = [pullback_mat(&r.r1)?, pullback_mat(&r.r2.scale(&half))?, pullback_mat(&r.r3)?];
    let mut fv = Vec::with_capacity(4);
    for id in FieldId::HORIZONTAL {
        fv.push(pullback_mat(&curvature(phi, id, FieldId::T)?)?);
    }
    Ok(RealCurvatureSplit { fh_plus, fh_minus: None, fv: fv.try_into().expect("four") })
}

/// Form route: builds `F = dΦ + Φ∧Φ` on ℝ⁵, splits it with `(θ, T)`, projects
/// with `½(1 ± ι_R∗)`, and reads coefficients in the S-basis. `F_V`
/// coefficients are `−(ι_T F)(V_{AA'})`.
pub fn real_curvature_split_forms(phi: &ConnectionForm) -> Result<RealCurvatureSplit> {
    let f = curvature_form(phi)?;
    let split = f.map(|w| hv_split(w).horizontal);
    let coords: Vec<MatRF> = {
        let per_entry = |w: &RealForm| -> Result<[RationalFunction; 6]> {
            let (plus, minus) = sd_asd_split(w)?;
            let cp = s_coordinates(&plus)?;
            let cm = s_coordinates(&minus)?;
            // the + part lives on the SD basis, the − part on the ASD basis
            Ok([cp[0].clone(), cp[1].clone(), cp[2].clone(), cm[3].clone(), cm[4].clone(), cm[5].clone()])
        };
        let n = phi.rank();
        let mut all = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                all.push(per_entry(split.get(i, j))?);
            }
        }
        (0..6)
            .map(|c| Mat::from_rows((0..n).map(|i| (0..n).map(|j| all[i * n + j][c].clone()).collect()).collect()))
            .collect::<Result<_>>()?
    };
    let t = real_field_vector(FieldId::T);
    let it_f = f.map(|w| w.contract(&t));
    let mut fv = Vec::with_capacity(4);
    for id in FieldId::HORIZONTAL {
        let v = real_field_vector(id);
        fv.push(it_f.try_coeffs(|w| Ok(-&w.contract(&v).coeff(0)))?);
    }
    Ok(RealCurvatureSplit {
        fh_plus: [coords[0].clone(), coords[1].clone(), coords[2].clone()],
        fh_minus: Some([coords[3].clone(), coords[4].clone(), coords[5].clone()]),
        fv: fv.try_into().expect("four"),
    })
}

/// Both routes agree on `F_H⁺` and `F_V`, the ASD part is the one the form
/// route produces, and `F_H⁺ = 0` exactly when the pulled-back residuals
/// vanish.
pub fn two_path_check(phi: &ConnectionForm) -> Result<bool> {
    let a = real_curvature_split_formula(phi)?;
    let b = real_curvature_split_forms(phi)?;
    Ok(a.agrees_with(&b) && a.fh_plus_zero() == asd_residuals(phi)?.is_zero())
}

/// `det[[x00'−y00', x01'−y01'], [x10'−y10', x11'−y11']]` equals
/// `Σ (x_k − y_k)²` for embedded points, in eight real symbols.
pub fn fiber_uniqueness_certificate() -> Result<bool> {
    let names = ["x1", "x2", "x3", "x4", "u1", "u2", "u3", "u4"];
    let ctx = Context::new(&names);
    let v = |n: &str| RationalFunction::var(&ctx, n).expect("symbol");
    let zero = RationalFunction::zero(&ctx);
    let x = embed(&RealPoint::from_array([v("x1"), v("x2"), v("x3"), v("x4"), zero.clone()]));
    let y = embed(&RealPoint::from_array([v("u1"), v("u2"), v("u3"), v("u4"), zero]));
    let m = Mat::from_rows(vec![
        vec![&x.y00p - &y.y00p, &x.y01p - &y.y01p],
        vec![&x.y10p - &y.y10p, &x.y11p - &y.y11p],
    ])?;
    let mut sum = RationalFunction::zero(&ctx);
    for j in 1..=4 {
        let d = &v(&format!("x{j}")) - &v(&format!("u{j}"));
        sum = &sum + &(&d * &d);
    }
    Ok(m.det()? == sum)
}

/// Smallest determinant over random pairs of distinct real points.
pub fn fiber_uniqueness_numeric(samples: usize, seed: u64) -> f64 {
    use num_complex::Complex64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min = f64::INFINITY;
    for _ in 0..samples {
        let mut pt = || RealPoint::from_array([(); 5].map(|_| Complex64::new(rng.gen_range(-3.0..3.0), 0.0)));
        let (x, y) = (embed(&pt()), embed(&pt()));
        let det = (x.y00p - y.y00p) * (x.y11p - y.y11p) - (x.y01p - y.y01p) * (x.y10p - y.y10p);
        min = min.min(det.re);
    }
    min
}

/// The real twistor map written out in real coordinates:
///
/// ```text
/// w0 = x1 + i x2 + ζ(−x3 + i x4)
/// w1 = x3 + i x4 + ζ(x1 − i x2)
/// w2 = −i s − 2ζ(−x3 + i x4)(x1 − i x2) − x1² − x2² + x3² + x4²
/// ```
pub fn real_eta<S: Scalar>(p: &RealPoint<S>, zeta: &S) -> TwistorPoint<S> {
    let i = p.x1.i_like();
    let a = p.x1.plus(&i.times(&p.x2));
    let b = p.x3.negated().plus(&i.times(&p.x4));
    let c = p.x3.plus(&i.times(&p.x4));
    let d = p.x1.minus(&i.times(&p.x2));
    let sq = |v: &S| v.times(v);
    let w2 = i
        .negated()
        .times(&p.s)
        .minus(&zeta.int_like(2).times(zeta).times(&b).times(&d))
        .minus(&sq(&p.x1))
        .minus(&sq(&p.x2))
        .plus(&sq(&p.x3))
        .plus(&sq(&p.x4));
    TwistorPoint::new(crate::twistor::Chart::W, [a.plus(&zeta.times(&b)), c.plus(&zeta.times(&d)), w2, zeta.clone()])
}

/// `real_eta = eta ∘ embed` over symbolic `(x, s, ζ)`.
pub fn real_eta_check() -> Result<bool> {
    let ctx = Context::new(&["x1", "x2", "x3", "x4", "s", "zeta"]);
    let v = |n: &str| RationalFunction::var(&ctx, n).expect("symbol");
    let p = RealPoint::from_array([v("x1"), v("x2"), v("x3"), v("x4"), v("s")]);
    let z = v("zeta");
    Ok(real_eta(&p, &z).same_as(&eta(&embed(&p), &z)))
}

/// `embed(a ∘ b) = embed(a) ∘ embed(b)` over ten real symbols.
pub fn embed_homomorphism_check() -> Result<bool> {
    let names = ["a1", "a2", "a3", "a4", "as", "b1", "b2", "b3", "b4", "bs"];
    let ctx = Context::new(&names);
    let v = |n: &str| RationalFunction::var(&ctx, n).expect("symbol");
    let a = RealPoint::from_array([v("a1"), v("a2"), v("a3"), v("a4"), v("as")]);
    let b = RealPoint::from_array([v("b1"), v("b2"), v("b3"), v("b4"), v("bs")]);
    let lhs = embed(&real_group_mul(&a, &b));
    let rhs = crate::heisenberg::group_mul(&embed(&a), &embed(&b));
    Ok(lhs.to_array().iter().zip(rhs.to_array()).all(|(x, y)| *x == y))
}

/// `V(g ∘ embed) = (V g) ∘ embed` for each field.
pub fn real_field_consistency(g: &RationalFunction) -> Result<bool> {
    let pg = pullback(g)?;
    for id in FieldId::ALL {
        if real_fields(id, &pg)? != pullback(&apply_field(id, g)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `θ^X(V_Y) = δ_XY` on the real slice.
pub fn coframe_duality_check() -> bool {
    let frame = coframe();
    FieldId::ALL.iter().all(|x| {
        FieldId::ALL.iter().all(|y| {
            let val = frame[x.index()].contract(&real_field_vector(*y)).coeff(0);
            val == k(if x == y { 1 } else { 0 })
        })
    })
}

/// `dθ = −2θ^{00'}∧θ^{11'} − 2θ^{10'}∧θ^{01'}`.
pub fn d_theta_check() -> bool {
    let [t00, t10, t01, t11, theta] = coframe();
    let rhs = t00.wedge(&t11).add(&t10.wedge(&t01)).scale(&k(-2));
    theta.d() == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_rational_function;

    fn r(s: &str) -> RationalFunction {
        parse_rational_function(s, &rc()).unwrap()
    }

    #[test]
    fn embed_examples() {
        let p = RealPoint::from_array([1, 0, 0, 0, 0].map(CRational::from_int));
        assert_eq!(embed(&p), GroupPoint::from_ints([1, 0, 0, 1, 0]));
        assert!(embed_homomorphism_check().unwrap());
    }

    #[test]
    fn x_field_examples() {
        assert_eq!(x_fields(1, &r("x1")).unwrap(), r("1/2"));
        let s = r("s");
        let c = &x_fields(1, &x_fields(2, &s).unwrap()).unwrap() - &x_fields(2, &x_fields(1, &s).unwrap()).unwrap();
        assert_eq!(c, r("-1"));
    }

    #[test]
    fn sub_laplacian_examples() {
        assert!(real_sub_laplacian(&phi_real()).unwrap().is_zero());
        assert!(real_sub_laplacian(&r("s")).unwrap().is_zero());
        assert_eq!(real_sub_laplacian(&r("x1^2")).unwrap(), r("1/2"));
    }

    #[test]
    fn hodge_examples() {
        let b = RealForm::basis;
        assert_eq!(b(0).wedge(&b(1)).hodge_star(), b(2).wedge(&b(3)).wedge(&b(4)));
        assert_eq!(b(0).wedge(&b(2)).hodge_star(), b(1).wedge(&b(3)).wedge(&b(4)).scale(&k(-1)));
        for m in (0u8..32).filter(|m| m.count_ones() == 2) {
            let w = RealForm::monomial(m, k(1));
            assert_eq!(w.hodge_star().hodge_star(), w);
            assert_eq!(w.wedge(&w.hodge_star()), RealForm::monomial(0x1f, k(1)));
        }
    }

    #[test]
    fn split_examples() {
        let b = RealForm::basis;
        let w = b(0).wedge(&b(1));
        let s = hv_split(&w);
        assert_eq!(s.horizontal, w);
        assert!(s.vertical.is_zero());
        // dx1∧ds is purely vertical on the s-axis; elsewhere θ carries dx terms
        let w = b(0).wedge(&b(4));
        let s = hv_split(&w);
        assert_eq!(s.horizontal.add(&s.vertical), w);
        assert!(!s.horizontal.is_zero());
        let on_axis = |f: &RealForm| restrict_to_s_axis(f).unwrap();
        assert!(on_axis(&s.horizontal).is_zero());
        assert_eq!(on_axis(&s.vertical), w);
        let w = theta_of(FieldId::T).wedge(&b(0)).add(&b(1).wedge(&b(2)));
        let s = hv_split(&w);
        assert_eq!(s.horizontal.add(&s.vertical), w);
        assert!(s.horizontal.is_ds_free());
    }

    #[test]
    fn sd_asd_examples() {
        let (sd, asd) = s_basis();
        for f in &sd {
            assert_eq!(star_contract(f), *f);
        }
        for f in &asd {
            assert_eq!(star_contract(f), f.scale(&k(-1)));
        }
        let b = RealForm::basis;
        let (p, m) = sd_asd_split(&b(0).wedge(&b(1))).unwrap();
        let half = r("1/2");
        assert_eq!(p, b(0).wedge(&b(1)).add(&b(2).wedge(&b(3))).scale(&half));
        assert_eq!(m, b(0).wedge(&b(1)).sub(&b(2).wedge(&b(3))).scale(&half));
        assert_eq!(s_basis_rank(), 6);
        assert_eq!(sd_asd_split(&b(0).wedge(&b(4))).unwrap_err(), Error::NotHorizontal);
    }

    #[test]
    fn coframe_facts() {
        assert!(coframe_duality_check());
        assert!(d_theta_check());
    }

    #[test]
    fn fiber_and_eta() {
        assert!(fiber_uniqueness_certificate().unwrap());
        assert!(fiber_uniqueness_numeric(20, 3) > 0.0);
        assert!(real_eta_check().unwrap());
    }

    #[test]
    fn curvature_two_path() {
        use crate::ansatz::{build_connection, HarmonicSeed};
        use crate::gauge::random_polynomial_connection;
        let h = Context::heisenberg();
        let inst = build_connection(&HarmonicSeed::from_spec("inst").unwrap(), None).unwrap();
        let split = real_curvature_split_forms(&inst).unwrap();
        assert!(split.fh_plus_zero());
        assert!(two_path_check(&inst).unwrap());
        for seed in 0..3 {
            let phi = random_polynomial_connection(&h, 2, seed).unwrap();
            assert!(two_path_check(&phi).unwrap());
        }
    }

    #[test]
    fn curvature_examples() {
        let h = Context::heisenberg();
        let c = |s: &str| MatRF::from_rows(vec![vec![parse_rational_function(s, &h).unwrap()]]).unwrap();
        let pure = ConnectionForm::new([c("0"), c("0"), c("0"), c("0"), c("3")]).unwrap();
        let s = real_curvature_split_forms(&pure).unwrap();
        assert!(s.fh_plus_zero() && s.fv_zero());
        assert!(!s.fh_minus.unwrap().iter().all(MatRF::is_zero));
        let non = ConnectionForm::new([c("y10p"), c("0"), c("0"), c("0"), c("0")]).unwrap();
        let s = real_curvature_split_forms(&non).unwrap();
        assert_eq!(*s.fh_plus[0].get(0, 0), r("-1"));
        assert!(two_path_check(&non).unwrap());
    }

    #[test]
    fn field_consistency() {
        let g = parse_rational_function("y00p^2*t - y10p*y01p + 3*y11p*t^2", &Context::heisenberg()).unwrap();
        assert!(real_field_consistency(&g).unwrap());
    }
}
