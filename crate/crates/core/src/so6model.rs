//! The SO(6,ℂ) matrix model of the Heisenberg group and its twistor charts.

use serde::Serialize;

use crate::error::Result;
use crate::exactalg::{Context, Mat, MatRF, RationalFunction, Scalar};
use crate::heisenberg::{group_mul, GroupPoint};
use crate::twistor::eta;

pub type Mask = [[bool; 6]; 6];

const fn mask(rows: [&str; 6]) -> Mask {
    let mut m = [[false; 6]; 6];
    let mut i = 0;
    while i < 6 {
        let b = rows[i].as_bytes();
        let mut j = 0;
        while j < 6 {
            m[i][j] = b[j] == b'*';
            j += 1;
        }
        i += 1;
    }
    m
}

/// Allowed entries of 𝔭.
pub const P_MASK: Mask = mask(["***0**", "****0*", "00***0", "000**0", "000**0", "000***"]);
/// Allowed entries of 𝔮.
pub const Q_MASK: Mask = mask(["***0**", "0***0*", "0****0", "000*00", "00****", "0*0***"]);
/// Allowed entries of 𝔯 = 𝔭 ∩ 𝔮.
pub const R_MASK: Mask = mask(["***0**", "0***0*", "00***0", "000*00", "000**0", "000***"]);

/// The complement patterns of 𝔥, 𝔫 and 𝔪 as masks.
pub const H_ALG_MASK: Mask = mask(["000000", "000000", "**0000", "0**00*", "*0*00*", "**0000"]);
pub const N_ALG_MASK: Mask = mask(["000000", "*00000", "*00000", "0**0**", "*00000", "*00000"]);
pub const M_ALG_MASK: Mask = mask(["000000", "*00000", "**0000", "0**0**", "*0*00*", "**0000"]);

fn zero_of<S: Scalar>(t: &S) -> S {
    t.zero_like()
}

/// The form `I = [[0, E₃], [E₃, 0]]`.
pub fn form_i<S: Scalar>(template: &S) -> Mat<S> {
    Mat::from_fn(6, 6, |i, j| if (i + 3) % 6 == j { template.one_like() } else { zero_of(template) })
}

/// `⟨w, w̃⟩ = w₁w̃₂ + w̃₁w₂`.
pub fn pairing<S: Scalar>(w: (&S, &S), wt: (&S, &S)) -> S {
    w.0.times(wt.1).plus(&wt.0.times(w.1))
}

/// The element `Y ∈ 𝔥` with `y0' = (y00', y10')`, `y1' = (y01', y11')`.
pub fn h_algebra<S: Scalar>(g: &GroupPoint<S>) -> Mat<S> {
    let z = zero_of(&g.t);
    let half_t = g.t.divided(&g.t.int_like(2)).expect("2 ≠ 0");
    let mut y = Mat::from_fn(6, 6, |_, _| z.clone());
    y[(2, 0)] = g.y00p.clone();
    y[(2, 1)] = g.y01p.clone();
    y[(3, 1)] = half_t.negated();
    y[(3, 2)] = g.y10p.negated();
    y[(3, 5)] = g.y00p.negated();
    y[(4, 0)] = half_t;
    y[(4, 2)] = g.y11p.negated();
    y[(4, 5)] = g.y01p.negated();
    y[(5, 0)] = g.y10p.clone();
    y[(5, 1)] = g.y11p.clone();
    y
}

/// `H_{(y,t)} = e^Y = I + Y + Y²/2`.
pub fn h_matrix<S: Scalar>(g: &GroupPoint<S>) -> Mat<S> {
    let y = h_algebra(g);
    let y2 = y.mul(&y).expect("6x6");
    let half = g.t.ratio_like(1, 2);
    Mat::identity_like(&g.t, 6).add(&y).and_then(|m| m.add(&y2.scale(&half))).expect("6x6")
}

/// `H_{(y,t)}` entry by entry from its closed form.
pub fn h_matrix_displayed<S: Scalar>(g: &GroupPoint<S>) -> Mat<S> {
    let half = g.t.ratio_like(1, 2);
    let y0 = (&g.y00p, &g.y10p);
    let y1 = (&g.y01p, &g.y11p);
    let mut h = Mat::identity_like(&g.t, 6);
    let hp = |v: S| half.times(&v);
    h[(2, 0)] = g.y00p.clone();
    h[(2, 1)] = g.y01p.clone();
    h[(3, 0)] = hp(pairing(y0, y0)).negated();
    h[(3, 1)] = hp(g.t.clone()).negated().minus(&hp(pairing(y0, y1)));
    h[(3, 2)] = g.y10p.negated();
    h[(3, 5)] = g.y00p.negated();
    h[(4, 0)] = hp(g.t.clone()).minus(&hp(pairing(y0, y1)));
    h[(4, 1)] = hp(pairing(y1, y1)).negated();
    h[(4, 2)] = g.y11p.negated();
    h[(4, 5)] = g.y01p.negated();
    h[(5, 0)] = g.y10p.clone();
    h[(5, 1)] = g.y11p.clone();
    h
}

/// Reads `(y, t)` back from `H_{(y,t)}`.
pub fn h_matrix_coordinates<S: Scalar>(h: &Mat<S>) -> GroupPoint<S> {
    GroupPoint {
        y00p: h.get(2, 0).clone(),
        y10p: h.get(5, 0).clone(),
        y01p: h.get(2, 1).clone(),
        y11p: h.get(5, 1).clone(),
        t: h.get(4, 0).minus(h.get(3, 1)),
    }
}

/// `P_ζ`: identity except `(1,0) = ζ` and `(3,4) = −ζ`.
pub fn p_zeta<S: Scalar>(zeta: &S) -> Mat<S> {
    let mut m = Mat::identity_like(zeta, 6);
    m[(1, 0)] = zeta.clone();
    m[(3, 4)] = zeta.negated();
    m
}

/// The Weyl-type element swapping coordinates 1↔2 and 4↔5.
pub fn w_matrix<S: Scalar>(template: &S) -> Mat<S> {
    let perm = [1, 0, 2, 4, 3, 5];
    Mat::from_fn(6, 6, |i, j| if perm[i] == j { template.one_like() } else { zero_of(template) })
}

/// `A_ζ`, given `ζ` and `ζ⁻¹`.
pub fn a_zeta<S: Scalar>(zeta: &S, zeta_inv: &S) -> Mat<S> {
    let mut m = Mat::identity_like(zeta, 6);
    m[(0, 0)] = zeta.clone();
    m[(0, 1)] = zeta.one_like();
    m[(1, 1)] = zeta_inv.negated();
    m[(3, 3)] = zeta_inv.clone();
    m[(4, 3)] = zeta.one_like();
    m[(4, 4)] = zeta.negated();
    m
}

/// `N_{(x,t)} = H_{(x1, x2, 0, 0, t)}`.
pub fn n_matrix<S: Scalar>(x1: &S, x2: &S, t: &S) -> Mat<S> {
    let z = zero_of(t);
    h_matrix(&GroupPoint { y00p: x1.clone(), y10p: x2.clone(), y01p: z.clone(), y11p: z, t: t.clone() })
}

/// `log M` for unipotent `M`, or `None` when `M − I` is not nilpotent.
pub fn unipotent_log<S: Scalar>(m: &Mat<S>) -> Option<Mat<S>> {
    let template = m.get(0, 0).clone();
    let n = m.sub(&Mat::identity_like(&template, m.rows())).ok()?;
    let mut acc = n.clone();
    let mut power = n.clone();
    for k in 2..=m.rows() + 1 {
        power = power.mul(&n).ok()?;
        if power.is_zero() {
            return Some(acc);
        }
        let c = template.ratio_like(if k % 2 == 0 { -1 } else { 1 }, k as i64);
        acc = acc.add(&power.scale(&c)).ok()?;
    }
    None
}

/// Positions outside `mask` where `m` is nonzero.
pub fn mask_violations<S: Scalar>(m: &Mat<S>, mask: &Mask) -> Vec<(usize, usize)> {
    m.support().into_iter().filter(|(i, j)| !mask[*i][*j]).collect()
}

/// Membership of a unipotent matrix in the group of `mask`, via its log.
pub fn in_subgroup<S: Scalar>(m: &Mat<S>, mask: &Mask) -> bool {
    unipotent_log(m).map(|l| mask_violations(&l, mask).is_empty()).unwrap_or(false)
}

/// The first entry where `a` and `b` differ.
pub fn first_mismatch(a: &MatRF, b: &MatRF) -> Option<(usize, usize)> {
    (0..a.rows()).flat_map(|i| (0..a.cols()).map(move |j| (i, j))).find(|&(i, j)| a.get(i, j) != b.get(i, j))
}

/// `MᵗIM = I`.
pub fn orthogonality_check(m: &MatRF) -> bool {
    let i = form_i(m.get(0, 0));
    m.transpose().mul(&i).and_then(|x| x.mul(m)).map(|x| x.equals(&i)).unwrap_or(false)
}

/// One identity of the suite.
#[derive(Clone, Debug, Serialize)]
pub struct So6Check {
    pub name: &'static str,
    pub pass: bool,
    /// The first failing matrix entry, 0-indexed.
    pub failing_entry: Option<(usize, usize)>,
    pub note: Option<String>,
}

impl So6Check {
    fn from_cmp(name: &'static str, a: &MatRF, b: &MatRF) -> Self {
        let failing_entry = first_mismatch(a, b);
        Self { name, pass: failing_entry.is_none(), failing_entry, note: None }
    }

    fn flag(name: &'static str, pass: bool, note: &str) -> Self {
        Self { name, pass, failing_entry: None, note: (!pass).then(|| note.to_string()) }
    }

    fn and(self, other: Self) -> Self {
        if !self.pass {
            self
        } else {
            Self { name: self.name, ..other }
        }
    }
}

fn zeta_ctx() -> Context {
    Context::heisenberg_zeta()
}

fn rv(ctx: &Context, n: &str) -> RationalFunction {
    RationalFunction::var(ctx, n).expect("symbol")
}

fn symbolic_point(ctx: &Context, names: [&str; 5]) -> GroupPoint<RationalFunction> {
    GroupPoint::from_array(names.map(|n| rv(ctx, n)))
}

fn heis_point(ctx: &Context) -> GroupPoint<RationalFunction> {
    symbolic_point(ctx, ["y00p", "y10p", "y01p", "y11p", "t"])
}

/// `Y³ = 0` and `e^Y` agrees with its closed form.
pub fn nilpotent_check() -> So6Check {
    let ctx = Context::heisenberg();
    let g = heis_point(&ctx);
    let y = h_algebra(&g);
    let y3 = y.mul(&y).and_then(|m| m.mul(&y)).expect("6x6");
    So6Check::from_cmp("nilpotent", &y3, &MatRF::zero(&ctx, 6, 6))
        .and(So6Check::from_cmp("nilpotent", &h_matrix(&g), &h_matrix_displayed(&g)))
}

/// `H_{(y,t)}·H_{(ŷ,t̂)} = H_{(y+ŷ, t+t̂−⟨ŷ0',y1'⟩+⟨y0',ŷ1'⟩)}`, and the same
/// product through the group law of [`group_mul`].
pub fn homomorphism_check() -> So6Check {
    let names = ["a00", "a10", "a01", "a11", "at", "b00", "b10", "b01", "b11", "bt"];
    let ctx = Context::new(&names);
    let a = symbolic_point(&ctx, ["a00", "a10", "a01", "a11", "at"]);
    let b = symbolic_point(&ctx, ["b00", "b10", "b01", "b11", "bt"]);
    let lhs = h_matrix(&a).mul(&h_matrix(&b)).expect("6x6");
    let offset = pairing((&a.y00p, &a.y10p), (&b.y01p, &b.y11p)).minus(&pairing((&b.y00p, &b.y10p), (&a.y01p, &a.y11p)));
    let summed = GroupPoint {
        y00p: &a.y00p + &b.y00p,
        y10p: &a.y10p + &b.y10p,
        y01p: &a.y01p + &b.y01p,
        y11p: &a.y11p + &b.y11p,
        t: &(&a.t + &b.t) + &offset,
    };
    So6Check::from_cmp("homomorphism", &lhs, &h_matrix(&summed))
        .and(So6Check::from_cmp("homomorphism", &lhs, &h_matrix(&group_mul(&a, &b))))
}

/// `MᵗIM = I` for `P_ζ`, `W`, `A_ζ` and symbolic `H_{(y,t)}`.
pub fn orthogonality_suite() -> So6Check {
    let ctx = zeta_ctx();
    let (z, zi) = (rv(&ctx, "zeta"), rv(&ctx, "zetainv"));
    let all = [
        ("P_zeta", p_zeta(&z)),
        ("W", w_matrix(&z)),
        ("A_zeta", a_zeta(&z, &zi)),
        ("H", h_matrix(&heis_point(&ctx))),
    ];
    let failing: Vec<&str> = all.iter().filter(|(_, m)| !orthogonality_check(m)).map(|(n, _)| *n).collect();
    So6Check::flag("orthogonality", failing.is_empty(), &format!("not orthogonal: {}", failing.join(", ")))
}

/// `W·P_ζ = P_{ζ⁻¹}·A_ζ`, with `A_ζ` supported on 𝔯 plus the diagonal.
pub fn decomposition_check() -> So6Check {
    let ctx = zeta_ctx();
    let (z, zi) = (rv(&ctx, "zeta"), rv(&ctx, "zetainv"));
    let a = a_zeta(&z, &zi);
    let lhs = w_matrix(&z).mul(&p_zeta(&z)).expect("6x6");
    let rhs = p_zeta(&zi).mul(&a).expect("6x6");
    let off_diag: Vec<_> = mask_violations(&a, &R_MASK).into_iter().filter(|(i, j)| i != j).collect();
    So6Check::from_cmp("decomposition", &lhs, &rhs).and(So6Check::flag(
        "decomposition",
        off_diag.is_empty(),
        &format!("A_zeta outside the R pattern at {off_diag:?}"),
    ))
}

/// `P_ζ⁻¹ H_{(y0', y1', t)} P_ζ = H_{(y0' + ζy1', y1', t)}`.
pub fn conjugation_check() -> So6Check {
    let ctx = zeta_ctx();
    let z = rv(&ctx, "zeta");
    let g = heis_point(&ctx);
    let lhs = p_zeta(&z.negated()).mul(&h_matrix(&g)).and_then(|m| m.mul(&p_zeta(&z))).expect("6x6");
    let shifted = GroupPoint { y00p: &g.y00p + &(&z * &g.y01p), y10p: &g.y10p + &(&z * &g.y11p), ..g.clone() };
    let inv_ok = p_zeta(&z).mul(&p_zeta(&z.negated())).map(|m| m.is_identity()).unwrap_or(false);
    So6Check::flag("conjugation", inv_ok, "P_{-zeta} is not the inverse of P_zeta")
        .and(So6Check::from_cmp("conjugation", &lhs, &h_matrix(&shifted)))
}

/// The factorization behind `η(H_{(y,t)}P_ζR) = P_ζ N_{(η₀,η₁,η₂)} Q`:
/// `P_ζ⁻¹ H P_ζ = N_{(η₀,η₁,η₂)} · H_{(0,y1',0)}`, the right factor lies in
/// `Q`, and `(η₀,η₁,η₂)` agree with the twistor map.
pub fn coset_eta_check() -> So6Check {
    let ctx = zeta_ctx();
    let z = rv(&ctx, "zeta");
    let g = heis_point(&ctx);
    let zero = RationalFunction::zero(&ctx);
    let a0 = &g.y00p + &(&z * &g.y01p);
    let a1 = &g.y10p + &(&z * &g.y11p);
    let tau = &g.t - &pairing((&a0, &a1), (&g.y01p, &g.y11p));
    let left = n_matrix(&a0, &a1, &tau);
    let right = h_matrix(&GroupPoint { y00p: zero.clone(), y10p: zero.clone(), y01p: g.y01p.clone(), y11p: g.y11p.clone(), t: zero });
    let lhs = p_zeta(&z.negated()).mul(&h_matrix(&g)).and_then(|m| m.mul(&p_zeta(&z))).expect("6x6");
    let rhs = left.mul(&right).expect("6x6");
    let tw = eta(&g, &z);
    let agrees = tw.w0 == a0 && tw.w1 == a1 && tw.w2 == tau;
    So6Check::from_cmp("coset_eta", &lhs, &rhs)
        .and(So6Check::flag("coset_eta", in_subgroup(&right, &Q_MASK), "H_(0,y1',0) is not in Q"))
        .and(So6Check::flag("coset_eta", agrees, "coset coordinates differ from the twistor map"))
}

/// `A_ζ H_{(x1,x2,0,0,t)} A_ζ⁻¹ = H_{(ζ⁻¹x1, ζ⁻¹x2, x1, x2, −t)}
/// = H_{(ζ⁻¹x, 0, −t − 2ζ⁻¹x1x2)} · H_{(0, x, 0)}`, with `A_ζ⁻¹` computed and
/// `A_ζ ∈ Q`.
pub fn psi_chart_check() -> So6Check {
    let ctx = Context::with_laurent(&["x1", "x2", "t", "zeta", "zetainv"], &[("zeta", "zetainv")]);
    let v = |n| rv(&ctx, n);
    let (x1, x2, t, z, zi) = (v("x1"), v("x2"), v("t"), v("zeta"), v("zetainv"));
    let zero = RationalFunction::zero(&ctx);
    let a = a_zeta(&z, &zi);
    let a_inv = match a.inverse() {
        Ok(m) => m,
        Err(e) => return So6Check::flag("psi_chart", false, &format!("A_zeta not invertible: {e}")),
    };
    let conj = a.mul(&n_matrix(&x1, &x2, &t)).and_then(|m| m.mul(&a_inv)).expect("6x6");
    let mid = h_matrix(&GroupPoint { y00p: &zi * &x1, y10p: &zi * &x2, y01p: x1.clone(), y11p: x2.clone(), t: -&t });
    let third = &(-&t) - &(&(&RationalFunction::int(&ctx, 2) * &zi) * &(&x1 * &x2));
    let fact = n_matrix(&(&zi * &x1), &(&zi * &x2), &third)
        .mul(&h_matrix(&GroupPoint { y00p: zero.clone(), y10p: zero.clone(), y01p: x1.clone(), y11p: x2.clone(), t: zero }))
        .expect("6x6");
    let a_in_q = mask_violations(&a, &Q_MASK).into_iter().all(|(i, j)| i == j);
    So6Check::from_cmp("psi_chart", &conj, &mid)
        .and(So6Check::from_cmp("psi_chart", &mid, &fact))
        .and(So6Check::flag("psi_chart", a_in_q, "A_zeta outside the Q pattern"))
}

/// The chart transition read off from [`psi_chart_check`]:
/// `(x, t, ζ) ↦ (ζ⁻¹x, −t − 2ζ⁻¹x1x2, ζ⁻¹)`.
pub fn psi_transition<S: Scalar>(x1: &S, x2: &S, t: &S, zeta: &S) -> Result<[S; 4]> {
    let zi = zeta.recip()?;
    let third = t.negated().minus(&zi.int_like(2).times(&zi).times(x1).times(x2));
    Ok([zi.times(x1), zi.times(x2), third, zi])
}

/// All seven identities in a fixed order.
pub fn verify_all() -> Vec<So6Check> {
    vec![
        nilpotent_check(),
        homomorphism_check(),
        orthogonality_suite(),
        decomposition_check(),
        conjugation_check(),
        coset_eta_check(),
        psi_chart_check(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_rational_function, CRational};
    use crate::twistor::{chart_transition, Chart, TwistorPoint};

    #[test]
    fn suite_passes() {
        let all = verify_all();
        assert_eq!(all.len(), 7);
        for c in &all {
            assert!(c.pass, "{c:?}");
        }
    }

    #[test]
    fn h_matrix_examples() {
        let o = GroupPoint::<CRational>::origin();
        assert!(h_matrix(&o).is_identity());
        let ctx = Context::heisenberg();
        let g = heis_point(&ctx);
        let h = h_matrix(&g);
        assert_eq!(*h.get(3, 0), parse_rational_function("-y00p*y10p", &ctx).unwrap());
        assert_eq!(h_matrix_coordinates(&h).to_array(), g.to_array());
    }

    #[test]
    fn masks_disjoint_from_complements() {
        for i in 0..6 {
            for j in 0..6 {
                assert!(!(P_MASK[i][j] && H_ALG_MASK[i][j]));
                assert!(!(Q_MASK[i][j] && N_ALG_MASK[i][j]));
                assert!(!(R_MASK[i][j] && M_ALG_MASK[i][j]));
                assert_eq!(R_MASK[i][j], P_MASK[i][j] && Q_MASK[i][j]);
            }
        }
    }

    #[test]
    fn psi_transition_sign() {
        let q = |n: i64| CRational::from_int(n);
        let [a, b, c, z] = psi_transition(&q(1), &q(2), &q(3), &q(2)).unwrap();
        let tw = chart_transition(&TwistorPoint::new(Chart::W, [q(1), q(2), q(3), q(2)])).unwrap();
        assert_eq!((a, b, z), (tw.w0.clone(), tw.w1.clone(), tw.zeta.clone()));
        assert_eq!(c, -tw.w2);
    }

    #[test]
    fn failing_entry_is_reported() {
        let ctx = Context::heisenberg();
        let a = MatRF::identity(&ctx, 6);
        let mut b = a.clone();
        b[(2, 3)] = RationalFunction::int(&ctx, 5);
        assert_eq!(first_mismatch(&a, &b), Some((2, 3)));
    }
}
