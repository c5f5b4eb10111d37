//! Matrix-valued connection forms, curvature, and the ASD equations.

use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactalg::{CRational, Context, MatRF, MultiPoly, RationalFunction, Scalar};
use crate::heisenberg::{apply_field, bracket_table, FieldId};

/// `Φ = Σ Φ_{AA'} θ^{AA'} + Φ_T θ` with `n×n` blocks in field order.
#[derive(Clone, Debug)]
pub struct ConnectionForm {
    blocks: [MatRF; 5],
}

impl ConnectionForm {
    pub fn new(blocks: [MatRF; 5]) -> Result<Self> {
        let n = blocks[0].rows();
        let ctx = blocks[0].context().clone();
        for b in &blocks {
            if !b.is_square() || b.rows() != n {
                return Err(Error::RankMismatch { expected: n, found: b.rows().max(b.cols()) });
            }
            ctx.check_same(b.context())?;
        }
        Ok(Self { blocks })
    }

    pub fn zero(ctx: &Context, n: usize) -> Self {
        let z = MatRF::zero(ctx, n, n);
        Self { blocks: [z.clone(), z.clone(), z.clone(), z.clone(), z] }
    }

    /// Only the `θ` component is nonzero.
    pub fn pure_theta(phi_t: MatRF) -> Self {
        let z = MatRF::zero(phi_t.context(), phi_t.rows(), phi_t.rows());
        Self { blocks: [z.clone(), z.clone(), z.clone(), z, phi_t] }
    }

    pub fn rank(&self) -> usize {
        self.blocks[0].rows()
    }

    pub fn context(&self) -> &Context {
        self.blocks[0].context()
    }

    pub fn block(&self, id: FieldId) -> &MatRF {
        &self.blocks[id.index()]
    }

    pub fn blocks(&self) -> &[MatRF; 5] {
        &self.blocks
    }

    pub fn with_block(mut self, id: FieldId, m: MatRF) -> Result<Self> {
        self.blocks[id.index()] = m;
        Self::new(self.blocks)
    }

    pub fn phi_t(&self) -> &MatRF {
        self.block(FieldId::T)
    }

    /// Same horizontal part, new `θ` coefficient.
    pub fn with_phi_t(&self, phi_t: MatRF) -> Result<Self> {
        self.clone().with_block(FieldId::T, phi_t)
    }

    pub fn map_blocks(&self, mut f: impl FnMut(&MatRF) -> Result<MatRF>) -> Result<Self> {
        let b = &self.blocks;
        Self::new([f(&b[0])?, f(&b[1])?, f(&b[2])?, f(&b[3])?, f(&b[4])?])
    }
}

impl Serialize for ConnectionForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ConnectionForm", 6)?;
        st.serialize_field("rank", &self.rank())?;
        st.serialize_field("phi00p", &self.blocks[0])?;
        st.serialize_field("phi10p", &self.blocks[1])?;
        st.serialize_field("phi01p", &self.blocks[2])?;
        st.serialize_field("phi11p", &self.blocks[3])?;
        st.serialize_field("phiT", &self.blocks[4])?;
        st.end()
    }
}

/// Entrywise application of a left-invariant field.
pub fn apply_field_mat(id: FieldId, m: &MatRF) -> Result<MatRF> {
    m.try_map(|e| apply_field(id, e))
}

/// `F(X, Y) = XΦ_Y − YΦ_X − c(X,Y)·Φ_T + [Φ_X, Φ_Y]` where `[X, Y] = c(X,Y)·T`.
pub fn curvature(phi: &ConnectionForm, x: FieldId, y: FieldId) -> Result<MatRF> {
    let (px, py) = (phi.block(x), phi.block(y));
    let mut f = apply_field_mat(x, py)?.sub(&apply_field_mat(y, px)?)?;
    let c = bracket_table(x, y);
    if c != 0 {
        let k = RationalFunction::int(phi.context(), c);
        f = f.sub(&phi.phi_t().scale(&k))?;
    }
    f.add(&px.commutator(py)?)
}

/// The three left-hand sides of the ASD system.
#[derive(Clone, Debug)]
pub struct AsdResidual {
    pub r1: MatRF,
    pub r2: MatRF,
    pub r3: MatRF,
}

impl AsdResidual {
    pub fn is_zero(&self) -> bool {
        self.r1.is_zero() && self.r2.is_zero() && self.r3.is_zero()
    }

    pub fn as_array(&self) -> [&MatRF; 3] {
        [&self.r1, &self.r2, &self.r3]
    }

    /// Conjugates each residual: `g⁻¹·R·g`.
    pub fn conjugate(&self, g: &MatRF) -> Result<Self> {
        let gi = g.inverse()?;
        let c = |m: &MatRF| gi.mul(m)?.mul(g);
        Ok(Self { r1: c(&self.r1)?, r2: c(&self.r2)?, r3: c(&self.r3)? })
    }

    pub fn equals(&self, o: &Self) -> bool {
        self.r1.equals(&o.r1) && self.r2.equals(&o.r2) && self.r3.equals(&o.r3)
    }
}

/// `R1 = F(V00',V10')`, `R2 = F(V00',V11') + F(V01',V10')`, `R3 = F(V01',V11')`.
pub fn asd_residuals(phi: &ConnectionForm) -> Result<AsdResidual> {
    use FieldId::*;
    Ok(AsdResidual {
        r1: curvature(phi, V00, V10)?,
        r2: curvature(phi, V00, V11)?.add(&curvature(phi, V01, V10)?)?,
        r3: curvature(phi, V01, V11)?,
    })
}

pub fn is_asd(phi: &ConnectionForm) -> Result<bool> {
    Ok(asd_residuals(phi)?.is_zero())
}

/// A finite Laurent polynomial in ζ with matrix coefficients.
#[derive(Clone, Debug)]
pub struct ZetaMatPoly {
    pub coeffs: BTreeMap<i32, MatRF>,
}

impl ZetaMatPoly {
    pub fn coeff(&self, k: i32) -> Option<&MatRF> {
        self.coeffs.get(&k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(MatRF::is_zero)
    }

    /// Realizes the polynomial entrywise in a context carrying `(zeta, zetainv)`.
    pub fn to_symbolic(&self, target: &Context) -> Result<MatRF> {
        let z = RationalFunction::var(target, "zeta")?;
        let zi = RationalFunction::var(target, "zetainv")?;
        let (n, m) = self.coeffs.values().next().map(|c| (c.rows(), c.cols())).unwrap_or((1, 1));
        let mut acc = MatRF::zero(target, n, m);
        for (k, c) in &self.coeffs {
            let mono = if *k >= 0 { z.pow(*k)? } else { zi.pow(-*k)? };
            let lifted = c.try_map(|e| e.embed_into(target))?;
            acc = acc.add(&lifted.scale(&mono))?;
        }
        Ok(acc)
    }
}

/// `ζ²F(V00',V10') − ζ(F(V00',V11') + F(V01',V10')) + F(V01',V11')`, the
/// curvature along the α-surface of parameter ζ.
pub fn zeta_flatness(phi: &ConnectionForm) -> Result<ZetaMatPoly> {
    let r = asd_residuals(phi)?;
    let mut coeffs = BTreeMap::new();
    coeffs.insert(2, r.r1);
    coeffs.insert(1, r.r2.neg());
    coeffs.insert(0, r.r3);
    Ok(ZetaMatPoly { coeffs })
}

/// The same curvature computed directly as `F(X, Y)` with
/// `X = ζV00' − V01'`, `Y = ζV10' − V11'`, in the context extended by the
/// Laurent pair `(zeta, zetainv)`. `[X, Y] = 0`, so no `Φ_T` term enters.
pub fn zeta_flatness_direct(phi: &ConnectionForm) -> Result<(Context, MatRF)> {
    let ctx = phi.context().clone();
    let mut names: Vec<String> = ctx.names().to_vec();
    names.extend(["zeta".to_string(), "zetainv".to_string()]);
    let big = Context::with_laurent(&names, &[("zeta", "zetainv")]);
    let lifted = phi.map_blocks(|m| m.try_map(|e| e.embed_into(&big)))?;
    let z = RationalFunction::var(&big, "zeta")?;
    use FieldId::*;
    let comb = |a: FieldId, b: FieldId, m: &dyn Fn(FieldId) -> Result<MatRF>| -> Result<MatRF> {
        m(a)?.scale(&z).sub(&m(b)?)
    };
    let blk = |id: FieldId| Ok(lifted.block(id).clone());
    let px = comb(V00, V01, &blk)?;
    let py = comb(V10, V11, &blk)?;
    let xpy = comb(V00, V01, &|id| apply_field_mat(id, &py))?;
    let ypx = comb(V10, V11, &|id| apply_field_mat(id, &px))?;
    let f = xpy.sub(&ypx)?.add(&px.commutator(&py)?)?;
    Ok((big, f))
}

/// `Φ_X ↦ g⁻¹Φ_X g + g⁻¹(Xg)` for every field `X`.
pub fn gauge_transform(phi: &ConnectionForm, g: &MatRF) -> Result<ConnectionForm> {
    if g.rows() != phi.rank() || !g.is_square() {
        return Err(Error::RankMismatch { expected: phi.rank(), found: g.rows() });
    }
    let gi = g.inverse()?;
    let mut blocks = Vec::with_capacity(5);
    for id in FieldId::ALL {
        let conj = gi.mul(phi.block(id))?.mul(g)?;
        let inh = gi.mul(&apply_field_mat(id, g)?)?;
        blocks.push(conj.add(&inh)?);
    }
    let blocks: [MatRF; 5] = blocks.try_into().expect("five blocks");
    ConnectionForm::new(blocks)
}

/// Diagonal matrix helper.
pub fn diag(entries: &[RationalFunction]) -> MatRF {
    let z = entries[0].zero_like();
    MatRF::from_fn(entries.len(), entries.len(), |i, j| if i == j { entries[i].clone() } else { z.clone() })
}

/// A connection whose block entries are random polynomials of degree at most
/// two with small integer coefficients.
pub fn random_polynomial_connection(ctx: &Context, n: usize, seed: u64) -> Result<ConnectionForm> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let vars = ctx.len();
    let entry = |rng: &mut rand_chacha::ChaCha8Rng| {
        let mut p = MultiPoly::zero(ctx);
        for _ in 0..3 {
            let mut mono = vec![0u16; vars];
            for _ in 0..rng.gen_range(0..=2) {
                mono[rng.gen_range(0..vars)] += 1;
            }
            let c = rng.gen_range(-3i64..=3);
            p = &p + &MultiPoly::monomial(ctx, mono, CRational::from_int(c));
        }
        RationalFunction::from_poly(p)
    };
    let blocks: Vec<MatRF> = (0..5).map(|_| MatRF::from_fn(n, n, |_, _| entry(&mut rng))).collect();
    ConnectionForm::new(blocks.try_into().expect("five blocks"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_rational_function;

    fn ctx() -> Context {
        Context::heisenberg()
    }

    fn rf(s: &str) -> RationalFunction {
        parse_rational_function(s, &ctx()).unwrap()
    }

    fn scalar_conn(entries: [&str; 5]) -> ConnectionForm {
        ConnectionForm::new(entries.map(|s| MatRF::from_rows(vec![vec![rf(s)]]).unwrap())).unwrap()
    }

    #[test]
    fn zero_connection_is_flat() {
        let phi = ConnectionForm::zero(&ctx(), 2);
        for a in FieldId::ALL {
            for b in FieldId::ALL {
                assert!(curvature(&phi, a, b).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn pure_theta_curvature() {
        let phi = scalar_conn(["0", "0", "0", "0", "3"]);
        assert!(curvature(&phi, FieldId::V00, FieldId::V11).unwrap().equals(&MatRF::from_ints(&ctx(), &[&[-6]]).unwrap()));
        assert!(curvature(&phi, FieldId::V01, FieldId::V10).unwrap().equals(&MatRF::from_ints(&ctx(), &[&[6]]).unwrap()));
        assert!(asd_residuals(&phi).unwrap().is_zero());
        assert!(zeta_flatness(&phi).unwrap().is_zero());
    }

    #[test]
    fn non_asd_example() {
        let phi = scalar_conn(["y10p", "0", "0", "0", "0"]);
        let r = asd_residuals(&phi).unwrap();
        assert_eq!(*r.r1.get(0, 0), rf("-1"));
        assert_eq!(*zeta_flatness(&phi).unwrap().coeff(2).unwrap().get(0, 0), rf("-1"));
    }

    #[test]
    fn direct_route_matches_coefficients() {
        let phi = scalar_conn(["y10p*t", "y00p^2", "t", "y11p*y01p", "y00p"]);
        let (big, direct) = zeta_flatness_direct(&phi).unwrap();
        let via = zeta_flatness(&phi).unwrap().to_symbolic(&big).unwrap();
        assert!(direct.equals(&via));
    }

    #[test]
    fn gauge_by_diag_t() {
        let phi = ConnectionForm::zero(&ctx(), 2);
        let g = diag(&[rf("t"), rf("1")]);
        let out = gauge_transform(&phi, &g).unwrap();
        assert!(out.block(FieldId::V00).equals(&diag(&[rf("-y11p/t"), rf("0")])));
    }
}
