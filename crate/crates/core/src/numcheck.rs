//! Floating-point evaluation and a finite-difference oracle for the symbolic
//! field operators.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{Context, RationalFunction};
use crate::heisenberg::{apply_field, coordinate_indices, FieldId};

/// Sampling parameters shared by all numeric checks.
#[derive(Clone, Debug, Serialize)]
pub struct SamplePlan {
    pub count: usize,
    pub seed: u64,
    /// Real and imaginary parts of every coordinate are drawn from
    /// `[-half_width, half_width]`.
    pub half_width: f64,
    pub eps_den: f64,
    pub h: f64,
    pub tau: f64,
}

impl Default for SamplePlan {
    fn default() -> Self {
        Self { count: 100, seed: 0x5eed, half_width: 1.0, eps_den: 1e-6, h: 1e-5, tau: 1e-6 }
    }
}

impl SamplePlan {
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    pub fn draw(&self, rng: &mut ChaCha8Rng, dim: usize) -> Vec<Complex64> {
        let w = self.half_width;
        (0..dim).map(|_| Complex64::new(rng.gen_range(-w..=w), rng.gen_range(-w..=w))).collect()
    }
}

/// `num(p)/den(p)`, rejecting points where some denominator factor is below
/// `eps_den` in modulus.
pub fn evaluate(f: &RationalFunction, p: &[Complex64], eps_den: f64) -> Result<Complex64> {
    let mut den = Complex64::new(1.0, 0.0);
    for (fac, e) in f.den_factors() {
        let v = fac.eval(p);
        if v.norm() <= eps_den {
            return Err(Error::NearSingular(v.norm()));
        }
        den *= v.powu(*e);
    }
    Ok(f.num().eval(p) / den)
}

/// Coefficients of `V` on `∂00', ∂10', ∂01', ∂11', ∂t` at `p`, in Heisenberg
/// coordinate order.
fn field_coefficients(id: FieldId, y: &[Complex64; 5]) -> [Complex64; 5] {
    let one = Complex64::new(1.0, 0.0);
    let z = Complex64::new(0.0, 0.0);
    let [y00, y10, y01, y11, _] = *y;
    match id {
        FieldId::V00 => [one, z, z, z, -y11],
        FieldId::V10 => [z, one, z, z, -y01],
        FieldId::V01 => [z, z, one, z, y10],
        FieldId::V11 => [z, z, z, one, y00],
        FieldId::T => [z, z, z, z, one],
    }
}

/// Finite-difference stencil for `∂/∂z_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Stencil {
    /// Central difference along the real axis, second order.
    RealAxis,
    /// `½(∂_x − i∂_y)` from central differences along both axes. For
    /// holomorphic `f` the `h²` terms cancel, so this is fourth order.
    Wirtinger,
}

/// `∂f/∂z_k` by central differences.
pub fn fd_partial(f: &RationalFunction, p: &[Complex64], k: usize, h: f64, eps_den: f64, stencil: Stencil) -> Result<Complex64> {
    let shift = |d: Complex64| -> Result<Complex64> {
        let mut q = p.to_vec();
        q[k] += d;
        evaluate(f, &q, eps_den)
    };
    let re = (shift(Complex64::new(h, 0.0))? - shift(Complex64::new(-h, 0.0))?) / (2.0 * h);
    if stencil == Stencil::RealAxis {
        return Ok(re);
    }
    let im = (shift(Complex64::new(0.0, h))? - shift(Complex64::new(0.0, -h))?) / (2.0 * h);
    Ok((re - Complex64::i() * im) * 0.5)
}

/// `V f` at `p` through finite differences.
pub fn fd_field(id: FieldId, f: &RationalFunction, p: &[Complex64], h: f64, eps_den: f64, stencil: Stencil) -> Result<Complex64> {
    let idx = coordinate_indices(f.context())?;
    let y = idx.map(|k| p[k]);
    let coeffs = field_coefficients(id, &y);
    let mut acc = Complex64::new(0.0, 0.0);
    for (c, k) in coeffs.iter().zip(idx) {
        if *c != Complex64::new(0.0, 0.0) {
            acc += c * fd_partial(f, p, k, h, eps_den, stencil)?;
        }
    }
    Ok(acc)
}

pub fn relative_error(fd: Complex64, sym: Complex64) -> f64 {
    (fd - sym).norm() / sym.norm().max(1.0)
}

/// Outcome of a sampled comparison.
#[derive(Clone, Debug, Serialize)]
pub struct NumericOutcome {
    pub max_rel_error: f64,
    pub accepted: usize,
    pub rejected: usize,
}

impl NumericOutcome {
    pub fn within(&self, tau: f64) -> bool {
        self.accepted > 0 && self.max_rel_error <= tau
    }
}

fn symbolic_and_fd(id: FieldId, f: &RationalFunction, vf: &RationalFunction, p: &[Complex64], plan: &SamplePlan) -> Result<f64> {
    // guard every evaluation point used by the stencil
    let guard = plan.eps_den.max(10.0 * plan.h);
    evaluate(f, p, guard)?;
    let sym = evaluate(vf, p, plan.eps_den)?;
    let fd = fd_field(id, f, p, plan.h, plan.eps_den, Stencil::Wirtinger)?;
    Ok(relative_error(fd, sym))
}

/// Largest relative error between finite differences and [`apply_field`]
/// over `plan.count` accepted points.
pub fn fd_field_check(id: FieldId, f: &RationalFunction, plan: &SamplePlan) -> Result<NumericOutcome> {
    let vf = apply_field(id, f)?;
    let mut rng = plan.rng();
    let (mut accepted, mut rejected, mut worst) = (0usize, 0usize, 0f64);
    let max_draws = plan.count * 20 + 100;
    while accepted < plan.count && accepted + rejected < max_draws {
        let p = plan.draw(&mut rng, f.context().len());
        match symbolic_and_fd(id, f, &vf, &p, plan) {
            Ok(e) => {
                accepted += 1;
                worst = worst.max(e);
            }
            Err(Error::NearSingular(_)) => rejected += 1,
            Err(e) => return Err(e),
        }
    }
    if accepted == 0 {
        return Err(Error::AllSamplesRejected(rejected));
    }
    Ok(NumericOutcome { max_rel_error: worst, accepted, rejected })
}

/// Compares two rational functions at sampled points.
pub fn numeric_identity_check(lhs: &RationalFunction, rhs: &RationalFunction, plan: &SamplePlan) -> Result<NumericOutcome> {
    lhs.context().check_same(rhs.context())?;
    let mut rng = plan.rng();
    let (mut accepted, mut rejected, mut worst) = (0usize, 0usize, 0f64);
    while accepted < plan.count && accepted + rejected < plan.count * 20 + 100 {
        let p = plan.draw(&mut rng, lhs.context().len());
        match (evaluate(lhs, &p, plan.eps_den), evaluate(rhs, &p, plan.eps_den)) {
            (Ok(a), Ok(b)) => {
                accepted += 1;
                worst = worst.max(relative_error(a, b));
            }
            (Err(Error::NearSingular(_)), _) | (_, Err(Error::NearSingular(_))) => rejected += 1,
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    }
    if accepted == 0 {
        return Err(Error::AllSamplesRejected(rejected));
    }
    Ok(NumericOutcome { max_rel_error: worst, accepted, rejected })
}

/// The five functions used by the finite-difference oracle.
pub fn oracle_functions(ctx: &Context) -> Result<Vec<(&'static str, RationalFunction)>> {
    use crate::exactalg::parse_rational_function as p;
    Ok(vec![
        ("y00p^2", p("y00p^2", ctx)?),
        ("t", p("t", ctx)?),
        ("phi_inst", crate::ansatz::phi_inst(ctx)?),
        ("cubic", p("y10p*y01p*t + y11p^3 - 2*y00p*t^2", ctx)?),
        ("rational", p("y00p/(3 + t^2 + y10p*y11p)", ctx)?),
    ])
}

/// Least-squares slope of `log err` against `log h` for `h` log-spaced in
/// `[h_min, h_max]`.
pub fn convergence_slope(
    id: FieldId,
    f: &RationalFunction,
    p: &[Complex64],
    (h_max, h_min, steps): (f64, f64, usize),
    stencil: Stencil,
) -> Result<f64> {
    let sym = evaluate(&apply_field(id, f)?, p, 0.0)?;
    let mut pts = Vec::with_capacity(steps);
    for j in 0..steps {
        let frac = j as f64 / (steps - 1) as f64;
        let h = h_max * (h_min / h_max).powf(frac);
        let err = (fd_field(id, f, p, h, 0.0, stencil)? - sym).norm();
        if err > 0.0 {
            pts.push((h.ln(), err.ln()));
        }
    }
    if pts.len() < 2 {
        return Err(Error::Invalid("finite differences exact at every step".into()));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    Ok(sxy / sxx)
}

/// Median convergence slope of `V11'` on `φ_inst` over sampled points, with
/// `h` from `1e-1` to `1e-3`.
pub fn inst_convergence_slope(plan: &SamplePlan, points: usize, stencil: Stencil) -> Result<f64> {
    let ctx = Context::heisenberg();
    let f = crate::ansatz::phi_inst(&ctx)?;
    let mut rng = plan.rng();
    let mut slopes = Vec::new();
    let mut draws = 0;
    while slopes.len() < points && draws < points * 50 {
        draws += 1;
        let p = plan.draw(&mut rng, 5);
        // keep the stencil well inside the domain of analyticity
        if evaluate(&f, &p, 0.0).map(|v| v.norm() > 1.0).unwrap_or(true) {
            continue;
        }
        slopes.push(convergence_slope(FieldId::V11, &f, &p, (1e-1, 1e-3, 9), stencil)?);
    }
    if slopes.is_empty() {
        return Err(Error::AllSamplesRejected(draws));
    }
    slopes.sort_by(|a, b| a.total_cmp(b));
    Ok(slopes[slopes.len() / 2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_rational_function;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn evaluate_examples() {
        let ctx = Context::heisenberg();
        let f = crate::ansatz::phi_inst(&ctx).unwrap();
        let v = evaluate(&f, &[c(1.0), c(0.0), c(0.0), c(1.0), c(0.0)], 1e-6).unwrap();
        assert!((v - c(1.0)).norm() < 1e-15);
        let near = evaluate(&f, &[c(1.0), c(0.0), c(0.0), c(1.0), c(1.0 + 1e-9)], 1e-6);
        assert!(matches!(near, Err(Error::NearSingular(_))));
        let g = parse_rational_function("3 + y00p*t", &ctx).unwrap();
        assert_eq!(evaluate(&g, &[c(0.0); 5], 1e-6).unwrap(), c(3.0));
    }

    #[test]
    fn fd_examples() {
        let ctx = Context::heisenberg();
        let plan = SamplePlan { count: 20, ..SamplePlan::default() };
        for (name, f) in oracle_functions(&ctx).unwrap() {
            for id in FieldId::ALL {
                let out = fd_field_check(id, &f, &plan).unwrap();
                assert!(out.within(plan.tau), "{name} {id}: {out:?}");
            }
        }
    }

    #[test]
    fn slope_near_two() {
        let s = inst_convergence_slope(&SamplePlan::default(), 5, Stencil::RealAxis).unwrap();
        assert!((s - 2.0).abs() <= 0.3, "slope {s}");
        let w = inst_convergence_slope(&SamplePlan::default(), 5, Stencil::Wirtinger).unwrap();
        assert!((w - 4.0).abs() <= 0.5, "slope {w}");
    }
}
