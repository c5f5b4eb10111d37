//! Acceptance criteria. Prints one line per criterion and exits non-zero on
//! any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use h5::ansatz::{birkhoff_identity_check, build_connection, gamma_recursion, h_connection_check, phi_inst, HarmonicSeed};
use h5::exactalg::{CRational, Context, MatRF, MultiPoly, RationalFunction};
use h5::gauge::{asd_residuals, gauge_transform, is_asd, random_polynomial_connection};
use h5::heisenberg::{apply_commutator, apply_field, bracket_table, generic_quadratic, sub_laplacian, FieldId};
use h5::numcheck::{fd_field_check, inst_convergence_slope, oracle_functions, SamplePlan, Stencil};
use h5::realslice::{
    fiber_uniqueness_certificate, phi_real, real_sub_laplacian, s_basis, star_contract, two_path_check,
};
use h5::twistor::{alpha_roundtrip_symbolic, diagram_check, tangency_certificate, TransitionVariant};
use h5::{so6model, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed;
const CRIT1_LIMIT: Duration = Duration::from_secs(1);
const CRIT2_LIMIT: Duration = Duration::from_secs(5);
const CRIT8_LIMIT: Duration = Duration::from_secs(30);
const FD_POINTS: usize = 100;
const FD_TOL: f64 = 1e-6;
const SLOPE_TARGET: f64 = 2.0;
const SLOPE_TOL: f64 = 0.3;

type Outcome = Result<(bool, String)>;

fn rational_constant(ctx: &Context, g: &mut ChaCha8Rng) -> RationalFunction {
    RationalFunction::constant(ctx, CRational::ratio(g.gen_range(-7..=7), g.gen_range(1..=5)))
}

fn c1_harmonicity() -> Outcome {
    let phi = phi_inst(&Context::heisenberg())?;
    let t = Instant::now();
    let lap = sub_laplacian(&phi)?;
    let el = t.elapsed();
    Ok((lap.is_zero() && el < CRIT1_LIMIT, format!("Delta_b phi = {lap}, {el:.2?} (limit {CRIT1_LIMIT:?})")))
}

fn c2_asd_construction() -> Outcome {
    let ctx = Context::heisenberg();
    let seed = HarmonicSeed::from_spec("inst")?;
    let mut g = ChaCha8Rng::seed_from_u64(SEED);
    let phit = MatRF::from_fn(2, 2, |_, _| rational_constant(&ctx, &mut g));
    let t = Instant::now();
    let zero_t = asd_residuals(&build_connection(&seed, None)?)?.is_zero();
    let rand_t = asd_residuals(&build_connection(&seed, Some(phit))?)?.is_zero();
    let el = t.elapsed();
    Ok((
        zero_t && rand_t && el < CRIT2_LIMIT,
        format!("Phi_T = 0: {zero_t}, random constant Phi_T: {rand_t}, {el:.2?} (limit {CRIT2_LIMIT:?})"),
    ))
}

fn c3_brackets() -> Outcome {
    let q = generic_quadratic();
    let tq = apply_field(FieldId::T, &q)?;
    let mut n = 0;
    let mut bad = Vec::new();
    for (i, a) in FieldId::ALL.iter().enumerate() {
        for b in &FieldId::ALL[i + 1..] {
            n += 1;
            if apply_commutator(*a, *b, &q)? != tq.scale(&CRational::from_int(bracket_table(*a, *b))) {
                bad.push(format!("[{a},{b}]"));
            }
        }
    }
    Ok((bad.is_empty() && n == 10, format!("{n} relations on a quadratic with {} terms; failing {bad:?}", q.terms().count())))
}

fn c4_twistor() -> Outcome {
    let tang = tangency_certificate()?.iter().all(|c| c.pass);
    let diag = diagram_check(TransitionVariant::Derived)?.iter().all(|c| c.pass);
    let printed = diagram_check(TransitionVariant::Printed)?.iter().all(|c| c.pass);
    let alpha = alpha_roundtrip_symbolic()?;
    Ok((
        tang && diag && alpha && !printed,
        format!("tangency {tang}, diagram {diag}, alpha roundtrip {alpha}, printed variant rejected {}", !printed),
    ))
}

fn c5_gamma() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for spec in ["t", "y00p"] {
        let seed = HarmonicSeed::from_spec(spec)?;
        let chain = gamma_recursion(&seed, 2)?;
        let rec = chain.satisfies_recursion()?;
        let h = h_connection_check(&seed, &chain)?;
        ok &= rec && h;
        notes.push(format!("{spec}: recursion {rec}, h-connection {h}"));
    }
    Ok((ok, notes.join("; ")))
}

fn c6_birkhoff() -> Outcome {
    let b = birkhoff_identity_check();
    Ok((b.all_pass(), if b.failures.is_empty() { "identity and inverse displays exact".into() } else { b.failures.join("; ") }))
}

fn c7_real_slice() -> Outcome {
    let rctx = Context::real();
    let (sd, asd) = s_basis();
    let mut eig = 0;
    for (k, f) in sd.iter().chain(asd.iter()).enumerate() {
        let sign = if k < 3 { 1 } else { -1 };
        if star_contract(f) == f.scale(&RationalFunction::int(&rctx, sign)) {
            eig += 1;
        }
    }
    let mut conns = vec![build_connection(&HarmonicSeed::from_spec("inst")?, None)?];
    for s in 0..3 {
        conns.push(random_polynomial_connection(&Context::heisenberg(), 2, SEED + 100 + s)?);
    }
    let mut paths = 0;
    for phi in &conns {
        if two_path_check(phi)? {
            paths += 1;
        }
    }
    let lap = real_sub_laplacian(&phi_real())?.is_zero();
    let fiber = fiber_uniqueness_certificate()?;
    Ok((
        eig == 6 && paths == conns.len() && lap && fiber,
        format!("eigen {eig}/6, two-path {paths}/{}, Delta_b phi_R = 0 {lap}, fiber determinant {fiber}", conns.len()),
    ))
}

fn c8_so6() -> Outcome {
    let t = Instant::now();
    let checks = so6model::verify_all();
    let el = t.elapsed();
    let bad: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name).collect();
    Ok((
        bad.is_empty() && checks.len() == 7 && el < CRIT8_LIMIT,
        format!("{} checks, failing {bad:?}, {el:.2?} (limit {CRIT8_LIMIT:?})", checks.len()),
    ))
}

fn c9_numeric() -> Outcome {
    let plan = SamplePlan { count: FD_POINTS, tau: FD_TOL, ..SamplePlan::default() };
    let mut worst = 0f64;
    let mut short = 0;
    let funcs = oracle_functions(&Context::heisenberg())?;
    for (_, f) in &funcs {
        for id in FieldId::ALL {
            let out = fd_field_check(id, f, &plan)?;
            if out.accepted < FD_POINTS {
                short += 1;
            }
            worst = worst.max(out.max_rel_error);
        }
    }
    let slope = inst_convergence_slope(&plan, 7, Stencil::RealAxis)?;
    Ok((
        worst <= FD_TOL && short == 0 && funcs.len() == 5 && (slope - SLOPE_TARGET).abs() <= SLOPE_TOL,
        format!("max rel error {worst:.2e} (tol {FD_TOL:.0e}), slope {slope:.3} (target {SLOPE_TARGET} +- {SLOPE_TOL})"),
    ))
}

fn c10_covariance() -> Outcome {
    let ctx = Context::heisenberg();
    let mut g = ChaCha8Rng::seed_from_u64(SEED ^ 10);
    let phi = build_connection(&HarmonicSeed::from_spec("inst")?, None)?;
    let one = RationalFunction::one(&ctx);
    let zero = RationalFunction::zero(&ctx);
    let mut kept = 0;
    for _ in 0..3 {
        let mut lin = || -> Result<RationalFunction> {
            let mono: Vec<u16> = (0..5).map(|_| g.gen_range(0..=1)).collect();
            let num = MultiPoly::monomial(&ctx, mono, CRational::ratio(g.gen_range(1..=4), 1));
            let den = MultiPoly::constant(&ctx, CRational::from_int(1)) + MultiPoly::monomial(&ctx, vec![0, 0, 0, 0, 2], CRational::from_int(1));
            RationalFunction::from_parts(num, den)
        };
        let (u, w) = (lin()?, lin()?);
        let gm = MatRF::from_rows(vec![vec![one.clone(), u], vec![zero.clone(), one.clone()]])?
            .mul(&MatRF::from_rows(vec![vec![one.clone(), zero.clone()], vec![w, one.clone()]])?)?;
        if is_asd(&gauge_transform(&phi, &gm)?)? {
            kept += 1;
        }
    }
    Ok((kept == 3, format!("ASD preserved under {kept}/3 rational gauge transformations")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("harmonicity of the instanton seed", c1_harmonicity),
        ("ASD construction", c2_asd_construction),
        ("bracket relations", c3_brackets),
        ("twistor suite", c4_twistor),
        ("gamma recursion", c5_gamma),
        ("Birkhoff identity", c6_birkhoff),
        ("real slice", c7_real_slice),
        ("SO(6) model", c8_so6),
        ("numeric oracle", c9_numeric),
        ("gauge covariance", c10_covariance),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let (pass, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
        if !pass {
            failed += 1;
        }
        println!("criterion {:>2} {:<36} {}  {detail}", k + 1, name, if pass { "PASS" } else { "FAIL" });
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
