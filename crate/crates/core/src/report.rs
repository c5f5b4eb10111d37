//! Verification suites and machine-readable reports.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ansatz::{
    birkhoff_identity_check, build_connection, gamma_recursion, h_connection_check, lambda_closedness_check, phi_inst,
    psi_chain_rule_check, Direction, HarmonicSeed,
};
use crate::error::{Error, Result};
use crate::exactalg::{parse_rational_function, CRational, Context, MatRF, MultiPoly, RationalFunction};
use crate::gauge::{asd_residuals, curvature, gauge_transform, is_asd, random_polynomial_connection, zeta_flatness, zeta_flatness_direct, ConnectionForm};
use crate::heisenberg::{
    apply_commutator, apply_field, bracket_table, d0, d0_form, d1, d1_form, dilation, generic_quadratic, group_inverse,
    group_mul, pullback_left, sub_laplacian, FieldId, GroupPoint,
};
use crate::numcheck::{fd_field_check, inst_convergence_slope, oracle_functions, SamplePlan, Stencil};
use crate::{realslice, so6model, twistor};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Heisenberg,
    Gauge,
    Ansatz,
    Twistor,
    Realslice,
    So6,
    All,
}

impl Suite {
    pub const MODULES: [Suite; 7] =
        [Suite::Algebra, Suite::Heisenberg, Suite::Gauge, Suite::Ansatz, Suite::Twistor, Suite::Realslice, Suite::So6];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Heisenberg => "heisenberg",
            Suite::Gauge => "gauge",
            Suite::Ansatz => "ansatz",
            Suite::Twistor => "twistor",
            Suite::Realslice => "realslice",
            Suite::So6 => "so6",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::MODULES
            .iter()
            .chain([Suite::All].iter())
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::Invalid(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    ExactPass,
    NumericPass,
    Fail,
}

impl Status {
    pub fn passed(self) -> bool {
        self != Status::Fail
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::ExactPass => "exact-pass",
            Status::NumericPass => "numeric-pass",
            Status::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub id: String,
    pub status: Status,
    pub detail: String,
    pub anchor: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Erratum {
    pub id: &'static str,
    pub note: &'static str,
}

/// Corrections applied where a printed formula fails its own consistency
/// checks.
pub const ERRATA: [Erratum; 8] = [
    Erratum {
        id: "chart-transition",
        note: "third component of the W to W-tilde transition is w2 + 2*w0*w1/zeta; a w1*w2 cross term breaks the commutative diagram",
    },
    Erratum {
        id: "wtilde-alpha-plane",
        note: "alpha-plane in the W-tilde chart: y01' = w~0 - zeta~*s0, y11' = w~1 - zeta~*s1, t = w~2 - (w~0*s1 + s0*w~1)",
    },
    Erratum {
        id: "star-contraction-field",
        note: "SD/ASD split uses iota_R * with R = d/ds; with T = i*d/ds the eigenvalues become +-i",
    },
    Erratum {
        id: "hv-split-contact-form",
        note: "H/V split uses the contact form theta with theta(T) = 1; dx1^ds is purely vertical only on the s-axis",
    },
    Erratum {
        id: "so6-chart-transition",
        note: "SO(6) chart transition is (x/zeta, -t - 2*x1*x2/zeta, 1/zeta), the twistor transition up to the sign of the third component",
    },
    Erratum { id: "gamma-minus-one", note: "for phi = y00' the recursion gives gamma_{-1} = y01' and gamma_1 = 0" },
    Erratum {
        id: "nonharmonic-seed",
        note: "|y|^2 + t is not sub-harmonic; y00'*y11' (Delta_b = 1) is the rejected seed, y00'^2 is harmonic",
    },
    Erratum {
        id: "fd-stencil-order",
        note: "the averaged real/imaginary central difference is fourth order on holomorphic functions; the slope-2 check uses the real-axis stencil",
    },
];

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub suite: String,
    pub seed: u64,
    pub samples: usize,
    pub tolerance: f64,
    pub fd_step: f64,
    pub passed: bool,
    pub entries: Vec<Entry>,
    pub errata: Vec<Erratum>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("suite {} (schema {}, h5 {}, seed {})\n", self.suite, self.schema, self.version, self.seed);
        for e in &self.entries {
            s.push_str(&format!("{:<13} {}: {}\n", e.status.label(), e.id, e.detail));
        }
        let fails = self.failures().count();
        s.push_str(&format!("{} checks, {} failed\n", self.entries.len(), fails));
        s
    }
}

/// Options shared by every suite.
#[derive(Clone, Debug)]
pub struct Options {
    pub plan: SamplePlan,
    pub timings: bool,
    /// Check ids that are forced to fail, for harness tests.
    pub inject_fault: Vec<String>,
}

impl Default for Options {
    fn default() -> Self {
        Self { plan: SamplePlan::default(), timings: false, inject_fault: Vec::new() }
    }
}

type Outcome = Result<(Status, String)>;

struct Runner<'a> {
    opts: &'a Options,
    entries: Vec<Entry>,
    timings: BTreeMap<String, f64>,
}

fn exact(pass: bool, detail: impl Into<String>) -> Outcome {
    Ok((if pass { Status::ExactPass } else { Status::Fail }, detail.into()))
}

fn numeric(pass: bool, detail: impl Into<String>) -> Outcome {
    Ok((if pass { Status::NumericPass } else { Status::Fail }, detail.into()))
}

impl<'a> Runner<'a> {
    fn check(&mut self, id: &str, anchor: &str, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let (status, detail) = match f() {
            Ok(v) => v,
            Err(e) => (Status::Fail, format!("error: {e}")),
        };
        let (status, detail) = if self.opts.inject_fault.iter().any(|x| x == id) {
            (Status::Fail, format!("injected fault (was {}: {detail})", status.label()))
        } else {
            (status, detail)
        };
        self.timings.insert(id.to_string(), start.elapsed().as_secs_f64() * 1e3);
        self.entries.push(Entry { id: id.to_string(), status, detail, anchor: anchor.to_string() });
    }
}

fn rng(opts: &Options, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(opts.plan.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn random_poly(ctx: &Context, rng: &mut ChaCha8Rng, terms: usize, max_deg: u16) -> MultiPoly {
    let mut p = MultiPoly::zero(ctx);
    for _ in 0..terms {
        let mono: Vec<u16> = (0..ctx.len()).map(|_| rng.gen_range(0..=max_deg)).collect();
        let c = CRational::complex(rng.gen_range(-4..=4), rng.gen_range(-2..=2));
        p = &p + &MultiPoly::monomial(ctx, mono, c);
    }
    p
}

fn random_nonzero_poly(ctx: &Context, rng: &mut ChaCha8Rng, terms: usize, max_deg: u16) -> MultiPoly {
    loop {
        let p = random_poly(ctx, rng, terms, max_deg);
        if !p.is_zero() {
            return p;
        }
    }
}

fn symbolic_point(ctx: &Context, names: [&str; 5]) -> GroupPoint<RationalFunction> {
    GroupPoint::from_array(names.map(|n| RationalFunction::var(ctx, n).expect("symbol")))
}

fn points_equal(a: &GroupPoint<RationalFunction>, b: &GroupPoint<RationalFunction>) -> bool {
    a.to_array().iter().zip(b.to_array()).all(|(x, y)| *x == y)
}

fn heis(s: &str) -> Result<RationalFunction> {
    parse_rational_function(s, &Context::heisenberg())
}

fn algebra(r: &mut Runner) {
    let ctx = Context::new(&["a", "b", "c"]);
    r.check("algebra.ring_axioms", "polynomial ring axioms", || {
        let mut g = rng(r.opts, 1);
        for _ in 0..20 {
            let [x, y, z] = [0; 3].map(|_| random_poly(&ctx, &mut g, 4, 2));
            let ok = &(&x + &y) + &z == &x + &(&y + &z)
                && &x * &y == &y * &x
                && &(&x * &y) * &z == &x * &(&y * &z)
                && &x * &(&y + &z) == &(&x * &y) + &(&x * &z)
                && (&x - &x).is_zero();
            if !ok {
                return exact(false, format!("fails on {x} | {y} | {z}"));
            }
        }
        exact(true, "20 seeded triples")
    });
    r.check("algebra.field_inverse", "rational function field", || {
        let mut g = rng(r.opts, 2);
        for _ in 0..20 {
            let f = RationalFunction::from_parts(random_nonzero_poly(&ctx, &mut g, 3, 2), random_nonzero_poly(&ctx, &mut g, 3, 2))?;
            if &f * &f.inv()? != RationalFunction::one(&ctx) {
                return exact(false, format!("f*f^-1 != 1 for {f}"));
            }
        }
        exact(true, "f*f^-1 = 1 on 20 seeded quotients")
    });
    r.check("algebra.derivative_commutation", "mixed partials", || {
        let mut g = rng(r.opts, 3);
        for _ in 0..10 {
            let f = RationalFunction::from_parts(random_poly(&ctx, &mut g, 3, 2), random_nonzero_poly(&ctx, &mut g, 2, 1))?;
            if f.derivative(0).derivative(1) != f.derivative(1).derivative(0) {
                return exact(false, format!("mixed partials differ on {f}"));
            }
        }
        exact(true, "d_a d_b = d_b d_a on 10 seeded quotients")
    });
    r.check("algebra.display_parse_roundtrip", "expression grammar", || {
        let mut g = rng(r.opts, 4);
        for _ in 0..20 {
            let f = RationalFunction::from_parts(random_poly(&ctx, &mut g, 3, 2), random_nonzero_poly(&ctx, &mut g, 2, 2))?;
            if parse_rational_function(&f.to_string(), &ctx)? != f {
                return exact(false, format!("roundtrip changed {f}"));
            }
        }
        exact(true, "parse(display(f)) = f on 20 seeded quotients")
    });
    r.check("algebra.laurent_pair", "Laurent variables", || {
        let z = Context::heisenberg_zeta();
        let p = parse_rational_function("zeta^3*zetainv^2 - zeta", &z)?;
        exact(p.is_zero() && parse_rational_function("zeta*zetainv", &z)? == RationalFunction::one(&z), "zeta*zetainv = 1")
    });
}

fn heisenberg(r: &mut Runner) {
    r.check("heisenberg.associativity", "group law", || {
        let names: Vec<String> = ["a", "b", "c"].iter().flat_map(|p| (0..5).map(move |k| format!("{p}{k}"))).collect();
        let ctx = Context::new(&names);
        let pt = |p: &str| GroupPoint::from_array([0, 1, 2, 3, 4].map(|k| RationalFunction::var(&ctx, &format!("{p}{k}")).unwrap()));
        let (a, b, c) = (pt("a"), pt("b"), pt("c"));
        exact(points_equal(&group_mul(&group_mul(&a, &b), &c), &group_mul(&a, &group_mul(&b, &c))), "symbolic in 15 symbols")
    });
    r.check("heisenberg.inverse_dilation", "inverse and dilations", || {
        let ctx = Context::new(&["a0", "a1", "a2", "a3", "a4", "b0", "b1", "b2", "b3", "b4", "r"]);
        let a = symbolic_point(&ctx, ["a0", "a1", "a2", "a3", "a4"]);
        let b = symbolic_point(&ctx, ["b0", "b1", "b2", "b3", "b4"]);
        let rr = RationalFunction::var(&ctx, "r")?;
        let inv_ok = group_mul(&a, &group_inverse(&a)).to_array().iter().all(RationalFunction::is_zero);
        let dil_ok = points_equal(&dilation(&group_mul(&a, &b), &rr), &group_mul(&dilation(&a, &rr), &dilation(&b, &rr)));
        exact(inv_ok && dil_ok, "g*g^-1 = 0 and dilations are automorphisms")
    });
    r.check("heisenberg.brackets", "field brackets", || {
        let q = generic_quadratic();
        let t = apply_field(FieldId::T, &q)?;
        let mut bad = Vec::new();
        for (i, a) in FieldId::ALL.iter().enumerate() {
            for b in &FieldId::ALL[i + 1..] {
                let lhs = apply_commutator(*a, *b, &q)?;
                if lhs != t.scale(&CRational::from_int(bracket_table(*a, *b))) {
                    bad.push(format!("[{a},{b}]"));
                }
            }
        }
        exact(bad.is_empty(), if bad.is_empty() { "10 relations on the 15-coefficient quadratic".to_string() } else { bad.join(", ") })
    });
    r.check("heisenberg.left_invariance", "left-invariant fields", || {
        let f = heis("y00p^2*t + y10p*y01p*y11p - 3*t^2 + y11p")?;
        let mut g = rng(r.opts, 5);
        for _ in 0..20 {
            let gp = GroupPoint::from_array([0; 5].map(|_| CRational::ratio(g.gen_range(-5..=5), g.gen_range(1..=3))));
            for id in FieldId::ALL {
                if apply_field(id, &pullback_left(&f, &gp)?)? != pullback_left(&apply_field(id, &f)?, &gp)? {
                    return exact(false, format!("{id} fails at {:?}", gp.to_array()));
                }
            }
        }
        exact(true, "V(f o L_g) = (Vf) o L_g for 20 seeded g")
    });
    r.check("heisenberg.d_squared", "horizontal complex", || {
        let q = RationalFunction::from_poly(generic_quadratic());
        let c = heis("y00p^3*t - y10p*y11p^2 + t^3/(1 + y01p)")?;
        let mut ok = true;
        for f in [q, c] {
            ok &= d0_form(&d0(&f)?)?.is_zero() && d1_form(&d1(&f)?)?.is_zero();
        }
        exact(ok, "d0 d0 = 0 and d1 d1 = 0")
    });
    r.check("heisenberg.inst_harmonic", "sub-Laplacian kernel", || {
        let phi = phi_inst(&Context::heisenberg())?;
        let start = Instant::now();
        let lap = sub_laplacian(&phi)?;
        let ms = start.elapsed().as_secs_f64() * 1e3;
        exact(lap.is_zero(), format!("Delta_b(1/(|y|^4 - t^2)) = {lap} ({ms:.0} ms)"))
    });
    r.check("heisenberg.fd_oracle", "numeric oracle", || {
        let plan = &r.opts.plan;
        let mut worst = 0f64;
        let mut rejected = 0;
        for (name, f) in oracle_functions(&Context::heisenberg())? {
            for id in FieldId::ALL {
                let out = fd_field_check(id, &f, plan)?;
                if out.accepted < plan.count {
                    return numeric(false, format!("{name}/{id}: only {} points accepted", out.accepted));
                }
                worst = worst.max(out.max_rel_error);
                rejected += out.rejected;
            }
        }
        numeric(
            worst <= plan.tau,
            format!("max relative error {worst:.2e} over {} points x 25 pairs ({rejected} rejected), tol {:.0e}", plan.count, plan.tau),
        )
    });
    r.check("heisenberg.fd_convergence", "numeric oracle", || {
        let s = inst_convergence_slope(&r.opts.plan, 7, Stencil::RealAxis)?;
        let w = inst_convergence_slope(&r.opts.plan, 7, Stencil::Wirtinger)?;
        numeric((s - 2.0).abs() <= 0.3, format!("log-log slope {s:.3} (real-axis stencil), {w:.3} (averaged stencil)"))
    });
}

fn constant_matrix(ctx: &Context, g: &mut ChaCha8Rng) -> MatRF {
    MatRF::from_fn(2, 2, |_, _| RationalFunction::constant(ctx, CRational::ratio(g.gen_range(-5..=5), g.gen_range(1..=4))))
}

fn gauge(r: &mut Runner) {
    let ctx = Context::heisenberg();
    r.check("gauge.zero_flat", "curvature", || {
        let phi = ConnectionForm::zero(&ctx, 2);
        let mut ok = true;
        for a in FieldId::ALL {
            for b in FieldId::ALL {
                ok &= curvature(&phi, a, b)?.is_zero();
            }
        }
        exact(ok, "all 25 curvature components vanish")
    });
    r.check("gauge.pure_theta", "curvature", || {
        let c = MatRF::from_ints(&ctx, &[&[3]])?;
        let phi = ConnectionForm::pure_theta(c);
        let f1 = curvature(&phi, FieldId::V00, FieldId::V11)?;
        let f2 = curvature(&phi, FieldId::V01, FieldId::V10)?;
        let ok = f1.equals(&MatRF::from_ints(&ctx, &[&[-6]])?) && f2.equals(&MatRF::from_ints(&ctx, &[&[6]])?) && asd_residuals(&phi)?.is_zero();
        exact(ok, "F(V00',V11') = -6, F(V01',V10') = 6, residuals zero")
    });
    r.check("gauge.non_asd", "ASD system", || {
        let one = |s: &str| -> Result<MatRF> { MatRF::from_rows(vec![vec![heis(s)?]]) };
        let phi = ConnectionForm::new([one("y10p")?, one("0")?, one("0")?, one("0")?, one("0")?])?;
        let rr = asd_residuals(&phi)?;
        exact(*rr.r1.get(0, 0) == heis("-1")?, format!("R1 = {}", rr.r1.get(0, 0)))
    });
    r.check("gauge.zeta_routes", "spectral form of ASD", || {
        let mut ok = true;
        for seed in 0..2 {
            let phi = random_polynomial_connection(&ctx, 2, r.opts.plan.seed.wrapping_add(seed))?;
            let (big, direct) = zeta_flatness_direct(&phi)?;
            ok &= zeta_flatness(&phi)?.to_symbolic(&big)?.equals(&direct);
        }
        exact(ok, "zeta^2 R1 - zeta R2 + R3 equals [X, Y] curvature on 2 random connections")
    });
    r.check("gauge.covariance", "gauge covariance", || {
        let mut g = rng(r.opts, 6);
        let phi = build_connection(&HarmonicSeed::from_spec("inst")?, Some(constant_matrix(&ctx, &mut g)))?;
        for k in 0..3 {
            let mut rat = || RationalFunction::from_parts(random_poly(&ctx, &mut g, 2, 1), random_nonzero_poly(&ctx, &mut g, 1, 1));
            let (u, w) = (rat()?, rat()?);
            let one = RationalFunction::one(&ctx);
            let zero = RationalFunction::zero(&ctx);
            let upper = MatRF::from_rows(vec![vec![one.clone(), u], vec![zero.clone(), one.clone()]])?;
            let lower = MatRF::from_rows(vec![vec![one.clone(), zero], vec![w, one]])?;
            let gm = upper.mul(&lower)?;
            if !is_asd(&gauge_transform(&phi, &gm)?)? {
                return exact(false, format!("transform {k} breaks ASD"));
            }
        }
        exact(true, "inst connection stays ASD under 3 random rational unimodular gauge transformations")
    });
}

fn ansatz(r: &mut Runner) {
    let ctx = Context::heisenberg();
    r.check("ansatz.inst_asd", "ansatz connection", || {
        let seed = HarmonicSeed::from_spec("inst")?;
        let mut g = rng(r.opts, 7);
        let a = asd_residuals(&build_connection(&seed, None)?)?.is_zero();
        let b = asd_residuals(&build_connection(&seed, Some(constant_matrix(&ctx, &mut g)))?)?.is_zero();
        exact(a && b, "residuals (0,0,0) with Phi_T = 0 and a random constant Phi_T")
    });
    r.check("ansatz.nonharmonic_rejected", "harmonic seeds", || match HarmonicSeed::from_spec("y00p*y11p") {
        Err(Error::NonHarmonicSeed(l)) => exact(l == "1", format!("rejected with Delta_b = {l}")),
        other => exact(false, format!("unexpected {:?}", other.map(|_| ()))),
    });
    r.check("ansatz.psi_chain_rule", "Poincare integration", || {
        let f = heis("y00p^2*t - y10p*y01p + y11p^3/(1 + t)")?;
        exact(psi_chain_rule_check(Direction::D0, &f)? && psi_chain_rule_check(Direction::D1, &f)?, "both directions")
    });
    for (id, spec) in [("ansatz.gamma_t", "t"), ("ansatz.gamma_y00p", "y00p")] {
        r.check(id, "gamma recursion", || {
            let seed = HarmonicSeed::from_spec(spec)?;
            let chain = gamma_recursion(&seed, 2)?;
            let rec = chain.satisfies_recursion()?;
            let h = h_connection_check(&seed, &chain)?;
            let terms: Vec<String> = chain.iter().map(|(i, g)| format!("g{i}={g}")).collect();
            exact(rec && h, format!("recursion {rec}, h-connection {h}; {}", terms.join(", ")))
        });
    }
    r.check("ansatz.lambda_closed", "closedness", || {
        exact(lambda_closedness_check(&generic_quadratic())?, "generic quadratic seed")
    });
    r.check("ansatz.birkhoff", "Birkhoff factorization", || {
        let b = birkhoff_identity_check();
        exact(b.all_pass(), if b.failures.is_empty() { "factorization and three inverse displays".to_string() } else { b.failures.join("; ") })
    });
}

fn twistor_suite(r: &mut Runner) {
    use twistor::*;
    let sub = |c: Vec<SubCheck>| {
        let bad: Vec<String> = c.iter().filter(|x| !x.pass).map(|x| x.label.clone()).collect();
        (bad.is_empty(), if bad.is_empty() { format!("{} sub-checks", c.len()) } else { format!("failing: {}", bad.join(", ")) })
    };
    r.check("twistor.tangency", "alpha-planes", || {
        let (ok, d) = sub(tangency_certificate()?);
        exact(ok, d)
    });
    r.check("twistor.abelian", "alpha-planes", || exact(abelian_check()?, "V0^zeta and V1^zeta commute"));
    r.check("twistor.diagram", "chart transition", || {
        let (ok, d) = sub(diagram_check(TransitionVariant::Derived)?);
        exact(ok, d)
    });
    r.check("twistor.diagram_printed_rejected", "chart transition", || {
        let (ok, _) = sub(diagram_check(TransitionVariant::Printed)?);
        exact(!ok, "the w1*w2 variant fails the diagram")
    });
    r.check("twistor.alpha_roundtrip", "alpha-planes", || exact(alpha_roundtrip_symbolic()?, "eta(alpha(w, s)) = w"));
    r.check("twistor.alpha_tilde_roundtrip", "alpha-planes", || exact(alpha_tilde_roundtrip_symbolic()?, "corrected W-tilde plane"));
    r.check("twistor.alpha_tilde_printed_rejected", "alpha-planes", || {
        exact(!alpha_tilde_printed_roundtrip_symbolic()?, "printed W-tilde plane is not a fiber")
    });
    r.check("twistor.planes_agree", "chart transition", || exact(planes_agree_across_charts()?, "same plane in both charts"));
    r.check("twistor.numeric_roundtrip", "numeric oracle", || {
        let st = numeric_roundtrip(r.opts.plan.count, r.opts.plan.seed)?;
        let worst = st.max_transition_error.max(st.max_plane_error);
        numeric(
            worst <= r.opts.plan.tau,
            format!("{} samples, transition error {:.2e}, plane error {:.2e}", st.samples, st.max_transition_error, st.max_plane_error),
        )
    });
}

fn realslice_suite(r: &mut Runner) {
    use realslice::*;
    r.check("realslice.embed_homomorphism", "real embedding", || exact(embed_homomorphism_check()?, "symbolic in 10 symbols"));
    r.check("realslice.field_consistency", "real fields", || {
        let g = heis("y00p^2*t - y10p*y01p + 3*y11p*t^2 + y01p^3")?;
        exact(real_field_consistency(&g)?, "V(g o embed) = (Vg) o embed")
    });
    r.check("realslice.coframe", "real coframe", || {
        exact(coframe_duality_check() && d_theta_check(), "theta^X(V_Y) = delta and d theta = -2 S^{01}")
    });
    let (sd, asd) = s_basis();
    for (k, f) in sd.iter().chain(asd.iter()).enumerate() {
        let id = format!("realslice.eigen.{}", ["S0p0p", "S0p1p", "S1p1p", "S00", "S01", "S11"][k]);
        let sign = if k < 3 { 1 } else { -1 };
        r.check(&id, "SD/ASD basis", || {
            let ok = star_contract(f) == f.scale(&RationalFunction::int(&Context::real(), sign));
            exact(ok, format!("iota_R * {} = {}{}", S_NAMES[k], if sign > 0 { "+" } else { "-" }, S_NAMES[k]))
        });
    }
    r.check("realslice.span", "SD/ASD basis", || {
        let rank = s_basis_rank();
        let inv = [0b0011u8, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100].iter().all(|m| {
            let w = RealForm::monomial(*m, RationalFunction::one(&Context::real()));
            star_contract(&star_contract(&w)) == w
        });
        exact(rank == 6 && inv, format!("rank {rank}; (iota_R *)^2 = id on horizontal 2-forms: {inv}"))
    });
    r.check("realslice.curvature_two_path", "contact instanton", || {
        let mut conns = vec![("inst".to_string(), build_connection(&HarmonicSeed::from_spec("inst")?, None)?)];
        for s in 0..3 {
            let seed = r.opts.plan.seed.wrapping_add(100 + s);
            conns.push((format!("random#{s}"), random_polynomial_connection(&Context::heisenberg(), 2, seed)?));
        }
        let mut notes = Vec::new();
        for (name, phi) in &conns {
            if !two_path_check(phi)? {
                return exact(false, format!("routes disagree on {name}"));
            }
            notes.push(format!("{name}: F_H+ {}", if real_curvature_split_formula(phi)?.fh_plus_zero() { "= 0" } else { "!= 0" }));
        }
        exact(true, notes.join(", "))
    });
    r.check("realslice.sub_laplacian", "real sub-Laplacian", || {
        let l = real_sub_laplacian(&phi_real())?;
        exact(l.is_zero(), format!("Delta_b(1/(|x|^4 + s^2)) = {l}"))
    });
    r.check("realslice.fiber_uniqueness", "fiber uniqueness", || {
        let sym = fiber_uniqueness_certificate()?;
        let min = fiber_uniqueness_numeric(r.opts.plan.count, r.opts.plan.seed);
        exact(sym && min > 0.0, format!("det = sum of squares; min sampled det {min:.3e}"))
    });
    r.check("realslice.real_eta", "real twistor map", || exact(real_eta_check()?, "eta o embed matches the real formulas"));
}

fn so6_suite(r: &mut Runner) {
    for c in so6model::verify_all() {
        r.check(&format!("so6.{}", c.name), "SO(6) model", || {
            let mut detail = if c.pass { "exact identity".to_string() } else { "failed".to_string() };
            if let Some((i, j)) = c.failing_entry {
                detail = format!("first mismatch at entry ({},{})", i + 1, j + 1);
            }
            if let Some(n) = &c.note {
                detail = format!("{detail}; {n}");
            }
            exact(c.pass, detail)
        });
    }
}

/// Runs a suite and assembles its report, entries sorted by id.
pub fn run_suite(suite: Suite, opts: &Options) -> Report {
    let mut r = Runner { opts, entries: Vec::new(), timings: BTreeMap::new() };
    let suites: Vec<Suite> = if suite == Suite::All { Suite::MODULES.to_vec() } else { vec![suite] };
    for s in suites {
        match s {
            Suite::Algebra => algebra(&mut r),
            Suite::Heisenberg => heisenberg(&mut r),
            Suite::Gauge => gauge(&mut r),
            Suite::Ansatz => ansatz(&mut r),
            Suite::Twistor => twistor_suite(&mut r),
            Suite::Realslice => realslice_suite(&mut r),
            Suite::So6 => so6_suite(&mut r),
            Suite::All => unreachable!(),
        }
    }
    let mut entries = r.entries;
    entries.sort_by(|a, b| a.id.cmp(&b.id));
    let passed = entries.iter().all(|e| e.status.passed());
    Report {
        schema: SCHEMA,
        tool: "h5",
        version: env!("CARGO_PKG_VERSION"),
        suite: suite.name().to_string(),
        seed: opts.plan.seed,
        samples: opts.plan.count,
        tolerance: opts.plan.tau,
        fd_step: opts.plan.h,
        passed,
        entries,
        errata: ERRATA.to_vec(),
        timings_ms: opts.timings.then_some(r.timings),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn so6_report_has_seven_exact_entries() {
        let rep = run_suite(Suite::So6, &Options::default());
        assert_eq!(rep.entries.len(), 7);
        assert!(rep.entries.iter().all(|e| e.status == Status::ExactPass));
        let ids: Vec<&str> = rep.entries.iter().map(|e| e.id.as_str()).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn injected_fault_fails_named_entry() {
        let opts = Options { inject_fault: vec!["so6.conjugation".into()], ..Options::default() };
        let rep = run_suite(Suite::So6, &opts);
        assert!(!rep.passed);
        let f: Vec<&str> = rep.failures().map(|e| e.id.as_str()).collect();
        assert_eq!(f, ["so6.conjugation"]);
    }

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::MODULES {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
