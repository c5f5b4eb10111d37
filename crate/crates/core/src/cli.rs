//! The `h5` command-line driver.
//!
//! Exit codes: 0 when every requested check passes, 1 when a check fails or
//! an input is rejected, 2 for usage errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::ansatz::{build_connection, HarmonicSeed};
use crate::error::{Error, Result};
use crate::exactalg::{parse_rational_function, Context, MatRF, RationalFunction};
use crate::gauge::asd_residuals;
use crate::heisenberg::GroupPoint;
use crate::numcheck::{evaluate, SamplePlan};
use crate::report::{run_suite, Options, Report, Suite};

#[derive(Parser, Debug)]
#[command(name = "h5", version, about = "Exact verification toolkit for ASD connections on the 5D Heisenberg group")]
pub struct Cli {
    /// Number of random sample points for numeric checks.
    #[arg(long, global = true, default_value_t = 100)]
    pub samples: usize,
    /// Seed of the deterministic sampler.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    pub seed: u64,
    /// Relative tolerance of numeric checks.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tol: f64,
    /// Finite-difference step.
    #[arg(long = "fd-step", global = true, default_value_t = 1e-5)]
    pub fd_step: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Build the ansatz connection from a harmonic seed.
    Construct(ConstructArgs),
    /// Evaluate an object at a point.
    Eval(EvalArgs),
    /// Run every suite and emit the combined report.
    Report(OutputArgs),
    /// Twistor chart tools.
    Twistor {
        #[command(subcommand)]
        command: TwistorCommand,
    },
    /// Real-slice checks.
    Real {
        #[command(subcommand)]
        command: RealCommand,
    },
    /// SO(6,C) model identities.
    So6 {
        #[command(subcommand)]
        command: So6Command,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Include per-check timings (reports are otherwise byte-stable).
    #[arg(long)]
    pub timings: bool,
    #[arg(long = "inject-fault", hide = true)]
    pub inject_fault: Vec<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    /// `inst`, `t`, `lin:<var>`, or an expression in y00p, y10p, y01p, y11p, t.
    #[arg(long)]
    pub phi: String,
    /// `zero`, or a JSON 2x2 array of expressions such as `[["1","0"],["0","-1"]]`.
    #[arg(long, default_value = "zero")]
    pub phit: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EvalObject {
    Connection,
    Curvature,
    Eta,
    Fhplus,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    pub object: EvalObject,
    /// Comma-separated coordinates: `y00p,y10p,y01p,y11p,t`, or `x1,x2,x3,x4,s`
    /// for `fhplus`. Entries may be rationals with `i`, e.g. `1/2+i`.
    #[arg(long, allow_hyphen_values = true)]
    pub point: String,
    /// Spectral parameter for `eta`.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub zeta: String,
    /// Seed of the connection for `connection`, `curvature` and `fhplus`.
    #[arg(long, default_value = "inst")]
    pub phi: String,
}

#[derive(Subcommand, Debug)]
pub enum TwistorCommand {
    /// Sample points of W and check the chart transition and alpha-planes.
    Roundtrip,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RealSuite {
    ContactInstanton,
}

#[derive(Subcommand, Debug)]
pub enum RealCommand {
    Check {
        #[arg(long, value_enum, default_value_t = RealSuite::ContactInstanton)]
        suite: RealSuite,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum So6Command {
    /// Check all seven matrix identities.
    VerifyAll,
}

impl Cli {
    fn options(&self, output: Option<&OutputArgs>) -> Options {
        Options {
            plan: SamplePlan { count: self.samples, seed: self.seed, h: self.fd_step, tau: self.tol, ..SamplePlan::default() },
            timings: output.map(|o| o.timings).unwrap_or(false),
            inject_fault: output.map(|o| o.inject_fault.clone()).unwrap_or_default(),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Verify(v) => emit_report(&run_suite(v.suite, &cli.options(Some(&v.output))), &v.output, out),
        Command::Report(o) => emit_report(&run_suite(Suite::All, &cli.options(Some(o))), o, out),
        Command::Real { command: RealCommand::Check { output, .. } } => {
            emit_report(&run_suite(Suite::Realslice, &cli.options(Some(output))), output, out)
        }
        Command::So6 { command: So6Command::VerifyAll } => {
            let checks = crate::so6model::verify_all();
            let pass = checks.iter().all(|c| c.pass);
            print_json(out, &json!({ "schema": crate::report::SCHEMA, "passed": pass, "checks": checks }))?;
            Ok(if pass { 0 } else { 1 })
        }
        Command::Twistor { command: TwistorCommand::Roundtrip } => {
            let st = crate::twistor::numeric_roundtrip(cli.samples, cli.seed)?;
            let pass = st.max_transition_error.max(st.max_plane_error) <= cli.tol;
            print_json(
                out,
                &json!({
                    "schema": crate::report::SCHEMA,
                    "seed": cli.seed,
                    "samples": st.samples,
                    "max_transition_error": st.max_transition_error,
                    "max_plane_error": st.max_plane_error,
                    "tolerance": cli.tol,
                    "passed": pass,
                }),
            )?;
            Ok(if pass { 0 } else { 1 })
        }
        Command::Construct(c) => construct(c, out, err),
        Command::Eval(e) => eval(cli, e, out),
    }
}

fn print_json(out: &mut dyn Write, v: &Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("json")).map_err(io_err)
}

fn io_err(e: std::io::Error) -> Error {
    Error::Invalid(format!("i/o: {e}"))
}

fn emit_report(rep: &Report, o: &OutputArgs, out: &mut dyn Write) -> Result<i32> {
    let body = match o.format {
        Format::Json => rep.to_json() + "\n",
        Format::Text => rep.to_text(),
    };
    match &o.out {
        Some(path) => std::fs::write(path, body).map_err(io_err)?,
        None => out.write_all(body.as_bytes()).map_err(io_err)?,
    }
    Ok(if rep.passed { 0 } else { 1 })
}

fn parse_phit(s: &str) -> Result<Option<MatRF>> {
    if s.trim() == "zero" {
        return Ok(None);
    }
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Invalid(format!("--phit: {e}")))?;
    let ctx = Context::heisenberg();
    let cell = |c: &Value| -> Result<RationalFunction> {
        match c {
            Value::String(s) => parse_rational_function(s, &ctx),
            Value::Number(n) => parse_rational_function(&n.to_string(), &ctx),
            _ => Err(Error::Invalid("--phit entries must be strings or numbers".into())),
        }
    };
    let rows = v.as_array().ok_or_else(|| Error::Invalid("--phit must be a 2x2 array".into()))?;
    let m = rows
        .iter()
        .map(|r| r.as_array().ok_or_else(|| Error::Invalid("--phit rows must be arrays".into()))?.iter().map(cell).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    Ok(Some(MatRF::from_rows(m)?))
}

fn construct(c: &ConstructArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let seed = match HarmonicSeed::from_spec(&c.phi) {
        Ok(s) => s,
        Err(Error::NonHarmonicSeed(lap)) => {
            writeln!(err, "seed is not sub-harmonic: Delta_b phi = {lap}").map_err(io_err)?;
            print_json(out, &json!({ "schema": crate::report::SCHEMA, "phi": c.phi, "harmonic": false, "laplacian": lap }))?;
            return Ok(1);
        }
        Err(e) => return Err(e),
    };
    let phi = build_connection(&seed, parse_phit(&c.phit)?)?;
    let r = asd_residuals(&phi)?;
    print_json(
        out,
        &json!({
            "schema": crate::report::SCHEMA,
            "phi": seed.phi().to_string(),
            "harmonic": true,
            "laplacian": seed.laplacian().to_string(),
            "connection": phi,
            "residuals": { "r1": r.r1, "r2": r.r2, "r3": r.r3 },
            "asd": r.is_zero(),
        }),
    )?;
    Ok(if r.is_zero() { 0 } else { 1 })
}

fn parse_point(s: &str, n: usize) -> Result<Vec<Complex64>> {
    let empty = Context::new::<&str>(&[]);
    let v = s
        .split(',')
        .map(|p| {
            let f = parse_rational_function(p.trim(), &empty)?;
            f.as_constant().map(|c| c.to_complex64()).ok_or_else(|| Error::Invalid(format!("`{p}` is not a constant")))
        })
        .collect::<Result<Vec<_>>>()?;
    if v.len() != n {
        return Err(Error::DimensionMismatch(format!("expected {n} coordinates, got {}", v.len())));
    }
    Ok(v)
}

fn cjson(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn eval_mat(m: &MatRF, p: &[Complex64], eps: f64) -> Result<Value> {
    let mut rows = Vec::new();
    for i in 0..m.rows() {
        let mut row = Vec::new();
        for j in 0..m.cols() {
            row.push(cjson(evaluate(m.get(i, j), p, eps)?));
        }
        rows.push(Value::Array(row));
    }
    Ok(Value::Array(rows))
}

fn max_abs(m: &MatRF, p: &[Complex64], eps: f64) -> Result<f64> {
    let mut worst = 0f64;
    for e in m.entries() {
        worst = worst.max(evaluate(e, p, eps)?.norm());
    }
    Ok(worst)
}

fn eval(cli: &Cli, e: &EvalArgs, out: &mut dyn Write) -> Result<i32> {
    let eps = SamplePlan::default().eps_den;
    let v = match e.object {
        EvalObject::Eta => {
            let p = parse_point(&e.point, 5)?;
            let z = parse_point(&e.zeta, 1)?[0];
            let g = GroupPoint::from_array([p[0], p[1], p[2], p[3], p[4]]);
            let w = crate::twistor::eta(&g, &z);
            json!({ "object": "eta", "chart": "W", "w": [cjson(w.w0), cjson(w.w1), cjson(w.w2)], "zeta": cjson(w.zeta) })
        }
        EvalObject::Connection => {
            let p = parse_point(&e.point, 5)?;
            let phi = build_connection(&HarmonicSeed::from_spec(&e.phi)?, None)?;
            let mut blocks = serde_json::Map::new();
            for (name, b) in ["phi00p", "phi10p", "phi01p", "phi11p", "phiT"].iter().zip(phi.blocks()) {
                blocks.insert(name.to_string(), eval_mat(b, &p, eps)?);
            }
            json!({ "object": "connection", "phi": e.phi, "expression": "ansatz connection with Phi_T = 0", "blocks": blocks })
        }
        EvalObject::Curvature => {
            let p = parse_point(&e.point, 5)?;
            let phi = build_connection(&HarmonicSeed::from_spec(&e.phi)?, None)?;
            let r = asd_residuals(&phi)?;
            let worst = [&r.r1, &r.r2, &r.r3].iter().map(|m| max_abs(m, &p, eps)).collect::<Result<Vec<_>>>()?;
            let m = worst.iter().cloned().fold(0f64, f64::max);
            json!({
                "object": "curvature",
                "phi": e.phi,
                "expression": "ASD residuals R1, R2, R3",
                "r1": eval_mat(&r.r1, &p, eps)?,
                "r2": eval_mat(&r.r2, &p, eps)?,
                "r3": eval_mat(&r.r3, &p, eps)?,
                "max_abs": m,
                "within_tolerance": m <= cli.tol,
            })
        }
        EvalObject::Fhplus => {
            let p = parse_point(&e.point, 5)?;
            let phi = build_connection(&HarmonicSeed::from_spec(&e.phi)?, None)?;
            let split = crate::realslice::real_curvature_split_formula(&phi)?;
            let mut coeffs = serde_json::Map::new();
            let mut m = 0f64;
            for (name, c) in ["S0p0p", "S0p1p", "S1p1p"].iter().zip(&split.fh_plus) {
                m = m.max(max_abs(c, &p, eps)?);
                coeffs.insert(name.to_string(), eval_mat(c, &p, eps)?);
            }
            json!({
                "object": "fhplus",
                "phi": e.phi,
                "expression": "F_H+ coefficients on the self-dual basis",
                "coefficients": coeffs,
                "max_abs": m,
                "within_tolerance": m <= cli.tol,
            })
        }
    };
    print_json(out, &v)?;
    Ok(0)
}
