//! `bergman`: periods, Gram matrices, Bergman kernel values and the two
//! bracket identities, with JSON reports.
//!
//! Exit status: 0 pass, 1 a residual above tolerance, 2 bad input or a
//! violated invariant.

mod input;
mod report;

use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use bergman_torelli::torelli::{qstar_against_kv_check, theorem_a_check};
use bergman_torelli::torus::theorem_b_check;
use bergman_torelli::{
    BergmanContext, CMat64, CurvePoint, EtaEvaluator, HyperellipticCurve64, KunnethQuadric, LatticeContext64,
    PeriodData64, TangentVector64, TheoremBSample, C64,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use report::{cmat, cvec, cx, Report};

#[derive(Parser, Debug)]
#[command(
    name = "bergman",
    version,
    about = "Period matrices, Bergman kernels and bracket identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format; csv only carries matrix dumps.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// A- and B-periods and the period matrix Z.
    Periods(CurveArgs),
    /// Hodge Gram matrix of the normalized basis against 2 Im Z.
    Gram(CurveArgs),
    /// Bergman kernel at a pair of tangent vectors, three ways.
    BergmanEval(EvalArgs),
    /// Seeded verification suites.
    #[command(subcommand)]
    Verify(Verify),
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// Cup-product bracket against -i Omega B on random data.
    TheoremA(TheoremAArgs),
    /// d alpha = eta-hat and dbar alpha = -2 pi B on a lattice.
    TheoremB(TheoremBArgs),
}

#[derive(Args, Debug)]
struct CurveArgs {
    /// Curve spec: a path or inline JSON {"type":"hyperelliptic","f_coeffs":[c0,...,cn]}.
    #[arg(long)]
    curve: String,
    #[arg(long, default_value_t = 64)]
    quad_order: usize,
    /// Tolerance on |Z - Z^T| (periods) or the Gram residual (gram).
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[command(flatten)]
    curve: CurveArgs,
    /// x-coordinate of the first point, "re,im".
    #[arg(long, allow_hyphen_values = true)]
    u_x: String,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    u_sheet: i8,
    /// Coefficient of d/dx at the first point, "re,im".
    #[arg(long, default_value = "1,0", allow_hyphen_values = true)]
    u_lambda: String,
    #[arg(long, allow_hyphen_values = true)]
    v_x: String,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    v_sheet: i8,
    #[arg(long, default_value = "1,0", allow_hyphen_values = true)]
    v_lambda: String,
}

#[derive(Args, Debug)]
struct TheoremAArgs {
    #[arg(long)]
    curve: String,
    #[arg(long, default_value_t = 64)]
    quad_order: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct TheoremBArgs {
    /// omega1 and omega2 as "re1,im1,re2,im2".
    #[arg(long, allow_hyphen_values = true)]
    lattice: String,
    #[arg(long, default_value_t = 50)]
    samples: usize,
    /// Tolerance on the d-side.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 1e-10)]
    dbar_tol: f64,
    /// Tolerance on the finite-difference cross-check.
    #[arg(long, default_value_t = 1e-5)]
    fd_tol: f64,
    #[arg(long, default_value_t = 1e-4)]
    fd_step: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_nan() || tol <= 0.0 {
        bail!("tolerance must be positive, got {tol}");
    }
    Ok(())
}

fn check_count(name: &str, n: usize) -> Result<()> {
    if n == 0 {
        bail!("{name} must be at least 1");
    }
    Ok(())
}

fn load(args: &CurveArgs) -> Result<(HyperellipticCurve64, PeriodData64)> {
    check_tol(args.tol)?;
    let curve = input::curve(&args.curve)?;
    let pd = PeriodData64::compute(&curve, args.quad_order).map_err(|e| anyhow!("periods: {e}"))?;
    Ok((curve, pd))
}

fn curve_inputs(args: &CurveArgs, curve: &HyperellipticCurve64) -> serde_json::Value {
    json!({
        "f_coeffs": curve.coeffs(),
        "genus": curve.genus(),
        "quad_order": args.quad_order,
        "tol": args.tol,
    })
}

fn periods(args: &CurveArgs) -> Result<Report> {
    let (curve, pd) = load(args)?;
    let conv = pd
        .self_convergence()
        .map_err(|e| anyhow!("periods at doubled order: {e}"))?;
    let riemann = pd.riemann_residual();
    let min_eig = pd.min_eig_imz();
    Ok(Report {
        command: "periods",
        inputs: curve_inputs(args, &curve),
        results: json!({
            "roots": curve.roots(),
            "a_periods": cmat(pd.a_periods()),
            "b_periods": cmat(pd.b_periods()),
            "z": cmat(pd.z()),
            "riemann_residual": riemann,
            "min_eig_imZ": min_eig,
        }),
        residuals: json!({
            "riemann_residual": riemann,
            "normalization_residual": pd.normalization_residual(),
            "self_convergence": conv,
        }),
        pass: riemann <= args.tol && min_eig > 0.0,
        matrices: vec![
            ("a_periods", pd.a_periods().clone()),
            ("b_periods", pd.b_periods().clone()),
            ("z", pd.z().clone()),
        ],
    })
}

fn gram(args: &CurveArgs) -> Result<Report> {
    let (curve, pd) = load(args)?;
    let ctx = BergmanContext::new(&pd).map_err(|e| anyhow!("gram: {e}"))?;
    let g = pd.genus();
    // default working basis is the normalized one, so this is h(w_i, w_j)
    let normalized = ctx.gram().clone();
    let two_im_z = CMat64::from_real(g, g, |i, j| 2.0 * pd.z()[(i, j)].im);
    let residual = ctx.normalized_gram_residual();
    Ok(Report {
        command: "gram",
        inputs: curve_inputs(args, &curve),
        results: json!({
            "gram": cmat(&normalized),
            "two_im_z": cmat(&two_im_z),
            "unitary_basis": cmat(ctx.unitary_basis()),
        }),
        residuals: json!({
            "gram_vs_two_im_z": residual,
            "unitarity": ctx.unitarity_residual(),
        }),
        pass: residual <= args.tol,
        matrices: vec![("gram", normalized), ("two_im_z", two_im_z)],
    })
}

fn tangent(curve: &HyperellipticCurve64, x: &str, sheet: i8, lambda: &str) -> Result<TangentVector64> {
    if sheet != 1 && sheet != -1 {
        bail!("sheet must be 1 or -1, got {sheet}");
    }
    let p = CurvePoint::new(curve, input::complex(x)?, sheet).map_err(|e| anyhow!("point {x}: {e}"))?;
    Ok(TangentVector64::new(p, input::complex(lambda)?))
}

fn bergman_eval(args: &EvalArgs) -> Result<Report> {
    let (curve, pd) = load(&args.curve)?;
    let u = tangent(&curve, &args.u_x, args.u_sheet, &args.u_lambda)?;
    let v = tangent(&curve, &args.v_x, args.v_sheet, &args.v_lambda)?;
    let ctx = BergmanContext::new(&pd).map_err(|e| anyhow!("bergman: {e}"))?;
    let rep = ctx.bergman_report(&u, &v).map_err(|e| anyhow!("bergman: {e}"))?;
    let (pres, chain) = (rep.presentation_residual(), rep.chain_residual());
    let point = |t: &TangentVector64| json!({ "x": cx(t.base.x()), "y": cx(t.base.y()), "sheet": t.base.sheet(), "lambda": cx(t.lambda) });
    Ok(Report {
        command: "bergman-eval",
        inputs: json!({
            "curve": curve_inputs(&args.curve, &curve),
            "u": point(&u),
            "v": point(&v),
        }),
        results: json!({
            "value": cx(rep.value()),
            "gram": cx(rep.gram),
            "unitary": cx(rep.unitary),
            "normalized": cx(rep.normalized),
            "k_v_at_u": cx(rep.kv_at_u),
            "h_kv_ku": cx(rep.h_kv_ku),
        }),
        residuals: json!({ "presentations": pres, "chain": chain }),
        pass: pres <= args.curve.tol && chain <= args.curve.tol,
        matrices: Vec::new(),
    })
}

/// Random tangent vector at distance >= 0.1 in |y| from the branch points.
fn random_tangent(r: &mut ChaCha8Rng, curve: &HyperellipticCurve64) -> TangentVector64 {
    let roots = curve.roots();
    let (lo, hi) = (roots[0] - 1.0, roots[roots.len() - 1] + 1.0);
    loop {
        let x = C64::new(r.gen_range(lo..hi), r.gen_range(-1.5..1.5));
        let sheet = if r.gen_bool(0.5) { 1 } else { -1 };
        if let Ok(p) = CurvePoint::with_exclusion(curve, x, sheet, 0.1) {
            return TangentVector64::new(p, random_complex(r));
        }
    }
}

fn random_complex(r: &mut ChaCha8Rng) -> C64 {
    C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
}

fn theorem_a(args: &TheoremAArgs) -> Result<Report> {
    check_tol(args.tol)?;
    check_count("trials", args.trials)?;
    let curve = input::curve(&args.curve)?;
    let pd = PeriodData64::compute(&curve, args.quad_order).map_err(|e| anyhow!("periods: {e}"))?;
    let ctx = BergmanContext::new(&pd).map_err(|e| anyhow!("bergman: {e}"))?;
    let g = pd.genus();
    let mut r = ChaCha8Rng::seed_from_u64(args.seed);
    let (mut worst, mut qstar) = (0.0f64, 0.0f64);
    for _ in 0..args.trials {
        let omega: Vec<C64> = (0..g).map(|_| random_complex(&mut r)).collect();
        let omega_prime: Vec<C64> = (0..g).map(|_| random_complex(&mut r)).collect();
        let u = random_tangent(&mut r, &curve);
        let v = random_tangent(&mut r, &curve);
        let q = KunnethQuadric::new(omega, omega_prime);
        let check = theorem_a_check(&ctx, &q, &u, &v).map_err(|e| anyhow!("bracket: {e}"))?;
        worst = worst.max(check.residual());
        let (pairing, claim) = qstar_against_kv_check(&ctx, &q.omega_prime, &v).map_err(|e| anyhow!("Q*: {e}"))?;
        qstar = qstar.max((pairing - claim).norm());
    }
    Ok(Report {
        command: "verify theorem-a",
        inputs: json!({
            "f_coeffs": curve.coeffs(),
            "genus": g,
            "quad_order": args.quad_order,
            "trials": args.trials,
            "tol": args.tol,
            "seed": args.seed,
        }),
        results: json!({ "max_residual": worst, "trials": args.trials, "z": cmat(pd.z()) }),
        residuals: json!({ "bracket": worst, "qstar_kv": qstar }),
        pass: worst <= args.tol && qstar <= args.tol,
        matrices: Vec::new(),
    })
}

fn theorem_b(args: &TheoremBArgs) -> Result<Report> {
    for t in [args.tol, args.dbar_tol, args.fd_tol, args.fd_step] {
        check_tol(t)?;
    }
    check_count("samples", args.samples)?;
    let (o1, o2) = input::lattice(&args.lattice)?;
    let lat = LatticeContext64::auto(o1, o2).map_err(|e| anyhow!("lattice: {e}"))?;
    let ev = EtaEvaluator::new(&lat);
    let mut r = ChaCha8Rng::seed_from_u64(args.seed);
    let min_sep = 0.1 * o1.norm().min(o2.norm());
    let mut samples = Vec::with_capacity(args.samples);
    while samples.len() < args.samples {
        let zp = o1 * r.gen_range(-0.5..0.5) + o2 * r.gen_range(-0.5..0.5);
        let zq = o1 * r.gen_range(-0.5..0.5) + o2 * r.gen_range(-0.5..0.5);
        if lat.weierstrass().lattice_distance(zp - zq) < min_sep {
            continue;
        }
        samples.push(TheoremBSample {
            zp,
            zq,
            lam_u: random_complex(&mut r),
            lam_v: random_complex(&mut r),
        });
    }
    let rep = theorem_b_check(&ev, &samples, args.fd_step).map_err(|e| anyhow!("potential: {e}"))?;
    let (c2, claim) = lat.dbar_potential_check().map_err(|e| anyhow!("dbar potential: {e}"))?;
    let (eta1, eta2) = (lat.eta1(), lat.eta2());
    Ok(Report {
        command: "verify theorem-b",
        inputs: json!({
            "omega1": cx(o1),
            "omega2": cx(o2),
            "samples": args.samples,
            "tol": args.tol,
            "dbar_tol": args.dbar_tol,
            "fd_tol": args.fd_tol,
            "fd_step": args.fd_step,
            "seed": args.seed,
        }),
        results: json!({
            "samples": rep.samples,
            "area": lat.area(),
            "quasi_periods": cvec(&[eta1, eta2]),
            "c1": cx(lat.c1()),
            "c2": cx(c2),
            "c2_claim": cx(claim),
            "truncation": lat.weierstrass().truncation(),
        }),
        residuals: json!({
            "del": rep.del_residual,
            "dbar": rep.dbar_residual,
            "fd_del": rep.fd_del_residual,
            "fd_dbar": rep.fd_dbar_residual,
            "legendre": lat.legendre_residual(),
            "single_valuedness": lat.single_valuedness_residual(),
        }),
        pass: rep.passes(args.tol, args.dbar_tol, args.fd_tol),
        matrices: Vec::new(),
    })
}

fn run(cli: &Cli) -> Result<Report> {
    let rep = match &cli.command {
        Command::Periods(a) => periods(a)?,
        Command::Gram(a) => gram(a)?,
        Command::BergmanEval(a) => bergman_eval(a)?,
        Command::Verify(Verify::TheoremA(a)) => theorem_a(a)?,
        Command::Verify(Verify::TheoremB(a)) => theorem_b(a)?,
    };
    if cli.format == Format::Csv && rep.matrices.is_empty() {
        bail!("--format csv is only available for matrix output (periods, gram)");
    }
    Ok(rep)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(rep) => {
            let text = match cli.format {
                Format::Json => rep.to_json() + "\n",
                Format::Csv => rep.to_csv(),
            };
            // a closed pipe downstream is not an error of ours
            let _ = io::stdout().lock().write_all(text.as_bytes());
            if rep.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
