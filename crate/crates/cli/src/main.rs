//! `hs2` — command-line front end for the two-function Hardy-Sobolev
//! stability toolkit: sharp constants, minimizer classification, deficits,
//! epsilon-sweep experiments, the weighted-inequality transform, and the
//! randomized inequality oracles, all with machine-readable output.
//!
//! Exit codes: 0 success, 1 domain error, 2 numerical failure, 3 failed
//! self-check, 64 usage error.

mod config;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hs2_core::acceptance;
use hs2_core::cases::{canonical_instance, parse_case_label};
use hs2_core::coupling::{
    best_constant, classify, find_minimizers, g_eval, is_constant_coupling, ExtendedT,
};
use hs2_core::deficit::{deficit_pair_with_tol, manifold_distance};
use hs2_core::elemineq::{
    convex_hull_feasible, lemma1_check, lemma2_check, reference_exponents, IneqCaseId,
};
use hs2_core::params::{make_params, HSParams};
use hs2_core::profile::{bubble, perturbation_bump, RadialProfile};
use hs2_core::special::mu_s;
use hs2_core::stability::{geometric_grid, stability_sweep};
use hs2_core::transform::{corollary_check, ell_bubble};
use hs2_core::Error as CoreError;

use config::ConfigFile;

#[derive(Parser)]
#[command(
    name = "hs2",
    version,
    about = "Sharp constants and stability experiments for a two-function Hardy-Sobolev inequality",
    after_help = "Environment: HS2_THREADS caps worker parallelism for the sampling subcommands."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the sharp single-function constant, inf g, and the best constant
    BestConstant(ParamArgs),
    /// Stability classification: case label, exponent, and the minimizer set
    Classify(ParamArgs),
    /// Minimizers of the coupling function with stationarity residuals
    MinimizeG(ParamArgs),
    /// Deficit of a described pair (a w + bump, b w + bump)
    Deficit(DeficitArgs),
    /// Epsilon sweep along a trial family; fits deficit and distance rates
    StabilitySweep(SweepArgs),
    /// Weighted-inequality check for a given ell
    TransformCheck(TransformArgs),
    /// Randomized oracles for the elementary inequalities
    IneqTest(IneqArgs),
    /// Run the full acceptance suite (exit 3 on any failure)
    Selfcheck(SelfcheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct OutputArgs {
    /// Flat key=value config file; explicit flags override file values
    #[arg(long, global = false)]
    config: Option<PathBuf>,
    /// Output format (csv only where a table is natural)
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ParamArgs {
    /// Dimension N >= 3
    #[arg(long = "N")]
    n: Option<u32>,
    /// Singularity strength s in (0, 2)
    #[arg(long)]
    s: Option<f64>,
    /// First coupling exponent, > 1
    #[arg(long)]
    alpha: Option<f64>,
    /// Second coupling exponent, > 1; alpha + beta must equal 2(N-s)/(N-2)
    #[arg(long)]
    beta: Option<f64>,
    /// Weight of |u|^p, > 0
    #[arg(long)]
    lambda: Option<f64>,
    /// Weight of |v|^p, > 0
    #[arg(long)]
    mu: Option<f64>,
    /// Coupling strength, any sign
    #[arg(long, allow_negative_numbers = true)]
    kappa: Option<f64>,
    #[command(flatten)]
    out: OutputArgs,
}

const PARAM_KEYS: [&str; 7] = ["N", "s", "alpha", "beta", "lambda", "mu", "kappa"];

impl ParamArgs {
    fn keys() -> Vec<&'static str> {
        PARAM_KEYS.to_vec()
    }

    fn resolve(&mut self, extra_keys: &[&str]) -> Result<HSParams, Failure> {
        let mut keys = Self::keys();
        keys.extend_from_slice(extra_keys);
        if let Some(path) = &self.out.config {
            let file = ConfigFile::load(path, &keys).map_err(Failure::Usage)?;
            file.fill(&mut self.n, "N").map_err(Failure::Usage)?;
            file.fill(&mut self.s, "s").map_err(Failure::Usage)?;
            file.fill(&mut self.alpha, "alpha").map_err(Failure::Usage)?;
            file.fill(&mut self.beta, "beta").map_err(Failure::Usage)?;
            file.fill(&mut self.lambda, "lambda").map_err(Failure::Usage)?;
            file.fill(&mut self.mu, "mu").map_err(Failure::Usage)?;
            file.fill(&mut self.kappa, "kappa").map_err(Failure::Usage)?;
        }
        let need = |v: Option<f64>, name: &str| {
            v.ok_or_else(|| Failure::Usage(format!("missing required parameter --{name}")))
        };
        let n = self
            .n
            .ok_or_else(|| Failure::Usage("missing required parameter --N".into()))?;
        let params = make_params(
            n,
            need(self.s, "s")?,
            need(self.alpha, "alpha")?,
            need(self.beta, "beta")?,
            need(self.lambda, "lambda")?,
            need(self.mu, "mu")?,
            need(self.kappa, "kappa")?,
        )?;
        Ok(params)
    }
}

#[derive(Args)]
struct DeficitArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Coefficient of u on the shared profile
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    /// Coefficient of v on the shared profile
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    /// Scale of the shared extremal profile
    #[arg(long, default_value_t = 1.0)]
    tau: f64,
    /// Amplitude of a compactly supported perturbation added to u
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    bump_u: f64,
    /// Amplitude of a compactly supported perturbation added to v
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    bump_v: f64,
    /// Absolute quadrature tolerance override
    #[arg(long, default_value_t = 1e-10)]
    quad_tol: f64,
    /// Also write sampled profile tables (r,u,du,v,dv) to this CSV file
    #[arg(long)]
    dump_profiles: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Use a canonical instance (I, II.1, II.2, II.3, II.4) instead of
    /// explicit parameters
    #[arg(long, conflicts_with_all = ["n", "s", "alpha", "beta", "lambda", "mu", "kappa"])]
    case: Option<String>,
    /// Minimizer the trial family perturbs (a number or "inf"); defaults to
    /// the first minimizer
    #[arg(long)]
    t0: Option<String>,
    /// Largest epsilon of the geometric grid
    #[arg(long, default_value_t = 1e-1)]
    eps_max: f64,
    /// Smallest epsilon of the geometric grid
    #[arg(long, default_value_t = 1e-3)]
    eps_min: f64,
    /// Number of grid points
    #[arg(long, default_value_t = 12)]
    eps_points: usize,
}

#[derive(Args)]
struct TransformArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Flattening parameter in (0, 1]
    #[arg(long)]
    ell: Option<f64>,
    /// Coefficient of u on the flattened profile
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    /// Coefficient of v on the flattened profile
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    /// Scale of the flattened profile
    #[arg(long, default_value_t = 1.0)]
    lam: f64,
    /// Amplitude of a compactly supported perturbation added to u
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    bump_u: f64,
    /// Amplitude of a compactly supported perturbation added to v
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    bump_v: f64,
}

#[derive(Args)]
struct IneqArgs {
    /// Run a single case (L1_GE2, L1_LT2, L2_BOTH_GE2, L2_A2_B_GT2,
    /// L2_BOTH_EQ2, L2_MIXED, L2_B_EQ2, L2_BOTH_LT2); default runs all
    #[arg(long = "case")]
    case: Option<String>,
    /// Exponent for the one-variable cases
    #[arg(long)]
    iota: Option<f64>,
    /// First exponent for the two-variable cases
    #[arg(long)]
    alpha: Option<f64>,
    /// Second exponent for the two-variable cases
    #[arg(long)]
    beta: Option<f64>,
    /// Slack parameter of the inequalities
    #[arg(long, default_value_t = 0.1)]
    m: f64,
    /// Random samples per case
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    /// RNG seed (fixed default keeps output byte-identical)
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct SelfcheckArgs {
    /// RNG seed for the randomized criteria
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[command(flatten)]
    out: OutputArgs,
}

enum Failure {
    Usage(String),
    Domain(String),
    Numerical(String),
    Acceptance,
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 64,
            Failure::Domain(_) => 1,
            Failure::Numerical(_) => 2,
            Failure::Acceptance => 3,
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Numerical(format!("i/o error: {e}"))
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's own exit code does not match the documented contract
            let _ = e.print();
            let code = if e.use_stderr() { 64 } else { 0 };
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(()) => {}
        Err(f) => {
            match &f {
                Failure::Usage(msg) | Failure::Domain(msg) | Failure::Numerical(msg) => {
                    eprintln!("error: {msg}");
                }
                Failure::Acceptance => {}
            }
            std::process::exit(f.exit_code());
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::BestConstant(args) => best_constant_cmd(args),
        Command::Classify(args) => classify_cmd(args),
        Command::MinimizeG(args) => minimize_g_cmd(args),
        Command::Deficit(args) => deficit_cmd(args),
        Command::StabilitySweep(args) => sweep_cmd(args),
        Command::TransformCheck(args) => transform_cmd(args),
        Command::IneqTest(args) => ineq_cmd(args),
        Command::Selfcheck(args) => selfcheck_cmd(args),
    }
}

fn emit(out: &OutputArgs, format: Format, body: String) -> Result<(), Failure> {
    let body = if body.ends_with('\n') { body } else { body + "\n" };
    match (&out.output, format) {
        (Some(path), _) => {
            let mut f = std::fs::File::create(path)?;
            f.write_all(body.as_bytes())?;
        }
        (None, _) => {
            print!("{body}");
        }
    }
    Ok(())
}

fn json_body(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn reject_csv(format: Format, what: &str) -> Result<(), Failure> {
    if format == Format::Csv {
        return Err(Failure::Usage(format!("{what} has no CSV form; use json or text")));
    }
    Ok(())
}

fn best_constant_cmd(mut args: ParamArgs) -> Result<(), Failure> {
    let params = args.resolve(&[])?;
    let format = args.out.format.unwrap_or(Format::Json);
    reject_csv(format, "best-constant")?;
    let ms = mu_s(params.n, params.s)?;
    let best = best_constant(&params)?;
    let g_inf = best / ms;
    let body = match format {
        Format::Json => json_body(&json!({
            "params": params,
            "mu_s": ms,
            "g_inf": g_inf,
            "best_constant": best,
        })),
        _ => format!("mu_s = {ms:e}\ng_inf = {g_inf:e}\nbest_constant = {best:e}"),
    };
    emit(&args.out, format, body)
}

fn classify_cmd(mut args: ParamArgs) -> Result<(), Failure> {
    let params = args.resolve(&[])?;
    let format = args.out.format.unwrap_or(Format::Json);
    reject_csv(format, "classify")?;
    let c = classify(&params)?;
    let body = match format {
        Format::Json => json_body(&json!({
            "params": params,
            "classification": c,
        })),
        _ => {
            let mut lines = vec![
                format!("case = {}", c.case),
                format!(
                    "iota = {}",
                    c.iota.map_or("NOT_APPLICABLE".into(), |i| i.to_string())
                ),
                format!("best_constant = {:e}", c.best_constant),
            ];
            if let Some(set) = &c.minimizers {
                for p in &set.points {
                    lines.push(format!(
                        "minimizer t = {} (g = {:e}, degenerate = {}, g'' = {:e})",
                        p.t, p.g_value, p.degenerate, p.second_derivative
                    ));
                }
                for w in &set.warnings {
                    lines.push(format!("warning: {w}"));
                }
            }
            lines.join("\n")
        }
    };
    emit(&args.out, format, body)
}

fn minimize_g_cmd(mut args: ParamArgs) -> Result<(), Failure> {
    let params = args.resolve(&[])?;
    let format = args.out.format.unwrap_or(Format::Json);
    reject_csv(format, "minimize-g")?;
    if params.kappa > 0.0 && is_constant_coupling(&params) {
        let g = g_eval(&params, ExtendedT::Finite(1.0), 0)?;
        let body = match format {
            Format::Json => json_body(&json!({
                "params": params,
                "case": "CONSTANT_G",
                "g_value": g,
                "note": "the coupling function is constant; every t in [0, inf] is a minimizer",
            })),
            _ => format!("CONSTANT_G: g == {g:e} for every t"),
        };
        return emit(&args.out, format, body);
    }
    let set = find_minimizers(&params)?;
    let body = match format {
        Format::Json => json_body(&json!({
            "params": params,
            "minimizers": set,
        })),
        _ => {
            let mut lines = vec![format!("g_inf = {:e}", set.g_inf)];
            for p in &set.points {
                lines.push(format!(
                    "t = {} (g = {:e}, degenerate = {}, g'' = {:e}, |r| = {})",
                    p.t,
                    p.g_value,
                    p.degenerate,
                    p.second_derivative,
                    p.stationarity_residual
                        .map_or("n/a".into(), |r| format!("{r:e}")),
                ));
            }
            lines.join("\n")
        }
    };
    emit(&args.out, format, body)
}

fn deficit_cmd(mut args: DeficitArgs) -> Result<(), Failure> {
    let params = args.params.resolve(&[])?;
    let format = args.params.out.format.unwrap_or(Format::Json);
    reject_csv(format, "deficit")?;
    if args.tau <= 0.0 {
        return Err(Failure::Usage(format!("--tau must be > 0, got {}", args.tau)));
    }
    if args.a < 0.0 || args.b < 0.0 {
        return Err(Failure::Usage("--a and --b must be nonnegative".into()));
    }
    let base = bubble(&params, 1.0, args.tau)?;
    let bump = perturbation_bump();
    let build = |coef: f64, eps: f64| -> RadialProfile {
        let mut profile = if coef == 0.0 {
            RadialProfile::zero()
        } else {
            base.scale(coef)
        };
        if eps != 0.0 {
            profile = profile.add(&bump.scale(eps));
        }
        profile
    };
    let u = build(args.a, args.bump_u);
    let v = build(args.b, args.bump_v);

    if let Some(path) = &args.dump_profiles {
        let radii: Vec<f64> = (0..200)
            .map(|i| 1e-3 * (1e6_f64).powf(i as f64 / 199.0))
            .collect();
        let mut table = String::from("r,u,du,v,dv\n");
        for &r in &radii {
            table.push_str(&format!(
                "{:e},{:e},{:e},{:e},{:e}\n",
                r,
                u.value(r),
                u.slope(r),
                v.value(r),
                v.slope(r)
            ));
        }
        std::fs::write(path, table)?;
    }

    let report = deficit_pair_with_tol(&u, &v, &params, args.quad_tol)?;
    let distance = if params.kappa > 0.0 && !is_constant_coupling(&params) {
        let set = find_minimizers(&params)?;
        Some(manifold_distance(&u, &v, &params, &set)?)
    } else {
        None
    };
    let body = match format {
        Format::Json => json_body(&json!({
            "params": params,
            "pair": {
                "a": args.a, "b": args.b, "tau": args.tau,
                "bump_u": args.bump_u, "bump_v": args.bump_v,
            },
            "report": report,
            "manifold_distance": distance,
        })),
        _ => {
            let mut lines = vec![
                format!("deficit = {:e}", report.deficit),
                format!("relative_deficit = {:e}", report.relative_deficit),
                format!("energy_u = {:e}", report.energy_u),
                format!("energy_v = {:e}", report.energy_v),
            ];
            if let Some(d) = &distance {
                lines.push(format!("manifold_distance = {:e}", d.raw));
                lines.push(format!("manifold_distance_normalized = {:e}", d.normalized));
            }
            lines.join("\n")
        }
    };
    emit(&args.params.out, format, body)
}

fn sweep_cmd(mut args: SweepArgs) -> Result<(), Failure> {
    let format = args.params.out.format.unwrap_or(Format::Json);
    let (params, default_t0) = match &args.case {
        Some(label) => {
            let label = parse_case_label(label)
                .ok_or_else(|| Failure::Usage(format!("unknown case label {:?}", args.case)))?;
            let (p, t0) = canonical_instance(label)?;
            (p, Some(t0))
        }
        None => (args.params.resolve(&["t0"])?, None),
    };
    if args.t0.is_none() {
        if let Some(path) = &args.params.out.config {
            let mut keys = ParamArgs::keys();
            keys.push("t0");
            let file = ConfigFile::load(path, &keys).map_err(Failure::Usage)?;
            file.fill(&mut args.t0, "t0").map_err(Failure::Usage)?;
        }
    }
    let t0 = match (&args.t0, default_t0) {
        (Some(raw), _) => parse_extended(raw).map_err(Failure::Usage)?,
        (None, Some(t0)) => t0,
        (None, None) => {
            let set = find_minimizers(&params)?;
            set.points[0].t
        }
    };
    if !(args.eps_points >= 4) {
        return Err(Failure::Usage("--eps-points must be at least 4".into()));
    }
    let grid = geometric_grid(args.eps_max, args.eps_min, args.eps_points);
    let report = stability_sweep(&params, &t0, &grid)?;
    let body = match format {
        Format::Json => json_body(&serde_json::to_value(&report).expect("serializable")),
        Format::Csv => report.to_csv(),
        Format::Text => format!(
            "case = {}\nt0 = {}\nslope_deficit = {:.6}\nslope_distance = {:.6}\niota_estimate = {:.6}\nquadrature_check_rel_error = {:e}\nobserved_constant = {:e}",
            report.case_label,
            report.t0,
            report.slope_deficit,
            report.slope_distance,
            report.iota_estimate,
            report.quadrature_check_rel_error,
            report.observed_constant,
        ),
    };
    emit(&args.params.out, format, body)
}

fn transform_cmd(mut args: TransformArgs) -> Result<(), Failure> {
    let params = args.params.resolve(&["ell"])?;
    if args.ell.is_none() {
        if let Some(path) = &args.params.out.config {
            let mut keys = ParamArgs::keys();
            keys.push("ell");
            let file = ConfigFile::load(path, &keys).map_err(Failure::Usage)?;
            file.fill(&mut args.ell, "ell").map_err(Failure::Usage)?;
        }
    }
    let ell = args
        .ell
        .ok_or_else(|| Failure::Usage("missing required parameter --ell".into()))?;
    let format = args.params.out.format.unwrap_or(Format::Json);
    reject_csv(format, "transform-check")?;
    if args.a < 0.0 || args.b < 0.0 {
        return Err(Failure::Usage("--a and --b must be nonnegative".into()));
    }
    let base = ell_bubble(&params, ell, 1.0, args.lam)?;
    let bump = perturbation_bump();
    let build = |coef: f64, eps: f64| -> RadialProfile {
        let mut profile = if coef == 0.0 {
            RadialProfile::zero()
        } else {
            base.scale(coef)
        };
        if eps != 0.0 {
            profile = profile.add(&bump.scale(eps));
        }
        profile
    };
    let u = build(args.a, args.bump_u);
    let v = build(args.b, args.bump_v);
    let report = corollary_check(&u, &v, ell, &params)?;
    let body = match format {
        Format::Json => json_body(&json!({
            "params": params,
            "pair": {
                "a": args.a, "b": args.b, "lam": args.lam,
                "bump_u": args.bump_u, "bump_v": args.bump_v,
            },
            "report": report,
        })),
        _ => format!(
            "deficit_ell = {:e}\ndeficit_transformed = {:e}\nbest_constant_used = {:e}",
            report.deficit_ell, report.deficit_transformed, report.best_constant_used
        ),
    };
    emit(&args.params.out, format, body)
}

fn ineq_cmd(args: IneqArgs) -> Result<(), Failure> {
    let format = args.out.format.unwrap_or(Format::Json);
    reject_csv(format, "ineq-test")?;
    let all = [
        IneqCaseId::L1Ge2,
        IneqCaseId::L1Lt2,
        IneqCaseId::L2BothGe2,
        IneqCaseId::L2AlphaTwoBetaGt2,
        IneqCaseId::L2BothEq2,
        IneqCaseId::L2Mixed,
        IneqCaseId::L2BetaEq2,
        IneqCaseId::L2BothLt2,
    ];
    let selected: Vec<IneqCaseId> = match &args.case {
        Some(raw) => vec![IneqCaseId::parse(raw)
            .ok_or_else(|| Failure::Usage(format!("unknown inequality case {raw:?}")))?],
        None => all.to_vec(),
    };
    let mut results = Vec::new();
    let mut total_violations = 0;
    for (i, case) in selected.iter().enumerate() {
        let seed = args.seed ^ (i as u64);
        let entry = match case {
            IneqCaseId::L1Ge2 | IneqCaseId::L1Lt2 => {
                let default = if *case == IneqCaseId::L1Ge2 { 3.0 } else { 1.5 };
                let exponent = args.iota.unwrap_or(default);
                let (c, viol) = lemma1_check(exponent, args.m, args.samples, seed)?;
                total_violations += viol;
                json!({
                    "case": case.as_str(),
                    "iota": exponent,
                    "m": args.m,
                    "constant": c,
                    "samples": args.samples,
                    "violations": viol,
                })
            }
            _ => {
                let (da, db) = reference_exponents(*case).expect("two-variable case");
                let alpha = args.alpha.unwrap_or(da);
                let beta = args.beta.unwrap_or(db);
                let (c, viol) = lemma2_check(*case, alpha, beta, args.m, args.samples, seed)?;
                total_violations += viol;
                let mut entry = json!({
                    "case": case.as_str(),
                    "alpha": alpha,
                    "beta": beta,
                    "m": args.m,
                    "constant": c,
                    "samples": args.samples,
                    "violations": viol,
                });
                if *case == IneqCaseId::L2BothLt2 {
                    entry["convex_hull_feasible"] = json!(convex_hull_feasible(alpha, beta));
                }
                entry
            }
        };
        results.push(entry);
    }
    let body = match format {
        Format::Json => json_body(&json!({
            "seed": args.seed,
            "total_violations": total_violations,
            "results": results,
        })),
        _ => results
            .iter()
            .map(|r| {
                format!(
                    "{}: constant = {}, violations = {}",
                    r["case"].as_str().unwrap_or("?"),
                    r["constant"],
                    r["violations"]
                )
            })
            .collect::<Vec<_>>()
            .join("\n"),
    };
    emit(&args.out, format, body)?;
    if total_violations > 0 {
        return Err(Failure::Numerical(format!(
            "{total_violations} inequality violations observed"
        )));
    }
    Ok(())
}

fn selfcheck_cmd(args: SelfcheckArgs) -> Result<(), Failure> {
    let format = args.out.format.unwrap_or(Format::Text);
    reject_csv(format, "selfcheck")?;
    let outcomes = acceptance::run_all(args.seed);
    let ok = acceptance::all_passed(&outcomes);
    let body = match format {
        Format::Json => json_body(&json!({
            "seed": args.seed,
            "passed": ok,
            "criteria": outcomes.iter().map(|o| json!({
                "index": o.index,
                "name": o.name,
                "passed": o.passed,
                "detail": o.detail,
            })).collect::<Vec<_>>(),
        })),
        _ => {
            let mut lines: Vec<String> = outcomes
                .iter()
                .map(|o| {
                    format!(
                        "{} {:2}. {} — {}",
                        if o.passed { "PASS" } else { "FAIL" },
                        o.index,
                        o.name,
                        o.detail
                    )
                })
                .collect();
            lines.push(format!(
                "selfcheck: {}",
                if ok { "all criteria passed" } else { "FAILED" }
            ));
            lines.join("\n")
        }
    };
    emit(&args.out, format, body)?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Acceptance)
    }
}

fn parse_extended(raw: &str) -> Result<ExtendedT, String> {
    if raw == "inf" || raw == "infinity" {
        return Ok(ExtendedT::Infinity);
    }
    let v: f64 = raw
        .parse()
        .map_err(|_| format!("--t0 expects a nonnegative number or \"inf\", got {raw:?}"))?;
    ExtendedT::finite(v).map_err(|e| e.to_string())
}
