//! The `psi` command line.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 usage or input error,
//! 3 internal invariant breach.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bounds::{pigeonhole_certificate, verify_ratio_bound};
use crate::diagram::{render, DiagramFormat, DiagramSpec};
use crate::error::Error;
use crate::generators::Family;
use crate::inertia::signature;
use crate::io::{
    bound_report_to_json, certificate_to_json, herm_from_json, parse_json, parse_rational,
    pattern_from_json, poly_from_json, poly_to_json, psi_report_to_json, reduction_to_json, search_result_to_json,
};
use crate::poly::{HermitianPoly, MultiIndex, SignaturePair};
use crate::psi::{in_psi, min_psi_index, AnyPoly, DEFAULT_D_MAX};
use crate::reduction::{partial_row_echelon, DecomposedForm, Tolerances};
use crate::search::{search_max_ratio, SearchConfig, SearchResult, SignPattern, Strategy};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BREACH: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RenderArg {
    Svg,
    Ascii,
}

#[derive(Parser, Debug)]
#[command(name = "psi", version, about = "Positivity classes of Hermitian polynomials")]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Input {
    /// Real polynomial JSON (`-` for stdin).
    #[arg(long)]
    poly: Option<PathBuf>,
    /// Hermitian polynomial JSON (`-` for stdin).
    #[arg(long)]
    herm: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit a member of one of the built-in families.
    Generate {
        #[command(subcommand)]
        family: FamilyCmd,
    },
    /// Decide membership in Psi_d.
    CheckPsi {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        d: u32,
    },
    /// Smallest d with membership in Psi_d, up to --max-d.
    MinD {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_D_MAX)]
        max_d: u32,
    },
    /// Signature pair of the coefficient matrix.
    Signature {
        #[command(flatten)]
        input: Input,
    },
    /// Search sign patterns for a large N-/N+ ratio.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long = "D")]
        degree: u32,
        #[arg(long, default_value_t = 1)]
        d: u32,
        #[arg(long, default_value = "local")]
        strategy: Strategy,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        restarts: u32,
        /// Restrict to lattice points with every exponent at most this value.
        #[arg(long)]
        max_coord: Option<u32>,
    },
    /// Partial row-echelon reduction of a Psi_1 member.
    Reduce {
        #[arg(long)]
        herm: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the signature-ratio ceiling for Psi_d.
    VerifyBounds {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        d: u32,
    },
    /// Fiber-counting certificate for a diagonal Psi_1 member.
    Certificate {
        #[arg(long)]
        poly: PathBuf,
    },
    /// Draw the Newton diagram of a polynomial or sign pattern.
    Diagram {
        #[arg(long, conflicts_with = "pattern", required_unless_present = "pattern")]
        poly: Option<PathBuf>,
        #[arg(long)]
        pattern: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "svg")]
        render: RenderArg,
        #[arg(long)]
        simplices: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum FamilyCmd {
    Pd {
        #[arg(long)]
        n: usize,
        #[arg(long = "D")]
        degree: u32,
    },
    TwoVar {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        m: u32,
    },
    Inductive {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        k: u32,
        /// A number, or `auto`.
        #[arg(long, default_value = "auto")]
        nu: String,
        #[arg(long)]
        homogenize: bool,
    },
    Qk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        /// A rational, or `auto`.
        #[arg(long, default_value = "auto")]
        epsilon: String,
    },
    Lambda {
        #[arg(long)]
        lambda: String,
    },
    Fig2,
}

/// A failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::NotInPsiD(_) | Error::EpsilonSearchFailed(_) => EXIT_NEGATIVE,
            Error::CertificateFailure(_) | Error::PivotDominanceViolated { .. } | Error::NumericalBreakdown(_) => {
                EXIT_BREACH
            }
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: EXIT_USAGE, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

/// What a subcommand produced: a JSON value, its text rendering, and the
/// exit code.
struct Outcome {
    json: Value,
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Outcome { json, text, code: EXIT_OK }
    }
}

fn read_source(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
    }
}

fn load_value(path: &Path) -> Result<Value, Failure> {
    Ok(parse_json(&read_source(path)?)?)
}

fn load_input(input: &Input) -> Result<AnyPoly, Failure> {
    match (&input.poly, &input.herm) {
        (Some(p), None) => Ok(AnyPoly::Real(poly_from_json(&load_value(p)?)?)),
        (None, Some(h)) => Ok(AnyPoly::Hermitian(herm_from_json(&load_value(h)?)?)),
        _ => Err(usage("give exactly one of --poly, --herm")),
    }
}

fn input_signature(input: &AnyPoly) -> Result<SignaturePair, Failure> {
    Ok(match input {
        AnyPoly::Real(p) => p.sign_counts(),
        AnyPoly::Hermitian(r) => signature(r)?,
    })
}

fn poly_text(p: &crate::poly::RealSparsePoly) -> String {
    let sig = p.sign_counts();
    let mut out = format!("n={} terms={} N+={} N-={}\n", p.nvars(), p.len(), sig.n_plus, sig.n_minus);
    for (a, c) in p.terms() {
        out.push_str(&format!("{a} {c}\n"));
    }
    out
}

fn generate(family: &FamilyCmd) -> Result<Outcome, Failure> {
    let fam = match family {
        FamilyCmd::Pd { n, degree } => Family::Pd { n: *n, degree: *degree },
        FamilyCmd::TwoVar { d, m } => Family::TwoVar { d: *d, m: *m },
        FamilyCmd::Inductive { n, d, k, nu, homogenize } => {
            let nu = match nu.as_str() {
                "auto" => None,
                s => Some(s.parse::<u32>().map_err(|_| usage(format!("--nu must be a number or auto, got {s:?}")))?),
            };
            Family::Inductive { n: *n, d: *d, k: *k, nu, homogenize: *homogenize }
        }
        FamilyCmd::Qk { n, k, epsilon } => {
            let epsilon = match epsilon.as_str() {
                "auto" => None,
                s => Some(parse_rational(s)?),
            };
            Family::Qk { n: *n, k: *k, epsilon }
        }
        FamilyCmd::Lambda { lambda } => Family::Lambda { lambda: parse_rational(lambda)? },
        FamilyCmd::Fig2 => Family::Fig2,
    };
    let p = fam.generate()?;
    Ok(Outcome::ok(poly_to_json(&p), poly_text(&p)))
}

fn check_psi(input: &Input, d: u32) -> Result<Outcome, Failure> {
    let poly = load_input(input)?;
    let report = in_psi(&poly, d)?;
    let text = format!("d={} member={}\n", report.d, report.member);
    let code = if report.member { EXIT_OK } else { EXIT_NEGATIVE };
    Ok(Outcome { json: psi_report_to_json(&report), text, code })
}

fn min_d(input: &Input, max_d: u32) -> Result<Outcome, Failure> {
    let poly = load_input(input)?;
    let found = min_psi_index(&poly, max_d)?;
    let text = match found {
        Some(d) => format!("min_d={d}\n"),
        None => format!("min_d>{max_d}\n"),
    };
    let code = if found.is_some() { EXIT_OK } else { EXIT_NEGATIVE };
    Ok(Outcome { json: json!({"min_d": found, "max_d": max_d}), text, code })
}

fn signature_cmd(input: &Input) -> Result<Outcome, Failure> {
    let sig = input_signature(&load_input(input)?)?;
    Ok(Outcome::ok(
        json!({"n_plus": sig.n_plus, "n_minus": sig.n_minus}),
        format!("N+={} N-={}\n", sig.n_plus, sig.n_minus),
    ))
}

fn search_text(r: &SearchResult, exhausted: bool) -> String {
    let c = r.best.counts();
    format!(
        "strategy={} seed={} evaluations={} N+={} N-={} ratio={}{}\n",
        r.strategy,
        r.seed,
        r.evaluations,
        c.n_plus,
        c.n_minus,
        r.ratio,
        if exhausted { " (budget exhausted)" } else { "" }
    )
}

#[allow(clippy::too_many_arguments)]
fn search(
    n: usize,
    degree: u32,
    d: u32,
    strategy: Strategy,
    budget: u64,
    seed: u64,
    restarts: u32,
    max_coord: Option<u32>,
) -> Result<Outcome, Failure> {
    if n < 2 {
        return Err(usage("--n must be at least 2"));
    }
    let mut config = SearchConfig::new(strategy);
    config.budget = budget;
    config.seed = seed;
    config.restarts = restarts;
    config.support = max_coord
        .map(|c| MultiIndex::all_of_degree(n, degree).into_iter().filter(|a| a.exps().iter().all(|&e| e <= c)).collect());
    let (result, exhausted) = match search_max_ratio(n, degree, d, &config) {
        Ok(r) => (r, false),
        Err(Error::BudgetExhausted(r)) => (*r, true),
        Err(e) => return Err(e.into()),
    };
    let mut json = search_result_to_json(&result);
    json["budget_exhausted"] = Value::Bool(exhausted);
    let text = search_text(&result, exhausted);
    Ok(Outcome::ok(json, text))
}

fn reduce(herm: &Path, tol: f64, out: Option<&Path>) -> Result<Outcome, Failure> {
    let r: HermitianPoly = herm_from_json(&load_value(herm)?)?;
    let form = DecomposedForm::from_hermitian(&r)?;
    let tolerances = Tolerances { global: tol, ..Tolerances::default() };
    let red = partial_row_echelon(&form, &tolerances)?;
    let err = red.reconstruction_error();
    let json = reduction_to_json(&red);
    let text = format!(
        "N+={} N-={} steps={} reconstruction_error={err:.3e}\n",
        red.origin_signature.n_plus,
        red.origin_signature.n_minus,
        red.steps.len()
    );
    if let Some(path) = out {
        fs::write(path, serde_json::to_string_pretty(&json).expect("json") + "\n")?;
    }
    let code = if err <= tol { EXIT_OK } else { EXIT_BREACH };
    Ok(Outcome { json, text, code })
}

fn verify_bounds(input: &Input, n: Option<usize>, d: u32) -> Result<Outcome, Failure> {
    let poly = load_input(input)?;
    if let Some(n) = n {
        if n != poly.nvars() {
            return Err(usage(format!("--n {n} does not match the input's {} variables", poly.nvars())));
        }
    }
    let report = verify_ratio_bound(input_signature(&poly)?, poly.nvars(), d);
    let text = format!(
        "N+={} N-={} bound={} satisfied={} strict={}\n",
        report.signature.n_plus, report.signature.n_minus, report.bound, report.satisfied, report.strict
    );
    let code = if report.satisfied { EXIT_OK } else { EXIT_NEGATIVE };
    Ok(Outcome { json: bound_report_to_json(&report), text, code })
}

fn certificate(poly: &Path) -> Result<Outcome, Failure> {
    let p = poly_from_json(&load_value(poly)?)?;
    let cert = pigeonhole_certificate(&p)?;
    let mut text = format!("max_fiber={}\n", cert.max_fiber);
    for (a, b) in &cert.assignment {
        text.push_str(&format!("{a} -> {b}\n"));
    }
    Ok(Outcome::ok(certificate_to_json(&cert), text))
}

fn diagram(
    poly: Option<&Path>,
    pattern: Option<&Path>,
    render_as: RenderArg,
    simplices: bool,
    out: Option<&Path>,
) -> Result<Outcome, Failure> {
    let pat = match (poly, pattern) {
        (Some(p), None) => SignPattern::from_poly(&poly_from_json(&load_value(p)?)?)?,
        (None, Some(p)) => pattern_from_json(&load_value(p)?)?,
        _ => return Err(usage("give exactly one of --poly, --pattern")),
    };
    let format = match render_as {
        RenderArg::Svg => DiagramFormat::Svg,
        RenderArg::Ascii => DiagramFormat::Ascii,
    };
    let doc = render(&DiagramSpec { pattern: &pat, format, simplices })?;
    if let Some(path) = out {
        fs::write(path, &doc)?;
    }
    Ok(Outcome::ok(json!({"format": format!("{render_as:?}").to_lowercase(), "document": doc}), doc))
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Generate { family } => generate(family),
        Command::CheckPsi { input, d } => check_psi(input, *d),
        Command::MinD { input, max_d } => min_d(input, *max_d),
        Command::Signature { input } => signature_cmd(input),
        Command::Search { n, degree, d, strategy, budget, seed, restarts, max_coord } => {
            search(*n, *degree, *d, *strategy, *budget, *seed, *restarts, *max_coord)
        }
        Command::Reduce { herm, tol, out } => reduce(herm, *tol, out.as_deref()),
        Command::VerifyBounds { input, n, d } => verify_bounds(input, *n, *d),
        Command::Certificate { poly } => certificate(poly),
        Command::Diagram { poly, pattern, render, simplices, out } => {
            diagram(poly.as_deref(), pattern.as_deref(), *render, *simplices, out.as_deref())
        }
    }
}

/// Runs with explicit output streams; `argv[0]` is the program name.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(outcome) => {
            let _ = match cli.format {
                OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&outcome.json).expect("json")),
                OutputFormat::Text => write!(out, "{}", outcome.text),
            };
            outcome.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

