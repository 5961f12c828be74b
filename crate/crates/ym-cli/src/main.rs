//! `ym` — compute explicit Young measures of piecewise monotone functions,
//! emit density/CDF tables, and verify them against the brute-force
//! pushforward oracle.
//!
//! Exit codes: 0 success, 1 parse error, 2 validation or precondition
//! error, 3 verification failure.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use ym_core::expr::Expr;
use ym_core::measure::{self, compute, default_beta_family, YoungMeasure};
use ym_core::oracle::{empirical_pushforward, kolmogorov_distance};
use ym_core::oscillation::{
    build_example, dilate, BuildError, ExampleParams, ExampleTag, OscillationSpec,
};
use ym_core::piecewise::{LoadError, PiecewiseFunction};

const EXIT_PARSE: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_VERIFICATION: u8 = 3;

#[derive(Parser)]
#[command(
    name = "ym",
    about = "Young measures of piecewise monotone-or-constant functions",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the measure: atoms table plus density/CDF table over a y-grid
    Compute {
        #[command(flatten)]
        input: InputArgs,
        /// Base path for output files (<base>.atoms.csv, <base>.density.csv);
        /// stdout when omitted
        #[arg(long)]
        output: Option<PathBuf>,
        /// Number of rows in the density/CDF table
        #[arg(long, default_value_t = 1001)]
        grid: usize,
    },
    /// Check the defining identity and the oracle KS distance
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Report path; stdout when omitted
        #[arg(long)]
        output: Option<PathBuf>,
        /// Comma-separated test functions (in y); default family
        /// 1,y,y^2,y^3,sin(y),exp(y)
        #[arg(long)]
        betas: Option<String>,
        /// Oracle sample count
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
        /// Residual tolerance
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Test hook: shift every measure-side integral by this amount
        #[arg(long, default_value_t = 0.0)]
        perturb: f64,
    },
    /// Dilate a generating function and compare the two measures
    Oscillate {
        #[command(flatten)]
        input: InputArgs,
        /// Dilation count
        #[arg(long, default_value_t = 1)]
        c: u32,
        /// Path for the dilated function JSON; stdout when omitted
        #[arg(long)]
        output: Option<PathBuf>,
        /// Deviation tolerance for the pass flag
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Emit a builder function from the example corpus as JSON
    Example {
        #[command(flatten)]
        input: InputArgs,
        /// Output path; stdout when omitted
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Empirical pushforward + Kolmogorov distance only
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        /// Report path; stdout when omitted
        #[arg(long)]
        output: Option<PathBuf>,
        /// Sample count
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Path to a piecewise-function JSON file; stdin when neither --input
    /// nor --example is given
    #[arg(long, conflicts_with = "example")]
    input: Option<PathBuf>,
    /// Example tag a|b|c|d|e from the built-in corpus
    #[arg(long)]
    example: Option<String>,
    /// Builder parameter (repeatable): a=, b=, n=, kmax=
    #[arg(long = "param", value_name = "K=V")]
    params: Vec<String>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }

    fn validation(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_VALIDATION,
            message: message.into(),
        }
    }

    fn verification(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_VERIFICATION,
            message: message.into(),
        }
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Validation(v) => Failure::validation(format!("validation error: {v}")),
            LoadError::Json(j) => Failure::parse(format!(
                "JSON parse error at line {}, column {}: {j}",
                j.line(),
                j.column()
            )),
            other => Failure::parse(format!("parse error: {other}")),
        }
    }
}

impl From<BuildError> for Failure {
    fn from(e: BuildError) -> Self {
        Failure::validation(format!("builder error: {e}"))
    }
}

impl From<measure::MeasureError> for Failure {
    fn from(e: measure::MeasureError) -> Self {
        Failure::validation(format!("evaluation error: {e}"))
    }
}

impl From<ym_core::oracle::OracleError> for Failure {
    fn from(e: ym_core::oracle::OracleError) -> Self {
        Failure::validation(format!("oracle error: {e}"))
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::validation(format!("io error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("ym: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Compute {
            input,
            output,
            grid,
        } => cmd_compute(&input, output.as_deref(), grid),
        Cmd::Verify {
            input,
            output,
            betas,
            samples,
            tol,
            perturb,
        } => cmd_verify(&input, output.as_deref(), betas.as_deref(), samples, tol, perturb),
        Cmd::Oscillate {
            input,
            c,
            output,
            tol,
        } => cmd_oscillate(&input, c, output.as_deref(), tol),
        Cmd::Example { input, output } => cmd_example(&input, output.as_deref()),
        Cmd::Oracle {
            input,
            output,
            samples,
        } => cmd_oracle(&input, output.as_deref(), samples),
    }
}

// ---------------------------------------------------------------------------
// input loading
// ---------------------------------------------------------------------------

fn parse_number(text: &str) -> Result<f64, Failure> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: f64 = p
            .trim()
            .parse()
            .map_err(|_| Failure::parse(format!("bad number {text:?}")))?;
        let q: f64 = q
            .trim()
            .parse()
            .map_err(|_| Failure::parse(format!("bad number {text:?}")))?;
        if q == 0.0 {
            return Err(Failure::parse(format!("bad number {text:?}: zero denominator")));
        }
        Ok(p / q)
    } else {
        t.parse()
            .map_err(|_| Failure::parse(format!("bad number {text:?}")))
    }
}

fn example_params(raw: &[String]) -> Result<ExampleParams, Failure> {
    let mut params = ExampleParams::default();
    for item in raw {
        let Some((key, value)) = item.split_once('=') else {
            return Err(Failure::parse(format!(
                "bad --param {item:?}, expected K=V"
            )));
        };
        match key.trim() {
            "a" => params.a = parse_number(value)?,
            "b" => params.b = parse_number(value)?,
            "n" => {
                params.n = value.trim().parse().map_err(|_| {
                    Failure::parse(format!("bad --param n={value:?}, expected a positive integer"))
                })?
            }
            "kmax" | "k_max" => {
                params.k_max = value.trim().parse().map_err(|_| {
                    Failure::parse(format!(
                        "bad --param kmax={value:?}, expected a positive integer"
                    ))
                })?
            }
            other => {
                return Err(Failure::parse(format!(
                    "unknown --param key {other:?}, expected a, b, n or kmax"
                )))
            }
        }
    }
    Ok(params)
}

fn load_function(input: &InputArgs) -> Result<(String, PiecewiseFunction), Failure> {
    if let Some(tag_text) = &input.example {
        let tag: ExampleTag = tag_text
            .parse()
            .map_err(|e: String| Failure::validation(e))?;
        let params = example_params(&input.params)?;
        let pf = build_example(tag, &params)?;
        return Ok((format!("example {tag_text}"), pf));
    }
    let (name, text) = match &input.input {
        Some(path) => (
            path.display().to_string(),
            std::fs::read_to_string(path)
                .map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))?,
        ),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Failure::parse(format!("cannot read stdin: {e}")))?;
            ("<stdin>".to_string(), buf)
        }
    };
    let pf = PiecewiseFunction::from_json(&text)?;
    Ok((name, pf))
}

fn emit(output: Option<&std::path::Path>, contents: &str) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, contents)?,
        None => print!("{contents}"),
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

/// Relative clip applied to the y-grid when a segment density is singular at
/// a support endpoint, so tables stay finite for arcsine-type measures.
const SINGULAR_GRID_CLIP: f64 = 1e-9;

fn atoms_csv(ym: &YoungMeasure) -> String {
    let mut out = String::from("location,weight\n");
    for a in ym.atoms() {
        let _ = writeln!(out, "{},{}", a.location, a.weight);
    }
    out
}

fn density_csv(ym: &YoungMeasure, grid: usize) -> Result<String, Failure> {
    let k = ym.k_range();
    let mut out = String::from("y,density,cdf\n");
    if k.is_point() {
        let y = k.lo();
        let _ = writeln!(out, "{},{},{}", y, 0.0, ym.cdf(y)?);
        return Ok(out);
    }
    let clip = ym.segments().iter().any(|seg| {
        seg.is_singular_at(seg.support().lo()) || seg.is_singular_at(seg.support().hi())
    });
    let (lo, hi) = if clip {
        let g = SINGULAR_GRID_CLIP * k.length();
        (k.lo() + g, k.hi() - g)
    } else {
        (k.lo(), k.hi())
    };
    let n = grid.max(2);
    for j in 0..n {
        let y = lo + (hi - lo) * j as f64 / (n - 1) as f64;
        let d = ym.density_at(y)?;
        let c = ym.cdf(y)?;
        let _ = writeln!(out, "{y},{d},{c}");
    }
    Ok(out)
}

fn cmd_compute(
    input: &InputArgs,
    output: Option<&std::path::Path>,
    grid: usize,
) -> Result<(), Failure> {
    let (_, pf) = load_function(input)?;
    let ym = compute(&pf);
    let atoms = atoms_csv(&ym);
    let density = density_csv(&ym, grid)?;
    match output {
        Some(base) => {
            let base = base.to_path_buf();
            let mut atoms_path = base.clone().into_os_string();
            atoms_path.push(".atoms.csv");
            let mut density_path = base.into_os_string();
            density_path.push(".density.csv");
            std::fs::write(atoms_path, atoms)?;
            std::fs::write(density_path, density)?;
        }
        None => {
            print!("# atoms\n{atoms}# density\n{density}");
        }
    }
    Ok(())
}

fn parse_betas(list: Option<&str>) -> Result<Vec<Expr>, Failure> {
    match list {
        None => Ok(default_beta_family()),
        Some(text) => text
            .split(',')
            .map(|s| {
                Expr::parse(s.trim()).map_err(|e| {
                    Failure::parse(format!("bad test function {s:?}: {e}"))
                })
            })
            .collect(),
    }
}

/// Deterministic-midpoint-grid KS bound: each monotone branch or atom can
/// misalign the empirical CDF by at most 1/N, with generous headroom.
fn ks_bound(pieces: usize, samples: usize) -> f64 {
    (4.0 * (pieces as f64 + 2.0) / samples as f64).clamp(1e-9, 1.0)
}

fn cmd_verify(
    input: &InputArgs,
    output: Option<&std::path::Path>,
    betas: Option<&str>,
    samples: usize,
    tol: f64,
    perturb: f64,
) -> Result<(), Failure> {
    let (name, pf) = load_function(input)?;
    let betas = parse_betas(betas)?;
    let mut report = measure::verify_identity(&pf, &betas, tol)?;
    if perturb != 0.0 {
        for check in &mut report.checks {
            check.lhs += perturb;
            check.residual = (check.lhs - check.rhs).abs();
        }
        report.max_residual = report
            .checks
            .iter()
            .map(|c| c.residual)
            .fold(0.0, f64::max);
        report.pass = report.max_residual <= report.tolerance;
    }

    let ym = compute(&pf);
    let emp = empirical_pushforward(&pf, samples)?;
    let ks = kolmogorov_distance(&emp, &ym)?;
    let bound = ks_bound(pf.pieces().len(), samples);
    let oracle_pass = ks <= bound;

    let pass = report.pass && oracle_pass;
    let doc = json!({
        "function": name,
        "identity": {
            "tolerance": report.tolerance,
            "max_residual": report.max_residual,
            "pass": report.pass,
            "checks": report.checks.iter().map(|c| json!({
                "beta": c.beta,
                "lhs": c.lhs,
                "rhs": c.rhs,
                "residual": c.residual,
            })).collect::<Vec<_>>(),
        },
        "oracle": {
            "n_samples": samples,
            "ks_distance": ks,
            "bound": bound,
            "pass": oracle_pass,
        },
        "pass": pass,
    });
    emit(output, &format!("{doc:#}\n"))?;
    if !pass {
        return Err(Failure::verification(format!(
            "verification failed: max residual {:.3e} (tol {:.3e}), KS {ks:.3e} (bound {bound:.3e})",
            report.max_residual, report.tolerance
        )));
    }
    Ok(())
}

fn cmd_oscillate(
    input: &InputArgs,
    c: u32,
    output: Option<&std::path::Path>,
    tol: f64,
) -> Result<(), Failure> {
    let (_, generator) = load_function(input)?;
    let spec = OscillationSpec::new(generator, c)
        .map_err(|e| Failure::validation(format!("precondition: {e}")))?;
    let dilated = dilate(&spec)?;

    let base = compute(spec.generator());
    let ym = compute(&dilated);
    let k = base.k_range();
    let mut max_density_dev = 0.0f64;
    for j in 0..200 {
        let y = k.lo() + (j as f64 + 0.5) * k.length() / 200.0;
        let dev = (base.density_at(y)? - ym.density_at(y)?).abs();
        max_density_dev = max_density_dev.max(dev);
    }
    let mut max_atom_dev = if base.atoms().len() == ym.atoms().len() {
        0.0f64
    } else {
        f64::INFINITY
    };
    for (a, b) in base.atoms().iter().zip(ym.atoms()) {
        max_atom_dev = max_atom_dev
            .max((a.location - b.location).abs())
            .max((a.weight - b.weight).abs());
    }

    let pass = max_density_dev <= tol && max_atom_dev <= tol;
    let report = json!({
        "c": c,
        "max_density_deviation": max_density_dev,
        "max_atom_deviation": max_atom_dev,
        "tolerance": tol,
        "pass": pass,
    });
    match output {
        Some(path) => {
            std::fs::write(path, dilated.to_json() + "\n")?;
            println!("{report:#}");
        }
        None => {
            println!("{}", dilated.to_json());
            println!("{report:#}");
        }
    }
    if !pass {
        return Err(Failure::verification(format!(
            "oscillation comparison failed: density dev {max_density_dev:.3e}, atom dev {max_atom_dev:.3e} (tol {tol:.3e})"
        )));
    }
    Ok(())
}

fn cmd_example(input: &InputArgs, output: Option<&std::path::Path>) -> Result<(), Failure> {
    if input.example.is_none() {
        return Err(Failure::validation(
            "`ym example` requires --example TAG".to_string(),
        ));
    }
    let (_, pf) = load_function(input)?;
    emit(output, &(pf.to_json() + "\n"))
}

fn cmd_oracle(
    input: &InputArgs,
    output: Option<&std::path::Path>,
    samples: usize,
) -> Result<(), Failure> {
    let (_, pf) = load_function(input)?;
    let ym = compute(&pf);
    let emp = empirical_pushforward(&pf, samples)?;
    let ks = kolmogorov_distance(&emp, &ym)?;
    let bound = ks_bound(pf.pieces().len(), samples);
    let doc = json!({
        "n_samples": samples,
        "ks_distance": ks,
        "bound": bound,
        "pass": ks <= bound,
    });
    emit(output, &format!("{doc:#}\n"))?;
    Ok(())
}
