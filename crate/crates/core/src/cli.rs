//! The `unidisk` command-line front end.
//!
//! Series travel as JSON (`{"order": N, "coeffs": [[re, im], ...]}`),
//! reports as JSON, boundary curves as `theta,re,im` CSV. Exit code 0 on
//! success, 2 on bad flags or input, 1 on computation errors.

use std::io::Read;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use crate::caratheodory::{check_coefficient_bound, check_pommerenke, pommerenke_extremal, HerglotzSampler};
use crate::error::{Error, Result};
use crate::functionals::{bieberbach_check, covering_check, fekete_szego, hankel, odd_c5, odd_c5_bound, FunctionalReport};
use crate::probe::{
    boundary_curve, class_min_real_part, injectivity_probe, local_univalence_radius, local_univalence_radius_of_series,
    partial_sum, radius_solve, write_boundary_csv, GeometricClass, POSITIVITY_EPS,
};
use crate::report::report_suite;
use crate::series::{NormalizedSeries, TruncatedSeries, DEFAULT_ORDER};
use crate::transforms::{self, TransformSpec};
use crate::zoo::{self, FunctionTag};

#[derive(Debug, Parser)]
#[command(name = "unidisk", version, about = "Geometric function theory on truncated power series")]
#[command(allow_negative_numbers = true)]
struct Cli {
    /// Truncation order of built series.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER)]
    order: usize,
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Bisection tolerance of radius solves.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol: f64,
    /// Input series (JSON); standard input when omitted or `-`.
    #[arg(long, global = true)]
    input: Option<String>,
    /// Second operand series (JSON) for binary operations.
    #[arg(long = "with", global = true)]
    with: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a named function or construct one from a Carathéodory series.
    Build(BuildArgs),
    /// Apply a transformation to the input series.
    Transform {
        #[command(subcommand)]
        kind: TransformCmd,
    },
    /// Evaluate a class predicate, an inequality, or export a boundary curve.
    Check(CheckArgs),
    /// Bisect for the largest radius on which a predicate holds.
    Radius(RadiusArgs),
    /// Evaluate a coefficient functional.
    Functional {
        #[command(subcommand)]
        kind: FunctionalCmd,
    },
    /// Draw random Carathéodory series from a Herglotz measure.
    Sample {
        #[arg(long, default_value_t = 8)]
        atoms: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Sweep every coefficient bound over sampled functions.
    Report {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 8)]
        atoms: usize,
    },
}

#[derive(Debug, Args)]
struct BuildArgs {
    /// koebe, moebius, identity, thmA, thmB, convex, pommerenke, or a
    /// constructor: ratio-positive, bounded-turning, starlike,
    /// close-to-convex, alexander, alexander-inverse.
    name: String,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    c1: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    eps: Option<Complex64>,
}

#[derive(Debug, Subcommand)]
enum TransformCmd {
    Conj,
    Rotate {
        #[arg(long)]
        theta: f64,
    },
    Dilate {
        #[arg(long)]
        r: f64,
    },
    Autom {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        sigma: Complex64,
    },
    Omit {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        xi: Complex64,
    },
    Sqrt,
    Libera,
    Bernardi {
        #[arg(long)]
        gamma: f64,
    },
    /// Hadamard product with `--with`.
    Convolve,
    Iterate {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        n: usize,
    },
    IterateSigma {
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        n: usize,
    },
    /// `(1-t) f + t g` with `g` from `--with`.
    Linsum {
        #[arg(long)]
        t: f64,
    },
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// bounded-turning, starlike, convex, ratio-positive, close-to-convex,
    /// quasi-convex, injective, boundary, caratheodory.
    #[arg(long)]
    class: String,
    #[arg(long, default_value_t = 0.5)]
    r: f64,
    #[arg(long, default_value_t = 256)]
    angles: usize,
    /// Named function instead of `--input`.
    #[arg(long)]
    function: Option<String>,
}

#[derive(Debug, Args)]
struct RadiusArgs {
    /// A class name or `local-univalence`.
    #[arg(value_name = "PREDICATE", conflicts_with = "predicate_flag")]
    predicate: Option<String>,
    #[arg(long = "predicate", value_name = "PREDICATE")]
    predicate_flag: Option<String>,
    #[arg(long)]
    function: Option<String>,
    /// Replace the function by its partial sum of this degree.
    #[arg(long)]
    partial: Option<usize>,
    #[arg(long, default_value_t = 256)]
    angles: usize,
}

#[derive(Debug, Subcommand)]
enum FunctionalCmd {
    Fekete {
        #[arg(long)]
        alpha: f64,
    },
    Hankel {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        n: usize,
    },
    Bieberbach,
    Covering {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        xi: Complex64,
    },
    OddC5,
}

/// Parses `re,im` or a bare real number.
fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
    let z = match s.split_once(',') {
        Some((re, im)) => Complex64::new(parse(re)?, parse(im)?),
        None => Complex64::new(parse(s)?, 0.0),
    };
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(format!("`{s}` is not finite"));
    }
    Ok(z)
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: 0, stdout, stderr: String::new() }
    }
}

/// Runs the CLI on `argv` (including the program name) without touching
/// stdout or stderr. Standard input is read only when a series is needed
/// and no path was given.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli) {
        Ok(out) => out,
        Err(e) => Outcome {
            code: if e.is_validation() { 2 } else { 1 },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Entry point for the binary: runs, prints, returns the exit code.
pub fn main_with_args(args: Vec<String>) -> i32 {
    let out = run(args);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}

fn read_source(path: Option<&str>) -> Result<String> {
    match path {
        None | Some("-") => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::Malformed(format!("cannot read standard input: {e}")))?;
            Ok(buf)
        }
        Some(p) => std::fs::read_to_string(p).map_err(|e| Error::Malformed(format!("cannot read {p}: {e}"))),
    }
}

fn parse_series(text: &str) -> Result<TruncatedSeries> {
    serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
}

fn json<T: Serialize>(value: &T) -> Result<Outcome> {
    let mut s = serde_json::to_string(value).map_err(|e| Error::Malformed(e.to_string()))?;
    s.push('\n');
    Ok(Outcome::ok(s))
}

impl Cli {
    fn input(&self) -> Result<TruncatedSeries> {
        parse_series(&read_source(self.input.as_deref())?)
    }

    fn normalized_input(&self) -> Result<NormalizedSeries> {
        NormalizedSeries::new(self.input()?)
    }

    fn with_series(&self) -> Result<TruncatedSeries> {
        match &self.with {
            Some(p) => parse_series(&read_source(Some(p))?),
            None => Err(Error::InvalidParameter("this operation needs a second series via --with".into())),
        }
    }

    /// `--function` if given, else the input series.
    fn subject(&self, function: Option<&str>) -> Result<(NormalizedSeries, Option<FunctionTag>)> {
        match function {
            Some(name) => {
                let tag: FunctionTag = name.parse()?;
                Ok((NormalizedSeries::new(tag.series(self.order)?)?, Some(tag)))
            }
            None => Ok((self.normalized_input()?, None)),
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Build(args) => json(&build(cli, args)?),
        Command::Transform { kind } => json(&transform(cli, kind)?),
        Command::Check(args) => check(cli, args),
        Command::Radius(args) => radius(cli, args),
        Command::Functional { kind } => json(&functional(cli, kind)?),
        Command::Sample { atoms, count } => {
            if *count == 0 {
                return Err(Error::InvalidParameter("count must be at least 1".into()));
            }
            let mut sampler = HerglotzSampler::new(cli.seed);
            let draws: Vec<TruncatedSeries> =
                (0..*count).map(|_| sampler.series(*atoms, cli.order)).collect::<Result<_>>()?;
            if *count == 1 {
                json(&draws[0])
            } else {
                json(&draws)
            }
        }
        Command::Report { samples, atoms } => {
            let report = report_suite(cli.seed, *samples, *atoms, cli.order)?;
            let mut out = json(&report)?;
            if !report.passed() {
                out.code = 1;
                out.stderr = format!("error: {} bound violations\n", report.violations);
            }
            Ok(out)
        }
    }
}

fn build(cli: &Cli, args: &BuildArgs) -> Result<TruncatedSeries> {
    let n = cli.order;
    Ok(match args.name.as_str() {
        "pommerenke" => {
            let c1 = args.c1.ok_or_else(|| Error::InvalidParameter("pommerenke needs --c1".into()))?;
            let eps = args.eps.ok_or_else(|| Error::InvalidParameter("pommerenke needs --eps".into()))?;
            pommerenke_extremal(c1, eps, n)?
        }
        "ratio-positive" => zoo::from_ratio_positive(&cli.input()?)?.into_series(),
        "bounded-turning" => zoo::from_bounded_turning(&cli.input()?)?.into_series(),
        "starlike" => zoo::from_starlike(&cli.input()?)?.into_series(),
        "close-to-convex" => {
            let g = NormalizedSeries::new(cli.with_series()?)?;
            zoo::from_close_to_convex(&cli.input()?, &g)?.into_series()
        }
        "alexander" => zoo::alexander_forward(&cli.normalized_input()?).into_series(),
        "alexander-inverse" => zoo::alexander_inverse(&cli.normalized_input()?).into_series(),
        other => other.parse::<FunctionTag>()?.series(n)?,
    })
}

fn transform(cli: &Cli, kind: &TransformCmd) -> Result<TruncatedSeries> {
    let spec = match kind {
        TransformCmd::Convolve => return Ok(transforms::convolve(&cli.input()?, &cli.with_series()?)),
        TransformCmd::Linsum { t } => return transforms::linear_sum(&cli.input()?, &cli.with_series()?, *t),
        TransformCmd::Iterate { alpha, n } => return transforms::iterate_alpha(&cli.input()?, *alpha, *n),
        TransformCmd::IterateSigma { sigma, n } => return transforms::iterate_sigma(&cli.input()?, *sigma, *n),
        TransformCmd::Conj => TransformSpec::Conjugation,
        TransformCmd::Rotate { theta } => TransformSpec::rotation(*theta)?,
        TransformCmd::Dilate { r } => TransformSpec::dilation(*r)?,
        TransformCmd::Autom { sigma } => TransformSpec::disk_automorphism(*sigma)?,
        TransformCmd::Omit { xi } => TransformSpec::omitted_value(*xi)?,
        TransformCmd::Sqrt => TransformSpec::SquareRoot,
        TransformCmd::Libera => TransformSpec::Libera,
        TransformCmd::Bernardi { gamma } => TransformSpec::bernardi(*gamma)?,
    };
    Ok(transforms::apply(&spec, &cli.normalized_input()?)?.into_series())
}

fn class_from(name: &str, cli: &Cli) -> Result<GeometricClass> {
    match name {
        "close-to-convex" => Ok(GeometricClass::CloseToConvex(NormalizedSeries::new(cli.with_series()?)?)),
        "quasi-convex" => Ok(GeometricClass::QuasiConvex(NormalizedSeries::new(cli.with_series()?)?)),
        other => other.parse(),
    }
}

#[derive(Serialize)]
struct ClassCheck<'a> {
    class: &'a str,
    r: f64,
    angles: usize,
    min_real_part: f64,
    holds: bool,
}

#[derive(Serialize)]
struct InjectivityCheck {
    class: &'static str,
    r: f64,
    angles: usize,
    holds: bool,
}

#[derive(Serialize)]
struct CaratheodoryCheck {
    coefficient_bound: crate::caratheodory::CoefficientBoundReport,
    pommerenke: crate::caratheodory::PommerenkeReport,
    holds: bool,
}

fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidParameter(format!("r must lie in (0, 1), got {r}")));
    }
    Ok(())
}

fn check(cli: &Cli, args: &CheckArgs) -> Result<Outcome> {
    if args.class == "caratheodory" {
        let h = cli.input()?;
        let coefficient_bound = check_coefficient_bound(&h)?;
        let pommerenke = check_pommerenke(&h)?;
        let holds = coefficient_bound.holds() && !pommerenke.violated;
        return json(&CaratheodoryCheck { coefficient_bound, pommerenke, holds });
    }
    check_radius(args.r)?;
    if args.angles == 0 {
        return Err(Error::InvalidParameter("angles must be positive".into()));
    }
    match args.class.as_str() {
        "boundary" => {
            let (f, _) = cli.subject(args.function.as_deref())?;
            let points = boundary_curve(|z| f.evaluate(z), args.r, args.angles);
            let mut buf = Vec::new();
            write_boundary_csv(&points, &mut buf)?;
            Ok(Outcome::ok(String::from_utf8(buf).expect("csv output is UTF-8")))
        }
        "injective" => {
            let (f, _) = cli.subject(args.function.as_deref())?;
            let holds = injectivity_probe(|z| f.evaluate(z), args.r, args.angles)?;
            json(&InjectivityCheck { class: "injective", r: args.r, angles: args.angles, holds })
        }
        name => {
            let class = class_from(name, cli)?;
            let (f, _) = cli.subject(args.function.as_deref())?;
            let min = class_min_real_part(&class, &f, args.r, args.angles)?;
            json(&ClassCheck {
                class: class.name(),
                r: args.r,
                angles: args.angles,
                min_real_part: min,
                holds: min > POSITIVITY_EPS,
            })
        }
    }
}

fn radius(cli: &Cli, args: &RadiusArgs) -> Result<Outcome> {
    let name = args
        .predicate
        .as_deref()
        .or(args.predicate_flag.as_deref())
        .ok_or_else(|| Error::InvalidParameter("radius needs a predicate".into()))?;
    let class = if name == "local-univalence" { None } else { Some(class_from(name, cli)?) };
    if args.angles == 0 {
        return Err(Error::InvalidParameter("angles must be positive".into()));
    }
    let (mut f, tag) = cli.subject(args.function.as_deref())?;
    if let Some(k) = args.partial {
        f = partial_sum(&f, k)?;
    }
    let result = match class {
        None => match tag {
            Some(tag) if args.partial.is_none() => {
                local_univalence_radius(|z| tag.closed_form_derivative(z), cli.tol)?
            }
            _ => local_univalence_radius_of_series(&f, cli.tol)?,
        },
        Some(class) => radius_solve(
            class.name(),
            |r| Ok(class_min_real_part(&class, &f, r, args.angles)? > POSITIVITY_EPS),
            cli.tol,
        )?,
    };
    json(&result)
}

fn functional(cli: &Cli, kind: &FunctionalCmd) -> Result<FunctionalReport> {
    let f = cli.normalized_input()?;
    match kind {
        FunctionalCmd::Fekete { alpha } => fekete_szego(&f, *alpha),
        FunctionalCmd::Bieberbach => bieberbach_check(&f),
        FunctionalCmd::Covering { xi } => covering_check(&f, *xi),
        FunctionalCmd::Hankel { q, n } => {
            let value = hankel(&f, *q, *n)?;
            Ok(FunctionalReport { name: "hankel".into(), value: value.norm(), bound: None, margin: None, terms: Vec::new() })
        }
        FunctionalCmd::OddC5 => {
            let value = odd_c5(&f)?.norm();
            let bound = odd_c5_bound();
            Ok(FunctionalReport {
                name: "odd-c5".into(),
                value,
                bound: Some(bound),
                margin: Some(bound - value),
                terms: Vec::new(),
            })
        }
    }
}
