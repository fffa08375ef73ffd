//! The `toric-kit` command-line front end.
//!
//! Every subcommand writes one JSON document (or, for `svg`, an SVG file) to stdout and
//! diagnostics to stderr. Exit codes: 0 success, 1 internal or numerical failure,
//! 2 input error, 3 S-pair budget exceeded, 4 degenerate input.

pub mod input;
pub mod output;
pub mod svg;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use toric_kit::cones::{self, RationalCone};
use toric_kit::polytope::{self, Polytope};
use toric_kit::sparse::{self, PolySystem};
use toric_kit::toric::{self, GroebnerConfig, TermOrder};
use toric_kit::{volume, Error, SupportSet};

use input::InputError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_DEGENERATE: i32 = 4;

/// Environment variable overriding the S-pair budget of Gröbner computations.
pub const BUDGET_ENV: &str = "TORIC_KIT_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "toric-kit", version, about = "Exact computations with lattice polytopes, toric ideals and sparse systems")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
struct SupportInput {
    /// Points as inline JSON, e.g. '[[0,0],[1,0],[0,1]]'. May be repeated.
    #[arg(long = "points", value_name = "JSON")]
    points: Vec<String>,
    /// A support-set JSON file {"dim": n, "points": [...]}. May be repeated.
    #[arg(long = "support", value_name = "FILE")]
    support: Vec<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct SystemInput {
    /// A system JSON file {"variables": [...], "polynomials": [...]}.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["polynomial", "variables"])]
    system: Option<PathBuf>,
    /// Inline polynomial; repeat once per equation.
    #[arg(long = "polynomial", short = 'p', value_name = "TEXT")]
    polynomial: Vec<String>,
    /// Comma-separated variable names for inline polynomials.
    #[arg(long, value_delimiter = ',', value_name = "NAMES")]
    variables: Vec<String>,
}

#[derive(Args, Debug, Clone)]
struct ConeInput {
    /// Cone generators as inline JSON, e.g. '[[1,2],[2,1]]'.
    #[arg(long, value_name = "JSON", conflicts_with = "cone")]
    rays: Option<String>,
    /// A JSON file holding an array of cone generators.
    #[arg(long, value_name = "FILE")]
    cone: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OrderName {
    Degrevlex,
    Lex,
}

#[derive(Args, Debug, Clone)]
struct OrderArgs {
    /// Base term order.
    #[arg(long, value_enum, default_value_t = OrderName::Degrevlex)]
    order: OrderName,
    /// Variables from most to least significant, as indices into the point list.
    #[arg(long, value_delimiter = ',', value_name = "INDICES")]
    var_order: Vec<usize>,
    /// Nonnegative weight vector refined by the base order.
    #[arg(long, value_delimiter = ',', value_name = "WEIGHTS", allow_hyphen_values = true)]
    weights: Vec<i64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SvgKind {
    /// Each polygon with its lattice points.
    Polygon,
    /// The first polygon and a triangulation of it.
    Subdivision,
    /// The normal fan of the first polygon.
    Fan,
    /// The polygons and their Minkowski sum.
    Minkowski,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Vertices, facets and affine hull of the convex hull.
    Hull(SupportInput),
    /// Euclidean volume, normalized volume and number of lattice points.
    Volume(SupportInput),
    /// Ehrhart polynomial coefficients, constant term first.
    Ehrhart(SupportInput),
    /// Minkowski sum of the given polytopes.
    MinkowskiSum(SupportInput),
    /// Mixed volume of n polytopes in dimension n.
    MixedVolume(SupportInput),
    /// Normal fan of the convex hull.
    NormalFan(SupportInput),
    /// Dual cone.
    DualCone(ConeInput),
    /// Hilbert basis of a pointed cone.
    HilbertBasis {
        #[command(flatten)]
        cone: ConeInput,
        /// Use the dual of the given cone.
        #[arg(long)]
        dual: bool,
    },
    /// Semigroup generators and toric ideal of the affine patch of a cone.
    PatchIdeal {
        #[command(flatten)]
        cone: ConeInput,
        #[command(flatten)]
        order: OrderArgs,
    },
    /// Reduced Gröbner basis of the toric ideal of a point configuration.
    ToricIdeal {
        #[command(flatten)]
        support: SupportInput,
        #[command(flatten)]
        order: OrderArgs,
    },
    /// Values |dA| for d = 0..=max-degree and the Hilbert polynomial.
    HilbertFunction {
        #[command(flatten)]
        support: SupportInput,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Gap data relating the semigroup of the lifted points to its saturation.
    GapShift(SupportInput),
    /// Normalized volume bound for a system with common support.
    Kushnirenko(SupportInput),
    /// Mixed volume bound for a system.
    Bernstein(SystemInput),
    /// Initial systems along the cones of the common refinement of the normal fans.
    FacialSystems(SystemInput),
    /// Decide whether the facial systems have torus solutions.
    Genericity(SystemInput),
    /// Solutions in the torus of a system in two variables.
    Solve2 {
        #[command(flatten)]
        system: SystemInput,
        #[arg(long, default_value_t = sparse::DEFAULT_TOL)]
        tol: f64,
    },
    /// Value of the algebraic moment map at a point.
    MomentMap {
        #[command(flatten)]
        support: SupportInput,
        /// Coordinates: numbers or "p/q" strings, or [re, im] pairs for complex input.
        #[arg(long, value_name = "JSON")]
        at: String,
    },
    /// Draw planar polygons, triangulations or normal fans as SVG.
    Svg {
        #[command(flatten)]
        support: SupportInput,
        #[arg(long, value_enum, default_value_t = SvgKind::Polygon)]
        kind: SvgKind,
        /// Write to a file instead of stdout.
        #[arg(long, short = 'o', value_name = "FILE")]
        output: Option<PathBuf>,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Input(InputError),
    Lib(Error),
    Usage(String),
    Io(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded(_) => EXIT_BUDGET,
        Error::LowerDimensional { .. } | Error::NotPointed(_) | Error::Inhomogeneous | Error::NonIsolated => {
            EXIT_DEGENERATE
        }
        Error::Numerical(_) | Error::Unsupported(_) => EXIT_FAILURE,
        _ => EXIT_INPUT,
    }
}

enum Payload {
    Json(Value),
    Raw(String),
}

/// Runs the command line `args` (including the program name). `budget` is the value of
/// the budget environment variable, if set.
pub fn run<I, T>(args: I, budget: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli.command, budget) {
        Ok(Payload::Json(v)) => {
            let stdout = match cli.format {
                Format::Json => format!("{v}\n"),
                Format::Text => output::text(&v),
            };
            Outcome { code: EXIT_OK, stdout, stderr: String::new() }
        }
        Ok(Payload::Raw(s)) => Outcome { code: EXIT_OK, stdout: s, stderr: String::new() },
        Err(f) => {
            let (code, msg) = match f {
                Failure::Input(e) => (EXIT_INPUT, e.to_string()),
                Failure::Usage(m) => (EXIT_INPUT, m),
                Failure::Io(m) => (EXIT_FAILURE, m),
                Failure::Lib(e) => (exit_code(&e), e.to_string()),
            };
            Outcome { code, stdout: String::new(), stderr: format!("error: {msg}\n") }
        }
    }
}

fn supports(s: &SupportInput) -> Result<Vec<SupportSet>, Failure> {
    let mut out = Vec::new();
    for (i, text) in s.points.iter().enumerate() {
        let source = format!("--points #{}", i + 1);
        out.push(input::support_from_value(&input::parse_json(text, &source)?, &source)?);
    }
    for path in &s.support {
        let v = input::read_file(path)?;
        out.push(input::support_from_value(&v, &path.display().to_string())?);
    }
    if out.is_empty() {
        return Err(Failure::Usage("no points given; use --points or --support".into()));
    }
    Ok(out)
}

fn one_support(s: &SupportInput) -> Result<SupportSet, Failure> {
    let mut v = supports(s)?;
    if v.len() != 1 {
        return Err(Failure::Usage(format!("expected one point set, found {}", v.len())));
    }
    Ok(v.remove(0))
}

fn hull_of(a: &SupportSet) -> Result<Polytope, Failure> {
    if a.is_empty() {
        return Err(Failure::Usage("the point set is empty".into()));
    }
    Ok(polytope::convex_hull_support(a)?)
}

fn system(s: &SystemInput) -> Result<PolySystem, Failure> {
    if let Some(path) = &s.system {
        let v = input::read_file(path)?;
        return Ok(input::system_from_value(&v, &path.display().to_string())?);
    }
    if s.polynomial.is_empty() {
        return Err(Failure::Usage("no system given; use --system or --polynomial with --variables".into()));
    }
    let v = json!({ "variables": s.variables, "polynomials": s.polynomial });
    Ok(input::system_from_value(&v, "command line")?)
}

fn cone(c: &ConeInput) -> Result<RationalCone, Failure> {
    let (v, source) = match (&c.rays, &c.cone) {
        (Some(text), _) => (input::parse_json(text, "--rays")?, "--rays".to_string()),
        (None, Some(path)) => (input::read_file(path)?, path.display().to_string()),
        (None, None) => return Err(Failure::Usage("no cone given; use --rays or --cone".into())),
    };
    let (dim, rays) = input::vectors_from_value(&v, &source)?;
    Ok(RationalCone::from_rays(dim, &rays)?)
}

fn term_order(o: &OrderArgs, n: usize) -> Result<(TermOrder, String), Failure> {
    let vars: Vec<usize> = if o.var_order.is_empty() { (0..n).collect() } else { o.var_order.clone() };
    let (base, mut name) = match o.order {
        OrderName::Degrevlex => (TermOrder::DegRevLex(vars.clone()), "degrevlex".to_string()),
        OrderName::Lex => (TermOrder::Lex(vars.clone()), "lex".to_string()),
    };
    if !o.var_order.is_empty() {
        name = format!("{name}({})", vars.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","));
    }
    let order = if o.weights.is_empty() {
        base
    } else {
        name = format!("weight({})+{name}", o.weights.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(","));
        TermOrder::weighted(o.weights.clone(), base)
    };
    order.validate(n)?;
    Ok((order, name))
}

fn groebner_config(budget: Option<&str>) -> Result<GroebnerConfig, Failure> {
    match budget {
        None => Ok(GroebnerConfig::default()),
        Some(s) => s
            .trim()
            .parse::<usize>()
            .map(|budget| GroebnerConfig { budget })
            .map_err(|_| Failure::Usage(format!("{BUDGET_ENV} must be a nonnegative integer, found `{s}`"))),
    }
}

fn lattice_points_2d(p: &Polytope) -> Vec<[i64; 2]> {
    let lo: Vec<i64> = (0..2)
        .map(|k| p.vertices.iter().map(|v| v[k].floor().to_integer()).min().unwrap_or_default().to_i64().unwrap_or(0))
        .collect();
    let hi: Vec<i64> = (0..2)
        .map(|k| p.vertices.iter().map(|v| v[k].ceil().to_integer()).max().unwrap_or_default().to_i64().unwrap_or(0))
        .collect();
    let mut out = Vec::new();
    for x in lo[0]..=hi[0] {
        for y in lo[1]..=hi[1] {
            if p.contains_int(&[BigInt::from(x), BigInt::from(y)]) {
                out.push([x, y]);
            }
        }
    }
    out
}

fn execute(cmd: &Command, budget: Option<&str>) -> Result<Payload, Failure> {
    let v = match cmd {
        Command::Hull(s) => output::polytope(&hull_of(&one_support(s)?)?),
        Command::Volume(s) => {
            let p = hull_of(&one_support(s)?)?;
            json!({
                "dim": p.dim,
                "volume": output::rat(&volume::volume(&p)),
                "normalized_volume": output::rat(&volume::normalized_volume(&p)),
                "lattice_points": output::int(&volume::count_lattice_points(&p)),
            })
        }
        Command::Ehrhart(s) => {
            let e = volume::ehrhart(&hull_of(&one_support(s)?)?)?;
            json!({ "coefficients": output::rats(&e.coefficients) })
        }
        Command::MinkowskiSum(s) => {
            let ps = supports(s)?.iter().map(hull_of).collect::<Result<Vec<_>, _>>()?;
            let mut acc = ps[0].clone();
            for p in &ps[1..] {
                acc = polytope::minkowski_sum(&acc, p)?;
            }
            output::polytope(&acc)
        }
        Command::MixedVolume(s) => {
            let ps = supports(s)?.iter().map(hull_of).collect::<Result<Vec<_>, _>>()?;
            let refs: Vec<&Polytope> = ps.iter().collect();
            let r = volume::mixed_volume(&refs)?;
            json!({ "mixed_volume": output::rat(&r.mv), "normalized": output::rat(&r.normalized) })
        }
        Command::NormalFan(s) => output::fan(&cones::normal_fan(&hull_of(&one_support(s)?)?)?),
        Command::DualCone(c) => output::cone(&cones::dual_cone(&cone(c)?)),
        Command::HilbertBasis { cone: c, dual } => {
            let mut sigma = cone(c)?;
            if *dual {
                sigma = cones::dual_cone(&sigma);
            }
            let hb = cones::hilbert_basis(&sigma)?;
            json!({ "hilbert_basis": output::int_rows(&hb.points) })
        }
        Command::PatchIdeal { cone: c, order } => {
            let sigma = cone(c)?;
            let gens = cones::affine_patch_generators(&sigma)?;
            let (ord, name) = term_order(order, gens.len())?;
            let patch = cones::affine_patch_ideal_with(&sigma, &ord, &groebner_config(budget)?)?;
            output::groebner(&patch.gb, &patch.generators, &name)
        }
        Command::ToricIdeal { support, order } => {
            let a = one_support(support)?;
            let (ord, name) = term_order(order, a.len())?;
            let gb = toric::toric_groebner_with(&a, &ord, &groebner_config(budget)?)?;
            output::groebner(&gb, &a, &name)
        }
        Command::HilbertFunction { support, max_degree } => {
            let a = one_support(support)?;
            let values = toric::sumset_sizes(&a, *max_degree)?;
            let hp = toric::hilbert_polynomial(&a)?;
            json!({ "values": values, "hilbert_polynomial": output::rats(&hp.coefficients) })
        }
        Command::GapShift(s) => output::gap(&toric::semigroup_gap_data(&one_support(s)?)?),
        Command::Kushnirenko(s) => json!({ "bound": output::int(&sparse::kushnirenko_bound(&one_support(s)?)?) }),
        Command::Bernstein(s) => json!({ "bound": output::int(&sparse::bernstein_bound(&system(s)?)?) }),
        Command::FacialSystems(s) => {
            let sys = system(s)?;
            output::facial(&sparse::facial_systems(&sys)?, &sys)
        }
        Command::Genericity(s) => {
            let sys = system(s)?;
            output::genericity(&sparse::genericity_check(&sys)?, &sys)
        }
        Command::Solve2 { system: s, tol } => {
            if !(tol.is_finite() && *tol > 0.0) {
                return Err(Failure::Usage("--tol must be a positive number".into()));
            }
            let sol = sparse::solve_bivariate(&system(s)?, *tol)?;
            output::solutions(&sol, sparse::count_with_multiplicity(&sol))
        }
        Command::MomentMap { support, at } => {
            let a = one_support(support)?;
            let v = input::parse_json(at, "--at")?;
            let complex = v.as_array().is_some_and(|xs| xs.iter().any(|x| x.is_array()));
            if complex {
                let pairs = v.as_array().expect("array");
                let mut z = Vec::with_capacity(pairs.len());
                for (i, p) in pairs.iter().enumerate() {
                    let parts = input::rationals_from_value(p, &format!("--at/{i}"))?;
                    if parts.len() != 2 {
                        return Err(Failure::Usage(format!("--at/{i}: expected [re, im]")));
                    }
                    z.push(Complex64::new(parts[0].to_f64().unwrap_or(f64::NAN), parts[1].to_f64().unwrap_or(f64::NAN)));
                }
                json!({ "value": toric::moment_map_eval_complex(&a, &z)? })
            } else {
                let z = input::rationals_from_value(&v, "--at")?;
                json!({ "value": output::rats(&toric::moment_map_eval(&a, &z)?) })
            }
        }
        Command::Svg { support, kind, output: path } => {
            let sets = supports(support)?;
            if let Some(a) = sets.iter().find(|a| a.ambient_dim != 2) {
                return Err(Failure::Lib(Error::DimensionMismatch { expected: 2, found: a.ambient_dim }));
            }
            let ps = sets.iter().map(hull_of).collect::<Result<Vec<_>, _>>()?;
            let fan;
            let sum;
            let mut layers = Vec::new();
            match kind {
                SvgKind::Polygon => {
                    for p in &ps {
                        layers.push(svg::Layer::Polygon { p, lattice_points: lattice_points_2d(p) });
                    }
                }
                SvgKind::Subdivision => {
                    layers.push(svg::Layer::Polygon { p: &ps[0], lattice_points: lattice_points_2d(&ps[0]) });
                    layers.push(svg::Layer::Triangles(volume::triangulate(&ps[0])));
                }
                SvgKind::Fan => {
                    fan = cones::normal_fan(&ps[0])?;
                    layers.push(svg::Layer::Fan(&fan));
                }
                SvgKind::Minkowski => {
                    let mut acc = ps[0].clone();
                    for p in &ps[1..] {
                        acc = polytope::minkowski_sum(&acc, p)?;
                    }
                    sum = acc;
                    for p in &ps {
                        layers.push(svg::Layer::Polygon { p, lattice_points: Vec::new() });
                    }
                    layers.push(svg::Layer::Polygon { p: &sum, lattice_points: lattice_points_2d(&sum) });
                }
            }
            let doc = svg::render(&layers);
            return match path {
                Some(path) => {
                    std::fs::write(path, &doc).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))?;
                    Ok(Payload::Json(json!({ "written": path.display().to_string(), "bytes": doc.len() })))
                }
                None => Ok(Payload::Raw(doc)),
            };
        }
    };
    Ok(Payload::Json(v))
}
