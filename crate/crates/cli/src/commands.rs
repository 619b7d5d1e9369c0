use std::path::PathBuf;

use anyhow::{anyhow, Context};
use clap::{Args, ValueEnum};

use umbracal::analysis::gabor::{gabor_direct, gabor_series, Signal};
use umbracal::analysis::identities::super_gaussian_profile;
use umbracal::heat::{evolve_airy, evolve_monomial, evolve_spectral, EvolutionSpec, Field, Grid, Sign};
use umbracal::lacunary::{compare_routes, lacunary_direct, lacunary_factored, lacunary_umbral, DEFAULT_TRUNCATION};
use umbracal::numbers::build_table;
use umbracal::polynomials::{hermite_m_umbral, multinomial_expansion, PolyFamilyId};
use umbracal::verify::{self, Suite};

use crate::output::{emit, Column, Manifest, Table};
use crate::{Failure, OutputArgs};

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn manifest(name: &str, out: &OutputArgs) -> Manifest {
    Manifest::new(name, out.format, out.out.as_deref())
}

fn write(table: &Table, m: &Manifest) -> Outcome {
    emit(table, m).map_err(|e| Failure::Run(format!("{e:#}")))
}

// numbers

#[derive(Args, Debug)]
pub struct NumbersArgs {
    /// Order m ≥ 2.
    #[arg(long)]
    m: u32,
    #[arg(long)]
    max_r: u32,
    #[command(flatten)]
    out: OutputArgs,
}

pub fn numbers(a: &NumbersArgs) -> Outcome {
    let table = build_table(a.m, a.max_r)?;
    let mut m = manifest("numbers", &a.out);
    m.param("m", a.m).param("max_r", a.max_r);
    let t = Table::new()
        .column("r", Column::Integer((0..=a.max_r).map(|r| r.to_string()).collect()))
        .column("h", Column::Integer(table.values().iter().map(|v| v.to_string()).collect()));
    write(&t, &m)
}

// poly

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// H_n(x, y).
    #[value(name = "2var")]
    TwoVar,
    /// H_n^{(m)}(x, y).
    MOrder,
    /// H_n^{(3)}(x, y, z).
    #[value(name = "3var3")]
    ThreeVar3,
    /// H_n^{m,…,2}(x_1, …, x_m).
    Multivar,
}

#[derive(Args, Debug)]
pub struct PolyArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: u32,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    y: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    z: Option<f64>,
    /// Order for m-order and multivar.
    #[arg(long)]
    m: Option<u32>,
    /// Arguments of the multivar family, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    args: Vec<f64>,
    /// Also evaluate by the umbral (or multinomial) route.
    #[arg(long)]
    cross_check: bool,
    #[command(flatten)]
    out: OutputArgs,
}

pub fn poly(a: &PolyArgs) -> Outcome {
    let need = |v: Option<f64>, name: &str| v.ok_or_else(|| usage(format!("--{name} is required for this family")));
    let need_m = || a.m.ok_or_else(|| usage("--m is required for this family"));
    let (id, args) = match a.family {
        Family::TwoVar => (PolyFamilyId::TwoVar, vec![need(a.x, "x")?, need(a.y, "y")?]),
        Family::MOrder => (PolyFamilyId::OrderM { m: need_m()? }, vec![need(a.x, "x")?, need(a.y, "y")?]),
        Family::ThreeVar3 => (
            PolyFamilyId::ThirdOrderThreeVar,
            vec![need(a.x, "x")?, need(a.y, "y")?, need(a.z, "z")?],
        ),
        Family::Multivar => (PolyFamilyId::MultiVar { m: need_m()? }, a.args.clone()),
    };
    let value = id.evaluate(a.n, &args)?;
    let mut m = manifest("poly", &a.out);
    m.param("family", format!("{:?}", a.family))
        .param("n", a.n)
        .param("args", format!("{args:?}"));
    if let Some(order) = a.m {
        m.param("m", order);
    }
    let mut t = Table::new().floats("value", vec![value]);
    if a.cross_check {
        let (name, other) = match id {
            PolyFamilyId::TwoVar => ("umbral", hermite_m_umbral(2, a.n, args[0], args[1])?),
            PolyFamilyId::OrderM { m } => ("umbral", hermite_m_umbral(m, a.n, args[0], args[1])?),
            PolyFamilyId::ThirdOrderThreeVar => ("multinomial", multinomial_expansion(a.n, args[0], args[1], args[2])?),
            PolyFamilyId::MultiVar { .. } => return Err(usage("--cross-check is not available for multivar")),
        };
        t = t.floats(name, vec![other]).floats("abs_diff", vec![(value - other).abs()]);
    }
    write(&t, &m)
}

// verify

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: umbracal::Error| e.to_string())
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// integrals, series, umbral, heat, lacunary or all.
    #[arg(long, value_parser = parse_suite, default_value = "all")]
    suite: Suite,
    /// Judge every error-valued check against this tolerance instead of its own.
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    out: OutputArgs,
}

pub fn verify(a: &VerifyArgs) -> Outcome {
    if let Some(tol) = a.tol {
        if !(tol >= 0.0) {
            return Err(usage(format!("--tol must be non-negative, got {tol}")));
        }
    }
    let report = match a.tol {
        Some(tol) => verify::run_with_tolerance(a.suite, tol),
        None => verify::run(a.suite),
    };
    let mut m = manifest("verify", &a.out);
    m.param("suite", a.suite);
    if let Some(tol) = a.tol {
        m.param("tol", tol);
    }
    let c = &report.checks;
    let t = Table::new()
        .column("suite", Column::Text(c.iter().map(|k| k.suite.to_string()).collect()))
        .column("name", Column::Text(c.iter().map(|k| k.name.clone()).collect()))
        .column("passed", Column::Bool(c.iter().map(|k| k.passed).collect()))
        .floats("measured", c.iter().map(|k| k.measured).collect())
        .floats("tolerance", c.iter().map(|k| k.tolerance).collect())
        .column("unit", Column::Text(c.iter().map(|k| format!("{:?}", k.unit).to_lowercase()).collect()))
        .column("detail", Column::Text(c.iter().map(|k| k.detail.clone()).collect()));
    write(&t, &m)?;
    let failed: Vec<&str> = report.failures().map(|k| k.name.as_str()).collect();
    eprintln!("{} of {} checks passed", c.len() - failed.len(), c.len());
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Run(format!("failed checks: {}", failed.join(", "))))
    }
}

// heat

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s {
        "+1" | "1" | "plus" | "+" => Ok(Sign::Plus),
        "-1" | "minus" | "-" => Ok(Sign::Minus),
        _ => Err(format!("sign must be +1 or -1, got {s:?}")),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Init {
    Gaussian,
    Monomial(u32),
    File(PathBuf),
}

fn parse_init(s: &str) -> Result<Init, String> {
    if s == "gaussian" {
        return Ok(Init::Gaussian);
    }
    if let Some(n) = s.strip_prefix("monomial:") {
        return n.parse().map(Init::Monomial).map_err(|_| format!("bad monomial degree {n:?}"));
    }
    if let Some(p) = s.strip_prefix("file:") {
        return Ok(Init::File(p.into()));
    }
    Err(format!("init must be gaussian, monomial:N or file:PATH, got {s:?}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HeatRoute {
    /// FFT multiplier.
    Spectral,
    /// Airy-kernel convolution (m = 3 only).
    Airy,
    /// Heat polynomial (monomial data only).
    Exact,
}

#[derive(Args, Debug)]
pub struct HeatArgs {
    #[arg(long)]
    m: u32,
    #[arg(long, allow_hyphen_values = true)]
    y: f64,
    /// Sign in front of the m-th derivative: +1 or -1.
    #[arg(long, value_parser = parse_sign, default_value = "+1", allow_hyphen_values = true)]
    sign: Sign,
    /// gaussian, monomial:N, or file:PATH with two columns x, f(x).
    #[arg(long, value_parser = parse_init, default_value = "gaussian")]
    init: Init,
    #[arg(long, default_value_t = -20.0, allow_hyphen_values = true)]
    x_min: f64,
    #[arg(long, default_value_t = 20.0, allow_hyphen_values = true)]
    x_max: f64,
    /// Grid nodes, a power of two.
    #[arg(long, default_value_t = 1024)]
    nodes: usize,
    #[arg(long, value_enum, default_value = "spectral")]
    route: HeatRoute,
    /// Run directions in which high frequencies grow.
    #[arg(long)]
    allow_illposed: bool,
    #[command(flatten)]
    out: OutputArgs,
}

/// Two-column samples read from CSV, linearly interpolated, zero outside.
fn read_profile(path: &PathBuf) -> anyhow::Result<Vec<(f64, f64)>> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let mut pts = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let parse = |j: usize| rec.get(j).and_then(|s| s.parse::<f64>().ok());
        match (parse(0), parse(1)) {
            (Some(x), Some(v)) => pts.push((x, v)),
            _ if i == 0 => continue, // header
            _ => return Err(anyhow!("{}: row {} is not two numbers", path.display(), i + 1)),
        }
    }
    if pts.len() < 2 || pts.windows(2).any(|w| !(w[1].0 > w[0].0)) {
        return Err(anyhow!("{}: need at least two rows with increasing x", path.display()));
    }
    Ok(pts)
}

fn linear(pts: &[(f64, f64)], x: f64) -> f64 {
    if x < pts[0].0 || x > pts[pts.len() - 1].0 {
        return 0.0;
    }
    let i = pts.partition_point(|p| p.0 <= x).clamp(1, pts.len() - 1);
    let ((x0, v0), (x1, v1)) = (pts[i - 1], pts[i]);
    v0 + (v1 - v0) * (x - x0) / (x1 - x0)
}

pub fn heat(a: &HeatArgs) -> Outcome {
    let grid = Grid::new(a.x_min, a.x_max, a.nodes)?;
    let data = match &a.init {
        Init::Gaussian => Field::from_real_fn(grid, |x| (-x * x).exp()),
        Init::Monomial(n) => Field::from_real_fn(grid, |x| x.powi(*n as i32)),
        Init::File(p) => {
            let pts = read_profile(p).map_err(|e| usage(format!("{e:#}")))?;
            Field::from_real_fn(grid, |x| linear(&pts, x))
        }
    };
    let mut m = manifest("heat", &a.out);
    m.param("m", a.m)
        .param("y", a.y)
        .param("sign", a.sign)
        .param("init", format!("{:?}", a.init))
        .param("x_min", a.x_min)
        .param("x_max", a.x_max)
        .param("nodes", a.nodes)
        .param("route", format!("{:?}", a.route).to_lowercase())
        .param("allow_illposed", a.allow_illposed);
    let signed_y = a.sign.value() * a.y;
    let field = match a.route {
        HeatRoute::Spectral => {
            let spec = EvolutionSpec::new(a.m, a.y, a.sign)?.allowing_ill_posed(a.allow_illposed);
            let ev = evolve_spectral(&data, &spec).map_err(|e| match e {
                umbracal::Error::IllPosed { m, signed_y } => Failure::Run(format!(
                    "ill-posed direction: m = {m}, sign*y = {signed_y} amplifies high frequencies without bound; \
                     pass --allow-illposed to run it anyway"
                )),
                e => e.into(),
            })?;
            for w in &ev.warnings {
                eprintln!("warning: {w}");
                m.note(w.to_string());
            }
            ev.field
        }
        HeatRoute::Airy => {
            if a.m != 3 {
                return Err(usage("the Airy route solves m = 3 only"));
            }
            if signed_y == 0.0 {
                data
            } else {
                evolve_airy(&data, signed_y)?
            }
        }
        HeatRoute::Exact => {
            let Init::Monomial(n) = a.init else {
                return Err(usage("the exact route takes monomial:N data"));
            };
            let vals = grid
                .nodes()
                .map(|x| evolve_monomial(a.m, n, x, signed_y))
                .collect::<Result<Vec<_>, _>>()?;
            Field::from_real_fn(grid, |x| vals[((x - grid.x_min()) / grid.spacing()).round() as usize])
        }
    };
    let t = Table::new()
        .floats("x", grid.nodes().collect())
        .floats("re", field.values().iter().map(|v| v.re).collect())
        .floats("im", field.values().iter().map(|v| v.im).collect());
    write(&t, &m)
}

// gabor

#[derive(Args, Debug)]
pub struct GaborArgs {
    /// Window centres, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0,0.5,1", allow_hyphen_values = true)]
    tau: Vec<f64>,
    /// Frequencies, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0,0.5,1", allow_hyphen_values = true)]
    omega: Vec<f64>,
    /// Series truncation.
    #[arg(long, default_value_t = 40)]
    n: u32,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    amplitude: f64,
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    center: f64,
    #[arg(long, default_value_t = 0.25)]
    width: f64,
    #[command(flatten)]
    out: OutputArgs,
}

pub fn gabor(a: &GaborArgs) -> Outcome {
    let sig = Signal::gaussian(a.amplitude, a.center, a.width)?;
    let mut m = manifest("gabor", &a.out);
    m.param("tau", format!("{:?}", a.tau))
        .param("omega", format!("{:?}", a.omega))
        .param("n", a.n)
        .param("amplitude", a.amplitude)
        .param("center", a.center)
        .param("width", a.width);
    let mut cols: [Vec<f64>; 8] = Default::default();
    for &tau in &a.tau {
        for &omega in &a.omega {
            let s = gabor_series(&sig, tau, omega, a.n)?;
            let d = gabor_direct(&sig, tau, omega)?;
            let row = [tau, omega, s.value.re, s.value.im, d.re, d.im, (s.value - d).norm(), s.last_term];
            for (c, v) in cols.iter_mut().zip(row) {
                c.push(v);
            }
        }
    }
    let names = ["tau", "omega", "series_re", "series_im", "direct_re", "direct_im", "abs_diff", "last_term"];
    let t = names
        .iter()
        .zip(cols)
        .fold(Table::new(), |t, (name, c)| t.floats(*name, c));
    write(&t, &m)
}

// lacunary

#[derive(Args, Debug)]
pub struct LacunaryArgs {
    /// Points, comma separated; overrides the range flags.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    x: Vec<f64>,
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    x_min: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    x_max: f64,
    #[arg(long, default_value_t = 21)]
    points: usize,
    #[arg(long, allow_hyphen_values = true)]
    y: f64,
    #[arg(long, allow_hyphen_values = true)]
    t: f64,
    /// Cap on the number of terms; each series also stops at its smallest term.
    #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
    truncation: u32,
    #[command(flatten)]
    out: OutputArgs,
}

fn sweep(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>, Failure> {
    match n {
        0 => Err(usage("--points must be at least 1")),
        1 => Ok(vec![lo]),
        _ => Ok((0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()),
    }
}

pub fn lacunary(a: &LacunaryArgs) -> Outcome {
    let xs = if a.x.is_empty() { sweep(a.x_min, a.x_max, a.points)? } else { a.x.clone() };
    let mut m = manifest("lacunary", &a.out);
    m.param("x", format!("{xs:?}"))
        .param("y", a.y)
        .param("t", a.t)
        .param("truncation", a.truncation);
    let mut cols: [Vec<f64>; 7] = Default::default();
    for &x in &xs {
        let d = lacunary_direct(x, a.y, a.t, a.truncation)?;
        let u = lacunary_umbral(x, a.y, a.t, a.truncation)?;
        let f = lacunary_factored(x, a.y, a.t, a.truncation)?;
        let row = [x, d.value, u.value, f.value, (d.value - f.value).abs(), d.terms_used as f64, d.last_term];
        for (c, v) in cols.iter_mut().zip(row) {
            c.push(v);
        }
    }
    let [x, direct, umbral, factored, diff, terms, last] = cols;
    let t = Table::new()
        .floats("x", x)
        .floats("route_direct", direct)
        .floats("route_umbral", umbral)
        .floats("route_factored", factored)
        .floats("abs_diff", diff)
        .column("terms_direct", Column::Integer(terms.iter().map(|v| (*v as u64).to_string()).collect()))
        .floats("last_term_direct", last);
    write(&t, &m)
}

// figure

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureId {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3a")]
    ThreeA,
    #[value(name = "3b")]
    ThreeB,
}

#[derive(Args, Debug)]
pub struct FigureArgs {
    #[arg(long, value_enum)]
    id: FigureId,
    #[command(flatten)]
    out: OutputArgs,
}

/// Output window of the heat figures.
const HEAT_WINDOW: f64 = 20.0;

/// Spectral runs on a wide grid, cut to |x| ≤ HEAT_WINDOW.
fn heat_columns(grid: Grid, runs: &[(u32, f64, Sign)], m: &mut Manifest) -> Result<(Vec<f64>, Vec<Vec<f64>>), Failure> {
    let data = Field::from_real_fn(grid, |x| (-x * x).exp());
    let keep: Vec<usize> = (0..grid.n()).filter(|&i| grid.x(i).abs() <= HEAT_WINDOW).collect();
    let mut cols = Vec::new();
    for &(order, y, sign) in runs {
        let ev = evolve_spectral(&data, &EvolutionSpec::new(order, y, sign)?)?;
        for w in &ev.warnings {
            m.note(format!("m = {order}, y = {y}: {w}"));
        }
        cols.push(keep.iter().map(|&i| ev.field.values()[i].re).collect());
    }
    Ok((keep.iter().map(|&i| grid.x(i)).collect(), cols))
}

pub fn figure(a: &FigureArgs) -> Outcome {
    let mut m = manifest("figure", &a.out);
    let t = match a.id {
        FigureId::One => {
            let alphas = [3.0, 2.9];
            // Both integrands are below 1e-5 beyond |x| = 8.
            let xs: Vec<f64> = (-400..=400).map(|i| i as f64 * 0.02).collect();
            m.param("id", "1")
                .param("alpha", "3, 2.9")
                .param("x", "-8:0.02:8");
            let mut t = Table::new().floats("x", xs.clone());
            for alpha in alphas {
                t = t.floats(format!("alpha_{alpha}"), super_gaussian_profile(alpha, &xs)?);
            }
            t
        }
        FigureId::Two => {
            let xs = verify::lacunary_figure_xs();
            m.param("id", "2")
                .param("y", verify::LACUNARY_FIGURE_Y)
                .param("t", verify::LACUNARY_FIGURE_T)
                .param("x", "-1:0.01:1")
                .param("truncation", verify::LACUNARY_TRUNCATION);
            let rows = compare_routes(&xs, verify::LACUNARY_FIGURE_Y, verify::LACUNARY_FIGURE_T, verify::LACUNARY_TRUNCATION)?;
            Table::new()
                .floats("x", rows.iter().map(|r| r.x).collect())
                .floats("route_direct", rows.iter().map(|r| r.direct).collect())
                .floats("route_factored", rows.iter().map(|r| r.factored).collect())
                .floats("abs_diff", rows.iter().map(|r| r.abs_diff()).collect())
        }
        FigureId::ThreeA => {
            let grid = Grid::new(-40.0, 40.0, 2048)?;
            m.param("id", "3a")
                .param("init", "gaussian")
                .param("y", 1)
                .param("grid", "[-40, 40), 2048 nodes");
            m.note("m = 4 is evolved with dF/dy = -d^4F/dx^4; the forward quartic direction is ill-posed");
            let (xs, cols) = heat_columns(grid, &[(4, 1.0, Sign::Minus), (2, 1.0, Sign::Plus)], &mut m)?;
            let [m4, m2]: [Vec<f64>; 2] = cols.try_into().expect("two runs");
            Table::new().floats("x", xs).floats("m4_dissipative", m4).floats("m2", m2)
        }
        FigureId::ThreeB => {
            let grid = verify::airy_comparison_grid()?;
            let ys = [0.1, 0.5, 1.0];
            m.param("id", "3b")
                .param("init", "gaussian")
                .param("m", 3)
                .param("y", "0.1, 0.5, 1")
                .param("grid", "[-150, 150), 8192 nodes");
            let runs: Vec<_> = ys.iter().map(|&y| (3, y, Sign::Plus)).collect();
            let (xs, cols) = heat_columns(grid, &runs, &mut m)?;
            ys.iter()
                .zip(cols)
                .fold(Table::new().floats("x", xs), |t, (y, c)| t.floats(format!("y_{y}"), c))
        }
    };
    write(&t, &m)
}
