//! Named numerical checks grouped in suites, each with a pinned tolerance.
//!
//! A check measures one worst-case error over its sample set and passes when
//! that error is within tolerance. Errors raised by the computation itself
//! count as failures and are reported in `detail`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::airy::ai_at_zero;
use crate::analysis::gabor::{gabor_direct, gabor_series, Signal};
use crate::analysis::gamma::gamma;
use crate::analysis::identities::{
    airy_exp_identity, airy_origin_from_integral, erf_quadrature, erf_series, integral_of_airy, mellin_gaussian,
    quartic_gaussian, super_gaussian_integral,
};
use crate::error::{Error, Result};
use crate::heat::{
    evolve_airy, evolve_gw_quartic, evolve_spectral, gaussian_heat_closed_form, EvolutionSpec, Field, Grid, Profile,
    Sign,
};
use crate::lacunary::{compare_routes, lacunary_direct, lacunary_factored, lacunary_umbral, lacunary_umbral_coefficients};
use crate::numbers::hermite_number;
use crate::polynomials::{
    dcubic_poly, dgauss_poly, dseries, hermite2, hermite3_3var, hermite_m, hermite_m_umbral, multinomial_expansion,
    DerivativeSeries,
};
use crate::umbral::{project_exp, Umbra, UmbralPoly};

/// Pinned tolerances.
pub mod tolerances {
    pub const NEWTON_BINOMIAL: f64 = 1e-11;
    pub const MELLIN: f64 = 1e-8;
    pub const QUARTIC: f64 = 1e-8;
    pub const SUPER_GAUSSIAN: f64 = 1e-6;
    pub const ERF: f64 = 1e-10;
    pub const GAUSSIAN_DERIVATIVES: f64 = 1e-9;
    pub const CUBIC_DERIVATIVES: f64 = 1e-8;
    pub const GABOR: f64 = 1e-6;
    pub const AIRY_EXP: f64 = 1e-6;
    pub const AIRY_ORIGIN: f64 = 1e-10;
    pub const AIRY_INTEGRAL: f64 = 1e-10;
    pub const MULTINOMIAL: f64 = 1e-11;
    pub const HEAT_CLOSED_FORM: f64 = 1e-8;
    pub const HEAT_AIRY: f64 = 1e-4;
    pub const SEMIGROUP: f64 = 1e-10;
    pub const MEAN: f64 = 64.0 * f64::EPSILON;
    pub const MONOMIAL_EVOLUTION: f64 = 1e-6;
    pub const QUARTIC_GAUSSIAN_DATA: f64 = 1e-8;
    pub const LACUNARY_ROUTES: f64 = 1e-8;
    pub const LACUNARY_FIGURE: f64 = 1e-6;
    pub const LACUNARY_TERMS: f64 = 1e-10;
    pub const HEAT_POLYNOMIAL_FD: f64 = 1e-4;
}

/// Seed of the random points in the Newton-binomial check.
pub const NEWTON_BINOMIAL_SEED: u64 = 2024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Integrals,
    Series,
    Umbral,
    Heat,
    Lacunary,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [Suite::Integrals, Suite::Series, Suite::Umbral, Suite::Heat, Suite::Lacunary];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Integrals => "integrals",
            Suite::Series => "series",
            Suite::Umbral => "umbral",
            Suite::Heat => "heat",
            Suite::Lacunary => "lacunary",
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
        match s {
            "integrals" => Ok(Suite::Integrals),
            "series" => Ok(Suite::Series),
            "umbral" => Ok(Suite::Umbral),
            "heat" => Ok(Suite::Heat),
            "lacunary" => Ok(Suite::Lacunary),
            "all" => Ok(Suite::All),
            _ => Err(Error::Domain(format!("unknown suite {s:?}"))),
        }
    }
}

/// What a check's measured value counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Unit {
    /// Absolute or relative error.
    Error,
    /// Number of failing samples.
    Count,
    /// Error divided by the series' own truncation budget.
    Budget,
}

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub suite: Suite,
    /// Worst value over the sample set; NaN when the computation failed.
    pub measured: f64,
    pub tolerance: f64,
    pub unit: Unit,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn from_result(name: impl Into<String>, suite: Suite, tolerance: f64, r: Result<Measure>) -> Self {
        let name = name.into();
        match r {
            Ok(m) => Check {
                passed: m.worst <= tolerance,
                name,
                suite,
                measured: m.worst,
                tolerance,
                unit: Unit::Error,
                detail: m.detail,
            },
            Err(e) => Check {
                name,
                suite,
                measured: f64::NAN,
                tolerance,
                unit: Unit::Error,
                passed: false,
                detail: format!("error: {e}"),
            },
        }
    }

    fn in_units(mut self, unit: Unit) -> Self {
        self.unit = unit;
        self
    }

    /// Same check re-judged against another tolerance. Only error checks
    /// are affected; counts and budgets keep their own scale.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        if self.unit == Unit::Error {
            self.tolerance = tolerance;
            self.passed = self.measured <= tolerance;
        }
        self
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}::{} measured={:.3e} tol={:.1e} {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.suite,
            self.name,
            self.measured,
            self.tolerance,
            self.detail
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Worst error and where it occurred.
struct Measure {
    worst: f64,
    detail: String,
}

#[derive(Default)]
struct Worst {
    err: f64,
    at: String,
    samples: usize,
}

impl Worst {
    fn see(&mut self, err: f64, at: impl FnOnce() -> String) {
        self.samples += 1;
        // NaN must win.
        if !(err <= self.err) {
            self.err = err;
            self.at = at();
        }
    }

    fn done(self) -> Result<Measure> {
        let detail = if self.at.is_empty() {
            format!("{} samples, all exact", self.samples)
        } else {
            format!("{} samples, worst at {}", self.samples, self.at)
        };
        Ok(Measure { worst: self.err, detail })
    }
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs()
    }
}

/// Runs one suite, or every suite for [`Suite::All`].
pub fn run(suite: Suite) -> Report {
    let checks = match suite {
        Suite::All => Suite::EACH.iter().flat_map(|&s| run(s).checks).collect(),
        Suite::Integrals => integrals(),
        Suite::Series => series(),
        Suite::Umbral => umbral(),
        Suite::Heat => heat(),
        Suite::Lacunary => lacunary(),
    };
    Report { checks }
}

/// Runs a suite and re-judges every check against a common tolerance.
pub fn run_with_tolerance(suite: Suite, tol: f64) -> Report {
    let mut r = run(suite);
    r.checks = r.checks.into_iter().map(|c| c.with_tolerance(tol)).collect();
    r
}

// Suite composition.

fn integrals() -> Vec<Check> {
    let mut out = mellin_checks();
    out.push(quartic_check());
    out.extend(super_gaussian_checks());
    out.extend(airy_checks());
    out
}

fn series() -> Vec<Check> {
    let mut out = vec![erf_check(), erf_symmetry_check()];
    out.extend(derivative_series_checks());
    out.push(umbral_gaussian_check());
    out.extend(gabor_checks());
    out
}

fn umbral() -> Vec<Check> {
    let mut out = hermite_number_checks();
    out.push(newton_binomial_check());
    out.push(multinomial_check());
    out.push(heat_polynomial_check());
    out
}

fn heat() -> Vec<Check> {
    let mut out = vec![heat_closed_form_check()];
    out.extend(heat_airy_checks());
    out.push(semigroup_check());
    out.push(mean_check());
    out.push(monomial_evolution_check());
    out.extend(quartic_checks());
    out
}

fn lacunary() -> Vec<Check> {
    let mut out = lacunary_route_checks();
    out.push(lacunary_figure_check());
    out.push(lacunary_terms_check());
    out.push(lacunary_cut_check());
    out
}

// Numbers and polynomials.

/// Exact listings of Hermite numbers; measured is the count of mismatches.
pub fn hermite_number_checks() -> Vec<Check> {
    let listing = |m: u32, want: &[u64]| -> Result<Measure> {
        let mut bad = Vec::new();
        for (r, &w) in want.iter().enumerate() {
            let got = hermite_number(m, r as u32)?;
            if got != w.into() {
                bad.push(format!("h_{r} = {got}, want {w}"));
            }
        }
        Ok(Measure {
            worst: bad.len() as f64,
            detail: if bad.is_empty() { format!("{} entries exact", want.len()) } else { bad.join("; ") },
        })
    };
    let order4 = || -> Result<Measure> {
        let mut bad = Vec::new();
        for (r, w) in [(4u32, 24u64), (8, 20160), (12, 79833600)] {
            let got = hermite_number(4, r)?;
            if got != w.into() {
                bad.push(format!("h_{r} = {got}, want {w}"));
            }
        }
        Ok(Measure {
            worst: bad.len() as f64,
            detail: if bad.is_empty() { "24, 20160, 79833600 exact".into() } else { bad.join("; ") },
        })
    };
    vec![
        Check::from_result("hermite_numbers_order2", Suite::Umbral, 0.0, listing(2, &[1, 0, 2, 0, 12, 0, 120]))
            .in_units(Unit::Count),
        Check::from_result(
            "hermite_numbers_order3",
            Suite::Umbral,
            0.0,
            listing(3, &[1, 0, 0, 6, 0, 0, 360, 0, 0, 60480]),
        )
        .in_units(Unit::Count),
        Check::from_result("hermite_numbers_order4", Suite::Umbral, 0.0, order4()).in_units(Unit::Count),
    ]
}

/// Umbral projection of (x + y^{1/m}ĥ)^n against the direct sum at seeded
/// random points, m ∈ {2, 3, 4}, n ≤ 16.
pub fn newton_binomial_check() -> Check {
    let run = || -> Result<Measure> {
        let mut rng = ChaCha8Rng::seed_from_u64(NEWTON_BINOMIAL_SEED);
        let mut w = Worst::default();
        for _ in 0..100 {
            let x: f64 = rng.gen_range(-2.0..2.0);
            let y: f64 = rng.gen_range(-2.0..2.0);
            for m in 2..=4 {
                for n in 0..=16 {
                    let direct = hermite_m(m, n, x, y)?;
                    let umbral = hermite_m_umbral(m, n, x, y)?;
                    w.see(rel(umbral, direct), || format!("m={m} n={n} x={x} y={y}"));
                }
            }
        }
        w.done()
    };
    Check::from_result("newton_binomial", Suite::Umbral, tolerances::NEWTON_BINOMIAL, run())
}

/// Trinomial expansion against the three-variable Hermite polynomial.
pub fn multinomial_check() -> Check {
    let run = || -> Result<Measure> {
        let mut w = Worst::default();
        for &x in &[-1.2, 0.3, 1.5] {
            for &y in &[0.0, 0.4, 1.1] {
                for &z in &[-0.8, 0.5, 1.3] {
                    for n in 0..=12 {
                        let want = hermite3_3var(n, x, y, z);
                        let got = multinomial_expansion(n, x, y, z)?;
                        w.see(rel(got, want), || format!("n={n} ({x}, {y}, {z})"));
                    }
                }
            }
        }
        w.done()
    };
    Check::from_result("multinomial_expansion", Suite::Umbral, tolerances::MULTINOMIAL, run())
}

/// ∂_y H = ∂_x^m H by fourth-order finite differences; error scaled by
/// max(1, |∂_y H|).
pub fn heat_polynomial_check() -> Check {
    let run = || -> Result<Measure> {
        let mut w = Worst::default();
        let hx = 1e-2;
        let hy = 1e-4;
        for m in 2..=4u32 {
            for n in 0..=8u32 {
                for &x in &[-1.3, -0.4, 0.5, 1.1] {
                    for &y in &[-0.7, 0.3, 0.9] {
                        let f = |dx: f64, dy: f64| hermite_m(m, n, x + dx, y + dy);
                        let dy = (-f(0.0, 2.0 * hy)? + 8.0 * f(0.0, hy)? - 8.0 * f(0.0, -hy)? + f(0.0, -2.0 * hy)?)
                            / (12.0 * hy);
                        let s = |k: f64| f(k * hx, 0.0);
                        let dxm = match m {
                            2 => (-s(2.0)? + 16.0 * s(1.0)? - 30.0 * s(0.0)? + 16.0 * s(-1.0)? - s(-2.0)?) / (12.0 * hx * hx),
                            3 => (-s(3.0)? + 8.0 * s(2.0)? - 13.0 * s(1.0)? + 13.0 * s(-1.0)? - 8.0 * s(-2.0)? + s(-3.0)?)
                                / (8.0 * hx.powi(3)),
                            _ => (-s(3.0)? + 12.0 * s(2.0)? - 39.0 * s(1.0)? + 56.0 * s(0.0)? - 39.0 * s(-1.0)?
                                + 12.0 * s(-2.0)?
                                - s(-3.0)?)
                                / (6.0 * hx.powi(4)),
                        };
                        let err = (dy - dxm).abs() / dy.abs().max(1.0);
                        w.see(err, || format!("m={m} n={n} x={x} y={y}"));
                    }
                }
            }
        }
        w.done()
    };
    Check::from_result("heat_polynomial_fd", Suite::Umbral, tolerances::HEAT_POLYNOMIAL_FD, run())
}

// Integrals.

pub fn mellin_checks() -> Vec<Check> {
    [0.5, 1.0, 2.0, 3.0, 4.5]
        .iter()
        .map(|&nu| {
            let r = mellin_gaussian(nu).map(|t| Measure {
                worst: t.rel_error(),
                detail: format!("quadrature {:.17e} vs {:.17e}", t.numeric, t.closed_form),
            });
            Check::from_result(format!("mellin_gaussian({nu})"), Suite::Integrals, tolerances::MELLIN, r)
        })
        .collect()
}

pub fn quartic_check() -> Check {
    let r = quartic_gaussian().map(|t| Measure {
        worst: t.rel_error(),
        detail: format!("quadrature {:.17e} vs {:.17e}", t.numeric, t.closed_form),
    });
    Check::from_result("quartic_gaussian", Suite::Integrals, tolerances::QUARTIC, r)
}

pub fn super_gaussian_checks() -> Vec<Check> {
    [0.0, 1.0, 2.0, 3.0]
        .iter()
        .map(|&alpha| {
            let r = super_gaussian_integral(alpha).map(|t| Measure {
                worst: t.rel_error(),
                detail: format!("quadrature {:.17e} vs {:.17e}", t.numeric, t.closed_form),
            });
            Check::from_result(
                format!("super_gaussian({alpha})"),
                Suite::Integrals,
                tolerances::SUPER_GAUSSIAN,
                r,
            )
        })
        .collect()
}

/// Ai(0) two ways, ∫Ai = 1, and the Airy-exponential identity.
pub fn airy_checks() -> Vec<Check> {
    let origin = || -> Result<Measure> {
        let closed = 3f64.powf(-2.0 / 3.0) / gamma(2.0 / 3.0);
        let a = ai_at_zero();
        let contour = airy_origin_from_integral()?;
        let worst = rel(a, closed).max(contour.rel_error());
        Ok(Measure {
            worst,
            detail: format!("Ai(0) = {a:.17e}, contour {:.17e}, closed {closed:.17e}", contour.numeric),
        })
    };
    let integral = integral_of_airy().map(|t| Measure {
        worst: t.abs_error(),
        detail: format!("{:.17e}", t.numeric),
    });
    let identity = || -> Result<Measure> {
        let mut w = Worst::default();
        for &lambda in &[1.0 / 3.0, 1.0, 2.0] {
            for &x in &[0.0, 0.25, 0.5, 0.75, 1.0] {
                let t = airy_exp_identity(lambda, x)?;
                w.see(t.rel_error(), || format!("lambda={lambda} x={x}"));
            }
        }
        w.done()
    };
    vec![
        Check::from_result("airy_origin", Suite::Integrals, tolerances::AIRY_ORIGIN, origin()),
        Check::from_result("airy_integral", Suite::Integrals, tolerances::AIRY_INTEGRAL, integral),
        Check::from_result("airy_exp_identity", Suite::Integrals, tolerances::AIRY_EXP, identity()),
    ]
}

// Series.

/// Truncation of the erf series.
pub const ERF_TRUNCATION: u32 = 60;

pub fn erf_check() -> Check {
    let run = || -> Result<Measure> {
        let mut w = Worst::default();
        for i in -40..=40 {
            let x = i as f64 * 0.05;
            let s = erf_series(x, ERF_TRUNCATION).value;
            let q = erf_quadrature(x)?;
            w.see((s - q).abs(), || format!("x={x}"));
        }
        w.done()
    };
    Check::from_result("erf_series", Suite::Series, tolerances::ERF, run())
}

/// erf(−x) = −erf(x) bit for bit on both routes.
pub fn erf_symmetry_check() -> Check {
    let run = || -> Result<Measure> {
        let mut w = Worst::default();
        for i in 1..=40 {
            let x = i as f64 * 0.05;
            let s = erf_series(x, ERF_TRUNCATION).value + erf_series(-x, ERF_TRUNCATION).value;
            let q = erf_quadrature(x)? + erf_quadrature(-x)?;
            w.see(s.abs().max(q.abs()), || format!("x={x}"));
        }
        w.done()
    };
    Check::from_result("erf_odd_symmetry", Suite::Series, 0.0, run())
}

/// Truncation of the derivative series.
pub const DERIVATIVE_TRUNCATION: u32 = 150;

pub fn derivative_series_checks() -> Vec<Check> {
    let run = |kind: DerivativeSeries, n_max: u32| -> Result<Measure> {
        let mut w = Worst::default();
        for n in 0..=n_max {
            for i in -30..=30 {
                let x = i as f64 * 0.05;
                let want = match kind {
                    DerivativeSeries::Gaussian => dgauss_poly(n, x),
                    DerivativeSeries::NegativeCubic => dcubic_poly(n, x),
                };
                let got = dseries(n, x, DERIVATIVE_TRUNCATION, kind)?.value;
                let err = if want == 0.0 { got.abs() } else { rel(got, want) };
                w.see(err, || format!("n={n} x={x}"));
            }
        }
        w.done()
    };
    vec![
        Check::from_result(
            "gaussian_derivative_series",
            Suite::Series,
            tolerances::GAUSSIAN_DERIVATIVES,
            run(DerivativeSeries::Gaussian, 6),
        ),
        Check::from_result(
            "cubic_derivative_series",
            Suite::Series,
            tolerances::CUBIC_DERIVATIVES,
            run(DerivativeSeries::NegativeCubic, 5),
        ),
    ]
}

/// Projected e^{iĥx} against e^{−x²}; measured is the error in units of
/// the last retained term plus rounding, so it passes at ≤ 1.
pub fn umbral_gaussian_check() -> Check {
    let run = || -> Result<Measure> {
        let mut w = Worst::default();
        let u = Umbra::new(2)?;
        for i in -20..=20 {
            let x = i as f64 * 0.1;
            let p = UmbralPoly::monomial(u, 2, Complex64::new(0.0, x));
            let s = project_exp(&p, 80)?;
            let err = (s.value - Complex64::new((-x * x).exp(), 0.0)).norm();
            let budget = s.last_term + 4.0 * f64::EPSILON * (x * x).exp();
            w.see(err / budget, || format!("x={x}"));
        }
        w.done()
    };
    Check::from_result("umbral_gaussian", Suite::Series, 1.0, run()).in_units(Unit::Budget)
}

/// Test signal of the Gabor checks: amplitude 1, centre 0.5, width 0.25.
pub fn gabor_signal() -> Result<Signal> {
    Signal::gaussian(1.0, 0.5, 0.25)
}

pub fn gabor_checks() -> Vec<Check> {
    let agreement = || -> Result<Measure> {
        let sig = gabor_signal()?;
        let mut w = Worst::default();
        for &tau in &[0.0, 0.5, 1.0] {
            for &omega in &[0.0, 0.5, 1.0] {
                let d = gabor_direct(&sig, tau, omega)?;
                let s = gabor_series(&sig, tau, omega, 40)?;
                w.see((s.value - d).norm(), || format!("tau={tau} omega={omega}"));
            }
        }
        w.done()
    };
    // Measured: 0 when the error shrinks from N = 10 to 20 to 40 at every
    // point, 1 otherwise.
    let monotone = || -> Result<Measure> {
        let sig = gabor_signal()?;
        let mut bad = Vec::new();
        for &tau in &[0.0, 0.5, 1.0] {
            for &omega in &[0.0, 0.5, 1.0] {
                let d = gabor_direct(&sig, tau, omega)?;
                let errs = [10, 20, 40]
                    .iter()
                    .map(|&n| Ok((gabor_series(&sig, tau, omega, n)?.value - d).norm()))
                    .collect::<Result<Vec<_>>>()?;
                if !(errs[1] <= errs[0] && errs[2] <= errs[1]) {
                    bad.push(format!("tau={tau} omega={omega}: {errs:?}"));
                }
            }
        }
        Ok(Measure {
            worst: if bad.is_empty() { 0.0 } else { 1.0 },
            detail: if bad.is_empty() { "N = 10, 20, 40".into() } else { bad.join("; ") },
        })
    };
    vec![
        Check::from_result("gabor_series", Suite::Series, tolerances::GABOR, agreement()),
        Check::from_result("gabor_monotone", Suite::Series, 0.0, monotone()).in_units(Unit::Count),
    ]
}

// Heat.

fn gaussian_field(grid: Grid) -> Field {
    Field::from_real_fn(grid, |x| (-x * x).exp())
}

/// Grid of the m = 3 comparison.
pub fn airy_comparison_grid() -> Result<Grid> {
    Grid::new(-150.0, 150.0, 8192)
}

pub fn heat_closed_form_check() -> Check {
    let run = || -> Result<Measure> {
        let grid = Grid::new(-20.0, 20.0, 2048)?;
        let g = gaussian_field(grid);
        let mut w = Worst::default();
        for &y in &[0.25, 1.0] {
            let out = evolve_spectral(&g, &EvolutionSpec::new(2, y, Sign::Plus)?)?.field;
            let exact = Field::from_real_fn(grid, |x| gaussian_heat_closed_form(x, y));
            w.see(out.sup_distance(&exact)?, || format!("y={y}"));
        }
        w.done()
    };
    Check::from_result("heat_m2_closed_form", Suite::Heat, tolerances::HEAT_CLOSED_FORM, run())
}

pub fn heat_airy_checks() -> Vec<Check> {
    [0.1, 0.5, 1.0]
        .iter()
        .map(|&y| {
            let run = || -> Result<Measure> {
                let grid = airy_comparison_grid()?;
                let g = gaussian_field(grid);
                let spectral = evolve_spectral(&g, &EvolutionSpec::new(3, y, Sign::Plus)?)?.field;
                let airy = evolve_airy(&g, y)?;
                Ok(Measure {
                    worst: spectral.sup_distance(&airy)?,
                    detail: format!("grid [-150, 150], n = {}", grid.n()),
                })
            };
            Check::from_result(format!("heat_m3_airy_route(y={y})"), Suite::Heat, tolerances::HEAT_AIRY, run())
        })
        .collect()
}

/// e^{b L} e^{a L} f = e^{(a+b) L} f, relative to the sup of the result.
pub fn semigroup_check() -> Check {
    let run = || -> Result<Measure> {
        let grid = Grid::new(-20.0, 20.0, 512)?;
        let f = gaussian_field(grid);
        let mut w = Worst::default();
        for (m, sign) in [(2, Sign::Plus), (3, Sign::Plus), (3, Sign::Minus), (4, Sign::Minus)] {
            let a = EvolutionSpec::new(m, 0.1, sign)?;
            let b = EvolutionSpec::new(m, 0.25, sign)?;
            let ab = EvolutionSpec::new(m, 0.35, sign)?;
            let two = evolve_spectral(&evolve_spectral(&f, &a)?.field, &b)?.field;
            let one = evolve_spectral(&f, &ab)?.field;
            w.see(two.sup_distance(&one)? / one.max_abs(), || format!("m={m} sign={sign}"));
        }
        w.done()
    };
    Check::from_result("semigroup", Suite::Heat, tolerances::SEMIGROUP, run())
}

pub fn mean_check() -> Check {
    let run = || -> Result<Measure> {
        let grid = Grid::new(-10.0, 10.0, 256)?;
        let f = Field::from_real_fn(grid, |x| (-(x - 1.0).powi(2)).exp() * (1.0 + x));
        let mut w = Worst::default();
        for (m, y, sign) in [(2, 0.7, Sign::Plus), (3, 0.4, Sign::Minus), (4, 0.2, Sign::Minus), (6, 0.01, Sign::Plus)] {
            let out = evolve_spectral(&f, &EvolutionSpec::new(m, y, sign)?)?.field;
            w.see((out.mean() - f.mean()).norm(), || format!("m={m}"));
        }
        w.done()
    };
    Check::from_result("mean_preserved", Suite::Heat, tolerances::MEAN, run())
}

/// Spectral evolution of a windowed monomial against the heat polynomial on
/// |x| ≤ 2. For m = 3 the taper at |x| ≈ 10 radiates into the interior at
/// wavenumber √(d/3y); y is kept small enough that its spectrum is negligible
/// there.
pub fn monomial_evolution_check() -> Check {
    let run = || -> Result<Measure> {
        let grid = Grid::new(-16.0, 16.0, 4096)?;
        let y = 0.002;
        let mut w = Worst::default();
        for m in [2u32, 3] {
            for n in 0..=6u32 {
                let f = Field::from_real_fn(grid, |x| x.powi(n as i32) * (-(x / 10.0).powi(16)).exp());
                let out = evolve_spectral(&f, &EvolutionSpec::new(m, y, Sign::Plus)?)?.field;
                for (i, x) in grid.nodes().enumerate() {
                    if x.abs() <= 2.0 {
                        let want = hermite_m(m, n, x, y)?;
                        let err = (out.values()[i].re - want).abs() / want.abs().max(1.0);
                        w.see(err, || format!("m={m} n={n} x={x}"));
                    }
                }
            }
        }
        w.done()
    };
    Check::from_result("monomial_evolution", Suite::Heat, tolerances::MONOMIAL_EVOLUTION, run())
}

/// Quartic evolution: Gaussian data through the ζ-integral against the
/// dissipative spectral solver, and rejection of the forward direction.
pub fn quartic_checks() -> Vec<Check> {
    let agreement = || -> Result<Measure> {
        // Wide enough that the periodic images of the quartic kernel are
        // negligible on |x| ≤ 16 at |y| = 1.
        let grid = Grid::new(-40.0, 40.0, 2048)?;
        let g = gaussian_field(grid);
        let mut w = Worst::default();
        for &y in &[-0.05, -0.5, -1.0] {
            let e = evolve_gw_quartic(&Profile::PolyGaussian { coeffs: vec![1.0], a: 1.0 }, y, 0)?;
            // ∂_y F = ∂⁴F run to negative y is ∂_y F = −∂⁴F run to |y|.
            let s = evolve_spectral(&g, &EvolutionSpec::new(4, -y, Sign::Minus)?)?.field;
            for i in (0..grid.n()).step_by(4) {
                let x = grid.x(i);
                if x.abs() <= 16.0 {
                    w.see((e.at(x)? - s.values()[i].re).abs(), || format!("y={y} x={x}"));
                }
            }
        }
        w.done()
    };
    let rejected = || -> Result<Measure> {
        let grid = Grid::new(-16.0, 16.0, 64)?;
        let spectral = evolve_spectral(&gaussian_field(grid), &EvolutionSpec::new(4, 1.0, Sign::Plus)?);
        let gw = evolve_gw_quartic(&Profile::PolyGaussian { coeffs: vec![1.0], a: 1.0 }, 1.0, 0);
        let ok = matches!(spectral, Err(Error::IllPosed { .. })) && matches!(gw, Err(Error::IllPosed { .. }));
        Ok(Measure {
            worst: if ok { 0.0 } else { 1.0 },
            detail: "forward quartic y = 1 must be refused".into(),
        })
    };
    vec![
        Check::from_result(
            "quartic_dissipative",
            Suite::Heat,
            tolerances::QUARTIC_GAUSSIAN_DATA,
            agreement(),
        ),
        Check::from_result("quartic_forward_rejected", Suite::Heat, 0.0, rejected()).in_units(Unit::Count),
    ]
}

// Lacunary.

/// Points sampled in the region |t|, |y| ≤ 0.2.
pub fn lacunary_region() -> Vec<(f64, f64, f64)> {
    let mut pts = Vec::new();
    for &x in &[-1.0, -0.5, 0.5, 1.0] {
        for &y in &[-0.2, -0.1, 0.1, 0.2] {
            for &t in &[-0.2, -0.1, -0.05, 0.05, 0.1, 0.2] {
                pts.push((x, y, t));
            }
        }
    }
    pts
}

/// Truncation cap of the lacunary checks.
pub const LACUNARY_TRUNCATION: u32 = 200;

/// Umbral and factored routes against the direct route over the region.
pub fn lacunary_route_checks() -> Vec<Check> {
    let run = |umbral: bool| -> Result<Measure> {
        let mut w = Worst::default();
        for (x, y, t) in lacunary_region() {
            let d = lacunary_direct(x, y, t, LACUNARY_TRUNCATION)?.value;
            let other = if umbral {
                lacunary_umbral(x, y, t, LACUNARY_TRUNCATION)?.value
            } else {
                lacunary_factored(x, y, t, LACUNARY_TRUNCATION)?.value
            };
            w.see(rel(other, d), || format!("x={x} y={y} t={t}: {other} vs direct {d}"));
        }
        w.done()
    };
    vec![
        Check::from_result("lacunary_umbral_vs_direct", Suite::Lacunary, tolerances::LACUNARY_ROUTES, run(true)),
        Check::from_result(
            "lacunary_factored_vs_direct",
            Suite::Lacunary,
            tolerances::LACUNARY_ROUTES,
            run(false),
        ),
    ]
}

/// The figure sweep: x ∈ [−1, 1] in steps of 0.01.
pub fn lacunary_figure_xs() -> Vec<f64> {
    (-100..=100).map(|i| i as f64 * 0.01).collect()
}

pub const LACUNARY_FIGURE_Y: f64 = -0.2;
pub const LACUNARY_FIGURE_T: f64 = -0.1;

pub fn lacunary_figure_check() -> Check {
    let run = || -> Result<Measure> {
        let rows = compare_routes(&lacunary_figure_xs(), LACUNARY_FIGURE_Y, LACUNARY_FIGURE_T, LACUNARY_TRUNCATION)?;
        let mut w = Worst::default();
        for r in rows {
            w.see(r.abs_diff(), || format!("x={}", r.x));
        }
        w.done()
    };
    Check::from_result("lacunary_figure_routes", Suite::Lacunary, tolerances::LACUNARY_FIGURE, run())
}

/// r!·[t^r] of the projected exponential equals H_{3r}(x, y).
pub fn lacunary_terms_check() -> Check {
    let run = || -> Result<Measure> {
        let mut w = Worst::default();
        for &(x, y) in &[(0.6, -0.2), (-1.1, 0.15), (0.0, 0.3), (1.0, -0.1)] {
            let c = lacunary_umbral_coefficients(x, y, 8)?;
            let mut fact = 1.0;
            for r in 0..=8u32 {
                if r > 0 {
                    fact *= r as f64;
                }
                let want = hermite2(3 * r, x, y);
                let got = fact * c[r as usize];
                let err = if want == 0.0 { got.abs() } else { rel(got, want) };
                w.see(err, || format!("r={r} x={x} y={y}"));
            }
        }
        w.done()
    };
    Check::from_result("lacunary_term_identity", Suite::Lacunary, tolerances::LACUNARY_TERMS, run())
}

/// At |t| ≤ 0.05 the smallest term comes no earlier than r = 10; measured is
/// the number of points where it does.
pub fn lacunary_cut_check() -> Check {
    let run = || -> Result<Measure> {
        let mut early = Vec::new();
        for &x in &[-1.0, 0.5, 1.0] {
            for &y in &[-0.2, 0.2] {
                for &t in &[-0.05, 0.05] {
                    let s = lacunary_direct(x, y, t, LACUNARY_TRUNCATION)?;
                    if s.terms_used < 10 {
                        early.push(format!("x={x} y={y} t={t}: {} terms", s.terms_used));
                    }
                }
            }
        }
        Ok(Measure {
            worst: early.len() as f64,
            detail: if early.is_empty() { "cut at r ≥ 10 everywhere".into() } else { early.join("; ") },
        })
    };
    Check::from_result("lacunary_smallest_term_index", Suite::Lacunary, 0.0, run()).in_units(Unit::Count)
}
