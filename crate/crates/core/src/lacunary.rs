//! The triple-lacunary generating function Σ_r t^r H_{3r}(x, y)/r!.
//!
//! H_{3r} grows like a square-root factorial, so for y ≠ 0 every route is an
//! asymptotic series and is cut at its smallest term. Three evaluations:
//!
//! * direct: the defining sum with two-variable Hermite polynomials;
//! * umbral: project e^{t(x + √y ĥ)³}, carrying √y inside a weighted umbra
//!   so that negative y never needs a complex root;
//! * factored: e^{tx³} Σ_r y^r/r! H^{(3)}_{2r}(3x²t, 3xt, t), from splitting
//!   the cube and projecting the even powers of √y ĥ. The middle argument
//!   is 3xt: the coefficient of (√y ĥ)² in t(x + √y ĥ)³.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polynomials::{hermite2, hermite3_3var};
use crate::series::{sum_to_smallest_term, SeriesResult};
use crate::umbral::UmbralPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Route {
    Direct,
    Umbral,
    Factored,
}

/// One evaluation request: point, truncation cap and route.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LacunaryEval {
    pub x: f64,
    pub y: f64,
    pub t: f64,
    pub truncation: u32,
    pub route: Route,
}

impl LacunaryEval {
    pub fn evaluate(&self) -> Result<SeriesResult> {
        match self.route {
            Route::Direct => lacunary_direct(self.x, self.y, self.t, self.truncation),
            Route::Umbral => lacunary_umbral(self.x, self.y, self.t, self.truncation),
            Route::Factored => lacunary_factored(self.x, self.y, self.t, self.truncation),
        }
    }
}

/// Default truncation cap; the smallest term is reached well before it in
/// the region |t|, |y| ≤ 0.2.
pub const DEFAULT_TRUNCATION: u32 = 120;

fn check(x: f64, y: f64, t: f64) -> Result<()> {
    for v in [x, y, t] {
        if !v.is_finite() {
            return Err(Error::NonFinite(v));
        }
    }
    Ok(())
}

/// Σ_{r ≤ R} t^r H_{3r}(x, y)/r!, cut at the smallest term.
pub fn lacunary_direct(x: f64, y: f64, t: f64, truncation: u32) -> Result<SeriesResult> {
    check(x, y, t)?;
    let mut coeff = 1.0; // t^r/r!
    let terms = (0..=truncation).map(move |r| {
        if r > 0 {
            coeff *= t / r as f64;
        }
        coeff * hermite2(3 * r, x, y)
    });
    Ok(sum_to_smallest_term(terms, truncation as usize + 1))
}

/// Projected terms t^r (x + √y ĥ)^{3r}/r!, built by repeated multiplication.
struct UmbralTerms {
    step: UmbralPoly,
    current: UmbralPoly,
    r: u32,
}

impl UmbralTerms {
    fn new(x: f64, y: f64, t: f64) -> Result<Self> {
        let base = UmbralPoly::binomial_base(x, 2, y)?;
        Ok(Self {
            step: base.pow(3).scale(t),
            current: UmbralPoly::one(),
            r: 0,
        })
    }
}

impl Iterator for UmbralTerms {
    type Item = Result<f64>;

    fn next(&mut self) -> Option<Result<f64>> {
        if self.r > 0 {
            self.current = (&self.current * &self.step).scale(1.0 / self.r as f64);
        }
        self.r += 1;
        Some(self.current.project().map(|v| v.re))
    }
}

/// Coefficients of t^r, r = 0..=r_max, in the projected umbral exponential.
pub fn lacunary_umbral_coefficients(x: f64, y: f64, r_max: u32) -> Result<Vec<f64>> {
    check(x, y, 0.0)?;
    UmbralTerms::new(x, y, 1.0)?.take(r_max as usize + 1).collect()
}

/// Projection of e^{t(x + √y ĥ)³}, cut at the smallest term.
pub fn lacunary_umbral(x: f64, y: f64, t: f64, truncation: u32) -> Result<SeriesResult> {
    check(x, y, t)?;
    let mut failure = None;
    let terms = UmbralTerms::new(x, y, t)?.map_while(|v| match v {
        Ok(v) => Some(v),
        Err(e) => {
            failure = Some(e);
            None
        }
    });
    let out = sum_to_smallest_term(terms, truncation as usize + 1);
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// e^{tx³} Σ_{r ≤ R} y^r/r! H^{(3)}_{2r}(3x²t, 3xt, t), cut at the smallest term.
pub fn lacunary_factored(x: f64, y: f64, t: f64, truncation: u32) -> Result<SeriesResult> {
    check(x, y, t)?;
    let (a, b, c) = (3.0 * x * x * t, 3.0 * x * t, t);
    let mut coeff = 1.0; // y^r/r!
    let terms = (0..=truncation).map(move |r| {
        if r > 0 {
            coeff *= y / r as f64;
        }
        coeff * hermite3_3var(2 * r, a, b, c)
    });
    let core = sum_to_smallest_term(terms, truncation as usize + 1);
    let scale = (t * x * x * x).exp();
    Ok(SeriesResult::new(core.value * scale, core.terms_used, core.last_term * scale))
}

/// The x-sweep compared in the figure: both factored and direct routes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub x: f64,
    pub direct: f64,
    pub factored: f64,
}

impl ComparisonRow {
    pub fn abs_diff(&self) -> f64 {
        (self.direct - self.factored).abs()
    }
}

pub fn compare_routes(xs: &[f64], y: f64, t: f64, truncation: u32) -> Result<Vec<ComparisonRow>> {
    xs.iter()
        .map(|&x| {
            Ok(ComparisonRow {
                x,
                direct: lacunary_direct(x, y, t, truncation)?.value,
                factored: lacunary_factored(x, y, t, truncation)?.value,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_points() {
        for route in [Route::Direct, Route::Umbral, Route::Factored] {
            let e = |x, y, t| LacunaryEval { x, y, t, truncation: 40, route }.evaluate().unwrap().value;
            assert_eq!(e(0.7, -0.1, 0.0), 1.0, "{route:?}");
            assert_eq!(e(0.0, 0.0, 0.15), 1.0, "{route:?}");
        }
    }

    #[test]
    fn zero_y_is_a_cubic_exponential() {
        for &(x, t) in &[(0.8_f64, -0.15_f64), (-1.0, 0.1), (1.2, 0.2)] {
            let want = (t * x * x * x).exp();
            assert!((lacunary_direct(x, 0.0, t, 80).unwrap().value - want).abs() < 1e-14);
            assert!((lacunary_umbral(x, 0.0, t, 80).unwrap().value - want).abs() < 1e-14);
            assert_eq!(lacunary_factored(x, 0.0, t, 80).unwrap().value, want);
        }
    }

    #[test]
    fn umbral_coefficients_are_lacunary_hermite() {
        let fact = |r: u32| (1..=r).map(|k| k as f64).product::<f64>();
        for &(x, y) in &[(0.6, -0.2), (-1.1, 0.15), (0.0, 0.3)] {
            let c = lacunary_umbral_coefficients(x, y, 6).unwrap();
            for r in 0..=6u32 {
                let want = hermite2(3 * r, x, y);
                let got = fact(r) * c[r as usize];
                assert!((got - want).abs() <= 1e-10 * want.abs().max(1e-300), "r={r}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn umbral_route_matches_direct_term_by_term() {
        for &(x, y, t) in &[(1.0, -0.2, -0.1), (0.5, 0.2, 0.2), (-0.5, -0.1, 0.05)] {
            let d = lacunary_direct(x, y, t, 120).unwrap();
            let u = lacunary_umbral(x, y, t, 120).unwrap();
            // Near-equal neighbours at the flat minimum may pick the cut one
            // or two terms apart; those terms are far below the tolerance.
            assert!(d.terms_used.abs_diff(u.terms_used) <= 2, "{d:?} {u:?}");
            assert!((d.value - u.value).abs() < 1e-12 * d.value.abs(), "{d:?} {u:?}");
        }
    }

    #[test]
    fn smallest_term_index_grows_as_t_shrinks() {
        let a = lacunary_direct(0.5, 0.2, 0.2, 200).unwrap().terms_used;
        let b = lacunary_direct(0.5, 0.2, 0.05, 200).unwrap().terms_used;
        assert!(b > a && b >= 10, "{a} {b}");
    }

    #[test]
    fn factored_at_origin_keeps_every_third_term() {
        // H^{(3)}_{2r}(0, 0, t) = (2r)! t^{2r/3}/(2r/3)! when 3 | 2r.
        let (y, t) = (0.1, 0.1);
        let s = lacunary_factored(0.0, y, t, 40).unwrap();
        let mut want = 0.0;
        let mut prev = f64::INFINITY;
        let fact = |r: u32| (1..=r).map(|k| k as f64).product::<f64>();
        for r in (0..=40u32).step_by(3) {
            let term = y.powi(r as i32) / fact(r) * fact(2 * r) * t.powi((2 * r / 3) as i32) / fact(2 * r / 3);
            if term.abs() > prev && r > 0 {
                break;
            }
            want += term;
            prev = term.abs();
        }
        assert!((s.value - want).abs() < 1e-14);
    }
}
