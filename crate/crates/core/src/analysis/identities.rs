//! Integral and series identities that follow from projecting umbral
//! exponentials, each evaluated by two independent routes.

use std::f64::consts::{FRAC_2_SQRT_PI, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::analysis::airy::{airy, airy_pair, AIRY_ENVELOPE};
use crate::analysis::gamma::{gamma, ln_gamma};
use crate::analysis::quadrature::{composite_legendre, integrate, QuadratureSpec};
use crate::error::{Error, Result};
use crate::numbers::{hermite_number_f64, ln_hermite_number_fractional};
use crate::series::{ComplexSum, NeumaierSum, SeriesResult};

/// A quantity computed numerically and by its closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoRoute {
    pub numeric: f64,
    pub closed_form: f64,
}

impl TwoRoute {
    pub fn abs_error(&self) -> f64 {
        (self.numeric - self.closed_form).abs()
    }

    pub fn rel_error(&self) -> f64 {
        self.abs_error() / self.closed_form.abs()
    }
}

/// ∫₀^∞ e^{−x²} x^{ν−1} dx against Γ(ν/2)/2.
pub fn mellin_gaussian(nu: f64) -> Result<TwoRoute> {
    if !(nu > 0.0) || !nu.is_finite() {
        return Err(Error::Domain(format!("Mellin exponent must be positive, got {nu}")));
    }
    let q = integrate(
        |x: f64| (-x * x).exp() * x.powf(nu - 1.0),
        &QuadratureSpec::half_line(0.0).with_tol(1e-13),
    )?;
    Ok(TwoRoute {
        numeric: q.value,
        closed_form: gamma(nu / 2.0) / 2.0,
    })
}

/// ∫ e^{−x⁴} dx over ℝ against Γ(1/4)/2.
pub fn quartic_gaussian() -> Result<TwoRoute> {
    let q = integrate(|x: f64| (-(x * x) * (x * x)).exp(), &QuadratureSpec::real_line().with_tol(1e-13))?;
    Ok(TwoRoute {
        numeric: q.value,
        closed_form: gamma(0.25) / 2.0,
    })
}

/// log|c_r| for c_r = h_{r/2}/r!, `None` where h_{r/2} vanishes.
struct SuperGaussianCoefficients {
    ln_c: Vec<Option<f64>>,
}

impl SuperGaussianCoefficients {
    fn new(r_max: usize) -> Self {
        let ln_c = (0..=r_max)
            .map(|r| {
                ln_hermite_number_fractional(2, r as u32)
                    .expect("order 2 admits every half-integer index")
                    .map(|l| l - ln_gamma(r as f64 + 1.0))
            })
            .collect();
        Self { ln_c }
    }

    fn extend_to(&mut self, r_max: usize) {
        if r_max >= self.ln_c.len() {
            *self = Self::new((2 * self.ln_c.len()).max(r_max));
        }
    }

    /// Term r of the projected series at (α, x), including e^{−x²}.
    fn term(&self, r: usize, alpha: f64, x: f64) -> f64 {
        let Some(lc) = self.ln_c[r] else { return 0.0 };
        if r == 0 {
            return (lc - x * x).exp();
        }
        let ax = -alpha * x;
        if ax == 0.0 {
            return 0.0;
        }
        let mag = (r as f64 * ax.abs().ln() + lc - x * x).exp();
        if ax < 0.0 && r % 2 == 1 {
            -mag
        } else {
            mag
        }
    }

    /// log of the largest term over r at (α, x), ignoring vanishing ones.
    fn ln_peak(&mut self, alpha: f64, x: f64) -> f64 {
        let lax = (alpha * x).abs().ln();
        let mut best = f64::NEG_INFINITY;
        let mut r = 0;
        loop {
            self.extend_to(r);
            if let Some(lc) = self.ln_c[r] {
                let l = if r == 0 { lc } else { r as f64 * lax + lc };
                if l < best - 50.0 {
                    break;
                }
                best = best.max(l);
            }
            r += 1;
        }
        best - x * x
    }
}

/// The projected super-Gaussian integrand e^{−x²} Σ_{r≤N} (−αx)^r h_{r/2}/r!,
/// with h at half-integer index from the fractional extension.
pub fn super_gaussian_integrand(alpha: f64, x: f64, truncation: u32) -> SeriesResult {
    let coeffs = SuperGaussianCoefficients::new(truncation as usize);
    let mut sum = NeumaierSum::new();
    let mut last = 0.0;
    for r in 0..=truncation as usize {
        let t = coeffs.term(r, alpha, x);
        if t != 0.0 {
            last = t.abs();
        }
        sum.add(t);
    }
    SeriesResult::new(sum.value(), truncation as usize + 1, last)
}

/// Largest |α| accepted by [`super_gaussian_integral`].
pub const SUPER_GAUSSIAN_ALPHA_LIMIT: f64 = 3.5;
const SUPER_GAUSSIAN_TERM_BUDGET: usize = 20_000;

/// Sums the integrand series at x until the terms have fallen 40 e-folds
/// below the largest one.
fn super_gaussian_auto(coeffs: &mut SuperGaussianCoefficients, alpha: f64, x: f64) -> Result<f64> {
    let mut sum = NeumaierSum::new();
    let mut peak: f64 = 0.0;
    let mut quiet = 0;
    for r in 0..SUPER_GAUSSIAN_TERM_BUDGET {
        coeffs.extend_to(r);
        let t = coeffs.term(r, alpha, x);
        sum.add(t);
        if t == 0.0 {
            if alpha * x == 0.0 && r > 0 {
                return Ok(sum.value());
            }
            continue;
        }
        peak = peak.max(t.abs());
        if t.abs() < 4e-18 * peak {
            quiet += 1;
            if quiet >= 4 {
                return Ok(sum.value());
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::TruncationBudget(format!(
        "super-Gaussian series at alpha = {alpha}, x = {x} needs more than {SUPER_GAUSSIAN_TERM_BUDGET} terms"
    )))
}

/// The super-Gaussian integrand at each x, each series summed until its
/// terms are negligible.
pub fn super_gaussian_profile(alpha: f64, xs: &[f64]) -> Result<Vec<f64>> {
    if !alpha.is_finite() || alpha.abs() > SUPER_GAUSSIAN_ALPHA_LIMIT {
        return Err(Error::TruncationBudget(format!(
            "|alpha| = {} exceeds the practical limit {SUPER_GAUSSIAN_ALPHA_LIMIT}",
            alpha.abs()
        )));
    }
    let mut coeffs = SuperGaussianCoefficients::new(256);
    xs.iter().map(|&x| super_gaussian_auto(&mut coeffs, alpha, x)).collect()
}

/// Quadrature over ℝ of the projected super-Gaussian integrand against
/// √π e^{(α/2)⁴}. Agreement confirms that the half-integer Hermite numbers
/// contribute nothing net to the integral.
pub fn super_gaussian_integral(alpha: f64) -> Result<TwoRoute> {
    if !alpha.is_finite() || alpha.abs() > SUPER_GAUSSIAN_ALPHA_LIMIT {
        return Err(Error::TruncationBudget(format!(
            "|alpha| = {} exceeds the practical limit {SUPER_GAUSSIAN_ALPHA_LIMIT}",
            alpha.abs()
        )));
    }
    let closed = PI.sqrt() * (alpha / 2.0).powi(4).exp();
    let mut coeffs = SuperGaussianCoefficients::new(256);
    // Integrate where the largest term is still within e^{-50} of the result.
    let cutoff = closed.ln() - 50.0;
    let mut half_width = 4.0;
    while half_width < 60.0
        && (coeffs.ln_peak(alpha, half_width) > cutoff || coeffs.ln_peak(alpha, -half_width) > cutoff)
    {
        half_width += 0.5;
    }
    let mut failure = None;
    let q = integrate(
        |x: f64| match super_gaussian_auto(&mut coeffs, alpha, x) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        &QuadratureSpec::finite(-half_width, half_width).with_tol(1e-11),
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(TwoRoute {
        numeric: q.value,
        closed_form: closed,
    })
}

/// erf(x) = (2x/√π) Σ_{s≤N} h_s (ix)^s/(s+1)!.
pub fn erf_series(x: f64, truncation: u32) -> SeriesResult {
    let mut sum = ComplexSum::new();
    let mut last = 0.0;
    let ix = Complex64::new(0.0, x);
    let mut power = Complex64::new(1.0, 0.0);
    for s in 0..=truncation {
        if s > 0 {
            power *= ix;
        }
        let coeff = if s < 150 {
            hermite_number_f64(2, s).expect("order 2 is valid") / gamma(s as f64 + 2.0)
        } else {
            match ln_hermite_number_fractional(2, 2 * s).expect("order 2 is valid") {
                Some(ln_h) => (ln_h - ln_gamma(s as f64 + 2.0)).exp(),
                None => 0.0,
            }
        };
        if coeff == 0.0 {
            continue;
        }
        let term = power * coeff;
        last = term.norm() * FRAC_2_SQRT_PI * x.abs();
        sum.add(term);
    }
    let v = sum.value() * (FRAC_2_SQRT_PI * x);
    debug_assert!(v.im == 0.0, "odd Hermite numbers vanish, so the series is real");
    SeriesResult::new(v.re, truncation as usize + 1, last)
}

/// erf(x) by quadrature of (2/√π)∫₀ˣ e^{−t²} dt.
pub fn erf_quadrature(x: f64) -> Result<f64> {
    if x == 0.0 {
        return Ok(0.0);
    }
    let q = integrate(|t: f64| (-t * t).exp(), &QuadratureSpec::finite(0.0, x.abs()).with_tol(1e-14))?;
    Ok(x.signum() * FRAC_2_SQRT_PI * q.value)
}

/// Lower cut of the Airy integrals; the remainder beyond it is added from
/// the integration-by-parts expansion.
const AIRY_LOWER_CUT: f64 = 40.0;
const AIRY_PANEL: f64 = 0.25;
const AIRY_ORDER: usize = 10;

/// ∫_{−∞}^{−T} Ai(t) dt from the repeated integration by parts
/// J_p = Ai'(−T)(−T)^{−p−1} + (p+1)Ai(−T)(−T)^{−p−2} + (p+1)(p+2)J_{p+3},
/// J_p = ∫_{−∞}^{−T} Ai(t) t^{−p} dt.
fn airy_left_tail(cut: f64) -> Result<f64> {
    let (a, ap) = airy_pair(-cut)?;
    let levels = 12;
    let mut j = 0.0;
    for level in (0..levels).rev() {
        let p = 3.0 * level as f64;
        let s = -cut;
        j = ap * s.powf(-p - 1.0) + (p + 1.0) * a * s.powf(-p - 2.0) + (p + 1.0) * (p + 2.0) * j;
    }
    Ok(j)
}

/// ∫ Ai(t) dt over ℝ, which equals 1.
pub fn integral_of_airy() -> Result<TwoRoute> {
    let upper = 16.0;
    let body: f64 = composite_legendre(-AIRY_LOWER_CUT, upper, AIRY_PANEL, AIRY_ORDER)
        .into_iter()
        .map(|(t, w)| airy(t).map(|a| w * a))
        .sum::<Result<f64>>()?;
    Ok(TwoRoute {
        numeric: body + airy_left_tail(AIRY_LOWER_CUT)?,
        closed_form: 1.0,
    })
}

/// ∫ Ai(t) e^{zt} dt against e^{z³/3}, with z = ∛(3λ)·x.
///
/// The integral converges for z ≥ 0 only; z = 0 reduces to
/// [`integral_of_airy`]. On the left the integrand is cut where the
/// e^{zt} damping bounds the remainder by e^{−zT}T^{−1/4}/(√π z).
pub fn airy_exp_identity(lambda: f64, x: f64) -> Result<TwoRoute> {
    if !(lambda > 0.0) || !lambda.is_finite() || !x.is_finite() {
        return Err(Error::Domain(format!("need lambda > 0 and finite x, got ({lambda}, {x})")));
    }
    let z = (3.0 * lambda).cbrt() * x;
    if z < 0.0 {
        return Err(Error::Domain(format!(
            "the Airy-exponential integral diverges for z = cbrt(3 lambda) x = {z} < 0"
        )));
    }
    let closed = (z * z * z / 3.0).exp();
    if z == 0.0 {
        let r = integral_of_airy()?;
        return Ok(TwoRoute {
            numeric: r.numeric,
            closed_form: closed,
        });
    }
    // Right: past the peak at t = z², the exponent zt − (2/3)t^{3/2} has
    // fallen 40 below its maximum z³/3.
    let mut upper = (z * z).max(1.0);
    while z * upper - 2.0 / 3.0 * upper.powf(1.5) > z * z * z / 3.0 - 40.0 {
        upper += 0.5;
    }
    let lower = (40.0 / z + 5.0).min(AIRY_ENVELOPE);
    let tail_bound = (-z * lower).exp() * lower.powf(-0.25) / (PI.sqrt() * z);
    if tail_bound > 1e-12 * closed {
        return Err(Error::NonConvergence {
            estimate: tail_bound,
            tolerance: 1e-12 * closed,
            levels: 0,
        });
    }
    if upper > AIRY_ENVELOPE {
        return Err(Error::AiryEnvelope(upper));
    }
    let panel = AIRY_PANEL.min(3.0 / lower.sqrt());
    let mut sum = NeumaierSum::new();
    for (t, w) in composite_legendre(-lower, upper, panel, AIRY_ORDER) {
        sum.add(w * airy(t)? * (z * t).exp());
    }
    Ok(TwoRoute {
        numeric: sum.value(),
        closed_form: closed,
    })
}

/// Ai(0) from (1/π)∫₀^∞ cos(ζ³/3) dζ with the contour rotated onto the ray
/// where ζ³ is imaginary: (1/π)cos(π/6)∫₀^∞ e^{−s³/3} ds, against the
/// closed form 3^{−2/3}/Γ(2/3).
pub fn airy_origin_from_integral() -> Result<TwoRoute> {
    let q = integrate(|s: f64| (-s * s * s / 3.0).exp(), &QuadratureSpec::half_line(0.0).with_tol(1e-14))?;
    Ok(TwoRoute {
        numeric: (PI / 6.0).cos() * q.value / PI,
        closed_form: 3f64.powf(-2.0 / 3.0) / gamma(2.0 / 3.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_matches_fixed_truncation() {
        let xs = [-2.0, -0.5, 0.0, 1.5];
        let p = super_gaussian_profile(2.9, &xs).unwrap();
        for (x, v) in xs.iter().zip(p) {
            let s = super_gaussian_integrand(2.9, *x, 400).value;
            assert!((v - s).abs() <= 1e-12 * s.abs().max(1.0), "x={x}: {v} vs {s}");
        }
        assert!(super_gaussian_profile(4.0, &xs).is_err());
    }
    use crate::analysis::airy::ai_at_zero;

    #[test]
    fn mellin_examples() {
        assert!((mellin_gaussian(2.0).unwrap().numeric - 0.5).abs() < 1e-12);
        assert!((mellin_gaussian(1.0).unwrap().numeric - PI.sqrt() / 2.0).abs() < 1e-12);
        let r = mellin_gaussian(0.5).unwrap();
        assert!((r.closed_form - 1.812_804_954_1).abs() < 1e-9);
        assert!(r.rel_error() < 1e-10, "{r:?}");
        assert!(mellin_gaussian(0.0).is_err());
        assert!(mellin_gaussian(-1.0).is_err());
    }

    #[test]
    fn quartic_matches_half_line_substitution() {
        let r = quartic_gaussian().unwrap();
        assert!(r.rel_error() < 1e-12);
        // u = x⁴ turns the half-line integral into Γ(1/4)/4.
        let half = integrate(|x: f64| (-x.powi(4)).exp(), &QuadratureSpec::half_line(0.0)).unwrap();
        assert!((2.0 * half.value - r.closed_form).abs() < 1e-12);
    }

    #[test]
    fn super_gaussian_integrand_trivia() {
        for &x in &[-1.5, 0.0, 0.7] {
            let s = super_gaussian_integrand(0.0, x, 30);
            assert!((s.value - (-x * x).exp()).abs() < 1e-16);
        }
        assert_eq!(super_gaussian_integrand(3.0, 0.0, 30).value, 1.0);
    }

    #[test]
    fn super_gaussian_series_matches_direct_numbers() {
        use crate::numbers::hermite_number_fractional;
        let (alpha, x) = (2.0_f64, -0.8_f64);
        let mut direct = 0.0;
        for r in 0..=40u32 {
            direct += (-alpha * x).powi(r as i32) * hermite_number_fractional(2, r).unwrap() / gamma(r as f64 + 1.0);
        }
        direct *= (-x * x).exp();
        let s = super_gaussian_integrand(alpha, x, 40);
        assert!((s.value - direct).abs() < 1e-12 * direct.abs());
    }

    #[test]
    fn super_gaussian_closed_forms() {
        let r = super_gaussian_integral(0.0).unwrap();
        assert!((r.closed_form - PI.sqrt()).abs() < 1e-15);
        let r = super_gaussian_integral(2.0).unwrap();
        assert!((r.closed_form - PI.sqrt() * std::f64::consts::E).abs() < 1e-12);
        assert!(r.rel_error() < 1e-6, "{r:?}");
        assert!(matches!(super_gaussian_integral(4.0), Err(Error::TruncationBudget(_))));
    }

    #[test]
    fn erf_examples() {
        assert_eq!(erf_series(0.0, 60).value, 0.0);
        assert!((erf_series(1.0, 60).value - 0.842_700_792_949_714_9).abs() < 1e-10);
        assert_eq!(erf_series(-1.3, 60).value, -erf_series(1.3, 60).value);
        assert!((erf_quadrature(1.0).unwrap() - 0.842_700_792_949_714_9).abs() < 1e-14);
        assert_eq!(erf_quadrature(-0.4).unwrap(), -erf_quadrature(0.4).unwrap());
        // Long truncations switch to log-space coefficients without overflow.
        assert!((erf_series(0.5, 400).value - erf_quadrature(0.5).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn airy_integrals() {
        let r = integral_of_airy().unwrap();
        assert!(r.abs_error() < 1e-10, "{r:?}");
        let r = airy_exp_identity(1.0 / 3.0, 1.0).unwrap();
        assert!((r.closed_form - (1.0f64 / 3.0).exp()).abs() < 1e-15);
        assert!(r.rel_error() < 1e-10, "{r:?}");
        let r = airy_exp_identity(1.0, 0.5).unwrap();
        assert!((r.closed_form - 0.125f64.exp()).abs() < 1e-15);
        assert!(r.rel_error() < 1e-10, "{r:?}");
        let r = airy_exp_identity(2.0, 0.0).unwrap();
        assert!(r.abs_error() < 1e-10);
        assert!(airy_exp_identity(1.0, -0.5).is_err());
        assert!(airy_exp_identity(0.0, 0.5).is_err());
    }

    #[test]
    fn airy_origin_cross_check() {
        let r = airy_origin_from_integral().unwrap();
        assert!(r.rel_error() < 1e-12, "{r:?}");
        assert!((r.closed_form - ai_at_zero()).abs() < 1e-16);
    }
}
