//! Fourier–Gabor transform with a Gaussian window,
//! G(τ, ω) = ∫ x(t) e^{−π(t−τ)² − iωt} dt, directly and as a series in
//! two-variable Hermite polynomials of the signal's shifted moments.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analysis::quadrature::{integrate, QuadratureSpec};
use crate::error::{Error, Result};
use crate::series::{ComplexSum, NeumaierSum, SeriesResult};

/// Uniformly sampled real signal, zero outside the sampled span.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledSignal {
    start: f64,
    spacing: f64,
    values: Vec<f64>,
}

impl SampledSignal {
    pub fn new(start: f64, spacing: f64, values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidGrid("a sampled signal needs at least two nodes".into()));
        }
        if !(spacing > 0.0) || !spacing.is_finite() || !start.is_finite() {
            return Err(Error::InvalidGrid(format!("bad sampling start {start} / spacing {spacing}")));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(*v));
        }
        Ok(Self { start, spacing, values })
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Trapezoid rule for ∫ x(t) f(t) dt over the sampled span.
    fn trapezoid<T>(&self, mut f: impl FnMut(f64) -> T) -> T
    where
        T: std::ops::Mul<f64, Output = T> + std::ops::Add<Output = T> + Default,
    {
        let last = self.values.len() - 1;
        let mut acc = T::default();
        for (i, &v) in self.values.iter().enumerate() {
            let w = if i == 0 || i == last { 0.5 } else { 1.0 };
            acc = acc + f(self.start + i as f64 * self.spacing) * (v * w * self.spacing);
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Signal {
    Zero,
    /// A e^{−((t−c)/w)²}.
    Gaussian { amplitude: f64, center: f64, width: f64 },
    Sampled(SampledSignal),
}

impl Signal {
    pub fn gaussian(amplitude: f64, center: f64, width: f64) -> Result<Self> {
        if !(width > 0.0) || !amplitude.is_finite() || !center.is_finite() || !width.is_finite() {
            return Err(Error::Domain(format!("bad Gaussian signal ({amplitude}, {center}, {width})")));
        }
        Ok(Signal::Gaussian {
            amplitude,
            center,
            width,
        })
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Signal::Zero => 0.0,
            Signal::Gaussian {
                amplitude,
                center,
                width,
            } => {
                let u = (t - center) / width;
                amplitude * (-u * u).exp()
            }
            Signal::Sampled(s) => {
                let pos = (t - s.start) / s.spacing;
                if pos < 0.0 || pos > (s.values.len() - 1) as f64 {
                    return 0.0;
                }
                let i = (pos.floor() as usize).min(s.values.len() - 2);
                let f = pos - i as f64;
                s.values[i] * (1.0 - f) + s.values[i + 1] * f
            }
        }
    }

    /// ∫ x(t) (t − τ)^n dt for n = 0..=order.
    pub fn shifted_moments(&self, tau: f64, order: u32) -> Result<Vec<f64>> {
        let moments: Vec<f64> = match self {
            Signal::Zero => vec![0.0; order as usize + 1],
            Signal::Gaussian {
                amplitude,
                center,
                width,
            } => {
                // A w √π H_n(c − τ, w²/4), by the Gaussian average of (d + wu)^n.
                let d = center - tau;
                let y = width * width / 4.0;
                let scale = amplitude * width * PI.sqrt();
                let mut out = Vec::with_capacity(order as usize + 1);
                let (mut prev, mut cur) = (0.0, 1.0);
                for n in 0..=order {
                    out.push(scale * cur);
                    // H_{n+1} = x H_n + 2 n y H_{n−1}
                    let next = d * cur + 2.0 * n as f64 * y * prev;
                    prev = cur;
                    cur = next;
                }
                out
            }
            Signal::Sampled(s) => (0..=order)
                .map(|n| s.trapezoid(|t| (t - tau).powi(n as i32)))
                .collect(),
        };
        if let Some(n) = moments.iter().position(|m| !m.is_finite()) {
            return Err(Error::Domain(format!("signal moment of order {n} diverges")));
        }
        Ok(moments)
    }
}

fn window(t: f64, tau: f64, omega: f64) -> Complex64 {
    let s = t - tau;
    Complex64::from_polar((-PI * s * s).exp(), -omega * t)
}

/// G(τ, ω) by direct integration.
pub fn gabor_direct(sig: &Signal, tau: f64, omega: f64) -> Result<Complex64> {
    match sig {
        Signal::Zero => Ok(Complex64::new(0.0, 0.0)),
        Signal::Gaussian { .. } => {
            let q = integrate(
                |t: f64| window(t, tau, omega) * sig.eval(t),
                &QuadratureSpec::real_line().with_tol(1e-13),
            )?;
            Ok(q.value)
        }
        Signal::Sampled(s) => Ok(s.trapezoid(|t| window(t, tau, omega))),
    }
}

/// H_n(x, y)/n! = Σ_r x^{n−2r} y^r / ((n−2r)! r!), free of factorial overflow.
fn hermite2_over_factorial(n: u32, x: f64, y: f64) -> f64 {
    let n = n as usize;
    let mut xs = Vec::with_capacity(n + 1);
    let mut a = 1.0;
    for j in 0..=n {
        if j > 0 {
            a *= x / j as f64;
        }
        xs.push(a);
    }
    let mut sum = NeumaierSum::new();
    let mut b = 1.0;
    for r in 0..=n / 2 {
        if r > 0 {
            b *= y / r as f64;
        }
        sum.add(xs[n - 2 * r] * b);
    }
    sum.value()
}

/// G(τ, ω) ≈ e^{−iωτ} Σ_{n≤N} (−i)^n H_n(ω, π)/n! · ∫ x(t)(t−τ)^n dt.
///
/// The window's Taylor coefficients decay like π^{n/2}/(n/2)!, so the
/// series converges only when the signal's moments grow slower; for a
/// Gaussian signal of width w that needs w² < 1/π. At fixed N the error
/// also grows quickly with the distance between τ and the signal.
pub fn gabor_series(sig: &Signal, tau: f64, omega: f64, truncation: u32) -> Result<SeriesResult<Complex64>> {
    let moments = sig.shifted_moments(tau, truncation)?;
    let mut sum = ComplexSum::new();
    let mut last = 0.0;
    let mut phase = Complex64::new(1.0, 0.0);
    let minus_i = Complex64::new(0.0, -1.0);
    for (n, m) in moments.iter().enumerate() {
        if n > 0 {
            phase *= minus_i;
        }
        let term = phase * (hermite2_over_factorial(n as u32, omega, PI) * m);
        if term.norm() > 0.0 {
            last = term.norm();
        }
        sum.add(term);
    }
    let value = Complex64::from_polar(1.0, -omega * tau) * sum.value();
    Ok(SeriesResult::new(value, truncation as usize + 1, last))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomials::hermite2;

    /// Completed square for A e^{−((t−c)/w)²} under the window.
    fn closed_form(amplitude: f64, center: f64, width: f64, tau: f64, omega: f64) -> Complex64 {
        let a = 1.0 / (width * width) + PI;
        let b = Complex64::new(2.0 * center / (width * width) + 2.0 * PI * tau, -omega);
        let c = -center * center / (width * width) - PI * tau * tau;
        (b * b / (4.0 * a) + c).exp() * (PI / a).sqrt() * amplitude
    }

    #[test]
    fn direct_matches_completed_square() {
        let sig = Signal::gaussian(1.0, 0.0, 1.0).unwrap();
        let g = gabor_direct(&sig, 0.0, 0.0).unwrap();
        assert!((g - Complex64::new((PI / (1.0 + PI)).sqrt(), 0.0)).norm() < 1e-13);
        for &(tau, omega) in &[(0.0, 1.0), (0.7, -1.3), (-1.0, 2.0)] {
            let g = gabor_direct(&sig, tau, omega).unwrap();
            assert!((g - closed_form(1.0, 0.0, 1.0, tau, omega)).norm() < 1e-13);
        }
        let sig = Signal::gaussian(2.0, 0.3, 0.25).unwrap();
        let g = gabor_direct(&sig, 0.5, 1.0).unwrap();
        assert!((g - closed_form(2.0, 0.3, 0.25, 0.5, 1.0)).norm() < 1e-13);
    }

    #[test]
    fn zero_signal() {
        assert_eq!(gabor_direct(&Signal::Zero, 0.3, 1.0).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(gabor_series(&Signal::Zero, 0.3, 1.0, 20).unwrap().value, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn zeroth_term_is_the_signal_integral() {
        let sig = Signal::gaussian(1.5, 0.2, 0.8).unwrap();
        let s = gabor_series(&sig, 0.0, 0.0, 0).unwrap();
        assert!((s.value.re - 1.5 * 0.8 * PI.sqrt()).abs() < 1e-14);
        assert_eq!(s.value.im, 0.0);
    }

    #[test]
    fn gaussian_moments_match_quadrature() {
        let sig = Signal::gaussian(1.0, 0.4, 0.7).unwrap();
        let m = sig.shifted_moments(-0.3, 8).unwrap();
        for (n, mn) in m.iter().enumerate() {
            let q = integrate(|t: f64| sig.eval(t) * (t + 0.3).powi(n as i32), &QuadratureSpec::real_line()).unwrap();
            assert!((mn - q.value).abs() < 1e-12 * q.l1_norm.max(1.0), "n={n}");
        }
    }

    #[test]
    fn coefficient_helper() {
        for n in 0..20 {
            let f: f64 = (1..=n).map(|k| k as f64).product();
            let want = hermite2(n, 1.3, PI) / f;
            assert!((hermite2_over_factorial(n, 1.3, PI) - want).abs() < 1e-13 * want.abs().max(1.0));
        }
    }

    #[test]
    fn series_converges_for_narrow_signal() {
        // The window's expansion about τ must reach the signal's support:
        // terms behave like (π s²)^k/k! with s the distance from τ.
        let sig = Signal::gaussian(1.0, 0.5, 0.25).unwrap();
        for &(tau, omega) in &[(0.0, 0.0), (0.5, 1.0), (1.0, 0.5), (0.0, 2.0)] {
            let direct = gabor_direct(&sig, tau, omega).unwrap();
            let mut prev = f64::INFINITY;
            for n in [10, 20, 40] {
                let err = (gabor_series(&sig, tau, omega, n).unwrap().value - direct).norm();
                assert!(err < prev || err < 1e-14, "tau={tau} omega={omega} N={n}: {err}");
                prev = err;
            }
            assert!(prev < 1e-6, "tau={tau} omega={omega}: {prev}");
        }
    }

    #[test]
    fn sampled_signal() {
        assert!(SampledSignal::new(0.0, 0.1, vec![1.0]).is_err());
        assert!(SampledSignal::new(0.0, 0.0, vec![1.0, 2.0]).is_err());
        let h = 0.01;
        let values: Vec<f64> = (0..=1200).map(|i| (-(((-6.0 + i as f64 * h) / 0.25).powi(2))).exp()).collect();
        let sig = Signal::Sampled(SampledSignal::new(-6.0, h, values).unwrap());
        let want = closed_form(1.0, 0.0, 0.25, 0.4, 1.2);
        assert!((gabor_direct(&sig, 0.4, 1.2).unwrap() - want).norm() < 1e-12);
        assert!((gabor_series(&sig, 0.4, 1.2, 40).unwrap().value - want).norm() < 1e-6);
    }
}
