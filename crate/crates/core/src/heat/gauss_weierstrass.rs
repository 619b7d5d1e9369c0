//! Closed forms and Gauss–Weierstrass representations.
//!
//! e^{y∂⁴} = e^{(√y ĥ ∂²)} after projection with order-2 Hermite numbers, so
//! F(x, y) = (1/√π) ∫ e^{−ζ²} f(x − 2 y^{1/4} ĥ^{1/2} ζ) dζ. Odd ζ-moments
//! vanish and only whole powers of ĥ remain.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analysis::quadrature::{integrate, QuadratureSpec};
use crate::error::{Error, Result};
use crate::polynomials::{hermite2_complex, hermite_m};
use crate::umbral::{Umbra, UmbralPoly};

/// e^{y∂²} e^{−x²} = (1+4y)^{−1/2} e^{−x²/(1+4y)}, valid for y > −1/4.
pub fn gaussian_heat_closed_form(x: f64, y: f64) -> f64 {
    let d = 1.0 + 4.0 * y;
    (-x * x / d).exp() / d.sqrt()
}

/// Solution of ∂_y F = ∂_x^m F with F(x, 0) = x^n: the heat polynomial.
pub fn evolve_monomial(m: u32, n: u32, x: f64, y: f64) -> Result<f64> {
    hermite_m(m, n, x, y)
}

/// Initial data for the quartic evolution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Profile {
    /// Σ_j c_j x^j.
    Polynomial(Vec<f64>),
    /// (Σ_j c_j x^j) e^{−a x²}, a > 0.
    PolyGaussian { coeffs: Vec<f64>, a: f64 },
}

impl Profile {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Profile::Polynomial(c) => horner(c, x),
            Profile::PolyGaussian { coeffs, a } => horner(coeffs, x) * (-a * x * x).exp(),
        }
    }
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &cj| acc * x + cj)
}

fn degree(c: &[f64]) -> usize {
    c.iter().rposition(|&v| v != 0.0).unwrap_or(0)
}

/// Taylor coefficients of p(x + u) in u.
fn taylor_shift(c: &[f64], x: f64) -> Vec<f64> {
    let mut b = c.to_vec();
    let n = b.len();
    for k in 0..n {
        for j in (k..n - 1).rev() {
            b[j] += x * b[j + 1];
        }
    }
    b
}

/// F(·, y) = e^{y∂⁴} f, evaluated pointwise.
#[derive(Debug, Clone, PartialEq)]
pub struct QuarticEvolution {
    profile: Profile,
    y: f64,
}

/// Prepares e^{y∂⁴} f.
///
/// Polynomial data is evolved exactly through the umbral Taylor route and
/// must have degree ≤ N. Gaussian-damped data uses the ζ-integral with the
/// closed form of e^{s∂²}[x^n e^{−ax²}] inside; that needs y ≤ 0, since for
/// y > 0 the equation runs backwards in the dissipative direction.
pub fn evolve_gw_quartic(profile: &Profile, y: f64, truncation: u32) -> Result<QuarticEvolution> {
    if !y.is_finite() {
        return Err(Error::NonFinite(y));
    }
    match profile {
        Profile::Polynomial(c) => {
            if c.is_empty() {
                return Err(Error::Domain("empty polynomial".into()));
            }
            let d = degree(c);
            if d > truncation as usize {
                return Err(Error::TruncationBudget(format!(
                    "polynomial of degree {d} needs truncation ≥ {d}, got {truncation}"
                )));
            }
        }
        Profile::PolyGaussian { coeffs, a } => {
            if coeffs.is_empty() || !(*a > 0.0) {
                return Err(Error::Domain(format!("need coefficients and a > 0, got a = {a}")));
            }
            if y > 0.0 {
                return Err(Error::IllPosed { m: 4, signed_y: y });
            }
        }
    }
    Ok(QuarticEvolution {
        profile: profile.clone(),
        y,
    })
}

impl QuarticEvolution {
    pub fn at(&self, x: f64) -> Result<f64> {
        if self.y == 0.0 {
            return Ok(self.profile.eval(x));
        }
        match &self.profile {
            Profile::Polynomial(c) => self.polynomial_at(c, x),
            Profile::PolyGaussian { coeffs, a } => self.poly_gaussian_at(coeffs, *a, x),
        }
    }

    /// Σ_{j} f^{(2j)}(x)/(2j)! · 4^j (2j)!/(4^j j!) · (√y ĥ)^j, projected.
    fn polynomial_at(&self, c: &[f64], x: f64) -> Result<f64> {
        let b = taylor_shift(c, x);
        let u = Umbra::scaled(2, self.y)?;
        let mut p = UmbralPoly::zero();
        let mut ratio = 1.0; // (2j)!/j!
        for j in 0..=(b.len() - 1) / 2 {
            if j > 0 {
                ratio *= (2 * j) as f64 * (2 * j - 1) as f64 / j as f64;
            }
            p = &p + &UmbralPoly::monomial(u, 2 * j as u32, b[2 * j] * ratio);
        }
        Ok(p.project()?.re)
    }

    /// (1/√π) ∫ e^{−ζ²} e^{2σζ∂²}f dζ, σ = i√|y|.
    fn poly_gaussian_at(&self, c: &[f64], a: f64, x: f64) -> Result<f64> {
        let sigma = Complex64::new(0.0, (-self.y).sqrt());
        let integrand = |zeta: f64| -> Complex64 {
            let s = sigma * (2.0 * zeta);
            let d = 1.0 + s * (4.0 * a);
            let alpha = -(a * x * x) / d;
            let beta = Complex64::new(x, 0.0) / d;
            let gamma = s / d;
            let mut poly = Complex64::new(0.0, 0.0);
            for (n, &cn) in c.iter().enumerate() {
                if cn != 0.0 {
                    poly += hermite2_complex(n as u32, beta, gamma) * cn;
                }
            }
            (-zeta * zeta + alpha).exp() / d.sqrt() * poly
        };
        let q = integrate(integrand, &QuadratureSpec::real_line().with_tol(1e-13))?;
        Ok(q.value.re / PI.sqrt())
    }
}
