//! Hermite polynomial families evaluated by explicit sums, plus the umbral
//! and multinomial routes that reproduce them.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numbers::hermite_number_f64;
use crate::series::{compensated_sum, ComplexSum, SeriesResult};
use crate::umbral::{Umbra, UmbralPoly};

/// Which Hermite family a value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyFamilyId {
    /// `H_n(x, y)`.
    TwoVar,
    /// `H_n^{(m)}(x, y)`.
    OrderM { m: u32 },
    /// `H_n^{(3)}(x, y, z)`.
    ThirdOrderThreeVar,
    /// `H_n^{m, m-1, …, 2}(x₁, …, x_m)`.
    MultiVar { m: u32 },
}

impl PolyFamilyId {
    pub fn validate(&self) -> Result<()> {
        match *self {
            PolyFamilyId::OrderM { m } | PolyFamilyId::MultiVar { m } if m < 2 => {
                Err(Error::InvalidOrder(m))
            }
            _ => Ok(()),
        }
    }

    /// Number of real arguments expected after `n`.
    pub fn arity(&self) -> usize {
        match *self {
            PolyFamilyId::TwoVar | PolyFamilyId::OrderM { .. } => 2,
            PolyFamilyId::ThirdOrderThreeVar => 3,
            PolyFamilyId::MultiVar { m } => m as usize,
        }
    }

    pub fn evaluate(&self, n: u32, args: &[f64]) -> Result<f64> {
        self.validate()?;
        if args.len() != self.arity() {
            return Err(Error::Domain(format!(
                "{self:?} takes {} arguments, got {}",
                self.arity(),
                args.len()
            )));
        }
        Ok(match *self {
            PolyFamilyId::TwoVar => hermite2(n, args[0], args[1]),
            PolyFamilyId::OrderM { m } => hermite_m(m, n, args[0], args[1])?,
            PolyFamilyId::ThirdOrderThreeVar => hermite3_3var(n, args[0], args[1], args[2]),
            PolyFamilyId::MultiVar { .. } => hermite_multivar(n, args)?,
        })
    }
}

/// `c_r = n!/(r!(n-mr)!)` for r = 0..=⌊n/m⌋, by a multiplicative recurrence.
pub(crate) fn lacunary_coefficients(m: u32, n: u32) -> Vec<f64> {
    let rmax = n / m;
    let mut out = Vec::with_capacity(rmax as usize + 1);
    let mut c = 1.0f64;
    out.push(c);
    for r in 1..=rmax {
        let top = n - m * (r - 1);
        for j in 0..m {
            c *= (top - j) as f64;
        }
        c /= r as f64;
        out.push(c);
    }
    out
}

/// `H_n(x, y) = n! Σ_r x^{n-2r} y^r / (r!(n-2r)!)`.
pub fn hermite2(n: u32, x: f64, y: f64) -> f64 {
    hermite_m_unchecked(2, n, x, y)
}

fn hermite_m_unchecked(m: u32, n: u32, x: f64, y: f64) -> f64 {
    let coef = lacunary_coefficients(m, n);
    compensated_sum(
        coef.iter()
            .enumerate()
            .map(|(r, c)| c * x.powi((n - m * r as u32) as i32) * y.powi(r as i32)),
    )
}

/// `H_n^{(m)}(x, y) = n! Σ_r x^{n-mr} y^r / (r!(n-mr)!)`.
pub fn hermite_m(m: u32, n: u32, x: f64, y: f64) -> Result<f64> {
    if m < 2 {
        return Err(Error::InvalidOrder(m));
    }
    Ok(hermite_m_unchecked(m, n, x, y))
}

/// Complex-argument `H_n(x, y)`.
pub fn hermite2_complex(n: u32, x: Complex64, y: Complex64) -> Complex64 {
    let coef = lacunary_coefficients(2, n);
    let mut sum = ComplexSum::new();
    for (r, c) in coef.iter().enumerate() {
        sum.add(x.powu(n - 2 * r as u32) * y.powu(r as u32) * *c);
    }
    sum.value()
}

/// `H_n^{(3)}(x, y, z) = n! Σ_r H_{n-3r}(x, y) z^r / ((n-3r)! r!)`.
pub fn hermite3_3var(n: u32, x: f64, y: f64, z: f64) -> f64 {
    let coef = lacunary_coefficients(3, n);
    compensated_sum(
        coef.iter()
            .enumerate()
            .map(|(r, c)| c * hermite2(n - 3 * r as u32, x, y) * z.powi(r as i32)),
    )
}

/// Non-lacunary multi-variable Hermite polynomial, evaluated by projecting
/// `(x₁ + Σ_{s=2}^{m} x_s^{1/s} ₛĥ)^n` over the product of vacua.
///
/// Each `x_s^{1/s} ₛĥ` is a weighted umbra, so negative `x_s` needs no real
/// root: only integer powers of `x_s` survive projection.
pub fn hermite_multivar(n: u32, xs: &[f64]) -> Result<f64> {
    if xs.is_empty() {
        return Err(Error::Domain("need at least x₁".into()));
    }
    let mut base = UmbralPoly::constant(xs[0]);
    for (i, &w) in xs.iter().enumerate().skip(1) {
        let s = i as u32 + 1;
        base = &base + &UmbralPoly::monomial(Umbra::scaled(s, w)?, 2, 1.0);
    }
    Ok(base.pow(n).project()?.re)
}

/// Umbral route to `H_n^{(m)}(x, y)`: projection of `(x + y^{1/m} ₘĥ)^n`.
pub fn hermite_m_umbral(m: u32, n: u32, x: f64, y: f64) -> Result<f64> {
    let base = UmbralPoly::binomial_base(x, m, y)?;
    Ok(base.pow(n).project()?.re)
}

/// Combinatorial route to `H_n^{(3)}(x, y, z)`: the full trinomial sum
/// `Σ n!/(k₁!k₂!k₃!) x^{k₁} (√y)^{k₂} h_{k₂} (∛z)^{k₃} ₃h_{k₃}` with real roots.
pub fn multinomial_expansion(n: u32, x: f64, y: f64, z: f64) -> Result<f64> {
    if y < 0.0 {
        return Err(Error::Domain(format!(
            "multinomial route takes √y and needs y ≥ 0, got {y}"
        )));
    }
    let sy = y.sqrt();
    let cz = z.cbrt();
    let h2: Vec<f64> = (0..=n).map(|k| hermite_number_f64(2, k)).collect::<Result<_>>()?;
    let h3: Vec<f64> = (0..=n).map(|k| hermite_number_f64(3, k)).collect::<Result<_>>()?;
    let mut terms = Vec::new();
    // n!/(k₁!k₂!k₃!) = C(n, k₁)·C(n-k₁, k₂).
    let mut c_n_k1 = 1.0f64;
    for k1 in 0..=n {
        if k1 > 0 {
            c_n_k1 = c_n_k1 * (n - k1 + 1) as f64 / k1 as f64;
        }
        let rest = n - k1;
        let mut c_rest_k2 = 1.0f64;
        for k2 in 0..=rest {
            if k2 > 0 {
                c_rest_k2 = c_rest_k2 * (rest - k2 + 1) as f64 / k2 as f64;
            }
            let k3 = rest - k2;
            let t = c_n_k1
                * c_rest_k2
                * x.powi(k1 as i32)
                * sy.powi(k2 as i32)
                * h2[k2 as usize]
                * cz.powi(k3 as i32)
                * h3[k3 as usize];
            terms.push(t);
        }
    }
    Ok(compensated_sum(terms))
}

/// `∂_x^n e^{x²} = H_n(2x, 1) e^{x²}`.
pub fn dgauss_poly(n: u32, x: f64) -> f64 {
    hermite2(n, 2.0 * x, 1.0) * (x * x).exp()
}

/// `∂_x^n e^{-x³} = H_n^{(3)}(-3x², -3x, -1) e^{-x³}`.
pub fn dcubic_poly(n: u32, x: f64) -> f64 {
    hermite3_3var(n, -3.0 * x * x, -3.0 * x, -1.0) * (-x * x * x).exp()
}

/// Which repeated-derivative series [`dseries`] sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeSeries {
    /// `∂^n e^{x²} = Σ_s h_{s+n} x^s / s!`.
    Gaussian,
    /// `∂^n e^{-x³} = (-1)^n Σ_s ₃h_{s+n} (-x)^s / s!`.
    NegativeCubic,
}

/// Truncated derivative series through s = N.
pub fn dseries(n: u32, x: f64, truncation: u32, kind: DerivativeSeries) -> Result<SeriesResult> {
    let (order, arg, outer) = match kind {
        DerivativeSeries::Gaussian => (2, x, 1.0),
        DerivativeSeries::NegativeCubic => (3, -x, if n % 2 == 0 { 1.0 } else { -1.0 }),
    };
    let mut terms = Vec::with_capacity(truncation as usize + 1);
    // x^s/s! by recurrence; h_{s+n} separately.
    let mut pow_over_fact = 1.0f64;
    for s in 0..=truncation {
        if s > 0 {
            pow_over_fact *= arg / s as f64;
        }
        let h = hermite_number_f64(order, s + n)?;
        let t = if h == 0.0 { 0.0 } else { h * pow_over_fact };
        terms.push(outer * t);
    }
    let last = terms.iter().rev().map(|t| t.abs()).find(|&m| m > 0.0).unwrap_or(0.0);
    Ok(SeriesResult::new(compensated_sum(terms.iter().copied()), terms.len(), last))
}
