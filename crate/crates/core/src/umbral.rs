//! Finite umbral-polynomial algebra.
//!
//! An [`UmbralPoly`] is a finite linear combination of products of umbral
//! symbols. Each symbol is an [`Umbra`]: the order-m operator `ₘĥ`, optionally
//! carrying a real weight `w` so that the symbol stands for `w^{1/m}·ₘĥ`.
//! Exponents are stored as counts of halves, which is enough for `ĥ^{1/2}`.
//!
//! [`UmbralPoly::project`] applies the vacuum: every factor `ₘĥ^ρ` becomes the
//! Hermite number `h(m, ρ)`. Umbrae of different order have independent vacua,
//! so their factors project separately and multiply. Weighted symbols of the
//! same order share one vacuum: `(w₁^{1/m}ĥ)^a (w₂^{1/m}ĥ)^b` projects to
//! `w₁^{a/m} w₂^{b/m} h(m, a+b)`. Because `h(m, r)` vanishes unless `m | r`, a
//! single weighted symbol only ever contributes integer powers of its weight,
//! which is how negative weights (e.g. `√y` with `y < 0`) stay real.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numbers::hermite_number_fractional;
use crate::series::{ComplexSum, SeriesResult};

/// An umbral symbol `w^{1/m}·ₘĥ`.
#[derive(Debug, Clone, Copy)]
pub struct Umbra {
    order: u32,
    weight: f64,
}

impl Umbra {
    /// The bare operator `ₘĥ`.
    pub fn new(order: u32) -> Result<Self> {
        Self::scaled(order, 1.0)
    }

    /// The weighted symbol `weight^{1/order}·ₘĥ`.
    pub fn scaled(order: u32, weight: f64) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidOrder(order));
        }
        if !weight.is_finite() {
            return Err(Error::Domain(format!("umbra weight must be finite, got {weight}")));
        }
        // Fold -0.0 into 0.0 so keys compare equal.
        let weight = if weight == 0.0 { 0.0 } else { weight };
        Ok(Self { order, weight })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    fn key(&self) -> (u32, u64) {
        (self.order, self.weight.to_bits())
    }
}

impl PartialEq for Umbra {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Umbra {}

impl PartialOrd for Umbra {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Umbra {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

/// Product of umbral factors, sorted by umbra, exponents in halves (all > 0).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(Umbra, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn single(u: Umbra, halves: u32) -> Self {
        if halves == 0 {
            Self::one()
        } else {
            Self(vec![(u, halves)])
        }
    }

    pub fn factors(&self) -> &[(Umbra, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Self(out)
    }

    /// Projected value of this monomial against the product of vacua.
    pub fn project(&self) -> Result<f64> {
        let mut value = 1.0;
        let mut idx = 0;
        while idx < self.0.len() {
            let order = self.0[idx].0.order;
            let end = self.0[idx..]
                .iter()
                .position(|(u, _)| u.order != order)
                .map_or(self.0.len(), |p| idx + p);
            let group = &self.0[idx..end];
            value *= project_group(order, group)?;
            if value == 0.0 {
                return Ok(0.0);
            }
            idx = end;
        }
        Ok(value)
    }
}

fn project_group(order: u32, group: &[(Umbra, u32)]) -> Result<f64> {
    let halves: u32 = group.iter().map(|(_, h)| h).sum();
    let h = hermite_number_fractional(order, halves)?;
    if h == 0.0 {
        return Ok(0.0);
    }
    // Weight factor Π w^{halves/(2m)}.
    let denom = 2 * order;
    let mut factor = 1.0;
    if let Some(&(u, hv)) = group
        .iter()
        .find(|(u, hv)| u.weight < 0.0 && hv % denom != 0)
    {
        return Err(Error::NegativeWeightRoot { weight: u.weight, halves: hv });
    }
    for &(u, hv) in group {
        if u.weight == 1.0 {
            continue;
        }
        if hv % denom == 0 {
            factor *= u.weight.powi((hv / denom) as i32);
        } else {
            factor *= u.weight.powf(hv as f64 / denom as f64);
        }
    }
    Ok(h * factor)
}

/// Finite linear combination of umbral monomials with complex coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct UmbralPoly {
    terms: BTreeMap<Monomial, Complex64>,
}

impl UmbralPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: impl Into<Complex64>) -> Self {
        let mut p = Self::zero();
        p.insert(Monomial::one(), c.into());
        p
    }

    /// `coeff · u^{halves/2}`.
    pub fn monomial(u: Umbra, halves: u32, coeff: impl Into<Complex64>) -> Self {
        let mut p = Self::zero();
        p.insert(Monomial::single(u, halves), coeff.into());
        p
    }

    /// `x + w^{1/m}·ₘĥ`, the Newton-binomial base.
    pub fn binomial_base(x: f64, order: u32, weight: f64) -> Result<Self> {
        let u = Umbra::scaled(order, weight)?;
        Ok(Self::constant(x) + Self::monomial(u, 2, 1.0))
    }

    fn insert(&mut self, key: Monomial, c: Complex64) {
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = *o.get() + c;
                // Drop exact cancellations only.
                if s == Complex64::new(0.0, 0.0) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: &Monomial) -> Complex64 {
        self.terms.get(key).copied().unwrap_or_default()
    }

    pub fn scale(&self, s: impl Into<Complex64>) -> Self {
        let s = s.into();
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.insert(k.clone(), c * s);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Applies the vacuum to every term and sums with compensation.
    pub fn project(&self) -> Result<Complex64> {
        let mut sum = ComplexSum::new();
        for (k, c) in &self.terms {
            let v = k.project()?;
            if v != 0.0 {
                sum.add(c * v);
            }
        }
        Ok(sum.value())
    }
}

impl Add for &UmbralPoly {
    type Output = UmbralPoly;
    fn add(self, rhs: &UmbralPoly) -> UmbralPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert(k.clone(), *c);
        }
        out
    }
}

impl Add for UmbralPoly {
    type Output = UmbralPoly;
    fn add(self, rhs: UmbralPoly) -> UmbralPoly {
        &self + &rhs
    }
}

impl Neg for &UmbralPoly {
    type Output = UmbralPoly;
    fn neg(self) -> UmbralPoly {
        self.scale(-1.0)
    }
}

impl Sub for &UmbralPoly {
    type Output = UmbralPoly;
    fn sub(self, rhs: &UmbralPoly) -> UmbralPoly {
        self + &(-rhs)
    }
}

impl Mul for &UmbralPoly {
    type Output = UmbralPoly;
    fn mul(self, rhs: &UmbralPoly) -> UmbralPoly {
        let mut out = UmbralPoly::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                out.insert(ka.mul(kb), ca * cb);
            }
        }
        out
    }
}

impl Mul for UmbralPoly {
    type Output = UmbralPoly;
    fn mul(self, rhs: UmbralPoly) -> UmbralPoly {
        &self * &rhs
    }
}

pub fn monomial(u: Umbra, halves: u32, coeff: impl Into<Complex64>) -> UmbralPoly {
    UmbralPoly::monomial(u, halves, coeff)
}

pub fn project(p: &UmbralPoly) -> Result<Complex64> {
    p.project()
}

/// `Σ_{k=0}^{N} p^k / k!`. Truncation error is the caller's concern.
pub fn umbral_exp(p: &UmbralPoly, truncation: u32) -> UmbralPoly {
    let mut term = UmbralPoly::one();
    let mut acc = UmbralPoly::one();
    for k in 1..=truncation {
        term = (&term * p).scale(1.0 / k as f64);
        acc = &acc + &term;
    }
    acc
}

/// Projected values of the individual terms `p^k/k!`, k = 0..=N.
pub fn exp_series_terms(p: &UmbralPoly, truncation: u32) -> Result<Vec<Complex64>> {
    let mut out = Vec::with_capacity(truncation as usize + 1);
    let mut term = UmbralPoly::one();
    out.push(term.project()?);
    for k in 1..=truncation {
        term = (&term * p).scale(1.0 / k as f64);
        out.push(term.project()?);
    }
    Ok(out)
}

/// Projection of the truncated exponential with its truncation audit; the
/// last-term field is the magnitude of the last non-vanishing projected
/// `p^k/k!`.
pub fn project_exp(p: &UmbralPoly, truncation: u32) -> Result<SeriesResult<Complex64>> {
    let terms = exp_series_terms(p, truncation)?;
    let mut sum = ComplexSum::new();
    for t in &terms {
        sum.add(*t);
    }
    let last = terms.iter().rev().map(|t| t.norm()).find(|&m| m > 0.0).unwrap_or(0.0);
    Ok(SeriesResult::new(sum.value(), terms.len(), last))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h(order: u32) -> Umbra {
        Umbra::new(order).unwrap()
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn monomials() {
        let p = monomial(h(2), 2, 3.0);
        assert_eq!(p.len(), 1);
        assert_eq!(p.coefficient(&Monomial::single(h(2), 2)), c(3.0));
        let q = monomial(h(3), 6, 1.0);
        assert_eq!(q.project().unwrap(), c(6.0));
        let r = monomial(h(2), 1, 1.0);
        assert!((r.project().unwrap().re - 0.69136).abs() < 1e-5);
    }

    #[test]
    fn binomial_square() {
        let base = UmbralPoly::binomial_base(1.0, 2, 1.0).unwrap();
        let sq = base.pow(2);
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.coefficient(&Monomial::one()), c(1.0));
        assert_eq!(sq.coefficient(&Monomial::single(h(2), 2)), c(2.0));
        assert_eq!(sq.coefficient(&Monomial::single(h(2), 4)), c(1.0));
    }

    #[test]
    fn mixed_key_and_zero_power() {
        let p = &monomial(h(2), 2, 1.0) * &monomial(h(3), 2, 1.0);
        let (k, _) = p.terms().next().unwrap();
        assert_eq!(k.factors(), &[(h(2), 2), (h(3), 2)]);
        assert_eq!(p.pow(0), UmbralPoly::one());
    }

    #[test]
    fn projections() {
        // (x + √y ĥ)² at x = 2, y = 3 projects to H₂(2, 3) = 4 + 6.
        let base = UmbralPoly::binomial_base(2.0, 2, 3.0).unwrap();
        let v = base.pow(2).project().unwrap();
        assert!((v.re - 10.0).abs() < 1e-14 && v.im == 0.0);

        let listed = [1.0, 0.0, 2.0, 0.0, 12.0, 0.0, 120.0, 0.0, 1680.0];
        for (r, want) in listed.iter().enumerate() {
            let v = monomial(h(2), 2 * r as u32, 1.0).project().unwrap();
            assert_eq!(v, c(*want));
        }
        assert_eq!(UmbralPoly::constant(2.5).project().unwrap(), c(2.5));
    }

    #[test]
    fn negative_weight_stays_real() {
        // (x + √y ĥ)^4 at y = -1: H₄(x, -1) = x⁴ - 12x² + 12.
        let x = 1.5;
        let base = UmbralPoly::binomial_base(x, 2, -1.0).unwrap();
        let v = base.pow(4).project().unwrap();
        let want = x.powi(4) - 12.0 * x * x + 12.0;
        assert!((v.re - want).abs() < 1e-13 && v.im == 0.0);
    }

    #[test]
    fn negative_weight_at_fractional_index_is_rejected() {
        let u = Umbra::scaled(2, -1.0).unwrap();
        let p = monomial(u, 1, 1.0);
        assert!(matches!(p.project(), Err(Error::NegativeWeightRoot { .. })));
    }

    #[test]
    fn unsupported_fractional_order() {
        let p = monomial(h(4), 1, 1.0);
        assert!(matches!(
            p.project(),
            Err(Error::UnsupportedFractionalIndex { order: 4, .. })
        ));
    }

    #[test]
    fn exponential_examples() {
        let zero = UmbralPoly::zero();
        assert_eq!(umbral_exp(&zero, 7), UmbralPoly::one());

        // e^{iĥx} at x = 1 is e^{-1}.
        let p = monomial(h(2), 2, Complex64::new(0.0, 1.0));
        let v = umbral_exp(&p, 40).project().unwrap();
        assert!((v.re - (-1.0f64).exp()).abs() < 1e-12 && v.im.abs() < 1e-15);

        // e^{iĥx²} at x = 1 is e^{-x⁴} = e^{-1}.
        let x: f64 = 1.0;
        let p = monomial(h(2), 2, Complex64::new(0.0, x * x));
        let v = umbral_exp(&p, 40).project().unwrap();
        assert!((v.re - (-x.powi(4)).exp()).abs() < 1e-12);
    }

    #[test]
    fn gaussian_within_last_term() {
        for i in 0..=40 {
            let x = -2.0 + 0.1 * i as f64;
            let p = monomial(h(2), 2, Complex64::new(0.0, x));
            let s = project_exp(&p, 60).unwrap();
            let err = (s.value - c((-x * x).exp())).norm();
            // Truncation is bounded by the last term; rounding in an
            // alternating sum is bounded by a few ulps of Σ|terms| = e^{x²}.
            let rounding = 4.0 * f64::EPSILON * (x * x).exp();
            assert!(err <= s.last_term + rounding, "x={x}: {err} > {}", s.last_term);
        }
    }

    fn small_poly() -> impl Strategy<Value = UmbralPoly> {
        prop::collection::vec((2u32..5, 0u32..7, -4i32..5), 1..5).prop_map(|ts| {
            ts.into_iter().fold(UmbralPoly::zero(), |acc, (o, hv, cf)| {
                acc + monomial(Umbra::new(o).unwrap(), hv, cf as f64)
            })
        })
    }

    proptest! {
        #[test]
        fn ring_laws_exact_on_integer_coefficients(a in small_poly(), b in small_poly(), cc in small_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &cc, &a + &(&b + &cc));
            prop_assert_eq!(&(&a * &b) * &cc, &a * &(&b * &cc));
            prop_assert_eq!(&a * &(&b + &cc), &(&a * &b) + &(&a * &cc));
            for (_, v) in (&a * &b).terms() {
                prop_assert!(*v != Complex64::new(0.0, 0.0));
            }
        }

        #[test]
        fn projection_is_linear(
            xs in prop::collection::vec((0u32..9, -3.0f64..3.0), 1..6),
            ys in prop::collection::vec((0u32..9, -3.0f64..3.0), 1..6),
            alpha in -2.0f64..2.0, beta in -2.0f64..2.0,
        ) {
            let build = |v: &[(u32, f64)]| v.iter().fold(UmbralPoly::zero(), |acc, &(hv, cf)| {
                acc + monomial(h(2), 2 * hv, cf) + monomial(h(3), 2 * hv, cf * 0.5)
            });
            let a = build(&xs);
            let b = build(&ys);
            let lhs = (&a.scale(alpha) + &b.scale(beta)).project().unwrap();
            let rhs = a.project().unwrap() * alpha + b.project().unwrap() * beta;
            let scale = lhs.norm().max(rhs.norm()).max(1.0);
            prop_assert!((lhs - rhs).norm() <= 1e-13 * scale);
        }

        #[test]
        fn disjoint_umbrae_factorize(
            xs in prop::collection::vec((0u32..7, -3.0f64..3.0), 1..5),
            ys in prop::collection::vec((0u32..7, -3.0f64..3.0), 1..5),
        ) {
            let a = xs.iter().fold(UmbralPoly::zero(), |acc, &(hv, cf)| acc + monomial(h(2), 2 * hv, cf));
            let b = ys.iter().fold(UmbralPoly::zero(), |acc, &(hv, cf)| acc + monomial(h(3), 2 * hv, cf));
            let lhs = (&a * &b).project().unwrap();
            let rhs = a.project().unwrap() * b.project().unwrap();
            let scale = lhs.norm().max(rhs.norm()).max(1.0);
            prop_assert!((lhs - rhs).norm() <= 1e-13 * scale);
        }
    }
}
