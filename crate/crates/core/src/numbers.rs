//! Hermite numbers of order m.
//!
//! The order-m Hermite number is `h(m, r) = r! / (r/m)!` when m divides r
//! and zero otherwise. Integer indices are computed exactly with big
//! integers; the circular-function closed forms are used only to extend
//! orders 2 and 3 to half-integer indices.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::analysis::gamma::{cos_pi, gamma, ln_gamma};
use crate::error::{Error, Result};

fn check_order(m: u32) -> Result<()> {
    if m < 2 {
        Err(Error::InvalidOrder(m))
    } else {
        Ok(())
    }
}

/// Exact `r!/(r/m)!` when `m | r`, else 0.
pub fn hermite_number(m: u32, r: u32) -> Result<BigUint> {
    check_order(m)?;
    if r % m != 0 {
        return Ok(BigUint::zero());
    }
    let k = r / m;
    let mut acc = BigUint::one();
    for j in (k + 1)..=r {
        acc *= j;
    }
    Ok(acc)
}

const CACHE_MAX_ORDER: u32 = 8;
const CACHE_MAX_INDEX: u32 = 400;

fn cached_f64(m: u32) -> &'static [f64] {
    static CACHE: [OnceLock<Vec<f64>>; CACHE_MAX_ORDER as usize + 1] =
        [const { OnceLock::new() }; CACHE_MAX_ORDER as usize + 1];
    CACHE[m as usize].get_or_init(|| {
        (0..=CACHE_MAX_INDEX)
            .map(|r| hermite_number_f64_uncached(m, r))
            .collect()
    })
}

fn hermite_number_f64_uncached(m: u32, r: u32) -> f64 {
    if r % m != 0 {
        return 0.0;
    }
    let k = r / m;
    if r <= 170 {
        let mut acc = BigUint::one();
        for j in (k + 1)..=r {
            acc *= j;
        }
        return acc.to_f64().unwrap_or(f64::INFINITY);
    }
    (ln_gamma(r as f64 + 1.0) - ln_gamma(k as f64 + 1.0)).exp()
}

/// `h(m, r)` as the nearest f64 (∞ when it exceeds the f64 range).
pub fn hermite_number_f64(m: u32, r: u32) -> Result<f64> {
    check_order(m)?;
    if m <= CACHE_MAX_ORDER && r <= CACHE_MAX_INDEX {
        return Ok(cached_f64(m)[r as usize]);
    }
    Ok(hermite_number_f64_uncached(m, r))
}

/// Hermite number at index `halves / 2`.
///
/// Integer indices defer to the exact route. Half-integer indices use the
/// circular-function forms
///
/// * m = 2: `Γ(ρ+1)/Γ(ρ/2+1) · |cos(ρπ/2)|`
/// * m = 3: `Γ(ρ+1)/Γ(ρ/3+1) · [2|cos(ρπ/3)| − |cos(ρπ)|]` (experimental)
///
/// and are rejected for m ≥ 4.
pub fn hermite_number_fractional(m: u32, halves: u32) -> Result<f64> {
    check_order(m)?;
    if halves % 2 == 0 {
        return hermite_number_f64(m, halves / 2);
    }
    let rho = halves as f64 / 2.0;
    let selector = match m {
        2 => cos_pi(rho / 2.0).abs(),
        3 => 2.0 * (rho * PI / 3.0).cos().abs() - cos_pi(rho).abs(),
        _ => return Err(Error::UnsupportedFractionalIndex { order: m, halves }),
    };
    let mf = m as f64;
    if rho > 150.0 {
        let ln = ln_gamma(rho + 1.0) - ln_gamma(rho / mf + 1.0);
        return Ok(ln.exp() * selector);
    }
    Ok(gamma(rho + 1.0) / gamma(rho / mf + 1.0) * selector)
}

/// `ln h(m, halves/2)` via log-gamma, `None` where the number vanishes.
/// Same support and branches as [`hermite_number_fractional`], usable far
/// past the f64 range of the number itself.
pub fn ln_hermite_number_fractional(m: u32, halves: u32) -> Result<Option<f64>> {
    check_order(m)?;
    let mf = m as f64;
    let rho = halves as f64 / 2.0;
    if halves % 2 == 0 {
        let r = halves / 2;
        if r % m != 0 {
            return Ok(None);
        }
        return Ok(Some(ln_gamma(rho + 1.0) - ln_gamma(rho / mf + 1.0)));
    }
    let selector = match m {
        2 => cos_pi(rho / 2.0).abs(),
        3 => 2.0 * (rho * PI / 3.0).cos().abs() - cos_pi(rho).abs(),
        _ => return Err(Error::UnsupportedFractionalIndex { order: m, halves }),
    };
    if selector <= 0.0 {
        return Ok(None);
    }
    Ok(Some(ln_gamma(rho + 1.0) - ln_gamma(rho / mf + 1.0) + selector.ln()))
}

/// Exact table of order-m Hermite numbers for r = 0..=r_max.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteNumberTable {
    order: u32,
    values: Vec<BigUint>,
}

impl HermiteNumberTable {
    /// Builds the table with the multiplicative recurrence
    /// `h(km) = h((k-1)m) · ((k-1)m+1)···(km) / k`.
    pub fn build(m: u32, r_max: u32) -> Result<Self> {
        check_order(m)?;
        let mut values = vec![BigUint::zero(); r_max as usize + 1];
        values[0] = BigUint::one();
        let mut k = 1u32;
        while k * m <= r_max {
            let mut next = values[((k - 1) * m) as usize].clone();
            for j in ((k - 1) * m + 1)..=(k * m) {
                next *= j;
            }
            next /= k;
            values[(k * m) as usize] = next;
            k += 1;
        }
        Ok(Self { order: m, values })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn r_max(&self) -> u32 {
        self.values.len() as u32 - 1
    }

    pub fn get(&self, r: u32) -> Option<&BigUint> {
        self.values.get(r as usize)
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }
}

pub fn build_table(m: u32, r_max: u32) -> Result<HermiteNumberTable> {
    HermiteNumberTable::build(m, r_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn factorial(n: u32) -> BigUint {
        (1..=n).fold(BigUint::one(), |a, k| a * k)
    }

    #[test]
    fn listed_values() {
        assert_eq!(hermite_number(2, 4).unwrap(), big(12));
        assert_eq!(hermite_number(3, 9).unwrap(), big(60480));
        assert_eq!(hermite_number(4, 8).unwrap(), big(20160));
        assert_eq!(hermite_number(3, 5).unwrap(), big(0));
        for m in 2..7 {
            assert_eq!(hermite_number(m, 0).unwrap(), big(1));
        }
    }

    #[test]
    fn order_three_at_twelve_is_not_the_rounded_listing() {
        // 12!/4! = 19958400; indices 10 and 11 are zero.
        assert_eq!(hermite_number(3, 10).unwrap(), big(0));
        assert_eq!(hermite_number(3, 11).unwrap(), big(0));
        assert_eq!(hermite_number(3, 12).unwrap(), big(19_958_400));
    }

    #[test]
    fn rejects_small_order() {
        assert_eq!(hermite_number(1, 3), Err(Error::InvalidOrder(1)));
        assert!(build_table(0, 3).is_err());
        assert!(hermite_number_fractional(1, 1).is_err());
    }

    #[test]
    fn table_examples() {
        let t = build_table(2, 6).unwrap();
        let expect: Vec<BigUint> = [1u64, 0, 2, 0, 12, 0, 120].iter().map(|&v| big(v)).collect();
        assert_eq!(t.values(), &expect[..]);

        let t = build_table(4, 12).unwrap();
        // 12!/3! computed independently.
        assert_eq!(t.get(12).unwrap(), &(factorial(12) / factorial(3)));
        assert_eq!(t.get(12).unwrap(), &big(79_833_600));

        let t = build_table(3, 2).unwrap();
        assert_eq!(t.values(), &[big(1), big(0), big(0)]);
    }

    #[test]
    fn factorial_identity_and_zero_pattern() {
        for m in 2..=5u32 {
            for k in 0..=12u32 {
                let h = hermite_number(m, k * m).unwrap();
                assert_eq!(h * factorial(k), factorial(k * m));
            }
            for r in 1..=40u32 {
                let h = hermite_number(m, r).unwrap();
                assert_eq!(h.is_zero(), r % m != 0, "m={m} r={r}");
            }
        }
    }

    #[test]
    fn table_matches_direct() {
        for m in 2..=6 {
            let t = build_table(m, 60).unwrap();
            for r in 0..=60 {
                assert_eq!(t.get(r).unwrap(), &hermite_number(m, r).unwrap());
            }
        }
    }

    #[test]
    fn fractional_half() {
        // Γ(3/2)/Γ(5/4)·cos(π/4) from reference gamma values.
        let expect = 0.886_226_925_452_758 / 0.906_402_477_055_477 * std::f64::consts::FRAC_1_SQRT_2;
        let got = hermite_number_fractional(2, 1).unwrap();
        assert!((got - expect).abs() < 1e-14, "{got} vs {expect}");
        assert!((got - 0.69136).abs() < 1e-5);
        assert_eq!(hermite_number_fractional(2, 2).unwrap(), 0.0);
        assert_eq!(hermite_number_fractional(2, 8).unwrap(), 12.0);
    }

    #[test]
    fn gamma_route_matches_exact_route() {
        // Circular form evaluated through Γ at integer r against the exact values.
        for r in 0..=20u32 {
            let rf = r as f64;
            let via_gamma = gamma(rf + 1.0) / gamma(rf / 2.0 + 1.0) * cos_pi(rf / 2.0).abs();
            let exact = hermite_number(2, r).unwrap().to_f64().unwrap();
            if exact == 0.0 {
                assert!(via_gamma.abs() < 1e-12);
            } else {
                assert!(((via_gamma - exact) / exact).abs() < 1e-12, "r={r}");
            }
        }
    }

    #[test]
    fn order_three_bracket_agrees_at_integers() {
        for r in 0..=18u32 {
            let rf = r as f64;
            let bracket = 2.0 * (rf * PI / 3.0).cos().abs() - cos_pi(rf).abs();
            let magnitude = gamma(rf + 1.0) / gamma(rf / 3.0 + 1.0);
            let via = magnitude * bracket;
            let exact = hermite_number_f64(3, r).unwrap();
            assert!((via - exact).abs() <= 1e-13 * magnitude, "r={r}: {via} vs {exact}");
        }
    }

    #[test]
    fn fractional_rejected_for_high_order() {
        assert_eq!(
            hermite_number_fractional(4, 3),
            Err(Error::UnsupportedFractionalIndex { order: 4, halves: 3 })
        );
        assert_eq!(hermite_number_fractional(4, 8).unwrap(), 24.0);
    }

    #[test]
    fn log_route_matches_direct() {
        for halves in 0..60u32 {
            let direct = hermite_number_fractional(2, halves).unwrap();
            match ln_hermite_number_fractional(2, halves).unwrap() {
                None => assert!(direct.abs() < 1e-12),
                Some(l) => assert!(((l.exp() - direct) / direct).abs() < 1e-12, "halves={halves}"),
            }
        }
        assert!(ln_hermite_number_fractional(5, 3).is_err());
        assert_eq!(ln_hermite_number_fractional(5, 6).unwrap(), None);
    }

    #[test]
    fn f64_route_beyond_factorial_range() {
        let v = hermite_number_f64(2, 200).unwrap();
        let exact = hermite_number(2, 200).unwrap().to_f64().unwrap();
        assert!(((v - exact) / exact).abs() < 1e-12);
    }
}
