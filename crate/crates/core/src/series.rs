//! Truncated-series bookkeeping and compensated accumulation.

use num_complex::Complex64;
use serde::Serialize;

/// Value of a truncated series together with what is needed to audit the
/// truncation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesResult<T = f64> {
    pub value: T,
    /// Number of terms summed (always at least one).
    pub terms_used: usize,
    /// Magnitude of the last retained non-zero term.
    pub last_term: f64,
}

impl<T> SeriesResult<T> {
    pub fn new(value: T, terms_used: usize, last_term: f64) -> Self {
        debug_assert!(terms_used >= 1);
        debug_assert!(last_term >= 0.0);
        Self {
            value,
            terms_used,
            last_term,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> SeriesResult<U> {
        SeriesResult {
            value: f(self.value),
            terms_used: self.terms_used,
            last_term: self.last_term,
        }
    }
}

/// Neumaier (improved Kahan–Babuška) running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl Extend<f64> for NeumaierSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

/// Compensated sum of a complex sequence, real and imaginary parts
/// accumulated separately.
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum {
    re: NeumaierSum,
    im: NeumaierSum,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    let mut s = NeumaierSum::new();
    s.extend(iter);
    s.value()
}

/// Sums a sequence of terms as an asymptotic series: stops just after the
/// smallest-magnitude non-zero term. Exactly-zero terms (lacunary gaps) are
/// added but never chosen as the truncation point. At most `max_terms` are
/// inspected; a non-finite term also ends the scan.
pub fn sum_to_smallest_term<I>(terms: I, max_terms: usize) -> SeriesResult<f64>
where
    I: IntoIterator<Item = f64>,
{
    let mut best_idx: Option<usize> = None;
    let mut best_mag = f64::INFINITY;
    let mut collected = Vec::new();
    for (i, t) in terms.into_iter().take(max_terms.max(1)).enumerate() {
        if !t.is_finite() {
            break;
        }
        collected.push(t);
        let mag = t.abs();
        if mag != 0.0 && mag < best_mag {
            best_mag = mag;
            best_idx = Some(i);
        }
        // Past the minimum and clearly growing: nothing smaller is coming
        // before overflow becomes a risk.
        if let Some(b) = best_idx {
            if i > b + 8 && mag > 1e6 * best_mag {
                break;
            }
        }
    }
    match best_idx {
        Some(b) => {
            // Trailing exact zeros after the minimum cost nothing; keep the
            // cut at the minimum itself.
            let value = compensated_sum(collected[..=b].iter().copied());
            SeriesResult::new(value, b + 1, best_mag)
        }
        None => {
            let n = collected.len().max(1);
            SeriesResult::new(compensated_sum(collected), n, 0.0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_recovers_cancelled_bits() {
        let v = compensated_sum([1.0, 1e100, 1.0, -1e100]);
        assert_eq!(v, 2.0);
    }

    #[test]
    fn smallest_term_cut_on_divergent_series() {
        // Σ (-1)^k k! x^k at x = 0.1: smallest term near k = 10.
        let x: f64 = 0.1;
        let mut fact = 1.0;
        let terms = (0..60).map(|k| {
            if k > 0 {
                fact *= k as f64;
            }
            (-x).powi(k) * fact
        });
        let r = sum_to_smallest_term(terms, 60);
        assert!(r.terms_used >= 10 && r.terms_used <= 12, "{r:?}");
        assert!(r.last_term < 1e-3);
    }

    #[test]
    fn zero_terms_are_skipped_as_cut_points() {
        let r = sum_to_smallest_term([1.0, 0.0, 0.5, 0.0, 0.25, 0.0, 0.5, 4.0], 8);
        assert_eq!(r.value, 1.75);
        assert_eq!(r.last_term, 0.25);
        assert_eq!(r.terms_used, 5);
    }
}
