//! e^{y∂³} g(x) = ∫ Ai(t) g(x + ∛(3y) t) dt.
//!
//! With s = x + c t, c = ∛(3y), this is (1/|c|) ∫ Ai((s − x)/c) g(s) ds over
//! the support of g, so no part of the Airy weight is discarded where g is
//! non-negligible. On the decaying side the kernel is cut at t = 40
//! (Ai(40) ≈ e^{−168}).

use num_complex::Complex64;
use rayon::prelude::*;

use super::{Field, PADDING_FRACTION};
use crate::analysis::airy::{airy, AIRY_ENVELOPE};
use crate::analysis::quadrature::gauss_legendre;
use crate::error::{Error, Result};

const DECAY_CUT: f64 = 40.0;
const SUPPORT_THRESHOLD: f64 = 1e-16;
const PANEL_ORDER: usize = 10;

/// Panel width in t: half a local Airy wavelength on the oscillatory side,
/// and no wider than a quarter unit in s.
fn panel_width(t: f64, c: f64) -> f64 {
    let osc = if t < -1.0 { 3.0 / (-t).sqrt() } else { 0.25 };
    osc.min(0.25).min(0.25 / c.abs())
}

pub fn evolve_airy(f: &Field, y: f64) -> Result<Field> {
    if y == 0.0 || !y.is_finite() {
        return Err(Error::Domain(format!("the Airy route needs finite non-zero y, got {y}")));
    }
    let grid = *f.grid();
    let c = (3.0 * y).cbrt();
    let max = f.max_abs();
    let support: Vec<usize> = (0..grid.n())
        .filter(|&i| f.values()[i].norm() > SUPPORT_THRESHOLD * max)
        .collect();
    let (Some(&first), Some(&last)) = (support.first(), support.last()) else {
        return Ok(f.clone());
    };
    // Two cells beyond the support so the interpolation stencil decays too.
    let pad = PADDING_FRACTION * grid.length();
    let s_lo = (grid.x(first) - 2.0 * grid.spacing()).max(grid.x_min() - pad);
    let s_hi = (grid.x(last) + 2.0 * grid.spacing()).min(grid.x_max() + pad);
    let rule = gauss_legendre(PANEL_ORDER);

    let values = (0..grid.n())
        .into_par_iter()
        .map(|i| {
            let x = grid.x(i);
            // t = (s − x)/c over the support, cut on the decaying side.
            let (ta, tb) = {
                let (a, b) = ((s_lo - x) / c, (s_hi - x) / c);
                (a.min(b), a.max(b).min(DECAY_CUT))
            };
            if ta >= tb {
                return Ok(Complex64::new(0.0, 0.0));
            }
            if ta < -AIRY_ENVELOPE {
                return Err(Error::AiryEnvelope(ta));
            }
            let mut acc = Complex64::new(0.0, 0.0);
            let mut lo = ta;
            while lo < tb {
                let w = panel_width(lo, c).min(panel_width((lo + 0.25).min(tb), c));
                let hi = (lo + w).min(tb);
                let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
                for &(u, wu) in &rule {
                    let t = mid + half * u;
                    acc += f.interpolate(x + c * t)? * (airy(t)? * wu * half);
                }
                lo = hi;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    Field::new(grid, values)
}
