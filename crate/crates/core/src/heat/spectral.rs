use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::{Evolution, EvolutionSpec, Field, Grid, Warning};
use crate::error::{Error, Result};

const ALIASING_LIMIT: f64 = 1e12;
const SUPPORT_LIMIT: f64 = 1e-12;

/// Signed wavenumbers in FFT bin order.
pub fn wavenumbers(grid: &Grid) -> Vec<f64> {
    let n = grid.n() as isize;
    let dk = 2.0 * PI / grid.length();
    (0..n)
        .map(|j| {
            let signed = if j < n / 2 { j } else { j - n };
            dk * signed as f64
        })
        .collect()
}

/// i^m.
fn i_pow(m: u32) -> Complex64 {
    match m % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// F̂(k) ← e^{sign·y·(ik)^m} F̂(k).
pub fn evolve_spectral(f: &Field, spec: &EvolutionSpec) -> Result<Evolution> {
    if spec.m < 2 {
        return Err(Error::InvalidOrder(spec.m));
    }
    if spec.is_ill_posed() && !spec.allow_ill_posed {
        return Err(Error::IllPosed {
            m: spec.m,
            signed_y: spec.sign.value() * spec.y,
        });
    }
    let mut warnings = Vec::new();
    let ratio = f.boundary_ratio();
    if ratio > SUPPORT_LIMIT {
        warnings.push(Warning::SupportLeak { boundary_ratio: ratio });
    }
    if spec.y == 0.0 {
        return Ok(Evolution {
            field: f.clone(),
            warnings,
        });
    }
    let grid = *f.grid();
    let k_nyquist = PI * grid.n() as f64 / grid.length();
    let growth = spec.growth_coefficient() * k_nyquist.powi(spec.m as i32);
    if growth > ALIASING_LIMIT.ln() {
        warnings.push(Warning::Aliasing {
            max_multiplier: growth.exp(),
        });
    }

    let n = grid.n();
    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(n);
    let inverse = planner.plan_fft_inverse(n);
    let mut buf = f.values().to_vec();
    forward.process(&mut buf);
    let coeff = i_pow(spec.m) * (spec.sign.value() * spec.y);
    for (v, k) in buf.iter_mut().zip(wavenumbers(&grid)) {
        if k != 0.0 {
            *v *= (coeff * k.powi(spec.m as i32)).exp();
        }
    }
    inverse.process(&mut buf);
    let scale = 1.0 / n as f64;
    for v in &mut buf {
        *v *= scale;
    }
    Ok(Evolution {
        field: Field::new(grid, buf)?,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heat::{gaussian_heat_closed_form, Sign};

    fn gaussian(grid: Grid) -> Field {
        Field::from_real_fn(grid, |x| (-x * x).exp())
    }

    #[test]
    fn wavenumber_layout() {
        let g = Grid::new(0.0, 2.0 * PI, 8).unwrap();
        assert_eq!(wavenumbers(&g), vec![0.0, 1.0, 2.0, 3.0, -4.0, -3.0, -2.0, -1.0]);
    }

    #[test]
    fn second_order_matches_closed_form() {
        let grid = Grid::new(-20.0, 20.0, 1024).unwrap();
        let spec = EvolutionSpec::new(2, 1.0, Sign::Plus).unwrap();
        let out = evolve_spectral(&gaussian(grid), &spec).unwrap();
        assert!(out.warnings.is_empty());
        let centre = out.field.values()[512];
        assert!((centre.re - 1.0 / 5f64.sqrt()).abs() < 1e-12);
        let exact = Field::from_real_fn(grid, |x| gaussian_heat_closed_form(x, 1.0));
        assert!(out.field.sup_distance(&exact).unwrap() < 1e-12);
    }

    #[test]
    fn zero_time_is_identity() {
        let grid = Grid::new(-10.0, 10.0, 256).unwrap();
        let f = gaussian(grid);
        let spec = EvolutionSpec::new(3, 0.0, Sign::Plus).unwrap();
        assert_eq!(evolve_spectral(&f, &spec).unwrap().field, f);
    }

    #[test]
    fn mean_is_preserved() {
        let grid = Grid::new(-10.0, 10.0, 256).unwrap();
        let f = Field::from_real_fn(grid, |x| (-(x - 1.0).powi(2)).exp() * (1.0 + x));
        for (m, y, sign) in [(2, 0.7, Sign::Plus), (3, 0.4, Sign::Minus), (4, 0.2, Sign::Minus), (6, 0.01, Sign::Plus)] {
            let spec = EvolutionSpec::new(m, y, sign).unwrap();
            let out = evolve_spectral(&f, &spec).unwrap().field;
            assert!((out.mean() - f.mean()).norm() < 1e-15, "m={m}");
        }
    }

    #[test]
    fn ill_posed_requires_opt_in() {
        let grid = Grid::new(-10.0, 10.0, 64).unwrap();
        let f = gaussian(grid);
        let spec = EvolutionSpec::new(4, 1.0, Sign::Plus).unwrap();
        assert_eq!(
            evolve_spectral(&f, &spec).unwrap_err(),
            Error::IllPosed { m: 4, signed_y: 1.0 }
        );
        let out = evolve_spectral(&f, &spec.allowing_ill_posed(true)).unwrap();
        assert!(out.warnings.iter().any(|w| matches!(w, Warning::Aliasing { .. })));
    }

    #[test]
    fn leaking_support_is_reported() {
        let grid = Grid::new(-2.0, 2.0, 64).unwrap();
        let f = gaussian(grid);
        let spec = EvolutionSpec::new(2, 0.1, Sign::Plus).unwrap();
        let out = evolve_spectral(&f, &spec).unwrap();
        assert!(matches!(out.warnings[0], Warning::SupportLeak { .. }));
    }

    #[test]
    fn semigroup() {
        let grid = Grid::new(-20.0, 20.0, 512).unwrap();
        let f = gaussian(grid);
        for (m, sign) in [(2, Sign::Plus), (3, Sign::Plus), (4, Sign::Minus)] {
            let a = EvolutionSpec::new(m, 0.1, sign).unwrap();
            let b = EvolutionSpec::new(m, 0.25, sign).unwrap();
            let ab = EvolutionSpec::new(m, 0.35, sign).unwrap();
            let two_step = evolve_spectral(&evolve_spectral(&f, &a).unwrap().field, &b).unwrap().field;
            let one_step = evolve_spectral(&f, &ab).unwrap().field;
            let d = two_step.sup_distance(&one_step).unwrap();
            assert!(d <= 1e-10 * one_step.max_abs(), "m={m}: {d}");
        }
    }
}
