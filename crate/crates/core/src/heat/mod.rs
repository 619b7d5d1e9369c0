//! Solvers for the higher-order heat equation ∂_y F = ±∂_x^m F.
//!
//! Frequencies follow the signed DFT layout: on a grid of n nodes over
//! [x_min, x_max) the j-th FFT bin carries k_j = 2π j'/(x_max − x_min) with
//! j' = j for j < n/2 and j' = j − n otherwise (the Nyquist bin is negative).

mod airy_route;
mod gauss_weierstrass;
mod spectral;

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use airy_route::evolve_airy;
pub use gauss_weierstrass::{evolve_gw_quartic, evolve_monomial, gaussian_heat_closed_form, Profile, QuarticEvolution};
pub use spectral::{evolve_spectral, wavenumbers};

/// Uniform periodic grid: nodes x_i = x_min + i·(x_max − x_min)/n, i < n.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    x_min: f64,
    x_max: f64,
    n: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if !x_min.is_finite() || !x_max.is_finite() || !(x_max > x_min) {
            return Err(Error::InvalidGrid(format!("need x_min < x_max, got [{x_min}, {x_max}]")));
        }
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::InvalidGrid(format!("node count {n} must be a power of two ≥ 8")));
        }
        Ok(Self { x_min, x_max, n })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn spacing(&self) -> f64 {
        self.length() / self.n as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.spacing()
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|i| self.x(i))
    }
}

/// Complex samples of a function on a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    grid: Grid,
    values: Vec<Complex64>,
}

/// Fraction of the grid length read as zero beyond either end when
/// interpolating.
pub const PADDING_FRACTION: f64 = 0.25;

impl Field {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n {
            return Err(Error::InvalidGrid(format!(
                "{} values for a grid of {} nodes",
                values.len(),
                grid.n
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> Complex64) -> Self {
        let values = grid.nodes().map(f).collect();
        Self { grid, values }
    }

    pub fn from_real_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Self {
        Self::from_fn(grid, |x| Complex64::new(f(x), 0.0))
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn mean(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() / self.values.len() as f64
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// max_i |self_i − other_i|; the grids must coincide.
    pub fn sup_distance(&self, other: &Field) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::InvalidGrid("fields live on different grids".into()));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Largest endpoint magnitude relative to the field maximum.
    pub fn boundary_ratio(&self) -> f64 {
        let max = self.max_abs();
        if max == 0.0 {
            return 0.0;
        }
        let edge = self.values[0].norm().max(self.values[self.grid.n - 1].norm());
        edge / max
    }

    fn sample(&self, i: isize) -> Complex64 {
        if i < 0 || i as usize >= self.grid.n {
            Complex64::new(0.0, 0.0)
        } else {
            self.values[i as usize]
        }
    }

    /// Four-point Lagrange interpolation, with the field read as zero off
    /// the grid up to the padding margin.
    pub fn interpolate(&self, x: f64) -> Result<Complex64> {
        let pad = PADDING_FRACTION * self.grid.length();
        if !(x >= self.grid.x_min - pad && x <= self.grid.x_max + pad) {
            return Err(Error::InterpolationRange(x));
        }
        let pos = (x - self.grid.x_min) / self.grid.spacing();
        let i = pos.floor();
        let u = pos - i;
        let i = i as isize;
        let (pm, p0, p1, p2) = (self.sample(i - 1), self.sample(i), self.sample(i + 1), self.sample(i + 2));
        let w_m = -u * (u - 1.0) * (u - 2.0) / 6.0;
        let w_0 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
        let w_1 = -(u + 1.0) * u * (u - 2.0) / 2.0;
        let w_2 = (u + 1.0) * u * (u - 1.0) / 6.0;
        Ok(pm * w_m + p0 * w_0 + p1 * w_1 + p2 * w_2)
    }
}

/// Sign in front of ∂_x^m.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// ∂_y F = sign · ∂_x^m F, advanced by y.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvolutionSpec {
    pub m: u32,
    pub y: f64,
    pub sign: Sign,
    /// Permits directions in which some Fourier modes grow.
    pub allow_ill_posed: bool,
}

impl EvolutionSpec {
    pub fn new(m: u32, y: f64, sign: Sign) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidOrder(m));
        }
        if !y.is_finite() {
            return Err(Error::NonFinite(y));
        }
        Ok(Self {
            m,
            y,
            sign,
            allow_ill_posed: false,
        })
    }

    pub fn allowing_ill_posed(mut self, allow: bool) -> Self {
        self.allow_ill_posed = allow;
        self
    }

    /// Coefficient c with Re(sign·y·(ik)^m) = c·k^m; positive means growth.
    pub fn growth_coefficient(&self) -> f64 {
        let re_i_pow = match self.m % 4 {
            0 => 1.0,
            2 => -1.0,
            _ => 0.0,
        };
        self.sign.value() * self.y * re_i_pow
    }

    pub fn is_ill_posed(&self) -> bool {
        self.growth_coefficient() > 0.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Warning {
    /// Band-edge multiplier magnitude; values above 1e12 amplify rounding
    /// noise into the result.
    Aliasing { max_multiplier: f64 },
    /// The input does not vanish at the grid ends, so the periodic
    /// extension differs from the function on the line.
    SupportLeak { boundary_ratio: f64 },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::Aliasing { max_multiplier } => {
                write!(f, "band-edge multiplier {max_multiplier:e} exceeds 1e12; high modes are noise-dominated")
            }
            Warning::SupportLeak { boundary_ratio } => {
                write!(f, "input is not confined to the grid (edge/max = {boundary_ratio:e})")
            }
        }
    }
}

/// Result of a spectral evolution.
#[derive(Debug, Clone, PartialEq)]
pub struct Evolution {
    pub field: Field,
    pub warnings: Vec<Warning>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        assert!(Grid::new(0.0, 1.0, 8).is_ok());
        assert!(Grid::new(0.0, 1.0, 4).is_err());
        assert!(Grid::new(0.0, 1.0, 12).is_err());
        assert!(Grid::new(1.0, 1.0, 16).is_err());
        let g = Grid::new(-2.0, 2.0, 16).unwrap();
        assert_eq!(g.spacing(), 0.25);
        assert_eq!(g.x(4), -1.0);
        assert_eq!(g.nodes().count(), 16);
    }

    #[test]
    fn field_length_checked() {
        let g = Grid::new(0.0, 1.0, 8).unwrap();
        assert!(Field::new(g, vec![Complex64::new(0.0, 0.0); 7]).is_err());
    }

    #[test]
    fn interpolation_is_exact_for_cubics_and_pads_with_zero() {
        let g = Grid::new(-4.0, 4.0, 64).unwrap();
        let f = Field::from_real_fn(g, |x| 0.5 * x * x * x - x + 2.0);
        for &x in &[-1.03, 0.0, 0.77, 2.5] {
            let v = f.interpolate(x).unwrap();
            assert!((v.re - (0.5 * x * x * x - x + 2.0)).abs() < 1e-12);
        }
        assert_eq!(f.interpolate(g.x(5)).unwrap(), f.values()[5]);
        let narrow = Field::from_real_fn(g, |x| (-4.0 * x * x).exp());
        assert_eq!(narrow.interpolate(5.0).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(narrow.interpolate(10.5), Err(Error::InterpolationRange(10.5)));
    }

    #[test]
    fn ill_posed_directions() {
        let s = |m, y, sign| EvolutionSpec::new(m, y, sign).unwrap();
        assert!(!s(2, 1.0, Sign::Plus).is_ill_posed());
        assert!(s(2, -1.0, Sign::Plus).is_ill_posed());
        assert!(s(4, 1.0, Sign::Plus).is_ill_posed());
        assert!(!s(4, 1.0, Sign::Minus).is_ill_posed());
        assert!(!s(3, 1.0, Sign::Plus).is_ill_posed());
        assert!(!s(3, -1.0, Sign::Minus).is_ill_posed());
        assert!(EvolutionSpec::new(1, 1.0, Sign::Plus).is_err());
    }
}
