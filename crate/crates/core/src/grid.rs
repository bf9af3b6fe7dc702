//! Uniform grids on the truncated cylinder axis `[-T, T)` and real fields
//! living on them.

use crate::error::CknError;
use serde::{Deserialize, Serialize};

/// Fraction of the sup-norm a field may carry at the outermost samples before
/// periodization error invalidates spectral application.
pub const BOUNDARY_LEAK_LIMIT: f64 = 1e-8;

/// Uniform periodic grid: `N` points `t_j = -T + j * dt`, `dt = 2T/N`,
/// discrete frequencies `xi_k = pi k / T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    t_half: f64,
    n: usize,
}

impl Grid {
    /// `n` must be a power of two, at least 64; `t_half` positive.
    pub fn new(t_half: f64, n: usize) -> Result<Self, CknError> {
        if !(t_half > 0.0 && t_half.is_finite()) {
            return Err(CknError::Grid(format!("T must be positive, got {t_half}")));
        }
        if n < 64 || !n.is_power_of_two() {
            return Err(CknError::Grid(format!(
                "N must be a power of two >= 64, got {n}"
            )));
        }
        Ok(Grid { t_half, n })
    }

    /// Default production grid.
    pub fn default_grid() -> Self {
        Grid { t_half: 20.0, n: 2048 }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn t_half(&self) -> f64 {
        self.t_half
    }

    pub fn delta_t(&self) -> f64 {
        2.0 * self.t_half / self.n as f64
    }

    pub fn point(&self, j: usize) -> f64 {
        -self.t_half + j as f64 * self.delta_t()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.point(j)).collect()
    }

    /// Frequency of FFT bin `k` (standard wrap-around layout).
    pub fn xi(&self, k: usize) -> f64 {
        let k = k as i64;
        let n = self.n as i64;
        let k = if k < n / 2 { k } else { k - n };
        std::f64::consts::PI * k as f64 / self.t_half
    }

    /// Largest resolved frequency `pi (N/2) / T`.
    pub fn xi_max(&self) -> f64 {
        std::f64::consts::PI * (self.n as f64 / 2.0) / self.t_half
    }

    /// Index of the sample closest to `t`, clamped to the grid.
    pub fn index_of(&self, t: f64) -> usize {
        let j = ((t + self.t_half) / self.delta_t()).round();
        (j.max(0.0) as usize).min(self.n - 1)
    }
}

/// A real scalar field sampled on a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct RadialField {
    grid: Grid,
    values: Vec<f64>,
}

impl RadialField {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self, CknError> {
        if values.len() != grid.len() {
            return Err(CknError::Grid(format!(
                "field length {} does not match grid size {}",
                values.len(),
                grid.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(CknError::Grid("field contains non-finite samples".into()));
        }
        Ok(RadialField { grid, values })
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Result<Self, CknError> {
        let values = (0..grid.len()).map(|j| f(grid.point(j))).collect();
        RadialField::new(grid, values)
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Largest magnitude among the outermost samples, relative to the sup norm.
    pub fn boundary_leak(&self) -> f64 {
        let m = self.max_abs();
        if m == 0.0 {
            return 0.0;
        }
        let n = self.values.len();
        let edge = self.values[0]
            .abs()
            .max(self.values[1].abs())
            .max(self.values[n - 1].abs());
        edge / m
    }

    /// Error unless the field is numerically small at the grid ends.
    pub fn check_boundary(&self) -> Result<(), CknError> {
        let leak = self.boundary_leak();
        if leak > BOUNDARY_LEAK_LIMIT {
            Err(CknError::BoundaryLeak {
                leak,
                limit: BOUNDARY_LEAK_LIMIT,
            })
        } else {
            Ok(())
        }
    }

    /// Trapezoid (= rectangle, periodic) quadrature of `f(v)` over the grid.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        let dt = self.grid.delta_t();
        self.values.iter().map(|&v| f(v)).sum::<f64>() * dt
    }

    /// L2 inner product with another field on the same grid.
    pub fn inner(&self, other: &RadialField) -> f64 {
        let dt = self.grid.delta_t();
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .sum::<f64>()
            * dt
    }

    /// Sup-norm asymmetry `max_j |v(t_j) - v(-t_j)|` (grid-reflected).
    pub fn asymmetry(&self) -> f64 {
        let n = self.values.len();
        let mut worst = 0.0f64;
        for j in 1..n {
            worst = worst.max((self.values[j] - self.values[n - j]).abs());
        }
        worst
    }
}
