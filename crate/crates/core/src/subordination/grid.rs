//! Tabulated Green functions.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::green::{green_function_with, tail_mass};
use super::{positive, DiffusionParams, GreenConfig};
use crate::error::{invalid, Result};

/// Parameters and tolerances a grid was computed with.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridMeta {
    pub params: DiffusionParams,
    pub tolerances: GreenConfig,
}

/// u(x, t) at fixed t on a strictly increasing abscissa.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityGrid {
    pub t: f64,
    pub xs: Vec<f64>,
    pub us: Vec<f64>,
    /// Estimated mass left of `xs[0]` and right of the last abscissa.
    pub tail_left: f64,
    pub tail_right: f64,
    pub meta: GridMeta,
}

impl DensityGrid {
    /// Trapezoid mass over the grid plus the declared tails.
    pub fn mass(&self) -> f64 {
        self.interior_mass() + self.tail_left + self.tail_right
    }

    fn interior_mass(&self) -> f64 {
        self.xs
            .windows(2)
            .zip(self.us.windows(2))
            .map(|(x, u)| 0.5 * (x[1] - x[0]) * (u[0] + u[1]))
            .sum()
    }

    /// Whether the mass lies in [1 − tol, 1 + tol].
    pub fn mass_ok(&self, tol: f64) -> bool {
        (self.mass() - 1.0).abs() <= tol
    }

    /// Cumulative distribution at the grid abscissae: left tail plus running
    /// trapezoid sums, normalised by the total mass.
    pub fn cdf_values(&self) -> Vec<f64> {
        let total = self.mass();
        let mut acc = self.tail_left;
        let mut out = Vec::with_capacity(self.xs.len());
        out.push(acc / total);
        for i in 1..self.xs.len() {
            acc += 0.5 * (self.xs[i] - self.xs[i - 1]) * (self.us[i] + self.us[i - 1]);
            out.push(acc / total);
        }
        out
    }

    /// CDF at an arbitrary x, piecewise linear in the density between nodes.
    pub fn cdf(&self, x: f64) -> f64 {
        CdfTable::new(self).eval(x)
    }
}

/// Precomputed CDF lookup for repeated evaluation.
#[derive(Debug, Clone)]
pub struct CdfTable {
    xs: Vec<f64>,
    us: Vec<f64>,
    cum: Vec<f64>,
    total: f64,
    tail_left: f64,
}

impl CdfTable {
    pub fn new(g: &DensityGrid) -> Self {
        let total = g.mass();
        let mut cum = Vec::with_capacity(g.xs.len());
        let mut acc = g.tail_left;
        cum.push(acc);
        for i in 1..g.xs.len() {
            acc += 0.5 * (g.xs[i] - g.xs[i - 1]) * (g.us[i] + g.us[i - 1]);
            cum.push(acc);
        }
        CdfTable {
            xs: g.xs.clone(),
            us: g.us.clone(),
            cum,
            total,
            tail_left: g.tail_left,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x <= self.xs[0] {
            // tails decay like |x|^{−α}; a proportional share is close enough
            return if x == self.xs[0] {
                self.tail_left / self.total
            } else {
                (self.tail_left * (self.xs[0] / x).abs().min(1.0)) / self.total
            };
        }
        if x >= self.xs[n - 1] {
            let right = self.total - self.cum[n - 1];
            let frac = if x == self.xs[n - 1] {
                0.0
            } else {
                1.0 - (self.xs[n - 1] / x).abs().min(1.0)
            };
            return (self.cum[n - 1] + right * frac) / self.total;
        }
        let i = self.xs.partition_point(|&v| v <= x) - 1;
        let h = x - self.xs[i];
        let w = self.xs[i + 1] - self.xs[i];
        let slope = (self.us[i + 1] - self.us[i]) / w;
        let part = h * (self.us[i] + 0.5 * slope * h);
        (self.cum[i] + part) / self.total
    }
}

/// Strictly increasing abscissae −L…L, dense near 0: x = L sinh(c s)/sinh(c),
/// s uniform on [−1, 1]. `n` should be odd so that 0 is a node.
pub fn sinh_grid(n: usize, half_width: f64, concentration: f64) -> Vec<f64> {
    assert!(n >= 2);
    let c = concentration;
    let m = (n - 1) as f64;
    let mut xs: Vec<f64> = (0..n)
        .map(|i| half_width * (c * (2.0 * i as f64 - m) / m).sinh() / c.sinh())
        .collect();
    // exact mirror symmetry
    for i in 0..n / 2 {
        xs[n - 1 - i] = -xs[i];
    }
    xs
}

/// Tabulate u(·, t) on `xs` with default tolerances.
pub fn tabulate_green(p: DiffusionParams, t: f64, xs: &[f64]) -> Result<DensityGrid> {
    tabulate_green_with(p, t, xs, &GreenConfig::default())
}

/// Tabulate u(·, t) on `xs`, evaluating points in parallel.
///
/// A singular value at x = 0 (α ≤ 1, β < 1) is replaced by the larger of
/// its neighbours so that the trapezoid mass stays finite.
pub fn tabulate_green_with(p: DiffusionParams, t: f64, xs: &[f64], cfg: &GreenConfig) -> Result<DensityGrid> {
    positive("t", t)?;
    if xs.len() < 2 {
        return Err(invalid("xs", xs.len() as f64, "need at least two abscissae"));
    }
    if xs.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(invalid("xs", f64::NAN, "abscissae must be strictly increasing"));
    }
    let raw: Vec<Result<f64>> = xs.par_iter().map(|&x| green_function_with(p, x, t, cfg)).collect();
    let mut us = Vec::with_capacity(xs.len());
    let mut singular = Vec::new();
    for (i, r) in raw.into_iter().enumerate() {
        match r {
            Ok(v) => us.push(v),
            Err(crate::error::Error::Singular { .. }) => {
                singular.push(i);
                us.push(0.0);
            }
            Err(e) => return Err(e),
        }
    }
    for i in singular {
        let l = if i > 0 { us[i - 1] } else { 0.0 };
        let r = if i + 1 < us.len() { us[i + 1] } else { 0.0 };
        us[i] = l.max(r);
    }
    let n = xs.len();
    let tail_left = if xs[0] < 0.0 { tail_mass(p, xs[0], t) } else { 0.0 };
    let tail_right = if xs[n - 1] > 0.0 {
        tail_mass(p, xs[n - 1], t)
    } else {
        0.0
    };
    Ok(DensityGrid {
        t,
        xs: xs.to_vec(),
        us,
        tail_left,
        tail_right,
        meta: GridMeta {
            params: p,
            tolerances: *cfg,
        },
    })
}
