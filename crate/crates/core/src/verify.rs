//! Monte Carlo verification: the marginal x(t_obs) of the simulated walk
//! against the CDF of the tabulated Green function.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::stats::ks_statistic;
use crate::subordination::{sinh_grid, tabulate_green, CdfTable, DensityGrid, DiffusionParams};
use crate::walker::ensemble_positions;

/// Pass threshold for the sup-difference of CDFs.
pub const KS_THRESHOLD: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub params: DiffusionParams,
    pub tau_star: f64,
    pub t_obs: f64,
    pub n_paths: u64,
    pub seed: u64,
    pub workers: usize,
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub params: DiffusionParams,
    pub n_paths: u64,
    pub tau_star: f64,
    pub t_obs: f64,
    pub ks_sup: f64,
    pub threshold: f64,
    pub pass: bool,
    pub seed: u64,
    /// Wall-clock seconds; left empty by the library so reports stay
    /// reproducible.
    pub runtime_s: Option<f64>,
    pub grid_mass: f64,
}

/// Reference grid for u(·, t): sinh-spaced, wide enough that the tails
/// beyond it carry little mass.
pub fn reference_grid(p: DiffusionParams, t: f64) -> Result<DensityGrid> {
    let scale = t.powf(p.beta() / p.alpha());
    let (n, half) = if p.alpha() == 2.0 { (801, 25.0) } else { (1201, 60.0) };
    tabulate_green(p, t, &sinh_grid(n, half * scale, 4.0))
}

/// Simulate the ensemble and compute the KS sup-difference.
pub fn verify_marginal(cfg: &VerifyConfig) -> Result<VerifyReport> {
    if cfg.n_paths == 0 {
        return Err(invalid("n_paths", 0.0, "must be at least 1"));
    }
    if !(cfg.t_obs > 0.0) {
        return Err(invalid("t_obs", cfg.t_obs, "must be positive"));
    }
    let grid = reference_grid(cfg.params, cfg.t_obs)?;
    let table = CdfTable::new(&grid);
    let mut xs = ensemble_positions(cfg.params, cfg.tau_star, cfg.t_obs, cfg.n_paths, cfg.seed, cfg.workers)?;
    let ks_sup = ks_statistic(&mut xs, |x| table.eval(x));
    Ok(VerifyReport {
        params: cfg.params,
        n_paths: cfg.n_paths,
        tau_star: cfg.tau_star,
        t_obs: cfg.t_obs,
        ks_sup,
        threshold: cfg.threshold,
        pass: ks_sup < cfg.threshold,
        seed: cfg.seed,
        runtime_s: None,
        grid_mass: grid.mass(),
    })
}
