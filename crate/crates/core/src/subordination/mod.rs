//! Space-time fractional diffusion through subordination.
//!
//! The Green function of the Cauchy problem with Riesz–Feller order α,
//! skewness θ and Caputo order β is the mixture
//!
//! u(x, t) = ∫_0^∞ f_{α,θ}(x, t_*) q_β(t_*, t) dt_*,
//!
//! of the parent stable density f and the directing density
//! q_β(t_*, t) = t^{−β} M_β(t_* t^{−β}).

mod green;
mod grid;

use serde::{Deserialize, Serialize};

use crate::error::{finite, invalid, Error, Result};
use crate::specfun::{wright_m, WrightOrder};
use crate::stable::{stable_pdf, stable_pdf_scaled, StableParams};

pub use green::{green_cf, green_function, green_function_quadrature, green_function_with, tail_mass, GreenConfig};
pub use grid::{sinh_grid, tabulate_green, tabulate_green_with, CdfTable, DensityGrid, GridMeta};

/// Orders (α, θ, β) with 0 < α ≤ 2, |θ| ≤ min(α, 2 − α), 0 < β ≤ 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDiffusionParams")]
pub struct DiffusionParams {
    alpha: f64,
    theta: f64,
    beta: f64,
}

#[derive(Deserialize)]
struct RawDiffusionParams {
    alpha: f64,
    theta: f64,
    beta: f64,
}

impl TryFrom<RawDiffusionParams> for DiffusionParams {
    type Error = Error;
    fn try_from(r: RawDiffusionParams) -> Result<Self> {
        DiffusionParams::new(r.alpha, r.theta, r.beta)
    }
}

impl DiffusionParams {
    pub fn new(alpha: f64, theta: f64, beta: f64) -> Result<Self> {
        let s = StableParams::new(alpha, theta)?;
        finite("beta", beta)?;
        if !(beta > 0.0 && beta <= 1.0) {
            return Err(invalid("beta", beta, "must lie in (0, 1]"));
        }
        Ok(DiffusionParams {
            alpha: s.alpha(),
            theta: s.theta(),
            beta,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// The parent (space) law.
    pub fn stable(&self) -> StableParams {
        StableParams::new(self.alpha, self.theta).expect("validated at construction")
    }
}

fn check_beta(beta: f64, allow_one: bool) -> Result<()> {
    finite("beta", beta)?;
    let ok = beta > 0.0 && (beta < 1.0 || (allow_one && beta == 1.0));
    if ok {
        Ok(())
    } else if allow_one {
        Err(invalid("beta", beta, "must lie in (0, 1]"))
    } else {
        Err(invalid("beta", beta, "must lie in (0, 1)"))
    }
}

fn positive(name: &'static str, v: f64) -> Result<f64> {
    finite(name, v)?;
    if v <= 0.0 {
        return Err(invalid(name, v, "must be positive"));
    }
    Ok(v)
}

/// Parent density f_{α,θ}(x, t_*) = t_*^{−1/α} L_α^θ(x t_*^{−1/α}).
pub fn parent_density(p: DiffusionParams, x: f64, t_star: f64) -> Result<f64> {
    positive("t_star", t_star)?;
    stable_pdf_scaled(p.stable(), x, t_star)
}

/// Directing density q_β(t_*, t) = t^{−β} M_β(t_* t^{−β}) of the operational
/// time at physical time t. At β = 1 it is the pulse δ(t_* − t).
pub fn directing_density(beta: f64, t_star: f64, t: f64) -> Result<f64> {
    check_beta(beta, true)?;
    positive("t", t)?;
    finite("t_star", t_star)?;
    if t_star < 0.0 {
        return Err(invalid("t_star", t_star, "must be nonnegative"));
    }
    if beta == 1.0 {
        return Err(Error::DiracLimit {
            what: "directing density at beta = 1",
            location: t,
        });
    }
    let s = t.powf(-beta);
    Ok(s * wright_m(WrightOrder::new(beta)?, t_star * s)?)
}

/// Leading density r_β(t, t_*) = t_*^{−1/β} L_β^{−β}(t t_*^{−1/β}) of the
/// physical time reached at operational time t_*.
pub fn leading_density(beta: f64, t: f64, t_star: f64) -> Result<f64> {
    check_beta(beta, false)?;
    positive("t_star", t_star)?;
    finite("t", t)?;
    if t <= 0.0 {
        return Ok(0.0);
    }
    let s = t_star.powf(-1.0 / beta);
    Ok(s * stable_pdf(StableParams::new(beta, -beta)?, t * s)?)
}

/// Green function of the time-fractional drift equation:
/// t^{−β} M_β(x t^{−β}) for x ≥ 0 and 0 for x < 0. At β = 1 it is δ(x − t).
pub fn drift_green(beta: f64, x: f64, t: f64) -> Result<f64> {
    check_beta(beta, true)?;
    positive("t", t)?;
    finite("x", x)?;
    if beta == 1.0 {
        return Err(Error::DiracLimit {
            what: "drift Green function at beta = 1",
            location: t,
        });
    }
    if x < 0.0 {
        return Ok(0.0);
    }
    directing_density(beta, x, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn validation() {
        assert!(DiffusionParams::new(1.5, 0.0, 0.9).is_ok());
        assert!(DiffusionParams::new(1.5, 0.6, 0.9).is_err());
        assert!(DiffusionParams::new(1.5, 0.0, 0.0).is_err());
        assert!(DiffusionParams::new(1.5, 0.0, 1.1).is_err());
    }

    #[test]
    fn elementary_values() {
        let g = DiffusionParams::new(2.0, 0.0, 1.0).unwrap();
        assert!((parent_density(g, 0.0, 1.0).unwrap() - 0.5 / PI.sqrt()).abs() < 1e-16);
        let x: f64 = 0.7;
        let want = (-x * x / (4.0 * 3.0)).exp() / (4.0 * PI * 3.0).sqrt();
        assert!((parent_density(g, x, 3.0).unwrap() - want).abs() < 1e-15);
        assert!((directing_density(0.5, 0.0, 1.0).unwrap() - 1.0 / PI.sqrt()).abs() < 1e-15);
        let ls = (-0.25f64).exp() / (2.0 * PI.sqrt());
        assert!((leading_density(0.5, 1.0, 1.0).unwrap() - ls).abs() < 1e-15);
        assert_eq!(leading_density(0.5, -1.0, 1.0).unwrap(), 0.0);
        assert!((drift_green(0.5, 1.0, 1.0).unwrap() - 2.0 * ls).abs() < 1e-15);
        assert_eq!(drift_green(0.7, -0.5, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn pulses_are_signalled() {
        assert!(matches!(
            directing_density(1.0, 0.5, 1.0),
            Err(Error::DiracLimit { .. })
        ));
        assert!(matches!(drift_green(1.0, 0.5, 2.0), Err(Error::DiracLimit { location, .. }) if location == 2.0));
        assert!(leading_density(1.0, 0.5, 1.0).is_err());
    }

    #[test]
    fn drift_equals_directing() {
        for x in [0.1, 0.9, 2.5] {
            assert_eq!(
                drift_green(0.7, x, 1.3).unwrap(),
                directing_density(0.7, x, 1.3).unwrap()
            );
        }
    }
}
