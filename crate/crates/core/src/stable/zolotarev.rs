//! Zolotarev's integral for L_α^θ(x), x > 0, α ≠ 1:
//!
//! L(x) = α / (π |α−1| x) ∫_{θπ/(2α)}^{π/2} w e^{−w} dφ,
//! ln w = α/(α−1) [ln x + ln(cos φ / sin(α(φ − θπ/(2α))))]
//!        + ln(cos(αφ − φ − θπ/2) / cos φ).
//!
//! ln w is monotone in φ, so the integrand is a single peak at w = 1. Used
//! where the power series cancel badly.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::quad::peaked_integral;

pub(crate) fn density(alpha: f64, theta: f64, x: f64, rel_tol: f64) -> Result<f64> {
    debug_assert!(x > 0.0 && alpha != 1.0);
    let lower = theta * FRAC_PI_2 / alpha;
    if lower >= FRAC_PI_2 {
        return Ok(0.0);
    }
    let ln_x = x.ln();
    let k = alpha / (alpha - 1.0);
    let shift = theta * FRAC_PI_2;
    let ln_w = |phi: f64| {
        let c = phi.cos();
        let s = (alpha * phi - shift).sin();
        let c2 = ((alpha - 1.0) * phi - shift).cos();
        k * (ln_x + (c / s).ln()) + (c2 / c).ln()
    };
    let r = peaked_integral(ln_w, lower, FRAC_PI_2, rel_tol);
    if !r.converged && r.abs_error > 1e3 * rel_tol * r.value.abs() {
        return Err(Error::NoConvergence {
            what: "stable density integral",
            achieved: r.abs_error / r.value.abs(),
            requested: rel_tol,
        });
    }
    Ok(r.value * alpha / (PI * (alpha - 1.0).abs() * x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_closed_forms() {
        for x in [0.05f64, 0.3, 1.0, 4.0, 30.0] {
            let g = (-x * x / 4.0).exp() / (2.0 * PI.sqrt());
            let v = density(2.0, 0.0, x, 1e-12).unwrap();
            assert!((v - g).abs() <= 1e-11 * g, "gauss x={x}: {v} vs {g}");
            let ls = x.powf(-1.5) * (-0.25 / x).exp() / (2.0 * PI.sqrt());
            let v = density(0.5, -0.5, x, 1e-12).unwrap();
            assert!((v - ls).abs() <= 1e-11 * ls, "levy x={x}: {v} vs {ls}");
        }
    }
}
