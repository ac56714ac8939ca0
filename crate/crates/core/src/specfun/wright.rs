//! Wright auxiliary functions of the second kind, F_ν and M_ν, 0 < ν < 1.
//!
//! The power series of M_ν is entire but alternates, so it loses digits as
//! the argument grows and as ν → 1. Past that point M_ν is evaluated from
//! the integral
//!
//! M_ν(x) = 1/(π(1−ν)x) ∫_0^π w(φ) e^{−w(φ)} dφ,
//! w(φ) = [x sin νφ / sin φ]^{1/(1−ν)} · sin((1−ν)φ) / sin νφ,
//!
//! in which w increases monotonically from a finite value at φ = 0 to
//! infinity at φ = π, so the integrand has a single peak where w = 1.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{finite, invalid, Error, Result};
use crate::gamma::{gamma, ln_gamma, ln_rgamma_sign, rgamma};
use crate::quad::peaked_integral;
use crate::sum::CompensatedSum;

/// Order ν ∈ (0, 1) of the Wright auxiliary functions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WrightOrder {
    nu: f64,
}

impl WrightOrder {
    pub fn new(nu: f64) -> Result<Self> {
        finite("nu", nu)?;
        if !(nu > 0.0 && nu < 1.0) {
            return Err(invalid("nu", nu, "must lie in (0, 1)"));
        }
        Ok(WrightOrder { nu })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }
}

const SERIES_ACCEPT: f64 = 1e-12;
const MAX_TERMS: usize = 600;

/// Series of M_ν with its estimated relative rounding error; `None` if the
/// terms had not died out within the term budget.
fn series(nu: f64, z: f64) -> Option<(f64, f64)> {
    // Rough ceiling on M_ν: M_ν(0), or 1/sd when the mode is interior. A sum
    // with a term above ceiling·SERIES_ACCEPT/4ε cannot pass acceptance, so
    // summation stops there and the caller uses the integral instead.
    let sd2 = 2.0 * rgamma(1.0 + 2.0 * nu) - rgamma(1.0 + nu).powi(2);
    let ceiling = rgamma(1.0 - nu).max(1.0 / sd2.max(1e-300).sqrt());
    let abort = (SERIES_ACCEPT / (4.0 * f64::EPSILON) * ceiling).ln();
    let mut acc = CompensatedSum::new();
    let ln_z = z.ln();
    let mut ln_fact = 0.0;
    let mut prev_bound = f64::NEG_INFINITY;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        if n > 1 {
            ln_fact += nf.ln();
        }
        let a = 1.0 - nu - nu * nf;
        let base = nf * ln_z - ln_fact;
        let (lr, sr) = ln_rgamma_sign(a);
        // |1/Γ(a)| ≤ Γ(1−a)/π for a < 1/2; stopping is decided on this
        // envelope because the coefficients dip near the poles of Γ
        let bound = if a < 0.5 {
            base + ln_gamma(1.0 - a) - PI.ln()
        } else {
            base + lr
        };
        if bound > abort {
            return None;
        }
        if sr != 0.0 {
            let sign = if n % 2 == 1 { -sr } else { sr };
            acc.add(sign * (base + lr).exp());
        }
        let v = acc.value().abs();
        if n > 2 && bound < prev_bound && (bound.exp() <= 1e-17 * v || bound < -745.0) {
            return Some((acc.value(), acc.relative_error()));
        }
        prev_bound = bound;
    }
    None
}

fn integral(nu: f64, x: f64) -> Result<f64> {
    let ln_x = x.ln();
    let ln_w = |phi: f64| {
        let s_nu = (nu * phi).sin();
        (ln_x + (s_nu / phi.sin()).ln()) / (1.0 - nu) + (((1.0 - nu) * phi).sin() / s_nu).ln()
    };
    let r = peaked_integral(ln_w, 0.0, PI, 1e-12);
    if !r.converged && r.abs_error > 1e-9 * r.value.abs() {
        return Err(Error::NoConvergence {
            what: "M-Wright integral",
            achieved: r.abs_error / r.value.abs(),
            requested: 1e-9,
        });
    }
    Ok(r.value / (PI * (1.0 - nu) * x))
}

/// M-Wright function M_ν(z) for z ≥ 0.
pub fn wright_m(nu: WrightOrder, z: f64) -> Result<f64> {
    finite("z", z)?;
    if z < 0.0 {
        return Err(invalid("z", z, "must be nonnegative"));
    }
    let nu = nu.nu;
    if z == 0.0 {
        return Ok(rgamma(1.0 - nu));
    }
    if nu == 0.5 {
        return Ok((-0.25 * z * z).exp() / PI.sqrt());
    }
    if let Some((v, err)) = series(nu, z) {
        if err <= SERIES_ACCEPT {
            return Ok(v.max(0.0));
        }
    }
    integral(nu, z)
}

/// F_ν(z) = ν z M_ν(z).
pub fn wright_f(nu: WrightOrder, z: f64) -> Result<f64> {
    Ok(nu.nu * z * wright_m(nu, z)?)
}

/// Two-variable density t^{−ν} M_ν(x t^{−ν}) on x ≥ 0.
pub fn wright_m_density(nu: WrightOrder, x: f64, t: f64) -> Result<f64> {
    finite("t", t)?;
    if t <= 0.0 {
        return Err(invalid("t", t, "must be positive"));
    }
    let s = t.powf(-nu.nu);
    Ok(s * wright_m(nu, x * s)?)
}

/// Absolute moment ∫_0^∞ x^δ M_ν(x) dx = Γ(δ+1)/Γ(νδ+1).
pub fn wright_m_moment(nu: WrightOrder, delta: f64) -> Result<f64> {
    finite("delta", delta)?;
    if delta <= -1.0 {
        return Err(invalid("delta", delta, "must exceed -1"));
    }
    Ok(gamma(delta + 1.0) / gamma(nu.nu * delta + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(nu: f64, z: f64) -> f64 {
        wright_m(WrightOrder::new(nu).unwrap(), z).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn integral_agrees_with_gaussian_closed_form() {
        for z in [0.1f64, 0.5, 1.0, 3.0, 8.0] {
            let want = (-0.25 * z * z).exp() / PI.sqrt();
            let got = integral(0.5, z).unwrap();
            assert!(rel(got, want) < 1e-11, "z={z}: {got} vs {want}");
        }
    }

    #[test]
    fn series_and_integral_overlap() {
        for nu in [0.2, 0.3, 0.7, 0.8] {
            for z in [0.3, 1.0, 2.5] {
                let i = integral(nu, z).unwrap();
                if let Some((s, err)) = series(nu, z) {
                    if err <= SERIES_ACCEPT {
                        assert!(rel(i, s) < 1e-10, "nu={nu} z={z}: {i} vs {s}");
                    }
                }
                assert!(rel(i, m(nu, z)) < 1e-10);
            }
        }
    }

    #[test]
    fn reference_values() {
        assert!(rel(m(0.8, 2.0), 0.132_884_800_439_037_578) < 1e-12);
        assert!(rel(m(0.3, 0.7), 0.487_812_795_679_454_64) < 1e-12);
        assert!(rel(m(0.9, 1.1), 1.266_376_636_625_127_5) < 1e-10);
    }

    #[test]
    fn value_at_origin() {
        assert!(rel(m(0.3, 0.0), 1.0 / gamma(0.7)) < 1e-15);
    }

    #[test]
    fn domain_errors() {
        assert!(WrightOrder::new(1.0).is_err());
        assert!(WrightOrder::new(0.0).is_err());
        let nu = WrightOrder::new(0.5).unwrap();
        assert!(wright_m(nu, -1.0).is_err());
        assert!(wright_m_density(nu, 1.0, 0.0).is_err());
        assert!(wright_m_moment(nu, -1.0).is_err());
    }
}
