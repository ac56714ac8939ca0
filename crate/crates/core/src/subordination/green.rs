//! Green function u(x, t) and its characteristic function.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{positive, DiffusionParams};
use crate::error::{finite, Error, Result};
use crate::gamma::{cos_pi, gamma, sin_pi};
use crate::quad::{integrate_points_to_infinity, QuadConfig};
use crate::specfun::{mittag_leffler, mittag_leffler_complex, wright_m, MlParams, WrightOrder};
use crate::stable::{stable_pdf, stable_pdf_scaled};

/// Tolerances of the subordination integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GreenConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for GreenConfig {
    fn default() -> Self {
        GreenConfig {
            abs_tol: 1e-13,
            rel_tol: 1e-8,
        }
    }
}

impl GreenConfig {
    fn quad(&self) -> QuadConfig {
        QuadConfig::new(self.abs_tol, self.rel_tol).with_max_intervals(2000)
    }
}

/// u(x, t), dispatched to a closed form when one exists:
/// β = 1 gives the stable density at scale t, α = 2 gives
/// ½ t^{−β/2} M_{β/2}(|x| t^{−β/2}); everything else is integrated.
pub fn green_function(p: DiffusionParams, x: f64, t: f64) -> Result<f64> {
    green_function_with(p, x, t, &GreenConfig::default())
}

/// [`green_function`] with explicit quadrature tolerances.
pub fn green_function_with(p: DiffusionParams, x: f64, t: f64, cfg: &GreenConfig) -> Result<f64> {
    finite("x", x)?;
    positive("t", t)?;
    if p.beta() == 1.0 {
        return stable_pdf_scaled(p.stable(), x, t);
    }
    if p.alpha() == 2.0 {
        let nu = 0.5 * p.beta();
        let s = t.powf(-nu);
        return Ok(0.5 * s * wright_m(WrightOrder::new(nu)?, x.abs() * s)?);
    }
    green_function_quadrature(p, x, t, cfg)
}

/// u(x, t) from the subordination integral even where a closed form exists.
///
/// With t_* = t^β σ the integral becomes ∫_0^∞ f(x, t^β σ) M_β(σ) dσ.
/// Breakpoints sit where the parent kernel turns over (σ ≈ |x|^α t^{−β})
/// and around the bulk of M_β.
pub fn green_function_quadrature(p: DiffusionParams, x: f64, t: f64, cfg: &GreenConfig) -> Result<f64> {
    finite("x", x)?;
    positive("t", t)?;
    let (alpha, beta) = (p.alpha(), p.beta());
    if beta == 1.0 {
        return Err(Error::DiracLimit {
            what: "directing density at beta = 1",
            location: t,
        });
    }
    let nu = WrightOrder::new(beta)?;
    let sp = p.stable();
    let tb = t.powf(beta);
    let mu = 1.0 / gamma(1.0 + beta);
    let sd = (2.0 / gamma(1.0 + 2.0 * beta) - mu * mu).max(0.0).sqrt();
    let qcfg = cfg.quad();

    if x == 0.0 {
        let l0 = stable_pdf(sp, 0.0)?;
        if l0 == 0.0 {
            return Ok(0.0);
        }
        if alpha <= 1.0 {
            return Err(Error::Singular {
                what: "Green function at x = 0 for alpha <= 1",
                location: 0.0,
            });
        }
        // σ = v^a with a = α/(α−1) removes the σ^{−1/α} endpoint singularity
        let a = alpha / (alpha - 1.0);
        let mut err = None;
        let g = |v: f64| -> f64 {
            match wright_m(nu, v.powf(a)) {
                Ok(m) => m,
                Err(e) => {
                    err.get_or_insert(e);
                    0.0
                }
            }
        };
        let mut pts = vec![0.0];
        for k in [-1.0, 0.0, 1.0, 2.0, 4.0] {
            let s = mu + k * sd;
            if s > 0.0 {
                pts.push(s.powf(1.0 / a));
            }
        }
        let r = integrate_points_to_infinity(g, &pts, (mu + sd).powf(1.0 / a), &qcfg);
        if let Some(e) = err {
            return Err(e);
        }
        let v = r.require("subordination integral", &qcfg)?;
        return Ok(a * tb.powf(-1.0 / alpha) * l0 * v);
    }

    let mut err = None;
    let g = |sigma: f64| -> f64 {
        if sigma <= 0.0 {
            return 0.0;
        }
        let m = match wright_m(nu, sigma) {
            Ok(m) => m,
            Err(e) => {
                err.get_or_insert(e);
                return 0.0;
            }
        };
        if m == 0.0 {
            return 0.0;
        }
        match stable_pdf_scaled(sp, x, tb * sigma) {
            Ok(f) => f * m,
            Err(e) => {
                err.get_or_insert(e);
                0.0
            }
        }
    };
    let mut pts = vec![0.0];
    let kink = x.abs().powf(alpha) / tb;
    for c in [0.01, 0.1, 1.0, 10.0] {
        pts.push(c * kink);
    }
    for k in [-1.0, 0.0, 1.0, 2.0, 4.0] {
        let s = mu + k * sd;
        if s > 0.0 {
            pts.push(s);
        }
    }
    pts.retain(|v| v.is_finite());
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let scale = mu + sd;
    let r = integrate_points_to_infinity(g, &pts, scale, &qcfg);
    if let Some(e) = err {
        return Err(e);
    }
    r.require("subordination integral", &qcfg)
}

/// Characteristic function ∫ e^{iκx} u(x, t) dx = E_β(−|κ|^α e^{i sgn(κ) θπ/2} t^β).
pub fn green_cf(p: DiffusionParams, kappa: f64, t: f64) -> Result<Complex64> {
    finite("kappa", kappa)?;
    positive("t", t)?;
    if kappa == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let mag = kappa.abs().powf(p.alpha()) * t.powf(p.beta());
    let phase = 0.5 * kappa.signum() * p.theta();
    let z = -Complex64::new(mag * cos_pi(phase), mag * sin_pi(phase));
    if p.beta() == 1.0 {
        return Ok(z.exp());
    }
    let ml = MlParams::classic(p.beta())?;
    if z.im == 0.0 {
        return Ok(Complex64::new(mittag_leffler(ml, z.re)?, 0.0));
    }
    mittag_leffler_complex(ml, z)
}

/// Large-|x| mass of u(·, t) beyond |x| = `cut` on the side of sign(`cut`):
/// C_± t^β / Γ(1+β) · |cut|^{−α} / α, with C_± the stable tail constant.
pub fn tail_mass(p: DiffusionParams, cut: f64, t: f64) -> f64 {
    if p.alpha() == 2.0 {
        return 0.0;
    }
    let theta = if cut > 0.0 { p.theta() } else { -p.theta() };
    let c = gamma(1.0 + p.alpha()) / PI * sin_pi(0.5 * (p.alpha() - theta)).max(0.0);
    let time = t.powf(p.beta()) / gamma(1.0 + p.beta());
    c * time * cut.abs().powf(-p.alpha()) / p.alpha()
}
