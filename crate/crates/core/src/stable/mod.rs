//! Strictly stable densities in the Feller parameterization (α, θ), with
//! characteristic function exp(−|κ|^α e^{i sgn(κ) θπ/2}).

mod density;
mod zolotarev;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{finite, invalid, Error, Result};
use crate::gamma::{gamma, sin_pi};
use crate::specfun::{wright_m, WrightOrder};

pub use density::{stable_pdf, stable_pdf_scaled, stable_pdf_traced, StableEvaluation};

/// Slack allowed when a θ on the diamond boundary is the result of rounding.
const DIAMOND_SLACK: f64 = 1e-12;

/// Feller pair (α, θ) inside the diamond 0 < α ≤ 2, |θ| ≤ min(α, 2 − α).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawStableParams")]
pub struct StableParams {
    alpha: f64,
    theta: f64,
}

#[derive(Deserialize)]
struct RawStableParams {
    alpha: f64,
    theta: f64,
}

impl TryFrom<RawStableParams> for StableParams {
    type Error = Error;
    fn try_from(r: RawStableParams) -> Result<Self> {
        StableParams::new(r.alpha, r.theta)
    }
}

impl StableParams {
    pub fn new(alpha: f64, theta: f64) -> Result<Self> {
        finite("alpha", alpha)?;
        finite("theta", theta)?;
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(invalid("alpha", alpha, "must lie in (0, 2]"));
        }
        let bound = alpha.min(2.0 - alpha);
        if theta.abs() > bound + DIAMOND_SLACK {
            return Err(invalid(
                "theta",
                theta,
                "outside the diamond |theta| <= min(alpha, 2 - alpha)",
            ));
        }
        Ok(StableParams {
            alpha,
            theta: theta.clamp(-bound, bound),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Same α with θ → −θ: the law of −X.
    pub fn reflected(&self) -> Self {
        StableParams {
            alpha: self.alpha,
            theta: -self.theta,
        }
    }

    /// On the boundary of the diamond (and not the Gaussian vertex).
    pub fn is_extremal(&self) -> bool {
        self.alpha < 2.0 && self.theta.abs() == self.alpha.min(2.0 - self.alpha)
    }
}

/// Validate a Feller pair.
pub fn validate_params(alpha: f64, theta: f64) -> Result<StableParams> {
    StableParams::new(alpha, theta)
}

/// Which representation produced a density value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StableRegime {
    Gaussian,
    CauchyFamily,
    LevySmirnovPair,
    DiracLimit,
    SeriesSmallAlpha,
    SeriesLargeAlpha,
    TailAsymptotic,
    AlphaOneSkewedUnsupported,
    /// Zolotarev's integral representation.
    Integral,
    /// Exact value at the origin.
    OriginClosedForm,
    /// Exponentially thin side of a one-sided extremal density: exactly 0.
    VanishingSide,
}

/// Regime that an evaluation of L_α^θ(x) uses, or the refusal tag.
pub fn stable_regime(p: StableParams, x: f64) -> StableRegime {
    match stable_pdf_traced(p, x) {
        Ok(e) => e.regime,
        Err(Error::DiracLimit { .. }) => StableRegime::DiracLimit,
        Err(_) => StableRegime::AlphaOneSkewedUnsupported,
    }
}

/// Characteristic function E e^{iκX} = exp(−|κ|^α e^{i sgn(κ) θπ/2}).
pub fn stable_cf(p: StableParams, kappa: f64) -> Result<Complex64> {
    finite("kappa", kappa)?;
    if kappa == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let mag = kappa.abs().powf(p.alpha);
    let phase = kappa.signum() * p.theta * 0.5;
    let psi = Complex64::new(mag * sin_pi(phase + 0.5), mag * sin_pi(phase));
    Ok((-psi).exp())
}

/// Leading power-law tail (Γ(1+α)/π) sin(π(α∓θ)/2) |x|^{−α−1}, upper sign for
/// x > 0. Zero on the exponentially thin side of an extremal density.
pub fn stable_tail(p: StableParams, x: f64) -> Result<f64> {
    finite("x", x)?;
    if p.alpha == 2.0 {
        return Err(Error::Unsupported("the Gaussian has no power-law tail"));
    }
    if x == 0.0 {
        return Err(invalid("x", x, "tail approximation needs x != 0"));
    }
    let theta = if x > 0.0 { p.theta } else { -p.theta };
    let s = sin_pi(0.5 * (p.alpha - theta)).max(0.0);
    Ok(gamma(1.0 + p.alpha) / PI * s * x.abs().powf(-p.alpha - 1.0))
}

/// Extremal densities through the M-Wright function:
/// L_α^{−α}(x) = α x^{−α−1} M_α(x^{−α}) for 0 < α < 1 and
/// L_α^{α−2}(x) = M_{1/α}(x)/α for 1 < α ≤ 2.
pub fn extremal_from_wright(alpha: f64, x: f64) -> Result<f64> {
    finite("alpha", alpha)?;
    finite("x", x)?;
    if x <= 0.0 {
        return Err(invalid("x", x, "must be positive"));
    }
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(invalid("alpha", alpha, "must lie in (0, 2]"));
    }
    if alpha == 1.0 {
        return Err(Error::DiracLimit {
            what: "extremal stable density at alpha = 1",
            location: 1.0,
        });
    }
    if alpha < 1.0 {
        let m = wright_m(WrightOrder::new(alpha)?, x.powf(-alpha))?;
        Ok(alpha * x.powf(-alpha - 1.0) * m)
    } else {
        Ok(wright_m(WrightOrder::new(1.0 / alpha)?, x)? / alpha)
    }
}
