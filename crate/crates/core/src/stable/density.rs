//! Regime dispatch for L_α^θ(x).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{zolotarev, StableParams, StableRegime};
use crate::error::{finite, invalid, Error, Result};
use crate::gamma::{cos_pi, gamma, ln_gamma, sin_pi};
use crate::sum::CompensatedSum;

const MAX_TERMS: usize = 400;
const SERIES_ACCEPT: f64 = 1e-12;
const TAIL_ACCEPT: f64 = 1e-13;
const INTEGRAL_RTOL: f64 = 1e-12;
/// Half-width of the band around α = 1 where evaluation is refused.
pub(crate) const NEAR_ONE: f64 = 1e-4;

/// A density value with the regime that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StableEvaluation {
    pub value: f64,
    pub regime: StableRegime,
}

struct Series {
    value: f64,
    rel_error: f64,
}

/// Σ_{n≥1} (−y)^n c_n sin(nπs), with ln c_n = ln Γ(1 + n·g) − ln n!. The
/// envelope y^n c_n decides truncation; it must eventually decrease.
/// Summation is abandoned once a term exceeds `ceiling`·SERIES_ACCEPT/4ε,
/// `ceiling` being an upper bound on the sum.
fn power_series(y: f64, g: f64, s: f64, ceiling: f64) -> Option<Series> {
    let abort = (SERIES_ACCEPT / (4.0 * f64::EPSILON) * ceiling).ln();
    let ln_y = y.ln();
    let mut acc = CompensatedSum::new();
    let mut prev = f64::NEG_INFINITY;
    let mut nonzero = false;
    for n in 1..=MAX_TERMS {
        let nf = n as f64;
        let env = nf * ln_y + ln_gamma(1.0 + nf * g) - ln_gamma(nf + 1.0);
        if env > abort {
            return None;
        }
        let sn = sin_pi(nf * s);
        if sn != 0.0 {
            let sign = if n % 2 == 1 { -1.0 } else { 1.0 };
            acc.add(sign * sn * env.exp());
            nonzero = true;
        }
        if n > 1 && env < prev && (env.exp() <= 1e-17 * acc.value().abs() || env < -745.0) {
            if !nonzero {
                return None;
            }
            return Some(Series {
                value: acc.value(),
                rel_error: acc.relative_error(),
            });
        }
        prev = env;
    }
    None
}

/// The small-α series read as an asymptotic expansion for α > 1: summed up
/// to its smallest term, which is returned as the error estimate.
fn asymptotic_series(y: f64, g: f64, s: f64) -> Option<Series> {
    let ln_y = y.ln();
    let mut acc = CompensatedSum::new();
    let mut prev = f64::INFINITY;
    let mut last = f64::INFINITY;
    let mut nonzero = false;
    for n in 1..=60 {
        let nf = n as f64;
        let env = nf * ln_y + ln_gamma(1.0 + nf * g) - ln_gamma(nf + 1.0);
        if env > prev {
            break;
        }
        let sn = sin_pi(nf * s);
        if sn != 0.0 {
            let sign = if n % 2 == 1 { -1.0 } else { 1.0 };
            acc.add(sign * sn * env.exp());
            nonzero = true;
        }
        last = env.exp();
        prev = env;
        if last <= 1e-17 * acc.value().abs() {
            break;
        }
    }
    if !nonzero || acc.value() <= 0.0 {
        return None;
    }
    Some(Series {
        value: acc.value(),
        rel_error: last / acc.value().abs() + acc.relative_error(),
    })
}

fn eval(value: f64, regime: StableRegime) -> Result<StableEvaluation> {
    Ok(StableEvaluation {
        value: value.max(0.0),
        regime,
    })
}

/// L_α^θ(x) with the regime used.
pub fn stable_pdf_traced(p: StableParams, x: f64) -> Result<StableEvaluation> {
    finite("x", x)?;
    let (alpha, theta) = (p.alpha, p.theta);

    if alpha == 2.0 {
        return eval((-0.25 * x * x).exp() / (2.0 * PI.sqrt()), StableRegime::Gaussian);
    }
    if alpha == 1.0 {
        if theta.abs() == 1.0 {
            return Err(Error::DiracLimit {
                what: "stable density with alpha = 1, |theta| = 1",
                location: -theta,
            });
        }
        // reflect first so that L^θ(−x) and L^{−θ}(x) share one code path
        let (x, theta) = if x < 0.0 { (-x, -theta) } else { (x, theta) };
        let c = cos_pi(0.5 * theta);
        let s = sin_pi(0.5 * theta);
        return eval(c / (PI * ((x + s).powi(2) + c * c)), StableRegime::CauchyFamily);
    }
    if alpha == 0.5 && theta.abs() == 0.5 {
        // one-sided Lévy–Smirnov law, on x > 0 for θ = −1/2
        let y = -theta.signum() * x;
        let v = if y <= 0.0 {
            0.0
        } else {
            y.powf(-1.5) * (-0.25 / y).exp() / (2.0 * PI.sqrt())
        };
        return eval(v, StableRegime::LevySmirnovPair);
    }
    if (alpha - 1.0).abs() < NEAR_ONE {
        return Err(Error::Unsupported(
            "stable density for 0 < |alpha - 1| < 1e-4; use alpha = 1 or Monte Carlo",
        ));
    }
    if x < 0.0 {
        return stable_pdf_traced(p.reflected(), -x);
    }
    if x == 0.0 {
        let v = gamma(1.0 + 1.0 / alpha) * cos_pi(0.5 * theta / alpha) / PI;
        return eval(v, StableRegime::OriginClosedForm);
    }

    // |L| ≤ (1/2π)∫|φ(κ)|dκ = Γ(1+1/α) / (π cos(θπ/2)^{1/α}), so the sum
    // π x L(x) is bounded by x times the numerator
    let ceiling = x * gamma(1.0 + 1.0 / alpha) / cos_pi(0.5 * theta).powf(1.0 / alpha);
    if alpha < 1.0 {
        if theta == alpha {
            return eval(0.0, StableRegime::VanishingSide);
        }
        if let Some(s) = power_series(x.powf(-alpha), alpha, 0.5 * (theta - alpha), ceiling) {
            if s.rel_error <= SERIES_ACCEPT {
                return eval(s.value / (PI * x), StableRegime::SeriesSmallAlpha);
            }
        }
    } else {
        if let Some(s) = power_series(x, 1.0 / alpha, 0.5 * (theta - alpha) / alpha, ceiling) {
            if s.rel_error <= SERIES_ACCEPT {
                return eval(s.value / (PI * x), StableRegime::SeriesLargeAlpha);
            }
        }
        if let Some(s) = asymptotic_series(x.powf(-alpha), alpha, 0.5 * (theta - alpha)) {
            if s.rel_error <= TAIL_ACCEPT {
                return eval(s.value / (PI * x), StableRegime::TailAsymptotic);
            }
        }
    }
    eval(
        zolotarev::density(alpha, theta, x, INTEGRAL_RTOL)?,
        StableRegime::Integral,
    )
}

/// Stable density L_α^θ(x).
pub fn stable_pdf(p: StableParams, x: f64) -> Result<f64> {
    stable_pdf_traced(p, x).map(|e| e.value)
}

/// Self-similar density t^{−1/α} L_α^θ(x t^{−1/α}).
pub fn stable_pdf_scaled(p: StableParams, x: f64, t: f64) -> Result<f64> {
    finite("t", t)?;
    if t <= 0.0 {
        return Err(invalid("t", t, "must be positive"));
    }
    if t == 1.0 {
        return stable_pdf(p, x);
    }
    let s = t.powf(-1.0 / p.alpha);
    match stable_pdf(p, x * s) {
        Ok(v) => Ok(s * v),
        Err(Error::DiracLimit { what, location }) => Err(Error::DiracLimit {
            what,
            location: location / s,
        }),
        Err(e) => Err(e),
    }
}
