//! Stable random deviates on reproducible random streams.
//!
//! Two-sided deviates use the Chambers–Mallows–Stuck construction (Weron's
//! form), one-sided deviates Kanter's representation. Both consume one
//! uniform angle and one unit exponential per draw.

use std::f64::consts::PI;

use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{finite, invalid, Error, Result};
use crate::gamma::{cos_pi, sin_pi};
use crate::stable::StableParams;

/// Seeded ChaCha12 stream. Each `(seed, stream_id)` pair selects an
/// independent, platform-independent sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RngStream {
    rng: ChaCha12Rng,
    seed: u64,
    stream_id: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        RngStream { rng, seed, stream_id }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Uniform on the open interval (0, 1): 53 random bits, offset by half
    /// an ulp so that neither 0 nor 1 is produced.
    #[inline]
    pub fn uniform_open(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// Unit-mean exponential deviate.
    #[inline]
    pub fn exponential(&mut self) -> f64 {
        -self.uniform_open().ln()
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }
    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }
    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

/// Stable law in the S1 parameterization of Samorodnitsky and Taqqu:
/// E e^{iκX} = exp(−σ^α |κ|^α (1 − iβ sgn(κ) tan(πα/2))), α ≠ 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CmsParams {
    pub alpha: f64,
    pub beta_skew: f64,
    pub scale: f64,
}

/// Map a Feller pair onto S1: σ^α = cos(θπ/2) and β = −tan(θπ/2)/tan(απ/2).
///
/// For α = 1 only θ = 0 maps (to the standard Cauchy); skewed α = 1 laws are
/// shifted Cauchy laws and are sampled directly by [`StableSampler`].
pub fn feller_to_cms(p: StableParams) -> Result<CmsParams> {
    let (alpha, theta) = (p.alpha(), p.theta());
    if alpha == 1.0 {
        if theta != 0.0 {
            return Err(Error::Unsupported(
                "alpha = 1 with theta != 0 has no S1 image; it is a shifted Cauchy law",
            ));
        }
        return Ok(CmsParams {
            alpha,
            beta_skew: 0.0,
            scale: 1.0,
        });
    }
    let beta_skew = if alpha == 2.0 {
        0.0
    } else {
        let b = -(sin_pi(0.5 * theta) / cos_pi(0.5 * theta)) / (sin_pi(0.5 * alpha) / cos_pi(0.5 * alpha));
        b.clamp(-1.0, 1.0)
    };
    Ok(CmsParams {
        alpha,
        beta_skew,
        scale: cos_pi(0.5 * theta).powf(1.0 / alpha),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    /// Chambers–Mallows–Stuck with shift b = B and prefactor σS.
    Cms { alpha: f64, b: f64, factor: f64 },
    /// Cauchy with location and scale.
    Cauchy { location: f64, scale: f64 },
    /// Dirac mass.
    Point(f64),
}

/// Precomputed two-sided sampler for L_α^θ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StableSampler {
    params: StableParams,
    kind: Kind,
}

impl StableSampler {
    pub fn new(p: StableParams) -> Self {
        let (alpha, theta) = (p.alpha(), p.theta());
        let kind = if alpha == 1.0 {
            if theta.abs() == 1.0 {
                Kind::Point(-theta)
            } else {
                Kind::Cauchy {
                    location: -sin_pi(0.5 * theta),
                    scale: cos_pi(0.5 * theta),
                }
            }
        } else {
            let c = feller_to_cms(p).expect("alpha != 1");
            let zeta = c.beta_skew * (sin_pi(0.5 * alpha) / cos_pi(0.5 * alpha));
            let b = zeta.atan() / alpha;
            let s = (1.0 + zeta * zeta).powf(0.5 / alpha);
            Kind::Cms {
                alpha,
                b,
                factor: c.scale * s,
            }
        };
        StableSampler { params: p, kind }
    }

    pub fn params(&self) -> StableParams {
        self.params
    }

    #[inline]
    pub fn sample(&self, rng: &mut RngStream) -> f64 {
        match self.kind {
            Kind::Cms { alpha, b, factor } => {
                let v = PI * (rng.uniform_open() - 0.5);
                let w = rng.exponential();
                let ab = alpha * (v + b);
                let cv = v.cos();
                factor * ab.sin() / cv.powf(1.0 / alpha) * ((v - ab).cos() / w).powf((1.0 - alpha) / alpha)
            }
            Kind::Cauchy { location, scale } => {
                let v = PI * (rng.uniform_open() - 0.5);
                location + scale * v.tan()
            }
            Kind::Point(x) => x,
        }
    }
}

/// One draw from L_α^θ.
pub fn sample_stable(p: StableParams, rng: &mut RngStream) -> f64 {
    StableSampler::new(p).sample(rng)
}

/// Precomputed sampler for the one-sided law L_β^{−β}, Laplace transform
/// exp(−s^β), 0 < β < 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneSidedSampler {
    beta: f64,
}

impl OneSidedSampler {
    pub fn new(beta: f64) -> Result<Self> {
        finite("beta", beta)?;
        if !(beta > 0.0 && beta < 1.0) {
            return Err(invalid("beta", beta, "must lie in (0, 1)"));
        }
        Ok(OneSidedSampler { beta })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Kanter: T = (A(U)/W)^{(1−β)/β}, U uniform on (0, π), with
    /// A(u) = (sin βu / sin u)^{1/(1−β)} sin((1−β)u) / sin βu.
    #[inline]
    pub fn sample(&self, rng: &mut RngStream) -> f64 {
        let b = self.beta;
        let u = PI * rng.uniform_open();
        let w = rng.exponential();
        let sbu = (b * u).sin();
        let ln_a = (sbu / u.sin()).ln() / (1.0 - b) + (((1.0 - b) * u).sin() / sbu).ln();
        ((ln_a - w.ln()) * (1.0 - b) / b).exp()
    }
}

/// One draw from the one-sided law with Laplace transform exp(−s^β).
pub fn sample_one_sided(beta: f64, rng: &mut RngStream) -> Result<f64> {
    Ok(OneSidedSampler::new(beta)?.sample(rng))
}

/// Which increments of a parametric-subordination walk to draw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Increments {
    /// Waiting times τ T_k, τ = τ_*^{1/β}; β = 1 gives the constant τ_*.
    Waiting { beta: f64 },
    /// Jumps h X_k, h = τ_*^{1/α}.
    Jumps(StableParams),
}

/// n i.i.d. increments for operational step `tau_star`. The steps satisfy
/// τ^β = h^α = τ_*.
pub fn sample_scaled_increments(kind: Increments, tau_star: f64, n: usize, rng: &mut RngStream) -> Result<Vec<f64>> {
    finite("tau_star", tau_star)?;
    if tau_star <= 0.0 {
        return Err(invalid("tau_star", tau_star, "must be positive"));
    }
    if n == 0 {
        return Err(invalid("n", 0.0, "must be at least 1"));
    }
    match kind {
        Increments::Waiting { beta } => {
            if beta == 1.0 {
                return Ok(vec![tau_star; n]);
            }
            let s = OneSidedSampler::new(beta)?;
            let tau = tau_star.powf(1.0 / beta);
            Ok((0..n).map(|_| tau * s.sample(rng)).collect())
        }
        Increments::Jumps(p) => {
            let s = StableSampler::new(p);
            let h = tau_star.powf(1.0 / p.alpha());
            Ok((0..n).map(|_| h * s.sample(rng)).collect())
        }
    }
}
