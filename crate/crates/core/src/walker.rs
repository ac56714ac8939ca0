//! Parametric-subordination random walks.
//!
//! On the operational grid t_{*,n} = nτ_* two independent walks are run:
//! physical time t̄_n = Σ τ T_k with T_k one-sided β-stable, and position
//! x̄_n = Σ h X_k with X_k two-sided (α, θ)-stable, where τ = τ_*^{1/β} and
//! h = τ_*^{1/α}. Each pair (t̄_n, x̄_n) is an exact snapshot of the
//! subordinated process; between snapshots the particle is held in place.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{finite, invalid, Error, Result};
use crate::sampling::{OneSidedSampler, RngStream, StableSampler};
use crate::subordination::DiffusionParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WalkConfig {
    pub params: DiffusionParams,
    pub tau_star: f64,
    pub n_steps: u64,
    pub seed: u64,
    pub trajectory_id: u64,
}

impl WalkConfig {
    pub fn new(params: DiffusionParams, tau_star: f64, n_steps: u64, seed: u64, trajectory_id: u64) -> Result<Self> {
        let cfg = WalkConfig {
            params,
            tau_star,
            n_steps,
            seed,
            trajectory_id,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        finite("tau_star", self.tau_star)?;
        if self.tau_star <= 0.0 {
            return Err(invalid("tau_star", self.tau_star, "must be positive"));
        }
        if self.n_steps == 0 {
            return Err(invalid("n_steps", 0.0, "must be at least 1"));
        }
        Ok(())
    }

    /// Physical time step τ = τ_*^{1/β}.
    pub fn tau(&self) -> f64 {
        self.tau_star.powf(1.0 / self.params.beta())
    }

    /// Space step h = τ_*^{1/α}.
    pub fn h(&self) -> f64 {
        self.tau_star.powf(1.0 / self.params.alpha())
    }

    /// Operational horizon N τ_*.
    pub fn horizon(&self) -> f64 {
        self.n_steps as f64 * self.tau_star
    }

    /// Same horizon with τ_*/factor and N·factor: finer details of a path
    /// of the same process (a fresh realization, not a sub-sampling).
    pub fn refine(&self, factor: u64) -> Result<Self> {
        if factor == 0 {
            return Err(invalid("factor", 0.0, "must be at least 1"));
        }
        let n_steps = self.n_steps.checked_mul(factor).ok_or(Error::StepOverflow(u64::MAX))?;
        Ok(WalkConfig {
            tau_star: self.tau_star / factor as f64,
            n_steps,
            ..*self
        })
    }
}

/// Free-function form of [`WalkConfig::refine`].
pub fn refine(cfg: &WalkConfig, factor: u64) -> Result<WalkConfig> {
    cfg.refine(factor)
}

/// State after n operational steps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub n: u64,
    pub t_star: f64,
    pub t: f64,
    pub x: f64,
}

/// Snapshots 0..=N of one trajectory; snapshot 0 is the origin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WalkPath {
    pub tau_star: f64,
    pub snapshots: Vec<Snapshot>,
}

impl WalkPath {
    pub fn len(&self) -> usize {
        self.snapshots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snapshots.is_empty()
    }

    /// Last physical time reached.
    pub fn horizon(&self) -> f64 {
        self.snapshots.last().map_or(0.0, |s| s.t)
    }

    /// Every `stride`-th snapshot plus the last one, for output only.
    pub fn thinned(&self, stride: usize) -> WalkPath {
        let stride = stride.max(1);
        let mut snapshots: Vec<Snapshot> = self.snapshots.iter().step_by(stride).copied().collect();
        if let Some(last) = self.snapshots.last() {
            if snapshots.last() != Some(last) {
                snapshots.push(*last);
            }
        }
        WalkPath {
            tau_star: self.tau_star,
            snapshots,
        }
    }
}

/// Incremental simulator of one trajectory. Each step draws the waiting
/// increment first, then the jump, from the trajectory's own stream.
#[derive(Debug, Clone)]
pub struct Walker {
    rng: RngStream,
    waiting: Option<OneSidedSampler>,
    jumps: StableSampler,
    tau_star: f64,
    tau: f64,
    h: f64,
    state: Snapshot,
}

impl Walker {
    pub fn new(cfg: &WalkConfig) -> Result<Self> {
        cfg.validate()?;
        let beta = cfg.params.beta();
        let waiting = if beta == 1.0 {
            // deterministic drift t̄_n = nτ_*
            None
        } else {
            Some(OneSidedSampler::new(beta)?)
        };
        Ok(Walker {
            rng: RngStream::new(cfg.seed, cfg.trajectory_id),
            waiting,
            jumps: StableSampler::new(cfg.params.stable()),
            tau_star: cfg.tau_star,
            tau: cfg.tau(),
            h: cfg.h(),
            state: Snapshot {
                n: 0,
                t_star: 0.0,
                t: 0.0,
                x: 0.0,
            },
        })
    }

    pub fn current(&self) -> Snapshot {
        self.state
    }

    /// Advance one operational step.
    #[inline]
    pub fn step(&mut self) -> Snapshot {
        let dt = match &self.waiting {
            Some(s) => self.tau * s.sample(&mut self.rng),
            None => self.tau_star,
        };
        let dx = self.h * self.jumps.sample(&mut self.rng);
        let n = self.state.n + 1;
        self.state = Snapshot {
            n,
            t_star: n as f64 * self.tau_star,
            t: self.state.t + dt,
            x: self.state.x + dx,
        };
        self.state
    }
}

/// Simulate N steps of one trajectory.
pub fn simulate_walk(cfg: &WalkConfig) -> Result<WalkPath> {
    let mut w = Walker::new(cfg)?;
    let cap = usize::try_from(cfg.n_steps)
        .ok()
        .and_then(|n| n.checked_add(1))
        .ok_or(Error::StepOverflow(cfg.n_steps))?;
    let mut snapshots = Vec::with_capacity(cap);
    snapshots.push(w.current());
    for _ in 0..cfg.n_steps {
        snapshots.push(w.step());
    }
    Ok(WalkPath {
        tau_star: cfg.tau_star,
        snapshots,
    })
}

/// Simulate trajectories `0..n_paths` (stream id = trajectory id) on a pool
/// of `workers` threads. The result does not depend on `workers`.
pub fn simulate_ensemble(template: &WalkConfig, n_paths: u64, workers: usize) -> Result<Vec<WalkPath>> {
    template.validate()?;
    let base = template.trajectory_id;
    with_pool(workers, || {
        (0..n_paths)
            .into_par_iter()
            .map(|i| {
                simulate_walk(&WalkConfig {
                    trajectory_id: base + i,
                    ..*template
                })
            })
            .collect()
    })?
}

fn with_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|_| Error::Unsupported("could not start worker threads"))?;
    Ok(pool.install(f))
}

/// Position at physical time `t_obs`: x̄_n for the largest n with t̄_n ≤ t_obs.
pub fn sample_position_at(path: &WalkPath, t_obs: f64) -> Result<f64> {
    finite("t_obs", t_obs)?;
    if t_obs < 0.0 {
        return Err(invalid("t_obs", t_obs, "must be nonnegative"));
    }
    let first = path.snapshots.first().ok_or(Error::EmptyPath)?;
    let horizon = path.horizon();
    if t_obs > horizon {
        return Err(Error::Censored { t_obs, horizon });
    }
    if t_obs < first.t {
        return Ok(first.x);
    }
    let i = path.snapshots.partition_point(|s| s.t <= t_obs) - 1;
    Ok(path.snapshots[i].x)
}

/// Position at `t_obs` of trajectory `trajectory_id`, simulated for as many
/// steps as needed: the walk runs until the first t̄_{n+1} > t_obs, so the
/// observation is never censored.
pub fn position_at(params: DiffusionParams, tau_star: f64, t_obs: f64, seed: u64, trajectory_id: u64) -> Result<f64> {
    finite("t_obs", t_obs)?;
    if t_obs < 0.0 {
        return Err(invalid("t_obs", t_obs, "must be nonnegative"));
    }
    let cfg = WalkConfig::new(params, tau_star, 1, seed, trajectory_id)?;
    let mut w = Walker::new(&cfg)?;
    let mut x = 0.0;
    loop {
        let s = w.step();
        if s.t > t_obs {
            return Ok(x);
        }
        x = s.x;
        if s.n == u64::MAX {
            return Err(Error::StepOverflow(s.n));
        }
    }
}

/// Marginal sample x(t_obs) over trajectories `0..n_paths`.
pub fn ensemble_positions(
    params: DiffusionParams,
    tau_star: f64,
    t_obs: f64,
    n_paths: u64,
    seed: u64,
    workers: usize,
) -> Result<Vec<f64>> {
    with_pool(workers, || {
        (0..n_paths)
            .into_par_iter()
            .map(|i| position_at(params, tau_star, t_obs, seed, i))
            .collect()
    })?
}

/// The directing walk t_*(t), the inverse of the leading walk: right-
/// continuous and piecewise constant, t_*(t) = nτ_* on [t̄_n, t̄_{n+1}).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectingPath {
    /// Jump instants t̄_n.
    pub times: Vec<f64>,
    /// Operational time nτ_* from each jump instant on.
    pub t_stars: Vec<f64>,
}

impl DirectingPath {
    /// t_*(t) for 0 ≤ t ≤ last jump instant.
    pub fn eval(&self, t: f64) -> Result<f64> {
        finite("t", t)?;
        if self.times.is_empty() {
            return Err(Error::EmptyPath);
        }
        if t < self.times[0] {
            return Err(invalid("t", t, "before the start of the path"));
        }
        let i = self.times.partition_point(|&s| s <= t) - 1;
        Ok(self.t_stars[i])
    }
}

/// Swap the roles of the axes of the leading walk.
pub fn invert_leading(path: &WalkPath) -> Result<DirectingPath> {
    if path.is_empty() {
        return Err(Error::EmptyPath);
    }
    Ok(DirectingPath {
        times: path.snapshots.iter().map(|s| s.t).collect(),
        t_stars: path.snapshots.iter().map(|s| s.t_star).collect(),
    })
}

/// Which of the four walks a polyline draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathKind {
    /// t̄ against t_*.
    Leading,
    /// x̄ against t_*.
    Parent,
    /// t_* against t̄.
    Directing,
    /// x̄ against t̄.
    Subordinated,
}

/// Step-function polyline: from each point a horizontal segment to the next
/// abscissa, then a vertical segment to the next ordinate. N steps give
/// 2N + 1 points.
pub fn step_polyline(path: &WalkPath, kind: PathKind) -> Vec<(f64, f64)> {
    let coords = |s: &Snapshot| match kind {
        PathKind::Leading => (s.t_star, s.t),
        PathKind::Parent => (s.t_star, s.x),
        PathKind::Directing => (s.t, s.t_star),
        PathKind::Subordinated => (s.t, s.x),
    };
    let mut out = Vec::with_capacity(2 * path.len());
    let mut iter = path.snapshots.iter().map(coords);
    let Some(mut prev) = iter.next() else {
        return out;
    };
    out.push(prev);
    for cur in iter {
        out.push((cur.0, prev.1));
        out.push(cur);
        prev = cur;
    }
    out
}

/// Structural statistics of a step-function polyline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LintReport {
    pub points: usize,
    pub horizontal_segments: usize,
    pub vertical_segments: usize,
    pub abscissa_monotone: bool,
    pub ordinate_monotone: bool,
    pub longest_horizontal: f64,
    pub largest_vertical: f64,
    /// Largest vertical jump over the median nonzero one; large for
    /// heavy-tailed jumps.
    pub jump_ratio: f64,
    /// Longest horizontal segment over the median one.
    pub wait_ratio: f64,
    pub errors: Vec<String>,
}

impl LintReport {
    pub fn ok(&self) -> bool {
        self.errors.is_empty()
    }
}

/// Check the alternating horizontal/vertical structure of a polyline.
/// `monotone_ordinate` additionally requires non-decreasing ordinates, as
/// for leading and directing walks.
pub fn lint_polyline(points: &[(f64, f64)], monotone_ordinate: bool) -> LintReport {
    let mut errors = Vec::new();
    if points.is_empty() {
        errors.push("no points".to_string());
    } else if points.len().is_multiple_of(2) {
        errors.push(format!("{} points; a step polyline has an odd count", points.len()));
    }
    let mut horiz = Vec::new();
    let mut vert = Vec::new();
    let mut abscissa_monotone = true;
    let mut ordinate_monotone = true;
    for (i, w) in points.windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        if !(a.0.is_finite() && a.1.is_finite() && b.0.is_finite() && b.1.is_finite()) {
            errors.push(format!("non-finite point near index {i}"));
            continue;
        }
        if b.0 < a.0 {
            abscissa_monotone = false;
        }
        if b.1 < a.1 {
            ordinate_monotone = false;
        }
        if i % 2 == 0 {
            if a.1 != b.1 {
                errors.push(format!("segment {i} should be horizontal"));
            }
            horiz.push(b.0 - a.0);
        } else {
            if a.0 != b.0 {
                errors.push(format!("segment {i} should be vertical"));
            }
            vert.push((b.1 - a.1).abs());
        }
        if errors.len() > 20 {
            errors.push("further errors suppressed".to_string());
            break;
        }
    }
    if !abscissa_monotone {
        errors.push("abscissa decreases".to_string());
    }
    if monotone_ordinate && !ordinate_monotone {
        errors.push("ordinate decreases".to_string());
    }
    let max = |v: &[f64]| v.iter().copied().fold(0.0, f64::max);
    let ratio = |v: &[f64]| {
        let mut nz: Vec<f64> = v.iter().copied().filter(|&d| d > 0.0).collect();
        if nz.is_empty() {
            return 0.0;
        }
        nz.sort_by(f64::total_cmp);
        let med = nz[nz.len() / 2];
        nz[nz.len() - 1] / med
    };
    LintReport {
        points: points.len(),
        horizontal_segments: horiz.len(),
        vertical_segments: vert.len(),
        abscissa_monotone,
        ordinate_monotone,
        longest_horizontal: max(&horiz),
        largest_vertical: max(&vert),
        jump_ratio: ratio(&vert),
        wait_ratio: ratio(&horiz),
        errors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(beta: f64, n: u64) -> WalkConfig {
        let p = DiffusionParams::new(1.5, 0.0, beta).unwrap();
        WalkConfig::new(p, 0.5, n, 11, 2).unwrap()
    }

    #[test]
    fn steps_satisfy_scaling() {
        let c = cfg(0.8, 1);
        let (a, b) = (c.params.alpha(), c.params.beta());
        assert!((c.tau().powf(b) / c.h().powf(a) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn path_shape_and_determinism() {
        let c = cfg(0.8, 200);
        let p = simulate_walk(&c).unwrap();
        assert_eq!(p.len(), 201);
        assert_eq!(
            p.snapshots[0],
            Snapshot {
                n: 0,
                t_star: 0.0,
                t: 0.0,
                x: 0.0
            }
        );
        assert!(p
            .snapshots
            .windows(2)
            .all(|w| w[1].t > w[0].t && w[1].t_star > w[0].t_star));
        assert_eq!(simulate_walk(&c).unwrap(), p);
    }

    #[test]
    fn unit_beta_is_a_drift() {
        let p = simulate_walk(&cfg(1.0, 10)).unwrap();
        for s in &p.snapshots {
            assert_eq!(s.t, s.t_star);
        }
    }

    #[test]
    fn hold_convention() {
        let p = simulate_walk(&cfg(0.8, 10)).unwrap();
        assert_eq!(sample_position_at(&p, 0.0).unwrap(), 0.0);
        let s = &p.snapshots;
        let mid = 0.5 * (s[3].t + s[4].t);
        assert_eq!(sample_position_at(&p, mid).unwrap(), s[3].x);
        assert!(matches!(
            sample_position_at(&p, p.horizon() * 2.0),
            Err(Error::Censored { .. })
        ));
    }

    #[test]
    fn streaming_position_matches_stored_path() {
        let c = cfg(0.8, 400);
        let p = simulate_walk(&c).unwrap();
        let t_obs = 0.5 * p.horizon();
        let x = position_at(c.params, c.tau_star, t_obs, c.seed, c.trajectory_id).unwrap();
        assert_eq!(x, sample_position_at(&p, t_obs).unwrap());
    }

    #[test]
    fn inversion() {
        let p = simulate_walk(&cfg(0.7, 50)).unwrap();
        let d = invert_leading(&p).unwrap();
        for (i, s) in p.snapshots.iter().enumerate() {
            assert_eq!(d.eval(s.t).unwrap(), s.t_star);
            if i + 1 < p.len() {
                let t = 0.5 * (s.t + p.snapshots[i + 1].t);
                assert_eq!(d.eval(t).unwrap(), s.t_star);
            }
        }
    }

    #[test]
    fn refinement_keeps_horizon() {
        let c = WalkConfig::new(DiffusionParams::new(2.0, 0.0, 0.8).unwrap(), 1.0, 10, 0, 0).unwrap();
        let r = c.refine(10).unwrap();
        assert_eq!((r.tau_star, r.n_steps), (0.1, 100));
        assert_eq!(c.refine(1).unwrap(), c);
        assert!(c.refine(u64::MAX).is_err());
    }

    #[test]
    fn polylines_pass_lint() {
        let p = simulate_walk(&cfg(0.8, 100)).unwrap();
        for (kind, mono) in [
            (PathKind::Leading, true),
            (PathKind::Directing, true),
            (PathKind::Parent, false),
            (PathKind::Subordinated, false),
        ] {
            let pl = step_polyline(&p, kind);
            assert_eq!(pl.len(), 201);
            let r = lint_polyline(&pl, mono);
            assert!(r.ok(), "{kind:?}: {:?}", r.errors);
        }
        let mut bad = step_polyline(&p, PathKind::Subordinated);
        bad[1].1 += 1.0;
        assert!(!lint_polyline(&bad, false).ok());
    }

    #[test]
    fn workers_do_not_change_results() {
        let c = cfg(0.9, 30);
        let a = simulate_ensemble(&c, 16, 1).unwrap();
        let b = simulate_ensemble(&c, 16, 4).unwrap();
        assert_eq!(a, b);
        let p = c.params;
        let x1 = ensemble_positions(p, 0.01, 1.0, 32, 5, 1).unwrap();
        let x4 = ensemble_positions(p, 0.01, 1.0, 32, 5, 4).unwrap();
        assert_eq!(x1, x4);
    }
}
