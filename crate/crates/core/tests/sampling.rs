use fracsub::sampling::*;
use fracsub::stable::{stable_cf, stable_pdf, validate_params, StableParams};
use fracsub::stats::{empirical_cf, ks_two_sample, ks_two_sample_critical_1pct, median};

const N: usize = 100_000;

fn sp(a: f64, t: f64) -> StableParams {
    validate_params(a, t).unwrap()
}

fn draws(p: StableParams, n: usize, seed: u64) -> Vec<f64> {
    let s = StableSampler::new(p);
    let mut rng = RngStream::new(seed, 0);
    (0..n).map(|_| s.sample(&mut rng)).collect()
}

fn one_sided(beta: f64, n: usize, seed: u64) -> Vec<f64> {
    let s = OneSidedSampler::new(beta).unwrap();
    let mut rng = RngStream::new(seed, 0);
    (0..n).map(|_| s.sample(&mut rng)).collect()
}

// median of the Lévy–Smirnov law: erfc(1/(2√x)) = 1/2
const LEVY_SMIRNOV_MEDIAN: f64 = 1.099_054_669_158_866_2;

#[test]
fn deterministic_streams() {
    let p = sp(1.5, -0.3);
    assert_eq!(draws(p, 1000, 9), draws(p, 1000, 9));
    assert_ne!(draws(p, 1000, 9), draws(p, 1000, 10));
    let a: Vec<f64> = one_sided(0.6, 1000, 3);
    assert_eq!(a, one_sided(0.6, 1000, 3));
}

#[test]
fn conversion_examples() {
    let g = feller_to_cms(sp(2.0, 0.0)).unwrap();
    assert_eq!((g.alpha, g.beta_skew, g.scale), (2.0, 0.0, 1.0));
    let c = feller_to_cms(sp(1.0, 0.0)).unwrap();
    assert_eq!((c.alpha, c.beta_skew, c.scale), (1.0, 0.0, 1.0));
    let l = feller_to_cms(sp(0.5, -0.5)).unwrap();
    assert_eq!(l.beta_skew, 1.0);
    assert!(draws(sp(0.5, -0.5), N, 1).iter().all(|&x| x > 0.0));
    assert!(draws(sp(0.7, 0.7), N, 1).iter().all(|&x| x < 0.0));
    assert!(feller_to_cms(sp(1.0, 0.3)).is_err());
}

#[test]
fn location_examples() {
    let xs = draws(sp(2.0, 0.0), N, 5);
    let mean = xs.iter().sum::<f64>() / N as f64;
    assert!(mean.abs() < 5.0 * 2f64.sqrt() / (N as f64).sqrt());
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (N - 1) as f64;
    assert!((var - 2.0).abs() < 0.05);
    let mut xs = draws(sp(1.0, 0.0), N, 6);
    assert!(median(&mut xs).abs() < 0.02);
}

#[test]
fn characteristic_functions() {
    let band = 4.0 / (N as f64).sqrt();
    for (a, t) in [(1.5, 0.0), (1.5, -0.5), (0.7, -0.7), (2.0, 0.0), (1.0, 0.5), (0.9, 0.3)] {
        let p = sp(a, t);
        let xs = draws(p, N, 11);
        for k in [0.5, 1.0, 2.0] {
            let d = (empirical_cf(&xs, k) - stable_cf(p, k).unwrap()).norm();
            assert!(d < band, "α={a} θ={t} κ={k}: {d}");
        }
    }
    let xs = draws(sp(1.5, 0.0), N, 12);
    let d = (empirical_cf(&xs, 1.0).re - (-1.0f64).exp()).abs();
    assert!(d < 3.0 / (N as f64).sqrt());
}

#[test]
fn one_sided_examples() {
    let mut ts = one_sided(0.5, N, 21);
    assert!(ts.iter().all(|&t| t > 0.0));
    assert!((median(&mut ts) - LEVY_SMIRNOV_MEDIAN).abs() < 0.03);
    let ts = one_sided(0.8, N, 22);
    let lt = ts.iter().map(|t| (-t).exp()).sum::<f64>() / N as f64;
    assert!((lt - (-1.0f64).exp()).abs() < 3.0 / (N as f64).sqrt());
    assert!(OneSidedSampler::new(1.0).is_err());
    assert!(OneSidedSampler::new(0.0).is_err());
}

#[test]
fn one_sided_positivity() {
    for b in [0.3, 0.5, 0.9] {
        assert!(one_sided(b, 1_000_000, 31).iter().all(|&t| t > 0.0 && t.is_finite()));
    }
}

#[test]
fn infinite_divisibility() {
    for a in [0.8, 1.5, 2.0] {
        let p = sp(a, 0.0);
        let s = StableSampler::new(p);
        let mut rng = RngStream::new(41, 0);
        let mut whole: Vec<f64> = (0..N).map(|_| s.sample(&mut rng)).collect();
        let mut rng = RngStream::new(41, 1);
        let h = 0.25f64.powf(1.0 / a);
        let mut parts: Vec<f64> = (0..N)
            .map(|_| h * (0..4).map(|_| s.sample(&mut rng)).sum::<f64>())
            .collect();
        let d = ks_two_sample(&mut whole, &mut parts);
        assert!(d < ks_two_sample_critical_1pct(N, N), "α={a}: {d}");
    }
}

#[test]
fn histogram_matches_density() {
    let n = 1_000_000;
    for (a, t) in [(1.5, 0.0), (1.2, -0.6), (0.8, 0.4), (1.0, 0.5), (0.6, -0.6)] {
        let p = sp(a, t);
        let mut xs = draws(p, n, 51);
        xs.sort_by(f64::total_cmp);
        let q = |f: f64| xs[(f * (n - 1) as f64) as usize];
        let (lo, hi) = (q(0.01), q(0.99));
        let iqr = q(0.75) - q(0.25);
        let width = 2.0 * iqr / (n as f64).cbrt();
        let bins = ((hi - lo) / width).ceil() as usize;
        let width = (hi - lo) / bins as f64;
        let mut counts = vec![0usize; bins];
        let start = xs.partition_point(|&x| x < lo);
        for &x in &xs[start..] {
            if x >= hi {
                break;
            }
            counts[(((x - lo) / width) as usize).min(bins - 1)] += 1;
        }
        let f = |x: f64| stable_pdf(p, x).unwrap();
        let mut good = 0;
        for (i, &c) in counts.iter().enumerate() {
            let a0 = lo + i as f64 * width;
            let pr = width / 6.0 * (f(a0) + 4.0 * f(a0 + 0.5 * width) + f(a0 + width));
            let expect = n as f64 * pr;
            let se = (expect * (1.0 - pr)).sqrt().max(1.0);
            if (c as f64 - expect).abs() < 5.0 * se {
                good += 1;
            }
        }
        assert!(good as f64 >= 0.95 * bins as f64, "α={a} θ={t}: {good}/{bins}");
    }
}

#[test]
fn scaled_increments() {
    let mut a = RngStream::new(1, 0);
    let mut b = RngStream::new(1, 0);
    let inc = sample_scaled_increments(Increments::Waiting { beta: 0.5 }, 0.01, 1, &mut a).unwrap();
    let raw = sample_one_sided(0.5, &mut b).unwrap();
    assert!((inc[0] - 1e-4 * raw).abs() <= 1e-18 * raw);

    let p = sp(2.0, 0.0);
    let mut rng = RngStream::new(2, 0);
    let xs = sample_scaled_increments(Increments::Jumps(p), 0.25, N, &mut rng).unwrap();
    let sd = (xs.iter().map(|x| x * x).sum::<f64>() / N as f64).sqrt();
    assert!((sd - 0.5 * 2f64.sqrt()).abs() < 0.01);

    let p = sp(1.5, 0.0);
    let (mut a, mut b) = (RngStream::new(3, 0), RngStream::new(3, 0));
    let xs = sample_scaled_increments(Increments::Jumps(p), 1.0, 10, &mut a).unwrap();
    let ys: Vec<f64> = (0..10).map(|_| sample_stable(p, &mut b)).collect();
    assert_eq!(xs, ys);

    let mut rng = RngStream::new(4, 0);
    assert!(sample_scaled_increments(Increments::Waiting { beta: 0.5 }, 0.0, 1, &mut rng).is_err());
    assert_eq!(
        sample_scaled_increments(Increments::Waiting { beta: 1.0 }, 0.3, 3, &mut rng).unwrap(),
        vec![0.3; 3]
    );
}
