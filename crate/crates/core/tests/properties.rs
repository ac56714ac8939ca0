use fracsub::gamma::rgamma;
use fracsub::sampling::{feller_to_cms, RngStream, StableSampler};
use fracsub::specfun::*;
use fracsub::stable::*;
use fracsub::stats::ks_statistic;
use fracsub::subordination::{sinh_grid, DiffusionParams};
use fracsub::walker::*;
use proptest::prelude::*;

/// Interior of the diamond, away from the refused band around α = 1.
fn diamond() -> impl Strategy<Value = (f64, f64)> {
    (0.05f64..2.0, -1.0f64..1.0)
        .prop_filter("near alpha = 1", |(a, _)| (a - 1.0).abs() > 1e-3)
        .prop_map(|(a, u)| (a, u * a.min(2.0 - a)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn diamond_membership(a in 0.01f64..2.0, t in -2.0f64..2.0) {
        let inside = t.abs() <= a.min(2.0 - a);
        prop_assert_eq!(validate_params(a, t).is_ok(), inside);
    }

    #[test]
    fn density_symmetry_and_sign((a, t) in diamond(), x in 0.01f64..30.0) {
        let p = validate_params(a, t).unwrap();
        let v = stable_pdf(p, x).unwrap();
        prop_assert!(v.is_finite() && v >= 0.0);
        prop_assert_eq!(stable_pdf(p, -x).unwrap(), stable_pdf(p.reflected(), x).unwrap());
    }

    #[test]
    fn density_is_bounded_by_cf_integral((a, t) in diamond(), x in -30.0f64..30.0) {
        let p = validate_params(a, t).unwrap();
        let bound = fracsub::gamma::gamma(1.0 + 1.0 / a)
            / (std::f64::consts::PI * fracsub::gamma::cos_pi(0.5 * t).powf(1.0 / a));
        prop_assert!(stable_pdf(p, x).unwrap() <= bound * (1.0 + 1e-9));
    }

    #[test]
    fn cf_is_hermitian_and_contractive((a, t) in diamond(), k in -20.0f64..20.0) {
        let p = validate_params(a, t).unwrap();
        let c = stable_cf(p, k).unwrap();
        prop_assert!(c.norm() <= 1.0 + 1e-15);
        let d = stable_cf(p, -k).unwrap();
        prop_assert!((c - d.conj()).norm() < 1e-15);
    }

    #[test]
    fn cms_skewness_in_range((a, t) in diamond()) {
        let c = feller_to_cms(validate_params(a, t).unwrap()).unwrap();
        prop_assert!((-1.0..=1.0).contains(&c.beta_skew));
        prop_assert!(c.scale > 0.0 && c.scale <= 1.0);
    }

    #[test]
    fn extremal_samples_respect_support(a in 0.1f64..0.99, seed in any::<u64>()) {
        let s = StableSampler::new(validate_params(a, -a).unwrap());
        let mut rng = RngStream::new(seed, 0);
        for _ in 0..200 {
            prop_assert!(s.sample(&mut rng) > 0.0);
        }
    }

    #[test]
    fn uniforms_are_open(seed in any::<u64>(), id in any::<u64>()) {
        let mut r = RngStream::new(seed, id);
        for _ in 0..1000 {
            let u = r.uniform_open();
            prop_assert!(u > 0.0 && u < 1.0);
        }
    }

    #[test]
    fn ml_at_origin(a in 0.1f64..3.0, b in 0.1f64..3.0) {
        let p = MlParams::new(a, b).unwrap();
        prop_assert!((mittag_leffler(p, 0.0).unwrap() - rgamma(b)).abs() < 1e-14);
    }

    #[test]
    fn ml_duplication(a in 0.3f64..1.5, b in 0.5f64..1.5, z in 0.05f64..2.5) {
        let e = |a: f64, z: f64| mittag_leffler(MlParams::new(a, b).unwrap(), z).unwrap();
        let lhs = e(a, z) + e(a, -z);
        let rhs = 2.0 * e(2.0 * a, z * z);
        prop_assert!((lhs - rhs).abs() <= 1e-9 * rhs.abs().max(1e-3));
    }

    #[test]
    fn relaxation_is_completely_monotone_surrogate(b in 0.1f64..1.0, t in 0.001f64..100.0) {
        let p = MlParams::classic(b).unwrap();
        let e0 = mittag_leffler(p, -t.powf(b)).unwrap();
        let e1 = mittag_leffler(p, -(1.01 * t).powf(b)).unwrap();
        prop_assert!(e0 > 0.0 && e1 < e0);
    }

    #[test]
    fn wright_pair(nu in 0.05f64..0.95, z in 0.0f64..6.0) {
        let w = WrightOrder::new(nu).unwrap();
        let m = wright_m(w, z).unwrap();
        prop_assert!(m >= 0.0 && m.is_finite());
        prop_assert_eq!(wright_f(w, z).unwrap(), nu * z * m);
    }

    #[test]
    fn walks_are_well_formed(
        (a, t) in diamond(),
        b in 0.1f64..=1.0,
        tau_star in 0.001f64..2.0,
        n in 1u64..300,
        seed in any::<u64>(),
    ) {
        let p = DiffusionParams::new(a, t, b).unwrap();
        let c = WalkConfig::new(p, tau_star, n, seed, 0).unwrap();
        let path = simulate_walk(&c).unwrap();
        prop_assert_eq!(path.len() as u64, n + 1);
        prop_assert_eq!(path.snapshots[0], Snapshot { n: 0, t_star: 0.0, t: 0.0, x: 0.0 });
        prop_assert!(path.snapshots.windows(2).all(|w| w[1].t >= w[0].t && w[1].t_star > w[0].t_star));
        prop_assert!(path.snapshots.iter().all(|s| s.t.is_finite() && s.x.is_finite()));
        prop_assert_eq!(&simulate_walk(&c).unwrap(), &path);
        for kind in [PathKind::Leading, PathKind::Directing] {
            prop_assert!(lint_polyline(&step_polyline(&path, kind), true).ok());
        }
        for kind in [PathKind::Parent, PathKind::Subordinated] {
            prop_assert!(lint_polyline(&step_polyline(&path, kind), false).ok());
        }
        let r = c.refine(7).unwrap();
        prop_assert!((r.horizon() - c.horizon()).abs() <= 1e-12 * c.horizon());
    }

    #[test]
    fn held_position_is_a_snapshot(seed in any::<u64>(), frac in 0.0f64..1.0) {
        let p = DiffusionParams::new(1.5, 0.0, 0.7).unwrap();
        let path = simulate_walk(&WalkConfig::new(p, 0.05, 100, seed, 0).unwrap()).unwrap();
        let t = frac * path.horizon();
        let x = sample_position_at(&path, t).unwrap();
        let last = path.snapshots.iter().rev().find(|s| s.t <= t).unwrap();
        prop_assert_eq!(x, last.x);
    }

    #[test]
    fn sinh_grids_are_symmetric(half in 1usize..400, w in 0.1f64..1e4, c in 0.5f64..12.0) {
        let n = 2 * half + 1;
        let xs = sinh_grid(n, w, c);
        prop_assert!(xs.windows(2).all(|p| p[1] > p[0]));
        prop_assert!(xs.iter().zip(xs.iter().rev()).all(|(a, b)| *a == -*b));
    }

    #[test]
    fn ks_statistic_in_unit_interval(mut xs in prop::collection::vec(-5.0f64..5.0, 1..200)) {
        let d = ks_statistic(&mut xs, |x| 0.5 + 0.5 * (x / 5.0));
        prop_assert!((0.0..=1.0).contains(&d));
    }
}
