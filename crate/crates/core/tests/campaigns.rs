use misodof::channel::ChannelRealization;
use misodof::decoding::{zf_rate, zf_report, zf_sinr};
use misodof::dof_lab::{expected_rate_slope, fit_dof, verify_decodability, SLOPE_TOLERANCE};
use misodof::numerics::Float;
use misodof::scheme_core::{run_scheme, LinearScheme, Transcript};
use misodof::schemes::{self, BuiltinScheme};
use misodof::Error;
use num_rational::Rational64;

fn float_run<S: LinearScheme>(s: &S, seed: u64) -> Transcript<Float> {
    let d = s.descriptor();
    let real = ChannelRealization::<Float>::draw(seed, d.antennas, d.receivers, d.slots).unwrap();
    run_scheme(s, &real, &d.csit).unwrap()
}

#[test]
fn injected_degeneracy_fails_only_the_first_trial() {
    for s in [BuiltinScheme::Pd22(schemes::pd22()), BuiltinScheme::Pdd23(schemes::pdd23())] {
        let rep = verify_decodability(&s, 4, 0, true).unwrap();
        assert!(!rep.all_passed(), "{}", rep.scheme);
        assert_eq!(rep.passed, 3);
        let f = rep.first_failure().unwrap();
        assert_eq!(f.seed, 0);
        assert!(f.receiver.is_some());
        assert!(!f.missing.is_empty());
    }
}

#[test]
fn verification_is_clean_without_injection() {
    let rep = verify_decodability(&schemes::pdd33(), 5, 40, false).unwrap();
    assert!(rep.all_passed(), "{:?}", rep.first_failure());
}

#[test]
fn sweep_output_is_identical_across_runs_and_pool_sizes() {
    let s = schemes::pdd23();
    let grid = [1e3, 1e5, 1e7];
    let a = fit_dof(&s, &grid, 6, 17).unwrap().to_csv().unwrap();
    let b = fit_dof(&s, &grid, 6, 17).unwrap().to_csv().unwrap();
    assert_eq!(a, b);
    for threads in [1, 3] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let c = pool.install(|| fit_dof(&s, &grid, 6, 17).unwrap().to_csv().unwrap());
        assert_eq!(a, c, "{threads} threads");
    }
    let header = a.lines().next().unwrap();
    assert_eq!(header, "scheme,P_T,trial_mean_sum_rate,r1,r2,r3,slope_fit");
    assert_eq!(a.lines().count(), 4);
}

#[test]
fn different_seed_changes_the_sweep() {
    let s = schemes::pd22();
    let grid = [1e2, 1e4, 1e6];
    let a = fit_dof(&s, &grid, 3, 0).unwrap();
    let b = fit_dof(&s, &grid, 3, 100).unwrap();
    assert_ne!(a.points, b.points);
}

#[test]
fn zero_power_gives_zero_rate() {
    let tr = float_run(&schemes::pdd23(), 3);
    for k in 0..3 {
        assert_eq!(zf_rate(&tr, k, 0.0).unwrap(), 0.0);
    }
}

#[test]
fn rate_grows_with_power() {
    let tr = float_run(&schemes::ppd33(), 5);
    for k in 0..3 {
        let rates: Vec<f64> = [1.0, 1e2, 1e4, 1e6]
            .iter()
            .map(|&p| zf_rate(&tr, k, p).unwrap())
            .collect();
        assert!(rates.windows(2).all(|w| w[1] > w[0]), "receiver {k}: {rates:?}");
    }
}

#[test]
fn receiver_one_of_pdd23_has_finite_rate_at_high_power() {
    let tr = float_run(&schemes::pdd23(), 8);
    let r = zf_rate(&tr, 0, 1e6).unwrap();
    assert!(r.is_finite() && r > 0.0);
    let sinr = zf_sinr(&tr, 0, 1e6).unwrap();
    assert_eq!(sinr.len(), tr.targets[0].len());
}

#[test]
fn sinr_scales_linearly_with_power() {
    // whitening scales every row by sqrt(P), so W scales by 1/sqrt(P)
    let tr = float_run(&schemes::pd22(), 2);
    let lo = zf_sinr(&tr, 0, 10.0).unwrap();
    let hi = zf_sinr(&tr, 0, 1e4).unwrap();
    for (a, b) in lo.iter().zip(&hi) {
        assert!((b / a - 1e3).abs() < 1e-6 * 1e3);
    }
}

#[test]
fn bad_power_is_rejected() {
    let tr = float_run(&schemes::pd22(), 0);
    for p in [-1.0, f64::NAN, f64::INFINITY] {
        assert!(matches!(zf_rate(&tr, 0, p), Err(Error::InvalidInput(_))));
    }
    assert!(matches!(zf_rate(&tr, 7, 1.0), Err(Error::InvalidInput(_))));
}

#[test]
fn float_report_marks_every_target_feasible() {
    let tr = float_run(&schemes::pdd33(), 12);
    let rep = zf_report(&tr, 1e5).unwrap();
    assert!(rep.receivers.iter().all(|r| r.targets_feasible && r.rate.is_some()));
}

#[test]
fn rate_slope_targets() {
    let r = Rational64::new;
    assert_eq!(expected_rate_slope(&schemes::pd22()), r(3, 2));
    assert_eq!(expected_rate_slope(&schemes::pdd23()), r(5, 3));
    assert_eq!(expected_rate_slope(&schemes::order2_delivery()), r(5, 2));
}

#[test]
fn short_sweep_lands_near_the_counting_dof() {
    let s = schemes::pd22();
    let res = fit_dof(&s, &[1e4, 1e6, 1e8], 12, 0).unwrap();
    assert!((res.slope - 1.5).abs() <= SLOPE_TOLERANCE, "slope {}", res.slope);
    assert!(res.excluded_seeds.is_empty());
}
