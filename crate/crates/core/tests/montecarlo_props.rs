use proptest::prelude::*;
use spinlab::magdyn::{DeviceParams, SimEnv};
use spinlab::montecarlo::{current_sweep, linspace, sweep_grid, Ensemble, PswPoint};

proptest! {
    #[test]
    fn point_statistics(trials in 1usize..5000, frac in 0.0..=1.0f64) {
        let successes = (frac * trials as f64).floor() as usize;
        let p = PswPoint::from_counts(1e-6, successes, trials);
        prop_assert!((0.0..=1.0).contains(&p.p_hat));
        prop_assert_eq!(p.successes + (p.trials - p.successes), trials);
        let ci = 1.96 * (p.p_hat * (1.0 - p.p_hat) / trials as f64).sqrt();
        prop_assert!((p.ci95_halfwidth - ci).abs() <= 1e-15);
    }
}

#[test]
fn curve_is_statistically_monotone() {
    let currents: Vec<f64> = linspace(2.0, 10.0, 11).iter().map(|i| i * 1e-6).collect();
    let c = current_sweep(
        &DeviceParams::default(),
        20e-9,
        7.5,
        &currents,
        &SimEnv::default(),
        Ensemble::new(100),
    )
    .unwrap();
    let severe = c
        .points
        .windows(2)
        .filter(|w| w[0].p_hat - w[1].p_hat > 2.0 * (w[0].ci95_halfwidth + w[1].ci95_halfwidth))
        .count();
    assert!(
        severe as f64 <= 0.05 * (c.points.len() - 1) as f64,
        "{severe} severe violations"
    );
    assert_eq!(c.points.first().unwrap().p_hat, 0.0);
    assert_eq!(c.points.last().unwrap().p_hat, 1.0);
}

#[test]
fn grid_is_bitwise_stable_across_thread_counts() {
    let currents = [4e-6, 6e-6];
    let run = |threads| {
        sweep_grid(
            &DeviceParams::default(),
            &[10e-9, 20e-9],
            &[7.5, 10.0],
            &currents,
            &SimEnv::default(),
            Ensemble::new(13).threads(threads),
        )
        .unwrap()
    };
    let one = run(1);
    for t in [2, 3, 8] {
        assert_eq!(run(t), one, "threads = {t}");
    }
}
