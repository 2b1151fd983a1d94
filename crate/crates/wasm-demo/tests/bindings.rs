use spinlab_wasm_demo::{fit, sweep, trajectory};

#[test]
fn sweep_layout_and_determinism() {
    let a = sweep(7.5, 10.0, 2.0, 10.0, 5, 20, 4).unwrap();
    assert_eq!(a.len(), 15);
    assert_eq!(a[0], 2.0);
    assert!((a[12] - 10.0).abs() < 1e-12);
    assert!(a.chunks(3).all(|r| (0.0..=1.0).contains(&r[1])));
    assert_eq!(a, sweep(7.5, 10.0, 2.0, 10.0, 5, 20, 4).unwrap());
}

#[test]
fn sweep_rejects_bad_ranges() {
    assert!(sweep(7.5, 10.0, 5.0, 5.0, 5, 20, 0).is_err());
    assert!(sweep(7.5, 10.0, 2.0, 10.0, 1, 20, 0).is_err());
    assert!(sweep(7.5, 10.0, 2.0, 10.0, 5, 0, 0).is_err());
}

#[test]
fn fit_recovers_noiseless_curve() {
    let i: Vec<f64> = (0..30).map(|j| j as f64 * 0.5).collect();
    let p: Vec<f64> = i
        .iter()
        .map(|x| 1.0 / (1.0 + (-2.5 * (x - 6.0)).exp()))
        .collect();
    let r = fit(&i, &p).unwrap();
    assert!((r[0] - 2.5).abs() < 1e-6 && (r[1] + 6.0).abs() < 1e-6);
    assert_eq!(r[3], 1.0);
    assert!(fit(&i, &p[1..]).is_err());
}

#[test]
fn trajectory_rows_are_unit_vectors() {
    let t = trajectory(7.5, 20.0, 5.0, 1, 100).unwrap();
    let (rows, flag) = t.split_at(t.len() - 1);
    assert!(flag[0] == 0.0 || flag[0] == 1.0);
    assert_eq!(rows.len() % 4, 0);
    for r in rows.chunks(4) {
        let n = (r[1] * r[1] + r[2] * r[2] + r[3] * r[3]).sqrt();
        assert!((n - 1.0).abs() < 1e-9);
    }
}
