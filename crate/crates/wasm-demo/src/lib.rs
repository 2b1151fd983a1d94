//! Browser bindings for three interactive operations: a switching-probability
//! sweep, a sigmoid fit and a single thermal trajectory.
//!
//! Arrays cross the boundary as flat `Float64Array`s. Currents are in μA,
//! pulse widths in ns and barriers in k_B·T.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use spinlab::actfit;
use spinlab::magdyn::{DeviceParams, Macrospin, PulseSpec, SimEnv};
use spinlab::montecarlo::{self, Ensemble};
use spinlab::rng;
use wasm_bindgen::prelude::*;

const MAX_TRIALS: usize = 2000;
const MAX_POINTS: usize = 101;

fn device(barrier_kbt: f64) -> DeviceParams {
    DeviceParams::default().with_barrier(barrier_kbt)
}

/// `[I_0, p_0, ci_0, I_1, p_1, ci_1, ...]` over `points` evenly spaced currents.
pub fn sweep(
    barrier_kbt: f64,
    width_ns: f64,
    lo_ua: f64,
    hi_ua: f64,
    points: usize,
    trials: usize,
    seed: u64,
) -> spinlab::Result<Vec<f64>> {
    if !(2..=MAX_POINTS).contains(&points)
        || !(1..=MAX_TRIALS).contains(&trials)
        || !(hi_ua > lo_ua)
    {
        return Err(spinlab::Error::InvalidParameter(format!(
            "need 2..={MAX_POINTS} points, 1..={MAX_TRIALS} trials and hi > lo"
        )));
    }
    let currents: Vec<f64> = montecarlo::linspace(lo_ua, hi_ua, points)
        .iter()
        .map(|i| i * 1e-6)
        .collect();
    let env = SimEnv {
        seed,
        ..SimEnv::default()
    };
    let curve = montecarlo::current_sweep(
        &DeviceParams::default(),
        width_ns * 1e-9,
        barrier_kbt,
        &currents,
        &env,
        Ensemble::new(trials),
    )?;
    Ok(curve
        .points
        .iter()
        .flat_map(|p| [p.current * 1e6, p.p_hat, p.ci95_halfwidth])
        .collect())
}

/// `[k, c, rss, converged]` for points given as `currents_ua` and `p_sw`.
pub fn fit(currents_ua: &[f64], p_sw: &[f64]) -> spinlab::Result<Vec<f64>> {
    if currents_ua.len() != p_sw.len() {
        return Err(spinlab::Error::Shape(format!(
            "{} currents but {} probabilities",
            currents_ua.len(),
            p_sw.len()
        )));
    }
    let pts: Vec<(f64, f64)> = currents_ua
        .iter()
        .copied()
        .zip(p_sw.iter().copied())
        .collect();
    let f = actfit::fit_points(&pts)?;
    Ok(vec![f.k, f.c, f.rss, if f.converged { 1.0 } else { 0.0 }])
}

/// `[t_ns, mx, my, mz]` rows, flattened, followed by the switched flag as a
/// final element (1 or 0).
pub fn trajectory(
    barrier_kbt: f64,
    current_ua: f64,
    width_ns: f64,
    seed: u64,
    stride: usize,
) -> spinlab::Result<Vec<f64>> {
    let env = SimEnv {
        seed,
        stride: stride.max(1),
        ..SimEnv::default()
    };
    let sim = Macrospin::new(&device(barrier_kbt), &env)?;
    let pulse = PulseSpec::new(current_ua * 1e-6, width_ns * 1e-9);
    pulse.validate()?;
    let traj = sim.run(montecarlo::START, &pulse, &env, &mut rng::stream(seed));
    let mut out: Vec<f64> = traj.rows().flatten().collect();
    out.push(if traj.switched { 1.0 } else { 0.0 });
    Ok(out)
}

fn js(e: spinlab::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen(js_name = switchingSweep)]
pub fn switching_sweep(
    barrier_kbt: f64,
    width_ns: f64,
    lo_ua: f64,
    hi_ua: f64,
    points: usize,
    trials: usize,
    seed: u32,
) -> Result<Vec<f64>, JsError> {
    sweep(
        barrier_kbt,
        width_ns,
        lo_ua,
        hi_ua,
        points,
        trials,
        seed as u64,
    )
    .map_err(js)
}

#[wasm_bindgen(js_name = fitSigmoid)]
pub fn fit_sigmoid(currents_ua: &[f64], p_sw: &[f64]) -> Result<Vec<f64>, JsError> {
    fit(currents_ua, p_sw).map_err(js)
}

#[wasm_bindgen(js_name = thermalTrajectory)]
pub fn thermal_trajectory(
    barrier_kbt: f64,
    current_ua: f64,
    width_ns: f64,
    seed: u32,
    stride: usize,
) -> Result<Vec<f64>, JsError> {
    trajectory(barrier_kbt, current_ua, width_ns, seed as u64, stride).map_err(js)
}

/// Analytic zero-temperature critical current in μA for a barrier.
#[wasm_bindgen(js_name = criticalCurrent)]
pub fn critical_current(barrier_kbt: f64) -> Result<f64, JsError> {
    spinlab::magdyn::analytic_critical_current(&device(barrier_kbt))
        .map(|i| i * 1e6)
        .map_err(js)
}
