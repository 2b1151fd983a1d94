//! Switching-probability estimation from ensembles of independent pulses.

use std::thread;

use crate::error::{Error, Result};
use crate::magdyn::{self, DeviceParams, Macrospin, PulseSpec, SimEnv};
use crate::rng;

/// Magnetization before thermalization.
pub const START: [f64; 3] = [0.0, 0.0, -1.0];

#[derive(Debug, Clone, PartialEq)]
pub struct PswPoint {
    /// A
    pub current: f64,
    pub p_hat: f64,
    pub successes: usize,
    pub trials: usize,
    pub ci95_halfwidth: f64,
}

impl PswPoint {
    pub fn from_counts(current: f64, successes: usize, trials: usize) -> Self {
        let p = successes as f64 / trials as f64;
        Self {
            current,
            p_hat: p,
            successes,
            trials,
            ci95_halfwidth: 1.96 * (p * (1.0 - p) / trials as f64).sqrt(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PswCurve {
    /// s
    pub pulse_width: f64,
    /// k_B·T multiples
    pub barrier: f64,
    /// J/m³ implied by `barrier`
    pub k_u: f64,
    pub trials: usize,
    pub points: Vec<PswPoint>,
}

impl PswCurve {
    /// Current (A) where p crosses 0.5, by linear interpolation between the
    /// first bracketing pair.
    pub fn midpoint(&self) -> Option<f64> {
        midpoint(
            &self
                .points
                .iter()
                .map(|p| (p.current, p.p_hat))
                .collect::<Vec<_>>(),
        )
    }

    /// Adjacent pairs where p drops by more than 2·(ci_i + ci_{i+1}).
    pub fn monotonicity_violations(&self) -> usize {
        self.points
            .windows(2)
            .filter(|w| w[0].p_hat - w[1].p_hat > 2.0 * (w[0].ci95_halfwidth + w[1].ci95_halfwidth))
            .count()
    }

    /// CSV columns `current_uA, p_sw, ci95, trials, pulse_width_ns, barrier_kBT`.
    pub const CSV_HEADER: [&'static str; 6] = [
        "current_uA",
        "p_sw",
        "ci95",
        "trials",
        "pulse_width_ns",
        "barrier_kBT",
    ];

    pub fn csv_rows(&self) -> Vec<Vec<String>> {
        use crate::dataio::fmt_f64;
        self.points
            .iter()
            .map(|p| {
                vec![
                    fmt_f64(p.current * 1e6),
                    fmt_f64(p.p_hat),
                    fmt_f64(p.ci95_halfwidth),
                    p.trials.to_string(),
                    fmt_f64(self.pulse_width * 1e9),
                    fmt_f64(self.barrier),
                ]
            })
            .collect()
    }
}

impl PswCurve {
    /// Rebuild a curve from the table written by [`PswCurve::csv_rows`].
    pub fn from_table(t: &crate::dataio::CsvTable) -> Result<Self> {
        let cur = t.column("current_uA")?;
        let p = t.column("p_sw")?;
        let trials = t.column("trials")?;
        let (w, b) = (t.column("pulse_width_ns")?, t.column("barrier_kBT")?);
        if cur.is_empty() {
            return Err(Error::Parse("switching table has no rows".into()));
        }
        let n = trials[0] as usize;
        let points = cur
            .iter()
            .zip(&p)
            .zip(&trials)
            .map(|((&i, &p), &n)| {
                let n = n as usize;
                PswPoint::from_counts(i * 1e-6, (p * n as f64).round() as usize, n)
            })
            .collect();
        Ok(Self {
            pulse_width: w[0] * 1e-9,
            barrier: b[0],
            k_u: f64::NAN,
            trials: n,
            points,
        })
    }
}

/// Linear-interpolation crossing of 0.5 over `(x, p)` pairs sorted by x.
pub fn midpoint(pts: &[(f64, f64)]) -> Option<f64> {
    pts.windows(2).find_map(|w| {
        let ((x0, p0), (x1, p1)) = (w[0], w[1]);
        if p0 == 0.5 {
            Some(x0)
        } else if (p0 < 0.5 && p1 >= 0.5) || (p0 > 0.5 && p1 <= 0.5) {
            Some(x0 + (0.5 - p0) * (x1 - x0) / (p1 - p0))
        } else {
            None
        }
    })
}

/// Trial count, seed and thread count for an ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ensemble {
    pub trials: usize,
    pub threads: usize,
}

impl Ensemble {
    pub fn new(trials: usize) -> Self {
        Self { trials, threads: 1 }
    }

    pub fn threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }
}

/// Count switches over `trials` pulses. Trial `t` uses the seed derived from
/// `(seed_base, cell..., t)`, so the count does not depend on `threads`.
fn count_switches(
    sim: &Macrospin,
    pulse: &PulseSpec,
    env: &SimEnv,
    cell: [u64; 3],
    ens: Ensemble,
) -> usize {
    let run_range = |lo: usize, hi: usize| -> usize {
        (lo..hi)
            .filter(|&t| {
                let seed = rng::derive_seed(env.seed, &[cell[0], cell[1], cell[2], t as u64]);
                let mut r = rng::stream(seed);
                sim.run(START, pulse, env, &mut r).switched
            })
            .count()
    };
    let threads = ens.threads.clamp(1, ens.trials.max(1));
    if threads == 1 {
        return run_range(0, ens.trials);
    }
    let chunk = ens.trials.div_ceil(threads);
    thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|i| {
                let lo = (i * chunk).min(ens.trials);
                let hi = ((i + 1) * chunk).min(ens.trials);
                s.spawn(move || run_range(lo, hi))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("trial worker panicked"))
            .sum()
    })
}

fn point_at(
    sim: &Macrospin,
    pulse: &PulseSpec,
    env: &SimEnv,
    cell: [u64; 3],
    ens: Ensemble,
) -> Result<PswPoint> {
    if ens.trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    pulse.validate()?;
    let n = count_switches(sim, pulse, env, cell, ens);
    Ok(PswPoint::from_counts(pulse.current, n, ens.trials))
}

/// Estimate P_sw for one pulse setting. Seeds derive from `env.seed`.
pub fn switching_probability(
    params: &DeviceParams,
    pulse: &PulseSpec,
    env: &SimEnv,
    ens: Ensemble,
) -> Result<PswPoint> {
    let sim = Macrospin::new(params, env)?;
    point_at(&sim, pulse, env, [0, 0, 0], ens)
}

fn sweep_cell(
    params: &DeviceParams,
    pulse_width: f64,
    barrier: f64,
    currents: &[f64],
    env: &SimEnv,
    ens: Ensemble,
    cell: (u64, u64),
) -> Result<PswCurve> {
    if currents.is_empty() {
        return Err(Error::InvalidParameter("current list is empty".into()));
    }
    if currents.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParameter(
            "currents must be strictly increasing".into(),
        ));
    }
    let device = params.with_barrier(barrier);
    let sim = Macrospin::new(&device, env)?;
    let points = currents
        .iter()
        .enumerate()
        .map(|(i, &cur)| {
            let pulse = PulseSpec::new(cur, pulse_width);
            point_at(&sim, &pulse, env, [cell.0, cell.1, i as u64], ens)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PswCurve {
        pulse_width,
        barrier,
        k_u: device.k_u(),
        trials: ens.trials,
        points,
    })
}

/// P_sw at each current for one (pulse width, barrier) setting.
pub fn current_sweep(
    params: &DeviceParams,
    pulse_width: f64,
    barrier: f64,
    currents: &[f64],
    env: &SimEnv,
    ens: Ensemble,
) -> Result<PswCurve> {
    sweep_cell(params, pulse_width, barrier, currents, env, ens, (0, 0))
}

/// One curve per (width, barrier) pair, width-major.
pub fn sweep_grid(
    params: &DeviceParams,
    widths: &[f64],
    barriers: &[f64],
    currents: &[f64],
    env: &SimEnv,
    ens: Ensemble,
) -> Result<Vec<PswCurve>> {
    let mut out = Vec::with_capacity(widths.len() * barriers.len());
    for (wi, &w) in widths.iter().enumerate() {
        for (bi, &b) in barriers.iter().enumerate() {
            out.push(sweep_cell(
                params,
                w,
                b,
                currents,
                env,
                ens,
                (wi as u64, bi as u64),
            )?);
        }
    }
    Ok(out)
}

/// 21 evenly spaced currents over [0, 3·I_crit] (A) for the given barrier.
pub fn default_currents(params: &DeviceParams, barrier: f64) -> Result<Vec<f64>> {
    let i_crit = magdyn::analytic_critical_current(&params.with_barrier(barrier))?;
    Ok(linspace(0.0, 3.0 * i_crit, 21))
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}
