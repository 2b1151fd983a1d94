//! Acceptance report: one line per criterion, exit status 1 if any fails.
//!
//! Criteria 5 to 8 need the MNIST IDX files in `SPINLAB_MNIST_DIR`; without
//! them they report NOT RUN together with a synthetic-data indication.
//! `SPINLAB_ACCEPTANCE_RUNS` lowers the seed count of the MNIST criteria.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use ndarray::Array2;
use rand::Rng;
use spinlab::actfit::{self, DeviceLut, SigmoidFit};
use spinlab::cli::{self, RunConfig};
use spinlab::dataio::{self, Dataset, Split};
use spinlab::magdyn::{self, DeviceParams, Macrospin, PulseSpec, SimEnv};
use spinlab::montecarlo::{self, Ensemble, PswCurve};
use spinlab::neuronet::{
    self, GradientRule, InitRule, Mode, NetParams, ParamRanges, TrainConfig, TrainOutcome,
};
use spinlab::rng;

enum Verdict {
    Pass,
    Fail,
    NotRun,
}

struct Line {
    id: &'static str,
    verdict: Verdict,
    detail: String,
}

fn judge(id: &'static str, ok: bool, detail: String) -> Line {
    Line {
        id,
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        detail,
    }
}

fn not_run(id: &'static str, detail: String) -> Line {
    Line {
        id,
        verdict: Verdict::NotRun,
        detail,
    }
}

fn within(x: f64, centre: f64, tol: f64) -> bool {
    (x - centre).abs() <= tol
}

// ---------------------------------------------------------------------------
// 1. analytic formulas
// ---------------------------------------------------------------------------

fn criterion_1() -> Line {
    let p = DeviceParams {
        k_u_override: Some(1.1e6),
        ..DeviceParams::default()
    };
    let i_crit = magdyn::analytic_critical_current(&p).unwrap() * 1e6;
    let hk = magdyn::anisotropy_field(&p);
    let e = cli::energy_per_neuron(15e-6, 5000.0, 15e-9) * 1e15;
    let eb = magdyn::energy_barrier(&p).unwrap();
    let ok = within(i_crit, 5.8, 0.1)
        && within(hk, 0.169, 0.001)
        && within(e, 16.875, 1e-9)
        && within(eb, 7.5, 0.2);
    judge(
        "1 analytic formulas",
        ok,
        format!("I_crit = {i_crit:.3} uA [5.8 +/- 0.1], H_k = {hk:.4} T [0.169 +/- 0.001], E = {e:.6} fJ [16.875], E_B = {eb:.3} kBT [7.5 +/- 0.2]"),
    )
}

// ---------------------------------------------------------------------------
// 2 and 3. switching curves
// ---------------------------------------------------------------------------

/// Independent seeds behind each fitted-k estimate of criterion 3.
const REPLICATES: u64 = 4;

struct Curves {
    b75_w30: (PswCurve, SigmoidFit),
    b75_w200: (PswCurve, SigmoidFit),
    b15_w30: (PswCurve, SigmoidFit),
    /// Fitted k per seed, seed 0 first.
    k30: Vec<f64>,
    k200: Vec<f64>,
    i_crit_ua: f64,
}

/// 21 points, 100 trials each, over 2 to 10 uA.
fn measure_curves() -> Curves {
    let base = DeviceParams::default();
    let currents: Vec<f64> = montecarlo::linspace(2.0, 10.0, 21)
        .iter()
        .map(|i| i * 1e-6)
        .collect();
    let ens = Ensemble::new(100).threads(cli_threads());
    let run = |w_ns: f64, eb: f64, seed: u64| {
        let env = SimEnv {
            seed,
            ..SimEnv::default()
        };
        let c = montecarlo::current_sweep(&base, w_ns * 1e-9, eb, &currents, &env, ens).unwrap();
        let f = actfit::fit_sigmoid(&c).unwrap();
        (c, f)
    };
    let b75_w30 = run(30.0, 7.5, 0);
    let b75_w200 = run(200.0, 7.5, 0);
    let mut k30 = vec![b75_w30.1.k];
    let mut k200 = vec![b75_w200.1.k];
    for seed in 1..REPLICATES {
        k30.push(run(30.0, 7.5, seed).1.k);
        k200.push(run(200.0, 7.5, seed).1.k);
    }
    Curves {
        b75_w30,
        b75_w200,
        b15_w30: run(30.0, 15.0, 0),
        k30,
        k200,
        i_crit_ua: magdyn::analytic_critical_current(&base.with_barrier(7.5)).unwrap() * 1e6,
    }
}

fn cli_threads() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

fn criterion_2(c: &Curves) -> Line {
    let all = [&c.b75_w30, &c.b75_w200, &c.b15_w30];
    let worst_rss = all
        .iter()
        .map(|(_, f)| f.rss / f.points as f64)
        .fold(0.0, f64::max);
    let mid = |f: &SigmoidFit| -f.c;
    let m30 = mid(&c.b75_w30.1);
    let m200 = mid(&c.b75_w200.1);
    let m15 = mid(&c.b15_w30.1);
    let ratio = m30 / c.i_crit_ua;
    let (k30, k200, k15) = (c.b75_w30.1.k, c.b75_w200.1.k, c.b15_w30.1.k);
    let k_change = (k30 - k15).abs() / k15;
    let ok = all.iter().all(|(_, f)| f.converged)
        && worst_rss < 0.02
        && (5.0..=20.0).contains(&m30)
        && (0.5..=2.0).contains(&ratio)
        && m200 < m30
        && k200 > k30
        && m30 < m15
        && k_change < 0.25;
    judge(
        "2 physics properties",
        ok,
        format!(
            "max rss/points = {worst_rss:.4} [<0.02]; midpoint(7.5 kBT, 30 ns) = {m30:.2} uA [5..20], {ratio:.2}x I_crit {:.2} uA [0.5..2]; \
             30->200 ns midpoint {m30:.2}->{m200:.2}, k {k30:.2}->{k200:.2} [midpoint down, k up]; \
             15->7.5 kBT midpoint {m15:.2}->{m30:.2} [down], k change {:.1}% [<25%]",
            c.i_crit_ua,
            100.0 * k_change
        ),
    )
}

fn noiseless_recovery_error() -> f64 {
    let mut r = rng::stream(0x5eed);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let k = r.random_range(0.5..10.0);
        let c = r.random_range(-30.0..-5.0);
        let pts: Vec<(f64, f64)> = montecarlo::linspace(0.0, 40.0, 81)
            .into_iter()
            .map(|i| (i, actfit::sigmoid(k * (i + c))))
            .collect();
        let f = actfit::fit_points(&pts).unwrap();
        worst = worst.max(((f.k - k) / k).abs()).max(((f.c - c) / c).abs());
    }
    worst
}

fn criterion_3(c: &Curves) -> Line {
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let list = |v: &[f64]| {
        v.iter()
            .map(|k| format!("{k:.2}"))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let (k30, k200) = (mean(&c.k30), mean(&c.k200));
    let rec = noiseless_recovery_error();
    judge(
        "3 fit targets",
        within(k200, 3.4, 0.7) && within(k30, 2.2, 0.5) && rec <= 1e-6,
        format!(
            "mean over {REPLICATES} seeds: k(200 ns) = {k200:.3} [3.4 +/- 0.7] from {}, k(30 ns) = {k30:.3} [2.2 +/- 0.5] from {}; \
             noiseless recovery max rel err = {rec:.1e} [<=1e-6, 50 draws]",
            list(&c.k200),
            list(&c.k30)
        ),
    )
}

// ---------------------------------------------------------------------------
// 4. gradient oracle
// ---------------------------------------------------------------------------

fn random_net(seed: u64) -> NetParams {
    let mut r = rng::stream(seed);
    let mut m = |rows: usize, cols: usize, s: f64| {
        Array2::from_shape_simple_fn((rows, cols), || r.random_range(-s..s))
    };
    let (w1, w2) = (m(8, 10, 1.0), m(5, 8, 1.0));
    let k2 = m(1, 8, 2.0).row(0).to_owned();
    let c2 = m(1, 8, 1.0).row(0).to_owned();
    let k3 = m(1, 5, 2.0).row(0).to_owned();
    let c3 = m(1, 5, 1.0).row(0).to_owned();
    NetParams {
        w1,
        w2,
        k2,
        c2,
        k3,
        c3,
    }
}

fn flat_mut(p: &mut NetParams) -> Vec<&mut f64> {
    p.w1.iter_mut()
        .chain(p.w2.iter_mut())
        .chain(p.k2.iter_mut())
        .chain(p.c2.iter_mut())
        .chain(p.k3.iter_mut())
        .chain(p.c3.iter_mut())
        .collect()
}

fn criterion_4() -> Line {
    let h = 1e-6;
    let mut worst_fd: f64 = f64::NEG_INFINITY;
    let mut worst_identity: f64 = 0.0;
    let mut worst_simplified: f64 = 0.0;
    for seed in 0..100u64 {
        let mut p = random_net(seed);
        let mut r = rng::stream(seed ^ 0xfeed);
        let n = 6;
        let x = Array2::from_shape_simple_fn((n, 10), || r.random::<f64>());
        let mut y = Array2::zeros((n, 5));
        for i in 0..n {
            y[[i, r.random_range(0..5)]] = 1.0;
        }
        let cache = neuronet::forward(&x, &p).unwrap();
        let g = neuronet::backward(&cache, &p, &y, GradientRule::Exact).unwrap();
        let mean_err = (&cache.a3 - &y).mean_axis(ndarray::Axis(0)).unwrap();
        for (j, m) in mean_err.iter().enumerate() {
            worst_identity = worst_identity.max((g.dc3[j] - p.k3[j] * m).abs());
        }
        let gp = neuronet::backward(&cache, &p, &y, GradientRule::Simplified).unwrap();
        for (j, m) in mean_err.iter().enumerate() {
            worst_simplified = worst_simplified.max((gp.dc3[j] - m).abs());
        }
        let analytic: Vec<f64> = g
            .dw1
            .iter()
            .chain(g.dw2.iter())
            .chain(g.dk2.iter())
            .chain(g.dc2.iter())
            .chain(g.dk3.iter())
            .chain(g.dc3.iter())
            .copied()
            .collect();
        let j_at =
            |p: &NetParams| neuronet::loss(&neuronet::forward(&x, p).unwrap().a3, &y).unwrap();
        for (i, &ga) in analytic.iter().enumerate() {
            let orig = *flat_mut(&mut p)[i];
            *flat_mut(&mut p)[i] = orig + h;
            let jp = j_at(&p);
            *flat_mut(&mut p)[i] = orig - h;
            let jm = j_at(&p);
            *flat_mut(&mut p)[i] = orig;
            let fd = (jp - jm) / (2.0 * h);
            worst_fd = worst_fd.max((ga - fd).abs() - (1e-6 * ga.abs().max(fd.abs()) + 1e-8));
        }
    }
    judge(
        "4 gradient oracle",
        worst_fd <= 0.0 && worst_identity <= 1e-12 && worst_simplified <= 1e-12,
        format!(
            "100 random 10-8-5 nets, all six gradients vs central differences: worst excess over 1e-6 rel (+1e-8 abs) = {worst_fd:.1e} [<=0]; \
             dc3 - k3*mean(a3-Y) = {worst_identity:.1e}, simplified-rule dc3 - mean(a3-Y) = {worst_simplified:.1e} [<=1e-12]"
        ),
    )
}

// ---------------------------------------------------------------------------
// 5 to 8. training
// ---------------------------------------------------------------------------

fn acceptance_runs() -> usize {
    std::env::var("SPINLAB_ACCEPTANCE_RUNS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(10)
}

fn device_lut() -> DeviceLut {
    let s = RunConfig::default().sweep;
    let currents: Vec<f64> = s.currents_ua.iter().map(|i| i * 1e-6).collect();
    let widths: Vec<f64> = s.lut_widths_ns.iter().map(|w| w * 1e-9).collect();
    let env = SimEnv::default();
    let curves = montecarlo::sweep_grid(
        &DeviceParams::default(),
        &widths,
        &s.lut_barriers_kbt,
        &currents,
        &env,
        Ensemble::new(s.trials).threads(cli_threads()),
    )
    .unwrap();
    actfit::build_lut(&curves, env.seed).unwrap()
}

fn config(mode: Mode, runs: usize, iterations: usize, lut: Option<&DeviceLut>) -> TrainConfig {
    let mut c = TrainConfig {
        runs,
        iterations,
        ..TrainConfig::new(mode)
    };
    if let Some(lut) = lut {
        match mode {
            Mode::HardwareK => c.k_clamp = Some(actfit::k_range(lut)),
            Mode::CoupledKc => {
                c.coupling = Some(actfit::coupling_curve(lut, lut.barrier_kbt[0]).unwrap())
            }
            _ => {}
        }
    }
    c
}

fn first_reach(o: &TrainOutcome, threshold: f64) -> Option<usize> {
    o.mean_accuracy()
        .into_iter()
        .find(|&(_, a)| a >= threshold)
        .map(|(i, _)| i)
}

fn failed_coupled(o: &TrainOutcome) -> (bool, usize) {
    let flagged = o.runs.iter().filter(|h| h.diverged || h.stalled).count();
    (
        o.mean_final_accuracy() < 0.70 || flagged == o.runs.len(),
        flagged,
    )
}

fn envelope(o: &TrainOutcome) -> ParamRanges {
    o.runs
        .iter()
        .filter_map(neuronet::learned_ranges)
        .reduce(|a, b| a.union(&b))
        .expect("at least one run")
}

fn envelope_ok(r: &ParamRanges) -> bool {
    let inside = |(lo, hi): (f64, f64), b: f64| lo >= -b && hi <= b;
    inside(r.k2, 7.0) && inside(r.k3, 7.0) && inside(r.c2, 2.0) && inside(r.c3, 2.0)
}

fn fmt_env(r: &ParamRanges) -> String {
    let k = (r.k2.0.min(r.k3.0), r.k2.1.max(r.k3.1));
    let c = (r.c2.0.min(r.c3.0), r.c2.1.max(r.c3.1));
    format!(
        "k in [{:.2}, {:.2}], c in [{:.2}, {:.2}]",
        k.0, k.1, c.0, c.1
    )
}

fn init_gap(
    train: &Dataset,
    test: &Dataset,
    mode: Mode,
    runs: usize,
    lut: Option<&DeviceLut>,
) -> (f64, f64) {
    let mut acc = [0.0; 2];
    for (slot, rule) in [InitRule::GlorotAll, InitRule::GlorotWWideKc]
        .into_iter()
        .enumerate()
    {
        let mut c = config(mode, runs, 100, lut);
        c.init_rule = rule;
        let o = neuronet::train(train, test, &c).unwrap();
        acc[slot] = o
            .mean_accuracy()
            .into_iter()
            .find(|&(i, _)| i == 100)
            .map(|(_, a)| a)
            .unwrap();
    }
    (acc[0], acc[1])
}

fn mnist_criteria(dir: PathBuf, out: &mut Vec<Line>) {
    let runs = acceptance_runs();
    let (train, test) = dataio::load_mnist(&dir, dataio::DEFAULT_TRAIN).unwrap();
    let lut = device_lut();
    let fixed = neuronet::train(&train, &test, &config(Mode::Fixed, runs, 1000, None)).unwrap();
    let kc = neuronet::train(&train, &test, &config(Mode::TrainableKc, runs, 1000, None)).unwrap();
    let hw = neuronet::train(
        &train,
        &test,
        &config(Mode::HardwareK, runs, 1000, Some(&lut)),
    )
    .unwrap();
    let (af, ak, ah) = (
        fixed.mean_final_accuracy(),
        kc.mean_final_accuracy(),
        hw.mean_final_accuracy(),
    );
    let hw85 = first_reach(&hw, 0.85);
    let fixed85 = first_reach(&fixed, 0.85);
    out.push(judge(
        "5 MNIST end-to-end",
        within(af, 0.880, 0.015)
            && within(ak, 0.917, 0.015)
            && within(ah, 0.913, 0.015)
            && hw85.is_some_and(|i| i <= 550)
            && fixed85.is_none_or(|i| i >= 700),
        format!(
            "{runs} seeds: fixed {:.2}% [88.0 +/- 1.5], trainable_kc {:.2}% [91.7 +/- 1.5], hardware_k {:.2}% [91.3 +/- 1.5]; \
             85% first reached at iteration hardware_k {hw85:?} [<=550], fixed {fixed85:?} [none before 700]",
            100.0 * af,
            100.0 * ak,
            100.0 * ah
        ),
    ));
    let coupled = neuronet::train(
        &train,
        &test,
        &config(Mode::CoupledKc, runs, 1000, Some(&lut)),
    )
    .unwrap();
    let (failed, flagged) = failed_coupled(&coupled);
    out.push(judge(
        "6 coupled k-c failure",
        failed,
        format!(
            "mean final accuracy {:.2}% [<70%] or all runs flagged: {flagged}/{} diverged/stalled",
            100.0 * coupled.mean_final_accuracy(),
            coupled.runs.len()
        ),
    ));
    let env = envelope(&kc);
    out.push(judge(
        "7 learned-range sanity",
        envelope_ok(&env),
        format!(
            "trainable_kc envelope {} [k within +/-7, c within +/-2]",
            fmt_env(&env)
        ),
    ));
    let (g_kc, w_kc) = init_gap(&train, &test, Mode::TrainableKc, runs, None);
    let (g_hw, w_hw) = init_gap(&train, &test, Mode::HardwareK, runs, Some(&lut));
    out.push(judge(
        "8 initialization study",
        w_kc > g_kc && w_hw > g_hw,
        format!(
            "accuracy at iteration 100, glorot_all vs glorot_w_wide_kc: trainable_kc {:.2}% vs {:.2}%, hardware_k {:.2}% vs {:.2}% [wide strictly higher]",
            100.0 * g_kc,
            100.0 * w_kc,
            100.0 * g_hw,
            100.0 * w_hw
        ),
    ));
}

/// Reduced runs on the prototype-plus-noise stand-in; reported, never judged.
fn synthetic_indications(curves: &Curves, out: &mut Vec<Line>) {
    let reason = format!("{} unset", cli::MNIST_ENV);
    out.push(not_run("5 MNIST end-to-end", reason.clone()));
    let train = dataio::synthetic(2000, 1, 2, 0.5, Split::Train);
    let test = dataio::synthetic(500, 1, 3, 0.5, Split::Test);
    let lut = actfit::build_lut(&[curves.b75_w30.0.clone(), curves.b75_w200.0.clone()], 0).unwrap();
    let coupled =
        neuronet::train(&train, &test, &config(Mode::CoupledKc, 3, 300, Some(&lut))).unwrap();
    let (failed, flagged) = failed_coupled(&coupled);
    out.push(not_run(
        "6 coupled k-c failure",
        format!(
            "{reason}; synthetic stand-in (3 seeds, 300 iterations, two-width coupling curve): mean final accuracy {:.1}%, {flagged}/3 flagged, would {}",
            100.0 * coupled.mean_final_accuracy(),
            if failed { "pass" } else { "fail" }
        ),
    ));
    let kc = neuronet::train(&train, &test, &config(Mode::TrainableKc, 3, 300, None)).unwrap();
    let env = envelope(&kc);
    out.push(not_run(
        "7 learned-range sanity",
        format!(
            "{reason}; synthetic stand-in envelope {}, would {}",
            fmt_env(&env),
            if envelope_ok(&env) { "pass" } else { "fail" }
        ),
    ));
    let (g, w) = init_gap(&train, &test, Mode::TrainableKc, 3, None);
    out.push(not_run(
        "8 initialization study",
        format!(
            "{reason}; synthetic stand-in trainable_kc at iteration 100: glorot_all {:.1}% vs glorot_w_wide_kc {:.1}%",
            100.0 * g,
            100.0 * w
        ),
    ));
}

// ---------------------------------------------------------------------------
// 9. determinism
// ---------------------------------------------------------------------------

fn criterion_9() -> Line {
    let mut notes = String::new();
    let mut ok = true;
    let mut check = |name: &str, same: bool| {
        ok &= same;
        let _ = write!(
            notes,
            "{name} {}; ",
            if same { "identical" } else { "DIFFERS" }
        );
    };

    let base = DeviceParams::default();
    let env = SimEnv::default();
    let currents: Vec<f64> = [4.0, 5.5, 7.0].iter().map(|i| i * 1e-6).collect();
    let widths = [30e-9, 60e-9];
    let grid = |threads: usize| {
        montecarlo::sweep_grid(
            &base,
            &widths,
            &[7.5],
            &currents,
            &env,
            Ensemble::new(24).threads(threads),
        )
        .unwrap()
    };
    let (one, many) = (grid(1), grid(4));
    check("sweep 1 vs 4 threads", one == many);

    let sim = Macrospin::new(&base.with_barrier(7.5), &env).unwrap();
    let pulse = PulseSpec::new(6e-6, 2e-9);
    let traj = || sim.run(montecarlo::START, &pulse, &env, &mut rng::stream(99));
    check("trajectory", traj() == traj());

    let curve = PswCurve {
        points: montecarlo::linspace(1.0, 9.0, 17)
            .into_iter()
            .map(|i| {
                montecarlo::PswPoint::from_counts(
                    i * 1e-6,
                    (100.0 * actfit::sigmoid(2.0 * (i - 5.0))).round() as usize,
                    100,
                )
            })
            .collect(),
        ..one[0].clone()
    };
    let f1 = actfit::fit_sigmoid(&curve).unwrap();
    let f2 = actfit::fit_sigmoid(&curve).unwrap();
    check(
        "fit",
        f1.k.to_bits() == f2.k.to_bits() && f1.c.to_bits() == f2.c.to_bits(),
    );

    let lut_bytes = |curves: &[PswCurve]| -> Vec<u8> {
        let c: Vec<PswCurve> = curves
            .iter()
            .map(|c| PswCurve {
                points: curve.points.clone(),
                ..c.clone()
            })
            .collect();
        actfit::build_lut(&c, 3)
            .unwrap()
            .to_csv()
            .unwrap()
            .to_bytes()
            .unwrap()
    };
    check("lut csv", lut_bytes(&one) == lut_bytes(&many));

    let data = || dataio::synthetic(300, 5, 6, 0.5, Split::Train);
    check("dataset", data() == data());
    let train = data();
    let test = dataio::synthetic(100, 5, 7, 0.5, Split::Test);
    let cfg = config(Mode::TrainableKc, 2, 40, None);
    let a = neuronet::train(&train, &test, &cfg).unwrap();
    let b = neuronet::train(&train, &test, &cfg).unwrap();
    let csv = |o: &TrainOutcome| {
        o.runs
            .iter()
            .map(|h| h.to_csv().to_bytes().unwrap())
            .collect::<Vec<_>>()
    };
    check("training", csv(&a) == csv(&b) && a.params == b.params);

    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("c.json");
    std::fs::write(
        &cfg_path,
        r#"{"sweep": {"currents_ua": [4, 6, 8], "trials": 16}}"#,
    )
    .unwrap();
    let out_dir = dir.path().join("out");
    let cli_sweep = |threads: &str| {
        let _ = std::fs::remove_dir_all(&out_dir);
        let argv = [
            "spinlab",
            "--config",
            cfg_path.to_str().unwrap(),
            "--out-dir",
            out_dir.to_str().unwrap(),
            "--threads",
            threads,
            "sweep",
            "--width-ns",
            "30",
        ];
        let code = cli::run(argv, &mut Vec::new(), &mut Vec::new());
        assert_eq!(code, cli::EXIT_OK);
        let mut files: Vec<_> = std::fs::read_dir(&out_dir)
            .unwrap()
            .map(|e| e.unwrap().path())
            .collect();
        files.sort();
        files
            .iter()
            .map(|f| std::fs::read(f).unwrap())
            .collect::<Vec<_>>()
    };
    check(
        "cli sweep files 1 vs 3 threads",
        cli_sweep("1") == cli_sweep("3"),
    );

    judge(
        "9 determinism",
        ok,
        notes.trim_end_matches("; ").to_string(),
    )
}

fn main() {
    // Invoked by `cargo test` with harness flags such as `--list`; only a
    // listing request needs special handling.
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let t0 = Instant::now();
    let mut lines = vec![criterion_1()];
    let curves = measure_curves();
    lines.push(criterion_2(&curves));
    lines.push(criterion_3(&curves));
    lines.push(criterion_4());
    match std::env::var_os(cli::MNIST_ENV) {
        Some(dir) => mnist_criteria(PathBuf::from(dir), &mut lines),
        None => synthetic_indications(&curves, &mut lines),
    }
    lines.push(criterion_9());

    let mut failed = 0;
    for l in &lines {
        let tag = match l.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => {
                failed += 1;
                "FAIL"
            }
            Verdict::NotRun => "NOT RUN",
        };
        println!("[{tag}] criterion {}: {}", l.id, l.detail);
    }
    println!(
        "acceptance: {} criteria, {failed} failed, {:.1} s",
        lines.len(),
        t0.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
