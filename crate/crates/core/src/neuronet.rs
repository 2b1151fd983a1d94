//! Two-layer perceptron whose neurons apply `σ(k·(z + c))` with per-neuron,
//! optionally trainable `k` and `c`.
//!
//! Layout is batch-major: `X` is `N × n_in`, `z2`/`a2` are `N × n_hidden`,
//! `z3`/`a3` are `N × n_out`. Weights follow the `n_out × n_in` convention so
//! that `z2 = X · w1ᵀ`.

use ndarray::{Array1, Array2, Axis};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::actfit::CouplingCurve;
use crate::dataio::{self, fmt_f64, CsvTable, Dataset};
use crate::error::{Error, Result};
use crate::rng;

pub const LOG_CLAMP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Standard sigmoid: `k ≡ 1`, `c ≡ 0`, only weights train.
    Fixed,
    TrainableKc,
    /// `|k|` trains inside the coupling curve's k range and `c` follows `c(|k|)`.
    CoupledKc,
    /// `k` trains inside the device-attainable magnitude range, `c ≡ 0`.
    HardwareK,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitRule {
    GlorotAll,
    GlorotWWideKc,
}

/// Which derivative expressions drive the `k`/`c` updates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GradientRule {
    /// True partial derivatives of the loss.
    #[default]
    Exact,
    /// `∂J/∂k = δ·z` and `∂J/∂c = δ`, dropping the `+c` and `k` factors.
    Simplified,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrainConfig {
    pub mode: Mode,
    #[serde(default = "defaults::learning_rate")]
    pub learning_rate: f64,
    #[serde(default = "defaults::iterations")]
    pub iterations: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "defaults::init_rule")]
    pub init_rule: InitRule,
    /// Attainable `|k|` range, required by [`Mode::HardwareK`].
    #[serde(default)]
    pub k_clamp: Option<(f64, f64)>,
    /// Required by [`Mode::CoupledKc`].
    #[serde(default)]
    pub coupling: Option<CouplingCurve>,
    #[serde(default = "defaults::runs")]
    pub runs: usize,
    #[serde(default)]
    pub gradient_rule: GradientRule,
    /// Test accuracy is recorded every `eval_every` iterations and at the end.
    #[serde(default = "defaults::eval_every")]
    pub eval_every: usize,
    /// `None` is full-batch.
    #[serde(default)]
    pub batch_size: Option<usize>,
    /// Iterations over which a < 1 % loss decrease marks the run stalled.
    #[serde(default = "defaults::stall_window")]
    pub stall_window: usize,
    #[serde(default = "defaults::hidden")]
    pub hidden: usize,
}

mod defaults {
    use super::InitRule;
    pub fn learning_rate() -> f64 {
        0.1
    }
    pub fn iterations() -> usize {
        1000
    }
    pub fn init_rule() -> InitRule {
        InitRule::GlorotAll
    }
    pub fn runs() -> usize {
        10
    }
    pub fn eval_every() -> usize {
        10
    }
    pub fn stall_window() -> usize {
        50
    }
    pub fn hidden() -> usize {
        25
    }
}

impl TrainConfig {
    pub fn new(mode: Mode) -> Self {
        Self {
            mode,
            learning_rate: defaults::learning_rate(),
            iterations: defaults::iterations(),
            seed: 0,
            init_rule: defaults::init_rule(),
            k_clamp: None,
            coupling: None,
            runs: defaults::runs(),
            gradient_rule: GradientRule::Exact,
            eval_every: defaults::eval_every(),
            batch_size: None,
            stall_window: defaults::stall_window(),
            hidden: defaults::hidden(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate > 0.0) || !self.learning_rate.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "learning_rate = {}",
                self.learning_rate
            )));
        }
        if self.runs == 0 || self.hidden == 0 || self.eval_every == 0 {
            return Err(Error::InvalidParameter(
                "runs, hidden and eval_every must be ≥ 1".into(),
            ));
        }
        if self.batch_size == Some(0) {
            return Err(Error::InvalidParameter("batch_size must be ≥ 1".into()));
        }
        match (self.mode, self.k_clamp, &self.coupling) {
            (Mode::HardwareK, None, _) => {
                Err(Error::Contract("hardware_k requires k_clamp".into()))
            }
            (Mode::HardwareK, Some((lo, hi)), _) if !(0.0 <= lo && lo <= hi) => Err(
                Error::InvalidParameter(format!("k_clamp ({lo}, {hi}) must satisfy 0 ≤ lo ≤ hi")),
            ),
            (Mode::CoupledKc, _, None) => {
                Err(Error::Contract("coupled_kc requires coupling".into()))
            }
            (Mode::CoupledKc, _, Some(c)) if c.points.is_empty() => {
                Err(Error::Contract("coupling curve has no points".into()))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetParams {
    pub w1: Array2<f64>,
    pub w2: Array2<f64>,
    pub k2: Array1<f64>,
    pub c2: Array1<f64>,
    pub k3: Array1<f64>,
    pub c3: Array1<f64>,
}

impl NetParams {
    /// `(n_in, n_hidden, n_out)`
    pub fn sizes(&self) -> (usize, usize, usize) {
        (self.w1.ncols(), self.w1.nrows(), self.w2.nrows())
    }

    pub fn validate(&self) -> Result<()> {
        let (_, h, o) = self.sizes();
        if self.w2.ncols() != h
            || self.k2.len() != h
            || self.c2.len() != h
            || self.k3.len() != o
            || self.c3.len() != o
        {
            return Err(Error::Contract(format!(
                "inconsistent parameter shapes: w1 {:?}, w2 {:?}, k2 {}, c2 {}, k3 {}, c3 {}",
                self.w1.shape(),
                self.w2.shape(),
                self.k2.len(),
                self.c2.len(),
                self.k3.len(),
                self.c3.len()
            )));
        }
        let all = self
            .w1
            .iter()
            .chain(self.w2.iter())
            .chain(self.k2.iter())
            .chain(self.c2.iter())
            .chain(self.k3.iter())
            .chain(self.c3.iter());
        if all.clone().any(|x| !x.is_finite()) {
            return Err(Error::Contract("non-finite parameter".into()));
        }
        Ok(())
    }
}

pub fn glorot_epsilon(n_in: usize, n_out: usize) -> f64 {
    6f64.sqrt() / ((n_in + n_out) as f64).sqrt()
}

fn uniform<R: Rng>(r: &mut R, shape: (usize, usize), eps: f64) -> Array2<f64> {
    Array2::from_shape_simple_fn(shape, || r.random_range(-eps..=eps))
}

fn uniform1<R: Rng>(r: &mut R, n: usize, lo: f64, hi: f64) -> Array1<f64> {
    Array1::from_shape_simple_fn(n, || r.random_range(lo..=hi))
}

/// Clamp `|k|` into `[lo, hi]` keeping the sign; zero maps to `+lo`.
pub fn clamp_magnitude(k: f64, (lo, hi): (f64, f64)) -> f64 {
    let s = if k < 0.0 { -1.0 } else { 1.0 };
    s * k.abs().clamp(lo, hi)
}

/// Restrict `|k|` to the curve's tabulated k range and slave `c` to `c(|k|)`.
pub fn couple(k: &mut Array1<f64>, c: &mut Array1<f64>, curve: &CouplingCurve) {
    let range = curve.k_range();
    k.mapv_inplace(|v| clamp_magnitude(v, range));
    *c = k.mapv(|v| curve.c_at(v.abs()));
}

/// Draw parameters for a `sizes = (n_in, n_hidden, n_out)` network.
///
/// Weights use `U(±ε)` with `ε = √6/√(n_in + n_out)`. Under
/// [`InitRule::GlorotAll`], `k` and `c` of a layer with `n` neurons (an `n × 1`
/// vector) use `ε = √6/√(n + 1)`.
pub fn init_params(
    config: &TrainConfig,
    sizes: (usize, usize, usize),
    seed: u64,
) -> Result<NetParams> {
    config.validate()?;
    let (ni, nh, no) = sizes;
    if ni == 0 || nh == 0 || no == 0 {
        return Err(Error::InvalidParameter(format!("layer sizes {sizes:?}")));
    }
    let mut r = rng::stream(seed);
    let w1 = uniform(&mut r, (nh, ni), glorot_epsilon(ni, nh));
    let w2 = uniform(&mut r, (no, nh), glorot_epsilon(nh, no));
    let (mut k2, mut c2, mut k3, mut c3) = match config.init_rule {
        InitRule::GlorotAll => {
            let (eh, eo) = (glorot_epsilon(nh, 1), glorot_epsilon(no, 1));
            (
                uniform1(&mut r, nh, -eh, eh),
                uniform1(&mut r, nh, -eh, eh),
                uniform1(&mut r, no, -eo, eo),
                uniform1(&mut r, no, -eo, eo),
            )
        }
        InitRule::GlorotWWideKc => (
            uniform1(&mut r, nh, -4.0, 4.0),
            uniform1(&mut r, nh, -1.0, 1.0),
            uniform1(&mut r, no, -4.0, 4.0),
            uniform1(&mut r, no, -1.0, 1.0),
        ),
    };
    match config.mode {
        Mode::Fixed => {
            k2.fill(1.0);
            k3.fill(1.0);
            c2.fill(0.0);
            c3.fill(0.0);
        }
        Mode::TrainableKc => {}
        Mode::HardwareK => {
            let clamp = config.k_clamp.expect("validated");
            k2.mapv_inplace(|k| clamp_magnitude(k, clamp));
            k3.mapv_inplace(|k| clamp_magnitude(k, clamp));
            c2.fill(0.0);
            c3.fill(0.0);
        }
        Mode::CoupledKc => {
            let curve = config.coupling.as_ref().expect("validated");
            couple(&mut k2, &mut c2, curve);
            couple(&mut k3, &mut c3, curve);
        }
    }
    Ok(NetParams {
        w1,
        w2,
        k2,
        c2,
        k3,
        c3,
    })
}

fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ForwardCache {
    pub a1: Array2<f64>,
    pub z2: Array2<f64>,
    pub a2: Array2<f64>,
    pub z3: Array2<f64>,
    pub a3: Array2<f64>,
}

pub fn forward(x: &Array2<f64>, p: &NetParams) -> Result<ForwardCache> {
    p.validate()?;
    if x.ncols() != p.w1.ncols() {
        return Err(Error::Contract(format!(
            "input has {} columns, network expects {}",
            x.ncols(),
            p.w1.ncols()
        )));
    }
    let z2 = x.dot(&p.w1.t());
    let a2 = ((&z2 + &p.c2) * &p.k2).mapv(sigmoid);
    let z3 = a2.dot(&p.w2.t());
    let a3 = ((&z3 + &p.c3) * &p.k3).mapv(sigmoid);
    Ok(ForwardCache {
        a1: x.clone(),
        z2,
        a2,
        z3,
        a3,
    })
}

/// Cross-entropy summed over output units, averaged over the batch.
pub fn loss(a3: &Array2<f64>, y: &Array2<f64>) -> Result<f64> {
    if a3.shape() != y.shape() {
        return Err(Error::Contract(format!(
            "a3 {:?} vs Y {:?}",
            a3.shape(),
            y.shape()
        )));
    }
    let n = a3.nrows().max(1) as f64;
    let total: f64 = a3
        .iter()
        .zip(y.iter())
        .map(|(&a, &t)| {
            let a = a.clamp(LOG_CLAMP, 1.0 - LOG_CLAMP);
            -(t * a.ln() + (1.0 - t) * (1.0 - a).ln())
        })
        .sum();
    Ok(total / n)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grads {
    pub dw1: Array2<f64>,
    pub dw2: Array2<f64>,
    pub dk2: Array1<f64>,
    pub dc2: Array1<f64>,
    pub dk3: Array1<f64>,
    pub dc3: Array1<f64>,
}

pub fn backward(
    cache: &ForwardCache,
    p: &NetParams,
    y: &Array2<f64>,
    rule: GradientRule,
) -> Result<Grads> {
    if cache.a3.shape() != y.shape() {
        return Err(Error::Contract(format!(
            "a3 {:?} vs Y {:?}",
            cache.a3.shape(),
            y.shape()
        )));
    }
    let n = cache.a3.nrows().max(1) as f64;
    // ∂J/∂(k3·(z3 + c3))
    let d3 = (&cache.a3 - y) / n;
    let g3 = &d3 * &p.k3;
    let dw2 = g3.t().dot(&cache.a2);
    let da2 = g3.dot(&p.w2);
    let d2 = &da2 * &cache.a2 * &cache.a2.mapv(|a| 1.0 - a);
    let g2 = &d2 * &p.k2;
    let dw1 = g2.t().dot(&cache.a1);

    let (dk3, dc3, dk2, dc2) = match rule {
        GradientRule::Exact => (
            (&d3 * &(&cache.z3 + &p.c3)).sum_axis(Axis(0)),
            d3.sum_axis(Axis(0)) * &p.k3,
            (&d2 * &(&cache.z2 + &p.c2)).sum_axis(Axis(0)),
            d2.sum_axis(Axis(0)) * &p.k2,
        ),
        GradientRule::Simplified => (
            (&d3 * &cache.z3).sum_axis(Axis(0)),
            d3.sum_axis(Axis(0)),
            (&d2 * &cache.z2).sum_axis(Axis(0)),
            d2.sum_axis(Axis(0)),
        ),
    };
    Ok(Grads {
        dw1,
        dw2,
        dk2,
        dc2,
        dk3,
        dc3,
    })
}

/// One gradient-descent step on the parameters active in `config.mode`.
pub fn sgd_update(p: &mut NetParams, g: &Grads, config: &TrainConfig) {
    let lr = config.learning_rate;
    p.w1.scaled_add(-lr, &g.dw1);
    p.w2.scaled_add(-lr, &g.dw2);
    match config.mode {
        Mode::Fixed => {}
        Mode::TrainableKc => {
            p.k2.scaled_add(-lr, &g.dk2);
            p.k3.scaled_add(-lr, &g.dk3);
            p.c2.scaled_add(-lr, &g.dc2);
            p.c3.scaled_add(-lr, &g.dc3);
        }
        Mode::HardwareK => {
            let clamp = config.k_clamp.expect("validated");
            p.k2.scaled_add(-lr, &g.dk2);
            p.k3.scaled_add(-lr, &g.dk3);
            p.k2.mapv_inplace(|k| clamp_magnitude(k, clamp));
            p.k3.mapv_inplace(|k| clamp_magnitude(k, clamp));
        }
        Mode::CoupledKc => {
            let curve = config.coupling.as_ref().expect("validated");
            p.k2.scaled_add(-lr, &g.dk2);
            p.k3.scaled_add(-lr, &g.dk3);
            couple(&mut p.k2, &mut p.c2, curve);
            couple(&mut p.k3, &mut p.c3, curve);
        }
    }
}

/// Index of the largest entry per row; ties go to the lowest index.
pub fn predict(a3: &Array2<f64>) -> Vec<usize> {
    a3.rows()
        .into_iter()
        .map(|row| {
            let mut best = 0;
            for (j, &v) in row.iter().enumerate() {
                if v > row[best] {
                    best = j;
                }
            }
            best
        })
        .collect()
}

pub fn evaluate(ds: &Dataset, p: &NetParams) -> Result<f64> {
    if ds.is_empty() {
        return Err(Error::InvalidParameter("empty evaluation set".into()));
    }
    let cache = forward(&ds.images, p)?;
    let hits = predict(&cache.a3)
        .iter()
        .zip(&ds.labels)
        .filter(|(&p, &l)| p == l as usize)
        .count();
    Ok(hits as f64 / ds.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamRanges {
    pub k2: (f64, f64),
    pub k3: (f64, f64),
    pub c2: (f64, f64),
    pub c3: (f64, f64),
}

fn extent(v: &Array1<f64>) -> (f64, f64) {
    v.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        })
}

fn widen(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0.min(b.0), a.1.max(b.1))
}

impl ParamRanges {
    pub fn of(p: &NetParams) -> Self {
        Self {
            k2: extent(&p.k2),
            k3: extent(&p.k3),
            c2: extent(&p.c2),
            c3: extent(&p.c3),
        }
    }

    pub fn union(&self, o: &Self) -> Self {
        Self {
            k2: widen(self.k2, o.k2),
            k3: widen(self.k3, o.k3),
            c2: widen(self.c2, o.c2),
            c3: widen(self.c3, o.c3),
        }
    }
}

/// One training run. Entry `i` of `loss` and `ranges` describes the
/// parameters entering iteration `i`; `accuracy` holds `(iterations done, test accuracy)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainHistory {
    pub loss: Vec<f64>,
    pub accuracy: Vec<(usize, f64)>,
    pub ranges: Vec<ParamRanges>,
    pub diverged: bool,
    pub stalled: bool,
}

impl TrainHistory {
    pub fn final_accuracy(&self) -> Option<f64> {
        self.accuracy.last().map(|&(_, a)| a)
    }

    /// First recorded iteration at which test accuracy reaches `threshold`.
    pub fn iterations_to(&self, threshold: f64) -> Option<usize> {
        self.accuracy
            .iter()
            .find(|&&(_, a)| a >= threshold)
            .map(|&(i, _)| i)
    }

    pub fn accuracy_at(&self, iteration: usize) -> Option<f64> {
        self.accuracy
            .iter()
            .find(|&&(i, _)| i == iteration)
            .map(|&(_, a)| a)
    }

    pub const CSV_HEADER: [&'static str; 7] = [
        "iteration",
        "loss",
        "accuracy",
        "k_min",
        "k_max",
        "c_min",
        "c_max",
    ];

    pub fn to_csv(&self) -> CsvTable {
        let mut t = CsvTable::new(&Self::CSV_HEADER);
        for (i, (&j, r)) in self.loss.iter().zip(&self.ranges).enumerate() {
            let acc = self.accuracy_at(i).map(fmt_f64).unwrap_or_default();
            let k = widen(r.k2, r.k3);
            let c = widen(r.c2, r.c3);
            t.push_row(vec![
                i.to_string(),
                fmt_f64(j),
                acc,
                fmt_f64(k.0),
                fmt_f64(k.1),
                fmt_f64(c.0),
                fmt_f64(c.1),
            ]);
        }
        t
    }
}

/// Element-wise extrema over every recorded iteration.
pub fn learned_ranges(h: &TrainHistory) -> Option<ParamRanges> {
    let mut it = h.ranges.iter();
    let first = *it.next()?;
    Some(it.fold(first, |acc, r| acc.union(r)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainOutcome {
    pub runs: Vec<TrainHistory>,
    pub params: Vec<NetParams>,
}

impl TrainOutcome {
    /// Mean over runs that recorded each index.
    pub fn mean_loss(&self) -> Vec<f64> {
        mean_by_index(self.runs.iter().map(|h| h.loss.as_slice()))
    }

    /// Mean test accuracy per checkpoint over runs that reached it.
    pub fn mean_accuracy(&self) -> Vec<(usize, f64)> {
        let mut acc: std::collections::BTreeMap<usize, (f64, usize)> = Default::default();
        for h in &self.runs {
            for &(i, a) in &h.accuracy {
                let e = acc.entry(i).or_insert((0.0, 0));
                e.0 += a;
                e.1 += 1;
            }
        }
        acc.into_iter()
            .map(|(i, (s, n))| (i, s / n as f64))
            .collect()
    }

    pub fn mean_final_accuracy(&self) -> f64 {
        let v: Vec<f64> = self
            .runs
            .iter()
            .filter_map(|h| h.final_accuracy())
            .collect();
        v.iter().sum::<f64>() / v.len().max(1) as f64
    }
}

fn mean_by_index<'a>(series: impl Iterator<Item = &'a [f64]>) -> Vec<f64> {
    let mut sum: Vec<(f64, usize)> = Vec::new();
    for s in series {
        if sum.len() < s.len() {
            sum.resize(s.len(), (0.0, 0));
        }
        for (acc, &x) in sum.iter_mut().zip(s) {
            acc.0 += x;
            acc.1 += 1;
        }
    }
    sum.into_iter().map(|(s, n)| s / n as f64).collect()
}

fn batch(
    x: &Array2<f64>,
    y: &Array2<f64>,
    it: usize,
    size: Option<usize>,
) -> (Array2<f64>, Array2<f64>) {
    match size {
        Some(b) if b < x.nrows() => {
            let n = x.nrows();
            let idx: Vec<usize> = (0..b).map(|j| (it * b + j) % n).collect();
            (x.select(Axis(0), &idx), y.select(Axis(0), &idx))
        }
        _ => (x.clone(), y.clone()),
    }
}

/// Train a single run from `params`.
pub fn train_run(
    train: &Dataset,
    test: &Dataset,
    config: &TrainConfig,
    mut params: NetParams,
) -> Result<(TrainHistory, NetParams)> {
    config.validate()?;
    let y = dataio::one_hot(&train.labels)?;
    let mut h = TrainHistory {
        loss: Vec::with_capacity(config.iterations),
        accuracy: Vec::new(),
        ranges: Vec::with_capacity(config.iterations),
        diverged: false,
        stalled: false,
    };
    let full = config.batch_size.is_none_or(|b| b >= train.len());
    for it in 0..config.iterations {
        if it % config.eval_every == 0 {
            h.accuracy.push((it, evaluate(test, &params)?));
        }
        let (cache, yb) = if full {
            (forward(&train.images, &params)?, None)
        } else {
            let (xb, yb) = batch(&train.images, &y, it, config.batch_size);
            (forward(&xb, &params)?, Some(yb))
        };
        let yb = yb.as_ref().unwrap_or(&y);
        let j = loss(&cache.a3, yb)?;
        h.ranges.push(ParamRanges::of(&params));
        h.loss.push(j);
        if !j.is_finite() {
            h.diverged = true;
            break;
        }
        let g = backward(&cache, &params, yb, config.gradient_rule)?;
        sgd_update(&mut params, &g, config);
        if params.validate().is_err() {
            h.diverged = true;
            break;
        }
        if it == config.stall_window && h.loss[it] > 0.99 * h.loss[0] {
            h.stalled = true;
        }
    }
    if !h.diverged {
        h.accuracy
            .push((config.iterations, evaluate(test, &params)?));
    }
    Ok((h, params))
}

/// `config.runs` independent runs; run `r` initializes from `derive_seed(seed, [r])`.
pub fn train(
    train_set: &Dataset,
    test_set: &Dataset,
    config: &TrainConfig,
) -> Result<TrainOutcome> {
    config.validate()?;
    let sizes = (
        dataio::PIXELS.min(train_set.images.ncols()),
        config.hidden,
        dataio::CLASSES,
    );
    let mut out = TrainOutcome {
        runs: Vec::with_capacity(config.runs),
        params: Vec::with_capacity(config.runs),
    };
    for r in 0..config.runs {
        let p0 = init_params(config, sizes, rng::derive_seed(config.seed, &[r as u64]))?;
        let (h, p) = train_run(train_set, test_set, config, p0)?;
        out.runs.push(h);
        out.params.push(p);
    }
    Ok(out)
}

/// JSON checkpoint with every parameter array and the producing config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub config: TrainConfig,
    pub params: NetParams,
}

impl Checkpoint {
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let c: Self = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        c.params.validate()?;
        Ok(c)
    }
}
