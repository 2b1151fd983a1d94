//! Command-line front end: simulation sweeps, fits, lookup tables, training
//! and figure data.
//!
//! Exit codes: 0 success, 1 usage error, 2 runtime error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::actfit::{self, DeviceLut};
use crate::dataio::{self, CsvTable, Dataset, Split};
use crate::error::{Error, Result};
use crate::magdyn::{DeviceParams, Macrospin, PulseSpec, SimEnv};
use crate::montecarlo::{self, Ensemble, PswCurve};
use crate::neuronet::{self, Checkpoint, GradientRule, InitRule, Mode, TrainConfig, TrainOutcome};
use crate::rng;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;

pub const THREADS_ENV: &str = "SPINLAB_THREADS";
pub const MNIST_ENV: &str = "SPINLAB_MNIST_DIR";

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub device: DeviceParams,
    pub env: SimEnv,
    pub sweep: SweepConfig,
    pub fit: FitConfig,
    pub train: TrainSection,
    pub io: IoConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub widths_ns: Vec<f64>,
    pub barriers_kbt: Vec<f64>,
    pub currents_ua: Vec<f64>,
    pub trials: usize,
    pub lut_widths_ns: Vec<f64>,
    pub lut_barriers_kbt: Vec<f64>,
    /// Pulse widths traced for the k–c coupling figures.
    pub coupling_widths_ns: Vec<f64>,
    pub trajectory_current_ua: f64,
    pub trajectory_width_ns: f64,
    pub trajectory_runs: usize,
    pub trajectory_stride: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            widths_ns: vec![30.0, 200.0],
            barriers_kbt: vec![7.5],
            currents_ua: montecarlo::linspace(1.0, 13.0, 25),
            trials: 100,
            lut_widths_ns: vec![30.0, 60.0, 100.0, 200.0],
            lut_barriers_kbt: vec![7.5, 11.25, 15.0],
            coupling_widths_ns: vec![30.0, 50.0, 100.0, 150.0, 200.0],
            trajectory_current_ua: 11.3,
            trajectory_width_ns: 30.0,
            trajectory_runs: 100,
            trajectory_stride: 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FitConfig {
    /// Device shift held fixed when deriving the hardware k range; `None`
    /// uses the full LUT k range.
    pub c_fixed_ua: Option<f64>,
    pub tol_c_ua: f64,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            c_fixed_ua: None,
            tol_c_ua: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrainSection {
    pub learning_rate: f64,
    pub iterations: usize,
    pub runs: usize,
    pub init_rule: InitRule,
    pub gradient_rule: GradientRule,
    pub eval_every: usize,
    pub hidden: usize,
    pub n_train: usize,
    pub batch_size: Option<usize>,
    /// Prototype-plus-noise stand-in with this many training samples.
    pub synthetic: Option<usize>,
}

impl Default for TrainSection {
    fn default() -> Self {
        Self {
            learning_rate: 0.1,
            iterations: 1000,
            runs: 10,
            init_rule: InitRule::GlorotAll,
            gradient_rule: GradientRule::Exact,
            eval_every: 10,
            hidden: 25,
            n_train: dataio::DEFAULT_TRAIN,
            batch_size: None,
            synthetic: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IoConfig {
    pub out_dir: PathBuf,
    pub mnist_dir: Option<PathBuf>,
    pub lut: Option<PathBuf>,
}

impl Default for IoConfig {
    fn default() -> Self {
        Self {
            out_dir: PathBuf::from("out"),
            mnist_dir: None,
            lut: None,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn sha256(&self) -> String {
        Sha256::digest(self.to_json().as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    fn lut_path(&self) -> PathBuf {
        self.io
            .lut
            .clone()
            .unwrap_or_else(|| self.io.out_dir.join("lut.csv"))
    }

    fn train_config(&self, mode: Mode) -> TrainConfig {
        let t = &self.train;
        TrainConfig {
            learning_rate: t.learning_rate,
            iterations: t.iterations,
            seed: self.env.seed,
            init_rule: t.init_rule,
            runs: t.runs,
            gradient_rule: t.gradient_rule,
            eval_every: t.eval_every,
            batch_size: t.batch_size,
            hidden: t.hidden,
            ..TrainConfig::new(mode)
        }
    }
}

/// `# key: value` header lines identifying the producing configuration.
pub fn provenance(cfg: &RunConfig) -> Vec<(String, String)> {
    vec![
        ("spinlab_version".into(), env!("CARGO_PKG_VERSION").into()),
        ("config_sha256".into(), cfg.sha256()),
        ("seed".into(), cfg.env.seed.to_string()),
        ("config".into(), cfg.to_json()),
    ]
}

/// Joule dissipated by one pulse, `I²·R·t`.
pub fn energy_per_neuron(current: f64, resistance: f64, width: f64) -> f64 {
    current * current * resistance * width
}

/// `x` with three significant figures.
pub fn three_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let decimals = (2 - x.abs().log10().floor() as i32).max(0) as usize;
    format!("{x:.decimals$}")
}

// ---------------------------------------------------------------------------
// Argument surface
// ---------------------------------------------------------------------------

#[derive(Debug, Parser)]
#[command(
    name = "spinlab",
    version,
    about = "MTJ neuron simulation and trainable-activation training",
    arg_required_else_help = true
)]
struct Cli {
    /// JSON run configuration
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Worker threads for Monte Carlo ensembles (falls back to SPINLAB_THREADS)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Fixed,
    TrainableKc,
    CoupledKc,
    HardwareK,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Fixed => Mode::Fixed,
            ModeArg::TrainableKc => Mode::TrainableKc,
            ModeArg::CoupledKc => Mode::CoupledKc,
            ModeArg::HardwareK => Mode::HardwareK,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    #[value(name = "1b")]
    F1b,
    #[value(name = "1d")]
    F1d,
    #[value(name = "2b")]
    F2b,
    #[value(name = "2c")]
    F2c,
    #[value(name = "3a")]
    F3a,
    #[value(name = "3b")]
    F3b,
    #[value(name = "4a")]
    F4a,
    #[value(name = "4b")]
    F4b,
    #[value(name = "5a")]
    F5a,
    #[value(name = "9")]
    F9,
}

#[derive(Debug, clap::Args, Default)]
struct DataArgs {
    /// Directory with the four MNIST IDX files (falls back to SPINLAB_MNIST_DIR)
    #[arg(long)]
    mnist_dir: Option<PathBuf>,
    /// Use a synthetic stand-in with this many training samples
    #[arg(long)]
    synthetic: Option<usize>,
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long)]
    runs: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Switching probability versus current for each (width, barrier) pair
    Sweep {
        #[arg(long = "width-ns")]
        width_ns: Vec<f64>,
        #[arg(long = "barrier")]
        barrier: Vec<f64>,
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Fit the sigmoid to switching-probability CSV files
    Fit {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Build the (width, barrier) → (k, c) lookup table
    Lut {
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Train the network
    Train {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        lut: Option<PathBuf>,
        #[command(flatten)]
        data: DataArgs,
    },
    /// Test accuracy of a checkpoint
    Eval {
        checkpoint: PathBuf,
        #[command(flatten)]
        data: DataArgs,
    },
    /// Energy of one neuron pulse, I²Rt
    Energy {
        #[arg(long = "current-uA")]
        current_ua: f64,
        #[arg(long = "resistance-ohm")]
        resistance_ohm: f64,
        #[arg(long = "width-ns")]
        width_ns: f64,
    },
    /// Emit the data behind one figure
    Figure {
        #[arg(value_enum)]
        name: Figure,
        #[arg(long)]
        trials: Option<usize>,
        #[command(flatten)]
        data: DataArgs,
    },
}

/// Parse `argv` (program name first) and run, writing to the process streams.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`dispatch`] with explicit output streams.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_RUNTIME
        }
    }
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

struct Ctx {
    cfg: RunConfig,
    threads: usize,
}

impl Ctx {
    fn out(&self, name: &str) -> PathBuf {
        self.cfg.io.out_dir.join(name)
    }

    fn write(&self, name: &str, mut table: CsvTable) -> Result<PathBuf> {
        let mut prov = provenance(&self.cfg);
        prov.append(&mut table.provenance);
        table.provenance = prov;
        let path = self.out(name);
        table.write(&path)?;
        Ok(path)
    }

    fn ensemble(&self, trials: Option<usize>) -> Ensemble {
        Ensemble::new(trials.unwrap_or(self.cfg.sweep.trials)).threads(self.threads)
    }

    fn currents(&self) -> Vec<f64> {
        self.cfg
            .sweep
            .currents_ua
            .iter()
            .map(|i| i * 1e-6)
            .collect()
    }
}

fn resolve_threads(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var(THREADS_ENV).ok()?.parse().ok())
        .or_else(|| std::thread::available_parallelism().ok().map(|n| n.get()))
        .unwrap_or(1)
        .max(1)
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(s) = cli.seed {
        cfg.env.seed = s;
    }
    if let Some(d) = cli.out_dir {
        cfg.io.out_dir = d;
    }
    let ctx = Ctx {
        cfg,
        threads: resolve_threads(cli.threads),
    };
    match cli.cmd {
        Cmd::Sweep {
            width_ns,
            barrier,
            trials,
        } => {
            let widths = if width_ns.is_empty() {
                ctx.cfg.sweep.widths_ns.clone()
            } else {
                width_ns
            };
            let barriers = if barrier.is_empty() {
                ctx.cfg.sweep.barriers_kbt.clone()
            } else {
                barrier
            };
            for c in sweep(&ctx, &widths, &barriers, trials)? {
                let path = ctx.write(&curve_name("psw", &c), curve_table(&c, None))?;
                writeln!(out, "{}", path.display())?;
            }
        }
        Cmd::Fit { files } => {
            let mut t = CsvTable::new(&[
                "file",
                "k_per_uA",
                "c_uA",
                "slope_at_half",
                "shift_uA",
                "rss",
                "converged",
            ]);
            for f in &files {
                let curve = PswCurve::from_table(&CsvTable::read(f)?)?;
                let fit = actfit::fit_sigmoid(&curve)?;
                let (slope, shift) = actfit::slope_and_shift(&fit);
                writeln!(
                    out,
                    "{}: k = {:.4} /uA, c = {:.4} uA, slope = {:.4} /uA, shift = {:.4} uA, rss = {:.3e}{}",
                    f.display(),
                    fit.k,
                    fit.c,
                    slope,
                    shift,
                    fit.rss,
                    if fit.converged { "" } else { " (not converged)" }
                )?;
                let mut row = vec![f.display().to_string()];
                row.extend([fit.k, fit.c, slope, shift, fit.rss].map(dataio::fmt_f64));
                row.push(fit.converged.to_string());
                t.push_row(row);
            }
            ctx.write("fits.csv", t)?;
        }
        Cmd::Lut { trials } => {
            let lut = build_lut(&ctx, trials)?;
            let path = ctx.write("lut.csv", lut.to_csv()?)?;
            let (lo, hi) = actfit::k_range(&lut);
            writeln!(out, "{} (k from {lo:.3} to {hi:.3} /uA)", path.display())?;
        }
        Cmd::Train { mode, lut, data } => {
            let mode: Mode = mode.into();
            let (train_set, test_set) = load_data(&ctx, &data)?;
            let mut tc = train_config(&ctx, mode, &data);
            if let Some(p) = lut {
                tc.k_clamp = None;
                attach_device(&ctx, &mut tc, Some(&p))?;
            } else {
                attach_device(&ctx, &mut tc, None)?;
            }
            let outcome = neuronet::train(&train_set, &test_set, &tc)?;
            let tag = mode_tag(mode);
            for (r, (h, p)) in outcome.runs.iter().zip(&outcome.params).enumerate() {
                ctx.write(&format!("history_{tag}_run{r}.csv"), h.to_csv())?;
                let ck = Checkpoint {
                    config: tc.clone(),
                    params: p.clone(),
                };
                let path = ctx.out(&format!("checkpoint_{tag}_run{r}.json"));
                fs::create_dir_all(&ctx.cfg.io.out_dir)?;
                fs::write(path, ck.to_json()?)?;
            }
            ctx.write(
                &format!("train_{tag}.csv"),
                training_table(&[(tag, &outcome)]),
            )?;
            writeln!(
                out,
                "{tag}: mean final accuracy {:.4} over {} runs",
                outcome.mean_final_accuracy(),
                outcome.runs.len()
            )?;
        }
        Cmd::Eval { checkpoint, data } => {
            let ck = Checkpoint::from_json(&fs::read_to_string(&checkpoint)?)?;
            let (_, test_set) = load_data(&ctx, &data)?;
            let acc = neuronet::evaluate(&test_set, &ck.params)?;
            writeln!(out, "accuracy {acc:.4}")?;
        }
        Cmd::Energy {
            current_ua,
            resistance_ohm,
            width_ns,
        } => {
            if current_ua < 0.0 || resistance_ohm < 0.0 || width_ns < 0.0 {
                return Err(Error::InvalidParameter(
                    "energy inputs must be non-negative".into(),
                ));
            }
            let e = energy_per_neuron(current_ua * 1e-6, resistance_ohm, width_ns * 1e-9);
            writeln!(out, "{} fJ", three_sig(e * 1e15))?;
        }
        Cmd::Figure { name, trials, data } => {
            for p in figure(&ctx, name, trials, &data)? {
                writeln!(out, "{}", p.display())?;
            }
        }
    }
    Ok(())
}

fn mode_tag(m: Mode) -> &'static str {
    match m {
        Mode::Fixed => "fixed",
        Mode::TrainableKc => "trainable_kc",
        Mode::CoupledKc => "coupled_kc",
        Mode::HardwareK => "hardware_k",
    }
}

fn curve_name(prefix: &str, c: &PswCurve) -> String {
    format!("{prefix}_w{}ns_b{}kBT.csv", c.pulse_width * 1e9, c.barrier)
}

fn sweep(
    ctx: &Ctx,
    widths_ns: &[f64],
    barriers: &[f64],
    trials: Option<usize>,
) -> Result<Vec<PswCurve>> {
    let widths: Vec<f64> = widths_ns.iter().map(|w| w * 1e-9).collect();
    montecarlo::sweep_grid(
        &ctx.cfg.device,
        &widths,
        barriers,
        &ctx.currents(),
        &ctx.cfg.env,
        ctx.ensemble(trials),
    )
}

/// Curve table, with a `p_fit` column when a fit is supplied.
fn curve_table(c: &PswCurve, fit: Option<&actfit::SigmoidFit>) -> CsvTable {
    let mut header: Vec<&str> = PswCurve::CSV_HEADER.to_vec();
    if fit.is_some() {
        header.push("p_fit");
    }
    let mut t = CsvTable::new(&header);
    for (mut row, p) in c.csv_rows().into_iter().zip(&c.points) {
        if let Some(f) = fit {
            row.push(dataio::fmt_f64(f.predict(p.current * 1e6)));
        }
        t.push_row(row);
    }
    if let Some(f) = fit {
        t.provenance
            .push(("fit".into(), format!("k={} c={} rss={}", f.k, f.c, f.rss)));
    }
    t
}

fn build_lut(ctx: &Ctx, trials: Option<usize>) -> Result<DeviceLut> {
    let s = &ctx.cfg.sweep;
    let curves = sweep(ctx, &s.lut_widths_ns, &s.lut_barriers_kbt, trials)?;
    actfit::build_lut(&curves, ctx.cfg.env.seed)
}

fn load_lut(ctx: &Ctx, path: Option<&Path>) -> Result<DeviceLut> {
    let path = path
        .map(Path::to_path_buf)
        .unwrap_or_else(|| ctx.cfg.lut_path());
    if !path.exists() {
        return Err(Error::MissingArtifact {
            what: "device lookup table",
            path,
            producer: "spinlab lut",
        });
    }
    DeviceLut::from_csv(&CsvTable::read(&path)?)
}

fn train_config(ctx: &Ctx, mode: Mode, data: &DataArgs) -> TrainConfig {
    let mut tc = ctx.cfg.train_config(mode);
    if let Some(i) = data.iterations {
        tc.iterations = i;
    }
    if let Some(r) = data.runs {
        tc.runs = r;
    }
    tc
}

/// Fill the device-derived fields that `hardware_k` and `coupled_kc` need.
fn attach_device(ctx: &Ctx, tc: &mut TrainConfig, lut_path: Option<&Path>) -> Result<()> {
    match tc.mode {
        Mode::HardwareK => {
            let lut = load_lut(ctx, lut_path)?;
            tc.k_clamp = Some(match ctx.cfg.fit.c_fixed_ua {
                Some(c) => actfit::k_range_at_c(&lut, c, ctx.cfg.fit.tol_c_ua)?.ok_or(
                    Error::Infeasible {
                        k_target: f64::NAN,
                        c_fixed: c,
                        k_min: f64::NAN,
                        k_max: f64::NAN,
                    },
                )?,
                None => actfit::k_range(&lut),
            });
        }
        Mode::CoupledKc => {
            let lut = load_lut(ctx, lut_path)?;
            tc.coupling = Some(actfit::coupling_curve(&lut, lut.barrier_kbt[0])?);
        }
        _ => {}
    }
    Ok(())
}

fn load_data(ctx: &Ctx, data: &DataArgs) -> Result<(Dataset, Dataset)> {
    if let Some(n) = data.synthetic.or(ctx.cfg.train.synthetic) {
        let seed = ctx.cfg.env.seed;
        return Ok((
            dataio::synthetic(
                n,
                rng::derive_seed(seed, &[1]),
                rng::derive_seed(seed, &[2]),
                0.5,
                Split::Train,
            ),
            dataio::synthetic(
                (n / 5).max(10),
                rng::derive_seed(seed, &[1]),
                rng::derive_seed(seed, &[3]),
                0.5,
                Split::Test,
            ),
        ));
    }
    let dir = data
        .mnist_dir
        .clone()
        .or_else(|| ctx.cfg.io.mnist_dir.clone())
        .or_else(|| std::env::var_os(MNIST_ENV).map(PathBuf::from))
        .ok_or(Error::MissingArtifact {
            what: "MNIST directory",
            path: PathBuf::from("<unset>"),
            producer: "--mnist-dir <dir> or SPINLAB_MNIST_DIR",
        })?;
    dataio::load_mnist(&dir, ctx.cfg.train.n_train)
}

/// `iteration` plus `loss_<tag>` and `accuracy_<tag>` per outcome; accuracy
/// cells are empty between checkpoints.
fn training_table(outcomes: &[(&str, &TrainOutcome)]) -> CsvTable {
    let mut header = vec!["iteration".to_string()];
    for (tag, _) in outcomes {
        header.push(format!("loss_{tag}"));
        header.push(format!("accuracy_{tag}"));
    }
    let losses: Vec<Vec<f64>> = outcomes.iter().map(|(_, o)| o.mean_loss()).collect();
    let accs: Vec<Vec<(usize, f64)>> = outcomes.iter().map(|(_, o)| o.mean_accuracy()).collect();
    let n = losses
        .iter()
        .map(Vec::len)
        .chain(accs.iter().filter_map(|a| a.last().map(|&(i, _)| i + 1)))
        .max()
        .unwrap_or(0);
    let mut t = CsvTable::new(&header);
    for i in 0..n {
        let mut row = vec![i.to_string()];
        for (l, a) in losses.iter().zip(&accs) {
            row.push(l.get(i).map(|&x| dataio::fmt_f64(x)).unwrap_or_default());
            row.push(
                a.iter()
                    .find(|&&(j, _)| j == i)
                    .map(|&(_, x)| dataio::fmt_f64(x))
                    .unwrap_or_default(),
            );
        }
        t.push_row(row);
    }
    t
}

// ---------------------------------------------------------------------------
// Figures
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct ColumnDoc {
    name: String,
    unit: &'static str,
    description: &'static str,
}

#[derive(Serialize)]
struct FileDoc {
    path: String,
    columns: Vec<ColumnDoc>,
}

#[derive(Serialize)]
struct Schema {
    figure: String,
    description: &'static str,
    files: Vec<FileDoc>,
}

fn col(name: impl Into<String>, unit: &'static str, description: &'static str) -> ColumnDoc {
    ColumnDoc {
        name: name.into(),
        unit,
        description,
    }
}

fn curve_columns(with_fit: bool) -> Vec<ColumnDoc> {
    let mut c = vec![
        col("current_uA", "uA", "pulse amplitude"),
        col("p_sw", "1", "fraction of trials ending with m_z > 0.5"),
        col("ci95", "1", "normal-approximation 95% half-width"),
        col("trials", "1", "thermal realizations per point"),
        col("pulse_width_ns", "ns", "pulse duration"),
        col("barrier_kBT", "k_B T", "energy barrier"),
    ];
    if with_fit {
        c.push(col("p_fit", "1", "fitted sigmoid 1/(1+exp(-k(I+c)))"));
    }
    c
}

fn figure_name(f: Figure) -> &'static str {
    match f {
        Figure::F1b => "1b",
        Figure::F1d => "1d",
        Figure::F2b => "2b",
        Figure::F2c => "2c",
        Figure::F3a => "3a",
        Figure::F3b => "3b",
        Figure::F4a => "4a",
        Figure::F4b => "4b",
        Figure::F5a => "5a",
        Figure::F9 => "9",
    }
}

fn fitted_curves(
    ctx: &Ctx,
    curves: Vec<PswCurve>,
    prefix: &str,
    files: &mut Vec<FileDoc>,
) -> Result<Vec<PathBuf>> {
    let mut paths = Vec::new();
    for c in curves {
        let fit = actfit::fit_sigmoid(&c)?;
        let name = curve_name(prefix, &c);
        paths.push(ctx.write(&name, curve_table(&c, Some(&fit)))?);
        files.push(FileDoc {
            path: name,
            columns: curve_columns(true),
        });
    }
    Ok(paths)
}

fn kc_table(lut: &DeviceLut, bi: usize) -> CsvTable {
    let mut t = CsvTable::new(&[
        "pulse_width_ns",
        "barrier_kBT",
        "k_per_uA",
        "c_uA",
        "slope_at_half",
        "shift_uA",
    ]);
    for (wi, &w) in lut.pulse_width_ns.iter().enumerate() {
        let f = lut.cell(wi, bi);
        let (s, sh) = actfit::slope_and_shift(f);
        t.push_floats(&[w, lut.barrier_kbt[bi], f.k, f.c, s, sh]);
    }
    t
}

fn kc_columns() -> Vec<ColumnDoc> {
    vec![
        col("pulse_width_ns", "ns", "pulse duration"),
        col("barrier_kBT", "k_B T", "energy barrier"),
        col("k_per_uA", "1/uA", "fitted sigmoid slope parameter"),
        col(
            "c_uA",
            "uA",
            "fitted sigmoid shift parameter (negative for right-shifted curves)",
        ),
        col("slope_at_half", "1/uA", "geometric slope at p = 0.5, k/4"),
        col("shift_uA", "uA", "midpoint current, -c"),
    ]
}

fn train_columns(tags: &[&str]) -> Vec<ColumnDoc> {
    let mut c = vec![col(
        "iteration",
        "1",
        "gradient steps completed before this row",
    )];
    for t in tags {
        c.push(col(
            format!("loss_{t}"),
            "1",
            "run-averaged full-batch cross-entropy",
        ));
        c.push(col(
            format!("accuracy_{t}"),
            "1",
            "run-averaged test accuracy; empty between checkpoints",
        ));
    }
    c
}

fn figure(ctx: &Ctx, fig: Figure, trials: Option<usize>, data: &DataArgs) -> Result<Vec<PathBuf>> {
    let s = &ctx.cfg.sweep;
    let name = figure_name(fig);
    let mut files = Vec::new();
    let mut paths = Vec::new();
    let description = match fig {
        Figure::F1b => {
            let curves = sweep(ctx, &s.widths_ns, &s.barriers_kbt[..1], trials)?;
            paths = fitted_curves(ctx, curves, "fig1b", &mut files)?;
            "switching probability versus current for each pulse width, with the fitted sigmoid"
        }
        Figure::F3a => {
            let curves = sweep(ctx, &s.widths_ns[..1], &s.lut_barriers_kbt, trials)?;
            paths = fitted_curves(ctx, curves, "fig3a", &mut files)?;
            "switching probability versus current for each energy barrier at the shortest pulse width"
        }
        Figure::F3b => {
            let curves = sweep(ctx, &s.lut_widths_ns, &s.lut_barriers_kbt, trials)?;
            paths = fitted_curves(ctx, curves, "fig3b", &mut files)?;
            "switching probability versus current for every (pulse width, barrier) combination"
        }
        Figure::F2b | Figure::F2c => {
            let curves = sweep(ctx, &s.coupling_widths_ns, &s.barriers_kbt[..1], trials)?;
            let lut = actfit::build_lut(&curves, ctx.cfg.env.seed)?;
            if fig == Figure::F2b {
                paths.push(ctx.write("fig2b.csv", kc_table(&lut, 0))?);
                files.push(FileDoc {
                    path: "fig2b.csv".into(),
                    columns: kc_columns(),
                });
                "fitted k and c versus pulse width at a fixed barrier"
            } else {
                let cc = actfit::coupling_curve(&lut, lut.barrier_kbt[0])?;
                let (lo, hi) = cc.k_range();
                let mut t = CsvTable::new(&["k_per_uA", "c_uA", "tabulated"]);
                let mut ks: Vec<(f64, bool)> = montecarlo::linspace(lo, hi, 41)
                    .into_iter()
                    .map(|k| (k, false))
                    .collect();
                ks.extend(cc.points.iter().map(|p| (p.1, true)));
                ks.sort_by(|a, b| a.0.total_cmp(&b.0));
                for (k, knot) in ks {
                    t.push_row(vec![
                        dataio::fmt_f64(k),
                        dataio::fmt_f64(cc.c_at(k)),
                        (knot as u8).to_string(),
                    ]);
                }
                paths.push(ctx.write("fig2c.csv", t)?);
                files.push(FileDoc {
                    path: "fig2c.csv".into(),
                    columns: vec![
                        col(
                            "k_per_uA",
                            "1/uA",
                            "slope parameter along the pulse-width path",
                        ),
                        col(
                            "c_uA",
                            "uA",
                            "shift implied by the coupling c(k), piecewise linear",
                        ),
                        col(
                            "tabulated",
                            "1",
                            "1 for fitted points, 0 for interpolated points",
                        ),
                    ],
                });
                "coupling between k and c traced by varying pulse width"
            }
        }
        Figure::F4a => {
            let lut = build_lut(ctx, trials)?;
            paths.push(ctx.write("lut.csv", lut.to_csv()?)?);
            files.push(FileDoc {
                path: "lut.csv".into(),
                columns: vec![
                    col("pulse_width_ns", "ns", "pulse duration"),
                    col("barrier_kBT", "k_B T", "energy barrier"),
                    col("k_per_uA", "1/uA", "fitted slope parameter"),
                    col("c_uA", "uA", "fitted shift parameter"),
                    col("rss", "1", "fit residual sum of squares"),
                    col("trials", "1", "thermal realizations per point"),
                ],
            });
            "fitted k over the (pulse width, barrier) grid"
        }
        Figure::F5a => {
            let device = ctx.cfg.device.with_barrier(s.barriers_kbt[0]);
            let env = SimEnv {
                stride: s.trajectory_stride.max(1),
                ..ctx.cfg.env.clone()
            };
            let sim = Macrospin::new(&device, &env)?;
            let pulse =
                PulseSpec::new(s.trajectory_current_ua * 1e-6, s.trajectory_width_ns * 1e-9);
            for r in 0..s.trajectory_runs {
                let mut g = rng::stream(rng::derive_seed(env.seed, &[5, r as u64]));
                let traj = sim.run(montecarlo::START, &pulse, &env, &mut g);
                let mut t = CsvTable::new(&["t_ns", "mx", "my", "mz"]);
                t.provenance
                    .push(("switched".into(), traj.switched.to_string()));
                for row in traj.rows() {
                    t.push_floats(&row);
                }
                let file = format!("fig5a_run{r:03}.csv");
                paths.push(ctx.write(&file, t)?);
                files.push(FileDoc {
                    path: file,
                    columns: vec![
                        col("t_ns", "ns", "time since pulse onset"),
                        col("mx", "1", "magnetization x component"),
                        col("my", "1", "magnetization y component"),
                        col("mz", "1", "magnetization z component"),
                    ],
                });
            }
            "independent thermal trajectories under one pulse"
        }
        Figure::F1d | Figure::F4b | Figure::F9 => {
            let (train_set, test_set) = load_data(ctx, data)?;
            let plan: Vec<(Mode, InitRule)> = match fig {
                Figure::F1d => vec![
                    (Mode::Fixed, ctx.cfg.train.init_rule),
                    (Mode::TrainableKc, ctx.cfg.train.init_rule),
                ],
                Figure::F4b => vec![
                    (Mode::Fixed, ctx.cfg.train.init_rule),
                    (Mode::HardwareK, ctx.cfg.train.init_rule),
                ],
                _ => vec![(Mode::TrainableKc, InitRule::GlorotWWideKc)],
            };
            let mut outcomes = Vec::new();
            for (mode, init) in plan {
                let mut tc = train_config(ctx, mode, data);
                tc.init_rule = init;
                attach_device(ctx, &mut tc, None)?;
                outcomes.push((mode_tag(mode), neuronet::train(&train_set, &test_set, &tc)?));
            }
            let refs: Vec<(&str, &TrainOutcome)> = outcomes.iter().map(|(t, o)| (*t, o)).collect();
            let file = format!("fig{name}.csv");
            paths.push(ctx.write(&file, training_table(&refs))?);
            let tags: Vec<&str> = refs.iter().map(|r| r.0).collect();
            files.push(FileDoc {
                path: file,
                columns: train_columns(&tags),
            });
            match fig {
                Figure::F1d => "loss and accuracy with fixed and with trainable k and c",
                Figure::F4b => "loss and accuracy with fixed activations and with k trained inside the device range",
                _ => "loss and accuracy with trainable k and c under the wide k/c initialization",
            }
        }
    };
    let schema = Schema {
        figure: name.into(),
        description,
        files,
    };
    let path = ctx.out(&format!("fig{name}.schema.json"));
    fs::create_dir_all(&ctx.cfg.io.out_dir)?;
    fs::write(
        &path,
        serde_json::to_string_pretty(&schema).map_err(|e| Error::Parse(e.to_string()))?,
    )?;
    paths.push(path);
    Ok(paths)
}
