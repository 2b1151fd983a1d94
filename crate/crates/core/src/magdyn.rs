//! Stochastic macrospin dynamics of the MTJ free layer.
//!
//! Fields are carried in tesla (μ₀H) throughout, matching a gyromagnetic ratio
//! in rad/(s·T). The saturation magnetization is stored as μ₀M_s; the
//! anisotropy field, STT and thermal prefactors use the SI value in A/m.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;
use crate::vec3::{self, Vec3};

pub const MU0: f64 = 4.0e-7 * PI;
pub const K_B: f64 = 1.38e-23;
pub const E_CHARGE: f64 = 1.6e-19;
/// Reduced Planck constant in J·s, from ħ = 6.58e-16 eV·s.
pub const HBAR: f64 = 6.58e-16 * E_CHARGE;

const UNIT_TOL: f64 = 1e-9;

/// Material, geometry and anisotropy constants of the free layer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DeviceParams {
    pub alpha: f64,
    /// rad/(s·T)
    pub gamma: f64,
    /// μ₀M_s in tesla.
    pub ms_tesla: f64,
    pub t_fl: f64,
    pub length: f64,
    pub width: f64,
    /// J/m³
    pub k_bulk: f64,
    /// J/m²
    pub k_i: f64,
    /// Total uniaxial anisotropy in J/m³; replaces `k_bulk + k_i / t_fl`.
    pub k_u_override: Option<f64>,
    /// Spin polarization P, used by the analytic critical current.
    pub pol: f64,
    /// Dimensionless factor multiplying the STT prefactor γħJ/(2e·t·M_s).
    /// The equation of motion carries no polarization factor by default;
    /// set this to `pol` to include it.
    pub stt_efficiency: f64,
    /// tesla
    pub h_ext: Vec3,
    /// kelvin
    pub temperature: f64,
}

impl Default for DeviceParams {
    fn default() -> Self {
        Self {
            alpha: 0.0122,
            gamma: 1.76e11,
            ms_tesla: 1.58,
            t_fl: 1.3e-9,
            length: 15e-9,
            width: 15e-9,
            k_bulk: 2.245e5,
            k_i: 1.286e-3,
            k_u_override: None,
            pol: 0.4,
            stt_efficiency: 1.0,
            h_ext: [0.0; 3],
            temperature: 300.0,
        }
    }
}

impl DeviceParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("t_fl", self.t_fl),
            ("length", self.length),
            ("width", self.width),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidGeometry(format!(
                    "{name} = {v} must be positive"
                )));
            }
        }
        if !(self.ms_tesla > 0.0) || !(self.gamma > 0.0) {
            return Err(Error::InvalidParameter(
                "ms_tesla and gamma must be positive".into(),
            ));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha = {} outside (0, 1)",
                self.alpha
            )));
        }
        if !(0.0..=1.0).contains(&self.pol) {
            return Err(Error::InvalidParameter(format!(
                "pol = {} outside [0, 1]",
                self.pol
            )));
        }
        if !(self.stt_efficiency >= 0.0) {
            return Err(Error::InvalidParameter(
                "stt_efficiency must be non-negative".into(),
            ));
        }
        if !(self.temperature >= 0.0) {
            return Err(Error::InvalidParameter(
                "temperature must be non-negative".into(),
            ));
        }
        Ok(())
    }

    /// Effective uniaxial anisotropy K_u in J/m³.
    pub fn k_u(&self) -> f64 {
        self.k_u_override
            .unwrap_or(self.k_bulk + self.k_i / self.t_fl)
    }

    /// M_s in A/m.
    pub fn ms_si(&self) -> f64 {
        self.ms_tesla / MU0
    }

    pub fn volume(&self) -> f64 {
        self.length * self.width * self.t_fl
    }

    /// Shape-anisotropy energy density 0.5·μ₀·M_s² in J/m³.
    pub fn shape_energy_density(&self) -> f64 {
        0.5 * self.ms_tesla * self.ms_si()
    }

    /// Copy of these parameters with K_u chosen so that the barrier equals `eb_kbt`.
    pub fn with_barrier(&self, eb_kbt: f64) -> Self {
        Self {
            k_u_override: Some(ku_for_barrier(eb_kbt, self)),
            ..self.clone()
        }
    }
}

/// Integration settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimEnv {
    pub dt: f64,
    pub seed: u64,
    /// Zero-current relaxation after the pulse, s.
    pub relax_tail: f64,
    /// Zero-current thermalization before pulse onset, s.
    pub thermalize: f64,
    /// Store every `stride`-th step in the trajectory; 0 keeps only the endpoints.
    pub stride: usize,
}

impl Default for SimEnv {
    fn default() -> Self {
        Self {
            dt: 1e-12,
            seed: 0,
            relax_tail: 5e-9,
            thermalize: 1e-9,
            stride: 0,
        }
    }
}

impl SimEnv {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "dt = {} must be positive",
                self.dt
            )));
        }
        if !(self.relax_tail >= 0.0) || !(self.thermalize >= 0.0) {
            return Err(Error::InvalidParameter(
                "relaxation times must be non-negative".into(),
            ));
        }
        Ok(())
    }
}

/// Current pulse applied through the MTJ.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseSpec {
    /// Amplitude in A.
    pub current: f64,
    /// Duration in s.
    pub width: f64,
    /// Spin-polarization direction, ±ẑ.
    pub sigma_dir: Vec3,
}

impl PulseSpec {
    /// Pulse with σ = +ẑ, the polarity that switches −ẑ → +ẑ.
    pub fn new(current: f64, width: f64) -> Self {
        Self {
            current,
            width,
            sigma_dir: [0.0, 0.0, 1.0],
        }
    }

    pub fn with_polarity(current: f64, width: f64, positive_z: bool) -> Self {
        let s = if positive_z { 1.0 } else { -1.0 };
        Self {
            current,
            width,
            sigma_dir: [0.0, 0.0, s],
        }
    }

    /// Current density I / (length · width) in A/m².
    pub fn current_density(&self, params: &DeviceParams) -> f64 {
        self.current / (params.length * params.width)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.width > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "pulse width {} must be positive",
                self.width
            )));
        }
        let s = self.sigma_dir;
        if (vec3::norm(s) - 1.0).abs() > UNIT_TOL || s[0] != 0.0 || s[1] != 0.0 {
            return Err(Error::InvalidParameter("sigma_dir must be ±z".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    /// Time since pulse onset, s.
    pub t: f64,
    pub m: Vec3,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub switched: bool,
    pub m_final: Vec3,
}

impl Trajectory {
    /// CSV rows `t_ns, mx, my, mz`.
    pub fn rows(&self) -> impl Iterator<Item = [f64; 4]> + '_ {
        self.samples
            .iter()
            .map(|s| [s.t * 1e9, s.m[0], s.m[1], s.m[2]])
    }
}

// ---------------------------------------------------------------------------
// Closed-form device quantities
// ---------------------------------------------------------------------------

/// Aharoni's closed form for the z demagnetizing factor of a prism with
/// half-sides `a`, `b`, `c` (c along z).
fn aharoni_dz(a: f64, b: f64, c: f64) -> f64 {
    let (a2, b2, c2) = (a * a, b * b, c * c);
    let r = (a2 + b2 + c2).sqrt();
    let ab = (a2 + b2).sqrt();
    let bc = (b2 + c2).sqrt();
    let ac = (a2 + c2).sqrt();
    let abc = a * b * c;

    let mut s = (b2 - c2) / (2.0 * b * c) * ((r - a) / (r + a)).ln();
    s += (a2 - c2) / (2.0 * a * c) * ((r - b) / (r + b)).ln();
    s += b / (2.0 * c) * ((ab + a) / (ab - a)).ln();
    s += a / (2.0 * c) * ((ab + b) / (ab - b)).ln();
    s += c / (2.0 * a) * ((bc - b) / (bc + b)).ln();
    s += c / (2.0 * b) * ((ac - a) / (ac + a)).ln();
    s += 2.0 * (a * b / (c * r)).atan();
    s += (a * a2 + b * b2 - 2.0 * c * c2) / (3.0 * abc);
    s += (a2 + b2 - 2.0 * c2) / (3.0 * abc) * r;
    s += c / (a * b) * (ac + bc);
    s -= (ab * ab * ab + bc * bc * bc + ac * ac * ac) / (3.0 * abc);
    s / PI
}

/// Demagnetizing factors (Nx, Ny, Nz) of the rectangular free layer.
///
/// The largest factor is taken as one minus the other two so the trace is
/// exactly one; for extreme aspect ratios it carries most of the rounding.
pub fn demag_factors(params: &DeviceParams) -> Result<Vec3> {
    let (lx, ly, lz) = (params.length, params.width, params.t_fl);
    if !(lx > 0.0 && ly > 0.0 && lz > 0.0) || !(lx.is_finite() && ly.is_finite() && lz.is_finite())
    {
        return Err(Error::InvalidGeometry(format!(
            "dimensions ({lx}, {ly}, {lz}) must be positive"
        )));
    }
    let (a, b, c) = (lx / 2.0, ly / 2.0, lz / 2.0);
    let mut n = [
        aharoni_dz(b, c, a),
        aharoni_dz(c, a, b),
        aharoni_dz(a, b, c),
    ];
    let big = (0..3).max_by(|&i, &j| n[i].total_cmp(&n[j])).unwrap_or(2);
    n[big] = 1.0 - (0..3).filter(|&i| i != big).map(|i| n[i]).sum::<f64>();
    for v in &mut n {
        *v = v.clamp(0.0, 1.0);
    }
    Ok(n)
}

/// Standard deviation of each thermal-field component per step, in tesla:
/// u = sqrt(2·k_B·T·α / (V·M_s·γ·(1+α²)·Δt)) with M_s in A/m.
pub fn thermal_std(params: &DeviceParams, env: &SimEnv) -> f64 {
    let a = params.alpha;
    (2.0 * K_B * params.temperature * a
        / (params.volume() * params.ms_si() * params.gamma * (1.0 + a * a) * env.dt))
        .sqrt()
}

/// Energy barrier (K_u − ½μ₀M_s²)·V in units of k_B·T.
pub fn energy_barrier(params: &DeviceParams) -> Result<f64> {
    if params.temperature == 0.0 {
        return Err(Error::ZeroTemperature);
    }
    Ok(
        (params.k_u() - params.shape_energy_density()) * params.volume()
            / (K_B * params.temperature),
    )
}

/// K_u (J/m³) giving a barrier of `target_eb` k_B·T; inverse of [`energy_barrier`].
pub fn ku_for_barrier(target_eb: f64, params: &DeviceParams) -> f64 {
    target_eb * K_B * params.temperature / params.volume() + params.shape_energy_density()
}

/// Thin-film anisotropy field H_k = 2K_u/M_s − μ₀M_s in tesla.
pub fn anisotropy_field(params: &DeviceParams) -> f64 {
    2.0 * params.k_u() / params.ms_si() - params.ms_tesla
}

/// Zero-temperature critical current I = 2αe·M_s·V·H_k / (ħP), in A.
pub fn analytic_critical_current(params: &DeviceParams) -> Result<f64> {
    if !(params.pol > 0.0) {
        return Err(Error::InvalidParameter(
            "spin polarization must be positive".into(),
        ));
    }
    let hk = anisotropy_field(params);
    if hk <= 0.0 {
        return Err(Error::NoPerpendicularAxis { hk });
    }
    Ok(2.0 * params.alpha * E_CHARGE * params.ms_si() * params.volume() * hk / (HBAR * params.pol))
}

// ---------------------------------------------------------------------------
// Field model and integrator
// ---------------------------------------------------------------------------

/// Precomputed coefficients for the effective field and torques of one device.
#[derive(Debug, Clone)]
pub struct FieldModel {
    demag: Vec3,
    /// 2K_u/M_s in tesla.
    h_an: f64,
    ms_tesla: f64,
    h_ext: Vec3,
    gamma: f64,
    alpha: f64,
    /// STT field per ampere, tesla/A.
    stt_per_amp: f64,
}

impl FieldModel {
    pub fn new(params: &DeviceParams) -> Result<Self> {
        Self::with_demag(params, demag_factors(params)?)
    }

    /// Field model with explicit demagnetizing factors.
    pub fn with_demag(params: &DeviceParams, demag: Vec3) -> Result<Self> {
        params.validate()?;
        let ms = params.ms_si();
        Ok(Self {
            demag,
            h_an: 2.0 * params.k_u() / ms,
            ms_tesla: params.ms_tesla,
            h_ext: params.h_ext,
            gamma: params.gamma,
            alpha: params.alpha,
            // γħη·J/(2e·t·M_s) / γ with J = I/(l·w)
            stt_per_amp: HBAR * params.stt_efficiency / (2.0 * E_CHARGE * ms * params.volume()),
        })
    }

    pub fn demag(&self) -> Vec3 {
        self.demag
    }

    /// Deterministic part of H_eff: anisotropy, demag and external field.
    #[inline]
    pub fn static_field(&self, m: Vec3) -> Vec3 {
        let d = self.demag;
        let ms = self.ms_tesla;
        [
            -ms * d[0] * m[0] + self.h_ext[0],
            -ms * d[1] * m[1] + self.h_ext[1],
            self.h_an * m[2] - ms * d[2] * m[2] + self.h_ext[2],
        ]
    }

    /// Magnetic energy density in tesla units (energy / (M_s·V)).
    pub fn energy(&self, m: Vec3) -> f64 {
        let d = self.demag;
        -0.5 * self.h_an * m[2] * m[2]
            + 0.5 * self.ms_tesla * (d[0] * m[0] * m[0] + d[1] * m[1] * m[1] + d[2] * m[2] * m[2])
            - vec3::dot(self.h_ext, m)
    }

    /// STT amplitude a_J in tesla for a current in A.
    pub fn stt_field(&self, current: f64) -> f64 {
        self.stt_per_amp * current
    }

    /// Explicit Landau–Lifshitz right-hand side:
    /// dm/dt = −γ/(1+α²)·[m×H + α·m×(m×H) + a_J·m×(m×σ) − α·a_J·m×σ].
    #[inline]
    pub fn rhs(&self, m: Vec3, h: Vec3, a_j: f64, sigma: Vec3) -> Vec3 {
        let pre = -self.gamma / (1.0 + self.alpha * self.alpha);
        let mxh = vec3::cross(m, h);
        let mxmxh = vec3::cross(m, mxh);
        let mut out = vec3::axpy(mxh, self.alpha, mxmxh);
        if a_j != 0.0 {
            let mxs = vec3::cross(m, sigma);
            let mxmxs = vec3::cross(m, mxs);
            out = vec3::axpy(out, a_j, mxmxs);
            out = vec3::axpy(out, -self.alpha * a_j, mxs);
        }
        vec3::scale(out, pre)
    }

    /// One stochastic Heun step. `h_th` is held fixed over the predictor and
    /// corrector stages (Stratonovich interpretation).
    #[inline]
    pub fn heun_step(&self, m: Vec3, h_th: Vec3, a_j: f64, sigma: Vec3, dt: f64) -> Vec3 {
        let f0 = self.rhs(m, vec3::add(self.static_field(m), h_th), a_j, sigma);
        let mp = vec3::normalize(vec3::axpy(m, dt, f0));
        let f1 = self.rhs(mp, vec3::add(self.static_field(mp), h_th), a_j, sigma);
        vec3::normalize(vec3::axpy(m, 0.5 * dt, vec3::add(f0, f1)))
    }
}

fn check_unit(m: Vec3) -> Result<()> {
    if (vec3::norm(m) - 1.0).abs() > UNIT_TOL {
        return Err(Error::Contract(format!("|m| = {} is not 1", vec3::norm(m))));
    }
    Ok(())
}

/// H_eff = H_an + H_demag + H_thermal + H_ext, in tesla.
pub fn effective_field(m: Vec3, params: &DeviceParams, u: f64, noise: Vec3) -> Result<Vec3> {
    check_unit(m)?;
    let model = FieldModel::new(params)?;
    Ok(vec3::axpy(model.static_field(m), u, noise))
}

#[inline]
fn draw_thermal<R: Rng + ?Sized>(rng: &mut R, u: f64) -> Vec3 {
    if u == 0.0 {
        return [0.0; 3];
    }
    [
        u * rng.sample::<f64, _>(StandardNormal),
        u * rng.sample::<f64, _>(StandardNormal),
        u * rng.sample::<f64, _>(StandardNormal),
    ]
}

/// Advance `m` by one step of `env.dt` under `pulse` and thermal noise drawn from `rng`.
pub fn llgs_step<R: Rng + ?Sized>(
    m: Vec3,
    params: &DeviceParams,
    pulse: &PulseSpec,
    env: &SimEnv,
    rng: &mut R,
) -> Result<Vec3> {
    check_unit(m)?;
    let model = FieldModel::new(params)?;
    let u = thermal_std(params, env);
    let h_th = draw_thermal(rng, u);
    Ok(model.heun_step(
        m,
        h_th,
        model.stt_field(pulse.current),
        pulse.sigma_dir,
        env.dt,
    ))
}

/// Reusable integrator for many trajectories of one device.
#[derive(Debug, Clone)]
pub struct Macrospin {
    model: FieldModel,
    u: f64,
    dt: f64,
}

impl Macrospin {
    pub fn new(params: &DeviceParams, env: &SimEnv) -> Result<Self> {
        Self::with_model(FieldModel::new(params)?, params, env)
    }

    pub fn with_model(model: FieldModel, params: &DeviceParams, env: &SimEnv) -> Result<Self> {
        env.validate()?;
        Ok(Self {
            model,
            u: thermal_std(params, env),
            dt: env.dt,
        })
    }

    pub fn model(&self) -> &FieldModel {
        &self.model
    }

    /// Integrate `steps` steps at constant current, optionally recording samples.
    fn advance<R: Rng + ?Sized>(
        &self,
        mut m: Vec3,
        steps: usize,
        a_j: f64,
        sigma: Vec3,
        rng: &mut R,
        record: Option<(&mut Vec<Sample>, f64, usize)>,
    ) -> Vec3 {
        match record {
            None => {
                for _ in 0..steps {
                    let h_th = draw_thermal(rng, self.u);
                    m = self.model.heun_step(m, h_th, a_j, sigma, self.dt);
                }
            }
            Some((out, t0, stride)) => {
                for i in 1..=steps {
                    let h_th = draw_thermal(rng, self.u);
                    m = self.model.heun_step(m, h_th, a_j, sigma, self.dt);
                    if stride > 0 && i % stride == 0 {
                        out.push(Sample {
                            t: t0 + i as f64 * self.dt,
                            m,
                        });
                    }
                }
            }
        }
        m
    }

    /// Thermalize at zero current, apply the pulse, then relax at zero current.
    /// `switched` is m_z > 0.5 at the end, for a start near −ẑ.
    pub fn run<R: Rng + ?Sized>(
        &self,
        m0: Vec3,
        pulse: &PulseSpec,
        env: &SimEnv,
        rng: &mut R,
    ) -> Trajectory {
        let steps = |t: f64| (t / self.dt).round() as usize;
        let n_therm = steps(env.thermalize);
        let n_pulse = steps(pulse.width).max(1);
        let n_tail = steps(env.relax_tail);
        let a_j = self.model.stt_field(pulse.current);
        let sigma = pulse.sigma_dir;

        let mut m = self.advance(m0, n_therm, 0.0, sigma, rng, None);
        let mut samples = Vec::new();
        if let Some(n) = (n_pulse + n_tail).checked_div(env.stride) {
            samples.reserve(n + 2);
        }
        samples.push(Sample { t: 0.0, m });
        m = self.advance(
            m,
            n_pulse,
            a_j,
            sigma,
            rng,
            Some((&mut samples, 0.0, env.stride)),
        );
        let t_pulse = n_pulse as f64 * self.dt;
        m = self.advance(
            m,
            n_tail,
            0.0,
            sigma,
            rng,
            Some((&mut samples, t_pulse, env.stride)),
        );
        let t_end = t_pulse + n_tail as f64 * self.dt;
        if samples.last().map(|s| s.t) != Some(t_end) {
            samples.push(Sample { t: t_end, m });
        }
        Trajectory {
            samples,
            switched: m[2] > 0.5,
            m_final: m,
        }
    }
}

/// One pulse trajectory seeded from `env.seed`.
pub fn run_pulse(
    m0: Vec3,
    params: &DeviceParams,
    pulse: &PulseSpec,
    env: &SimEnv,
) -> Result<Trajectory> {
    check_unit(m0)?;
    pulse.validate()?;
    let sim = Macrospin::new(params, env)?;
    let mut rng = rng::stream(env.seed);
    Ok(sim.run(m0, pulse, env, &mut rng))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Relaxed {
    pub m_final: Vec3,
    pub steps: usize,
    /// |m_z| > 0.999 at rest.
    pub perpendicular: bool,
}

pub const RELAX_MAX_STEPS: usize = 1_000_000;

/// Relax from a tilt (degrees from +z, in the x–z plane) at J = 0, T = 0 until
/// the per-step change of m drops below 1e-10.
pub fn relax(tilt_deg: f64, params: &DeviceParams, env: &SimEnv) -> Result<Relaxed> {
    if !(0.0..90.0).contains(&tilt_deg) {
        return Err(Error::InvalidParameter(format!(
            "tilt {tilt_deg} outside [0, 90)"
        )));
    }
    env.validate()?;
    let cold = DeviceParams {
        temperature: 0.0,
        ..params.clone()
    };
    let model = FieldModel::new(&cold)?;
    let th = tilt_deg.to_radians();
    let mut m = [th.sin(), 0.0, th.cos()];
    let sigma = [0.0, 0.0, 1.0];
    for step in 0..RELAX_MAX_STEPS {
        let rate = vec3::norm(model.rhs(m, model.static_field(m), 0.0, sigma));
        if rate * env.dt < 1e-10 {
            return Ok(Relaxed {
                m_final: m,
                steps: step,
                perpendicular: m[2].abs() > 0.999,
            });
        }
        m = model.heun_step(m, [0.0; 3], 0.0, sigma, env.dt);
    }
    Err(Error::NonConvergence {
        steps: RELAX_MAX_STEPS,
    })
}
