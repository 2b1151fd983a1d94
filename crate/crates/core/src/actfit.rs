//! Sigmoid fits of switching curves and the device lookup table built from them.
//!
//! Device-side units: currents in μA, `k` in 1/μA, `c` in μA. A curve whose
//! midpoint sits at +11 μA has `c = −11`.

use serde::{Deserialize, Serialize};

use crate::dataio::{fmt_f64, CsvTable};
use crate::error::{Error, Result};
use crate::montecarlo::PswCurve;

pub const MAX_ITERATIONS: usize = 200;
pub const STEP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SigmoidFit {
    /// 1/μA
    pub k: f64,
    /// μA
    pub c: f64,
    pub rss: f64,
    pub points: usize,
    pub converged: bool,
}

impl SigmoidFit {
    pub fn predict(&self, current_ua: f64) -> f64 {
        sigmoid(self.k * (current_ua + self.c))
    }

    pub fn mean_residual(&self) -> f64 {
        self.rss / self.points as f64
    }
}

pub fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

fn rss_of(pts: &[(f64, f64)], k: f64, c: f64) -> f64 {
    pts.iter()
        .map(|&(i, p)| (sigmoid(k * (i + c)) - p).powi(2))
        .sum()
}

/// Fit a switching curve (currents converted from A to μA).
pub fn fit_sigmoid(curve: &PswCurve) -> Result<SigmoidFit> {
    let pts: Vec<(f64, f64)> = curve
        .points
        .iter()
        .map(|p| (p.current * 1e6, p.p_hat))
        .collect();
    fit_points(&pts)
}

/// Levenberg–Marquardt fit of `p = 1/(1+exp(−k(I+c)))` to `(I_uA, p)` pairs.
pub fn fit_points(points: &[(f64, f64)]) -> Result<SigmoidFit> {
    if points.len() < 4 {
        return Err(Error::DegenerateCurve(format!(
            "{} points, need at least 4",
            points.len()
        )));
    }
    if points
        .iter()
        .any(|&(i, p)| !i.is_finite() || !(0.0..=1.0).contains(&p))
    {
        return Err(Error::DegenerateCurve(
            "non-finite current or p outside [0, 1]".into(),
        ));
    }
    let p0 = points[0].1;
    if points.iter().all(|&(_, p)| p == p0) {
        return Err(Error::DegenerateCurve(format!("every point has p = {p0}")));
    }
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));

    let (mut k, mut c) = initial_guess(&pts);
    let mut rss = rss_of(&pts, k, c);
    let mut lambda = 1e-3;
    let mut converged = false;

    for _ in 0..MAX_ITERATIONS {
        let (mut a11, mut a12, mut a22, mut g1, mut g2) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for &(i, p) in &pts {
            let f = sigmoid(k * (i + c));
            let d = f * (1.0 - f);
            let (jk, jc) = (d * (i + c), d * k);
            let r = f - p;
            a11 += jk * jk;
            a12 += jk * jc;
            a22 += jc * jc;
            g1 += jk * r;
            g2 += jc * r;
        }
        let (d1, d2) = (
            a11.max(1e-12) * (1.0 + lambda),
            a22.max(1e-12) * (1.0 + lambda),
        );
        let det = d1 * d2 - a12 * a12;
        if det == 0.0 || !det.is_finite() {
            lambda *= 10.0;
            continue;
        }
        let dk = -(d2 * g1 - a12 * g2) / det;
        let dc = -(d1 * g2 - a12 * g1) / det;
        let step = dk.hypot(dc);
        let trial = rss_of(&pts, k + dk, c + dc);
        if trial <= rss {
            k += dk;
            c += dc;
            rss = trial;
            lambda = (lambda * 0.1).max(1e-12);
        } else {
            lambda *= 10.0;
        }
        if step < STEP_TOL {
            converged = true;
            break;
        }
    }
    Ok(SigmoidFit {
        k,
        c,
        rss,
        points: pts.len(),
        converged,
    })
}

/// `c₀` from the 0.5 crossing, `k₀` from four times the secant slope there.
fn initial_guess(pts: &[(f64, f64)]) -> (f64, f64) {
    let bracket = pts
        .windows(2)
        .find(|w| (w[0].1 < 0.5 && w[1].1 >= 0.5) || (w[0].1 > 0.5 && w[1].1 <= 0.5));
    let (i_half, slope) = match bracket {
        Some(w) => {
            let ((x0, p0), (x1, p1)) = (w[0], w[1]);
            let s = (p1 - p0) / (x1 - x0);
            (x0 + (0.5 - p0) / s, s)
        }
        None => {
            // no crossing: start from the point nearest 0.5
            let &(x, _) = pts
                .iter()
                .min_by(|a, b| (a.1 - 0.5).abs().total_cmp(&(b.1 - 0.5).abs()))
                .expect("at least four points");
            let span = pts[pts.len() - 1].0 - pts[0].0;
            let rising = pts[pts.len() - 1].1 >= pts[0].1;
            (x, if rising { 1.0 } else { -1.0 } / span.max(1e-12))
        }
    };
    (4.0 * slope, -i_half)
}

/// `(k/4, −c)`: slope at the midpoint and the midpoint current.
pub fn slope_and_shift(fit: &SigmoidFit) -> (f64, f64) {
    (fit.k / 4.0, -fit.c)
}

// ---------------------------------------------------------------------------
// Lookup table
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LutProvenance {
    pub trials: usize,
    pub seed_base: u64,
    /// μA
    pub currents_ua: Vec<f64>,
}

/// Fitted `(k, c)` over the cartesian grid `pulse_width_ns × barrier_kbt`.
/// Cells are stored width-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviceLut {
    pub pulse_width_ns: Vec<f64>,
    pub barrier_kbt: Vec<f64>,
    pub cells: Vec<SigmoidFit>,
    pub trials: Vec<usize>,
    pub provenance: LutProvenance,
}

impl DeviceLut {
    pub fn new(
        pulse_width_ns: Vec<f64>,
        barrier_kbt: Vec<f64>,
        cells: Vec<SigmoidFit>,
        trials: Vec<usize>,
        provenance: LutProvenance,
    ) -> Result<Self> {
        let strictly_sorted = |v: &[f64]| v.windows(2).all(|w| w[0] < w[1]);
        if pulse_width_ns.is_empty() || barrier_kbt.is_empty() {
            return Err(Error::InvalidParameter("empty LUT axis".into()));
        }
        if !strictly_sorted(&pulse_width_ns) || !strictly_sorted(&barrier_kbt) {
            return Err(Error::InvalidParameter(
                "LUT axes must be strictly increasing".into(),
            ));
        }
        let n = pulse_width_ns.len() * barrier_kbt.len();
        if cells.len() != n || trials.len() != n {
            return Err(Error::Shape(format!(
                "{} cells and {} trial counts for a {}x{} grid",
                cells.len(),
                trials.len(),
                pulse_width_ns.len(),
                barrier_kbt.len()
            )));
        }
        let lut = Self {
            pulse_width_ns,
            barrier_kbt,
            cells,
            trials,
            provenance,
        };
        for wi in 0..lut.pulse_width_ns.len() {
            for bi in 0..lut.barrier_kbt.len() {
                if !lut.cell(wi, bi).converged {
                    return Err(Error::CellNotConverged {
                        width_ns: lut.pulse_width_ns[wi],
                        barrier_kbt: lut.barrier_kbt[bi],
                    });
                }
            }
        }
        Ok(lut)
    }

    pub fn cell(&self, wi: usize, bi: usize) -> &SigmoidFit {
        &self.cells[wi * self.barrier_kbt.len() + bi]
    }

    /// Exact lookup by axis values.
    pub fn get(&self, width_ns: f64, barrier: f64) -> Option<&SigmoidFit> {
        let wi = self.pulse_width_ns.iter().position(|&w| w == width_ns)?;
        let bi = self.barrier_kbt.iter().position(|&b| b == barrier)?;
        Some(self.cell(wi, bi))
    }

    pub const CSV_HEADER: [&'static str; 6] = [
        "pulse_width_ns",
        "barrier_kBT",
        "k_per_uA",
        "c_uA",
        "rss",
        "trials",
    ];

    pub fn to_csv(&self) -> Result<CsvTable> {
        let header = LutHeader {
            pulse_width_ns: self.pulse_width_ns.clone(),
            barrier_kbt: self.barrier_kbt.clone(),
            points: self.cells.iter().map(|c| c.points).collect(),
            provenance: self.provenance.clone(),
        };
        let json = serde_json::to_string(&header).map_err(|e| Error::Parse(e.to_string()))?;
        let mut t = CsvTable::new(&Self::CSV_HEADER).with_provenance(&[("lut".into(), json)]);
        for (wi, &w) in self.pulse_width_ns.iter().enumerate() {
            for (bi, &b) in self.barrier_kbt.iter().enumerate() {
                let f = self.cell(wi, bi);
                t.push_row(vec![
                    fmt_f64(w),
                    fmt_f64(b),
                    fmt_f64(f.k),
                    fmt_f64(f.c),
                    fmt_f64(f.rss),
                    self.trials[wi * self.barrier_kbt.len() + bi].to_string(),
                ]);
            }
        }
        Ok(t)
    }

    pub fn from_csv(t: &CsvTable) -> Result<Self> {
        let json = t
            .provenance
            .iter()
            .find(|(k, _)| k == "lut")
            .map(|(_, v)| v)
            .ok_or_else(|| Error::Parse("missing lut header line".into()))?;
        let h: LutHeader = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        let (ws, bs) = (t.column("pulse_width_ns")?, t.column("barrier_kBT")?);
        let (ks, cs, rss) = (t.column("k_per_uA")?, t.column("c_uA")?, t.column("rss")?);
        let trials = t
            .column("trials")?
            .into_iter()
            .map(|x| x as usize)
            .collect::<Vec<_>>();
        let nb = h.barrier_kbt.len();
        if ws.len() != h.pulse_width_ns.len() * nb || h.points.len() != ws.len() {
            return Err(Error::Shape(
                "row count does not match the header axes".into(),
            ));
        }
        for (r, (&w, &b)) in ws.iter().zip(&bs).enumerate() {
            if w != h.pulse_width_ns[r / nb] || b != h.barrier_kbt[r % nb] {
                return Err(Error::Parse(format!("row {r} is out of grid order")));
            }
        }
        let cells = (0..ws.len())
            .map(|r| SigmoidFit {
                k: ks[r],
                c: cs[r],
                rss: rss[r],
                points: h.points[r],
                converged: true,
            })
            .collect();
        Self::new(h.pulse_width_ns, h.barrier_kbt, cells, trials, h.provenance)
    }
}

#[derive(Serialize, Deserialize)]
struct LutHeader {
    pulse_width_ns: Vec<f64>,
    barrier_kbt: Vec<f64>,
    points: Vec<usize>,
    provenance: LutProvenance,
}

/// Pulse width in ns, rounded to femtoseconds so `30e-9` maps to exactly 30.
fn width_ns(seconds: f64) -> f64 {
    (seconds * 1e15).round() / 1e6
}

fn sorted_unique(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// Fit every curve and assemble the grid. The curves must cover the full
/// product of their distinct widths and barriers exactly once.
pub fn build_lut(curves: &[PswCurve], seed_base: u64) -> Result<DeviceLut> {
    if curves.is_empty() {
        return Err(Error::InvalidParameter("no curves".into()));
    }
    let widths = sorted_unique(curves.iter().map(|c| width_ns(c.pulse_width)).collect());
    let barriers = sorted_unique(curves.iter().map(|c| c.barrier).collect());
    let mut slots: Vec<Option<&PswCurve>> = vec![None; widths.len() * barriers.len()];
    for c in curves {
        let wi = widths
            .iter()
            .position(|&w| w == width_ns(c.pulse_width))
            .expect("axis built from curves");
        let bi = barriers
            .iter()
            .position(|&b| b == c.barrier)
            .expect("axis built from curves");
        let slot = &mut slots[wi * barriers.len() + bi];
        if slot.is_some() {
            return Err(Error::Contract(format!(
                "duplicate curve for ({} ns, {} kBT)",
                widths[wi], barriers[bi]
            )));
        }
        *slot = Some(c);
    }
    let missing: Vec<(f64, f64)> = slots
        .iter()
        .enumerate()
        .filter(|(_, s)| s.is_none())
        .map(|(i, _)| (widths[i / barriers.len()], barriers[i % barriers.len()]))
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingCells { missing });
    }
    let curves: Vec<&PswCurve> = slots.into_iter().map(|s| s.expect("checked")).collect();
    let cells = curves
        .iter()
        .map(|c| fit_sigmoid(c))
        .collect::<Result<Vec<_>>>()?;
    let trials = curves.iter().map(|c| c.trials).collect();
    let provenance = LutProvenance {
        trials: curves.iter().map(|c| c.trials).max().unwrap_or(0),
        seed_base,
        currents_ua: curves[0].points.iter().map(|p| p.current * 1e6).collect(),
    };
    DeviceLut::new(widths, barriers, cells, trials, provenance)
}

/// `(min k, max k)` over all cells.
pub fn k_range(lut: &DeviceLut) -> (f64, f64) {
    lut.cells
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), f| {
            (lo.min(f.k), hi.max(f.k))
        })
}

// ---------------------------------------------------------------------------
// k–c coupling along pulse width
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CouplingCurve {
    pub barrier_kbt: f64,
    /// `(pulse_width_ns, k, c)` ordered by pulse width.
    pub points: Vec<(f64, f64, f64)>,
}

impl CouplingCurve {
    /// `(min k, max k)` over the tabulated points.
    pub fn k_range(&self) -> (f64, f64) {
        self.points
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
                (lo.min(p.1), hi.max(p.1))
            })
    }

    /// Piecewise-linear `c(k)`, clamped to the end values outside the tabulated k range.
    pub fn c_at(&self, k: f64) -> f64 {
        let mut kc: Vec<(f64, f64)> = self.points.iter().map(|&(_, k, c)| (k, c)).collect();
        kc.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (first, last) = (kc[0], kc[kc.len() - 1]);
        if k <= first.0 {
            return first.1;
        }
        if k >= last.0 {
            return last.1;
        }
        let j = kc.partition_point(|p| p.0 <= k);
        let ((k0, c0), (k1, c1)) = (kc[j - 1], kc[j]);
        if k == k0 {
            return c0;
        }
        c0 + (c1 - c0) * (k - k0) / (k1 - k0)
    }
}

/// The `(k, c)` path traced by varying pulse width at a fixed barrier.
pub fn coupling_curve(lut: &DeviceLut, barrier: f64) -> Result<CouplingCurve> {
    let bi = lut
        .barrier_kbt
        .iter()
        .position(|&b| b == barrier)
        .ok_or(Error::OffAxis {
            axis: "barrier_kBT",
            value: barrier,
        })?;
    let points: Vec<(f64, f64, f64)> = lut
        .pulse_width_ns
        .iter()
        .enumerate()
        .map(|(wi, &w)| {
            let f = lut.cell(wi, bi);
            (w, f.k, f.c)
        })
        .collect();
    let up = points.windows(2).all(|p| p[1].1 > p[0].1);
    let down = points.windows(2).all(|p| p[1].1 < p[0].1);
    if !(up || down) {
        return Err(Error::Contract(format!(
            "k is not strictly monotone in pulse width at {barrier} kBT"
        )));
    }
    Ok(CouplingCurve {
        barrier_kbt: barrier,
        points,
    })
}

// ---------------------------------------------------------------------------
// Decoupling: reach a target k while holding c
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KcSolution {
    pub pulse_width_ns: f64,
    pub barrier_kbt: f64,
    pub k: f64,
    pub c: f64,
}

/// Bilinear patch over one LUT rectangle; `u` runs along width, `v` along barrier.
#[derive(Clone, Copy)]
struct Patch {
    w: (f64, f64),
    b: (f64, f64),
    k: [f64; 4],
    c: [f64; 4],
}

impl Patch {
    fn at(vals: &[f64; 4], u: f64, v: f64) -> f64 {
        let [f00, f10, f01, f11] = *vals;
        f00 * (1.0 - u) * (1.0 - v) + f10 * u * (1.0 - v) + f01 * (1.0 - u) * v + f11 * u * v
    }

    fn point(&self, u: f64, v: f64) -> KcSolution {
        KcSolution {
            pulse_width_ns: self.w.0 + u * (self.w.1 - self.w.0),
            barrier_kbt: self.b.0 + v * (self.b.1 - self.b.0),
            k: Self::at(&self.k, u, v),
            c: Self::at(&self.c, u, v),
        }
    }

    /// On the line `u = const` both k and c are linear in `v`. Returns the
    /// feasible point on that line with the smallest `|k − k_t|`, and the k
    /// extremes over the feasible segment.
    fn best_on_line(&self, u: f64, k_t: f64, c_f: f64, tol: f64) -> Option<(KcSolution, f64, f64)> {
        let (k0, k1) = (Self::at(&self.k, u, 0.0), Self::at(&self.k, u, 1.0));
        let (c0, c1) = (Self::at(&self.c, u, 0.0), Self::at(&self.c, u, 1.0));
        let dc = c1 - c0;
        let (lo, hi) = if dc.abs() < 1e-300 {
            if (c0 - c_f).abs() <= tol {
                (0.0, 1.0)
            } else {
                return None;
            }
        } else {
            let a = (c_f - tol - c0) / dc;
            let b = (c_f + tol - c0) / dc;
            (a.min(b).max(0.0), a.max(b).min(1.0))
        };
        if lo > hi {
            return None;
        }
        let dk = k1 - k0;
        let v = if dk == 0.0 {
            // k is flat: choose the c closest to c_f
            if dc == 0.0 {
                lo
            } else {
                ((c_f - c0) / dc).clamp(lo, hi)
            }
        } else {
            ((k_t - k0) / dk).clamp(lo, hi)
        };
        let (ka, kb) = (k0 + dk * lo, k0 + dk * hi);
        Some((self.point(u, v), ka.min(kb), ka.max(kb)))
    }
}

fn patches(lut: &DeviceLut) -> Vec<Patch> {
    let (nw, nb) = (lut.pulse_width_ns.len(), lut.barrier_kbt.len());
    let mut out = Vec::with_capacity((nw - 1) * (nb - 1));
    for wi in 0..nw - 1 {
        for bi in 0..nb - 1 {
            let f = |a: usize, b: usize| lut.cell(wi + a, bi + b);
            out.push(Patch {
                w: (lut.pulse_width_ns[wi], lut.pulse_width_ns[wi + 1]),
                b: (lut.barrier_kbt[bi], lut.barrier_kbt[bi + 1]),
                k: [f(0, 0).k, f(1, 0).k, f(0, 1).k, f(1, 1).k],
                c: [f(0, 0).c, f(1, 0).c, f(0, 1).c, f(1, 1).c],
            });
        }
    }
    out
}

/// Lines of constant `u` sampled per patch before local refinement.
const LINES_PER_PATCH: usize = 257;

fn score(s: &KcSolution, k_t: f64, c_f: f64) -> (f64, f64) {
    ((s.k - k_t).abs(), (s.c - c_f).abs())
}

fn better(a: (f64, f64), b: (f64, f64)) -> bool {
    const EPS: f64 = 1e-12;
    a.0 < b.0 - EPS || (a.0 <= b.0 + EPS && a.1 < b.1)
}

struct Search {
    best: Option<(KcSolution, (f64, f64))>,
    k_lo: f64,
    k_hi: f64,
}

fn search(lut: &DeviceLut, k_t: f64, c_f: f64, tol: f64) -> Result<Search> {
    if lut.pulse_width_ns.len() < 2 || lut.barrier_kbt.len() < 2 {
        return Err(Error::InvalidParameter(
            "solving at fixed c needs at least two points on each LUT axis".into(),
        ));
    }
    if !(tol >= 0.0) {
        return Err(Error::InvalidParameter(format!("tol_c = {tol}")));
    }
    let mut s = Search {
        best: None,
        k_lo: f64::INFINITY,
        k_hi: f64::NEG_INFINITY,
    };
    let consider = |cand: KcSolution, s: &mut Search| {
        let sc = score(&cand, k_t, c_f);
        if s.best.as_ref().is_none_or(|(_, b)| better(sc, *b)) {
            s.best = Some((cand, sc));
        }
    };
    for p in patches(lut) {
        let line = |u: f64| p.best_on_line(u, k_t, c_f, tol);
        let mut local: Option<(f64, (f64, f64))> = None;
        for i in 0..LINES_PER_PATCH {
            let u = i as f64 / (LINES_PER_PATCH - 1) as f64;
            if let Some((cand, lo, hi)) = line(u) {
                s.k_lo = s.k_lo.min(lo);
                s.k_hi = s.k_hi.max(hi);
                let sc = score(&cand, k_t, c_f);
                if local.is_none_or(|(_, b)| better(sc, b)) {
                    local = Some((u, sc));
                }
                consider(cand, &mut s);
            }
        }
        // golden-section refinement around the best sampled line
        if let Some((u0, _)) = local {
            let h = 1.0 / (LINES_PER_PATCH - 1) as f64;
            let (mut a, mut b) = ((u0 - h).max(0.0), (u0 + h).min(1.0));
            let g = 0.5 * (5f64.sqrt() - 1.0);
            let eval = |u: f64| line(u).map(|(c, _, _)| c);
            let key = |c: Option<KcSolution>| {
                c.map_or((f64::INFINITY, f64::INFINITY), |c| score(&c, k_t, c_f))
            };
            for _ in 0..60 {
                let (x1, x2) = (b - g * (b - a), a + g * (b - a));
                let (c1, c2) = (eval(x1), eval(x2));
                if let Some(c) = c1 {
                    consider(c, &mut s);
                }
                if let Some(c) = c2 {
                    consider(c, &mut s);
                }
                if better(key(c1), key(c2)) {
                    b = x2;
                } else {
                    a = x1;
                }
            }
        }
    }
    Ok(s)
}

/// `k` attainable by bilinear interpolation while `|c − c_fixed| ≤ tol_c`.
pub fn k_range_at_c(lut: &DeviceLut, c_fixed: f64, tol_c: f64) -> Result<Option<(f64, f64)>> {
    let s = search(lut, 0.0, c_fixed, tol_c)?;
    Ok(s.best.map(|_| (s.k_lo, s.k_hi)))
}

/// Device setting whose interpolated `k` is closest to `k_target` with
/// `|c − c_fixed| ≤ tol_c`. Ties in `k` prefer `c` nearest `c_fixed`.
pub fn solve_k_at_fixed_c(
    lut: &DeviceLut,
    k_target: f64,
    c_fixed: f64,
    tol_c: f64,
) -> Result<KcSolution> {
    // exact hit on a knot
    for (wi, &w) in lut.pulse_width_ns.iter().enumerate() {
        for (bi, &b) in lut.barrier_kbt.iter().enumerate() {
            let f = lut.cell(wi, bi);
            if f.k == k_target && f.c == c_fixed {
                return Ok(KcSolution {
                    pulse_width_ns: w,
                    barrier_kbt: b,
                    k: f.k,
                    c: f.c,
                });
            }
        }
    }
    let s = search(lut, k_target, c_fixed, tol_c)?;
    let (k_min, k_max) = k_range(lut);
    let infeasible = |k_min: f64, k_max: f64| Error::Infeasible {
        k_target,
        c_fixed,
        k_min,
        k_max,
    };
    match s.best {
        None => Err(infeasible(f64::NAN, f64::NAN)),
        Some(_) if k_target < k_min || k_target > k_max => Err(infeasible(s.k_lo, s.k_hi)),
        Some((sol, _)) => Ok(sol),
    }
}
