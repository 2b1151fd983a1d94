use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("energy barrier undefined at zero temperature")]
    ZeroTemperature,

    #[error("no perpendicular easy axis (H_k = {hk:.6} T)")]
    NoPerpendicularAxis { hk: f64 },

    #[error("relaxation did not converge within {steps} steps")]
    NonConvergence { steps: usize },

    #[error("degenerate switching curve: {0}")]
    DegenerateCurve(String),

    #[error("device table is missing cells: {missing:?}")]
    MissingCells { missing: Vec<(f64, f64)> },

    #[error("{value} is not on the {axis} axis")]
    OffAxis { axis: &'static str, value: f64 },

    #[error("fit did not converge for cell (width {width_ns} ns, barrier {barrier_kbt} kBT)")]
    CellNotConverged { width_ns: f64, barrier_kbt: f64 },

    #[error("no device setting reaches k = {k_target} at c = {c_fixed} (attainable k in [{k_min}, {k_max}])")]
    Infeasible {
        k_target: f64,
        c_fixed: f64,
        k_min: f64,
        k_max: f64,
    },

    #[error("missing {what} at {path}; produce it with `{producer}`")]
    MissingArtifact {
        what: &'static str,
        path: PathBuf,
        producer: &'static str,
    },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("IDX format error in {path}: {msg}")]
    IdxFormat { path: PathBuf, msg: String },

    #[error("label {label} at index {index} is outside 0..=9")]
    LabelRange { index: usize, label: u8 },

    #[error("inconsistent dataset: {0}")]
    Consistency(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
