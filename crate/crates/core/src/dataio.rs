//! MNIST ingestion (IDX containers) and CSV emission.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use ndarray::{Array2, Axis};
use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::rng;

pub const IMAGE_MAGIC: u32 = 0x0000_0803;
pub const LABEL_MAGIC: u32 = 0x0000_0801;
pub const SIDE: usize = 28;
pub const PIXELS: usize = SIDE * SIDE;
pub const CLASSES: usize = 10;

/// Training-set size used by default (the first 50000 of the 60000 train images).
pub const DEFAULT_TRAIN: usize = 50_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Split {
    Train,
    Test,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    /// N × 784, values in [0, 1].
    pub images: Array2<f64>,
    pub labels: Vec<u8>,
    pub split: Split,
}

impl Dataset {
    pub fn new(images: Array2<f64>, labels: Vec<u8>, split: Split) -> Result<Self> {
        if images.nrows() != labels.len() {
            return Err(Error::Consistency(format!(
                "{} images but {} labels",
                images.nrows(),
                labels.len()
            )));
        }
        if let Some((index, &label)) = labels
            .iter()
            .enumerate()
            .find(|(_, &l)| l as usize >= CLASSES)
        {
            return Err(Error::LabelRange { index, label });
        }
        Ok(Self {
            images,
            labels,
            split,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

fn be_u32(bytes: &[u8], at: usize, path: &Path) -> Result<u32> {
    bytes
        .get(at..at + 4)
        .map(|b| u32::from_be_bytes([b[0], b[1], b[2], b[3]]))
        .ok_or_else(|| Error::IdxFormat {
            path: path.to_path_buf(),
            msg: "truncated header".into(),
        })
}

fn truncated(path: &Path, want: usize, got: usize) -> Error {
    Error::Io(std::io::Error::new(
        std::io::ErrorKind::UnexpectedEof,
        format!(
            "{}: expected {want} payload bytes, found {got}",
            path.display()
        ),
    ))
}

/// Parse an IDX3 image container; pixels are scaled by 1/255.
pub fn parse_idx_images(bytes: &[u8], path: &Path) -> Result<Array2<f64>> {
    let magic = be_u32(bytes, 0, path)?;
    if magic != IMAGE_MAGIC {
        return Err(Error::IdxFormat {
            path: path.to_path_buf(),
            msg: format!("bad image magic {magic:#010x}"),
        });
    }
    let n = be_u32(bytes, 4, path)? as usize;
    let rows = be_u32(bytes, 8, path)? as usize;
    let cols = be_u32(bytes, 12, path)? as usize;
    if rows != SIDE || cols != SIDE {
        return Err(Error::IdxFormat {
            path: path.to_path_buf(),
            msg: format!("images are {rows}x{cols}, expected 28x28"),
        });
    }
    let payload = &bytes[16..];
    let want = n * PIXELS;
    if payload.len() < want {
        return Err(truncated(path, want, payload.len()));
    }
    let data = payload[..want].iter().map(|&b| b as f64 / 255.0).collect();
    Ok(Array2::from_shape_vec((n, PIXELS), data).expect("shape checked above"))
}

pub fn parse_idx_labels(bytes: &[u8], path: &Path) -> Result<Vec<u8>> {
    let magic = be_u32(bytes, 0, path)?;
    if magic != LABEL_MAGIC {
        return Err(Error::IdxFormat {
            path: path.to_path_buf(),
            msg: format!("bad label magic {magic:#010x}"),
        });
    }
    let n = be_u32(bytes, 4, path)? as usize;
    let payload = &bytes[8..];
    if payload.len() < n {
        return Err(truncated(path, n, payload.len()));
    }
    let labels = payload[..n].to_vec();
    if let Some((index, &label)) = labels
        .iter()
        .enumerate()
        .find(|(_, &l)| l as usize >= CLASSES)
    {
        return Err(Error::LabelRange { index, label });
    }
    Ok(labels)
}

pub fn load_idx(images_path: &Path, labels_path: &Path, split: Split) -> Result<Dataset> {
    let images = parse_idx_images(&fs::read(images_path)?, images_path)?;
    let labels = parse_idx_labels(&fs::read(labels_path)?, labels_path)?;
    if images.nrows() != labels.len() {
        return Err(Error::Consistency(format!(
            "{} has {} images, {} has {} labels",
            images_path.display(),
            images.nrows(),
            labels_path.display(),
            labels.len()
        )));
    }
    Dataset::new(images, labels, split)
}

/// Canonical MNIST file names inside `dir`.
pub fn mnist_paths(dir: &Path, split: Split) -> (PathBuf, PathBuf) {
    let stem = match split {
        Split::Train => "train",
        Split::Test => "t10k",
    };
    (
        dir.join(format!("{stem}-images-idx3-ubyte")),
        dir.join(format!("{stem}-labels-idx1-ubyte")),
    )
}

/// Load `(train, test)` from a directory holding the four canonical files,
/// keeping the first `n_train` training samples.
pub fn load_mnist(dir: &Path, n_train: usize) -> Result<(Dataset, Dataset)> {
    let (ti, tl) = mnist_paths(dir, Split::Train);
    let (vi, vl) = mnist_paths(dir, Split::Test);
    let train = take_split(&load_idx(&ti, &tl, Split::Train)?, n_train)?;
    let test = load_idx(&vi, &vl, Split::Test)?;
    Ok((train, test))
}

/// Encode an IDX image container; inverse of [`parse_idx_images`] for byte-valued pixels.
pub fn encode_idx_images(pixels: &[[u8; PIXELS]]) -> Vec<u8> {
    let mut out = Vec::with_capacity(16 + pixels.len() * PIXELS);
    for v in [IMAGE_MAGIC, pixels.len() as u32, SIDE as u32, SIDE as u32] {
        out.extend_from_slice(&v.to_be_bytes());
    }
    for img in pixels {
        out.extend_from_slice(img);
    }
    out
}

pub fn encode_idx_labels(labels: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(8 + labels.len());
    out.extend_from_slice(&LABEL_MAGIC.to_be_bytes());
    out.extend_from_slice(&(labels.len() as u32).to_be_bytes());
    out.extend_from_slice(labels);
    out
}

/// N × 10 one-hot matrix; digit d sets column d.
pub fn one_hot(labels: &[u8]) -> Result<Array2<f64>> {
    let mut y = Array2::zeros((labels.len(), CLASSES));
    for (i, &l) in labels.iter().enumerate() {
        if l as usize >= CLASSES {
            return Err(Error::LabelRange { index: i, label: l });
        }
        y[[i, l as usize]] = 1.0;
    }
    Ok(y)
}

/// First `n` samples.
pub fn take_split(ds: &Dataset, n: usize) -> Result<Dataset> {
    if n > ds.len() {
        return Err(Error::InvalidParameter(format!(
            "requested {n} samples from a dataset of {}",
            ds.len()
        )));
    }
    Ok(Dataset {
        images: ds.images.slice(ndarray::s![..n, ..]).to_owned(),
        labels: ds.labels[..n].to_vec(),
        split: ds.split,
    })
}

/// `n` samples after a seeded permutation.
pub fn shuffled_take(ds: &Dataset, n: usize, seed: u64) -> Result<Dataset> {
    if n > ds.len() {
        return Err(Error::InvalidParameter(format!(
            "requested {n} samples from a dataset of {}",
            ds.len()
        )));
    }
    let mut idx: Vec<usize> = (0..ds.len()).collect();
    idx.shuffle(&mut rng::stream(seed));
    idx.truncate(n);
    Ok(Dataset {
        images: ds.images.select(Axis(0), &idx),
        labels: idx.iter().map(|&i| ds.labels[i]).collect(),
        split: ds.split,
    })
}

/// MNIST-shaped stand-in data: ten fixed random prototypes (drawn from
/// `proto_seed`) plus per-sample pixel noise, labels cycling 0..9.
pub fn synthetic(n: usize, proto_seed: u64, sample_seed: u64, noise: f64, split: Split) -> Dataset {
    use rand::Rng;
    let mut pr = rng::stream(proto_seed);
    let protos: Vec<Vec<f64>> = (0..CLASSES)
        .map(|_| {
            (0..PIXELS)
                .map(|_| {
                    if pr.random::<f64>() < 0.2 {
                        pr.random_range(0.5..1.0)
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect();
    let mut sr = rng::stream(sample_seed);
    let labels: Vec<u8> = (0..n).map(|i| (i % CLASSES) as u8).collect();
    let mut images = Array2::zeros((n, PIXELS));
    for (i, &l) in labels.iter().enumerate() {
        for (j, v) in images.row_mut(i).iter_mut().enumerate() {
            *v = (protos[l as usize][j] + sr.random_range(-noise..=noise)).clamp(0.0, 1.0);
        }
    }
    Dataset {
        images,
        labels,
        split,
    }
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

/// 17 significant digits, '.' decimal separator.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// A CSV table with `# key: value` provenance comment lines.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CsvTable {
    pub provenance: Vec<(String, String)>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new<S: AsRef<str>>(header: &[S]) -> Self {
        Self {
            provenance: Vec::new(),
            header: header.iter().map(|s| s.as_ref().to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn with_provenance(mut self, provenance: &[(String, String)]) -> Self {
        self.provenance.extend_from_slice(provenance);
        self
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn push_floats(&mut self, row: &[f64]) {
        self.rows.push(row.iter().map(|&x| fmt_f64(x)).collect());
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let mut out = Vec::new();
        for (k, v) in &self.provenance {
            write!(out, "# {k}: {v}\r\n")?;
        }
        {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::CRLF)
                .from_writer(&mut out);
            w.write_record(&self.header).map_err(csv_err)?;
            for r in &self.rows {
                w.write_record(r).map_err(csv_err)?;
            }
            w.flush()?;
        }
        Ok(out)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        fs::write(path, self.to_bytes()?)?;
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut provenance = Vec::new();
        for line in text.lines() {
            match line.strip_prefix("# ") {
                Some(rest) => {
                    let (k, v) = rest.split_once(": ").unwrap_or((rest, ""));
                    provenance.push((k.to_string(), v.to_string()));
                }
                None => break,
            }
        }
        let mut r = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let header = r
            .headers()
            .map_err(csv_err)?
            .iter()
            .map(String::from)
            .collect();
        let rows = r
            .records()
            .map(|rec| rec.map(|rec| rec.iter().map(String::from).collect()))
            .collect::<std::result::Result<Vec<Vec<String>>, _>>()
            .map_err(csv_err)?;
        Ok(Self {
            provenance,
            header,
            rows,
        })
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    /// Column `name` parsed as f64.
    pub fn column(&self, name: &str) -> Result<Vec<f64>> {
        let j = self
            .header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Parse(format!("missing column {name}")))?;
        self.rows
            .iter()
            .map(|r| {
                r.get(j)
                    .ok_or_else(|| Error::Parse(format!("short row in column {name}")))?
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("{name}: {e}")))
            })
            .collect()
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}
