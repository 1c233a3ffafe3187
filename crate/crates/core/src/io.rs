//! JSON exchange formats.
//!
//! States: `{ "dims": [..], "re": [..], "im": [..] }` with row-major entries.
//! Channels: `{ "d_in": n, "d_out": n, "kraus": [ {"re": [..], "im": [..]}, .. ] }`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::channels::{QuantumChannel, TP_TOL_LOADED};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::states::DensityMatrix;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateRecord {
    pub dims: Vec<usize>,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixRecord {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelRecord {
    pub d_in: usize,
    pub d_out: usize,
    pub kraus: Vec<MatrixRecord>,
}

fn split(m: &ComplexMatrix) -> MatrixRecord {
    MatrixRecord {
        re: m.as_slice().iter().map(|z| z.re).collect(),
        im: m.as_slice().iter().map(|z| z.im).collect(),
    }
}

fn join(dim: usize, re: &[f64], im: &[f64], what: &str) -> Result<ComplexMatrix> {
    let expected = dim * dim;
    if re.len() != expected || im.len() != expected {
        return Err(Error::Format(format!(
            "{what}: expected {expected} real and imaginary entries, got {} and {}",
            re.len(),
            im.len()
        )));
    }
    ComplexMatrix::from_parts(dim, re, im)
}

impl From<&DensityMatrix> for StateRecord {
    fn from(rho: &DensityMatrix) -> Self {
        let MatrixRecord { re, im } = split(rho.matrix());
        Self {
            dims: rho.dims().to_vec(),
            re,
            im,
        }
    }
}

impl TryFrom<&StateRecord> for DensityMatrix {
    type Error = Error;

    fn try_from(record: &StateRecord) -> Result<Self> {
        let dim: usize = record.dims.iter().product();
        let m = join(dim, &record.re, &record.im, "state")?;
        DensityMatrix::new(m, record.dims.clone())
    }
}

impl From<&QuantumChannel> for ChannelRecord {
    fn from(ch: &QuantumChannel) -> Self {
        Self {
            d_in: ch.d_in(),
            d_out: ch.d_out(),
            kraus: ch.kraus().iter().map(split).collect(),
        }
    }
}

impl TryFrom<&ChannelRecord> for QuantumChannel {
    type Error = Error;

    /// Enforces trace preservation within the loader tolerance (1e-8).
    fn try_from(record: &ChannelRecord) -> Result<Self> {
        if record.d_in != record.d_out {
            return Err(Error::DimensionUnsupported(format!(
                "channels with d_in = {} != d_out = {} are not supported",
                record.d_in, record.d_out
            )));
        }
        if record.d_in == 0 {
            return Err(Error::Format("channel dimension must be positive".into()));
        }
        let kraus = record
            .kraus
            .iter()
            .enumerate()
            .map(|(i, k)| join(record.d_in, &k.re, &k.im, &format!("Kraus operator {i}")))
            .collect::<Result<Vec<_>>>()?;
        QuantumChannel::with_tolerance(kraus, TP_TOL_LOADED)
    }
}

pub fn state_to_json(rho: &DensityMatrix) -> String {
    serde_json::to_string(&StateRecord::from(rho)).expect("state records always serialize")
}

pub fn state_from_json(text: &str) -> Result<DensityMatrix> {
    let record: StateRecord = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    DensityMatrix::try_from(&record)
}

pub fn channel_to_json(ch: &QuantumChannel) -> String {
    serde_json::to_string(&ChannelRecord::from(ch)).expect("channel records always serialize")
}

pub fn channel_from_json(text: &str) -> Result<QuantumChannel> {
    let record: ChannelRecord = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    QuantumChannel::try_from(&record)
}

pub fn load_channel(path: &Path) -> Result<QuantumChannel> {
    let text = std::fs::read_to_string(path)?;
    let label = path
        .file_stem()
        .map(|s| format!("file:{}", s.to_string_lossy()))
        .unwrap_or_else(|| "file".into());
    Ok(channel_from_json(&text)?.with_label(label))
}
