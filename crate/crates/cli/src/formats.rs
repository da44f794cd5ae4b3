//! On-disk formats: state files (JSON), fringe tables (CSV) and run reports (JSON).

use std::fs;
use std::path::{Path, PathBuf};

use quantumness_core::correlations::BipartiteState;
use quantumness_core::interferometer::FringeData;
use quantumness_core::qcore::{c, ComplexOperator, DensityMatrix};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: &str = "1.0";

/// A density matrix stored as separate real and imaginary row arrays.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<[usize; 2]>,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl StateFile {
    pub fn from_state(state: &DensityMatrix, dims: Option<[usize; 2]>) -> Self {
        let n = state.dim();
        let m = state.matrix();
        let re = (0..n).map(|r| (0..n).map(|col| m[(r, col)].re).collect()).collect();
        let im = (0..n).map(|r| (0..n).map(|col| m[(r, col)].im).collect()).collect();
        Self { dim: n, dims, re, im }
    }

    /// Checks array shapes and builds the (not yet validated) operator.
    pub fn to_operator(&self) -> CliResult<ComplexOperator> {
        let shape_err = |what: &str| CliError::InvalidInput(format!("parse error: {what}"));
        if self.dim == 0 {
            return Err(shape_err("dim must be positive"));
        }
        if self.re.len() != self.dim || self.im.len() != self.dim {
            return Err(shape_err(&format!(
                "re/im shape mismatch: expected {} rows, found {} (re) and {} (im)",
                self.dim,
                self.re.len(),
                self.im.len()
            )));
        }
        let mut entries = Vec::with_capacity(self.dim * self.dim);
        for (r, (re_row, im_row)) in self.re.iter().zip(&self.im).enumerate() {
            if re_row.len() != self.dim || im_row.len() != self.dim {
                return Err(shape_err(&format!(
                    "re/im shape mismatch in row {r}: expected {} columns, found {} (re) and {} (im)",
                    self.dim,
                    re_row.len(),
                    im_row.len()
                )));
            }
            entries.extend(re_row.iter().zip(im_row).map(|(&x, &y)| c(x, y)));
        }
        ComplexOperator::from_rows(self.dim, &entries).map_err(|e| shape_err(&e.to_string()))
    }
}

/// A state read from disk.
#[derive(Clone, Debug, PartialEq)]
pub enum LoadedState {
    Single(DensityMatrix),
    Bipartite(BipartiteState),
}

impl LoadedState {
    pub fn density(&self) -> &DensityMatrix {
        match self {
            LoadedState::Single(s) => s,
            LoadedState::Bipartite(b) => b.state(),
        }
    }

    pub fn dims(&self) -> Option<[usize; 2]> {
        match self {
            LoadedState::Single(_) => None,
            LoadedState::Bipartite(b) => Some([b.dim_a(), b.dim_b()]),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

fn read_bytes(path: &Path) -> CliResult<Vec<u8>> {
    fs::read(path).map_err(|e| CliError::io(path, e))
}

pub fn digest(path: &Path, bytes: &[u8]) -> InputDigest {
    InputDigest { path: path.display().to_string(), sha256: hex::encode(Sha256::digest(bytes)) }
}

/// Reads, parses and validates a state file.
pub fn load_state(path: &Path) -> CliResult<(LoadedState, InputDigest)> {
    let bytes = read_bytes(path)?;
    let file: StateFile = serde_json::from_slice(&bytes)
        .map_err(|e| CliError::InvalidInput(format!("parse error in {}: {e}", path.display())))?;
    let op = file.to_operator()?;
    let state = DensityMatrix::new(op)
        .map_err(|e| CliError::InvalidInput(format!("{}: {e}", path.display())))?;
    let loaded = match file.dims {
        Some([da, db]) => LoadedState::Bipartite(
            BipartiteState::new(state, da, db).map_err(|e| CliError::InvalidInput(format!("{}: {e}", path.display())))?,
        ),
        None => LoadedState::Single(state),
    };
    Ok((loaded, digest(path, &bytes)))
}

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    if path.as_os_str().is_empty() {
        return Err(CliError::Runtime("output path is empty".into()));
    }
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn save_state(path: &Path, state: &DensityMatrix, dims: Option<[usize; 2]>) -> CliResult<()> {
    let file = StateFile::from_state(state, dims);
    let mut text = serde_json::to_string_pretty(&file).map_err(|e| CliError::Runtime(e.to_string()))?;
    text.push('\n');
    write_text(path, &text)
}

/// Writes `phase_rad,p0,shots` rows sorted by phase.
pub fn write_fringes(fringes: &FringeData, path: &Path) -> CliResult<()> {
    if path.as_os_str().is_empty() {
        return Err(CliError::Runtime("fringe output path is empty".into()));
    }
    let mut writer = csv::Writer::from_path(path).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?;
    let csv_err = |e: csv::Error| CliError::Runtime(format!("{}: {e}", path.display()));
    writer.write_record(["phase_rad", "p0", "shots"]).map_err(csv_err)?;
    for p in fringes.sorted_by_phase() {
        writer
            .write_record([p.phase_rad.to_string(), p.p0.to_string(), p.shots.to_string()])
            .map_err(csv_err)?;
    }
    writer.flush().map_err(|e| CliError::io(path, e))
}

/// Reads a fringe table written by [`write_fringes`].
pub fn read_fringes(path: &Path) -> CliResult<FringeData> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| CliError::InvalidInput(format!("{}: {e}", path.display())))?;
    let mut points = Vec::new();
    for record in reader.deserialize::<(f64, f64, u64)>() {
        let (phase_rad, p0, shots) = record.map_err(|e| CliError::InvalidInput(format!("{}: {e}", path.display())))?;
        points.push(quantumness_core::interferometer::FringePoint { phase_rad, p0, shots });
    }
    Ok(FringeData { points })
}

/// The JSON document every command emits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: String,
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub results: serde_json::Value,
    pub seed: Option<u64>,
    pub timing_ms: u64,
}

impl RunReport {
    pub fn to_json(&self) -> CliResult<String> {
        let mut text = serde_json::to_string_pretty(self).map_err(|e| CliError::Runtime(e.to_string()))?;
        text.push('\n');
        Ok(text)
    }
}

/// Where a report goes: a file, or the caller's stdout.
pub enum ReportSink<'a> {
    File(PathBuf),
    Stdout(&'a mut dyn std::io::Write),
}

pub fn emit_report(report: &RunReport, sink: ReportSink<'_>) -> CliResult<()> {
    let text = report.to_json()?;
    match sink {
        ReportSink::File(path) => write_text(&path, &text),
        ReportSink::Stdout(out) => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Runtime(format!("writing report: {e}"))),
    }
}
