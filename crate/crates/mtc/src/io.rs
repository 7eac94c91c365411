//! JSON files for modular data and classification certificates.

use std::io::{BufRead, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::Certificate;
use crate::moddata::{Meta, ModError, ModularDatum};
use crate::CycNumber;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed datum: {0}")]
    Shape(String),
    #[error("invalid modular datum: {0}")]
    Mod(#[from] ModError),
    #[error("conductor field {declared} does not match the entries (which need {actual})")]
    ConductorMismatch { declared: u64, actual: u64 },
}

#[derive(Serialize, Deserialize)]
struct DatumFile {
    rank: usize,
    conductor: u64,
    #[serde(rename = "S")]
    s: Vec<Vec<CycNumber>>,
    #[serde(rename = "T")]
    t: Vec<CycNumber>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    #[serde(default)]
    meta: Option<Meta>,
}

fn default_labels(r: usize) -> Vec<String> {
    (0..r).map(|i| i.to_string()).collect()
}

fn to_file(m: &ModularDatum) -> DatumFile {
    let labels = m.labels().to_vec();
    DatumFile {
        rank: m.rank(),
        conductor: m.conductor(),
        s: m.s_matrix(),
        t: m.twists().to_vec(),
        labels: (labels != default_labels(m.rank())).then_some(labels),
        meta: m.meta().cloned(),
    }
}

pub fn datum_to_json(m: &ModularDatum) -> String {
    serde_json::to_string(&to_file(m)).expect("datum serializes")
}

pub fn datum_to_json_pretty(m: &ModularDatum) -> String {
    serde_json::to_string_pretty(&to_file(m)).expect("datum serializes")
}

/// Parse and fully validate a datum file.
pub fn datum_from_json(s: &str) -> Result<ModularDatum, IoError> {
    let f: DatumFile = serde_json::from_str(s)?;
    if f.s.len() != f.rank || f.t.len() != f.rank {
        return Err(IoError::Shape(format!(
            "rank {} but S has {} rows and T has {} entries",
            f.rank,
            f.s.len(),
            f.t.len()
        )));
    }
    let mut m = ModularDatum::from_matrices(f.s, f.t)?;
    if m.conductor() != f.conductor {
        return Err(IoError::ConductorMismatch { declared: f.conductor, actual: m.conductor() });
    }
    if let Some(l) = f.labels {
        if l.len() != f.rank {
            return Err(IoError::Shape(format!("{} labels for rank {}", l.len(), f.rank)));
        }
        m = m.with_labels(l);
    }
    if let Some(meta) = f.meta {
        m = m.with_meta(meta.family, meta.params);
    }
    Ok(m)
}

pub fn read_datum(path: &Path) -> Result<ModularDatum, IoError> {
    datum_from_json(&std::fs::read_to_string(path)?)
}

pub fn write_datum(path: &Path, m: &ModularDatum) -> Result<(), IoError> {
    std::fs::write(path, datum_to_json(m) + "\n")?;
    Ok(())
}

/// One JSON object per line.
pub fn write_certificates<W: Write>(mut w: W, certs: &[Certificate]) -> Result<(), IoError> {
    for c in certs {
        serde_json::to_writer(&mut w, c)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_certificates<R: BufRead>(r: R) -> Result<Vec<Certificate>, IoError> {
    let mut out = Vec::new();
    for line in r.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line)?);
    }
    Ok(out)
}
