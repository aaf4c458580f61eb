//! File formats: JSON for operators and operator fields, CSV for scalar
//! grids and signals.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use opstft::{Complex64, ModelDim, Operator64, OperatorField64, PhasePoint, RealGrid64, Signal64};

/// `{"n": N, "data": [[[re, im], ...], ...]}`, row-major.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    pub n: usize,
    pub data: Vec<Vec<[f64; 2]>>,
}

/// `{"n": N, "cells": {"k,l": MatrixFile payload, ...}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldFile {
    pub n: usize,
    pub cells: BTreeMap<String, MatrixFile>,
}

impl MatrixFile {
    pub fn from_operator(a: &Operator64) -> Self {
        let n = a.dim();
        let data = (0..n).map(|i| (0..n).map(|j| [a[(i, j)].re, a[(i, j)].im]).collect()).collect();
        Self { n, data }
    }

    pub fn to_operator(&self) -> Result<Operator64> {
        let n = self.n;
        if self.data.len() != n {
            bail!("expected {n} rows, found {}", self.data.len());
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in self.data.iter().enumerate() {
            if row.len() != n {
                bail!("row {i} has {} entries, expected {n}", row.len());
            }
            for (j, [re, im]) in row.iter().enumerate() {
                if !re.is_finite() || !im.is_finite() {
                    bail!("entry ({i}, {j}) is not finite");
                }
                flat.push(Complex64::new(*re, *im));
            }
        }
        Ok(Operator64::from_row_major(n, flat)?)
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

pub fn read_matrix(path: &Path) -> Result<Operator64> {
    let file: MatrixFile =
        serde_json::from_str(&read_text(path)?).with_context(|| format!("{}: not a matrix file", path.display()))?;
    file.to_operator().with_context(|| format!("{}: malformed matrix", path.display()))
}

pub fn write_matrix(path: &Path, a: &Operator64) -> Result<()> {
    write_text(path, &serde_json::to_string_pretty(&MatrixFile::from_operator(a))?)
}

pub fn field_to_file(field: &OperatorField64) -> FieldFile {
    let cells = field.iter().map(|(z, a)| (format!("{},{}", z.k, z.l), MatrixFile::from_operator(a))).collect();
    FieldFile { n: field.n(), cells }
}

pub fn field_from_file(file: &FieldFile) -> Result<OperatorField64> {
    let dim = ModelDim::new(file.n)?;
    let n = file.n;
    let mut slots: Vec<Option<Operator64>> = vec![None; n * n];
    for (key, payload) in &file.cells {
        let (k, l) = key
            .split_once(',')
            .and_then(|(k, l)| Some((k.trim().parse::<usize>().ok()?, l.trim().parse::<usize>().ok()?)))
            .ok_or_else(|| anyhow!("cell key {key:?} is not of the form \"k,l\""))?;
        if k >= n || l >= n {
            bail!("cell key {key:?} is outside 0..{n}");
        }
        let a = payload.to_operator().with_context(|| format!("cell {key}"))?;
        if a.dim() != n {
            bail!("cell {key} has dimension {}, expected N = {n}", a.dim());
        }
        slots[k * n + l] = Some(a);
    }
    let cells = slots
        .into_iter()
        .enumerate()
        .map(|(idx, a)| a.ok_or_else(|| anyhow!("cell \"{},{}\" is missing", idx / n, idx % n)))
        .collect::<Result<Vec<_>>>()?;
    Ok(OperatorField64::from_cells(dim, cells)?)
}

pub fn read_field(path: &Path) -> Result<OperatorField64> {
    let file: FieldFile =
        serde_json::from_str(&read_text(path)?).with_context(|| format!("{}: not a field file", path.display()))?;
    field_from_file(&file).with_context(|| format!("{}: malformed field", path.display()))
}

pub fn write_field(path: &Path, field: &OperatorField64) -> Result<()> {
    write_text(path, &serde_json::to_string(&field_to_file(field))?)
}

fn csv_reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new().has_headers(false).flexible(true).trim(csv::Trim::All).from_reader(text.as_bytes())
}

fn parse_number(field: &str, path: &Path, row: usize) -> Result<f64> {
    let x: f64 =
        field.parse().with_context(|| format!("{}: line {}: {field:?} is not a number", path.display(), row + 1))?;
    if !x.is_finite() {
        bail!("{}: line {}: value is not finite", path.display(), row + 1);
    }
    Ok(x)
}

/// N rows (time index `k`) by N columns (frequency index `l`).
pub fn read_grid(path: &Path) -> Result<RealGrid64> {
    let text = read_text(path)?;
    let mut rows = Vec::new();
    for (r, record) in csv_reader(&text).records().enumerate() {
        let record = record.with_context(|| format!("{}: malformed CSV", path.display()))?;
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        rows.push(record.iter().map(|f| parse_number(f, path, r)).collect::<Result<Vec<f64>>>()?);
    }
    let n = rows.len();
    let dim = ModelDim::new(n).with_context(|| format!("{}: grid needs at least 2 rows", path.display()))?;
    for (r, row) in rows.iter().enumerate() {
        if row.len() != n {
            bail!("{}: row {} has {} columns, expected N = {n}", path.display(), r + 1, row.len());
        }
    }
    Ok(RealGrid64::from_fn(dim, |z| rows[z.k][z.l]))
}

pub fn format_number(x: f64) -> String {
    format!("{x:?}")
}

pub fn write_grid(path: &Path, grid: &RealGrid64) -> Result<()> {
    let n = grid.n();
    let mut out = String::new();
    for k in 0..n {
        let row: Vec<String> = (0..n).map(|l| format_number(*grid.get(PhasePoint { k, l }))).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    write_text(path, &out)
}

/// One entry per line, `re` or `re,im`.
pub fn read_signal(path: &Path) -> Result<Signal64> {
    let text = read_text(path)?;
    let mut entries = Vec::new();
    for (r, record) in csv_reader(&text).records().enumerate() {
        let record = record.with_context(|| format!("{}: malformed CSV", path.display()))?;
        let fields: Vec<&str> = record.iter().filter(|f| !f.is_empty()).collect();
        match fields.as_slice() {
            [] => continue,
            [re] => entries.push(Complex64::new(parse_number(re, path, r)?, 0.0)),
            [re, im] => entries.push(Complex64::new(parse_number(re, path, r)?, parse_number(im, path, r)?)),
            _ => bail!("{}: line {}: expected `re` or `re,im`", path.display(), r + 1),
        }
    }
    if entries.len() < 2 {
        bail!("{}: a signal needs at least 2 entries", path.display());
    }
    Ok(Signal64::new(entries))
}

/// Hex SHA-256 of a file's bytes.
pub fn digest(path: &Path) -> Result<String> {
    let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}
