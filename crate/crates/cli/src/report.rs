use std::collections::BTreeMap;
use std::path::Path;

use anyhow::Result;
use serde::Serialize;
use serde_json::Value;

use opstft::Complex64;

use crate::io::digest;

/// Machine-readable outcome of one command.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub seed: Option<u64>,
    pub tolerance: f64,
    /// Input path to hex SHA-256 of its bytes.
    pub inputs: BTreeMap<String, String>,
    pub values: BTreeMap<String, Value>,
    pub residuals: BTreeMap<String, Value>,
    pub pass: BTreeMap<String, bool>,
}

fn real(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

impl Report {
    pub fn new(command: &str, seed: Option<u64>, tolerance: f64) -> Self {
        Self {
            command: command.to_owned(),
            seed,
            tolerance,
            inputs: BTreeMap::new(),
            values: BTreeMap::new(),
            residuals: BTreeMap::new(),
            pass: BTreeMap::new(),
        }
    }

    pub fn input(&mut self, path: &Path) -> Result<()> {
        self.inputs.insert(path.display().to_string(), digest(path)?);
        Ok(())
    }

    pub fn value(&mut self, name: &str, x: f64) {
        self.values.insert(name.to_owned(), real(x));
    }

    pub fn complex(&mut self, name: &str, c: Complex64) {
        self.values.insert(name.to_owned(), Value::Array(vec![real(c.re), real(c.im)]));
    }

    pub fn flag(&mut self, name: &str, b: bool) {
        self.values.insert(name.to_owned(), Value::Bool(b));
    }

    pub fn count(&mut self, name: &str, n: usize) {
        self.values.insert(name.to_owned(), Value::from(n));
    }

    pub fn residual(&mut self, name: &str, x: f64) {
        self.residuals.insert(name.to_owned(), real(x));
    }

    pub fn check(&mut self, name: &str, ok: bool) {
        self.pass.insert(name.to_owned(), ok);
    }

    /// Records `measured` relative to `scale` and checks it against the tolerance.
    pub fn relative(&mut self, name: &str, measured: f64, scale: f64) {
        let rel = if scale > 0.0 { measured / scale } else { measured };
        self.residual(name, rel);
        self.check(name, rel <= self.tolerance);
    }

    pub fn all_pass(&self) -> bool {
        self.pass.values().all(|&b| b)
    }
}
