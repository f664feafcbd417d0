//! Machine-readable run configuration and reports.
//!
//! Reports are JSON-first: every numeric result carries either a certified
//! error bound/tolerance or the explicit label "diagnostic only", plus a
//! provenance block (truncation depths, tail bounds, quadrature nodes,
//! seeds) so a run is reproducible from its report alone.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::{Error, Result};

/// Spectrum selection: a named tag or an explicit level list.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum SpectrumConfig {
    Tag(String),
    Levels { omega: f64, levels: Vec<f64> },
}

/// Run configuration; unknown keys are rejected at parse time.
#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// Model tag (see `gkcs model-card --list`).
    pub model: Option<String>,
    /// Explicit spectrum instead of a model.
    pub spectrum: Option<SpectrumConfig>,
    /// Explicit degeneracy list (with `spectrum`).
    pub degeneracy: Option<Vec<u64>>,
    /// State family for `state`: gk | degenerate | branch | vcs1 | vcs2 | bcs.
    pub family: Option<String>,
    /// Verification suite for `verify`: resolution | moments | temporal |
    /// action | kernel | all.
    pub suite: Option<String>,
    pub j: Option<f64>,
    pub gamma: Option<f64>,
    pub theta: Option<f64>,
    pub j2: Option<f64>,
    pub gamma2: Option<f64>,
    pub branch: Option<usize>,
    pub component: Option<usize>,
    pub z_re: Option<f64>,
    pub z_im: Option<f64>,
    pub beta: Option<f64>,
    pub t: Option<f64>,
    pub truncation: Option<usize>,
    pub tol: Option<f64>,
    pub quad_nodes: Option<usize>,
    pub n_max: Option<usize>,
    pub seed: Option<u64>,
    pub out_dir: Option<PathBuf>,
}

impl RunConfig {
    /// Parses a config file, rejecting unknown keys.
    pub fn from_json_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::ConfigInvalid(e.to_string()))
    }

    /// Field-wise override: values set in `flags` win over `self`.
    pub fn merged_with(mut self, flags: RunConfig) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if flags.$f.is_some() { self.$f = flags.$f; } )* };
        }
        take!(
            model, spectrum, degeneracy, family, suite, j, gamma, theta, j2, gamma2, branch,
            component, z_re, z_im, beta, t, truncation, tol, quad_nodes, n_max, seed, out_dir
        );
        self
    }

    /// Output directory: config value, else `GKCS_OUT_DIR`, else `.`.
    pub fn resolve_out_dir(&self) -> PathBuf {
        self.out_dir
            .clone()
            .or_else(|| std::env::var_os("GKCS_OUT_DIR").map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("."))
    }

    pub fn tol_or(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

/// One named check inside a report.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub value: Value,
    /// Residual of the check when it is a comparison.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    /// Certified error bound or tolerance the value is held to.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    /// A pass/fail check: the value is certified against `bound`.
    pub fn certified(
        name: impl Into<String>,
        value: impl Into<Value>,
        residual: f64,
        bound: f64,
    ) -> Self {
        CheckResult {
            name: name.into(),
            value: value.into(),
            residual: Some(residual),
            bound: Some(bound),
            pass: Some(residual <= bound),
            note: None,
        }
    }

    /// A value reported without a pass/fail contract.
    pub fn diagnostic(name: impl Into<String>, value: impl Into<Value>) -> Self {
        CheckResult {
            name: name.into(),
            value: value.into(),
            residual: None,
            bound: None,
            pass: None,
            note: Some("diagnostic only".into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Reproducibility data attached to every report.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Provenance {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tail_bounds: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quad_nodes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub operation: String,
    pub config: Value,
    pub results: Vec<CheckResult>,
    pub provenance: Provenance,
    pub timing_ms: f64,
}

impl Report {
    pub fn new(operation: impl Into<String>, config: &RunConfig) -> Self {
        Report {
            operation: operation.into(),
            config: serde_json::to_value(config).unwrap_or(Value::Null),
            results: Vec::new(),
            provenance: Provenance::default(),
            timing_ms: 0.0,
        }
    }

    pub fn push(&mut self, result: CheckResult) {
        self.results.push(result);
    }

    /// True iff no check failed (diagnostics don't count).
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass != Some(false))
    }

    /// Plain text table rendered from the same data as the JSON.
    pub fn render_table(&self) -> String {
        let mut out = format!("== {} ==\n", self.operation);
        for r in &self.results {
            let status = match r.pass {
                Some(true) => "PASS",
                Some(false) => "FAIL",
                None => "----",
            };
            let residual = r
                .residual
                .map(|x| format!(" residual={x:.3e}"))
                .unwrap_or_default();
            let bound = r
                .bound
                .map(|x| format!(" bound={x:.3e}"))
                .unwrap_or_default();
            let note = r
                .note
                .as_ref()
                .map(|n| format!(" [{n}]"))
                .unwrap_or_default();
            out.push_str(&format!(
                "[{status}] {}: {}{residual}{bound}{note}\n",
                r.name, r.value
            ));
        }
        out.push_str(&format!("time: {:.1} ms\n", self.timing_ms));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_keys_are_rejected() {
        let err = serde_json::from_str::<RunConfig>(r#"{"model": "example1", "bogus": 1}"#);
        assert!(err.is_err());
    }

    #[test]
    fn flags_win_over_file() {
        let file: RunConfig = serde_json::from_str(r#"{"model": "example1", "j": 1.0}"#).unwrap();
        let flags = RunConfig {
            j: Some(2.0),
            ..Default::default()
        };
        let merged = file.merged_with(flags);
        assert_eq!(merged.model.as_deref(), Some("example1"));
        assert_eq!(merged.j, Some(2.0));
    }

    #[test]
    fn spectrum_config_forms() {
        let tag: SpectrumConfig = serde_json::from_str(r#""linear""#).unwrap();
        assert_eq!(tag, SpectrumConfig::Tag("linear".into()));
        let levels: SpectrumConfig =
            serde_json::from_str(r#"{"omega": 1.0, "levels": [0.0, 1.0, 2.5]}"#).unwrap();
        assert!(matches!(levels, SpectrumConfig::Levels { .. }));
    }

    #[test]
    fn report_pass_logic() {
        let cfg = RunConfig::default();
        let mut report = Report::new("test", &cfg);
        report.push(CheckResult::certified("a", 1.0, 1e-12, 1e-8));
        report.push(CheckResult::diagnostic("b", 0.5));
        assert!(report.all_pass());
        report.push(CheckResult::certified("c", 1.0, 1.0, 1e-8));
        assert!(!report.all_pass());
        let table = report.render_table();
        assert!(table.contains("[PASS] a"));
        assert!(table.contains("[----] b"));
        assert!(table.contains("[FAIL] c"));
        assert!(table.contains("diagnostic only"));
    }
}
