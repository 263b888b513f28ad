use std::time::Instant;

use serde::Serialize;

use crate::pbw::{PbwElement, Preset, TensorElement};
use crate::series::{TruncatedSeries, Truncation};

/// Outcome of one verification; serialized as one JSON line.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CheckReport {
    pub check: String,
    pub preset: String,
    #[serde(rename = "K_h")]
    pub kh: u32,
    #[serde(rename = "K_w")]
    pub kw: u32,
    pub residual_terms: usize,
    pub pass: bool,
    pub ms: u128,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// JSON without the timing field, for byte-identical comparisons.
    pub fn to_json_untimed(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().unwrap().remove("ms");
        v.to_string()
    }
}

/// Anything whose size as a residual can be counted.
pub trait Residual {
    fn residual_terms(&self) -> usize;
}

impl Residual for PbwElement {
    fn residual_terms(&self) -> usize {
        self.scalar_term_count()
    }
}

impl Residual for TensorElement {
    fn residual_terms(&self) -> usize {
        self.scalar_term_count()
    }
}

impl Residual for TruncatedSeries {
    fn residual_terms(&self) -> usize {
        self.len()
    }
}

/// Accumulates sub-identity residuals for one check.
pub struct Recorder {
    name: String,
    preset: String,
    trunc: Truncation,
    start: Instant,
    residual: usize,
    notes: Vec<String>,
    failures: Vec<String>,
}

impl Recorder {
    pub fn new(name: &str, preset: Preset, trunc: Truncation) -> Self {
        Self::labelled(name, preset.name(), trunc)
    }

    /// Recorder whose preset field is a free-form label.
    pub fn labelled(name: &str, preset: &str, trunc: Truncation) -> Self {
        Recorder {
            name: name.to_string(),
            preset: preset.to_string(),
            trunc,
            start: Instant::now(),
            residual: 0,
            notes: Vec::new(),
            failures: Vec::new(),
        }
    }

    /// Records the residual of a sub-identity labelled `what`.
    pub fn residual(&mut self, what: &str, r: &impl Residual) -> usize {
        let n = r.residual_terms();
        if n > 0 {
            self.failures.push(format!("{what}: {n} residual terms"));
        }
        self.residual += n;
        n
    }

    /// Records a boolean condition as a residual of 0 or 1.
    pub fn condition(&mut self, what: &str, ok: bool) {
        if !ok {
            self.failures.push(format!("{what}: failed"));
            self.residual += 1;
        }
    }

    /// Records a numeric comparison: `n` entries exceeded the tolerance, the worst by `worst`.
    pub fn mismatches(&mut self, what: &str, n: usize, worst: f64) {
        if n > 0 {
            self.failures.push(format!("{what}: {n} entries off, worst {worst:.3e}"));
        }
        self.residual += n;
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn finish(self) -> CheckReport {
        let mut notes = self.failures;
        notes.extend(self.notes);
        CheckReport {
            check: self.name,
            preset: self.preset,
            kh: self.trunc.kh,
            kw: self.trunc.kw,
            residual_terms: self.residual,
            pass: self.residual == 0,
            ms: self.start.elapsed().as_millis(),
            notes,
        }
    }
}
