//! Three-valued classification of cubic tensors.
//!
//! Every predicate gets a [`Verdict`]: certified yes, certified no, or
//! unknown. A certified no carries a witness that can be re-checked from the
//! tensor alone; a certified yes names the rule that produced it.

mod engine;
mod report;
mod rules;
mod sos;

pub use engine::{check_barren_and_genuine, check_strongly_sos, classify, ClassifyOptions, GenuineVerdicts, SosVerdict};
pub use report::{tensor_hash, ClassificationReport, ImplicationViolation, TensorSummary, TraceEntry, Verdicts};
pub use rules::{
    check_b_tensor, check_cp, check_m_tensor, check_strict_hankel, check_strong_hankel, check_strongly_pd,
    check_strongly_psd, check_sv3, necessary_entry_prefilter, CpVerdicts, MTensorVerdicts, SearchOptions,
};
pub use sos::{sos_decompose_cp, sos_decompose_m3, CpSos, CpTerm, M3Sos};

use std::collections::BTreeMap;

use serde::Serialize;

/// Relative slack for certified verdicts: `tol = DEFAULT_TOL * max(1, |A|_inf)`.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    CertifiedYes,
    CertifiedNo,
    Unknown,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::CertifiedYes => "CertifiedYes",
            Status::CertifiedNo => "CertifiedNo",
            Status::Unknown => "Unknown",
        }
    }
}

/// Concrete evidence attached to a verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `(A x^{m-1})_component = value`.
    Vector { x: Vec<f64>, component: usize, value: f64 },
    Entry { index: Vec<usize>, value: f64 },
    /// Two entries that should agree but do not.
    EntryPair {
        first: Vec<usize>,
        second: Vec<usize>,
        values: [f64; 2],
    },
    Eigenpair { lambda: f64, x: Vec<f64>, residual: f64 },
    /// Failed inequality `lhs relation rhs` in row `row`.
    Inequality {
        row: usize,
        tail: Option<Vec<usize>>,
        lhs: f64,
        relation: &'static str,
        rhs: f64,
    },
    /// Unit vector with quadratic value `value` on a Hankel matrix.
    Matrix {
        slice: Option<usize>,
        x: Vec<f64>,
        value: f64,
        min_eigenvalue: f64,
    },
    /// The elimination polynomial and its number of real roots.
    Spectrum { elimination: Vec<f64>, real_roots: usize },
    /// Follows from another certified verdict.
    Implication { from: &'static str },
    Structural { reason: String },
}

/// Outcome of one predicate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub rule: &'static str,
    #[serde(rename = "paper_anchor")]
    pub anchor: &'static str,
    pub witness: Option<Witness>,
    pub tol: f64,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub evidence: BTreeMap<String, serde_json::Value>,
}

impl Verdict {
    pub fn yes(rule: &'static str, anchor: &'static str, tol: f64) -> Self {
        Self::with(Status::CertifiedYes, rule, anchor, None, tol)
    }

    pub fn no(rule: &'static str, anchor: &'static str, witness: Witness, tol: f64) -> Self {
        Self::with(Status::CertifiedNo, rule, anchor, Some(witness), tol)
    }

    pub fn unknown(rule: &'static str, anchor: &'static str, tol: f64) -> Self {
        Self::with(Status::Unknown, rule, anchor, None, tol)
    }

    pub fn with_status(status: Status, rule: &'static str, anchor: &'static str, tol: f64) -> Self {
        Self::with(status, rule, anchor, None, tol)
    }

    fn with(status: Status, rule: &'static str, anchor: &'static str, witness: Option<Witness>, tol: f64) -> Self {
        Self {
            status,
            rule,
            anchor,
            witness,
            tol,
            evidence: BTreeMap::new(),
        }
    }

    pub fn with_witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn note(mut self, key: &str, value: impl Serialize) -> Self {
        let v = serde_json::to_value(value).unwrap_or(serde_json::Value::Null);
        self.evidence.insert(key.to_owned(), v);
        self
    }

    pub fn is_yes(&self) -> bool {
        self.status == Status::CertifiedYes
    }

    pub fn is_no(&self) -> bool {
        self.status == Status::CertifiedNo
    }

    pub fn is_unknown(&self) -> bool {
        self.status == Status::Unknown
    }
}

/// Effective slack for a tensor: `base * max(1, |A|_inf)`.
pub fn effective_tol(base: f64, a: &crate::CubicTensor) -> f64 {
    base * a.scale()
}
