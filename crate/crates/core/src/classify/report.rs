use serde::Serialize;
use sha2::{Digest, Sha256};

use super::{Status, Verdict};
use crate::tensor::CubicTensor;

/// Identifies the classified tensor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TensorSummary {
    pub hash: String,
    pub order: usize,
    pub dim: usize,
}

/// SHA-256 over order and dim (u64 little endian) and the entries' IEEE
/// little-endian bytes, hex encoded.
pub fn tensor_hash(a: &CubicTensor) -> String {
    let mut h = Sha256::new();
    h.update((a.order() as u64).to_le_bytes());
    h.update((a.dim() as u64).to_le_bytes());
    for v in a.entries() {
        h.update(v.to_le_bytes());
    }
    hex::encode(h.finalize())
}

/// One verdict per predicate, serialized in this field order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdicts {
    pub strongly_psd: Verdict,
    pub strongly_pd: Verdict,
    pub strongly_sos: Verdict,
    pub b_tensor: Verdict,
    pub m_tensor: Verdict,
    pub strong_m_tensor: Verdict,
    pub strong_hankel: Verdict,
    pub strict_hankel: Verdict,
    pub completely_positive: Verdict,
    pub strongly_completely_positive: Verdict,
    pub barren: Verdict,
    pub genuinely_psd: Verdict,
    pub genuinely_pd: Verdict,
    pub nonnegative: Verdict,
    pub symmetric: Verdict,
}

impl Verdicts {
    pub const NAMES: [&'static str; 15] = [
        "strongly_psd",
        "strongly_pd",
        "strongly_sos",
        "b_tensor",
        "m_tensor",
        "strong_m_tensor",
        "strong_hankel",
        "strict_hankel",
        "completely_positive",
        "strongly_completely_positive",
        "barren",
        "genuinely_psd",
        "genuinely_pd",
        "nonnegative",
        "symmetric",
    ];

    pub fn get(&self, name: &str) -> Option<&Verdict> {
        Some(match name {
            "strongly_psd" => &self.strongly_psd,
            "strongly_pd" => &self.strongly_pd,
            "strongly_sos" => &self.strongly_sos,
            "b_tensor" => &self.b_tensor,
            "m_tensor" => &self.m_tensor,
            "strong_m_tensor" => &self.strong_m_tensor,
            "strong_hankel" => &self.strong_hankel,
            "strict_hankel" => &self.strict_hankel,
            "completely_positive" => &self.completely_positive,
            "strongly_completely_positive" => &self.strongly_completely_positive,
            "barren" => &self.barren,
            "genuinely_psd" => &self.genuinely_psd,
            "genuinely_pd" => &self.genuinely_pd,
            "nonnegative" => &self.nonnegative,
            "symmetric" => &self.symmetric,
            _ => return None,
        })
    }

    pub(crate) fn get_mut(&mut self, name: &str) -> Option<&mut Verdict> {
        Some(match name {
            "strongly_psd" => &mut self.strongly_psd,
            "strongly_pd" => &mut self.strongly_pd,
            "strongly_sos" => &mut self.strongly_sos,
            "b_tensor" => &mut self.b_tensor,
            "m_tensor" => &mut self.m_tensor,
            "strong_m_tensor" => &mut self.strong_m_tensor,
            "strong_hankel" => &mut self.strong_hankel,
            "strict_hankel" => &mut self.strict_hankel,
            "completely_positive" => &mut self.completely_positive,
            "strongly_completely_positive" => &mut self.strongly_completely_positive,
            "barren" => &mut self.barren,
            "genuinely_psd" => &mut self.genuinely_psd,
            "genuinely_pd" => &mut self.genuinely_pd,
            "nonnegative" => &mut self.nonnegative,
            "symmetric" => &mut self.symmetric,
            _ => return None,
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &Verdict)> {
        Self::NAMES.into_iter().map(|n| (n, self.get(n).expect("known name")))
    }
}

/// One rule firing, in evaluation order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceEntry {
    pub predicate: &'static str,
    pub rule: &'static str,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Settings {
    pub tol: f64,
    pub tol_base: f64,
    pub seed: u64,
    pub search_points: usize,
    pub sshopm_starts: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub tensor: TensorSummary,
    pub settings: Settings,
    pub verdicts: Verdicts,
    pub trace: Vec<TraceEntry>,
}

/// A broken implication between verdicts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicationViolation {
    pub rule: &'static str,
}

/// `(premise, premise status, conclusion, required status)`.
pub(crate) const IMPLICATIONS: [(&str, Status, &str, Status); 12] = [
    ("strongly_pd", Status::CertifiedYes, "strongly_psd", Status::CertifiedYes),
    ("strict_hankel", Status::CertifiedYes, "strongly_sos", Status::CertifiedYes),
    ("strongly_sos", Status::CertifiedYes, "strongly_psd", Status::CertifiedYes),
    ("barren", Status::CertifiedYes, "genuinely_psd", Status::CertifiedNo),
    ("strongly_psd", Status::CertifiedYes, "barren", Status::CertifiedNo),
    ("genuinely_pd", Status::CertifiedYes, "genuinely_psd", Status::CertifiedYes),
    ("genuinely_psd", Status::CertifiedYes, "barren", Status::CertifiedNo),
    ("barren", Status::CertifiedYes, "genuinely_pd", Status::CertifiedNo),
    ("strong_m_tensor", Status::CertifiedYes, "m_tensor", Status::CertifiedYes),
    ("strongly_completely_positive", Status::CertifiedYes, "completely_positive", Status::CertifiedYes),
    ("completely_positive", Status::CertifiedYes, "nonnegative", Status::CertifiedYes),
    ("strongly_psd", Status::CertifiedNo, "strongly_sos", Status::CertifiedNo),
];

impl ClassificationReport {
    pub fn status(&self, predicate: &str) -> Option<Status> {
        self.verdicts.get(predicate).map(|v| v.status)
    }

    /// Implication rules the report breaks, plus the repeated-index entry
    /// condition for any tensor reported strongly PSD.
    pub fn violations(&self, a: &CubicTensor) -> Vec<ImplicationViolation> {
        let mut out = Vec::new();
        for (p, ps, c, cs) in IMPLICATIONS {
            if self.status(p) == Some(ps) && self.status(c) != Some(cs) {
                out.push(ImplicationViolation { rule: p });
            }
        }
        let spsd = &self.verdicts.strongly_psd;
        if spsd.is_yes() {
            let (m, n) = (a.order(), a.dim());
            let bad = (0..n).any(|j| {
                (0..n).any(|k| {
                    let mut idx = vec![j; m - 1];
                    idx.push(k);
                    a.get(&idx) < -spsd.tol
                })
            });
            if bad {
                out.push(ImplicationViolation {
                    rule: "repeated-index-entry",
                });
            }
        }
        out
    }
}
