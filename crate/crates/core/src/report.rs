//! Per-instance result rows shared by the CLI and the sweep driver.

use serde::Serialize;

use crate::classify::ClassifierVerdict;
use crate::invariants::InvariantBundle;
use crate::oracle::Certificate;
use crate::tlink::TLinkSpec;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportRow {
    pub input: String,
    pub pairs: Vec<(u32, u32)>,
    pub verdict: ClassifierVerdict,
    pub certificate: Option<Certificate>,
    pub invariants: Option<InvariantBundle>,
    pub timing_ms: u64,
}

impl ReportRow {
    pub fn new(
        spec: TLinkSpec,
        verdict: ClassifierVerdict,
        certificate: Option<Certificate>,
        invariants: Option<InvariantBundle>,
        timing_ms: u64,
    ) -> Self {
        Self {
            input: spec.to_string(),
            pairs: spec.pairs().to_vec(),
            verdict,
            certificate,
            invariants,
            timing_ms,
        }
    }

    /// Flattened form for tabular output.
    pub fn to_record(&self) -> CsvRecord {
        let cert = self.certificate.as_ref();
        let inv = self.invariants.as_ref();
        let opt = |x: Option<String>| x.unwrap_or_default();
        CsvRecord {
            input: self.input.clone(),
            verdict: self.verdict.kind.to_string(),
            rule: self
                .verdict
                .rule
                .map(|r| r.tag().to_string())
                .unwrap_or_default(),
            certificate: opt(cert.map(|c| c.kind.to_string())),
            candidates: opt(cert.map(|c| {
                c.candidates
                    .iter()
                    .map(|c| format!("T({},{}):{}", c.p, c.q, c.reason))
                    .collect::<Vec<_>>()
                    .join(" ")
            })),
            guard_hit: opt(cert.map(|c| c.guard_hit.to_string())),
            components: opt(inv.map(|i| i.components.to_string())),
            letters: opt(inv.map(|i| i.letters.to_string())),
            euler_char: opt(inv.and_then(|i| i.euler_char).map(|x| x.to_string())),
            braid_index: opt(inv.and_then(|i| i.braid_index).map(|x| x.to_string())),
            alexander: opt(inv.map(|i| i.alexander.to_string())),
            jones: opt(inv.and_then(|i| i.jones.as_ref()).map(|j| j.to_string())),
            timing_ms: self.timing_ms,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CsvRecord {
    pub input: String,
    pub verdict: String,
    pub rule: String,
    pub certificate: String,
    pub candidates: String,
    pub guard_hit: String,
    pub components: String,
    pub letters: String,
    pub euler_char: String,
    pub braid_index: String,
    pub alexander: String,
    pub jones: String,
    pub timing_ms: u64,
}
