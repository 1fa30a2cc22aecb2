//! Independent check of "not a torus link" verdicts by comparing invariants
//! against every torus link the Euler characteristic allows.
//!
//! A positive braid closes to a fibered link whose fiber has Euler
//! characteristic `strands - letters`. For `T(p, q)` that number is
//! `p + q - pq`, so only finitely many `(p, q)` can match, and each is
//! eliminated or kept by comparing component counts, braid indices,
//! Alexander and Jones polynomials.

use std::fmt;
use std::time::Instant;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::braid::{BraidError, BraidWord};
use crate::classify::{classify, ClassifierVerdict, VerdictKind};
use crate::invariants::{bundle, torus_reference, InvariantBundle};
use crate::report::ReportRow;
use crate::tlink::{FullTwistForm, TLinkError};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    TLink(#[from] TLinkError),
    #[error("could not build thread pool: {0}")]
    ThreadPool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Reason {
    ComponentMismatch,
    BraidIndexMismatch,
    AlexanderMismatch,
    JonesMismatch,
    /// Every available invariant agrees.
    Matched,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Reason::ComponentMismatch => "componentMismatch",
            Reason::BraidIndexMismatch => "braidIndexMismatch",
            Reason::AlexanderMismatch => "alexanderMismatch",
            Reason::JonesMismatch => "jonesMismatch",
            Reason::Matched => "matched",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CertificateKind {
    NotTorus,
    TorusMatch,
    Inconclusive,
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CertificateKind::NotTorus => "NotTorus",
            CertificateKind::TorusMatch => "TorusMatch",
            CertificateKind::Inconclusive => "Inconclusive",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub p: u32,
    pub q: u32,
    pub reason: Reason,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub kind: CertificateKind,
    pub candidates: Vec<Candidate>,
    /// Some Jones comparison was skipped because a word exceeded the guard.
    pub guard_hit: bool,
}

impl Certificate {
    /// The surviving torus parameters when the certificate is a match.
    pub fn matched(&self) -> Option<(u32, u32)> {
        match self.kind {
            CertificateKind::TorusMatch => self
                .candidates
                .iter()
                .find(|c| c.reason == Reason::Matched)
                .map(|c| (c.p, c.q)),
            _ => None,
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if let Some((p, q)) = self.matched() {
            write!(f, " T({p},{q})")?;
        }
        let parts: Vec<String> = self
            .candidates
            .iter()
            .map(|c| format!("T({},{}) {}", c.p, c.q, c.reason))
            .collect();
        if !parts.is_empty() {
            write!(f, " [{}]", parts.join(", "))?;
        }
        if self.guard_hit {
            write!(f, " (crossing guard hit)")?;
        }
        Ok(())
    }
}

/// All `(p, q)` with `q <= p` and `p + q - pq = chi`, ascending in `q`.
/// `chi = 1` gives only the unknot `(1, 1)`.
pub fn torus_params_with_euler_char(chi: i64) -> Vec<(u32, u32)> {
    let m = 1 - chi;
    if m < 0 {
        return Vec::new();
    }
    if m == 0 {
        return vec![(1, 1)];
    }
    // (p - 1)(q - 1) = m
    let mut out = Vec::new();
    let mut d = 1i64;
    while d * d <= m {
        if m % d == 0 {
            out.push(((m / d + 1) as u32, (d + 1) as u32));
        }
        d += 1;
    }
    out
}

/// Torus parameters consistent with both the Euler characteristic and the
/// component count of `inv`. Empty for non-positive words.
pub fn candidate_torus_params(inv: &InvariantBundle) -> Vec<(u32, u32)> {
    let Some(chi) = inv.euler_char else {
        return Vec::new();
    };
    torus_params_with_euler_char(chi)
        .into_iter()
        .filter(|&(p, q)| p.gcd(&q) as usize == inv.components)
        .collect()
}

pub fn certify(w: &BraidWord, guard: usize) -> Result<Certificate, OracleError> {
    w.require_positive()?;
    Ok(certify_bundle(&bundle(w, guard), guard))
}

/// Certificate for a bundle computed from a positive word.
pub fn certify_bundle(inv: &InvariantBundle, guard: usize) -> Certificate {
    let chi = inv.euler_char.expect("bundle of a positive word");
    let mut candidates = Vec::new();
    let mut survivors = 0;
    let mut guard_hit = false;
    for (p, q) in torus_params_with_euler_char(chi) {
        let reason = if p.gcd(&q) as usize != inv.components {
            Reason::ComponentMismatch
        } else {
            let reference = torus_reference(p, q, guard).expect("q <= p by construction");
            compare(inv, &reference, &mut guard_hit)
        };
        if reason == Reason::Matched {
            survivors += 1;
        }
        candidates.push(Candidate { p, q, reason });
    }
    let kind = match survivors {
        0 => CertificateKind::NotTorus,
        1 if !guard_hit => CertificateKind::TorusMatch,
        _ => CertificateKind::Inconclusive,
    };
    Certificate {
        kind,
        candidates,
        guard_hit,
    }
}

fn compare(inv: &InvariantBundle, reference: &InvariantBundle, guard_hit: &mut bool) -> Reason {
    if let (Some(a), Some(b)) = (inv.braid_index, reference.braid_index) {
        if a != b {
            return Reason::BraidIndexMismatch;
        }
    }
    if !inv.alexander.eq_up_to_unit(&reference.alexander) {
        return Reason::AlexanderMismatch;
    }
    match (&inv.jones, &reference.jones) {
        (Some(a), Some(b)) if a != b => Reason::JonesMismatch,
        (Some(_), Some(_)) => Reason::Matched,
        _ => {
            *guard_hit = true;
            Reason::Matched
        }
    }
}

/// Parameter box for a sweep over full-twist forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub max_p: u32,
    pub max_s: u32,
    pub max_n: usize,
    pub guard: usize,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Record wall-clock time per row. Off by default so output is
    /// byte-for-byte reproducible.
    pub record_timing: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            max_p: 8,
            max_s: 2,
            max_n: 2,
            guard: crate::invariants::DEFAULT_JONES_GUARD,
            jobs: None,
            record_timing: false,
        }
    }
}

/// Every valid full-twist form inside the box, in a fixed order.
pub fn enumerate_forms(cfg: &SweepConfig) -> Vec<FullTwistForm> {
    let mut out = Vec::new();
    for p in 3..=cfg.max_p {
        for q in 2..p {
            let choices: Vec<u32> = (2..p).filter(|&a| a != q).collect();
            for n in 1..=cfg.max_n.min(choices.len()) {
                for a in combinations(&choices, n) {
                    for s in tuples(cfg.max_s, n) {
                        let twists = a.iter().copied().zip(s).collect();
                        out.push(FullTwistForm::new(twists, (p, q)).expect("enumerated in range"));
                    }
                }
            }
        }
    }
    out
}

fn combinations(items: &[u32], k: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

fn tuples(max: u32, k: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..=max).map(move |s| {
                    let mut t = t.clone();
                    t.push(s);
                    t
                })
            })
            .collect();
    }
    out
}

/// The word the oracle inspects for a form: the fully absorbed word when
/// `q < a_n`, the flipped link's standard braid on `q` strands otherwise.
pub fn oracle_word(form: &FullTwistForm) -> Result<BraidWord, TLinkError> {
    if form.q() < form.a_max() {
        Ok(form.absorb_strands()?.last().clone())
    } else {
        Ok(form.flip_pq()?.standard_braid())
    }
}

pub fn evaluate(form: &FullTwistForm, guard: usize, record_timing: bool) -> ReportRow {
    let start = Instant::now();
    let verdict = classify(form);
    let word = oracle_word(form).expect("both rewrites apply to their branch");
    let inv = bundle(&word, guard);
    let certificate = certify_bundle(&inv, guard);
    let timing_ms = if record_timing {
        start.elapsed().as_millis() as u64
    } else {
        0
    };
    ReportRow::new(
        form.to_spec(),
        verdict,
        Some(certificate),
        Some(inv),
        timing_ms,
    )
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepSummary {
    pub instances: usize,
    pub not_torus_verdicts: usize,
    pub exceptional: usize,
    pub deferred: usize,
    /// NotTorusLink verdicts the oracle independently confirmed.
    pub confirmed: usize,
    /// NotTorusLink verdicts the oracle matched to a torus link.
    pub disagreements: usize,
    /// NotTorusLink verdicts the oracle could not settle.
    pub inconclusive: usize,
    /// Of those, how many had Jones available on both sides.
    pub inconclusive_with_jones: usize,
    pub guard_hits: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub summary: SweepSummary,
    pub rows: Vec<ReportRow>,
}

impl SweepReport {
    pub fn disagreeing_rows(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows
            .iter()
            .filter(|r| is_disagreement(&r.verdict, r.certificate.as_ref()))
    }
}

fn is_disagreement(v: &ClassifierVerdict, c: Option<&Certificate>) -> bool {
    v.kind == VerdictKind::NotTorusLink && c.is_some_and(|c| c.kind == CertificateKind::TorusMatch)
}

fn summarize(rows: &[ReportRow]) -> SweepSummary {
    let mut s = SweepSummary {
        instances: rows.len(),
        ..Default::default()
    };
    for row in rows {
        let cert = row.certificate.as_ref();
        if cert.is_some_and(|c| c.guard_hit) {
            s.guard_hits += 1;
        }
        match row.verdict.kind {
            VerdictKind::NotTorusLink => {
                s.not_torus_verdicts += 1;
                match cert.map(|c| c.kind) {
                    Some(CertificateKind::NotTorus) => s.confirmed += 1,
                    Some(CertificateKind::TorusMatch) => s.disagreements += 1,
                    Some(CertificateKind::Inconclusive) => {
                        s.inconclusive += 1;
                        if !cert.is_some_and(|c| c.guard_hit) {
                            s.inconclusive_with_jones += 1;
                        }
                    }
                    None => {}
                }
            }
            VerdictKind::ExceptionalFamily => s.exceptional += 1,
            VerdictKind::DeferredToLee => s.deferred += 1,
            VerdictKind::InvalidInput => {}
        }
    }
    s
}

/// Classifies and certifies every form in the box. Rows come back in
/// enumeration order regardless of thread count.
pub fn cross_validate(cfg: &SweepConfig) -> Result<SweepReport, OracleError> {
    let forms = enumerate_forms(cfg);
    let run = || -> Vec<ReportRow> {
        forms
            .par_iter()
            .map(|f| evaluate(f, cfg.guard, cfg.record_timing))
            .collect()
    };
    let rows = match cfg.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| OracleError::ThreadPool(e.to_string()))?
            .install(run),
        None => run(),
    };
    Ok(SweepReport {
        summary: summarize(&rows),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::torus_braid;
    use crate::laurent::LaurentPoly;
    use crate::tlink::TLinkSpec;
    use proptest::prelude::*;

    fn spec_form(s: &str) -> FullTwistForm {
        s.parse::<TLinkSpec>()
            .unwrap()
            .to_full_twist_form()
            .unwrap()
    }

    fn bundle_with(chi: i64, components: usize) -> InvariantBundle {
        InvariantBundle {
            strands: 1,
            components,
            letters: 0,
            euler_char: Some(chi),
            braid_index: None,
            alexander: LaurentPoly::one(),
            jones: None,
        }
    }

    #[test]
    fn candidate_enumeration() {
        assert_eq!(candidate_torus_params(&bundle_with(-1, 1)), vec![(3, 2)]);
        assert_eq!(torus_params_with_euler_char(-9), vec![(11, 2), (6, 3)]);
        assert_eq!(candidate_torus_params(&bundle_with(-9, 1)), vec![(11, 2)]);
        assert_eq!(candidate_torus_params(&bundle_with(0, 2)), vec![(2, 2)]);
        assert_eq!(candidate_torus_params(&bundle_with(1, 1)), vec![(1, 1)]);
        assert!(candidate_torus_params(&bundle_with(2, 2)).is_empty());
    }

    #[test]
    fn torus_words_match_themselves() {
        let c = certify(&torus_braid(5, 3).unwrap(), 24).unwrap();
        assert_eq!(c.kind, CertificateKind::TorusMatch);
        assert_eq!(c.matched(), Some((5, 3)));
        let c = certify(&torus_braid(4, 2).unwrap(), 24).unwrap();
        assert_eq!(c.matched(), Some((4, 2)));
    }

    #[test]
    fn absorbed_word_fails_on_braid_index() {
        let w = oracle_word(&spec_form("T((3,3),(5,2))")).unwrap();
        assert_eq!((w.strands(), w.len()), (3, 12));
        let c = certify(&w, 24).unwrap();
        assert_eq!(c.kind, CertificateKind::NotTorus);
        assert_eq!(
            c.candidates,
            vec![
                Candidate {
                    p: 11,
                    q: 2,
                    reason: Reason::BraidIndexMismatch
                },
                Candidate {
                    p: 6,
                    q: 3,
                    reason: Reason::ComponentMismatch
                },
            ]
        );
    }

    #[test]
    fn non_coprime_example_is_certified() {
        let f = spec_form("T((3,3),(4,2))");
        let row = evaluate(&f, 24, false);
        assert_eq!(row.verdict.kind, VerdictKind::NotTorusLink);
        assert_eq!(row.certificate.unwrap().kind, CertificateKind::NotTorus);
    }

    #[test]
    fn negative_words_rejected() {
        let w = BraidWord::new(3, vec![1, -2]).unwrap();
        assert!(matches!(certify(&w, 24), Err(OracleError::Braid(_))));
    }

    #[test]
    fn guard_marks_unavailable_jones() {
        let c = certify(&torus_braid(5, 3).unwrap(), 4).unwrap();
        assert_eq!(c.kind, CertificateKind::Inconclusive);
        assert!(c.guard_hit);
    }

    #[test]
    fn enumeration_is_sorted_and_valid() {
        let cfg = SweepConfig {
            max_p: 5,
            max_s: 1,
            max_n: 1,
            ..Default::default()
        };
        let forms = enumerate_forms(&cfg);
        let names: Vec<String> = forms.iter().map(|f| f.to_spec().to_string()).collect();
        assert_eq!(names[0], "T((3,3),(4,2))");
        assert!(names.contains(&"T((3,3),(5,2))".to_string()));
        assert!(!names.iter().any(|n| n.contains("(3,3),(5,3)")));
    }

    #[test]
    fn small_sweep_has_no_disagreement_and_is_thread_independent() {
        let cfg = SweepConfig {
            max_p: 6,
            max_s: 2,
            max_n: 2,
            ..Default::default()
        };
        let one = cross_validate(&SweepConfig {
            jobs: Some(1),
            ..cfg.clone()
        })
        .unwrap();
        let four = cross_validate(&SweepConfig {
            jobs: Some(4),
            ..cfg
        })
        .unwrap();
        assert_eq!(one, four);
        assert_eq!(one.summary.disagreements, 0);
        assert!(one.summary.confirmed > 0);
    }

    /// `Δ_{T(p,q)}` up to units, from the cyclotomic closed form.
    fn closed_form_alexander(p: u32, q: u32) -> LaurentPoly {
        let d = p.gcd(&q);
        let t = |e: u32| LaurentPoly::monomial(1, e as i64) - LaurentPoly::one();
        let num = t(p * q / d).pow(d) * t(1);
        num.div_exact(&(t(p) * t(q))).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn alexander_elimination_is_sound(p in 2u32..8, q in 2u32..6) {
            prop_assume!(q <= p);
            let inv = bundle(&torus_braid(p, q).unwrap(), 0);
            let c = certify_bundle(&inv, 0);
            let own = c.candidates.iter().find(|c| (c.p, c.q) == (p, q)).unwrap();
            prop_assert_ne!(own.reason, Reason::AlexanderMismatch);
            for cand in &c.candidates {
                if cand.reason == Reason::AlexanderMismatch {
                    prop_assert!(!closed_form_alexander(cand.p, cand.q).eq_up_to_unit(&inv.alexander));
                }
            }
        }

        #[test]
        fn raising_the_guard_never_loses_information(p in 3u32..7, q in 2u32..5, g in 0usize..30) {
            prop_assume!(q < p);
            let w = torus_braid(p, q).unwrap();
            let low = certify(&w, g).unwrap();
            let high = certify(&w, g + 10).unwrap();
            if low.kind != CertificateKind::Inconclusive {
                prop_assert_eq!(low.kind, high.kind);
            }
            if high.guard_hit {
                prop_assert!(low.guard_hit);
            }
        }
    }
}
