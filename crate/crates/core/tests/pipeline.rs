//! End-to-end: parse, reduce, classify, rewrite, certify.

use tlink_core::oracle::{cross_validate, oracle_word, SweepConfig};
use tlink_core::{
    bundle, certify, classify, classify_spec, CertificateKind, Reason, Rule, TLinkSpec, VerdictKind,
};

fn spec(s: &str) -> TLinkSpec {
    s.parse().unwrap()
}

#[test]
fn absorbed_example_end_to_end() {
    let form = spec("T((3,3),(5,2))").to_full_twist_form().unwrap();
    let verdict = classify(&form);
    assert_eq!(verdict.rule, Some(Rule::StrandAbsorption));
    let w = oracle_word(&form).unwrap();
    assert_eq!(w.pretty(), "(σ2)²(σ1σ2)⁵");
    let inv = bundle(&w, 24);
    assert_eq!(
        (inv.euler_char, inv.braid_index, inv.components),
        (Some(-9), Some(3), 1)
    );
    let c = certify(&w, 24).unwrap();
    assert_eq!(c.kind, CertificateKind::NotTorus);
    assert_eq!(c.candidates[0].reason, Reason::BraidIndexMismatch);
}

#[test]
fn trailing_unit_twist_is_reduced_before_classifying() {
    let long = classify_spec(&spec("T((3,3),(5,1),(6,1))"));
    let short = classify_spec(&spec("T((3,3),(5,2))"));
    assert_eq!(long, short);
}

#[test]
fn deferred_single_twist_is_not_claimed() {
    // T((2,2),(5,3)): one twist on two strands of T(5,3), a twisted torus knot.
    let v = classify_spec(&spec("T((2,2),(5,3))"));
    assert_eq!(v.kind, VerdictKind::DeferredToLee);
}

#[test]
fn wider_sweep_has_no_contradictions() {
    let cfg = SweepConfig {
        max_p: 9,
        max_s: 2,
        max_n: 2,
        ..Default::default()
    };
    let report = cross_validate(&cfg).unwrap();
    let s = &report.summary;
    assert_eq!(s.disagreements, 0, "{:?}", report.disagreeing_rows().next());
    assert_eq!(s.inconclusive_with_jones, 0);
    assert_eq!(s.not_torus_verdicts, s.confirmed + s.inconclusive);
}

#[test]
fn three_twist_sweep_has_no_contradictions() {
    let cfg = SweepConfig {
        max_p: 7,
        max_s: 1,
        max_n: 3,
        ..Default::default()
    };
    let report = cross_validate(&cfg).unwrap();
    assert_eq!(report.summary.disagreements, 0);
    assert!(report.rows.iter().any(|r| r.pairs.len() == 4));
}
