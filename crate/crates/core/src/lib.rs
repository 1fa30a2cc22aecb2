//! Braid and T-link toolkit: Garside normal forms, strand-absorbing
//! rewrites, Alexander and Jones polynomials, a classifier for twisted
//! torus links, and an invariant-based cross-check.

pub mod braid;
pub mod classify;
pub mod garside;
pub mod invariants;
pub mod laurent;
pub mod oracle;
pub mod report;
pub mod tlink;

pub use braid::{BraidError, BraidWord, Permutation};
pub use classify::{classify, classify_spec, ClassifierVerdict, Rule, VerdictKind};
pub use garside::{normal_form, NormalForm, PermutationBraid};
pub use invariants::{
    alexander, bundle, jones, torus_braid, torus_reference, InvariantBundle, JonesPolynomial,
    DEFAULT_JONES_GUARD,
};
pub use laurent::{LaurentPoly, PolyMatrix};
pub use oracle::{
    certify, cross_validate, Candidate, Certificate, CertificateKind, Reason, SweepConfig,
    SweepReport, SweepSummary,
};
pub use report::{CsvRecord, ReportRow};
pub use tlink::{markov_reduce_chain, FullTwistForm, RewriteTrace, TLinkError, TLinkSpec};
