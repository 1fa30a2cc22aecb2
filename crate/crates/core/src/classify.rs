//! Decision procedure for when a T-link obtained by full twists along a
//! torus link cannot itself be a torus link.
//!
//! For `T((a_1, s_1 a_1), …, (a_n, s_n a_n), (p, q))` with `1 < q < p`,
//! `1 < a_1 < … < a_n < p` and `a_i ≠ q`:
//!
//! * `gcd(p, q) > 1`: never a torus link.
//! * `q < a_n`: never a torus link (strand absorption plus braid index).
//! * `n > 1`, `a_n < q`, and one of `p ≢ 1 (mod q)`, `s_1 > 1`,
//!   `a_2 ≠ a_1 + 1`: never a torus knot (residue analysis of `p mod q`).
//! * `n = 1`, `s_1 > 1`: never a torus knot.
//! * `n = 1` otherwise is the twisted torus knot case, classified
//!   elsewhere in the literature; `n > 1` otherwise is the excluded family.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::tlink::{markov_reduce_chain, FullTwistForm, TLinkSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum VerdictKind {
    NotTorusLink,
    ExceptionalFamily,
    DeferredToLee,
    InvalidInput,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VerdictKind::NotTorusLink => "NotTorusLink",
            VerdictKind::ExceptionalFamily => "ExceptionalFamily",
            VerdictKind::DeferredToLee => "DeferredToLee",
            VerdictKind::InvalidInput => "InvalidInput",
        };
        f.write_str(s)
    }
}

/// Which published result settles the case. The display strings are the
/// citation tags used in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `q < a_n`: absorb strands, compare braid indices.
    StrandAbsorption,
    /// `a_n < q`, coprime, `n > 1`: reduce `p` modulo `q`.
    ResidueReduction,
    /// `gcd(p, q) > 1`.
    NonCoprimeBase,
    /// Coprime base, `n > 1`.
    CoprimeBase,
    /// Every `s_i > 1`.
    RepeatedTwists,
    /// The `n = 1` twisted torus knot classification.
    TwistedTorusKnots,
    /// The family no rule settles.
    ExcludedFamily,
}

impl Rule {
    pub fn tag(self) -> &'static str {
        match self {
            Rule::StrandAbsorption => "Lemma 2.4",
            Rule::ResidueReduction => "Lemma 2.6",
            Rule::NonCoprimeBase => "Prop 2.7",
            Rule::CoprimeBase => "Prop 2.8",
            Rule::RepeatedTwists => "Cor 2.9",
            Rule::TwistedTorusKnots => "Lee Thm 1.1",
            Rule::ExcludedFamily => "Thm 1.2 exclusion",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl Serialize for Rule {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifierVerdict {
    pub kind: VerdictKind,
    pub rule: Option<Rule>,
    #[serde(skip)]
    pub details: String,
}

impl ClassifierVerdict {
    fn new(kind: VerdictKind, rule: Rule, details: String) -> Self {
        Self {
            kind,
            rule: Some(rule),
            details,
        }
    }

    pub fn invalid(details: impl Into<String>) -> Self {
        Self {
            kind: VerdictKind::InvalidInput,
            rule: None,
            details: details.into(),
        }
    }

    pub fn is_not_torus(&self) -> bool {
        self.kind == VerdictKind::NotTorusLink
    }
}

impl fmt::Display for ClassifierVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rule {
            Some(rule) => write!(f, "{} ({}: {})", self.kind, rule, self.details),
            None => write!(f, "{} ({})", self.kind, self.details),
        }
    }
}

pub fn classify(form: &FullTwistForm) -> ClassifierVerdict {
    use VerdictKind::*;
    let (p, q) = (form.p(), form.q());
    let a_n = form.a_max();
    let twists = form.twists();
    let n = twists.len();
    let (a_1, s_1) = twists[0];

    let g = p.gcd(&q);
    if g > 1 {
        return ClassifierVerdict::new(
            NotTorusLink,
            Rule::NonCoprimeBase,
            format!("gcd({p},{q})={g}"),
        );
    }
    if q < a_n {
        return ClassifierVerdict::new(
            NotTorusLink,
            Rule::StrandAbsorption,
            format!("q={q} < a_n={a_n}, braid index {a_n}"),
        );
    }
    let residue = p % q;
    if n > 1 {
        let a_2 = twists[1].0;
        let mut reasons = Vec::new();
        if residue != 1 {
            reasons.push(format!("p mod q = {residue} != 1"));
        }
        if s_1 > 1 {
            reasons.push(format!("s_1={s_1} > 1"));
        }
        if a_2 != a_1 + 1 {
            reasons.push(format!("a_2={a_2} != a_1+1={}", a_1 + 1));
        }
        if !reasons.is_empty() {
            return ClassifierVerdict::new(
                NotTorusLink,
                Rule::ResidueReduction,
                reasons.join(", "),
            );
        }
        return ClassifierVerdict::new(
            ExceptionalFamily,
            Rule::ExcludedFamily,
            format!("p={p}={}*{q}+1, s_1=1, a_2=a_1+1, a_n={a_n} < q={q}", p / q),
        );
    }
    if s_1 > 1 {
        return ClassifierVerdict::new(
            NotTorusLink,
            Rule::RepeatedTwists,
            format!("n=1, s_1={s_1} > 1"),
        );
    }
    ClassifierVerdict::new(
        DeferredToLee,
        Rule::TwistedTorusKnots,
        format!("n=1, s_1=1, a_1={a_1} < q={q}"),
    )
}

/// Reduces a trailing exponent-one syllable, converts to full-twist form,
/// and classifies. Inputs outside the form come back as `InvalidInput`.
pub fn classify_spec(spec: &TLinkSpec) -> ClassifierVerdict {
    let reduced = markov_reduce_chain(spec);
    match reduced.try_full_twist_form() {
        Ok(form) => classify(&form),
        Err(e) => ClassifierVerdict::invalid(format!("{reduced}: {e}")),
    }
}

/// Classifies raw parameters, reporting constraint violations as
/// `InvalidInput` instead of failing.
pub fn classify_params(twists: &[(u32, u32)], base: (u32, u32)) -> ClassifierVerdict {
    match FullTwistForm::new(twists.to_vec(), base) {
        Ok(form) => classify(&form),
        Err(e) => ClassifierVerdict::invalid(e.to_string()),
    }
}
