//! T-link parameters, their standard braids, and the braid-level
//! procedures relating different presentations of the same T-link:
//! strand absorption, the `(p, q) ↔ (q, p)` flip, and Markov reduction of a
//! trailing exponent-one syllable.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::braid::{superscript, BraidError, BraidWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("a T-link needs at least one pair")]
    Empty,
    #[error("pair {index}: r = {r} must be at least 2")]
    StrandsTooFew { index: usize, r: u32 },
    #[error("pair {index}: r-values must increase strictly ({prev} then {r})")]
    NotIncreasing { index: usize, prev: u32, r: u32 },
    #[error("pair {index}: s must be positive")]
    ZeroExponent { index: usize },
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

impl SpecError {
    /// Byte offset for parse-level errors.
    pub fn offset(&self) -> Option<usize> {
        match self {
            SpecError::Parse { offset, .. } => Some(*offset),
            _ => None,
        }
    }
}

/// Why a parameter tuple is not of the form
/// `((a_1, s_1 a_1), …, (a_n, s_n a_n), (p, q))` with `1 < q < p`,
/// `1 < a_1 < … < a_n < p` and `a_i ≠ q`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("need at least one twist pair before the base pair")]
    NoTwistPairs,
    #[error("base (p, q) = ({p}, {q}) needs 1 < q < p")]
    BadBase { p: u32, q: u32 },
    #[error("twist pair {index}: s-value {s} is not a multiple of r = {r}")]
    NotFullTwists { index: usize, r: u32, s: u32 },
    #[error("twist pair {index}: a = {a} must satisfy 1 < a < p = {p}")]
    TwistOutOfRange { index: usize, a: u32, p: u32 },
    #[error("twist pair {index}: a-values must increase strictly")]
    NotIncreasing { index: usize },
    #[error("twist pair {index}: twist count must be positive")]
    ZeroTwists { index: usize },
    #[error("twist pair {index}: a = q = {q} is excluded; such links reduce to a shorter tuple")]
    TwistEqualsQ { index: usize, q: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TLinkError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error("flip needs a_n < q < p, got a_n = {a_n}, q = {q}")]
    FlipNotApplicable { a_n: u32, q: u32 },
    #[error("strand absorption needs q < a_n, got q = {q}, a_n = {a_n}")]
    AbsorptionNotApplicable { a_n: u32, q: u32 },
    #[error("word does not end with (σ1…σ{top})^{count}")]
    SuffixAbsent { top: usize, count: usize },
}

/// `T((r_1, s_1), …, (r_k, s_k))` with `2 ≤ r_1 < … < r_k` and `s_i ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct TLinkSpec {
    pairs: Vec<(u32, u32)>,
}

impl TLinkSpec {
    pub fn new(pairs: Vec<(u32, u32)>) -> Result<Self, SpecError> {
        if pairs.is_empty() {
            return Err(SpecError::Empty);
        }
        for (index, &(r, s)) in pairs.iter().enumerate() {
            if r < 2 {
                return Err(SpecError::StrandsTooFew { index, r });
            }
            if s == 0 {
                return Err(SpecError::ZeroExponent { index });
            }
            if index > 0 && pairs[index - 1].0 >= r {
                return Err(SpecError::NotIncreasing {
                    index,
                    prev: pairs[index - 1].0,
                    r,
                });
            }
        }
        Ok(Self { pairs })
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    /// Strand count of the standard braid, `r_k`.
    pub fn strands(&self) -> usize {
        self.pairs.last().map(|p| p.0 as usize).unwrap_or(1)
    }

    /// `(σ1…σ_{r_1-1})^{s_1} ⋯ (σ1…σ_{r_k-1})^{s_k}` on `r_k` strands.
    pub fn standard_braid(&self) -> BraidWord {
        let syllables: Vec<Syllable> = self
            .pairs
            .iter()
            .map(|&(r, s)| Syllable::ascending(r as usize - 1, s as usize))
            .collect();
        word_of(self.strands(), &syllables)
    }

    /// The constrained full-twist form, or the reason it does not apply.
    pub fn try_full_twist_form(&self) -> Result<FullTwistForm, FormError> {
        let (last, rest) = self.pairs.split_last().expect("non-empty by construction");
        let mut twists = Vec::with_capacity(rest.len());
        for (index, &(r, s)) in rest.iter().enumerate() {
            if s % r != 0 {
                return Err(FormError::NotFullTwists { index, r, s });
            }
            twists.push((r, s / r));
        }
        FullTwistForm::new(twists, *last)
    }

    pub fn to_full_twist_form(&self) -> Option<FullTwistForm> {
        self.try_full_twist_form().ok()
    }
}

impl fmt::Display for TLinkSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T(")?;
        for (i, (r, s)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({r},{s})")?;
        }
        write!(f, ")")
    }
}

impl FromStr for TLinkSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser::new(s).parse_spec()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Self {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, message: impl Into<String>) -> SpecError {
        SpecError::Parse {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self
            .src
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), SpecError> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", byte as char)))
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u32, SpecError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().map_err(|_| SpecError::Parse {
            offset: start,
            message: "number too large".into(),
        })
    }

    fn parse_spec(mut self) -> Result<TLinkSpec, SpecError> {
        self.expect(b'T')?;
        self.expect(b'(')?;
        let mut pairs = Vec::new();
        loop {
            self.skip_ws();
            let pair_start = self.pos;
            self.expect(b'(')?;
            let r = self.number()?;
            self.expect(b',')?;
            let s = self.number()?;
            self.expect(b')')?;
            let index = pairs.len();
            let constraint = |message: String| SpecError::Parse {
                offset: pair_start,
                message,
            };
            if r < 2 {
                return Err(constraint(format!(
                    "pair {index}: r = {r} must be at least 2"
                )));
            }
            if s == 0 {
                return Err(constraint(format!("pair {index}: s must be positive")));
            }
            if let Some(&(prev, _)) = pairs.last() {
                if prev >= r {
                    return Err(constraint(format!(
                        "pair {index}: r-values must increase strictly ({prev} then {r})"
                    )));
                }
            }
            pairs.push((r, s));
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b')') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.error("expected ',' or ')'")),
            }
        }
        self.skip_ws();
        if self.pos != self.src.len() {
            return Err(self.error("trailing input"));
        }
        TLinkSpec::new(pairs)
    }
}

/// `T((a_1, s_1 a_1), …, (a_n, s_n a_n), (p, q))`: full twists on `a_i`
/// strands followed by the torus braid of `T(p, q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FullTwistForm {
    twists: Vec<(u32, u32)>,
    p: u32,
    q: u32,
}

impl FullTwistForm {
    /// `twists` holds `(a_i, s_i)`, the strand count and the number of full
    /// twists; `base` is `(p, q)`.
    pub fn new(twists: Vec<(u32, u32)>, base: (u32, u32)) -> Result<Self, FormError> {
        let (p, q) = base;
        if twists.is_empty() {
            return Err(FormError::NoTwistPairs);
        }
        if !(1 < q && q < p) {
            return Err(FormError::BadBase { p, q });
        }
        for (index, &(a, s)) in twists.iter().enumerate() {
            if !(1 < a && a < p) {
                return Err(FormError::TwistOutOfRange { index, a, p });
            }
            if index > 0 && twists[index - 1].0 >= a {
                return Err(FormError::NotIncreasing { index });
            }
            if s == 0 {
                return Err(FormError::ZeroTwists { index });
            }
            if a == q {
                return Err(FormError::TwistEqualsQ { index, q });
            }
        }
        Ok(Self { twists, p, q })
    }

    /// `(a_i, s_i)` pairs.
    pub fn twists(&self) -> &[(u32, u32)] {
        &self.twists
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Number of twist pairs.
    pub fn n(&self) -> usize {
        self.twists.len()
    }

    /// Largest twisted strand count `a_n`.
    pub fn a_max(&self) -> u32 {
        self.twists.last().expect("non-empty").0
    }

    pub fn to_spec(&self) -> TLinkSpec {
        let mut pairs: Vec<(u32, u32)> = self.twists.iter().map(|&(a, s)| (a, a * s)).collect();
        pairs.push((self.p, self.q));
        TLinkSpec { pairs }
    }

    pub fn standard_braid(&self) -> BraidWord {
        self.to_spec().standard_braid()
    }

    fn twist_syllables(&self) -> Vec<Syllable> {
        self.twists
            .iter()
            .map(|&(a, s)| Syllable::ascending(a as usize - 1, (a * s) as usize))
            .collect()
    }

    /// The equivalent T-link with the base pair reversed, on `q` strands.
    /// Needs `a_n < q`.
    pub fn flip_pq(&self) -> Result<TLinkSpec, TLinkError> {
        if self.a_max() >= self.q {
            return Err(TLinkError::FlipNotApplicable {
                a_n: self.a_max(),
                q: self.q,
            });
        }
        let mut pairs: Vec<(u32, u32)> = self.twists.iter().map(|&(a, s)| (a, a * s)).collect();
        pairs.push((self.q, self.p));
        Ok(TLinkSpec { pairs })
    }

    /// Absorbs the `p - a_n` outer strands one at a time. Needs `q < a_n`.
    ///
    /// Step `j` lives on `p - j` strands and reads
    /// `(σ_{a_n-1}…σ_{a_n-q+1})^j · twists · (σ1…σ_{p-j-1})^q`; the last step
    /// has `a_n` strands and its final syllable merges with the `a_n` twist
    /// into `(σ1…σ_{a_n-1})^{s_n a_n + q}`.
    pub fn absorb_strands(&self) -> Result<RewriteTrace, TLinkError> {
        let a_n = self.a_max();
        if self.q >= a_n {
            return Err(TLinkError::AbsorptionNotApplicable { a_n, q: self.q });
        }
        let (p, q, a_n) = (self.p as usize, self.q as usize, a_n as usize);
        let twists = self.twist_syllables();
        let steps = (0..=p - a_n)
            .map(|j| {
                let strands = p - j;
                let mut syl = Vec::with_capacity(twists.len() + 2);
                if j > 0 {
                    syl.push(Syllable::descending(a_n - 1, a_n - q + 1, j));
                }
                syl.extend(twists.iter().cloned());
                syl.push(Syllable::ascending(strands - 1, q));
                TraceStep::new(strands, merge_syllables(syl))
            })
            .collect();
        Ok(RewriteTrace { steps })
    }
}

impl fmt::Display for FullTwistForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_spec().fmt(f)
    }
}

/// A power of a run of consecutive generators, `(σ_from … σ_to)^power`,
/// ascending when `from ≤ to` and descending otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub from: usize,
    pub to: usize,
    pub power: usize,
}

impl Syllable {
    /// `(σ1…σ_top)^power`.
    pub fn ascending(top: usize, power: usize) -> Self {
        Self {
            from: 1,
            to: top,
            power,
        }
    }

    pub fn descending(from: usize, to: usize, power: usize) -> Self {
        Self { from, to, power }
    }

    pub fn letters(&self) -> Vec<i32> {
        let run: Vec<i32> = if self.from <= self.to {
            (self.from..=self.to).map(|x| x as i32).collect()
        } else {
            (self.to..=self.from).rev().map(|x| x as i32).collect()
        };
        run.repeat(self.power)
    }

    pub fn len(&self) -> usize {
        (self.from.abs_diff(self.to) + 1) * self.power
    }

    pub fn is_empty(&self) -> bool {
        self.power == 0 || self.to == 0
    }
}

impl fmt::Display for Syllable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: String = if self.from <= self.to {
            (self.from..=self.to).map(|x| format!("σ{x}")).collect()
        } else {
            (self.to..=self.from)
                .rev()
                .map(|x| format!("σ{x}"))
                .collect()
        };
        if self.power == 1 {
            write!(f, "({body})")
        } else {
            write!(f, "({body}){}", superscript(self.power))
        }
    }
}

fn merge_syllables(syllables: Vec<Syllable>) -> Vec<Syllable> {
    let mut out: Vec<Syllable> = Vec::with_capacity(syllables.len());
    for s in syllables.into_iter().filter(|s| !s.is_empty()) {
        match out.last_mut() {
            Some(prev) if prev.from == s.from && prev.to == s.to => prev.power += s.power,
            _ => out.push(s),
        }
    }
    out
}

fn word_of(strands: usize, syllables: &[Syllable]) -> BraidWord {
    let letters = syllables.iter().flat_map(|s| s.letters()).collect();
    BraidWord::new(strands, letters).expect("syllables fit their strand count")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub word: BraidWord,
    pub syllables: Vec<Syllable>,
}

impl TraceStep {
    fn new(strands: usize, syllables: Vec<Syllable>) -> Self {
        Self {
            word: word_of(strands, &syllables),
            syllables,
        }
    }

    pub fn pretty(&self) -> String {
        let body: String = self.syllables.iter().map(|s| s.to_string()).collect();
        format!("{body} on {} strands", self.word.strands())
    }
}

/// Successive braid words from the standard braid on `p` strands down to
/// the absorbed word on `a_n` strands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteTrace {
    steps: Vec<TraceStep>,
}

impl RewriteTrace {
    pub fn steps(&self) -> &[TraceStep] {
        &self.steps
    }

    pub fn words(&self) -> impl Iterator<Item = &BraidWord> {
        self.steps.iter().map(|s| &s.word)
    }

    pub fn first(&self) -> &BraidWord {
        &self.steps[0].word
    }

    pub fn last(&self) -> &BraidWord {
        &self.steps.last().expect("non-empty").word
    }
}

/// Collapses a trailing `(r_k, 1)` pair into the previous pair by Markov
/// destabilization: `(…, (r_{k-1}, s), (r_k, 1)) → (…, (r_{k-1}, s + 1))`.
/// Returns the input unchanged when the last exponent is not 1 or there is
/// a single pair.
pub fn markov_reduce_chain(spec: &TLinkSpec) -> TLinkSpec {
    let mut pairs = spec.pairs.clone();
    while pairs.len() >= 2 && pairs.last().is_some_and(|&(_, s)| s == 1) {
        pairs.pop();
        pairs.last_mut().expect("len >= 1").1 += 1;
    }
    TLinkSpec { pairs }
}

/// Deletes the literal suffix `(σ1…σ_{m-1})^count` from `w`, the same as
/// appending the inverse syllable and freely reducing.
pub fn remove_trailing_twists(
    w: &BraidWord,
    m: usize,
    count: usize,
) -> Result<BraidWord, TLinkError> {
    let top = m.saturating_sub(1);
    let suffix = Syllable::ascending(top, count).letters();
    let letters = w.letters();
    if m == 0 || suffix.len() > letters.len() || !letters.ends_with(&suffix) {
        return Err(TLinkError::SuffixAbsent { top, count });
    }
    Ok(BraidWord::new(
        w.strands(),
        letters[..letters.len() - suffix.len()].to_vec(),
    )?)
}
