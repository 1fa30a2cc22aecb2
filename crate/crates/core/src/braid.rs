//! Braid words, their strand permutations, and the Markov moves.
//!
//! Conventions used everywhere in the crate: strands and generators are
//! 1-based (`σ_i` swaps positions `i` and `i + 1`), letters act left to
//! right, and a positive letter is a positive crossing.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("letter {letter} is out of range for {strands} strands")]
    LetterOutOfRange { letter: i32, strands: usize },
    #[error("strand counts differ: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },
    #[error("generator σ{generator} occurs {count} times; destabilization needs exactly one")]
    NotDestabilizable { generator: usize, count: usize },
    #[error("negative letter {letter} at index {index} in a word required to be positive")]
    NegativeLetter { letter: i32, index: usize },
    #[error("cannot parse braid word at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

impl BraidError {
    /// Byte offset into the parsed text, for parse errors.
    pub fn offset(&self) -> Option<usize> {
        match self {
            BraidError::Parse { offset, .. } => Some(*offset),
            _ => None,
        }
    }
}

/// A word in the Artin generators on `strands` strands. Letter `e > 0` is
/// `σ_e`, letter `e < 0` is `σ_{-e}^{-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        for &letter in &letters {
            let g = letter.unsigned_abs() as usize;
            if letter == 0 || g >= strands {
                return Err(BraidError::LetterOutOfRange { letter, strands });
            }
        }
        Ok(Self { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        assert!(strands > 0, "a braid needs at least one strand");
        Self {
            strands,
            letters: Vec::new(),
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|&e| e > 0)
    }

    /// Errors on the first negative letter.
    pub fn require_positive(&self) -> Result<(), BraidError> {
        match self.letters.iter().position(|&e| e < 0) {
            Some(index) => Err(BraidError::NegativeLetter {
                letter: self.letters[index],
                index,
            }),
            None => Ok(()),
        }
    }

    /// Appends `letters`, checking each against the strand count.
    pub fn extend_letters(&mut self, letters: &[i32]) -> Result<(), BraidError> {
        for &letter in letters {
            if letter == 0 || letter.unsigned_abs() as usize >= self.strands {
                return Err(BraidError::LetterOutOfRange {
                    letter,
                    strands: self.strands,
                });
            }
        }
        self.letters.extend_from_slice(letters);
        Ok(())
    }

    /// The same letters regarded on `strands` strands (at least as many as
    /// the letters need).
    pub fn with_strands(&self, strands: usize) -> Result<Self, BraidError> {
        Self::new(strands, self.letters.clone())
    }

    pub fn permutation(&self) -> Permutation {
        let mut pos: Vec<usize> = (0..self.strands).collect();
        // pos[s] = current position of the strand that started at s;
        // track the inverse view to apply each swap in O(1).
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &e in &self.letters {
            let i = e.unsigned_abs() as usize - 1;
            let (a, b) = (at[i], at[i + 1]);
            at.swap(i, i + 1);
            pos[a] = i + 1;
            pos[b] = i;
        }
        Permutation { images: pos }
    }

    /// Number of link components of the closure.
    pub fn component_count(&self) -> usize {
        self.permutation().cycle_count()
    }

    pub fn letter_stats(&self) -> LetterStats {
        let positive = self.letters.iter().filter(|&&e| e > 0).count();
        let negative = self.letters.len() - positive;
        LetterStats {
            positive,
            negative,
            exponent_sum: positive as i64 - negative as i64,
        }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch {
                left: self.strands,
                right: other.strands,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|&e| -e).collect(),
        }
    }

    /// `g^-1 · self · g`.
    pub fn conjugate(&self, g: &BraidWord) -> Result<BraidWord, BraidError> {
        g.inverse().concat(self)?.concat(g)
    }

    /// Adds a strand and appends `σ_n`. The closure's link type is unchanged.
    pub fn markov_stabilize(&self) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.push(self.strands as i32);
        BraidWord {
            strands: self.strands + 1,
            letters,
        }
    }

    /// Removes the last strand. The generator `σ_{n-1}^{±1}` must occur
    /// exactly once; the word is cyclically rotated to bring it last, and it
    /// is then deleted.
    pub fn markov_destabilize(&self) -> Result<BraidWord, BraidError> {
        let top = self.strands.saturating_sub(1);
        let hits: Vec<usize> = self
            .letters
            .iter()
            .enumerate()
            .filter(|(_, &e)| e.unsigned_abs() as usize == top)
            .map(|(i, _)| i)
            .collect();
        if top == 0 || hits.len() != 1 {
            return Err(BraidError::NotDestabilizable {
                generator: top,
                count: hits.len(),
            });
        }
        let k = hits[0];
        let letters = self.letters[k + 1..]
            .iter()
            .chain(&self.letters[..k])
            .copied()
            .collect();
        Ok(BraidWord {
            strands: self.strands - 1,
            letters,
        })
    }

    /// Free reduction: cancels adjacent `e, -e` pairs.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &e in &self.letters {
            if out.last() == Some(&-e) {
                out.pop();
            } else {
                out.push(e);
            }
        }
        BraidWord {
            strands: self.strands,
            letters: out,
        }
    }

    /// Compact rendering with σ-notation and run-length powers, e.g.
    /// `(σ2)²(σ1σ2)⁵`.
    pub fn pretty(&self) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        let runs = syllable_runs(&self.letters);
        runs.iter()
            .map(|(block, reps)| {
                let body: String = block
                    .iter()
                    .map(|&e| {
                        if e > 0 {
                            format!("σ{e}")
                        } else {
                            format!("σ{}⁻¹", -e)
                        }
                    })
                    .collect();
                if *reps == 1 && block.len() == 1 {
                    body
                } else if *reps == 1 {
                    format!("({body})")
                } else {
                    format!("({body}){}", superscript(*reps))
                }
            })
            .collect()
    }
}

/// Greedy grouping into blocks of ascending consecutive generators of one
/// sign, then run-length encoding of repeated blocks.
fn syllable_runs(letters: &[i32]) -> Vec<(Vec<i32>, usize)> {
    let mut runs: Vec<(Vec<i32>, usize)> = Vec::new();
    let mut i = 0;
    while i < letters.len() {
        let mut j = i + 1;
        while j < letters.len()
            && letters[j] > 0
            && letters[j - 1] > 0
            && letters[j] == letters[j - 1] + 1
        {
            j += 1;
        }
        let block = letters[i..j].to_vec();
        match runs.last_mut() {
            Some((prev, reps)) if *prev == block => *reps += 1,
            _ => runs.push((block, 1)),
        }
        i = j;
    }
    runs
}

/// Unicode superscript digits, e.g. `12` -> `¹²`.
pub fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .bytes()
        .map(|b| DIGITS[(b - b'0') as usize])
        .collect()
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}:", self.strands)?;
        for (i, e) in self.letters.iter().enumerate() {
            if i == 0 {
                write!(f, " {e}")?;
            } else {
                write!(f, ",{e}")?;
            }
        }
        Ok(())
    }
}

/// Parses `"n=K: e1,e2,..."`. Whitespace around tokens is ignored and the
/// letter list may be empty.
impl FromStr for BraidWord {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |offset: usize, message: &str| BraidError::Parse {
            offset,
            message: message.to_string(),
        };
        let bytes = s.as_bytes();
        let skip_ws = |mut i: usize| {
            while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            i
        };
        let mut i = skip_ws(0);
        if bytes.get(i) != Some(&b'n') {
            return Err(err(i, "expected 'n='"));
        }
        i = skip_ws(i + 1);
        if bytes.get(i) != Some(&b'=') {
            return Err(err(i, "expected '='"));
        }
        i = skip_ws(i + 1);
        let (strands, next) = parse_int(bytes, i).ok_or_else(|| err(i, "expected strand count"))?;
        i = skip_ws(next);
        if bytes.get(i) != Some(&b':') {
            return Err(err(i, "expected ':'"));
        }
        i = skip_ws(i + 1);
        let mut letters = Vec::new();
        let mut offsets = Vec::new();
        if i < bytes.len() {
            loop {
                let (v, next) = parse_int(bytes, i).ok_or_else(|| err(i, "expected a letter"))?;
                offsets.push(i);
                letters.push(v);
                i = skip_ws(next);
                match bytes.get(i) {
                    None => break,
                    Some(b',') => i = skip_ws(i + 1),
                    Some(_) => return Err(err(i, "expected ',' or end of input")),
                }
            }
        }
        if strands <= 0 {
            return Err(err(0, "strand count must be positive"));
        }
        let strands = strands as usize;
        for (&e, &off) in letters.iter().zip(&offsets) {
            if e == 0 || e.unsigned_abs() as usize >= strands {
                return Err(err(
                    off,
                    &format!("letter {e} out of range for {strands} strands"),
                ));
            }
        }
        BraidWord::new(strands, letters)
    }
}

fn parse_int(bytes: &[u8], start: usize) -> Option<(i32, usize)> {
    let mut i = start;
    let neg = match bytes.get(i) {
        Some(b'-') => {
            i += 1;
            true
        }
        Some(b'+') => {
            i += 1;
            false
        }
        _ => false,
    };
    let digits_start = i;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    if i == digits_start {
        return None;
    }
    let v: i32 = std::str::from_utf8(&bytes[digits_start..i])
        .ok()?
        .parse()
        .ok()?;
    Some((if neg { -v } else { v }, i))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LetterStats {
    pub positive: usize,
    pub negative: usize,
    pub exponent_sum: i64,
}

/// A permutation of `{1..n}`; stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// From 1-based images; `None` unless they form a bijection of `1..=n`.
    pub fn from_images(images: &[usize]) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return None;
            }
            seen[x - 1] = true;
        }
        Some(Self {
            images: images.iter().map(|x| x - 1).collect(),
        })
    }

    pub(crate) fn from_zero_based(images: Vec<usize>) -> Self {
        Self { images }
    }

    pub(crate) fn raw(&self) -> &[usize] {
        &self.images
    }

    pub(crate) fn raw_mut(&mut self) -> &mut [usize] {
        &mut self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// 1-based images.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    /// 1-based image of 1-based `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Self { images: inv }
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "Permutation::then: size mismatch");
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.images.len()];
        let mut cycles = 0;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
            }
        }
        cycles
    }

    /// Cycle lengths in descending order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.images.len()];
        let mut lens = Vec::new();
        for start in 0..self.images.len() {
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            if len > 0 {
                lens.push(len);
            }
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", x + 1)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn w(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    fn torus_word(p: usize, q: usize) -> BraidWord {
        // (σ1 … σ_{p-1})^q on p strands
        let syl: Vec<i32> = (1..p as i32).collect();
        w(p, &syl.repeat(q))
    }

    #[test]
    fn construction_bounds() {
        assert_eq!(BraidWord::new(0, vec![]), Err(BraidError::NoStrands));
        assert!(matches!(
            BraidWord::new(3, vec![3]),
            Err(BraidError::LetterOutOfRange { letter: 3, .. })
        ));
        assert!(BraidWord::new(3, vec![0]).is_err());
        assert!(BraidWord::new(3, vec![-2, 1]).is_ok());
        assert!(BraidWord::new(1, vec![]).is_ok());
    }

    #[test]
    fn permutation_examples() {
        assert_eq!(w(3, &[1, 2]).permutation().images(), vec![3, 1, 2]);
        assert!(w(2, &[1, 1]).permutation().is_identity());
        let p = torus_word(5, 2).permutation();
        // (1 2 3 4 5)-type cycle squared is again a 5-cycle
        assert_eq!(p.cycle_type(), vec![5]);
        assert_eq!(p.images(), vec![4, 5, 1, 2, 3]);
    }

    #[test]
    fn component_examples() {
        assert_eq!(torus_word(4, 2).component_count(), 2);
        assert_eq!(BraidWord::identity(4).component_count(), 4);
        assert_eq!(torus_word(5, 2).component_count(), 1);
    }

    #[test]
    fn torus_components_are_gcd() {
        for p in 3..=12 {
            for q in 2..p {
                assert_eq!(torus_word(p, q).component_count(), p.gcd(&q), "T({p},{q})");
            }
        }
    }

    #[test]
    fn letter_stats_examples() {
        let s = w(2, &[1, 1, 1]).letter_stats();
        assert_eq!((s.positive, s.negative, s.exponent_sum), (3, 0, 3));
        let s = BraidWord::identity(3).letter_stats();
        assert_eq!((s.positive, s.negative, s.exponent_sum), (0, 0, 0));
        let s = w(3, &[1, -2, 2, -1]).letter_stats();
        assert_eq!((s.positive, s.negative, s.exponent_sum), (2, 2, 0));
    }

    #[test]
    fn concat_and_inverse() {
        assert_eq!(w(3, &[1]).concat(&w(3, &[2])).unwrap(), w(3, &[1, 2]));
        assert_eq!(
            BraidWord::identity(2).concat(&w(2, &[1])).unwrap(),
            w(2, &[1])
        );
        let c = w(3, &[1, 2]).concat(&w(3, &[-2, -1])).unwrap();
        assert_eq!(c.letters(), &[1, 2, -2, -1]);
        assert!(c.free_reduce().is_empty());
        assert_eq!(
            w(3, &[1]).concat(&w(2, &[1])),
            Err(BraidError::StrandMismatch { left: 3, right: 2 })
        );
        assert_eq!(w(3, &[1, 2]).inverse(), w(3, &[-2, -1]));
        assert!(BraidWord::identity(3).inverse().is_empty());
        assert_eq!(w(3, &[1, -2]).inverse(), w(3, &[2, -1]));
    }

    #[test]
    fn conjugate_examples() {
        let c = w(3, &[1, 1, 1]).conjugate(&w(3, &[2])).unwrap();
        assert_eq!(c.letters(), &[-2, 1, 1, 1, 2]);
        let id = w(3, &[1, 1, 1]).conjugate(&BraidWord::identity(3)).unwrap();
        assert_eq!(id, w(3, &[1, 1, 1]));
        assert_eq!(c.component_count(), w(3, &[1, 1, 1]).component_count());
    }

    #[test]
    fn markov_moves() {
        assert_eq!(BraidWord::identity(1).markov_stabilize(), w(2, &[1]));
        assert_eq!(w(2, &[1, 1, 1]).markov_stabilize(), w(3, &[1, 1, 1, 2]));
        assert_eq!(
            w(3, &[1, 1, 1, 2]).markov_destabilize().unwrap(),
            w(2, &[1, 1, 1])
        );
        assert_eq!(
            w(3, &[2, 1, 1, 1]).markov_destabilize().unwrap(),
            w(2, &[1, 1, 1])
        );
        assert_eq!(
            w(3, &[1, 2, 1, 2]).markov_destabilize(),
            Err(BraidError::NotDestabilizable {
                generator: 2,
                count: 2
            })
        );
        assert!(w(3, &[1, 1]).markov_destabilize().is_err());
        assert!(BraidWord::identity(1).markov_destabilize().is_err());
        // a negative stabilizing letter is also removable
        assert_eq!(
            w(3, &[1, -2, 1]).markov_destabilize().unwrap(),
            w(2, &[1, 1])
        );
    }

    #[test]
    fn text_format() {
        let b: BraidWord = "n=3: 1,2,-1".parse().unwrap();
        assert_eq!(b, w(3, &[1, 2, -1]));
        assert_eq!(b.to_string(), "n=3: 1,2,-1");
        let e: BraidWord = "n=2:".parse().unwrap();
        assert!(e.is_empty());
        assert_eq!(e.to_string(), "n=2:");
        assert_eq!(
            " n = 4 : 3 , -2 ".parse::<BraidWord>().unwrap(),
            w(4, &[3, -2])
        );
        match "n=3: 1,3".parse::<BraidWord>() {
            Err(BraidError::Parse { offset, .. }) => assert_eq!(offset, 7),
            other => panic!("unexpected {other:?}"),
        }
        match "n=3: 1;2".parse::<BraidWord>() {
            Err(BraidError::Parse { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("unexpected {other:?}"),
        }
        assert!("m=3: 1".parse::<BraidWord>().is_err());
        assert!("n=0:".parse::<BraidWord>().is_err());
    }

    #[test]
    fn pretty_rendering() {
        assert_eq!(
            w(3, &[2, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2]).pretty(),
            "(σ2)²(σ1σ2)⁵"
        );
        assert_eq!(w(2, &[1, 1, 1]).pretty(), "(σ1)³");
        assert_eq!(w(4, &[3, 2, -1]).pretty(), "σ3σ2σ1⁻¹");
        assert_eq!(w(4, &[1, 2, 3]).pretty(), "(σ1σ2σ3)");
        assert_eq!(BraidWord::identity(2).pretty(), "1");
    }

    fn arb_word(n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
        let gen = (1..n as i32).prop_flat_map(|g| prop_oneof![Just(g), Just(-g)]);
        prop::collection::vec(gen, 0..=max_len).prop_map(move |l| BraidWord::new(n, l).unwrap())
    }

    proptest! {
        #[test]
        fn conjugation_preserves_components_and_exponent(
            (a, g) in (2usize..6).prop_flat_map(|n| (arb_word(n, 10), arb_word(n, 6)))
        ) {
            let c = a.conjugate(&g).unwrap();
            prop_assert_eq!(c.component_count(), a.component_count());
            prop_assert_eq!(c.letter_stats().exponent_sum, a.letter_stats().exponent_sum);
        }

        #[test]
        fn destabilize_undoes_stabilize(a in (1usize..6).prop_flat_map(|n| arb_word(n.max(2), 10))) {
            prop_assert_eq!(a.markov_stabilize().markov_destabilize().unwrap(), a);
        }

        #[test]
        fn permutation_is_a_homomorphism(
            (a, b) in (2usize..7).prop_flat_map(|n| (arb_word(n, 8), arb_word(n, 8)))
        ) {
            let ab = a.concat(&b).unwrap();
            prop_assert_eq!(ab.permutation(), a.permutation().then(&b.permutation()));
        }

        #[test]
        fn text_round_trip(a in (1usize..7).prop_flat_map(|n| arb_word(n.max(2), 12))) {
            prop_assert_eq!(a.to_string().parse::<BraidWord>().unwrap(), a);
        }
    }
}
