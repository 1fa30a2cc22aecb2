//! Left-weighted Garside normal form for positive braids.
//!
//! A positive braid factors uniquely as `Δ^k · A_1 ⋯ A_m` where each `A_i`
//! is a permutation braid other than the identity and `Δ`, and every
//! adjacent pair is left-weighted. This decides the word problem for
//! positive words and exposes the infimum `k`, which is at least 2 exactly
//! when the braid contains a full twist `Δ²`.

use std::fmt;

use crate::braid::{BraidError, BraidWord, Permutation};

/// A positive braid in which every pair of strands crosses at most once,
/// identified with its permutation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermutationBraid(Permutation);

impl PermutationBraid {
    pub fn identity(n: usize) -> Self {
        Self(Permutation::identity(n))
    }

    /// The half twist, reversing all strands.
    pub fn delta(n: usize) -> Self {
        Self(Permutation::from_zero_based((0..n).rev().collect()))
    }

    /// The single crossing `σ_i` (1-based).
    pub fn generator(n: usize, i: usize) -> Self {
        let mut p = Permutation::identity(n);
        p.raw_mut().swap(i - 1, i);
        Self(p)
    }

    pub fn from_permutation(p: Permutation) -> Self {
        Self(p)
    }

    pub fn permutation(&self) -> &Permutation {
        &self.0
    }

    pub fn strands(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    pub fn is_delta(&self) -> bool {
        let n = self.0.len();
        self.0
            .raw()
            .iter()
            .enumerate()
            .all(|(i, &x)| x == n - 1 - i)
    }

    /// Number of crossings (inversions of the permutation).
    pub fn length(&self) -> usize {
        let p = self.0.raw();
        (0..p.len())
            .map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count())
            .sum()
    }

    /// 0-based indices `i` such that `σ_{i+1}` left-divides this braid.
    pub fn starting_set(&self) -> Vec<usize> {
        let p = self.0.raw();
        (0..p.len().saturating_sub(1))
            .filter(|&i| p[i] > p[i + 1])
            .collect()
    }

    /// 0-based indices `i` such that `σ_{i+1}` right-divides this braid.
    pub fn finishing_set(&self) -> Vec<usize> {
        let inv = self.0.inverse();
        let q = inv.raw();
        (0..q.len().saturating_sub(1))
            .filter(|&i| q[i] > q[i + 1])
            .collect()
    }

    /// A reduced positive word for this permutation braid.
    pub fn to_word(&self) -> BraidWord {
        let target = self.0.raw();
        let n = target.len();
        let mut at: Vec<usize> = (0..n).collect();
        let mut letters = Vec::new();
        loop {
            let swap = (0..n.saturating_sub(1)).find(|&i| target[at[i]] > target[at[i + 1]]);
            match swap {
                Some(i) => {
                    at.swap(i, i + 1);
                    letters.push(i as i32 + 1);
                }
                None => break,
            }
        }
        BraidWord::new(n.max(1), letters).expect("letters are in range")
    }
}

impl fmt::Display for PermutationBraid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs: Vec<String> = self.0.images().iter().map(|x| x.to_string()).collect();
        write!(f, "({})", imgs.join(" "))
    }
}

/// Makes `(a, b)` left-weighted by moving crossings from the front of `b`
/// to the end of `a`. Returns whether anything moved.
fn left_weight_pair(a: &mut Permutation, b: &mut Permutation) -> bool {
    let n = a.len();
    let mut changed = false;
    loop {
        let inv_a = a.inverse();
        let ia = inv_a.raw();
        let bb = b.raw();
        let pick = (0..n - 1).find(|&i| bb[i] > bb[i + 1] && ia[i] < ia[i + 1]);
        let Some(i) = pick else { break };
        // a ← a·σ_i: the strands ending at i and i+1 swap end positions
        let (x, y) = (ia[i], ia[i + 1]);
        let ar = a.raw_mut();
        ar[x] = i + 1;
        ar[y] = i;
        // b ← σ_i⁻¹·b
        b.raw_mut().swap(i, i + 1);
        changed = true;
    }
    changed
}

fn is_left_weighted(a: &PermutationBraid, b: &PermutationBraid) -> bool {
    let fin = a.finishing_set();
    b.starting_set().iter().all(|i| fin.contains(i))
}

/// `Δ^infimum · factors[0] ⋯ factors[m-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    strands: usize,
    infimum: usize,
    factors: Vec<PermutationBraid>,
}

impl NormalForm {
    pub fn strands(&self) -> usize {
        self.strands
    }

    /// Power of the half twist `Δ`.
    pub fn infimum(&self) -> usize {
        self.infimum
    }

    pub fn factors(&self) -> &[PermutationBraid] {
        &self.factors
    }

    /// Infimum plus the number of non-Δ factors.
    pub fn supremum(&self) -> usize {
        self.infimum + self.factors.len()
    }

    /// Whether every adjacent pair of non-Δ factors is left-weighted and no
    /// factor is trivial or `Δ`.
    pub fn is_left_weighted(&self) -> bool {
        self.factors
            .iter()
            .all(|f| !f.is_identity() && !f.is_delta())
            && self
                .factors
                .windows(2)
                .all(|w| is_left_weighted(&w[0], &w[1]))
    }

    /// Expands back to a positive word.
    pub fn to_word(&self) -> BraidWord {
        let mut letters = Vec::new();
        if self.strands >= 2 {
            let delta = delta_word(self.strands).expect("n >= 2");
            for _ in 0..self.infimum {
                letters.extend_from_slice(delta.letters());
            }
        }
        for f in &self.factors {
            letters.extend_from_slice(f.to_word().letters());
        }
        BraidWord::new(self.strands, letters).expect("letters are in range")
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Δ^{}", self.infimum)?;
        if !self.factors.is_empty() {
            write!(f, " · ")?;
            for fac in &self.factors {
                write!(f, "{fac}")?;
            }
        }
        Ok(())
    }
}

/// The positive half twist `(σ1)(σ2σ1)⋯(σ_{n-1}⋯σ1)`.
pub fn delta_word(n: usize) -> Result<BraidWord, BraidError> {
    if n < 2 {
        return Err(BraidError::NoStrands);
    }
    let mut letters = Vec::with_capacity(n * (n - 1) / 2);
    for top in 1..n as i32 {
        letters.extend((1..=top).rev());
    }
    BraidWord::new(n, letters)
}

pub fn normal_form(w: &BraidWord) -> Result<NormalForm, BraidError> {
    w.require_positive()?;
    let n = w.strands();
    if n == 1 {
        return Ok(NormalForm {
            strands: 1,
            infimum: 0,
            factors: Vec::new(),
        });
    }
    let mut factors: Vec<Permutation> = Vec::with_capacity(w.len());
    for &e in w.letters() {
        factors.push(PermutationBraid::generator(n, e as usize).0);
        let mut k = factors.len() - 1;
        while k >= 1 {
            let (left, right) = factors.split_at_mut(k);
            if !left_weight_pair(&mut left[k - 1], &mut right[0]) {
                break;
            }
            k -= 1;
        }
        while factors.last().is_some_and(|f| f.is_identity()) {
            factors.pop();
        }
    }
    let factors: Vec<PermutationBraid> = factors.into_iter().map(PermutationBraid).collect();
    let infimum = factors.iter().take_while(|f| f.is_delta()).count();
    Ok(NormalForm {
        strands: n,
        infimum,
        factors: factors[infimum..].to_vec(),
    })
}

pub fn infimum(w: &BraidWord) -> Result<usize, BraidError> {
    Ok(normal_form(w)?.infimum())
}

/// Whether the positive braid has `Δ²` as a left divisor. On one strand
/// the full twist is trivial and always present.
pub fn contains_full_twist(w: &BraidWord) -> Result<bool, BraidError> {
    if w.strands() == 1 {
        w.require_positive()?;
        return Ok(true);
    }
    Ok(infimum(w)? >= 2)
}

/// Franks–Williams: a positive braid on `n` strands containing a full twist
/// has braid index exactly `n`. `None` when no full twist is present.
pub fn braid_index_by_full_twist(w: &BraidWord) -> Result<Option<usize>, BraidError> {
    Ok(contains_full_twist(w)?.then_some(w.strands()))
}
