//! Exact invariants of braid closures.
//!
//! * Alexander polynomial from the reduced Burau representation:
//!   `det(I - ρ(β)) = (1 + t + … + t^{n-1}) · Δ(t)` up to units.
//! * Jones polynomial from the Kauffman bracket state sum, organised as a
//!   transfer over planar connectivity states so that equal partial
//!   smoothings are summed once.
//! * Euler characteristic of the Bennequin surface of a positive braid,
//!   `strands - crossings`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::braid::{BraidError, BraidWord};
use crate::garside;
use crate::laurent::{LaurentPoly, PolyMatrix};

/// Crossing ceiling for the Kauffman bracket unless configured otherwise.
pub const DEFAULT_JONES_GUARD: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error("torus parameters need 1 <= q <= p, got ({p}, {q})")]
    BadTorusParams { p: u32, q: u32 },
}

/// The reduced Burau matrix of `w`, of size `(n-1) × (n-1)`.
///
/// `σ_i` acts by the identity except in row `i`, which reads
/// `t, -t, 1` in columns `i-1, i, i+1` (entries outside the matrix
/// dropped); `σ_i⁻¹` has row `1, -t⁻¹, t⁻¹` there instead.
pub fn reduced_burau(w: &BraidWord) -> PolyMatrix {
    let size = w.strands() - 1;
    let mut m = PolyMatrix::identity(size);
    let t = LaurentPoly::t();
    let t_inv = LaurentPoly::monomial(1, -1);
    let one = LaurentPoly::one();
    for &e in w.letters() {
        let i = e.unsigned_abs() as usize - 1;
        // right-multiply by the generator: only columns i-1, i, i+1 change
        let (left, diag, right) = if e > 0 {
            (&t, -&t, &one)
        } else {
            (&one, -&t_inv, &t_inv)
        };
        for r in 0..size {
            let pivot = m.get(r, i).clone();
            if pivot.is_zero() {
                continue;
            }
            if i >= 1 {
                let add = &pivot * left;
                *m.get_mut(r, i - 1) += &add;
            }
            if i + 1 < size {
                let add = &pivot * right;
                *m.get_mut(r, i + 1) += &add;
            }
            m.set(r, i, &pivot * &diag);
        }
    }
    m
}

/// Unit-normalized Alexander polynomial of the closure. Split links give 0.
pub fn alexander(w: &BraidWord) -> LaurentPoly {
    let n = w.strands();
    if n == 1 {
        return LaurentPoly::one();
    }
    let burau = reduced_burau(w);
    let det = PolyMatrix::identity(n - 1).sub(&burau).determinant();
    let cyclotomic = LaurentPoly::from_coeffs(&vec![1; n]);
    let quotient = det
        .div_exact(&cyclotomic)
        .expect("det(I - Burau) is divisible by 1 + t + ... + t^(n-1)");
    quotient.normalize_unit().unwrap_or_default()
}

/// A Jones polynomial, stored with exponents counted in powers of `t^{1/2}`
/// (links with an even number of components have half-integer exponents).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JonesPolynomial(LaurentPoly);

impl JonesPolynomial {
    /// `Σ c_k t^{k/2}` from `(k, c_k)` pairs.
    pub fn from_half_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        Self(LaurentPoly::from_terms(terms))
    }

    /// The underlying polynomial in `t^{1/2}`.
    pub fn in_half_powers(&self) -> &LaurentPoly {
        &self.0
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.0.eval_at_one()
    }
}

impl fmt::Display for JonesPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.render("t", 2))
    }
}

impl Serialize for JonesPolynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Kauffman bracket of the closure as a polynomial in `A`, normalized so a
/// single circle has bracket 1.
pub fn kauffman_bracket(w: &BraidWord) -> LaurentPoly {
    let n = w.strands();
    // points 0..n are the top of the braid, n..2n the current cut
    let start: Vec<u8> = (0..2 * n).map(|x| ((x + n) % (2 * n)) as u8).collect();
    let loop_value = LaurentPoly::from_terms([(2, -1), (-2, -1)]);

    let mut states: HashMap<Vec<u8>, LaurentPoly> = HashMap::new();
    states.insert(start, LaurentPoly::one());
    for &e in w.letters() {
        let i = n + e.unsigned_abs() as usize - 1;
        let (vertical_exp, cup_exp) = if e > 0 { (1, -1) } else { (-1, 1) };
        let mut next: HashMap<Vec<u8>, LaurentPoly> = HashMap::with_capacity(states.len() * 2);
        for (matching, poly) in states {
            let mut cup = matching.clone();
            let (x, y) = (cup[i] as usize, cup[i + 1] as usize);
            let mut cup_poly = poly.shift(cup_exp);
            if x == i + 1 {
                cup_poly = &cup_poly * &loop_value;
            } else {
                cup[x] = y as u8;
                cup[y] = x as u8;
                cup[i] = (i + 1) as u8;
                cup[i + 1] = i as u8;
            }
            *next.entry(cup).or_default() += &cup_poly;
            *next.entry(matching).or_default() += &poly.shift(vertical_exp);
        }
        next.retain(|_, p| !p.is_zero());
        states = next;
    }

    let mut powers = vec![LaurentPoly::one()];
    let mut bracket = LaurentPoly::zero();
    for (matching, poly) in states {
        let loops = closure_loops(&matching, n);
        while powers.len() < loops {
            let last = powers.last().expect("non-empty");
            powers.push(last * &loop_value);
        }
        bracket += &(&poly * &powers[loops - 1]);
    }
    bracket
}

/// Circles formed by a connectivity state once each top point `j` is joined
/// to cut point `n + j`.
fn closure_loops(matching: &[u8], n: usize) -> usize {
    let mut seen = vec![false; 2 * n];
    let mut loops = 0;
    for start in 0..2 * n {
        if seen[start] {
            continue;
        }
        loops += 1;
        let mut x = start;
        loop {
            seen[x] = true;
            let y = matching[x] as usize;
            seen[y] = true;
            x = (y + n) % (2 * n);
            if seen[x] {
                break;
            }
        }
    }
    loops
}

/// Jones polynomial of the closure when `w` has at most `guard` letters.
pub fn jones(w: &BraidWord, guard: usize) -> Option<JonesPolynomial> {
    if w.len() > guard {
        return None;
    }
    let bracket = kauffman_bracket(w);
    let writhe = w.letter_stats().exponent_sum;
    // (-A^3)^(-writhe)
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    let f = bracket.shift(-3 * writhe).scale(sign);
    // t^{1/2} = A^{-2}
    let terms = f.terms().map(|(e, c)| {
        debug_assert!(e % 2 == 0, "normalized bracket has even A-exponents");
        (-e / 2, c.clone())
    });
    Some(JonesPolynomial(LaurentPoly::from_terms(terms)))
}

/// `strands - crossings` for a positive word.
pub fn euler_char(w: &BraidWord) -> Result<i64, BraidError> {
    w.require_positive()?;
    Ok(w.strands() as i64 - w.len() as i64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InvariantBundle {
    #[serde(skip)]
    pub strands: usize,
    pub components: usize,
    pub letters: usize,
    /// Present for positive words only.
    pub euler_char: Option<i64>,
    /// Present when the word is positive and contains a full twist.
    pub braid_index: Option<usize>,
    pub alexander: LaurentPoly,
    /// Absent when the word has more letters than the crossing guard.
    pub jones: Option<JonesPolynomial>,
}

pub fn bundle(w: &BraidWord, guard: usize) -> InvariantBundle {
    let positive = w.is_positive();
    InvariantBundle {
        strands: w.strands(),
        components: w.component_count(),
        letters: w.len(),
        euler_char: positive.then(|| w.strands() as i64 - w.len() as i64),
        braid_index: if positive {
            garside::braid_index_by_full_twist(w).expect("word is positive")
        } else {
            None
        },
        alexander: alexander(w),
        jones: jones(w, guard),
    }
}

/// `(σ1…σ_{q-1})^p` on `q` strands, the minimal-strand braid of `T(p, q)`.
pub fn torus_braid(p: u32, q: u32) -> Result<BraidWord, InvariantError> {
    if q == 0 || q > p {
        return Err(InvariantError::BadTorusParams { p, q });
    }
    let syllable: Vec<i32> = (1..q as i32).collect();
    Ok(BraidWord::new(q as usize, syllable.repeat(p as usize))?)
}

/// Invariants of `T(p, q)`, computed by running the engines on its
/// `q`-strand braid.
pub fn torus_reference(p: u32, q: u32, guard: usize) -> Result<InvariantBundle, InvariantError> {
    Ok(bundle(&torus_braid(p, q)?, guard))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use num_traits::Pow;
    use proptest::prelude::*;

    fn w(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    fn poly(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(c)
    }

    /// Alexander polynomial of T(p, q) from the closed form
    /// `(t^{pq/d} - 1)^d (t - 1) / ((t^p - 1)(t^q - 1))`, d = gcd(p, q).
    fn torus_alexander_closed_form(p: u32, q: u32) -> LaurentPoly {
        let d = p.gcd(&q);
        let tm1 = |k: u32| LaurentPoly::monomial(1, k as i64) - LaurentPoly::one();
        let num = &tm1(p * q / d).pow(d) * &tm1(1);
        let den = &tm1(p) * &tm1(q);
        num.div_exact(&den).unwrap().normalize_unit().unwrap()
    }

    /// Plain 2^m Kauffman state sum with union-find loop counting.
    fn brute_force_bracket(w: &BraidWord) -> LaurentPoly {
        let n = w.strands();
        let m = w.len();
        // node (level, strand) for level in 0..=m; level m glued to level 0
        let id = |level: usize, j: usize| (level % m.max(1)) * n + j;
        let nodes = n * m.max(1);
        let d = LaurentPoly::from_terms([(2, -1), (-2, -1)]);
        let mut total = LaurentPoly::zero();
        for state in 0u64..(1u64 << m) {
            let mut parent: Vec<usize> = (0..nodes).collect();
            fn find(p: &mut [usize], x: usize) -> usize {
                let mut r = x;
                while p[r] != r {
                    r = p[r];
                }
                let mut y = x;
                while p[y] != r {
                    let nx = p[y];
                    p[y] = r;
                    y = nx;
                }
                r
            }
            let union = |p: &mut Vec<usize>, a: usize, b: usize| {
                let (ra, rb) = (find(p, a), find(p, b));
                p[ra] = rb;
            };
            let mut a_exp = 0i64;
            for (k, &e) in w.letters().iter().enumerate() {
                let i = e.unsigned_abs() as usize - 1;
                let vertical = state >> k & 1 == 0;
                for j in 0..n {
                    if j != i && j != i + 1 {
                        union(&mut parent, id(k, j), id(k + 1, j));
                    }
                }
                if vertical {
                    union(&mut parent, id(k, i), id(k + 1, i));
                    union(&mut parent, id(k, i + 1), id(k + 1, i + 1));
                    a_exp += if e > 0 { 1 } else { -1 };
                } else {
                    union(&mut parent, id(k, i), id(k, i + 1));
                    union(&mut parent, id(k + 1, i), id(k + 1, i + 1));
                    a_exp += if e > 0 { -1 } else { 1 };
                }
            }
            let loops = (0..nodes).filter(|&x| find(&mut parent, x) == x).count();
            total += &(&LaurentPoly::monomial(1, a_exp) * &d.pow(loops as u32 - 1));
        }
        total
    }

    #[test]
    fn burau_examples() {
        assert_eq!(
            reduced_burau(&BraidWord::identity(4)),
            PolyMatrix::identity(3)
        );
        assert_eq!(
            reduced_burau(&w(2, &[1])),
            PolyMatrix::diagonal(vec![LaurentPoly::monomial(-1, 1)])
        );
        assert_eq!(
            reduced_burau(&w(2, &[1, 1, 1])),
            PolyMatrix::diagonal(vec![LaurentPoly::monomial(-1, 3)])
        );
    }

    #[test]
    fn burau_inverse_letters_cancel() {
        for n in 2..6 {
            for i in 1..n as i32 {
                let m = reduced_burau(&w(n, &[i, -i]));
                assert_eq!(m, PolyMatrix::identity(n - 1), "n={n} i={i}");
                let m = reduced_burau(&w(n, &[-i, i]));
                assert_eq!(m, PolyMatrix::identity(n - 1), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn burau_braid_relation() {
        let a = reduced_burau(&w(4, &[1, 2, 1]));
        let b = reduced_burau(&w(4, &[2, 1, 2]));
        assert_eq!(a, b);
        assert_eq!(reduced_burau(&w(4, &[1, 3])), reduced_burau(&w(4, &[3, 1])));
    }

    #[test]
    fn alexander_examples() {
        assert_eq!(alexander(&w(2, &[1, 1, 1])), poly(&[1, -1, 1]));
        assert!(alexander(&w(2, &[1])).is_one());
        assert_eq!(alexander(&w(2, &[1; 5])), poly(&[1, -1, 1, -1, 1]));
        assert!(alexander(&BraidWord::identity(1)).is_one());
        assert!(alexander(&BraidWord::identity(2)).is_zero());
        // figure-eight knot σ1σ2⁻¹σ1σ2⁻¹: 1 - 3t + t^2
        assert_eq!(alexander(&w(3, &[1, -2, 1, -2])), poly(&[1, -3, 1]));
    }

    #[test]
    fn alexander_matches_torus_closed_form() {
        for p in 2..=7u32 {
            for q in 2..=p {
                let got = alexander(&torus_braid(p, q).unwrap());
                assert_eq!(got, torus_alexander_closed_form(p, q), "T({p},{q})");
            }
        }
    }

    #[test]
    fn jones_examples() {
        assert!(jones(&w(2, &[1]), 24).unwrap().in_half_powers().is_one());
        assert!(jones(&BraidWord::identity(1), 24)
            .unwrap()
            .in_half_powers()
            .is_one());
        // right trefoil t + t^3 - t^4, hand-expanded from the 8 states
        let trefoil = jones(&w(2, &[1, 1, 1]), 24).unwrap();
        assert_eq!(
            trefoil,
            JonesPolynomial::from_half_terms([(2, 1), (6, 1), (8, -1)])
        );
        assert_eq!(trefoil.to_string(), "t + t^3 - t^4");
        // positive Hopf link -t^{1/2} - t^{5/2}
        let hopf = jones(&w(2, &[1, 1]), 24).unwrap();
        assert_eq!(hopf, JonesPolynomial::from_half_terms([(1, -1), (5, -1)]));
        // two-component unlink: -t^{1/2} - t^{-1/2}
        let unlink = jones(&BraidWord::identity(2), 24).unwrap();
        assert_eq!(
            unlink,
            JonesPolynomial::from_half_terms([(1, -1), (-1, -1)])
        );
        // figure-eight: t^-2 - t^-1 + 1 - t + t^2
        let fig8 = jones(&w(3, &[1, -2, 1, -2]), 24).unwrap();
        assert_eq!(
            fig8,
            JonesPolynomial::from_half_terms([(-4, 1), (-2, -1), (0, 1), (2, -1), (4, 1)])
        );
    }

    #[test]
    fn jones_guard() {
        let long = w(2, &[1; 25]);
        assert!(jones(&long, 24).is_none());
        assert!(jones(&long, 25).is_some());
        assert!(jones(&w(2, &[1; 24]), 24).is_some());
    }

    #[test]
    fn euler_characteristic() {
        for p in 2..=9u32 {
            for q in 2..=p {
                let chi = euler_char(&torus_braid(p, q).unwrap()).unwrap();
                assert_eq!(chi, (p + q) as i64 - (p * q) as i64);
            }
        }
        assert_eq!(euler_char(&w(2, &[1, 1, 1])).unwrap(), -1);
        assert_eq!(euler_char(&BraidWord::identity(1)).unwrap(), 1);
        assert!(euler_char(&w(3, &[1, -2])).is_err());
    }

    #[test]
    fn bundles() {
        let b = bundle(&w(2, &[1, 1, 1]), DEFAULT_JONES_GUARD);
        assert_eq!(b.components, 1);
        assert_eq!(b.euler_char, Some(-1));
        assert_eq!(b.braid_index, Some(2));
        assert_eq!(b.alexander, poly(&[1, -1, 1]));
        assert_eq!(bundle(&torus_braid(4, 2).unwrap(), 24).components, 2);
        let id = bundle(&BraidWord::identity(2), 24);
        assert_eq!(id.components, 2);
        assert!(id.jones.is_some());
        let neg = bundle(&w(3, &[1, -2]), 24);
        assert_eq!(neg.euler_char, None);
        assert_eq!(neg.braid_index, None);
    }

    #[test]
    fn torus_references() {
        let b = torus_reference(3, 2, 24).unwrap();
        assert_eq!(b.alexander, poly(&[1, -1, 1]));
        assert_eq!(b.braid_index, Some(2));
        for p in 1..5 {
            let u = torus_reference(p, 1, 24).unwrap();
            assert_eq!(u.components, 1);
            assert!(u.alexander.is_one());
            assert!(u.jones.unwrap().in_half_powers().is_one());
            assert_eq!(u.braid_index, Some(1));
        }
        assert_eq!(torus_reference(4, 2, 24).unwrap().components, 2);
        assert!(torus_reference(2, 3, 24).is_err());
        assert!(torus_reference(2, 0, 24).is_err());
    }

    #[test]
    fn bracket_matches_brute_force_enumeration() {
        let words = [
            w(2, &[1, 1, 1]),
            w(3, &[1, -2, 1, -2]),
            w(3, &[1, 2, 1, 2, 1, 2, 1, 2]),
            w(4, &[1, 2, 3, -1, 2, -3, 2, 1, 1, 3]),
            w(5, &[1, 2, 3, 4, 1, 2, 3, 4, 4, -3]),
            BraidWord::identity(3),
        ];
        for word in &words {
            assert_eq!(kauffman_bracket(word), brute_force_bracket(word), "{word}");
        }
    }

    fn arb_word(n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
        let gen = (1..n as i32).prop_flat_map(|g| prop_oneof![Just(g), Just(-g)]);
        prop::collection::vec(gen, 0..=max_len).prop_map(move |l| BraidWord::new(n, l).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn bracket_agrees_with_state_enumeration(a in (2usize..6).prop_flat_map(|n| arb_word(n, 12))) {
            prop_assert_eq!(kauffman_bracket(&a), brute_force_bracket(&a));
        }

        #[test]
        fn invariant_under_conjugation(
            (a, g) in (2usize..6).prop_flat_map(|n| (arb_word(n, 8), arb_word(n, 4)))
        ) {
            let c = a.conjugate(&g).unwrap();
            prop_assert_eq!(alexander(&c), alexander(&a));
            prop_assert_eq!(jones(&c, 24), jones(&a, 24));
        }

        #[test]
        fn invariant_under_stabilization(a in (1usize..6).prop_flat_map(|n| arb_word(n.max(2), 12))) {
            let s = a.markov_stabilize();
            prop_assert_eq!(alexander(&s), alexander(&a));
            prop_assert_eq!(jones(&s, 24), jones(&a, 24));
            let mut neg = a.letters().to_vec();
            neg.push(-(a.strands() as i32));
            let s_neg = BraidWord::new(a.strands() + 1, neg).unwrap();
            prop_assert_eq!(alexander(&s_neg), alexander(&a));
            prop_assert_eq!(jones(&s_neg, 24), jones(&a, 24));
        }

        #[test]
        fn jones_at_one_counts_components(a in (2usize..6).prop_flat_map(|n| arb_word(n, 12))) {
            let v = jones(&a, 24).unwrap();
            let c = a.component_count() as u32;
            prop_assert_eq!(v.eval_at_one(), BigInt::from(-2).pow(c - 1));
        }

        #[test]
        fn knot_alexander_is_one_at_one(a in (2usize..6).prop_flat_map(|n| arb_word(n, 14))) {
            prop_assume!(a.component_count() == 1);
            let v = alexander(&a).eval_at_one();
            prop_assert!(v == BigInt::from(1) || v == BigInt::from(-1));
        }
    }
}
