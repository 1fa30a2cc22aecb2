//! Exact one-variable Laurent polynomials over the integers, and
//! determinants of square matrices with Laurent polynomial entries.
//!
//! Coefficients are arbitrary precision. A polynomial is stored as a sparse
//! map from exponent to nonzero coefficient, so the zero polynomial is the
//! empty map and structural equality is polynomial equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("the zero polynomial has no unit normalization")]
    ZeroPolynomial,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division is not exact over the integers")]
    InexactDivision,
}

/// A Laurent polynomial in one variable `t` with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^exp`.
    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        Self { coeffs }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// `c_0 + c_1 t + c_2 t^2 + ...` from a dense ascending coefficient list.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(e, &c)| (e as i64, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Width of the support, `max_exp - min_exp`; `None` for zero.
    pub fn span(&self) -> Option<i64> {
        Some(self.max_exp()? - self.min_exp()?)
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn add_scaled(&mut self, other: &LaurentPoly, factor: &BigInt, shift: i64) {
        for (&e, c) in &other.coeffs {
            self.add_term(e + shift, c * factor);
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, factor: impl Into<BigInt>) -> Self {
        let f = factor.into();
        if f.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, c * &f)).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `t -> t^-1`.
    pub fn invert_variable(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Value at `t = 1`, the sum of the coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Multiplies by the unit `±t^k` that moves the lowest exponent to zero
    /// and makes the lowest-degree coefficient positive.
    pub fn normalize_unit(&self) -> Result<Self, LaurentError> {
        let lo = self.min_exp().ok_or(LaurentError::ZeroPolynomial)?;
        let shifted = self.shift(-lo);
        if shifted.coeffs[&0].is_negative() {
            Ok(-shifted)
        } else {
            Ok(shifted)
        }
    }

    /// Equality up to multiplication by `±t^k`.
    pub fn eq_up_to_unit(&self, other: &Self) -> bool {
        match (self.normalize_unit(), other.normalize_unit()) {
            (Ok(a), Ok(b)) => a == b,
            (Err(_), Err(_)) => true,
            _ => false,
        }
    }

    /// Exact quotient `self / divisor` in `Z[t, t^-1]`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, LaurentError> {
        let (d_lo, d_hi) = match (divisor.min_exp(), divisor.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(LaurentError::DivisionByZero),
        };
        let lead = &divisor.coeffs[&d_hi];
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(r_hi) = rem.max_exp() {
            if rem.span().unwrap_or(0) < d_hi - d_lo {
                return Err(LaurentError::InexactDivision);
            }
            let (q, r) = rem.coeffs[&r_hi].div_rem(lead);
            if !r.is_zero() {
                return Err(LaurentError::InexactDivision);
            }
            let e = r_hi - d_hi;
            rem.add_scaled(divisor, &-&q, e);
            quot.add_term(e, q);
        }
        Ok(quot)
    }

    /// Renders with a caller-chosen variable name; exponents are divided by
    /// `denom` (use 2 for half-integer powers).
    pub fn render(&self, var: &str, denom: i64) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&e, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let power = render_power(var, e, denom);
            match power {
                None => out.push_str(&mag.to_string()),
                Some(pw) if mag.is_one() => out.push_str(&pw),
                Some(pw) => {
                    out.push_str(&mag.to_string());
                    out.push('*');
                    out.push_str(&pw);
                }
            }
        }
        out
    }
}

fn render_power(var: &str, e: i64, denom: i64) -> Option<String> {
    if e == 0 {
        return None;
    }
    let g = e.gcd(&denom);
    let (num, den) = (e / g, denom / g);
    Some(match (num, den) {
        (1, 1) => var.to_string(),
        (n, 1) => format!("{var}^{n}"),
        (n, d) => format!("{var}^({n}/{d})"),
    })
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t", 1))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Serializes as the rendered text, e.g. `"1 - t + t^2"`.
impl serde::Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.coeffs.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.coeffs {
            self.add_term(e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.coeffs {
            self.add_term(e, -c);
        }
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e, c) in &self.coeffs {
            out.add_scaled(rhs, c, e);
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// A square matrix of Laurent polynomials, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    size: usize,
    entries: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn zeros(size: usize) -> Self {
        Self {
            size,
            entries: vec![LaurentPoly::zero(); size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            m.set(i, i, LaurentPoly::one());
        }
        m
    }

    /// Panics unless `rows` is square.
    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Self {
        let size = rows.len();
        assert!(
            rows.iter().all(|r| r.len() == size),
            "PolyMatrix::from_rows: rows must form a square matrix"
        );
        Self {
            size,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn diagonal(diag: Vec<LaurentPoly>) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.into_iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> &LaurentPoly {
        &self.entries[row * self.size + col]
    }

    pub fn get_mut(&mut self, row: usize, col: usize) -> &mut LaurentPoly {
        &mut self.entries[row * self.size + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: LaurentPoly) {
        self.entries[row * self.size + col] = value;
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.size, rhs.size, "PolyMatrix::mul: size mismatch");
        let n = self.size;
        let mut out = PolyMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        *out.get_mut(i, j) += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.size, rhs.size, "PolyMatrix::sub: size mismatch");
        PolyMatrix {
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination. Every
    /// division step is exact in `Z[t, t^-1]`. The 0x0 determinant is 1.
    pub fn determinant(&self) -> LaurentPoly {
        let n = self.size;
        if n == 0 {
            return LaurentPoly::one();
        }
        let mut m = self.clone();
        let mut sign = false;
        let mut prev = LaurentPoly::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !m.get(r, k).is_zero()) {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign = !sign;
                    }
                    None => return LaurentPoly::zero(),
                }
            }
            let pivot = m.get(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&pivot * m.get(i, j)) - &(m.get(i, k) * m.get(k, j));
                    let q = num
                        .div_exact(&prev)
                        .expect("Bareiss elimination step divides exactly");
                    m.set(i, j, q);
                }
                m.set(i, k, LaurentPoly::zero());
            }
            prev = pivot;
        }
        let det = m.get(n - 1, n - 1).clone();
        if sign {
            -det
        } else {
            det
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.size {
            self.entries.swap(a * self.size + c, b * self.size + c);
        }
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.size)
            .map(|r| (0..self.size).map(|c| self.get(r, c).to_string()).collect())
            .collect();
        f.debug_struct("PolyMatrix")
            .field("size", &self.size)
            .field("rows", &rows)
            .finish()
    }
}
