//! Bivariate truncated formal power series in the deformation parameters
//! `h` and `w` with exact rational coefficients.
//!
//! A [`TruncatedSeries`] stores `sum c_{a,b} h^a w^b` for `a < K_h`, `b < K_w`.
//! Terms at or beyond the truncation are dropped on construction and after
//! every operation, so truncation is a ring homomorphism
//! `Q[[h, w]] -> Q[[h, w]] / (h^K_h, w^K_w)`.
//!
//! Invariants:
//! - no stored exponent pair lies outside the truncation box
//! - no stored coefficient is zero

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Truncation orders `(K_h, K_w)`: powers `h^a w^b` survive iff `a < K_h` and `b < K_w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Truncation {
    pub kh: u32,
    pub kw: u32,
}

impl Truncation {
    pub const fn new(kh: u32, kw: u32) -> Self {
        Truncation { kh, kw }
    }

    #[inline]
    pub fn admits(&self, a: u32, b: u32) -> bool {
        a < self.kh && b < self.kw
    }

    pub fn order(&self, param: Param) -> u32 {
        match param {
            Param::H => self.kh,
            Param::W => self.kw,
        }
    }
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation::new(4, 4)
    }
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.kh, self.kw)
    }
}

/// One of the two deformation parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Param {
    H,
    W,
}

impl Param {
    fn exponents(self, n: u32) -> (u32, u32) {
        match self {
            Param::H => (n, 0),
            Param::W => (0, n),
        }
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `1 / n!` as an exact rational.
pub(crate) fn inv_factorial(n: u32) -> BigRational {
    BigRational::new(BigInt::one(), factorial(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: BTreeMap<(u32, u32), BigRational>,
    trunc: Truncation,
}

impl TruncatedSeries {
    pub fn zero(trunc: Truncation) -> Self {
        TruncatedSeries {
            coeffs: BTreeMap::new(),
            trunc,
        }
    }

    pub fn one(trunc: Truncation) -> Self {
        Self::constant(BigRational::one(), trunc)
    }

    pub fn constant(c: BigRational, trunc: Truncation) -> Self {
        Self::monomial(c, 0, 0, trunc)
    }

    /// `c h^a w^b`, or zero if the power is truncated away.
    pub fn monomial(c: BigRational, a: u32, b: u32, trunc: Truncation) -> Self {
        let mut s = Self::zero(trunc);
        if !c.is_zero() && trunc.admits(a, b) {
            s.coeffs.insert((a, b), c);
        }
        s
    }

    /// The series `param^n`.
    pub fn param_pow(param: Param, n: u32, trunc: Truncation) -> Self {
        let (a, b) = param.exponents(n);
        Self::monomial(BigRational::one(), a, b, trunc)
    }

    pub fn h(trunc: Truncation) -> Self {
        Self::param_pow(Param::H, 1, trunc)
    }

    pub fn w(trunc: Truncation) -> Self {
        Self::param_pow(Param::W, 1, trunc)
    }

    /// Builds a series from arbitrary terms; out-of-range and zero terms are dropped,
    /// repeated exponent pairs are summed.
    pub fn from_terms<I>(terms: I, trunc: Truncation) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), BigRational)>,
    {
        let mut s = Self::zero(trunc);
        for ((a, b), c) in terms {
            s.add_term(a, b, &c);
        }
        s
    }

    pub fn truncation(&self) -> Truncation {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&(0, 0)).map_or(false, |c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, a: u32, b: u32) -> BigRational {
        self.coeffs.get(&(a, b)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(0, 0)
    }

    /// Smallest total degree `a + b` among stored terms.
    pub fn min_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|(a, b)| a + b).min()
    }

    /// Smallest exponents of `h` and of `w` among stored terms (taken independently).
    pub fn min_exponents(&self) -> Option<(u32, u32)> {
        let mut it = self.coeffs.keys();
        let first = *it.next()?;
        Some(it.fold(first, |(ma, mb), &(a, b)| (ma.min(a), mb.min(b))))
    }

    pub(crate) fn add_term(&mut self, a: u32, b: u32, c: &BigRational) {
        if c.is_zero() || !self.trunc.admits(a, b) {
            return;
        }
        match self.coeffs.entry((a, b)) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Re-truncates to a (componentwise smaller or equal) truncation.
    pub fn retruncate(&self, trunc: Truncation) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(k, v)| (*k, v.clone())), trunc)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch(self.trunc, other.trunc));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_assign_ref(other);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self + &(-other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_ref(other))
    }

    pub(crate) fn add_assign_ref(&mut self, other: &Self) {
        debug_assert_eq!(self.trunc, other.trunc);
        for ((a, b), c) in &other.coeffs {
            self.add_term(*a, *b, c);
        }
    }

    /// `self += factor * other`
    pub(crate) fn add_mul_assign(&mut self, factor: &Self, other: &Self) {
        debug_assert_eq!(self.trunc, other.trunc);
        for ((a1, b1), c1) in &factor.coeffs {
            for ((a2, b2), c2) in &other.coeffs {
                let (a, b) = (a1 + a2, b1 + b2);
                if self.trunc.admits(a, b) {
                    self.add_term(a, b, &(c1 * c2));
                }
            }
        }
    }

    pub(crate) fn mul_ref(&self, other: &Self) -> Self {
        debug_assert_eq!(self.trunc, other.trunc);
        let mut out = Self::zero(self.trunc);
        out.add_mul_assign(self, other);
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.trunc);
        }
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect(),
            trunc: self.trunc,
        }
    }

    /// Multiplies by `param^n`.
    pub fn shift(&self, param: Param, n: u32) -> Self {
        let (da, db) = param.exponents(n);
        Self::from_terms(
            self.coeffs.iter().map(|((a, b), c)| ((a + da, b + db), c.clone())),
            self.trunc,
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.trunc);
        for _ in 0..n {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// `sum_{n>=0} x^n / n!`; requires a zero constant term so the sum is finite.
    pub fn exp_series(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::NotNilpotent);
        }
        let mut sum = Self::one(self.trunc);
        let mut power = Self::one(self.trunc);
        let mut n = 0u32;
        loop {
            n += 1;
            power = power.mul_ref(self);
            if power.is_zero() {
                break;
            }
            sum.add_assign_ref(&power.scale(&inv_factorial(n)));
        }
        Ok(sum)
    }

    /// `sinh(param * x) / param = sum_n param^{2n} x^{2n+1} / (2n+1)!`.
    pub fn sinh_over(&self, param: Param) -> Self {
        let order = self.trunc.order(param);
        let mut sum = Self::zero(self.trunc);
        let mut n = 0u32;
        while 2 * n < order {
            let term = self.pow(2 * n + 1).shift(param, 2 * n);
            sum.add_assign_ref(&term.scale(&inv_factorial(2 * n + 1)));
            n += 1;
        }
        sum
    }

    /// Multiplicative inverse; requires an invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv_c0 = c0.recip();
        // x = c0 (1 + y)  =>  x^{-1} = c0^{-1} sum (-y)^n
        let mut y = self.scale(&inv_c0);
        y.add_term(0, 0, &-BigRational::one());
        let neg_y = -&y;
        let mut sum = Self::one(self.trunc);
        let mut power = Self::one(self.trunc);
        loop {
            power = power.mul_ref(&neg_y);
            if power.is_zero() {
                break;
            }
            sum.add_assign_ref(&power);
        }
        Ok(sum.scale(&inv_c0))
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.checked_add(rhs).expect("series truncation mismatch")
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.checked_sub(rhs).expect("series truncation mismatch")
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.checked_mul(rhs).expect("series truncation mismatch")
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, -v)).collect(),
            trunc: self.trunc,
        }
    }
}

pub(crate) fn fmt_rational(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for TruncatedSeries {
    /// Renders as `c * h^a * w^b + ...`, rationals as `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((a, b), c) in &self.coeffs {
            let mut factors = Vec::new();
            if *a > 0 {
                factors.push(format!("h^{a}"));
            }
            if *b > 0 {
                factors.push(format!("w^{b}"));
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if factors.is_empty() {
                write!(f, "{}", fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join(" * "))?;
            } else {
                write!(f, "{} * {}", fmt_rational(&mag), factors.join(" * "))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(kh: u32, kw: u32) -> Truncation {
        Truncation::new(kh, kw)
    }

    fn s(terms: &[((u32, u32), (i64, i64))], tr: Truncation) -> TruncatedSeries {
        TruncatedSeries::from_terms(terms.iter().map(|&(k, (n, d))| (k, rat(n, d))), tr)
    }

    #[test]
    fn add_examples() {
        let tr = t(4, 4);
        let h = TruncatedSeries::h(tr);
        let w = TruncatedSeries::w(tr);
        assert_eq!(&h + &w, s(&[((1, 0), (1, 1)), ((0, 1), (1, 1))], tr));
        assert!((&h + &(-&h)).is_zero());
        let x = s(&[((0, 0), (1, 1)), ((1, 1), (1, 1))], tr);
        let y = s(&[((1, 1), (1, 1))], tr);
        assert_eq!(&x + &y, s(&[((0, 0), (1, 1)), ((1, 1), (2, 1))], tr));
    }

    #[test]
    fn mul_examples() {
        let tr = t(4, 4);
        assert_eq!(
            &TruncatedSeries::h(tr) * &TruncatedSeries::w(tr),
            s(&[((1, 1), (1, 1))], tr)
        );
        let tr2 = t(2, 2);
        assert!((&TruncatedSeries::h(tr2) * &TruncatedSeries::h(tr2)).is_zero());
        let tr3 = t(3, 1);
        let p = s(&[((0, 0), (1, 1)), ((1, 0), (1, 1))], tr3);
        let m = s(&[((0, 0), (1, 1)), ((1, 0), (-1, 1))], tr3);
        assert_eq!(&p * &m, s(&[((0, 0), (1, 1)), ((2, 0), (-1, 1))], tr3));
    }

    #[test]
    fn mismatched_truncation_is_an_error() {
        let a = TruncatedSeries::one(t(2, 2));
        let b = TruncatedSeries::one(t(3, 2));
        assert!(matches!(a.checked_add(&b), Err(Error::TruncationMismatch(_, _))));
        assert!(matches!(a.checked_mul(&b), Err(Error::TruncationMismatch(_, _))));
    }

    #[test]
    fn exp_examples() {
        let tr = t(3, 3);
        assert!(TruncatedSeries::zero(tr).exp_series().unwrap().is_one());
        let e = TruncatedSeries::h(tr).exp_series().unwrap();
        assert_eq!(e, s(&[((0, 0), (1, 1)), ((1, 0), (1, 1)), ((2, 0), (1, 2))], tr));
        let tr2 = t(2, 2);
        let hw = &TruncatedSeries::h(tr2) * &TruncatedSeries::w(tr2);
        assert_eq!(hw.exp_series().unwrap(), s(&[((0, 0), (1, 1)), ((1, 1), (1, 1))], tr2));
        assert_eq!(TruncatedSeries::one(tr).exp_series(), Err(Error::NotNilpotent));
    }

    #[test]
    fn sinh_over_examples() {
        let tr = t(4, 2);
        let one = TruncatedSeries::one(tr);
        assert_eq!(one.sinh_over(Param::H), s(&[((0, 0), (1, 1)), ((2, 0), (1, 6))], tr));
        assert!(TruncatedSeries::zero(tr).sinh_over(Param::H).is_zero());
        let two = TruncatedSeries::constant(int(2), tr);
        assert_eq!(two.sinh_over(Param::H), s(&[((0, 0), (2, 1)), ((2, 0), (8, 6))], tr));
    }

    #[test]
    fn display_format() {
        let tr = t(4, 4);
        let x = s(&[((0, 0), (1, 1)), ((2, 1), (-3, 2)), ((0, 1), (1, 1))], tr);
        assert_eq!(x.to_string(), "1 + w^1 - 3/2 * h^2 * w^1");
        assert_eq!(TruncatedSeries::zero(tr).to_string(), "0");
    }

    #[test]
    fn inverse_roundtrip() {
        let tr = t(4, 3);
        let x = s(&[((0, 0), (2, 1)), ((1, 0), (1, 3)), ((1, 2), (-5, 7))], tr);
        assert!((&x * &x.inverse().unwrap()).is_one());
    }
}
