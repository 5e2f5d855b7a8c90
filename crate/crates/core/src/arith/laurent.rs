//! Laurent polynomials in one variable with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::fmt_terms;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(c.into(), e);
        p
    }

    /// Builds from `(exponent, coefficient)` pairs.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(c.into(), e);
        }
        p
    }

    pub fn add_term(&mut self, c: BigInt, e: i64) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(c.clone(), *e);
        }
        p
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                p.add_term(c1 * c2, e1 + e2);
            }
        }
        p
    }

    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let base = if *e >= 0 { x.clone() } else { x.recip() };
            let mut pow = BigRational::one();
            for _ in 0..e.unsigned_abs() {
                pow *= &base;
            }
            acc += pow * BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Shift so the exponents are symmetric about zero, when the span is even.
    pub fn centered(&self) -> Option<Self> {
        let (lo, hi) = (self.min_exp()?, self.max_exp()?);
        if (lo + hi) % 2 != 0 {
            return None;
        }
        Some(self.shift(-(lo + hi) / 2))
    }

    /// Invariant under `T -> 1/T`.
    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(e, c)| self.terms.get(&-e) == Some(c))
    }

    /// Exact division by `1 + T^-1`; `None` if it does not divide.
    pub fn div_one_plus_inv(&self) -> Option<Self> {
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return Some(Self::zero());
        };
        let mut rem = self.clone();
        let mut q = Self::zero();
        for e in ((lo + 1)..=hi).rev() {
            let c = rem.coeff(e);
            q.add_term(c.clone(), e);
            rem.add_term(-c.clone(), e);
            rem.add_term(-c, e - 1);
        }
        rem.is_zero().then_some(q)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rat: Vec<(i64, BigRational)> =
            self.terms.iter().rev().map(|(e, c)| (*e, BigRational::from_integer(c.clone()))).collect();
        fmt_terms(f, rat.iter().map(|(e, c)| (*e, c)), "T")
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_negative_exponents() {
        let p = LaurentPoly::from_terms([(-1, 1), (0, -1), (1, 1)]);
        assert_eq!(p.to_string(), "T - 1 + T^-1");
        assert!(p.is_symmetric());
        assert_eq!(p.eval_one(), BigInt::one());
    }

    #[test]
    fn divide_by_one_plus_inverse() {
        let q = LaurentPoly::from_terms([(0, 2), (-3, 1)]);
        let f = LaurentPoly::from_terms([(0, 1), (-1, 1)]);
        assert_eq!(q.mul(&f).div_one_plus_inv(), Some(q));
        assert_eq!(LaurentPoly::one().div_one_plus_inv(), None);
    }
}
