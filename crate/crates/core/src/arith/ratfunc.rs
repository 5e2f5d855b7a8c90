//! The field Q(t) of rational functions, kept in lowest terms.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::UniPoly;
use super::ArithError;

/// `num / den` with `den` monic and `gcd(num, den) = 1`; zero is `0 / 1`.
/// The representation is canonical, so derived equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: UniPoly, den: UniPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.degree() == Some(0) {
            let inv = den.coeffs()[0].recip();
            return RatFunc { num: num.scale(&inv), den: UniPoly::one() };
        }
        let g = UniPoly::gcd(&num, &den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.div_rem(&g).0, den.div_rem(&g).0) };
        let lead = den.leading().expect("nonzero denominator").clone();
        if lead.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lead.recip();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn zero() -> Self {
        RatFunc { num: UniPoly::zero(), den: UniPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFunc { num: p, den: UniPoly::one() }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(UniPoly::from_ints(&[c]))
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn t() -> Self {
        Self::from_poly(UniPoly::t())
    }

    /// `t^k`
    pub fn t_pow(k: usize) -> Self {
        Self::from_poly(UniPoly::monomial(BigRational::one(), k))
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Degree of numerator plus degree of denominator, the pivot cost.
    pub fn complexity(&self) -> usize {
        self.num.degree().unwrap_or(0) + self.den.degree().unwrap_or(0)
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &RatFunc) -> Result<Self, ArithError> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Value at `t = x`; fails when `x` is a pole. Lowest terms make this
    /// the polynomial limit at removable singularities.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational, ArithError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(ArithError::Pole(x.clone()));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RatFunc { num: self.num.scale(c), den: if c.is_zero() { UniPoly::one() } else { self.den.clone() } }
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let num = &self.num + &o.num;
            if self.den.is_one() {
                return RatFunc { num, den: UniPoly::one() };
            }
            return RatFunc::normalize(num, self.den.clone());
        }
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        RatFunc::normalize(num, &self.den * &o.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { num: &self.num * &o.num, den: UniPoly::one() };
        }
        // cross-cancel first to keep the operands small
        let g1 = UniPoly::gcd(&self.num, &o.den);
        let g2 = UniPoly::gcd(&o.num, &self.den);
        let (a, d) = if g1.is_one() { (self.num.clone(), o.den.clone()) } else { (self.num.div_rem(&g1).0, o.den.div_rem(&g1).0) };
        let (c, b) = if g2.is_one() { (o.num.clone(), self.den.clone()) } else { (o.num.div_rem(&g2).0, self.den.div_rem(&g2).0) };
        let num = &a * &c;
        let den = &b * &d;
        let lead = den.leading().expect("nonzero denominator").recip();
        if lead.is_one() {
            RatFunc { num, den }
        } else {
            RatFunc { num: num.scale(&lead), den: den.scale(&lead) }
        }
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, o: RatFunc) -> RatFunc {
        &self + &o
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, o: RatFunc) -> RatFunc {
        &self - &o
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, o: RatFunc) -> RatFunc {
        &self * &o
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &UniPoly| {
            let s = p.to_string();
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 { format!("({s})") } else { s }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn lowest_terms() {
        let r = rf(&[-1, 0, 1], &[2, 2]);
        assert_eq!(r, RatFunc::from_poly(p(&[-1, 1]).scale(&BigRational::new(1.into(), 2.into()))));
        assert!(r.is_polynomial());
    }

    #[test]
    fn removable_singularity_at_one() {
        let r = rf(&[-1, 0, 0, 1], &[-1, 1]);
        assert_eq!(r.eval(&BigRational::one()).unwrap(), BigRational::from_integer(3.into()));
        let pole = rf(&[1], &[-1, 1]);
        assert!(pole.eval(&BigRational::one()).is_err());
    }

    #[test]
    fn division_by_zero_is_typed() {
        assert_eq!(RatFunc::new(p(&[1]), p(&[])), Err(ArithError::DivisionByZero));
        assert_eq!(RatFunc::zero().inv(), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn field_identities() {
        let a = rf(&[1, 2], &[3, 0, 1]);
        let b = rf(&[0, 1], &[1, 1]);
        assert_eq!(&(&a * &b).checked_div(&b).unwrap(), &a);
        assert!((&(&a + &b) - &b - a.clone()).is_zero());
        assert!((&a * &a.inv().unwrap()).is_one());
    }
}
