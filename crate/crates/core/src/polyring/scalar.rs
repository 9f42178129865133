//! Coefficient fields: exact rationals and a configurable odd prime field.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient field selector. The construction itself always runs over the
/// rationals; the prime field exists to accelerate the per-degree rank
/// computations in the checker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum FieldChoice {
    Rational,
    Prime(u64),
}

impl FieldChoice {
    /// Validates the prime variant: `p` must be an odd prime > 2.
    pub fn validate(self) -> Result<Self> {
        match self {
            FieldChoice::Rational => Ok(self),
            FieldChoice::Prime(p) => {
                if p > 2 && is_prime(p) {
                    Ok(self)
                } else {
                    Err(Error::InvalidPrime(p))
                }
            }
        }
    }
}

/// Default prime for the linear-algebra oracle; larger than any binomial
/// coefficient showing up at desk scale.
pub const DEFAULT_PRIME: u64 = 32003;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Scalar operations shared by the two coefficient fields.
pub trait Scalar: Clone + PartialEq + Eq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
}

/// Exact rational coefficient.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_i64(v: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Image in F_p, provided p does not divide the denominator.
    pub fn to_fp(&self, p: u64) -> Fp64 {
        let pb = BigInt::from(p);
        let num = self.0.numer().clone() % &pb;
        let num = ((num + &pb) % &pb).to_u64_digits().1.first().copied().unwrap_or(0);
        let den = self.0.denom().clone() % &pb;
        let den = ((den + &pb) % &pb).to_u64_digits().1.first().copied().unwrap_or(0);
        assert!(den != 0, "denominator divisible by p = {p}");
        let d = Fp64::new(den, p);
        Fp64::new(num, p).mul(&d.inv().unwrap())
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Scalar for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Rat(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rat(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rat(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        Rat(-self.0.clone())
    }
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }
}

/// Element of F_p for an odd prime p < 2^32; the modulus travels with the
/// value so mixed-modulus arithmetic is caught immediately.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp64 {
    v: u64,
    p: u64,
}

impl Fp64 {
    pub fn new(v: u64, p: u64) -> Self {
        debug_assert!(p > 2);
        Fp64 { v: v % p, p }
    }

    pub fn from_i64(v: i64, p: u64) -> Self {
        let m = v.rem_euclid(p as i64) as u64;
        Fp64 { v: m, p }
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn check(&self, rhs: &Self) {
        assert_eq!(self.p, rhs.p, "mixed moduli {} and {}", self.p, rhs.p);
    }

    fn pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
        let mut acc = 1u64;
        base %= p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc
    }
}

impl fmt::Debug for Fp64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.v, self.p)
    }
}

impl Scalar for Fp64 {
    fn zero_like(&self) -> Self {
        Fp64 { v: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Fp64 { v: 1, p: self.p }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        self.check(rhs);
        Fp64 { v: (self.v + rhs.v) % self.p, p: self.p }
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.check(rhs);
        Fp64 { v: (self.v + self.p - rhs.v) % self.p, p: self.p }
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        Fp64 { v: self.v * rhs.v % self.p, p: self.p }
    }
    fn neg(&self) -> Self {
        Fp64 { v: (self.p - self.v) % self.p, p: self.p }
    }
    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            None
        } else {
            Some(Fp64 { v: Self::pow(self.v, self.p - 2, self.p), p: self.p })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(FieldChoice::Prime(32003).validate().is_ok());
        assert!(FieldChoice::Prime(2).validate().is_err());
        assert!(FieldChoice::Prime(32001).validate().is_err());
        assert!(FieldChoice::Rational.validate().is_ok());
    }

    #[test]
    fn fp_field_ops() {
        let p = 32003;
        let a = Fp64::new(17, p);
        let inv = a.inv().unwrap();
        assert!(a.mul(&inv) == Fp64::new(1, p));
        assert!(Fp64::from_i64(-1, p) == Fp64::new(p - 1, p));
    }

    #[test]
    fn rat_to_fp() {
        let p = 32003;
        let half = Rat::from_frac(1, 2);
        let img = half.to_fp(p);
        assert_eq!(img.mul(&Fp64::new(2, p)), Fp64::new(1, p));
        assert_eq!(Rat::from_i64(-1).to_fp(p), Fp64::new(p - 1, p));
    }
}
