//! Sparse multivariate polynomials with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

use super::monomial::Monomial;
use super::scalar::{Fp64, Rat, Scalar};

/// A polynomial stored as a map from monomials to nonzero coefficients.
/// The map's key order is the canonical monomial order, so equality is
/// structural and iteration is deterministic.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<S: Scalar> {
    nvars: usize,
    terms: BTreeMap<Monomial, S>,
}

/// The workhorse alias: exact rational coefficients.
pub type QPoly = Polynomial<Rat>;

/// Prime-field polynomials; used only by the coefficient-image checks.
pub type FpPoly = Polynomial<Fp64>;

impl<S: Scalar> Polynomial<S> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, S)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m`, merging with an existing term and dropping zeros.
    pub fn add_term(&mut self, m: Monomial, c: S) {
        assert_eq!(m.nvars(), self.nvars, "variable count mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&S> {
        self.terms.get(m)
    }

    /// A nonzero constant (degree-zero) polynomial?
    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one()
    }

    /// The constant coefficient if this is a nonzero constant.
    pub fn constant_value(&self) -> Option<&S> {
        if self.is_constant() {
            self.terms.values().next()
        } else {
            None
        }
    }

    /// Common weighted degree of all terms; errors on the zero polynomial
    /// and on non-homogeneous input.
    pub fn weighted_degree(&self, weights: &[i64]) -> Result<i64> {
        let mut iter = self.terms.keys();
        let first = iter.next().ok_or(Error::ZeroPolynomialDegree)?;
        let d = first.weighted_degree(weights);
        for m in iter {
            let dm = m.weighted_degree(weights);
            if dm != d {
                return Err(Error::NonHomogeneous(d, dm));
            }
        }
        Ok(d)
    }

    pub fn is_homogeneous(&self, weights: &[i64]) -> bool {
        self.is_zero() || self.weighted_degree(weights).is_ok()
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Polynomial<T> {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f(c))).collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    fn add_impl(&self, rhs: &Self, negate_rhs: bool) -> Self {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            let c = if negate_rhs { c.neg() } else { c.clone() };
            out.add_term(m.clone(), c);
        }
        out
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }
}

impl QPoly {
    pub fn constant(nvars: usize, c: Rat) -> Self {
        Polynomial::from_terms(nvars, [(Monomial::one(nvars), c)])
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        Polynomial::from_terms(nvars, [(Monomial::var_pow(i, 1, nvars), Rat::one())])
    }

    pub fn var_pow(i: usize, e: u32, nvars: usize) -> Self {
        Polynomial::from_terms(nvars, [(Monomial::var_pow(i, e, nvars), Rat::one())])
    }

    pub fn monomial(m: Monomial) -> Self {
        let n = m.nvars();
        Polynomial::from_terms(n, [(m, Rat::one())])
    }

    /// Reduce every coefficient mod p. Panics if p divides a denominator.
    pub fn to_fp(&self, p: u64) -> FpPoly {
        self.map_coeffs(|c| c.to_fp(p))
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $call:expr) => {
        impl<'a, S: Scalar> $trait<&'a Polynomial<S>> for &'a Polynomial<S> {
            type Output = Polynomial<S>;
            fn $method(self, rhs: &'a Polynomial<S>) -> Polynomial<S> {
                $call(self, rhs)
            }
        }
        impl<S: Scalar> $trait for Polynomial<S> {
            type Output = Polynomial<S>;
            fn $method(self, rhs: Polynomial<S>) -> Polynomial<S> {
                $call(&self, &rhs)
            }
        }
    };
}

impl_binop!(Add, add, |a: &Polynomial<S>, b: &Polynomial<S>| a.add_impl(b, false));
impl_binop!(Sub, sub, |a: &Polynomial<S>, b: &Polynomial<S>| a.add_impl(b, true));
impl_binop!(Mul, mul, |a: &Polynomial<S>, b: &Polynomial<S>| a.mul_impl(b));

impl<S: Scalar> AddAssign<&Polynomial<S>> for Polynomial<S> {
    fn add_assign(&mut self, rhs: &Polynomial<S>) {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<S: Scalar> SubAssign<&Polynomial<S>> for Polynomial<S> {
    fn sub_assign(&mut self, rhs: &Polynomial<S>) {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.neg());
        }
    }
}

impl<S: Scalar> Neg for Polynomial<S> {
    type Output = Polynomial<S>;
    fn neg(self) -> Polynomial<S> {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.into_iter().map(|(m, c)| (m, c.neg())).collect(),
        }
    }
}

impl<S: Scalar> Neg for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn neg(self) -> Polynomial<S> {
        -self.clone()
    }
}

impl fmt::Display for QPoly {
    /// Canonical text form: terms in descending canonical order,
    /// `x0^2*x1 - x2^2` style. Round-trips bit-exactly through the parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}
