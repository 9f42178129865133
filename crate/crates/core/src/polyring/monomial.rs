//! Exponent vectors with the canonical degree-lexicographic order.

use std::cmp::Ordering;
use std::fmt;

/// A power product in the variables x0..x_{nvars-1}, stored as its exponent
/// vector. Ordering is degree-lexicographic with x0 > x1 > ... > x_n; any
/// fixed total order would do, this one is pinned for reproducible
/// serialization.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The constant monomial 1 in `nvars` variables.
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    /// x_i, optionally to a power.
    pub fn var_pow(i: usize, e: u32, nvars: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut exps = vec![0; nvars];
        exps[i] = e;
        Monomial { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Degree under `weights` (one positive weight per variable).
    pub fn weighted_degree(&self, weights: &[i64]) -> i64 {
        assert_eq!(weights.len(), self.exps.len(), "weight count mismatch");
        self.exps.iter().zip(weights).map(|(&e, &w)| e as i64 * w).sum()
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        assert_eq!(self.exps.len(), rhs.exps.len(), "variable count mismatch");
        Monomial {
            exps: self.exps.iter().zip(&rhs.exps).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        assert_eq!(self.exps.len(), other.exps.len(), "variable count mismatch");
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
