//! Numerical semigroups generated by an arithmetic sequence, and the
//! derived parameters used throughout the construction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters of the semigroup S = <m0, m0+d, ..., m0+n*d>.
///
/// The hypotheses are gcd(m0, d) = 1, n >= 2, d >= 1 and m0 > n, which
/// forces the decomposition m0 = a*n + b with a >= 1 and 1 <= b <= n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ASParams {
    pub n: usize,
    pub m0: i64,
    pub d: i64,
    pub a: i64,
    pub b: usize,
    /// mu = a + d, the exponent of x0 in the second row of the minor matrix.
    pub mu: i64,
    /// Generators m_i = m0 + i*d for i = 0..=n.
    pub m: Vec<i64>,
    /// delta_h = a*m_n + m_{n-h} for h = 0..=(n-b), the weights of the g_h.
    pub delta: Vec<i64>,
}

impl ASParams {
    /// Derives all parameters, validating the hypotheses.
    pub fn new(m0: i64, d: i64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::OutOfHypothesis(format!("n = {n} < 2")));
        }
        if d < 1 {
            return Err(Error::OutOfHypothesis(format!("d = {d} < 1")));
        }
        if m0 <= n as i64 {
            return Err(Error::OutOfHypothesis(format!(
                "m0 = {m0} <= n = {n} forces a = 0"
            )));
        }
        let g = gcd(m0, d);
        if g != 1 {
            return Err(Error::InvalidSemigroup { m0, d, gcd: g });
        }
        let a = (m0 - 1) / n as i64;
        let b = (m0 - a * n as i64) as usize;
        debug_assert!(a >= 1 && (1..=n).contains(&b));
        let m: Vec<i64> = (0..=n as i64).map(|i| m0 + i * d).collect();
        let m_n = m[n];
        let delta: Vec<i64> = (0..=(n - b)).map(|h| a * m_n + m[n - h]).collect();
        Ok(ASParams { n, m0, d, a, b, mu: a + d, m, delta })
    }

    /// Number of polynomial variables, n + 1.
    pub fn nvars(&self) -> usize {
        self.n + 1
    }

    /// Number of minors g_h, i.e. n - b + 1.
    pub fn num_g(&self) -> usize {
        self.n - self.b + 1
    }

    /// Membership test for the semigroup, by dynamic programming over 0..=w.
    pub fn contains(&self, w: i64) -> Result<bool> {
        if w < 0 {
            return Err(Error::Domain(format!("membership query for negative weight {w}")));
        }
        Ok(self.membership_table(w)[w as usize])
    }

    /// Dense membership table: entry w is true iff w is an N-combination of
    /// the generators. Index range 0..=w_max.
    pub fn membership_table(&self, w_max: i64) -> Vec<bool> {
        let w_max = w_max.max(0) as usize;
        let mut table = vec![false; w_max + 1];
        table[0] = true;
        for w in 1..=w_max {
            table[w] = self.m.iter().any(|&g| {
                let g = g as usize;
                w >= g && table[w - g]
            });
        }
        table
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
