//! Exact rank computation: fraction-free (Bareiss) elimination over the
//! integers, and ordinary elimination over the prime field.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::Zero;

use crate::polyring::{FieldChoice, Fp64, Rat, Scalar};

/// Dense matrix over the rationals, stored row-major. Ranks are taken
/// either by fraction-free elimination over Z (after clearing denominators
/// row by row) or by elimination mod p.
#[derive(Debug, Clone)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigRational>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &BigRational) {
        self.data[r * self.cols + c] += v;
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = &self.data[r * self.cols..(r + 1) * self.cols];
                let mut lcm = BigInt::from(1);
                for v in row {
                    if !v.is_zero() {
                        lcm = num::integer::lcm(lcm, v.denom().clone());
                    }
                }
                row.iter().map(|v| (v * &lcm).to_integer()).collect()
            })
            .collect()
    }

    /// Rank over Q by fraction-free Gaussian elimination (Bareiss).
    pub fn rank_rational(&self) -> usize {
        bareiss_rank(self.integer_rows())
    }

    /// Rank of the image mod p. For entries whose denominator is prime to p
    /// this equals the rank over F_p of the reduced matrix.
    pub fn rank_mod_p(&self, p: u64) -> usize {
        let rows: Vec<Vec<u64>> = (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| Rat(self.get(r, c).clone()).to_fp(p).value())
                    .collect()
            })
            .collect();
        fp_rank(rows, p)
    }

    /// Rank using the route selected by `field`; `Rational` forces Bareiss,
    /// `Prime` forces the modular route.
    pub fn rank(&self, field: FieldChoice) -> usize {
        match field {
            FieldChoice::Rational => self.rank_rational(),
            FieldChoice::Prime(p) => self.rank_mod_p(p),
        }
    }
}

/// Bareiss fraction-free elimination; consumes the integer matrix.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row >= rows {
            break;
        }
        let Some(p) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, p);
        for r in (pivot_row + 1)..rows {
            for c in (col + 1)..cols {
                let num = &m[pivot_row][col] * &m[r][c] - &m[r][col] * &m[pivot_row][c];
                debug_assert!((&num % &prev).is_zero());
                m[r][c] = num / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[pivot_row][col].clone();
        debug_assert!(!prev.is_zero());
        pivot_row += 1;
        rank += 1;
    }
    rank
}

/// Row-echelon rank over F_p.
pub fn fp_rank(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row >= rows {
            break;
        }
        let Some(pr) = (pivot_row..rows).find(|&r| !m[r][col].is_multiple_of(p)) else {
            continue;
        };
        m.swap(pivot_row, pr);
        let inv = Fp64::new(m[pivot_row][col], p).inv().unwrap().value();
        let pivot = m[pivot_row].clone();
        for row in m.iter_mut().skip(pivot_row + 1) {
            let factor = row[col] % p;
            if factor == 0 {
                continue;
            }
            let scale = factor * inv % p;
            for (entry, &pv) in row.iter_mut().zip(&pivot).skip(col) {
                let sub = scale * (pv % p) % p;
                *entry = (*entry % p + p - sub) % p;
            }
        }
        pivot_row += 1;
        rank += 1;
    }
    rank
}
