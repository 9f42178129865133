//! Hilbert-series consistency: the alternating sum of the graded ranks of
//! the resolution must reproduce the numerator of the Hilbert series of
//! the semigroup ring.

use std::collections::BTreeMap;

use crate::minimalizer::MinimalComplex;
use crate::semigroup::ASParams;

/// Coefficients of prod_i (1 - t^{m_i}) * sum_{w in S} t^w, truncated at
/// w_max. Computed from the membership table alone.
pub fn numerator_from_semigroup(params: &ASParams, w_max: i64) -> Vec<i64> {
    let mut coeffs: Vec<i64> = params
        .membership_table(w_max)
        .into_iter()
        .map(i64::from)
        .collect();
    for &g in &params.m {
        // multiply by (1 - t^g), truncating above w_max
        for w in (g as usize..coeffs.len()).rev() {
            coeffs[w] -= coeffs[w - g as usize];
        }
    }
    coeffs
}

/// Coefficients of 1 + sum_s (-1)^s sum_{generators of R_s} t^{weight},
/// as a sparse map (exact, no truncation).
pub fn numerator_from_resolution(minimal: &MinimalComplex) -> BTreeMap<i64, i64> {
    let mut out = BTreeMap::new();
    out.insert(0, 1);
    for s in 1..=minimal.len() {
        let sign = if s % 2 == 0 { 1 } else { -1 };
        for &w in &minimal.modules[s].weights {
            let e = out.entry(w).or_insert(0);
            *e += sign;
            if *e == 0 {
                out.remove(&w);
            }
        }
    }
    out
}

/// Verifies the two numerators agree coefficient-wise up to w_max.
pub fn hilbert_consistency(minimal: &MinimalComplex, w_max: i64) -> bool {
    let semi = numerator_from_semigroup(&minimal.params, w_max);
    let res = numerator_from_resolution(minimal);
    for w in 0..=w_max {
        let a = semi[w as usize];
        let b = res.get(&w).copied().unwrap_or(0);
        if a != b {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minimalizer::minimalize;
    use crate::rescomplex::build_cone_complex;

    fn minimal(m0: i64, d: i64, n: usize) -> MinimalComplex {
        let p = ASParams::new(m0, d, n).unwrap();
        minimalize(&build_cone_complex(&p).unwrap()).unwrap()
    }

    #[test]
    fn numerator_345() {
        // 1 - t^8 - t^9 - t^10 + t^13 + t^14 (the R_2 weights are
        // delta_1 + m_1 = 13 and delta_1 + m_2 = 14)
        let m = minimal(3, 1, 2);
        let res = numerator_from_resolution(&m);
        let expected: BTreeMap<i64, i64> =
            [(0, 1), (8, -1), (9, -1), (10, -1), (13, 1), (14, 1)].into();
        assert_eq!(res, expected);
        assert!(hilbert_consistency(&m, 40));
    }

    #[test]
    fn numerator_456_complete_intersection() {
        // generator weights 10 and 12: numerator (1 - t^10)(1 - t^12)
        let m = minimal(4, 1, 2);
        let res = numerator_from_resolution(&m);
        let expected: BTreeMap<i64, i64> = [(0, 1), (10, -1), (12, -1), (22, 1)].into();
        assert_eq!(res, expected);
        assert!(hilbert_consistency(&m, 40));
    }

    #[test]
    fn numerator_4567() {
        let m = minimal(4, 1, 3);
        let res = numerator_from_resolution(&m);
        let expected: BTreeMap<i64, i64> = [
            (0, 1),
            (10, -1),
            (11, -1),
            (12, -2),
            (13, -1),
            (14, -1),
            (16, 1),
            (17, 2),
            (18, 2),
            (19, 2),
            (20, 1),
            (23, -1),
            (24, -1),
            (25, -1),
        ]
        .into();
        assert_eq!(res, expected);
        assert!(hilbert_consistency(&m, 60));
    }

    #[test]
    fn truncation_at_zero_is_trivial() {
        let m = minimal(3, 1, 2);
        assert!(hilbert_consistency(&m, 0));
    }
}
