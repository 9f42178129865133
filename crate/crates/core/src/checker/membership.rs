//! Graded ideal membership by one linear solve per weighted degree.

use crate::error::{Error, Result};
use crate::polyring::QPoly;
use crate::semigroup::ASParams;

use super::grading::DegreeTables;
use super::rank::QMatrix;

/// Decides whether the weighted-homogeneous polynomial `p` lies in the span
/// of { mono * gen } where mono runs over monomials making the product land
/// in p's degree. Equivalently: membership of p in the homogeneous ideal
/// generated by `gens`, decided inside one graded piece.
pub fn graded_membership(params: &ASParams, gens: &[QPoly], p: &QPoly) -> Result<bool> {
    if p.is_zero() {
        return Ok(true);
    }
    let w = p.weighted_degree(&params.m)?;
    let tables = DegreeTables::build(params, w);
    graded_membership_with(params, &tables, gens, p, w)
}

/// Same as [`graded_membership`], reusing prebuilt degree tables.
pub fn graded_membership_with(
    params: &ASParams,
    tables: &DegreeTables,
    gens: &[QPoly],
    p: &QPoly,
    w: i64,
) -> Result<bool> {
    let rows = tables.dim(w);
    let mut cols = Vec::new();
    for gen in gens {
        if gen.is_zero() {
            continue;
        }
        let wg = gen.weighted_degree(&params.m)?;
        for mono in tables.monomials(w - wg) {
            cols.push(gen.mul_monomial(mono));
        }
    }
    let mut mat = QMatrix::zero(rows, cols.len() + 1);
    for (c, col) in cols.iter().enumerate() {
        for (m, coeff) in col.terms() {
            let r = tables.position(w, m).ok_or_else(|| {
                Error::Internal("graded piece misses a product monomial".into())
            })?;
            mat.set(r, c, coeff.0.clone());
        }
    }
    let span_rank = strip_last_column_rank(&mat);
    for (m, coeff) in p.terms() {
        let r = tables
            .position(w, m)
            .ok_or_else(|| Error::Internal("graded piece misses a probe monomial".into()))?;
        mat.set(r, cols.len(), coeff.0.clone());
    }
    let full_rank = mat.rank_rational();
    Ok(span_rank == full_rank)
}

fn strip_last_column_rank(m: &QMatrix) -> usize {
    let mut stripped = QMatrix::zero(m.rows, m.cols - 1);
    for r in 0..m.rows {
        for c in 0..m.cols - 1 {
            stripped.set(r, c, m.get(r, c).clone());
        }
    }
    stripped.rank_rational()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{build_generators, g_minor, pencil_minor};
    use crate::polyring::QPoly;

    #[test]
    fn zero_is_member() {
        let p = ASParams::new(3, 1, 2).unwrap();
        let gens = vec![pencil_minor(&p, 1, 2)];
        assert!(graded_membership(&p, &gens, &QPoly::zero(3)).unwrap());
    }

    #[test]
    fn lemma_combination_is_member() {
        // x1 g1 - x0 g0 lies in (f) for <3,4,5>
        let p = ASParams::new(3, 1, 2).unwrap();
        let f = pencil_minor(&p, 1, 2);
        let probe =
            &QPoly::var(1, 3) * &g_minor(&p, 1) - &QPoly::var(0, 3) * &g_minor(&p, 0);
        assert!(graded_membership(&p, &[f], &probe).unwrap());
    }

    #[test]
    fn x0_g1_not_in_f_g0() {
        let p = ASParams::new(3, 1, 2).unwrap();
        let gens = build_generators(&p);
        let ideal = vec![gens.f[0].poly.clone(), gens.g[0].poly.clone()];
        let probe = &QPoly::var(0, 3) * &g_minor(&p, 1);
        assert_eq!(probe.weighted_degree(&p.m).unwrap(), 12);
        assert!(!graded_membership(&p, &ideal, &probe).unwrap());
    }

    #[test]
    fn membership_monotone_under_ideal_growth() {
        let p = ASParams::new(3, 1, 2).unwrap();
        let gens = build_generators(&p);
        let f = vec![gens.f[0].poly.clone()];
        let fg = vec![gens.f[0].poly.clone(), gens.g[0].poly.clone()];
        let probe = &QPoly::var(2, 3) * &gens.f[0].poly;
        assert!(graded_membership(&p, &f, &probe).unwrap());
        assert!(graded_membership(&p, &fg, &probe).unwrap());
    }
}
