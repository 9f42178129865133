//! Enumeration of the graded pieces of the weighted polynomial ring.

use std::collections::HashMap;

use crate::polyring::Monomial;
use crate::semigroup::ASParams;

/// Monomial bases of the graded pieces P_w for 0 <= w <= w_max, computed
/// once and shared. Each list is in ascending canonical monomial order.
#[derive(Debug)]
pub struct DegreeTables {
    tables: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
}

impl DegreeTables {
    pub fn build(params: &ASParams, w_max: i64) -> Self {
        let w_max = w_max.max(0) as usize;
        let nv = params.nvars();
        let mut tables: Vec<Vec<Monomial>> = vec![Vec::new(); w_max + 1];
        // enumerate exponent vectors variable by variable
        let mut exps = vec![0u32; nv];
        enumerate(params, 0, 0, w_max as i64, &mut exps, &mut tables);
        for t in &mut tables {
            t.sort();
        }
        let index = tables
            .iter()
            .map(|t| t.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect())
            .collect();
        DegreeTables { tables, index }
    }

    pub fn w_max(&self) -> i64 {
        self.tables.len() as i64 - 1
    }

    /// Monomials of weighted degree exactly w; empty outside the table range.
    pub fn monomials(&self, w: i64) -> &[Monomial] {
        if w < 0 || w >= self.tables.len() as i64 {
            &[]
        } else {
            &self.tables[w as usize]
        }
    }

    pub fn dim(&self, w: i64) -> usize {
        self.monomials(w).len()
    }

    /// Position of `m` inside the degree-w basis.
    pub fn position(&self, w: i64, m: &Monomial) -> Option<usize> {
        if w < 0 || w >= self.index.len() as i64 {
            None
        } else {
            self.index[w as usize].get(m).copied()
        }
    }
}

fn enumerate(
    params: &ASParams,
    var: usize,
    degree: i64,
    w_max: i64,
    exps: &mut Vec<u32>,
    out: &mut Vec<Vec<Monomial>>,
) {
    let nv = params.nvars();
    if var == nv {
        out[degree as usize].push(Monomial::new(exps.clone()));
        return;
    }
    let w = params.m[var];
    let mut e = 0u32;
    loop {
        let d = degree + e as i64 * w;
        if d > w_max {
            break;
        }
        exps[var] = e;
        enumerate(params, var + 1, d, w_max, exps, out);
        e += 1;
    }
    exps[var] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::ASParams;

    #[test]
    fn dims_match_semigroup_e_structure() {
        let p = ASParams::new(3, 1, 2).unwrap();
        let t = DegreeTables::build(&p, 30);
        assert_eq!(t.dim(0), 1);
        assert_eq!(t.dim(1), 0);
        assert_eq!(t.dim(2), 0);
        assert_eq!(t.dim(3), 1); // x0
        assert_eq!(t.dim(8), 2); // x0*x2, x1^2
        // every listed monomial has the right degree, order is canonical
        for w in 0..=30 {
            let ms = t.monomials(w);
            for m in ms {
                assert_eq!(m.weighted_degree(&p.m), w);
            }
            for k in 1..ms.len() {
                assert!(ms[k - 1] < ms[k]);
            }
        }
    }

    #[test]
    fn position_lookup() {
        let p = ASParams::new(3, 1, 2).unwrap();
        let t = DegreeTables::build(&p, 20);
        for w in 0..=20 {
            for (k, m) in t.monomials(w).iter().enumerate() {
                assert_eq!(t.position(w, m), Some(k));
            }
        }
    }
}
