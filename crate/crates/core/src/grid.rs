//! Parameter-grid enumeration for batch verification runs.

use crate::semigroup::ASParams;

/// m0 selection for one n: either the canonical window [n+1, 4n+1]
/// (covering every residue b in [1, n]) or an explicit range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum M0Spec {
    Auto,
    Range(i64, i64),
}

#[derive(Debug, Clone)]
pub struct GridSpec {
    pub n_lo: usize,
    pub n_hi: usize,
    pub d_lo: i64,
    pub d_hi: i64,
    pub m0: M0Spec,
}

#[derive(Debug, Clone)]
pub struct SkippedCase {
    pub m0: i64,
    pub d: i64,
    pub n: usize,
    pub reason: String,
}

/// Enumerates all valid parameter sets in the grid, in lexicographic
/// (n, d, m0) order, with a log of skipped combinations.
pub fn grid_cases(spec: &GridSpec) -> (Vec<ASParams>, Vec<SkippedCase>) {
    let mut cases = Vec::new();
    let mut skipped = Vec::new();
    for n in spec.n_lo..=spec.n_hi {
        let (m0_lo, m0_hi) = match spec.m0 {
            M0Spec::Auto => (n as i64 + 1, 4 * n as i64 + 1),
            M0Spec::Range(a, b) => (a, b),
        };
        for d in spec.d_lo..=spec.d_hi {
            for m0 in m0_lo..=m0_hi {
                match ASParams::new(m0, d, n) {
                    Ok(p) => cases.push(p),
                    Err(e) => skipped.push(SkippedCase {
                        m0,
                        d,
                        n,
                        reason: e.to_string(),
                    }),
                }
            }
        }
    }
    (cases, skipped)
}

/// The acceptance grid: 2 <= n <= 6, 1 <= d <= 5, m0 in [n+1, 4n+1].
pub fn acceptance_grid() -> Vec<ASParams> {
    grid_cases(&GridSpec { n_lo: 2, n_hi: 6, d_lo: 1, d_hi: 5, m0: M0Spec::Auto }).0
}
