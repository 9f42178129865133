//! Basis bookkeeping for the free summands of the cone complex.

use std::collections::HashMap;
use std::fmt;

use crate::semigroup::ASParams;

/// A tagged generator of a free summand. Wedge indices are 1-based
/// (e_1..e_n); variables are 0-based (x_0..x_n).
///
/// * `Unit { shifted: false }` is the generator of E_0 = P (weight 0);
///   `Unit { shifted: true }` is the generator of E_0(-delta_0).
/// * `En { indices: T, v0, v1 }` with |T| = t and v0 + v1 = t - 2 is the
///   element e_T (x) lam0^v0 lam1^v1 of the Eagon-Northcott module
///   E_{t-1} (unshifted, homological position t - 1) or of the shifted
///   copy E_{t-2}(-delta_0) (homological position t).
/// * `Koszul { level: h, indices: T }` is e^(h)_T in K_{|T|}(-delta_h);
///   empty T is the Koszul unit eps_h.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElement {
    Unit { shifted: bool },
    En { shifted: bool, indices: Vec<usize>, v0: u32, v1: u32 },
    Koszul { level: usize, indices: Vec<usize> },
}

impl BasisElement {
    /// Weight of the generator, using the homogeneous assignment: the
    /// Koszul summands carry no lambda correction, the EN summands carry
    /// -(|T|-1)d + v1*d, and shifts add delta.
    pub fn weight(&self, params: &ASParams) -> i64 {
        match self {
            BasisElement::Unit { shifted } => {
                if *shifted {
                    params.delta[0]
                } else {
                    0
                }
            }
            BasisElement::En { shifted, indices, v0: _, v1 } => {
                let sum: i64 = indices.iter().map(|&i| params.m[i]).sum();
                let base = sum - (indices.len() as i64 - 1) * params.d + *v1 as i64 * params.d;
                if *shifted {
                    params.delta[0] + base
                } else {
                    base
                }
            }
            BasisElement::Koszul { level, indices } => {
                let sum: i64 = indices.iter().map(|&i| params.m[i]).sum();
                params.delta[*level] + sum
            }
        }
    }

    /// Deterministic order inside a module: Koszul levels descending first
    /// (matching the block layout of the differentials), then the shifted
    /// EN copy, then the unshifted one; wedges lex, lambda exponent last.
    fn sort_key(&self) -> (u8, i64, Vec<usize>, u32) {
        match self {
            BasisElement::Koszul { level, indices } => {
                (0, -(*level as i64), indices.clone(), 0)
            }
            BasisElement::Unit { shifted: true } => (1, 0, Vec::new(), 0),
            BasisElement::En { shifted: true, indices, v0, .. } => {
                (1, 0, indices.clone(), *v0)
            }
            BasisElement::Unit { shifted: false } => (2, 0, Vec::new(), 0),
            BasisElement::En { shifted: false, indices, v0, .. } => {
                (2, 0, indices.clone(), *v0)
            }
        }
    }

    fn assert_valid(&self, n: usize, num_g: usize) {
        match self {
            BasisElement::Unit { .. } => {}
            BasisElement::En { indices, v0, v1, .. } => {
                assert!(indices.len() >= 2, "EN wedge needs at least two indices");
                assert!(indices.windows(2).all(|w| w[0] < w[1]), "wedge not increasing");
                assert!(*indices.last().unwrap() <= n, "wedge index out of range");
                assert!(indices[0] >= 1, "wedge indices are 1-based");
                assert_eq!(
                    (*v0 + *v1) as usize,
                    indices.len() - 2,
                    "lambda degree must be |T| - 2"
                );
            }
            BasisElement::Koszul { level, indices } => {
                assert!(*level >= 1 && *level < num_g, "Koszul level out of range");
                assert!(indices.windows(2).all(|w| w[0] < w[1]), "wedge not increasing");
                assert!(indices.last().is_none_or(|&l| l <= n));
                assert!(indices.first().is_none_or(|&f| f >= 1));
            }
        }
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn wedge(f: &mut fmt::Formatter<'_>, t: &[usize], sup: &str) -> fmt::Result {
            let parts: Vec<String> = t.iter().map(|i| format!("e{sup}{i}")).collect();
            write!(f, "{}", parts.join("^"))
        }
        match self {
            BasisElement::Unit { shifted: false } => write!(f, "eps"),
            BasisElement::Unit { shifted: true } => write!(f, "eps(0)"),
            BasisElement::En { shifted, indices, v0, v1 } => {
                wedge(f, indices, if *shifted { "(0)" } else { "" })?;
                if *v0 > 0 || *v1 > 0 {
                    write!(f, "*l0^{v0}*l1^{v1}")?;
                }
                Ok(())
            }
            BasisElement::Koszul { level, indices } => {
                if indices.is_empty() {
                    write!(f, "eps({level})")
                } else {
                    wedge(f, indices, &format!("({level})"))
                }
            }
        }
    }
}

/// An ordered free module with one weight per basis element.
#[derive(Debug, Clone)]
pub struct GradedFreeModule {
    pub basis: Vec<BasisElement>,
    pub weights: Vec<i64>,
    index: HashMap<BasisElement, usize>,
}

impl GradedFreeModule {
    pub fn new(params: &ASParams, mut basis: Vec<BasisElement>) -> Self {
        for b in &basis {
            b.assert_valid(params.n, params.num_g());
        }
        basis.sort_by_key(|b| b.sort_key());
        let weights = basis.iter().map(|b| b.weight(params)).collect();
        let index = basis.iter().enumerate().map(|(k, b)| (b.clone(), k)).collect();
        GradedFreeModule { basis, weights, index }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn position(&self, b: &BasisElement) -> Option<usize> {
        self.index.get(b).copied()
    }
}

/// All strictly increasing k-subsets of {1..n}, lexicographic.
pub fn wedges(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 1, &mut cur, &mut out);
    out
}

/// Basis of the Eagon-Northcott module E_s (unshifted, position s).
pub fn en_basis(params: &ASParams, s: usize) -> Vec<BasisElement> {
    let n = params.n;
    if s == 0 {
        return vec![BasisElement::Unit { shifted: false }];
    }
    if s > n - 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for t in wedges(n, s + 1) {
        for v0 in 0..=(s as u32 - 1) {
            out.push(BasisElement::En {
                shifted: false,
                indices: t.clone(),
                v0,
                v1: s as u32 - 1 - v0,
            });
        }
    }
    out
}

/// Basis of the shifted copy E_{s-1}(-delta_0) sitting at position s.
pub fn en_shifted_basis(params: &ASParams, s: usize) -> Vec<BasisElement> {
    let n = params.n;
    if s == 0 || s > n {
        return Vec::new();
    }
    if s == 1 {
        return vec![BasisElement::Unit { shifted: true }];
    }
    let mut out = Vec::new();
    for t in wedges(n, s) {
        for v0 in 0..=(s as u32 - 2) {
            out.push(BasisElement::En {
                shifted: true,
                indices: t.clone(),
                v0,
                v1: s as u32 - 2 - v0,
            });
        }
    }
    out
}

/// Basis of K_s(-delta_h): wedges of size s at level h; s = 0 is eps_h.
pub fn koszul_basis(params: &ASParams, s: usize, h: usize) -> Vec<BasisElement> {
    if s > params.n {
        return Vec::new();
    }
    wedges(params.n, s)
        .into_iter()
        .map(|t| BasisElement::Koszul { level: h, indices: t })
        .collect()
}

/// Basis of F_s^{(h)}: Koszul levels h..1 (wedge size s-1), the shifted EN
/// copy, then E_s. Position 0 is the ring itself.
pub fn cone_position_basis(params: &ASParams, s: usize, h: usize) -> Vec<BasisElement> {
    if s == 0 {
        return vec![BasisElement::Unit { shifted: false }];
    }
    let mut out = Vec::new();
    for level in (1..=h).rev() {
        out.extend(koszul_basis(params, s - 1, level));
    }
    out.extend(en_shifted_basis(params, s));
    out.extend(en_basis(params, s));
    out
}
