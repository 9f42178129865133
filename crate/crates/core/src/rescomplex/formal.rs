//! The maps of the construction as formal sums: the contractions Delta_q,
//! the comparison maps phi and psi, and wedge normalization.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::polyring::{QPoly, Rat};
use crate::semigroup::ASParams;

use super::basis::BasisElement;

/// A finite formal combination of basis elements with polynomial
/// coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FormalSum {
    terms: BTreeMap<BasisElement, QPoly>,
}

impl FormalSum {
    pub fn zero() -> Self {
        FormalSum::default()
    }

    pub fn add(&mut self, b: BasisElement, p: QPoly) {
        if p.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &p;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_sum(&mut self, other: &FormalSum) {
        for (b, p) in &other.terms {
            self.add(b.clone(), p.clone());
        }
    }

    pub fn scale(&self, c: &QPoly) -> FormalSum {
        let mut out = FormalSum::zero();
        for (b, p) in &self.terms {
            out.add(b.clone(), p * c);
        }
        out
    }

    pub fn negate(&self) -> FormalSum {
        let mut out = FormalSum::zero();
        for (b, p) in &self.terms {
            out.add(b.clone(), -p);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisElement, &QPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Sorts wedge indices into strictly increasing order. Returns the
/// permutation sign and the sorted wedge, or None if an index repeats.
pub fn normalize_wedge(mut idx: Vec<usize>) -> Option<(i64, Vec<usize>)> {
    let mut sign = 1i64;
    // insertion sort, counting inversions
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((sign, idx))
    }
}

/// The contraction Delta_q, q in {0, 1}:
/// Delta_q(e_{i_1}^...^e_{i_s}) = sum_j (-1)^{j+1} x_{i_j+q-1} e_{..^hat^..}.
/// Returns (coefficient, smaller wedge) pairs; for |W| = 1 the wedge is
/// empty (the unit of the target).
pub fn delta(params: &ASParams, q: usize, w: &[usize]) -> Vec<(QPoly, Vec<usize>)> {
    assert!(q <= 1, "q must be 0 or 1");
    assert!(!w.is_empty(), "delta of the empty wedge");
    let nv = params.nvars();
    w.iter()
        .enumerate()
        .map(|(j, &i)| {
            let var = i + q - 1; // e_i carries x_{i+q-1}; indices are 1-based
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let coeff = QPoly::var(var, nv).scale(&Rat::from_i64(sign));
            let rest: Vec<usize> = w.iter().copied().filter(|&k| k != i).collect();
            (coeff, rest)
        })
        .collect()
}

/// phi_s^{(h)}: K_s(-delta_h) -> E_s,
///   W |-> sum_{k=1}^{h} (-1)^k W ^ (x_n^a e_{n+k-h} - x_0^mu e_{n-b+k-h})
///          (x) lam0^{k-1} lam1^{s-k},
/// dropping terms with negative lambda exponents and normalizing wedges.
pub fn phi(params: &ASParams, h: usize, s: usize, w: &[usize]) -> FormalSum {
    assert!(h >= 1 && h + params.b <= params.n, "phi level out of range");
    assert_eq!(w.len(), s, "wedge size must match s");
    let n = params.n;
    let nv = params.nvars();
    let mut out = FormalSum::zero();
    let xna = QPoly::var_pow(n, params.a as u32, nv);
    let x0mu = QPoly::var_pow(0, params.mu as u32, nv);
    for k in 1..=h.min(s) {
        let v0 = (k - 1) as u32;
        let v1 = (s - k) as u32;
        let ksign = if k % 2 == 0 { 1 } else { -1 };
        let parts = [(n + k - h, &xna, ksign), (n - params.b + k - h, &x0mu, -ksign)];
        for (vec_index, coeff_base, term_sign) in parts {
            let mut idx = w.to_vec();
            idx.push(vec_index);
            // a repeated index kills the wedge; size s+1 <= n is automatic
            let Some((wsign, sorted)) = normalize_wedge(idx) else {
                continue;
            };
            out.add(
                BasisElement::En { shifted: false, indices: sorted, v0, v1 },
                coeff_base.scale(&Rat::from_i64(term_sign * wsign)),
            );
        }
    }
    out
}

/// Which printed block of psi a sign flip applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PsiBlock {
    /// The Delta_0 component (into the next Koszul level down, or eps(0)).
    Delta0,
    /// The shifted-EN component W^(0) (x) lam0^{h-1} lam1^{s-h-1}.
    Middle,
    /// The phi component into E_s.
    Phi,
}

/// A sign flip applied to one block of one psi map to restore d о d = 0,
/// recorded in the build report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignFlip {
    pub h: usize,
    pub s: usize,
    pub block: PsiBlock,
}

/// psi_s^{(h)}: K_s(-delta_h) -> F_s^{(h-1)}, following the printed case
/// split. `flips` multiplies the named blocks by -1; the builder resolves
/// the effective signs with the chain-map check.
pub fn psi(
    params: &ASParams,
    h: usize,
    s: usize,
    w: &[usize],
    flips: &[PsiBlock],
) -> FormalSum {
    assert!(h >= 1 && h + params.b <= params.n, "psi level out of range");
    assert_eq!(w.len(), s, "wedge size must match s");
    let nv = params.nvars();
    let sgn = |block: PsiBlock| if flips.contains(&block) { -1i64 } else { 1 };
    let mut out = FormalSum::zero();

    if s == 0 {
        // multiplication by g_h into F_0 = P
        out.add(
            BasisElement::Unit { shifted: false },
            crate::generators::g_minor(params, h),
        );
        return out;
    }

    // Delta_0 block: for h = 1 it only exists at s = 1 (landing on eps(0));
    // for h >= 2 it lands in K_{s-1}(-delta_{h-1}). Printed signs: + for
    // (s=1, h=1), - for (s=1, h>=2), (-1)^{s-1} for (s>=2, h>=2).
    if h == 1 {
        if s == 1 {
            let var = w[0] - 1;
            out.add(
                BasisElement::Unit { shifted: true },
                QPoly::var(var, nv).scale(&Rat::from_i64(sgn(PsiBlock::Delta0))),
            );
        }
    } else {
        let printed = if s == 1 {
            -1
        } else if s % 2 == 1 {
            1
        } else {
            -1
        };
        let block_sign = printed * sgn(PsiBlock::Delta0);
        for (coeff, rest) in delta(params, 0, w) {
            let target = if rest.is_empty() {
                BasisElement::Koszul { level: h - 1, indices: vec![] }
            } else {
                BasisElement::Koszul { level: h - 1, indices: rest }
            };
            out.add(target, coeff.scale(&Rat::from_i64(block_sign)));
        }
    }

    // middle block: (-1)^h W^(0) (x) lam0^{h-1} lam1^{s-h-1}, present only
    // with non-negative lambda exponents (so s >= h + 1, forcing s >= 2)
    if s > h {
        let printed = if h.is_multiple_of(2) { 1 } else { -1 };
        let block_sign = printed * sgn(PsiBlock::Middle);
        out.add(
            BasisElement::En {
                shifted: true,
                indices: w.to_vec(),
                v0: (h - 1) as u32,
                v1: (s - h - 1) as u32,
            },
            QPoly::constant(nv, Rat::from_i64(block_sign)),
        );
    }

    // phi block
    let phi_sum = phi(params, h, s, w);
    if sgn(PsiBlock::Phi) < 0 {
        out.add_sum(&phi_sum.negate());
    } else {
        out.add_sum(&phi_sum);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    fn p345() -> ASParams {
        ASParams::new(3, 1, 2).unwrap()
    }

    #[test]
    fn normalize_wedges() {
        assert_eq!(normalize_wedge(vec![1, 3]), Some((1, vec![1, 3])));
        assert_eq!(normalize_wedge(vec![3, 1]), Some((-1, vec![1, 3])));
        assert_eq!(normalize_wedge(vec![2, 1, 3]), Some((-1, vec![1, 2, 3])));
        assert_eq!(normalize_wedge(vec![2, 2]), None);
        assert_eq!(normalize_wedge(vec![]), Some((1, vec![])));
    }

    #[test]
    fn delta_examples() {
        let p = ASParams::new(4, 1, 3).unwrap();
        // Delta_1(e1^e3) = x1 e3 - x3 e1
        let d = delta(&p, 1, &[1, 3]);
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].0, parse_poly("x1", 4).unwrap());
        assert_eq!(d[0].1, vec![3]);
        assert_eq!(d[1].0, parse_poly("-x3", 4).unwrap());
        assert_eq!(d[1].1, vec![1]);
        // Delta_0(e2) = x1 eps
        let d0 = delta(&p, 0, &[2]);
        assert_eq!(d0[0].0, parse_poly("x1", 4).unwrap());
        assert!(d0[0].1.is_empty());
        // Delta_0(e1^e2^e3) = x0 e2^e3 - x1 e1^e3 + x2 e1^e2
        let d3 = delta(&p, 0, &[1, 2, 3]);
        assert_eq!(d3[0].0, parse_poly("x0", 4).unwrap());
        assert_eq!(d3[0].1, vec![2, 3]);
        assert_eq!(d3[1].0, parse_poly("-x1", 4).unwrap());
        assert_eq!(d3[1].1, vec![1, 3]);
        assert_eq!(d3[2].0, parse_poly("x2", 4).unwrap());
        assert_eq!(d3[2].1, vec![1, 2]);
    }

    #[test]
    fn phi_h1_s1() {
        // <3,4,5>: phi_1^{(1)}(e_i) = e_i ^ (x0^2 e1 - x2 e2), so on e_1 the
        // e1-part dies and only -x2 e1^e2 survives
        let p = p345();
        let f = phi(&p, 1, 1, &[1]);
        let mut expect = FormalSum::zero();
        expect.add(
            BasisElement::En { shifted: false, indices: vec![1, 2], v0: 0, v1: 0 },
            parse_poly("-x2", 3).unwrap(),
        );
        assert_eq!(f, expect);
    }

    #[test]
    fn phi_repeated_wedge_collapses() {
        // W already contains e_n: the x_n^a term of the k = h summand dies
        let p = ASParams::new(4, 1, 3).unwrap(); // n = 3, b = 1
        let f = phi(&p, 1, 1, &[3]);
        // e3 ^ (x3 e3 - x0^2 e2): only the x0^2 part survives, negated twice:
        // -(- x0^2 e3^e2) = -x0^2 e2^e3 after normalization sign
        let mut expect = FormalSum::zero();
        expect.add(
            BasisElement::En { shifted: false, indices: vec![2, 3], v0: 0, v1: 0 },
            parse_poly("-x0^2", 4).unwrap(),
        );
        assert_eq!(f, expect);
    }

    #[test]
    fn psi_1_1_matches_printed_form() {
        // <3,4,5>: psi_1^{(1)}(e_1^{(1)}) = x0 eps(0) - x2 e1^e2
        let p = p345();
        let f = psi(&p, 1, 1, &[1], &[]);
        let mut expect = FormalSum::zero();
        expect.add(BasisElement::Unit { shifted: true }, parse_poly("x0", 3).unwrap());
        expect.add(
            BasisElement::En { shifted: false, indices: vec![1, 2], v0: 0, v1: 0 },
            parse_poly("-x2", 3).unwrap(),
        );
        assert_eq!(f, expect);
    }

    #[test]
    fn psi_2_1_is_unit_on_shifted_summand() {
        // <3,4,5>: psi_2^{(1)}(e1^(1)^e2^(1)) = -e1^(0)^e2^(0) (phi lands in
        // E_2 = 0 when n = 2)
        let p = p345();
        let f = psi(&p, 1, 2, &[1, 2], &[]);
        let mut expect = FormalSum::zero();
        expect.add(
            BasisElement::En { shifted: true, indices: vec![1, 2], v0: 0, v1: 0 },
            parse_poly("-1", 3).unwrap(),
        );
        assert_eq!(f, expect);
    }

    #[test]
    fn psi_0_multiplies_by_g() {
        let p = p345();
        let f = psi(&p, 1, 0, &[], &[]);
        let mut expect = FormalSum::zero();
        expect.add(BasisElement::Unit { shifted: false }, parse_poly("-x0^3 + x1*x2", 3).unwrap());
        assert_eq!(f, expect);
    }

    #[test]
    fn phi_deep_level_keeps_only_first_summand() {
        // h = 2, s = 1: only k = 1 survives the lambda bound, giving
        // -W ^ (x_n^a e_{n-1} - x_0^mu e_{n-b-1})
        let p = ASParams::new(4, 1, 3).unwrap(); // n = 3, b = 1, mu = 2
        let f = phi(&p, 2, 1, &[1]);
        let mut expect = FormalSum::zero();
        // -e1 ^ (x3 e2 - x0^2 e1): the e1 part dies
        expect.add(
            BasisElement::En { shifted: false, indices: vec![1, 2], v0: 0, v1: 0 },
            parse_poly("-x3", 4).unwrap(),
        );
        assert_eq!(f, expect);
    }

    #[test]
    fn psi_middle_term_dropped_when_s_at_most_h() {
        // s = 1 < h + 1 always: no shifted-EN component for s = 1, h = 2
        let p = ASParams::new(4, 1, 3).unwrap(); // n - b = 2
        let f = psi(&p, 2, 1, &[2], &[]);
        for (b, _) in f.iter() {
            assert!(
                !matches!(b, BasisElement::En { shifted: true, .. }),
                "unexpected shifted-EN component {b}"
            );
        }
        // printed Delta_0 sign for (s=1, h>=2) is minus: -x1 eps(1)
        let eps1 = BasisElement::Koszul { level: 1, indices: vec![] };
        let coeff = f.iter().find(|(b, _)| **b == eps1).map(|(_, p)| p.clone()).unwrap();
        assert_eq!(coeff, parse_poly("-x1", 4).unwrap());
    }
}
