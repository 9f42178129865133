//! Symbolic identities satisfied by the contraction and comparison maps.
//!
//! Both are wedge-level statements checked as formal sums with polynomial
//! coefficients. Part 2 holds for wedge sizes 2 <= s <= n (for s = 1 both
//! phi terms vanish by convention while the left side does not, so the
//! statement starts at s = 2).

use std::collections::BTreeMap;

use crate::generators::g_minor;
use crate::polyring::{QPoly, Rat};
use crate::rescomplex::{delta, normalize_wedge, phi, BasisElement, FormalSum};
use crate::semigroup::ASParams;

type WedgeSum = BTreeMap<Vec<usize>, QPoly>;

fn wedge_add(sum: &mut WedgeSum, key: Vec<usize>, p: QPoly) {
    if p.is_zero() {
        return;
    }
    match sum.entry(key) {
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

/// Contraction versus wedge append:
/// Delta_q(W ^ e_k) = Delta_q(W) ^ e_k + (-1)^{|W|} x_{k+q-1} W,
/// valid also when k already occurs in W (both sides collapse to zero).
pub fn lemma24_part1(params: &ASParams, q: usize, w: &[usize], k: usize) -> bool {
    let nv = params.nvars();
    let mut lhs = WedgeSum::new();
    let mut appended = w.to_vec();
    appended.push(k);
    if let Some((sign, sorted)) = normalize_wedge(appended) {
        for (coeff, rest) in delta(params, q, &sorted) {
            wedge_add(&mut lhs, rest, coeff.scale(&Rat::from_i64(sign)));
        }
    }

    let mut rhs = WedgeSum::new();
    for (coeff, rest) in delta(params, q, w) {
        let mut with_k = rest.clone();
        with_k.push(k);
        if let Some((sign, sorted)) = normalize_wedge(with_k) {
            wedge_add(&mut rhs, sorted, coeff.scale(&Rat::from_i64(sign)));
        }
    }
    let parity = if w.len().is_multiple_of(2) { 1 } else { -1 };
    wedge_add(
        &mut rhs,
        w.to_vec(),
        QPoly::var(k + q - 1, nv).scale(&Rat::from_i64(parity)),
    );
    lhs == rhs
}

/// Applies the Eagon-Northcott differential d_s to a formal sum supported
/// on unshifted EN elements of E_s (s >= 2), landing in E_{s-1}.
fn en_apply(params: &ASParams, sum: &FormalSum) -> FormalSum {
    let mut out = FormalSum::zero();
    for (b, p) in sum.iter() {
        let BasisElement::En { shifted: false, indices, v0, v1 } = b else {
            panic!("EN differential applied to non-EN element {b}");
        };
        if indices.len() == 2 {
            out.add(
                BasisElement::Unit { shifted: false },
                &crate::generators::pencil_minor(params, indices[0], indices[1]) * p,
            );
            continue;
        }
        if *v0 >= 1 {
            for (coeff, rest) in delta(params, 0, indices) {
                out.add(
                    BasisElement::En { shifted: false, indices: rest, v0: v0 - 1, v1: *v1 },
                    &coeff * p,
                );
            }
        }
        if *v1 >= 1 {
            for (coeff, rest) in delta(params, 1, indices) {
                out.add(
                    BasisElement::En { shifted: false, indices: rest, v0: *v0, v1: v1 - 1 },
                    &coeff * p,
                );
            }
        }
    }
    out
}

/// The comparison-map recursion, for 2 <= s <= n, 1 <= h <= n - b:
/// d_s(phi_s^{(h)}(W)) = -phi_{s-1}^{(h-1)}(Delta_0 W)
///                       + phi_{s-1}^{(h)}(Delta_1 W)
///                       + (-1)^{s+h} g_0 W (x) lam0^{h-1} lam1^{s-h-1},
/// with phi^{(0)} = 0 and negative lambda exponents dropped.
pub fn lemma24_part2(params: &ASParams, h: usize, w: &[usize]) -> bool {
    let s = w.len();
    assert!((2..=params.n).contains(&s), "part 2 needs 2 <= s <= n");
    assert!(h >= 1 && h + params.b <= params.n);

    let lhs = en_apply(params, &phi(params, h, s, w));

    let mut rhs = FormalSum::zero();
    for (coeff, rest) in delta(params, 0, w) {
        if h >= 2 {
            rhs.add_sum(&phi(params, h - 1, s - 1, &rest).scale(&-coeff));
        }
    }
    for (coeff, rest) in delta(params, 1, w) {
        rhs.add_sum(&phi(params, h, s - 1, &rest).scale(&coeff));
    }
    if s > h {
        let sign = if (s + h).is_multiple_of(2) { 1 } else { -1 };
        rhs.add(
            BasisElement::En {
                shifted: false,
                indices: w.to_vec(),
                v0: (h - 1) as u32,
                v1: (s - h - 1) as u32,
            },
            g_minor(params, 0).scale(&Rat::from_i64(sign)),
        );
    }
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rescomplex::wedges;

    #[test]
    fn part1_exhaustive_small() {
        for (m0, d, n) in [(3i64, 1i64, 2usize), (4, 1, 3), (7, 2, 3)] {
            let p = ASParams::new(m0, d, n).unwrap();
            for q in 0..=1 {
                for size in 1..=n {
                    for w in wedges(n, size) {
                        for k in 1..=n {
                            assert!(
                                lemma24_part1(&p, q, &w, k),
                                "part 1 fails at q={q}, W={w:?}, k={k} in <{m0},{d},{n}>"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn part2_exhaustive_small() {
        for (m0, d, n) in [(4i64, 1i64, 3usize), (5, 2, 3), (5, 1, 4), (7, 2, 4)] {
            let p = ASParams::new(m0, d, n).unwrap();
            for h in 1..=(n - p.b) {
                for s in 2..=n {
                    for w in wedges(n, s) {
                        assert!(
                            lemma24_part2(&p, h, &w),
                            "part 2 fails at h={h}, W={w:?} in <{m0},{d},{n}>"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn part1_holds_with_repeated_index() {
        let p = ASParams::new(4, 1, 3).unwrap();
        assert!(lemma24_part1(&p, 0, &[1, 3], 3));
        assert!(lemma24_part1(&p, 1, &[2], 2));
    }
}
