//! Closed-form Betti numbers of the ideal.

use crate::rescomplex::binomial;
use crate::semigroup::ASParams;

/// beta_s for 1 <= s <= n:
///   beta_1 = (n-b+1) + C(n,2),
///   beta_s = (n-b+2-s) C(n,s-1) + s C(n,s+1)   for 2 <= s < n-b+2,
///   beta_s = (s-1-n+b) C(n,s)   + s C(n,s+1)   for n-b+2 <= s <= n.
pub fn betti_formula(params: &ASParams, s: usize) -> i64 {
    let n = params.n;
    assert!((1..=n).contains(&s), "betti index {s} out of range 1..={n}");
    let nb = (n - params.b) as i64;
    let si = s as i64;
    if s == 1 {
        nb + 1 + binomial(n, 2)
    } else if si < nb + 2 {
        (nb + 2 - si) * binomial(n, si - 1) + si * binomial(n, si + 1)
    } else {
        (si - 1 - nb) * binomial(n, si) + si * binomial(n, si + 1)
    }
}

/// All Betti numbers beta_1..beta_n.
pub fn betti_all(params: &ASParams) -> Vec<i64> {
    (1..=params.n).map(|s| betti_formula(params, s)).collect()
}

/// 1 - beta_1 + beta_2 - ... must vanish (rank of the quotient is zero).
pub fn betti_alternating_sum(params: &ASParams) -> i64 {
    let mut acc = 1i64;
    for (k, b) in betti_all(params).iter().enumerate() {
        acc += if k % 2 == 0 { -b } else { *b };
    }
    acc
}
