//! Property tests for the algebraic substrate: ring axioms, graded
//! structure, membership closure, and the wedge identities on random
//! inputs.

use proptest::prelude::*;

use asres::checker::{lemma24_part1, lemma24_part2};
use asres::polyring::{parse_poly, Monomial, QPoly, Rat};
use asres::rescomplex::wedges;
use asres::ASParams;

const NVARS: usize = 4;

fn arb_monomial() -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0u32..4, NVARS).prop_map(Monomial::new)
}

fn arb_coeff() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rat::from_frac(n, d))
}

fn arb_poly() -> impl Strategy<Value = QPoly> {
    proptest::collection::vec((arb_monomial(), arb_coeff()), 0..6)
        .prop_map(|terms| QPoly::from_terms(NVARS, terms))
}

/// Random valid parameter sets with n in 2..=5.
fn arb_params() -> impl Strategy<Value = ASParams> {
    (2usize..=5, 1i64..=5, 0i64..=12).prop_filter_map("gcd constraint", |(n, d, off)| {
        ASParams::new(n as i64 + 1 + off, d, n).ok()
    })
}

proptest! {
    #[test]
    fn add_commutes(a in arb_poly(), b in arb_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn mul_commutes(a in arb_poly(), b in arb_poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn mul_associates(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn mul_distributes(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn sub_is_add_neg(a in arb_poly(), b in arb_poly()) {
        prop_assert_eq!(&a - &b, &a + &(-&b));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn text_round_trip(a in arb_poly()) {
        let text = a.to_string();
        let back = parse_poly(&text, NVARS).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn homogeneous_products_add_degrees(
        ma in arb_monomial(), mb in arb_monomial(),
        ca in arb_coeff(), cb in arb_coeff(),
    ) {
        // single-term polynomials are homogeneous of their monomial degree
        let weights = [7i64, 9, 11, 13];
        let a = QPoly::from_terms(NVARS, [(ma, ca)]);
        let b = QPoly::from_terms(NVARS, [(mb, cb)]);
        prop_assume!(!a.is_zero() && !b.is_zero());
        let p = &a * &b;
        prop_assume!(!p.is_zero());
        let da = a.weighted_degree(&weights).unwrap();
        let db = b.weighted_degree(&weights).unwrap();
        prop_assert_eq!(p.weighted_degree(&weights).unwrap(), da + db);
    }

    #[test]
    fn rational_and_prime_images_agree(a in arb_poly(), b in arb_poly()) {
        let p = 32003;
        let prod = (&a * &b).to_fp(p);
        let imaged = &a.to_fp(p) * &b.to_fp(p);
        prop_assert_eq!(prod, imaged);
    }

    #[test]
    fn semigroup_closed_under_addition(
        params in arb_params(),
        w1 in 0i64..200,
        w2 in 0i64..200,
    ) {
        let table = params.membership_table(w1 + w2);
        if table[w1 as usize] && table[w2 as usize] {
            prop_assert!(table[(w1 + w2) as usize]);
        }
    }

    #[test]
    fn frobenius_bound(params in arb_params(), off in 0i64..60) {
        let w = (params.m0 - 1) * params.m[params.n] + off;
        prop_assert!(params.contains(w).unwrap());
    }

    #[test]
    fn contraction_wedge_identity_random(
        params in arb_params(),
        q in 0usize..=1,
        pick in any::<proptest::sample::Index>(),
        k_pick in any::<proptest::sample::Index>(),
    ) {
        let n = params.n;
        let mut all = Vec::new();
        for size in 1..=n {
            all.extend(wedges(n, size));
        }
        let w = &all[pick.index(all.len())];
        let k = 1 + k_pick.index(n); // may land inside W on purpose
        prop_assert!(lemma24_part1(&params, q, w, k));
    }

    #[test]
    fn comparison_map_recursion_random(
        params in arb_params(),
        pick in any::<proptest::sample::Index>(),
        h_pick in any::<proptest::sample::Index>(),
    ) {
        let n = params.n;
        prop_assume!(n > params.b); // need at least one Koszul level
        let mut all = Vec::new();
        for size in 2..=n {
            all.extend(wedges(n, size));
        }
        let w = &all[pick.index(all.len())];
        let h = 1 + h_pick.index(n - params.b);
        prop_assert!(lemma24_part2(&params, h, w));
    }
}
