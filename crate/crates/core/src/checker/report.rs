//! The full verification pass and its machine-readable report.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::generators::{colon_noncontainment, lemma12_identity};
use crate::minimalizer::{expected_pruned_dims, minimalize, MinimalComplex};
use crate::polyring::DEFAULT_PRIME;
use crate::rescomplex::{build_cone_complex, expected_cone_dim, Complex, SignFlip};
use crate::semigroup::ASParams;

use super::betti::{betti_all, betti_alternating_sum};
use super::exactness::{check_exactness, default_w_max, field_agreement_sample, RankPolicy};
use super::hilbert::hilbert_consistency;
use super::ExactnessTable;

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Exactness window; defaults to delta_0 + 3 m_n.
    pub w_max: Option<i64>,
    pub rank_policy: RankPolicy,
    /// Sampled rational-vs-prime rank comparisons (0 disables).
    pub agreement_samples: usize,
    pub agreement_seed: u64,
    /// Exactness is checked on cone and minimal complexes for n <= 3 and
    /// on the minimal one for n = 4; `force_exactness` overrides the size
    /// cutoff (used by small verification runs on loaded complexes).
    pub skip_exactness: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            w_max: None,
            rank_policy: RankPolicy::default(),
            agreement_samples: 8,
            agreement_seed: 0xA5,
            skip_exactness: false,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CancellationCount {
    pub s: usize,
    pub removed: i64,
    pub expected: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Lemma12Report {
    pub identities_checked: usize,
    pub identities_ok: bool,
    pub colon_checked: usize,
    pub colon_ok: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NamedExactness {
    pub complex: String,
    pub table: ExactnessTable,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldAgreementReport {
    pub prime: u64,
    pub samples: usize,
    pub ok: bool,
}

/// Everything the checker knows about one parameter set. Serializes
/// deterministically (fixed field order, sorted tables).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub params: ASParams,
    pub composition_cone: bool,
    pub homogeneity_cone: bool,
    pub composition_minimal: bool,
    pub minimality: bool,
    pub cone_dims: Vec<usize>,
    pub cone_dims_expected: Vec<i64>,
    pub cone_dims_ok: bool,
    pub betti_actual: Vec<i64>,
    pub betti_expected: Vec<i64>,
    pub betti_ok: bool,
    pub betti_alternating_sum: i64,
    pub top_position_empty: bool,
    pub cancellations: Vec<CancellationCount>,
    pub cancellations_ok: bool,
    pub sign_flips: Vec<SignFlip>,
    pub lemma12: Lemma12Report,
    pub exactness: Vec<NamedExactness>,
    pub exactness_w_max: i64,
    pub hilbert_ok: bool,
    pub field_agreement: FieldAgreementReport,
    pub pass: bool,
}

impl VerificationReport {
    /// First failing check, by name, when the report does not pass.
    pub fn first_failure(&self) -> Option<String> {
        if !self.composition_cone {
            return Some("composition (cone)".into());
        }
        if !self.homogeneity_cone {
            return Some("homogeneity (cone)".into());
        }
        if !self.composition_minimal {
            return Some("composition (minimal)".into());
        }
        if !self.minimality {
            return Some("minimality".into());
        }
        if !self.cone_dims_ok {
            return Some("cone dimension formula".into());
        }
        if !self.betti_ok {
            return Some("Betti numbers".into());
        }
        if self.betti_alternating_sum != 0 {
            return Some("Betti alternating sum".into());
        }
        if !self.top_position_empty {
            return Some("top position nonzero after pruning".into());
        }
        if !self.cancellations_ok {
            return Some("cancellation counts".into());
        }
        if !self.lemma12.identities_ok {
            return Some("colon identity".into());
        }
        if !self.lemma12.colon_ok {
            return Some("colon non-containment".into());
        }
        for e in &self.exactness {
            if !e.table.all_pass {
                return Some(format!("graded exactness ({})", e.complex));
            }
        }
        if !self.hilbert_ok {
            return Some("Hilbert numerator".into());
        }
        if !self.field_agreement.ok {
            return Some("field agreement".into());
        }
        None
    }
}

/// Builds the cone and the minimal resolution for `params` and runs every
/// check. Returns the report; `report.pass` is the overall verdict.
pub fn run_verification(params: &ASParams, opts: VerifyOptions) -> Result<VerificationReport> {
    let cone = build_cone_complex(params)?;
    let minimal = minimalize(&cone)?;
    verify_pair(params, &cone, &minimal, opts)
}

/// Runs the checks against an already built pair.
pub fn verify_pair(
    params: &ASParams,
    cone: &Complex,
    minimal: &MinimalComplex,
    opts: VerifyOptions,
) -> Result<VerificationReport> {
    let n = params.n;
    let composition_cone = cone.check_composition().is_ok();
    let homogeneity_cone = cone.check_homogeneity().is_ok();
    let composition_minimal = minimal.check_composition().is_ok();
    let minimality = minimal.check_minimality().is_ok();

    let cone_dims = cone.dims();
    let cone_dims_expected: Vec<i64> =
        (0..=cone.len()).map(|s| expected_cone_dim(params, s)).collect();
    let cone_dims_ok = cone_dims
        .iter()
        .zip(&cone_dims_expected)
        .all(|(a, e)| *a as i64 == *e);

    let betti_expected = betti_all(params);
    let betti_actual: Vec<i64> = (1..=n).map(|s| minimal.modules[s].rank() as i64).collect();
    let betti_ok = betti_actual == betti_expected;
    let top_position_empty = minimal.modules[n + 1].rank() == 0;

    let cancellations: Vec<CancellationCount> = (2..=n + 1)
        .map(|s| {
            let removed = minimal
                .provenance
                .iter()
                .filter(|st| st.s == s || st.s + 1 == s)
                .count() as i64;
            CancellationCount { s, removed, expected: expected_pruned_dims(params, s) }
        })
        .collect();
    let cancellations_ok = cancellations.iter().all(|c| c.removed == c.expected);

    let mut identities_checked = 0;
    let mut identities_ok = true;
    for h in 0..(n - params.b) {
        for i in 0..n {
            identities_checked += 1;
            identities_ok &= lemma12_identity(params, i, h).is_ok();
        }
    }
    let mut colon_checked = 0;
    let mut colon_ok = true;
    if n <= 4 {
        for h in 0..(n - params.b) {
            colon_checked += 1;
            colon_ok &= colon_noncontainment(params, h).unwrap_or(false);
        }
    }

    let w_max = opts.w_max.unwrap_or_else(|| default_w_max(params));
    let mut exactness = Vec::new();
    if !opts.skip_exactness {
        if n <= 3 {
            exactness.push(NamedExactness {
                complex: "cone".into(),
                table: check_exactness(cone.view(), w_max, opts.rank_policy),
            });
        }
        if n <= 4 {
            exactness.push(NamedExactness {
                complex: "minimal".into(),
                table: check_exactness(minimal.view(), w_max, opts.rank_policy),
            });
        }
    }

    let hilbert_ok = hilbert_consistency(minimal, w_max);

    let prime = match opts.rank_policy {
        RankPolicy::Hybrid { prime, .. } => prime,
        RankPolicy::Force(crate::polyring::FieldChoice::Prime(p)) => p,
        _ => DEFAULT_PRIME,
    };
    let field_agreement = if opts.agreement_samples > 0 {
        let (samples, ok) = field_agreement_sample(
            minimal.view(),
            w_max.min(default_w_max(params)),
            opts.agreement_samples,
            opts.agreement_seed,
            prime,
        );
        FieldAgreementReport { prime, samples, ok }
    } else {
        FieldAgreementReport { prime, samples: 0, ok: true }
    };

    let mut report = VerificationReport {
        schema: 1,
        params: params.clone(),
        composition_cone,
        homogeneity_cone,
        composition_minimal,
        minimality,
        cone_dims,
        cone_dims_expected,
        cone_dims_ok,
        betti_actual,
        betti_expected,
        betti_ok,
        betti_alternating_sum: betti_alternating_sum(params),
        top_position_empty,
        cancellations,
        cancellations_ok,
        sign_flips: minimal.sign_flips.clone(),
        lemma12: Lemma12Report { identities_checked, identities_ok, colon_checked, colon_ok },
        exactness,
        exactness_w_max: w_max,
        hilbert_ok,
        field_agreement,
        pass: false,
    };
    report.pass = report.first_failure().is_none();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_verification_345() {
        let p = ASParams::new(3, 1, 2).unwrap();
        let r = run_verification(&p, VerifyOptions::default()).unwrap();
        assert!(r.pass, "failure: {:?}", r.first_failure());
        assert_eq!(r.betti_actual, vec![3, 2]);
        assert_eq!(r.exactness.len(), 2);
    }

    #[test]
    fn full_verification_7_9_11_13() {
        let p = ASParams::new(7, 2, 3).unwrap();
        let r = run_verification(&p, VerifyOptions::default()).unwrap();
        assert!(r.pass, "failure: {:?}", r.first_failure());
    }

    #[test]
    fn report_serializes_deterministically() {
        let p = ASParams::new(4, 1, 2).unwrap();
        let r1 = run_verification(&p, VerifyOptions::default()).unwrap();
        let r2 = run_verification(&p, VerifyOptions::default()).unwrap();
        let s1 = serde_json::to_string_pretty(&r1).unwrap();
        let s2 = serde_json::to_string_pretty(&r2).unwrap();
        assert_eq!(s1, s2);
    }
}
