//! The minimal generating set of the defining ideal: the 2x2 minors f of
//! the pencil matrix A and the minors g_h of A' through its first column.

use serde::Serialize;

use crate::checker::membership::graded_membership;
use crate::error::{Error, Result};
use crate::polyring::QPoly;
use crate::semigroup::ASParams;

/// The ordered generator set of the ideal I.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    /// Minors f_{(i,j)} = x_{i-1} x_j - x_i x_{j-1} for 1 <= i < j <= n,
    /// in lexicographic order on (i, j).
    pub f: Vec<LabeledGenerator>,
    /// Minors g_h = x_n^a x_{n-h} - x_0^mu x_{n-b-h} for h = 0..=(n-b).
    pub g: Vec<LabeledGenerator>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LabeledGenerator {
    pub label: String,
    pub weight: i64,
    #[serde(serialize_with = "crate::export::poly_as_string")]
    pub poly: QPoly,
}

impl GeneratorSet {
    /// All generators in dashboard order: g first (as in the d_1 row of the
    /// cone they appear highest level first), then the f minors.
    pub fn all(&self) -> impl Iterator<Item = &LabeledGenerator> {
        self.g.iter().rev().chain(self.f.iter())
    }

    pub fn count(&self) -> usize {
        self.f.len() + self.g.len()
    }
}

/// The quadric x_{i-1} x_j - x_i x_{j-1}, defined for any 1 <= i, j <= n.
/// Antisymmetric in (i, j); zero for i = j. For i < j this is the minor of
/// A on columns i and j.
pub fn pencil_minor(params: &ASParams, i: usize, j: usize) -> QPoly {
    let nv = params.nvars();
    let a = &QPoly::var(i - 1, nv) * &QPoly::var(j, nv);
    let b = &QPoly::var(i, nv) * &QPoly::var(j - 1, nv);
    a - b
}

/// The minor g_h = x_n^a x_{n-h} - x_0^mu x_{n-b-h}.
pub fn g_minor(params: &ASParams, h: usize) -> QPoly {
    assert!(h <= params.n - params.b, "g index {h} out of range");
    let nv = params.nvars();
    let n = params.n;
    let lead = &QPoly::var_pow(n, params.a as u32, nv) * &QPoly::var(n - h, nv);
    let tail = &QPoly::var_pow(0, params.mu as u32, nv) * &QPoly::var(n - params.b - h, nv);
    lead - tail
}

pub fn build_generators(params: &ASParams) -> GeneratorSet {
    let n = params.n;
    let mut f = Vec::with_capacity(n * (n - 1) / 2);
    for i in 1..=n {
        for j in (i + 1)..=n {
            f.push(LabeledGenerator {
                label: format!("f[{i},{j}]"),
                weight: params.m[i - 1] + params.m[j],
                poly: pencil_minor(params, i, j),
            });
        }
    }
    let g = (0..=(n - params.b))
        .map(|h| LabeledGenerator {
            label: format!("g{h}"),
            weight: params.delta[h],
            poly: g_minor(params, h),
        })
        .collect();
    GeneratorSet { f, g }
}

/// Certificate for the identity
///   x_{i+1} g_{h+1} - x_i g_h
///     = x_n^a (x_{i+1} x_{n-h-1} - x_i x_{n-h})
///       - x_0^mu (x_{i+1} x_{n-b-h-1} - x_i x_{n-b-h}),
/// expressing the left side as a combination of quadrics from the pencil
/// ideal. Each entry pairs a cofactor with its quadric.
#[derive(Debug, Clone)]
pub struct ColonCertificate {
    pub i: usize,
    pub h: usize,
    pub lhs: QPoly,
    pub cofactors: Vec<(QPoly, QPoly)>,
}

/// Builds and symbolically verifies the certificate for legal
/// 0 <= i <= n-1, 0 <= h <= n-b-1. The identity failing would mean the
/// construction itself is broken, hence the construction-bug error.
pub fn lemma12_identity(params: &ASParams, i: usize, h: usize) -> Result<ColonCertificate> {
    let n = params.n;
    if i >= n || h + params.b >= n {
        return Err(Error::Domain(format!(
            "certificate indices out of range: i = {i}, h = {h}"
        )));
    }
    let nv = params.nvars();
    let xi = QPoly::var(i, nv);
    let xi1 = QPoly::var(i + 1, nv);
    let lhs = &xi1 * &g_minor(params, h + 1) - &xi * &g_minor(params, h);

    // quad(v) = x_{i+1} x_v - x_i x_{v+1}; up to sign a minor of A
    // (or zero when i+1 = v+1).
    let quad = |v: usize| &xi1 * &QPoly::var(v, nv) - &xi * &QPoly::var(v + 1, nv);
    let q1 = quad(n - h - 1);
    let q2 = quad(n - params.b - h - 1);
    let c1 = QPoly::var_pow(n, params.a as u32, nv);
    let c2 = -QPoly::var_pow(0, params.mu as u32, nv);
    let rhs = &c1 * &q1 + &c2 * &q2;
    if lhs != rhs {
        return Err(Error::ConstructionBug {
            s: 0,
            basis: format!("(i = {i}, h = {h})"),
            msg: "colon identity failed symbolically".into(),
        });
    }
    Ok(ColonCertificate { i, h, lhs, cofactors: vec![(c1, q1), (c2, q2)] })
}

/// Checks that x_0 * g_{h+1} does NOT lie in the ideal generated by the
/// pencil minors together with g_0..g_h, by one graded membership solve in
/// its weighted degree. True means non-containment holds, i.e. the colon
/// ideal (C + (g_0..g_h)) : g_{h+1} does not contain x_0.
pub fn colon_noncontainment(params: &ASParams, h: usize) -> Result<bool> {
    if h + params.b >= params.n {
        return Err(Error::Domain(format!("colon index h = {h} out of range")));
    }
    let gens = build_generators(params);
    let mut ideal: Vec<QPoly> = gens.f.iter().map(|g| g.poly.clone()).collect();
    ideal.extend(gens.g[..=h].iter().map(|g| g.poly.clone()));
    let probe = &QPoly::var(0, params.nvars()) * &g_minor(params, h + 1);
    let contained = graded_membership(params, &ideal, &probe)?;
    Ok(!contained)
}
