//! Canonical JSON export/import of complexes and the CAS script emitter.
//!
//! Exports are byte-deterministic for a fixed input: module bases are in
//! their canonical order, entries sorted by (row, col), and all maps are
//! plain ordered structs.

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::generators::build_generators;
use crate::minimalizer::{CancellationStep, MinimalComplex};
use crate::polyring::{parse_poly, QPoly};
use crate::rescomplex::{
    BasisElement, ChainView, Complex, DifferentialMap, GradedFreeModule, SignFlip,
};
use crate::semigroup::ASParams;

pub const SCHEMA_VERSION: u32 = 1;

/// serde helper: render a polynomial in its canonical text form.
pub fn poly_as_string<S: Serializer>(
    p: &QPoly,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&p.to_string())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexJson {
    pub schema: u32,
    pub kind: String,
    pub params: ASParams,
    pub generators: Vec<GeneratorJson>,
    pub modules: Vec<ModuleJson>,
    pub differentials: Vec<DifferentialJson>,
    pub sign_flips: Vec<SignFlip>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Vec<CancellationJson>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub label: String,
    pub weight: i64,
    pub poly: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuleJson {
    pub position: usize,
    pub basis: Vec<BasisJson>,
}

/// Flat basis descriptor: `tag` is one of "unit", "unit0", "en", "en0",
/// "koszul"; `h` is the Koszul level (0 otherwise).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BasisJson {
    pub tag: String,
    pub h: usize,
    pub indices: Vec<usize>,
    pub v0: u32,
    pub v1: u32,
    pub weight: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DifferentialJson {
    pub position: usize,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<EntryJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EntryJson {
    pub row: usize,
    pub col: usize,
    pub poly: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CancellationJson {
    pub s: usize,
    pub source: BasisJson,
    pub target: BasisJson,
    pub unit: String,
}

fn basis_json(params: &ASParams, b: &BasisElement) -> BasisJson {
    let weight = b.weight(params);
    match b {
        BasisElement::Unit { shifted } => BasisJson {
            tag: if *shifted { "unit0" } else { "unit" }.into(),
            h: 0,
            indices: vec![],
            v0: 0,
            v1: 0,
            weight,
        },
        BasisElement::En { shifted, indices, v0, v1 } => BasisJson {
            tag: if *shifted { "en0" } else { "en" }.into(),
            h: 0,
            indices: indices.clone(),
            v0: *v0,
            v1: *v1,
            weight,
        },
        BasisElement::Koszul { level, indices } => BasisJson {
            tag: "koszul".into(),
            h: *level,
            indices: indices.clone(),
            v0: 0,
            v1: 0,
            weight,
        },
    }
}

fn basis_from_json(params: &ASParams, j: &BasisJson) -> Result<BasisElement> {
    let b = match j.tag.as_str() {
        "unit" => BasisElement::Unit { shifted: false },
        "unit0" => BasisElement::Unit { shifted: true },
        "en" => BasisElement::En {
            shifted: false,
            indices: j.indices.clone(),
            v0: j.v0,
            v1: j.v1,
        },
        "en0" => BasisElement::En {
            shifted: true,
            indices: j.indices.clone(),
            v0: j.v0,
            v1: j.v1,
        },
        "koszul" => BasisElement::Koszul { level: j.h, indices: j.indices.clone() },
        other => {
            return Err(Error::VerificationFailed(format!("unknown basis tag '{other}'")))
        }
    };
    if b.weight(params) != j.weight {
        return Err(Error::VerificationFailed(format!(
            "declared weight {} of {b} does not match the grading",
            j.weight
        )));
    }
    Ok(b)
}

fn view_to_json(
    kind: &str,
    view: ChainView<'_>,
    sign_flips: &[SignFlip],
    provenance: Option<&[CancellationStep]>,
) -> ComplexJson {
    let params = view.params;
    let generators = build_generators(params)
        .all()
        .map(|g| GeneratorJson {
            label: g.label.clone(),
            weight: g.weight,
            poly: g.poly.to_string(),
        })
        .collect();
    let modules = (0..=view.len())
        .map(|s| ModuleJson {
            position: s,
            basis: view.module(s).basis.iter().map(|b| basis_json(params, b)).collect(),
        })
        .collect();
    let differentials = (1..=view.len())
        .map(|s| {
            let d = view.differential(s);
            let mut entries: Vec<EntryJson> = d
                .entries()
                .map(|(r, c, p)| EntryJson { row: r, col: c, poly: p.to_string() })
                .collect();
            entries.sort_by_key(|e| (e.row, e.col));
            DifferentialJson { position: s, rows: d.rows, cols: d.cols, entries }
        })
        .collect();
    let provenance = provenance.map(|steps| {
        steps
            .iter()
            .map(|st| CancellationJson {
                s: st.s,
                source: basis_json(params, &st.source_basis),
                target: basis_json(params, &st.target_basis),
                unit: st.unit.clone(),
            })
            .collect()
    });
    ComplexJson {
        schema: SCHEMA_VERSION,
        kind: kind.into(),
        params: params.clone(),
        generators,
        modules,
        differentials,
        sign_flips: sign_flips.to_vec(),
        provenance,
    }
}

pub fn cone_to_json(c: &Complex) -> ComplexJson {
    view_to_json("cone", c.view(), &c.sign_flips, None)
}

pub fn minimal_to_json(m: &MinimalComplex) -> ComplexJson {
    view_to_json("minimal", m.view(), &m.sign_flips, Some(&m.provenance))
}

/// Pretty JSON with a trailing newline; byte-stable across runs.
pub fn to_json_string(j: &ComplexJson) -> Result<String> {
    let mut s = serde_json::to_string_pretty(j)?;
    s.push('\n');
    Ok(s)
}

/// A complex reconstructed from its JSON export; structurally identical
/// to the original (same basis order, same entries).
#[derive(Debug, Clone)]
pub struct ImportedComplex {
    pub kind: String,
    pub params: ASParams,
    pub modules: Vec<GradedFreeModule>,
    pub diffs: Vec<DifferentialMap>,
}

impl ImportedComplex {
    pub fn view(&self) -> ChainView<'_> {
        ChainView::new(&self.params, &self.modules, &self.diffs)
    }
}

pub fn from_json_str(text: &str) -> Result<ImportedComplex> {
    let j: ComplexJson = serde_json::from_str(text)?;
    if j.schema != SCHEMA_VERSION {
        return Err(Error::VerificationFailed(format!(
            "unsupported schema version {}",
            j.schema
        )));
    }
    // re-derive the parameters to reject tampered fields
    let params = ASParams::new(j.params.m0, j.params.d, j.params.n)?;
    if params != j.params {
        return Err(Error::VerificationFailed(
            "parameter block does not match derived parameters".into(),
        ));
    }
    let nv = params.nvars();
    let mut modules = Vec::with_capacity(j.modules.len());
    for (s, mj) in j.modules.iter().enumerate() {
        if mj.position != s {
            return Err(Error::VerificationFailed("module positions out of order".into()));
        }
        let basis: Vec<BasisElement> = mj
            .basis
            .iter()
            .map(|b| basis_from_json(&params, b))
            .collect::<Result<_>>()?;
        let module = GradedFreeModule::new(&params, basis.clone());
        if module.basis != basis {
            return Err(Error::VerificationFailed(format!(
                "module basis at position {s} is not in canonical order"
            )));
        }
        modules.push(module);
    }
    let mut diffs = Vec::with_capacity(j.differentials.len());
    for (k, dj) in j.differentials.iter().enumerate() {
        let s = k + 1;
        if dj.position != s {
            return Err(Error::VerificationFailed("differential positions out of order".into()));
        }
        if dj.rows != modules[s - 1].rank() || dj.cols != modules[s].rank() {
            return Err(Error::VerificationFailed(format!(
                "differential {s} has shape {}x{}, modules demand {}x{}",
                dj.rows,
                dj.cols,
                modules[s - 1].rank(),
                modules[s].rank()
            )));
        }
        let mut d = DifferentialMap::new(dj.rows, dj.cols);
        for e in &dj.entries {
            if e.row >= dj.rows || e.col >= dj.cols {
                return Err(Error::VerificationFailed(format!(
                    "entry ({}, {}) outside differential {s}",
                    e.row, e.col
                )));
            }
            d.add_entry(e.row, e.col, parse_poly(&e.poly, nv)?);
        }
        diffs.push(d);
    }
    if modules.len() != diffs.len() + 1 {
        return Err(Error::VerificationFailed("module/differential count mismatch".into()));
    }
    Ok(ImportedComplex { kind: j.kind, params, modules, diffs })
}

/// Renders a polynomial with Macaulay2-style indexed variables (x_0, ...).
fn poly_m2(p: &QPoly) -> String {
    let s = p.to_string();
    let mut out = String::with_capacity(s.len() + 8);
    for ch in s.chars() {
        out.push(ch);
        if ch == 'x' {
            out.push('_');
        }
    }
    out
}

/// A plain-text Macaulay2 script declaring the weighted ring and every
/// differential, with homogeneity and composition asserts, so an external
/// CAS can independently recompute the homology of the complex.
pub fn m2_script(view: ChainView<'_>, kind: &str) -> String {
    let params = view.params;
    let n = params.n;
    let weights: Vec<String> = params.m.iter().map(|w| w.to_string()).collect();
    let mut out = String::new();
    out.push_str(&format!(
        "-- {kind} complex for the monomial curve of <{}>\n",
        params
            .m
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join(",")
    ));
    out.push_str("-- load into Macaulay2; homology can be recomputed with HH\n");
    out.push_str(&format!(
        "R = QQ[x_0..x_{n}, Degrees => {{{}}}];\n",
        weights.join(",")
    ));
    let len = view.len();
    let mut declared = Vec::new();
    for s in 1..=len {
        let d = view.differential(s);
        if d.rows == 0 || d.cols == 0 {
            break;
        }
        let tgt_twists: Vec<String> =
            view.module(s - 1).weights.iter().map(|w| format!("-{w}")).collect();
        let src_twists: Vec<String> =
            view.module(s).weights.iter().map(|w| format!("-{w}")).collect();
        let mut rows_text = Vec::with_capacity(d.rows);
        for r in 0..d.rows {
            let mut row = Vec::with_capacity(d.cols);
            for c in 0..d.cols {
                match d.entry(r, c) {
                    Some(p) => row.push(poly_m2(p)),
                    None => row.push("0".into()),
                }
            }
            rows_text.push(format!("{{{}}}", row.join(", ")));
        }
        out.push_str(&format!(
            "d{s} = map(R^{{{}}}, R^{{{}}}, matrix {{{}}});\n",
            tgt_twists.join(","),
            src_twists.join(","),
            rows_text.join(", ")
        ));
        out.push_str(&format!("assert isHomogeneous d{s};\n"));
        declared.push(s);
    }
    for w in declared.windows(2) {
        out.push_str(&format!("assert(d{} * d{} == 0);\n", w[0], w[1]));
    }
    let names: Vec<String> = declared.iter().map(|s| format!("d{s}")).collect();
    out.push_str(&format!(
        "-- C = chainComplex({}); prune HH C\n",
        names.join(", ")
    ));
    out
}
