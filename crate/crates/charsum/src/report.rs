//! JSON report schemas and CSV rows.
//!
//! Exact values are JSON integers when rational and small enough for an
//! `i64`; otherwise they are strings in the `CycInt` display form
//! (`[c_0;..;c_(p-2)]`). CSV cells use the same text.

use charsum_core::catalog::CatalogEntry;
use charsum_core::funcs::Witness;
use charsum_core::{CycInt, Field, Space};
use serde::Serialize;
use serde_json::Value;

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct FieldJson {
    pub p: u32,
    pub ell: u32,
    pub q: u32,
    pub modulus: Vec<u32>,
}

impl From<&Field> for FieldJson {
    fn from(f: &Field) -> Self {
        FieldJson {
            p: f.p(),
            ell: f.ell(),
            q: f.q(),
            modulus: f.modulus().to_vec(),
        }
    }
}

pub fn exact_value(v: &CycInt) -> Value {
    match v.as_integer().and_then(|n| i64::try_from(n).ok()) {
        Some(n) => Value::from(n),
        None => Value::from(v.to_string()),
    }
}

pub fn coords(space: &Space, x: usize) -> Vec<u32> {
    (0..space.dim()).map(|i| space.coord(x, i).0).collect()
}

pub fn coords_cell(space: &Space, x: usize) -> String {
    coords(space, x)
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct PnWitnessJson {
    pub a: usize,
    pub a_coords: Vec<u32>,
    pub value: u32,
    pub count: usize,
}

impl PnWitnessJson {
    pub fn new(space: &Space, w: &Witness) -> Self {
        PnWitnessJson {
            a: w.a,
            a_coords: coords(space, w.a),
            value: w.value.0,
            count: w.count,
        }
    }
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct PnReport {
    pub field: FieldJson,
    pub d: usize,
    pub function: String,
    /// `pn` or `not_pn`.
    pub verdict: &'static str,
    pub witness: Option<PnWitnessJson>,
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct BentWitnessJson {
    pub u: u32,
    pub m: usize,
    pub m_coords: Vec<u32>,
    pub abs_sq_exact: Value,
    pub magnitude: f64,
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct SpotCheckJson {
    pub checked: usize,
    /// `(u, m)` pairs where the floating value disagreed with the exact one.
    pub failures: Vec<(u32, usize)>,
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct BentReport {
    pub field: FieldJson,
    pub d: usize,
    pub function: String,
    /// `exact` or `fast`.
    pub mode: &'static str,
    /// `bent` or `not_bent`.
    pub verdict: &'static str,
    pub witness: Option<BentWitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spot_checks: Option<SpotCheckJson>,
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct CrosscheckReport {
    pub field: FieldJson,
    pub d: usize,
    pub function: String,
    pub pn: &'static str,
    pub pn_witness: Option<PnWitnessJson>,
    pub bent: &'static str,
    pub bent_witness: Option<BentWitnessJson>,
    pub agree: bool,
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct SalemSummary {
    pub q: u32,
    /// Dimension of the space holding the graph.
    pub d: usize,
    pub cardinality: usize,
    pub salem_constant: f64,
    /// `[max |S(m)|^2, |E|]` over `m != 0`, when all values are integers.
    pub salem_constant_sq_exact: Option<(i128, usize)>,
    pub argmax_m: usize,
    pub argmax_m_coords: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem1_pass: Option<bool>,
    /// Frequencies whose exact value differs from the expected one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatches: Option<Vec<usize>>,
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct SalemVerifyReport {
    pub field: FieldJson,
    pub function: String,
    #[serde(flatten)]
    pub summary: SalemSummary,
}

/// Emitted when the function handed to the exact check is not bent.
#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct HypothesisFailedReport {
    pub field: FieldJson,
    pub function: String,
    pub theorem1_pass: bool,
    pub error: &'static str,
    pub bent_witness: BentWitnessJson,
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct SalemFamilyReport {
    pub function: String,
    pub instances: Vec<SalemSummary>,
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct DecompReport {
    pub field: FieldJson,
    pub d: usize,
    pub function: String,
    pub basis: Vec<usize>,
    pub shifts_checked: usize,
    pub pass: bool,
    pub failing_a: Option<usize>,
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct SweepWitnessJson {
    pub w: usize,
    pub v: u32,
    pub a: usize,
    pub value: u32,
    pub count: usize,
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct SweepReport {
    pub field: FieldJson,
    pub base_fn: String,
    pub pairs_tested: usize,
    pub planar_found: usize,
    /// `p > 3`; smaller characteristic is swept without any claim.
    pub bound_applies: bool,
    /// Every witness recounted against a fresh scan.
    pub witnesses_verified: bool,
    pub image_size: usize,
    /// `(q + 1) / 2`.
    pub image_bound: usize,
    pub sample_witnesses: Vec<SweepWitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<f64>,
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct PairwiseReport {
    pub field: FieldJson,
    pub functions: Vec<String>,
    pub distances: Vec<Vec<usize>>,
    pub duplicates: Vec<(usize, usize)>,
    pub min_distance: Option<usize>,
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct CatalogRow {
    pub name: &'static str,
    pub description: &'static str,
    pub params: &'static str,
    pub pn: Option<bool>,
    pub bent: Option<bool>,
}

impl From<&CatalogEntry> for CatalogRow {
    fn from(e: &CatalogEntry) -> Self {
        CatalogRow {
            name: e.name,
            description: e.description,
            params: e.params,
            pn: e.pn,
            bent: e.bent,
        }
    }
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct FieldReport {
    #[serde(flatten)]
    pub field: FieldJson,
    pub primitive_element: u32,
    /// `Tr(t^j)` for `j = 0..ell`.
    pub basis_traces: Vec<u32>,
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct ElementRow {
    pub index: u32,
    pub coeffs: String,
    /// Discrete log to the primitive element; empty for zero.
    pub log: Option<u64>,
    pub trace: u32,
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct SpectrumRow {
    pub m_index: usize,
    pub m_coords: String,
    /// Empty on rows the fast path did not spot-check.
    pub abs_sq_exact: Option<String>,
    pub magnitude_float: f64,
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct SalemRow {
    pub m_index: usize,
    pub m_coords: String,
    pub case_tag: &'static str,
    pub abs_sq_exact: String,
    pub magnitude_float: f64,
    pub bound_ratio: f64,
}

pub fn to_csv<T: Serialize>(rows: &[T]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn to_json<T: Serialize>(report: &T) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(s)
}
