//! Serializable report records. Rationals are strings (`"p"` or `"p/q"`),
//! polynomials are ascending arrays of such strings, and maps keep
//! insertion order so output is byte-stable.

use hyperdarboux_core::{DiffOp, FamilySpec, Poly, Rational};
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

pub fn rat(r: &Rational) -> String {
    r.to_string()
}

pub fn poly(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(rat).collect()
}

/// Ordered `name -> value` pairs serialized as a JSON object.
#[derive(Debug, Clone, Default)]
pub struct Ordered(pub Vec<(String, serde_json::Value)>);

impl Serialize for Ordered {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

pub fn params(fam: &FamilySpec) -> Ordered {
    let mut out: Vec<(String, serde_json::Value)> = fam
        .params()
        .iter()
        .map(|(k, v)| (k.to_string(), rat(v).into()))
        .collect();
    if out.is_empty() {
        out.push(("sigma".into(), poly(fam.sigma()).into()));
        out.push(("tau".into(), poly(fam.tau()).into()));
    }
    Ordered(out)
}

/// Operators as `{"2": [...], "1": [...], "0": [...]}`, highest shift first.
pub fn operator(op: &DiffOp) -> Ordered {
    Ordered(
        op.terms()
            .collect::<Vec<_>>()
            .into_iter()
            .rev()
            .map(|(k, a)| (k.to_string(), poly(a).into()))
            .collect(),
    )
}

#[derive(Debug, Serialize)]
pub struct CheckSummary {
    pub check: &'static str,
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub status: &'static str,
}

#[derive(Debug, Serialize)]
pub struct Notice {
    pub check: &'static str,
    pub n: Option<i64>,
    pub branch: Option<u8>,
    pub status: &'static str,
    pub detail: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct ReferenceSummary {
    pub expression: &'static str,
    pub comparisons: usize,
    pub all_match: bool,
    pub known_erratum: Option<&'static str>,
}

#[derive(Debug, Serialize)]
pub struct VerifyRecord {
    pub family: String,
    pub params: Ordered,
    pub n_max: usize,
    pub branches: Vec<u8>,
    pub strict: bool,
    pub perturb: Option<&'static str>,
    pub checks: Vec<CheckSummary>,
    pub notices: Vec<Notice>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<Vec<ReferenceSummary>>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

#[derive(Debug, Serialize)]
pub struct CheckFlags {
    pub factorization: bool,
    pub riccati_system: bool,
    pub swap: bool,
    pub eigen_shift: bool,
    pub riccati_residual: bool,
    pub commutation: bool,
}

#[derive(Debug, Serialize)]
pub struct ReferenceEntry {
    pub expression: &'static str,
    pub printed: serde_json::Value,
    pub computed: serde_json::Value,
    pub matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub known_erratum: Option<&'static str>,
}

#[derive(Debug, Serialize)]
pub struct FactorizeRecord {
    pub family: String,
    pub params: Ordered,
    pub n: i64,
    pub branch: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degenerate: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<CheckFlags>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub reference: Vec<ReferenceEntry>,
}

#[derive(Debug, Serialize)]
pub struct LadderRecord {
    pub n: usize,
    pub direction: &'static str,
    pub c: String,
    pub target: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct GeneratedRecord {
    pub n: usize,
    pub c1: Option<String>,
    pub poly: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct GenerateRecord {
    pub family: String,
    pub params: Ordered,
    pub terms: Vec<GeneratedRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<Vec<String>>,
}
