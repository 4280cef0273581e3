//! The problem-file schema: JSON with exact rationals.
//!
//! Top level: `{ "schema_version": 1, "mode": ..., "n": ..., "payload": ... }`
//! with `mode` one of `monodromy`, `central_fibre`, `nodal`, `paired`.
//! Numeric literals are exact: integers, big integers as strings, or `"p/q"`
//! strings; complex entries are `{ "re": ..., "im": ... }` (a bare rational
//! is read as a real). Floating-point literals are rejected: nothing in the
//! verification path tolerates rounding.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use wpdeg_core::centralfibre::{CentralFibreModel, Component, HodgeNumbers, StratumSpec};
use wpdeg_core::hodge::Polarization;
use wpdeg_core::matrix::Matrix;
use wpdeg_core::monodromy::log_unipotent;
use wpdeg_core::nodal::NodalConfiguration;
use wpdeg_core::orbit::OrbitProblem;
use wpdeg_core::scalar::{ExactScalar, GaussScalar};

/// Parse/validation error with a field path where available.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocError(pub String);

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for DocError {}

/// An exact rational in JSON: integer, `"p/q"` string, or big-integer
/// string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalJson(pub ExactScalar);

fn parse_rational(text: &str) -> Result<ExactScalar, String> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let n = BigInt::from_str(num).map_err(|_| format!("invalid integer {num:?}"))?;
    let d = match den {
        Some(d) => BigInt::from_str(d).map_err(|_| format!("invalid integer {d:?}"))?,
        None => BigInt::from(1),
    };
    if d.is_zero() {
        return Err(String::from("zero denominator"));
    }
    Ok(ExactScalar::new(n, d))
}

impl Serialize for RationalJson {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let r = &self.0;
        if r.is_integer() {
            if let Some(v) = r.numer().to_i64() {
                // i64 keeps us inside the range JSON numbers carry exactly.
                if v.abs() <= (1i64 << 53) {
                    return s.serialize_i64(v);
                }
            }
            return s.serialize_str(&r.numer().to_string());
        }
        s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
    }
}

impl<'de> Deserialize<'de> for RationalJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = RationalJson;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "an exact rational (integer or \"p/q\" string)")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
                Ok(RationalJson(ExactScalar::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
                Ok(RationalJson(ExactScalar::from_integer(v.into())))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Self::Value, E> {
                Err(E::custom(format!(
                    "floating literal {v} is not exact; write an integer or \"p/q\""
                )))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
                parse_rational(v).map(RationalJson).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

/// A Gaussian rational in JSON: a bare rational (real) or `{re, im}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexJson(pub GaussScalar);

impl Serialize for ComplexJson {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.im.is_zero() {
            RationalJson(self.0.re.clone()).serialize(s)
        } else {
            use serde::ser::SerializeMap;
            let mut m = s.serialize_map(Some(2))?;
            m.serialize_entry("re", &RationalJson(self.0.re.clone()))?;
            m.serialize_entry("im", &RationalJson(self.0.im.clone()))?;
            m.end()
        }
    }
}

impl<'de> Deserialize<'de> for ComplexJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = ComplexJson;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "an exact rational or {{re, im}} object")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
                Ok(ComplexJson(GaussScalar::new(
                    ExactScalar::from_integer(v.into()),
                    ExactScalar::zero(),
                )))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
                Ok(ComplexJson(GaussScalar::new(
                    ExactScalar::from_integer(v.into()),
                    ExactScalar::zero(),
                )))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Self::Value, E> {
                Err(E::custom(format!(
                    "floating literal {v} is not exact; write an integer or \"p/q\""
                )))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
                parse_rational(v)
                    .map(|r| ComplexJson(GaussScalar::new(r, ExactScalar::zero())))
                    .map_err(E::custom)
            }
            fn visit_map<A: de::MapAccess<'de>>(self, mut map: A) -> Result<Self::Value, A::Error> {
                let mut re: Option<RationalJson> = None;
                let mut im: Option<RationalJson> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "re" => re = Some(map.next_value()?),
                        "im" => im = Some(map.next_value()?),
                        other => {
                            return Err(de::Error::custom(format!(
                                "unknown field {other:?} in complex entry (expected re, im)"
                            )))
                        }
                    }
                }
                let re = re.map(|r| r.0).unwrap_or_else(ExactScalar::zero);
                let im = im.map(|r| r.0).unwrap_or_else(ExactScalar::zero);
                Ok(ComplexJson(GaussScalar::new(re, im)))
            }
        }
        d.deserialize_any(V)
    }
}

pub fn rational_matrix(
    rows: &[Vec<RationalJson>],
    what: &str,
) -> Result<Matrix<ExactScalar>, DocError> {
    let cols = rows.first().map_or(0, Vec::len);
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|x| x.0.clone()).collect())
            .collect(),
        cols,
    )
    .map_err(|_| DocError(format!("{what}: rows have inconsistent lengths")))
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MonodromyPayload {
    #[serde(rename = "T")]
    pub t: Vec<Vec<RationalJson>>,
    #[serde(rename = "Q")]
    pub q: Vec<Vec<RationalJson>>,
    pub alpha: Vec<ComplexJson>,
}

impl MonodromyPayload {
    pub fn to_problem(&self, n: usize) -> Result<OrbitProblem, wpdeg_core::Error> {
        let t = rational_matrix(&self.t, "payload.T")
            .map_err(|e| wpdeg_core::Error::InvalidOrbit { reason: e.0 })?;
        let q = rational_matrix(&self.q, "payload.Q")
            .map_err(|e| wpdeg_core::Error::InvalidOrbit { reason: e.0 })?;
        let op = log_unipotent(t, n)?;
        let polarization = Polarization::new(n, q)?;
        let alpha = self.alpha.iter().map(|c| c.0.clone()).collect();
        OrbitProblem::new(op, polarization, alpha)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ComponentJson {
    pub id: String,
    pub hodge: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct StratumJson {
    pub components: Vec<String>,
    pub hodge: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RestrictionJson {
    pub p: usize,
    pub q: usize,
    pub matrix: Vec<Vec<RationalJson>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FibrePayload {
    pub components: Vec<ComponentJson>,
    #[serde(default)]
    pub strata: Vec<StratumJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restriction_maps: Option<Vec<RestrictionJson>>,
}

impl FibrePayload {
    pub fn to_model(&self, n: usize) -> Result<CentralFibreModel, wpdeg_core::Error> {
        let hodge = |grid: &Vec<Vec<u64>>, dim: usize| HodgeNumbers::new(dim, grid.clone());
        let components = self
            .components
            .iter()
            .map(|c| {
                Ok(Component {
                    id: c.id.clone(),
                    hodge: hodge(&c.hodge, n)?,
                })
            })
            .collect::<Result<Vec<_>, wpdeg_core::Error>>()?;
        let strata = self
            .strata
            .iter()
            .map(|s| {
                let level = s.components.len().saturating_sub(1);
                let dim = n
                    .checked_sub(level)
                    .ok_or_else(|| wpdeg_core::Error::ModelInvalid {
                        reason: format!(
                            "stratum {:?} is deeper than the fibre dimension",
                            s.components
                        ),
                    })?;
                Ok(StratumSpec {
                    members: s.components.clone(),
                    hodge: hodge(&s.hodge, dim)?,
                })
            })
            .collect::<Result<Vec<_>, wpdeg_core::Error>>()?;
        let maps = self
            .restriction_maps
            .iter()
            .flatten()
            .map(|r| {
                let m = rational_matrix(&r.matrix, "payload.restriction_maps")
                    .map_err(|e| wpdeg_core::Error::ModelInvalid { reason: e.0 })?;
                Ok((r.p, r.q, m))
            })
            .collect::<Result<Vec<_>, wpdeg_core::Error>>()?;
        CentralFibreModel::new(n, components, strata, maps)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct NodalPayload {
    pub nodes: usize,
    pub k: i64,
}

impl NodalPayload {
    pub fn to_config(&self, n: usize) -> Result<NodalConfiguration, wpdeg_core::Error> {
        NodalConfiguration::new(n, self.nodes, self.k)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PairedPayload {
    pub monodromy: MonodromyPayload,
    pub central_fibre: FibrePayload,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Monodromy(MonodromyPayload),
    CentralFibre(FibrePayload),
    Nodal(NodalPayload),
    Paired(PairedPayload),
}

impl Payload {
    pub fn mode_name(&self) -> &'static str {
        match self {
            Payload::Monodromy(_) => "monodromy",
            Payload::CentralFibre(_) => "central_fibre",
            Payload::Nodal(_) => "nodal",
            Payload::Paired(_) => "paired",
        }
    }
}

/// A fully parsed problem file.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemDocument {
    pub n: usize,
    pub payload: Payload,
}

impl ProblemDocument {
    pub fn mode_name(&self) -> &'static str {
        self.payload.mode_name()
    }
}

#[derive(Deserialize)]
struct RawEnvelope {
    schema_version: u32,
    mode: String,
    n: usize,
    payload: serde_json::Value,
}

fn typed<T: for<'de> Deserialize<'de>>(value: serde_json::Value) -> Result<T, DocError> {
    serde_path_to_error::deserialize(value)
        .map_err(|e| DocError(format!("payload.{}: {}", e.path(), e.inner())))
}

/// Parse and schema-validate a problem file.
pub fn parse_document(text: &str) -> Result<ProblemDocument, DocError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawEnvelope = serde_path_to_error::deserialize(de)
        .map_err(|e| DocError(format!("{} (at {})", e.inner(), e.path())))?;
    if raw.schema_version != 1 {
        return Err(DocError(format!(
            "schema_version: expected 1, got {}",
            raw.schema_version
        )));
    }
    let payload = match raw.mode.as_str() {
        "monodromy" => Payload::Monodromy(typed(raw.payload)?),
        "central_fibre" => Payload::CentralFibre(typed(raw.payload)?),
        "nodal" => Payload::Nodal(typed(raw.payload)?),
        "paired" => Payload::Paired(typed(raw.payload)?),
        other => {
            return Err(DocError(format!(
                "mode: expected one of monodromy, central_fibre, nodal, paired; got {other:?}"
            )))
        }
    };
    Ok(ProblemDocument { n: raw.n, payload })
}

/// Serialize a document back to schema form (used by `catalog export`-style
/// tooling and tests).
pub fn document_to_json(doc: &ProblemDocument) -> serde_json::Value {
    let payload = match &doc.payload {
        Payload::Monodromy(p) => serde_json::to_value(p),
        Payload::CentralFibre(p) => serde_json::to_value(p),
        Payload::Nodal(p) => serde_json::to_value(p),
        Payload::Paired(p) => serde_json::to_value(p),
    }
    .expect("payload serialization is infallible");
    serde_json::json!({
        "schema_version": 1,
        "mode": doc.mode_name(),
        "n": doc.n,
        "payload": payload,
    })
}
