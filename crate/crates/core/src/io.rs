//! JSON documents for states, measures, coins, weights and polynomials.
//!
//! Scalars are written as `[re, im]` pairs. Exact values are strings of
//! the form `"num/den"`; float values are JSON numbers. Reading a
//! document into the other backend fails with
//! [`Error::BackendMismatch`].

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::coin::{Coin, CoinKind};
use crate::error::{Error, Result};
use crate::lattice::{FiniteState, LatticePoint, Measure, WeightSequence};
use crate::scalar::{parse_real, Backend, Scalar};
use crate::symbol::LaurentPoly;

#[derive(Serialize, Deserialize)]
struct StateDoc {
    d: usize,
    backend: Backend,
    entries: Vec<StateEntry>,
}

#[derive(Serialize, Deserialize)]
struct StateEntry {
    x: Vec<i64>,
    amp: Vec<[Value; 2]>,
}

#[derive(Serialize, Deserialize)]
struct MeasureDoc {
    d: usize,
    entries: Vec<MeasureEntry>,
}

#[derive(Serialize, Deserialize)]
struct MeasureEntry {
    x: Vec<i64>,
    value: Value,
}

#[derive(Serialize, Deserialize)]
struct CoinDoc {
    d: usize,
    kind: CoinKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<Value>,
    #[serde(default)]
    entries: Vec<Vec<[Value; 2]>>,
}

#[derive(Serialize, Deserialize)]
struct WeightsDoc {
    d: usize,
    weights: Vec<WeightEntry>,
}

#[derive(Serialize, Deserialize)]
struct WeightEntry {
    u: Vec<i64>,
    w: Value,
}

#[derive(Serialize, Deserialize)]
struct PolyDoc {
    d: usize,
    terms: Vec<PolyTerm>,
}

#[derive(Serialize, Deserialize)]
struct PolyTerm {
    exp: Vec<i64>,
    coeff: [Value; 2],
}

impl Serialize for Backend {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Backend {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for CoinKind {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for CoinKind {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn point(coords: Vec<i64>, dim: usize) -> Result<LatticePoint> {
    if coords.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: coords.len(),
        });
    }
    LatticePoint::new(coords)
}

fn expect_backend<S: Scalar>(found: Backend) -> Result<()> {
    if found != S::BACKEND {
        return Err(Error::BackendMismatch {
            expected: S::BACKEND,
            found,
        });
    }
    Ok(())
}

pub fn state_to_json<S: Scalar>(state: &FiniteState<S>) -> Value {
    let doc = StateDoc {
        d: state.dim(),
        backend: S::BACKEND,
        entries: state
            .iter()
            .map(|(x, v)| StateEntry {
                x: x.coords().to_vec(),
                amp: v.iter().map(Scalar::encode).collect(),
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("state documents serialize")
}

pub fn state_from_json<S: Scalar>(v: &Value) -> Result<FiniteState<S>> {
    let doc: StateDoc = serde_json::from_value(v.clone())?;
    expect_backend::<S>(doc.backend)?;
    let mut entries = Vec::with_capacity(doc.entries.len());
    for e in doc.entries {
        let amps = e
            .amp
            .iter()
            .map(|[re, im]| S::decode(re, im))
            .collect::<Result<Vec<_>>>()?;
        entries.push((point(e.x, doc.d)?, amps));
    }
    FiniteState::from_entries(doc.d, entries)
}

/// The `"backend"` tag of a state document.
pub fn state_backend(v: &Value) -> Result<Backend> {
    v.get("backend")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Format("state document has no \"backend\" field".into()))?
        .parse()
}

pub fn measure_to_json<S: Scalar>(m: &Measure<S>) -> Value {
    let doc = MeasureDoc {
        d: m.dim(),
        entries: m
            .iter()
            .map(|(x, v)| MeasureEntry {
                x: x.coords().to_vec(),
                value: v.encode_real(),
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("measure documents serialize")
}

pub fn measure_from_json<S: Scalar>(v: &Value) -> Result<Measure<S>> {
    let doc: MeasureDoc = serde_json::from_value(v.clone())?;
    let mut entries = Vec::with_capacity(doc.entries.len());
    for e in doc.entries {
        entries.push((point(e.x, doc.d)?, S::decode_real(&e.value)?));
    }
    Measure::from_entries(doc.d, entries)
}

pub fn coin_to_json<S: Scalar>(coin: &Coin<S>) -> Value {
    let doc = CoinDoc {
        d: coin.dim(),
        kind: coin.kind(),
        p: coin.p().map(Scalar::encode_real),
        entries: coin
            .rows()
            .iter()
            .map(|row| row.iter().map(Scalar::encode).collect())
            .collect(),
    };
    serde_json::to_value(doc).expect("coin documents serialize")
}

/// Reads a coin document. Grover and Watabe coins are rebuilt from `d`
/// and `p`; custom coins must carry `entries` and pass the unitarity
/// check at `tol`.
pub fn coin_from_json<S: Scalar>(v: &Value, tol: f64) -> Result<Coin<S>> {
    let doc: CoinDoc = serde_json::from_value(v.clone())?;
    match doc.kind {
        CoinKind::Grover => Coin::grover(doc.d),
        CoinKind::Watabe => {
            if doc.d != 2 {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    found: doc.d,
                });
            }
            let p = doc
                .p
                .as_ref()
                .ok_or_else(|| Error::Format("watabe coin needs \"p\"".into()))?;
            let p = match p {
                Value::String(s) if S::BACKEND == Backend::Float => parse_real(s)?,
                other => S::decode_real(other)?,
            };
            Coin::watabe(p)
        }
        CoinKind::Custom => {
            let rows = doc
                .entries
                .iter()
                .map(|row| row.iter().map(|[re, im]| S::decode(re, im)).collect())
                .collect::<Result<Vec<Vec<S>>>>()?;
            Coin::custom(doc.d, rows, tol)
        }
    }
}

/// Backend implied by a coin document's scalars: strings mean exact,
/// numbers mean float. `None` if the document carries no scalars.
pub fn coin_backend(v: &Value) -> Result<Option<Backend>> {
    let mut found: Option<Backend> = None;
    let mut visit = |x: &Value| -> Result<()> {
        let b = match x {
            Value::String(_) => Backend::Exact,
            Value::Number(_) => Backend::Float,
            _ => return Ok(()),
        };
        match found {
            Some(prev) if prev != b => Err(Error::BackendMismatch {
                expected: prev,
                found: b,
            }),
            _ => {
                found = Some(b);
                Ok(())
            }
        }
    };
    if let Some(rows) = v.get("entries").and_then(Value::as_array) {
        for row in rows {
            for pair in row.as_array().into_iter().flatten() {
                for part in pair.as_array().into_iter().flatten() {
                    visit(part)?;
                }
            }
        }
    }
    Ok(found)
}

pub fn weights_to_json<S: Scalar>(w: &WeightSequence<S>) -> Value {
    let doc = WeightsDoc {
        d: w.dim(),
        weights: w
            .iter()
            .map(|(u, w)| WeightEntry {
                u: u.coords().to_vec(),
                w: Value::Array(w.encode().to_vec()),
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("weight documents serialize")
}

/// Reads a weight document. `"w"` is either a `[re, im]` pair in the
/// target backend or a real literal string such as `"1/3"`.
pub fn weights_from_json<S: Scalar>(v: &Value) -> Result<WeightSequence<S>> {
    let doc: WeightsDoc = serde_json::from_value(v.clone())?;
    let mut weights = Vec::with_capacity(doc.weights.len());
    for e in doc.weights {
        let w = match &e.w {
            Value::String(s) => parse_real::<S>(s)?,
            Value::Array(pair) if pair.len() == 2 => S::decode(&pair[0], &pair[1])?,
            other => return Err(Error::Format(format!("bad weight {other}"))),
        };
        weights.push((point(e.u, doc.d)?, w));
    }
    WeightSequence::new(doc.d, weights)
}

pub fn poly_to_json<S: Scalar>(p: &LaurentPoly<S>) -> Value {
    let doc = PolyDoc {
        d: p.dim(),
        terms: p
            .terms()
            .map(|(e, c)| PolyTerm {
                exp: e.clone(),
                coeff: c.encode(),
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("polynomial documents serialize")
}

pub fn poly_from_json<S: Scalar>(v: &Value) -> Result<LaurentPoly<S>> {
    let doc: PolyDoc = serde_json::from_value(v.clone())?;
    let terms = doc
        .terms
        .into_iter()
        .map(|t| Ok((t.exp, S::decode(&t.coeff[0], &t.coeff[1])?)))
        .collect::<Result<Vec<_>>>()?;
    LaurentPoly::from_terms(doc.d, terms)
}
