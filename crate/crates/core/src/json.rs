//! JSON encodings of vertices, permutations, oracles and results.
//!
//! ```text
//! vertex   {"period": 2, "pattern": "+-", "overrides": {"5": "-"}}
//! perm     {"moves": {"1": -2, "2": -1}}   or   {"perm": {"1": 3, "3": 1}, "signs": {"2": -1}}
//! oracle   {"type": "regular", "perm": <perm>}
//!          {"type": "piecewise", "cases": [{"component_rep": <vertex>, "perm": <perm>}]}
//!          {"type": "table", "entries": [{"from": <vertex>, "to": <vertex>}]}
//! result   {"window": [..], "action": {"1": 2}, "queries": n, "checked_at": [<vertex>..]}
//! cube     {"n": 3, "map": {"000": "101", ..}}
//! ```
//!
//! Everything is canonicalized on load.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::Value;

use crate::automorphism::{AutomorphismOracle, ReconstructionResult, Verdict};
use crate::error::{Error, Result};
use crate::finite::{cube_map_strings, parse_bits, CubeAutomorphism};
use crate::symplectic::{SymplecticPerm, WreathPair};
use crate::vertex::{Distance, Sign, SignRule, Vertex};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexJson {
    period: i64,
    pattern: String,
    #[serde(default)]
    overrides: BTreeMap<String, String>,
}

fn parse_index(key: &str) -> Result<u64> {
    match key.trim().parse::<i64>() {
        Ok(i) if i >= 1 => Ok(i as u64),
        Ok(i) => Err(Error::InvalidIndex(i)),
        Err(_) => Err(Error::Json(format!("index {key:?} is not an integer"))),
    }
}

fn parse_sign_str(s: &str) -> Result<Sign> {
    let mut chars = s.chars();
    match (chars.next().and_then(Sign::from_char), chars.next()) {
        (Some(sign), None) => Ok(sign),
        _ => Err(Error::Json(format!(
            "sign must be \"+\" or \"-\", got {s:?}"
        ))),
    }
}

impl TryFrom<VertexJson> for Vertex {
    type Error = Error;

    fn try_from(raw: VertexJson) -> Result<Vertex> {
        if raw.period < 1 {
            return Err(Error::InvalidRule(format!(
                "period {} must be positive",
                raw.period
            )));
        }
        let pattern = raw
            .pattern
            .chars()
            .map(|c| {
                Sign::from_char(c)
                    .ok_or_else(|| Error::Json(format!("bad pattern character {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let overrides = raw
            .overrides
            .iter()
            .map(|(k, v)| Ok((parse_index(k)?, parse_sign_str(v)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Vertex::new(SignRule {
            period: raw.period as usize,
            pattern,
            overrides,
        })
    }
}

pub fn vertex_to_value(v: &Vertex) -> Value {
    let pattern: String = v.pattern().iter().map(|s| s.as_char()).collect();
    let overrides: BTreeMap<String, String> = v
        .overrides()
        .iter()
        .map(|(i, s)| (i.to_string(), s.as_char().to_string()))
        .collect();
    serde_json::json!({
        "period": v.period(),
        "pattern": pattern,
        "overrides": numeric_keys(overrides),
    })
}

pub fn vertex_from_value(value: Value) -> Result<Vertex> {
    serde_json::from_value::<VertexJson>(value)?.try_into()
}

pub fn parse_vertex(text: &str) -> Result<Vertex> {
    vertex_from_value(serde_json::from_str(text)?)
}

#[derive(Debug, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum PermJson {
    Direct {
        moves: BTreeMap<String, i64>,
    },
    Wreath {
        #[serde(default)]
        perm: BTreeMap<String, i64>,
        #[serde(default)]
        signs: BTreeMap<String, i64>,
    },
}

impl TryFrom<PermJson> for SymplecticPerm {
    type Error = Error;

    fn try_from(raw: PermJson) -> Result<SymplecticPerm> {
        match raw {
            PermJson::Direct { moves } => {
                let moves = moves
                    .iter()
                    .map(|(k, &x)| Ok((parse_index(k)?, x)))
                    .collect::<Result<Vec<_>>>()?;
                SymplecticPerm::from_moves(moves)
            }
            PermJson::Wreath { perm, signs } => {
                let perm = perm
                    .iter()
                    .map(|(k, &x)| {
                        if x < 1 {
                            return Err(Error::InvalidPermutation(format!(
                                "perm image {x} is not positive"
                            )));
                        }
                        Ok((parse_index(k)?, x as u64))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let mut flips = Vec::new();
                for (k, &x) in &signs {
                    let k = parse_index(k)?;
                    match x {
                        -1 => flips.push(k),
                        1 => {}
                        _ => return Err(Error::InvalidPermutation(format!("sign {x} is not ±1"))),
                    }
                }
                Ok(SymplecticPerm::from_wreath(&WreathPair::new(perm, flips)?))
            }
        }
    }
}

pub fn perm_from_value(value: Value) -> Result<SymplecticPerm> {
    if !value.is_object() {
        return Err(Error::Json("permutation must be a JSON object".into()));
    }
    serde_json::from_value::<PermJson>(value)?.try_into()
}

pub fn parse_perm(text: &str) -> Result<SymplecticPerm> {
    perm_from_value(serde_json::from_str(text)?)
}

/// Direct form, `{"moves": {...}}`.
pub fn perm_to_value(s: &SymplecticPerm) -> Value {
    let moves: BTreeMap<String, i64> = s.moves().iter().map(|(i, x)| (i.to_string(), *x)).collect();
    serde_json::json!({ "moves": numeric_keys(moves) })
}

pub fn wreath_to_value(w: &WreathPair) -> Value {
    let perm: BTreeMap<String, i64> = w
        .perm()
        .iter()
        .map(|(i, j)| (i.to_string(), *j as i64))
        .collect();
    let signs: BTreeMap<String, i64> = w.signs().iter().map(|i| (i.to_string(), -1)).collect();
    serde_json::json!({ "perm": numeric_keys(perm), "signs": numeric_keys(signs) })
}

/// Re-orders decimal-string keys numerically (so `"10"` follows `"9"`).
fn numeric_keys<V: Into<Value>>(map: BTreeMap<String, V>) -> Value {
    let mut entries: Vec<(String, V)> = map.into_iter().collect();
    entries.sort_by_key(|(k, _)| k.parse::<u64>().unwrap_or(u64::MAX));
    Value::Object(entries.into_iter().map(|(k, v)| (k, v.into())).collect())
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum OracleJson {
    Regular { perm: Value },
    Piecewise { cases: Vec<CaseJson> },
    Table { entries: Vec<EntryJson> },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryJson {
    from: Value,
    to: Value,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CaseJson {
    component_rep: Value,
    perm: Value,
}

pub fn oracle_from_value(value: Value) -> Result<AutomorphismOracle> {
    match serde_json::from_value::<OracleJson>(value)? {
        OracleJson::Regular { perm } => Ok(AutomorphismOracle::Regular(perm_from_value(perm)?)),
        OracleJson::Piecewise { cases } => {
            let cases = cases
                .into_iter()
                .map(|c| {
                    Ok((
                        vertex_from_value(c.component_rep)?,
                        perm_from_value(c.perm)?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            AutomorphismOracle::piecewise(cases)
        }
        OracleJson::Table { entries } => {
            let mut table = BTreeMap::new();
            for e in entries {
                let from = vertex_from_value(e.from)?;
                if table
                    .insert(from.clone(), vertex_from_value(e.to)?)
                    .is_some()
                {
                    return Err(Error::InvalidOracle(format!("{from} listed twice")));
                }
            }
            // Trusted like any callback; reconstruction detects violations.
            Ok(AutomorphismOracle::callback(move |v| {
                table.get(v).cloned().unwrap_or_else(|| v.clone())
            }))
        }
    }
}

pub fn parse_oracle(text: &str) -> Result<AutomorphismOracle> {
    oracle_from_value(serde_json::from_str(text)?)
}

/// Fails for callback oracles, which have no JSON form.
pub fn oracle_to_value(f: &AutomorphismOracle) -> Result<Value> {
    match f {
        AutomorphismOracle::Regular(s) => {
            Ok(serde_json::json!({"type": "regular", "perm": perm_to_value(s)}))
        }
        AutomorphismOracle::Piecewise(cases) => {
            let cases: Vec<Value> = cases
                .iter()
                .map(|(rep, s)| serde_json::json!({"component_rep": vertex_to_value(rep), "perm": perm_to_value(s)}))
                .collect();
            Ok(serde_json::json!({"type": "piecewise", "cases": cases}))
        }
        AutomorphismOracle::Callback(_) => {
            Err(Error::Json("callback oracles cannot be serialized".into()))
        }
    }
}

pub fn result_to_value(r: &ReconstructionResult) -> Value {
    let action: BTreeMap<String, i64> = r.action.iter().map(|(i, x)| (i.to_string(), *x)).collect();
    serde_json::json!({
        "window": r.window.iter().collect::<Vec<_>>(),
        "action": numeric_keys(action),
        "queries": r.queries,
        "checked_at": r.checked_at.iter().map(vertex_to_value).collect::<Vec<_>>(),
    })
}

pub fn verdict_to_value(v: &Verdict) -> Value {
    match v {
        Verdict::NonRegular {
            index,
            reps,
            images,
        } => serde_json::json!({
            "verdict": "non_regular",
            "witness": {
                "index": index,
                "reps": [reps.0, reps.1],
                "images": [images.0, images.1],
            }
        }),
        Verdict::ConsistentWithinWindow => {
            serde_json::json!({"verdict": "consistent_within_window"})
        }
    }
}

pub fn distance_to_value(d: Distance) -> Value {
    match d {
        Distance::Finite(n) => Value::from(n),
        Distance::Infinite => Value::from("infinity"),
    }
}

pub fn cube_to_value(a: &CubeAutomorphism) -> Value {
    serde_json::json!({"n": a.dim(), "map": cube_map_strings(a)})
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CubeJson {
    n: usize,
    map: BTreeMap<String, String>,
}

pub fn parse_cube(text: &str) -> Result<CubeAutomorphism> {
    let raw: CubeJson = serde_json::from_str(text)?;
    let mut map = vec![None; 1usize.checked_shl(raw.n as u32).unwrap_or(0)];
    for (from, to) in &raw.map {
        let (n1, a) = parse_bits(from)?;
        let (n2, b) = parse_bits(to)?;
        if n1 != raw.n || n2 != raw.n {
            return Err(Error::Json(format!(
                "bit string length differs from n = {}",
                raw.n
            )));
        }
        map[a as usize] = Some(b);
    }
    let map = map
        .into_iter()
        .collect::<Option<Vec<u32>>>()
        .ok_or_else(|| Error::Json("cube map is not total".into()))?;
    CubeAutomorphism::new(raw.n, map)
}
