//! JSON encoding of the core types and parsing of construction data files.
//!
//! Scalars serialize as `"p/q"` strings when rational and as
//! `{conductor, coeffs}` objects otherwise; both forms (and bare integers)
//! are accepted on input.

use std::collections::BTreeSet;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use maxrank_core::abelian::{AbelianGroup, GroupElement};
use maxrank_core::brackets::{BracketSpec, OrderingTag, Provenance};
use maxrank_core::multivec::Multivector;
use maxrank_core::rootsys::RootSystem;
use maxrank_core::scalars::CycQ;
use maxrank_core::subsystems::{GammaTable, Subsystem};

pub fn cycq_to_json(v: &CycQ) -> Value {
    json!({
        "conductor": v.conductor(),
        "coeffs": v.coefficients().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

pub fn cycq_from_json(v: &Value) -> Result<CycQ, String> {
    match v {
        Value::Number(n) => {
            let i = n.as_i64().ok_or("scalar number must be an integer")?;
            Ok(CycQ::from_int(i))
        }
        Value::String(s) => {
            let r = BigRational::from_str(s).map_err(|e| format!("bad rational `{s}`: {e}"))?;
            Ok(CycQ::from_rational(r))
        }
        Value::Object(o) => {
            let conductor = o
                .get("conductor")
                .and_then(Value::as_u64)
                .ok_or("scalar object needs a `conductor`")? as u32;
            let coeffs = o
                .get("coeffs")
                .and_then(Value::as_array)
                .ok_or("scalar object needs `coeffs`")?;
            let parsed: Result<Vec<BigRational>, String> = coeffs
                .iter()
                .map(|c| match c {
                    Value::String(s) => {
                        BigRational::from_str(s).map_err(|e| format!("bad rational `{s}`: {e}"))
                    }
                    Value::Number(n) => n
                        .as_i64()
                        .map(|i| BigRational::from_integer(BigInt::from(i)))
                        .ok_or_else(|| "coefficient must be an integer or string".to_string()),
                    _ => Err("coefficient must be an integer or string".to_string()),
                })
                .collect();
            CycQ::from_coeffs(conductor, parsed?)
                .map_err(|e| format!("bad scalar coefficients: {e}"))
        }
        _ => Err("scalar must be a number, string, or object".into()),
    }
}

pub fn group_to_json(g: &AbelianGroup) -> Value {
    json!({
        "free_rank": g.free_rank(),
        "invariant_factors": g
            .invariant_factors()
            .iter()
            .map(|d| d.to_string().parse::<u64>().unwrap_or(0))
            .collect::<Vec<_>>(),
    })
}

pub fn element_to_json(e: &GroupElement) -> Value {
    json!({
        "torsion": e.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        "free": e.free.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
    })
}

pub fn multivector_to_json(m: &Multivector, rs: &RootSystem) -> Value {
    let rank = rs.rank();
    let terms: Vec<Value> = m
        .terms()
        .map(|(idx, c)| {
            let basis: Vec<String> = idx
                .iter()
                .map(|&i| {
                    let i = i as usize;
                    if i < rank {
                        format!("h{}", i + 1)
                    } else {
                        format!("E{:?}", rs.root(i - rank).coords)
                    }
                })
                .collect();
            json!({"basis": basis, "coefficient": cycq_to_json(c)})
        })
        .collect();
    json!({"degree": m.degree(), "terms": terms})
}

pub fn subsystem_to_json(sub: &Subsystem, chain_string: &str) -> Map<String, Value> {
    let rs = sub.root_system();
    let mut m = Map::new();
    m.insert("type".into(), Value::String(rs.label().to_string()));
    m.insert("rank".into(), json!(rs.rank()));
    m.insert("chain".into(), Value::String(chain_string.to_string()));
    m.insert(
        "P_roots".into(),
        json!(sub.roots().iter().map(|&i| rs.root(i).coords.clone()).collect::<Vec<_>>()),
    );
    m.insert(
        "base".into(),
        json!(sub.base().iter().map(|&i| rs.root(i).coords.clone()).collect::<Vec<_>>()),
    );
    m
}

pub fn gamma_to_json(sub: &Subsystem, gamma: &GammaTable) -> Value {
    let rs = sub.root_system();
    let images: Vec<Value> = (0..rs.num_roots())
        .map(|i| {
            json!({
                "root": rs.root(i).coords,
                "in_P": sub.contains(i),
                "image": element_to_json(&gamma.images[i]),
            })
        })
        .collect();
    let zero_images: Vec<Value> = gamma
        .zero_image_complement_roots(sub)
        .iter()
        .map(|&i| json!(rs.root(i).coords))
        .collect();
    json!({
        "gamma": group_to_json(&gamma.group),
        "root_images": images,
        "zero_image_complement_roots": zero_images,
    })
}

pub fn spec_to_json(
    spec: &BracketSpec,
    sub: &Subsystem,
    gamma: &GammaTable,
    chain_string: &str,
) -> Value {
    let classes: Vec<Value> = spec
        .classes()
        .map(|(class, c)| json!({"class": element_to_json(class), "coefficient": cycq_to_json(c)}))
        .collect();
    let provenance = match &spec.provenance {
        Provenance::Phi { psi_gens, chi_values, ordering } => json!({
            "kind": "phi",
            "psi_gens": psi_gens.iter().map(element_to_json).collect::<Vec<_>>(),
            "chi": chi_values.iter().map(cycq_to_json).collect::<Vec<_>>(),
            "ordering": {"perm": ordering.perm, "negate": ordering.negate},
        }),
        Provenance::Poisson { psi_gens, lambda_values } => json!({
            "kind": "poisson",
            "psi_gens": psi_gens.iter().map(element_to_json).collect::<Vec<_>>(),
            "lambda": lambda_values.iter().map(cycq_to_json).collect::<Vec<_>>(),
        }),
        Provenance::Explicit => json!({"kind": "explicit"}),
    };
    let _ = gamma;
    let _ = sub;
    json!({
        "chain": chain_string,
        "kappa2": cycq_to_json(&spec.kappa2),
        "classes": classes,
        "provenance": provenance,
    })
}

// ---------------------------------------------------------------------------
// construction data files
// ---------------------------------------------------------------------------

/// Parsed `--data` contents for classify/verify.
pub enum ConstructionData {
    Phi { psi_gens: Vec<Vec<BigInt>>, chi: Vec<CycQ>, ordering: Option<(Vec<usize>, Vec<bool>)> },
    Poisson { psi_gens: Vec<Vec<BigInt>>, lambda: Vec<CycQ> },
    Explicit { coeffs: Vec<(Vec<i64>, CycQ)>, kappa2: CycQ },
}

fn parse_int_vectors(v: &Value, field: &str) -> Result<Vec<Vec<BigInt>>, String> {
    let arr = v.as_array().ok_or_else(|| format!("`{field}` must be an array"))?;
    arr.iter()
        .map(|row| {
            let row = row.as_array().ok_or_else(|| format!("`{field}` rows must be arrays"))?;
            row.iter()
                .map(|x| {
                    x.as_i64()
                        .map(BigInt::from)
                        .ok_or_else(|| format!("`{field}` entries must be integers"))
                })
                .collect()
        })
        .collect()
}

pub fn parse_construction_data(raw: &str) -> Result<ConstructionData, String> {
    let v: Value = serde_json::from_str(raw).map_err(|e| format!("bad JSON: {e}"))?;
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or("data file needs a `kind` of phi, poisson, or explicit")?;
    let parse_values = |field: &str| -> Result<Vec<CycQ>, String> {
        match v.get(field) {
            Some(Value::Array(a)) => a.iter().map(cycq_from_json).collect(),
            Some(_) => Err(format!("`{field}` must be an array")),
            None => Ok(Vec::new()),
        }
    };
    match kind {
        "phi" => {
            let psi_gens = match v.get("psi_gens") {
                Some(g) => parse_int_vectors(g, "psi_gens")?,
                None => Vec::new(),
            };
            let chi = parse_values("chi")?;
            let ordering = match v.get("ordering") {
                None => None,
                Some(o) => {
                    let perm = o
                        .get("perm")
                        .and_then(Value::as_array)
                        .ok_or("`ordering` needs `perm`")?
                        .iter()
                        .map(|x| x.as_u64().map(|u| u as usize).ok_or("bad perm entry"))
                        .collect::<Result<Vec<_>, _>>()?;
                    let negate = o
                        .get("negate")
                        .and_then(Value::as_array)
                        .ok_or("`ordering` needs `negate`")?
                        .iter()
                        .map(|x| x.as_bool().ok_or("bad negate entry"))
                        .collect::<Result<Vec<_>, _>>()?;
                    Some((perm, negate))
                }
            };
            Ok(ConstructionData::Phi { psi_gens, chi, ordering })
        }
        "poisson" => {
            let psi_gens = match v.get("psi_gens") {
                Some(g) => parse_int_vectors(g, "psi_gens")?,
                None => Vec::new(),
            };
            let lambda = parse_values("lambda")?;
            Ok(ConstructionData::Poisson { psi_gens, lambda })
        }
        "explicit" => {
            let coeffs = v
                .get("coeffs")
                .and_then(Value::as_array)
                .ok_or("explicit data needs `coeffs`")?
                .iter()
                .map(|entry| -> Result<(Vec<i64>, CycQ), String> {
                    let root = entry
                        .get("root")
                        .and_then(Value::as_array)
                        .ok_or("coeff entry needs `root`")?
                        .iter()
                        .map(|x| x.as_i64().ok_or("bad root coordinate"))
                        .collect::<Result<Vec<_>, _>>()?;
                    let c = cycq_from_json(entry.get("c").ok_or("coeff entry needs `c`")?)?;
                    Ok((root, c))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let kappa2 = match v.get("kappa2") {
                Some(k) => cycq_from_json(k)?,
                None => CycQ::zero(),
            };
            Ok(ConstructionData::Explicit { coeffs, kappa2 })
        }
        other => Err(format!("unknown data kind `{other}`")),
    }
}

/// Project ambient lattice vectors to group elements, checking lengths.
pub fn project_gens(
    group: &AbelianGroup,
    rank: usize,
    gens: &[Vec<BigInt>],
) -> Result<Vec<GroupElement>, String> {
    gens.iter()
        .map(|g| {
            if g.len() != rank {
                return Err(format!("psi generator has length {}, expected {rank}", g.len()));
            }
            Ok(group.project(g))
        })
        .collect()
}

pub fn ordering_from_data(
    data: Option<(Vec<usize>, Vec<bool>)>,
    dim: usize,
) -> OrderingTag {
    match data {
        Some((perm, negate)) => OrderingTag { perm, negate },
        None => OrderingTag::lex(dim),
    }
}

/// Root-set key rendered as coordinate vectors, for stable report output.
pub fn root_set_json(rs: &RootSystem, set: &BTreeSet<usize>) -> Value {
    json!(set.iter().map(|&i| rs.root(i).coords.clone()).collect::<Vec<_>>())
}
