//! The JSON algebra document and result serializations.
//!
//! Documents use canonical serialization (sorted keys, fixed array
//! orders), so equal algebras produce byte-identical files. Rational
//! scalars appear as `"p/q"` strings; GF(p) residues as plain integers
//! with the modulus in the document's field header.

use jord_core::algebra::{AlgebraError, Parity, Superalgebra, TableBuilder};
use jord_core::check::{CheckReport, SweepMode};
use jord_core::field::{Field, Scalar};
use jord_core::solver::{Classification, DerivationSpace, ExceptionalSet};
use serde_json::{json, Map, Value};
use std::fmt;

/// A schema violation, located by a JSON pointer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaError {
    pub pointer: String,
    pub message: String,
}

impl SchemaError {
    fn at(pointer: impl Into<String>, message: impl Into<String>) -> SchemaError {
        SchemaError {
            pointer: pointer.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "schema error at {}: {}", self.pointer, self.message)
    }
}

impl std::error::Error for SchemaError {}

fn scalar_value(s: &Scalar) -> Value {
    match s {
        Scalar::Q(r) => Value::String(r.to_fraction_string()),
        Scalar::Fp(v) => json!(v),
    }
}

fn field_value(f: &Field) -> Value {
    match f {
        Field::Rationals => json!({"kind": "Q"}),
        Field::GfP(p) => json!({"kind": "GFp", "p": p}),
    }
}

/// Canonical JSON document for an algebra.
pub fn algebra_to_json(alg: &Superalgebra) -> Value {
    let constants: Vec<Value> = alg
        .table()
        .iter()
        .map(|(&(i, j), terms)| {
            let mut coeffs = Map::new();
            for (k, c) in terms {
                coeffs.insert(k.to_string(), scalar_value(c));
            }
            json!({"i": i, "j": j, "coeffs": Value::Object(coeffs)})
        })
        .collect();
    json!({
        "name": alg.name,
        "field": field_value(&alg.field),
        "dim": alg.dim(),
        "parity": alg.parities().iter().map(|p| if p.is_odd() {1} else {0}).collect::<Vec<_>>(),
        "labels": alg.labels(),
        "constants": constants,
    })
}

/// Serializes with sorted keys (serde_json maps are ordered) and a
/// trailing newline.
pub fn save_algebra(alg: &Superalgebra) -> String {
    let mut s = serde_json::to_string_pretty(&algebra_to_json(alg)).expect("serializable");
    s.push('\n');
    s
}

fn as_object<'v>(v: &'v Value, ptr: &str) -> Result<&'v Map<String, Value>, SchemaError> {
    v.as_object()
        .ok_or_else(|| SchemaError::at(ptr, "expected an object"))
}

fn get<'v>(m: &'v Map<String, Value>, key: &str, ptr: &str) -> Result<&'v Value, SchemaError> {
    m.get(key)
        .ok_or_else(|| SchemaError::at(format!("{ptr}/{key}"), "missing"))
}

fn as_usize(v: &Value, ptr: &str) -> Result<usize, SchemaError> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| SchemaError::at(ptr, "expected a non-negative integer"))
}

/// Parses and validates an algebra document.
pub fn load_algebra(text: &str) -> Result<Superalgebra, SchemaError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| SchemaError::at("", format!("invalid JSON: {e}")))?;
    let root = as_object(&value, "")?;

    let fobj = as_object(get(root, "field", "")?, "/field")?;
    let kind = get(fobj, "kind", "/field")?
        .as_str()
        .ok_or_else(|| SchemaError::at("/field/kind", "expected a string"))?;
    let field = match kind {
        "Q" => Field::rationals(),
        "GFp" => {
            let p = get(fobj, "p", "/field")?
                .as_u64()
                .ok_or_else(|| SchemaError::at("/field/p", "expected an integer"))?;
            Field::gf(p).map_err(|e| SchemaError::at("/field/p", e.to_string()))?
        }
        other => {
            return Err(SchemaError::at(
                "/field/kind",
                format!("unknown field kind `{other}`"),
            ))
        }
    };

    let dim = as_usize(get(root, "dim", "")?, "/dim")?;
    if dim == 0 {
        return Err(SchemaError::at("/dim", "dimension must be positive"));
    }

    let parity_v = get(root, "parity", "")?
        .as_array()
        .ok_or_else(|| SchemaError::at("/parity", "expected an array"))?;
    if parity_v.len() != dim {
        return Err(SchemaError::at(
            "/parity",
            format!("length {} does not match dim {dim}", parity_v.len()),
        ));
    }
    let mut parity = Vec::with_capacity(dim);
    for (i, p) in parity_v.iter().enumerate() {
        match p.as_u64() {
            Some(0) => parity.push(Parity::Even),
            Some(1) => parity.push(Parity::Odd),
            _ => return Err(SchemaError::at(format!("/parity/{i}"), "expected 0 or 1")),
        }
    }

    let labels_v = get(root, "labels", "")?
        .as_array()
        .ok_or_else(|| SchemaError::at("/labels", "expected an array"))?;
    if labels_v.len() != dim {
        return Err(SchemaError::at(
            "/labels",
            format!("length {} does not match dim {dim}", labels_v.len()),
        ));
    }
    let mut labels = Vec::with_capacity(dim);
    for (i, l) in labels_v.iter().enumerate() {
        labels.push(
            l.as_str()
                .ok_or_else(|| SchemaError::at(format!("/labels/{i}"), "expected a string"))?
                .to_string(),
        );
    }

    let name = get(root, "name", "")?
        .as_str()
        .ok_or_else(|| SchemaError::at("/name", "expected a string"))?
        .to_string();

    let constants = get(root, "constants", "")?
        .as_array()
        .ok_or_else(|| SchemaError::at("/constants", "expected an array"))?;
    let mut builder = TableBuilder::new();
    for (idx, entry) in constants.iter().enumerate() {
        let ptr = format!("/constants/{idx}");
        let obj = as_object(entry, &ptr)?;
        let i = as_usize(get(obj, "i", &ptr)?, &format!("{ptr}/i"))?;
        let j = as_usize(get(obj, "j", &ptr)?, &format!("{ptr}/j"))?;
        if i >= dim || j >= dim {
            return Err(SchemaError::at(
                &ptr,
                format!("index out of range for dim {dim}"),
            ));
        }
        let coeffs = get(obj, "coeffs", &ptr)?
            .as_object()
            .ok_or_else(|| SchemaError::at(format!("{ptr}/coeffs"), "expected an object"))?;
        for (kstr, cval) in coeffs {
            let cptr = format!("{ptr}/coeffs/{kstr}");
            let k: usize = kstr
                .parse()
                .map_err(|_| SchemaError::at(&cptr, "key must be a basis index"))?;
            if k >= dim {
                return Err(SchemaError::at(
                    &cptr,
                    format!("index out of range for dim {dim}"),
                ));
            }
            let scalar = match (&field, cval) {
                (Field::Rationals, Value::String(s)) => field
                    .parse_scalar(s)
                    .ok_or_else(|| SchemaError::at(&cptr, "expected an exact rational `p/q`"))?,
                (Field::Rationals, _) => {
                    return Err(SchemaError::at(
                        &cptr,
                        "rational coefficients are `p/q` strings",
                    ))
                }
                (Field::GfP(_), Value::Number(n)) => {
                    let v = n
                        .as_i64()
                        .ok_or_else(|| SchemaError::at(&cptr, "expected an integer residue"))?;
                    field.from_i64(v)
                }
                (Field::GfP(_), _) => {
                    return Err(SchemaError::at(&cptr, "GF(p) coefficients are integers"))
                }
            };
            builder.add(&field, i, j, k, scalar);
        }
    }

    Superalgebra::new(name, field, parity, labels, builder).map_err(|e| match e {
        AlgebraError::GradingViolation { i, j, k } => SchemaError::at(
            "/constants",
            format!("grading violation: product of {i} and {j} hits {k} across parities"),
        ),
        other => SchemaError::at("/constants", other.to_string()),
    })
}

/// JSON rendering of a derivation space plus its classification.
pub fn space_to_json(space: &DerivationSpace, class: &Classification) -> Value {
    let basis: Vec<Value> = space
        .basis
        .iter()
        .map(|m| {
            let rows: Vec<Value> = (0..m.mat.rows)
                .map(|r| {
                    Value::Array(
                        (0..m.mat.cols)
                            .map(|c| scalar_value(m.mat.at(r, c)))
                            .collect(),
                    )
                })
                .collect();
            Value::Array(rows)
        })
        .collect();
    json!({
        "algebra": space.algebra,
        "delta": scalar_value(&space.delta),
        "dim": space.dim,
        "parity_split": [space.parity_split.0, space.parity_split.1],
        "classification": class.to_string(),
        "basis": basis,
    })
}

pub fn exceptional_to_json(set: &ExceptionalSet) -> Value {
    json!({
        "generic_rank": set.generic_rank,
        "exceptionals": set.exceptionals.iter().map(|(d, n)| {
            json!({"delta": d.to_fraction_string(), "nullity": n})
        }).collect::<Vec<_>>(),
        "nonrational_degrees": set.nonrational_degrees,
    })
}

pub fn check_to_json(rep: &CheckReport) -> Value {
    let mode = match rep.mode {
        SweepMode::Full => json!({"kind": "full"}),
        SweepMode::Sampled { seed, quadruples } => {
            json!({"kind": "sampled", "seed": seed, "quadruples": quadruples})
        }
    };
    json!({
        "algebra": rep.algebra,
        "identity": rep.identity,
        "passed": rep.passed,
        "mode": mode,
        "witnesses": rep.witnesses.iter().map(|w| json!({
            "indices": w.indices,
            "residual": w.residual.iter().map(scalar_value).collect::<Vec<_>>(),
            "description": w.description,
        })).collect::<Vec<_>>(),
    })
}

/// Pretty canonical rendering with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use jord_core::zoo::{self, ZooSpec};

    #[test]
    fn roundtrip_k3() {
        let a = zoo::construct(Field::rationals(), &ZooSpec::KaplanskyK3).unwrap();
        let text = save_algebra(&a);
        let b = load_algebra(&text).unwrap();
        assert_eq!(a, b);
        // Byte-identical re-serialization (canonical form).
        assert_eq!(save_algebra(&b), text);
    }

    #[test]
    fn parity_length_mismatch_pointer() {
        let a = zoo::construct(Field::rationals(), &ZooSpec::KaplanskyK3).unwrap();
        let mut v = algebra_to_json(&a);
        v["parity"] = json!([0, 1]);
        let err = load_algebra(&render(&v)).unwrap_err();
        assert_eq!(err.pointer, "/parity");
    }

    #[test]
    fn grading_violation_reported() {
        let a = zoo::construct(Field::rationals(), &ZooSpec::KaplanskyK3).unwrap();
        let mut v = algebra_to_json(&a);
        v["parity"] = json!([0, 0, 1]); // z declared even
        let err = load_algebra(&render(&v)).unwrap_err();
        assert!(err.message.contains("grading violation"), "{err}");
    }

    #[test]
    fn gfp_documents_use_integer_coeffs() {
        let f5 = Field::gf(5).unwrap();
        let a = zoo::construct(f5, &ZooSpec::KaplanskyK3).unwrap();
        let text = save_algebra(&a);
        assert!(text.contains("\"GFp\""));
        let b = load_algebra(&text).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn bad_rational_literal_pointer() {
        let a = zoo::construct(Field::rationals(), &ZooSpec::Scalar).unwrap();
        let mut v = algebra_to_json(&a);
        v["constants"][0]["coeffs"]["0"] = json!("1/0");
        let err = load_algebra(&render(&v)).unwrap_err();
        assert_eq!(err.pointer, "/constants/0/coeffs/0");
    }
}
