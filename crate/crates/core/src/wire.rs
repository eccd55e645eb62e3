//! JSON encoding shared by the command line and the tests.
//!
//! Rationals are JSON integers when integral and `"n/d"` strings otherwise.
//! Matrices are arrays of rows. Polynomials are either a human-readable
//! string such as `"X^3 - 2"` or an array of coefficients from the constant
//! term up. A multiplicity function is a list of `{"p", "n", "mult"}`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::equations::SolutionSpace;
use crate::error::{Error, Result};
use crate::exactfield::{format_rational, parse_rational, Matrix, Polynomial, Rational};
use crate::jordan::{InvariantSubspaceSpec, MuKey};
use crate::multiplicity::MultiplicityFunction;
use crate::oracle::EquationSpec;
use crate::spectrum::IrreduciblePoly;

fn parse_err(what: &str, v: &Value) -> Error {
    Error::Parse(format!("expected {what}, found {v}"))
}

pub fn rational_to_json(q: &Rational) -> Value {
    if q.is_integer() {
        if let Some(n) = q.numer().to_i64() {
            return json!(n);
        }
    }
    Value::String(format_rational(q))
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => {
            let n = n
                .as_i64()
                .map(BigInt::from)
                .or_else(|| n.as_u64().map(BigInt::from))
                .ok_or_else(|| parse_err("an integer or \"n/d\" string", v))?;
            Ok(Rational::from_integer(n))
        }
        Value::String(s) => parse_rational(s),
        _ => Err(parse_err("a rational", v)),
    }
}

pub fn vector_to_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_to_json).collect())
}

pub fn vector_from_json(v: &Value) -> Result<Vec<Rational>> {
    v.as_array()
        .ok_or_else(|| parse_err("an array", v))?
        .iter()
        .map(rational_from_json)
        .collect()
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector_to_json(m.row(i))).collect())
}

/// Accepts an array of rows, or `{"matrix": rows}`.
pub fn matrix_from_json(v: &Value) -> Result<Matrix> {
    if let Some(inner) = v.get("matrix") {
        return matrix_from_json(inner);
    }
    let rows = v
        .as_array()
        .ok_or_else(|| parse_err("an array of rows", v))?
        .iter()
        .map(vector_from_json)
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Ok(Matrix::zeros(0, 0));
    }
    Matrix::from_rows(rows)
}

pub fn poly_to_json(p: &Polynomial) -> Value {
    Value::Array(p.coeffs().iter().map(|c| Value::String(format_rational(c))).collect())
}

pub fn poly_from_json(v: &Value) -> Result<Polynomial> {
    match v {
        Value::String(s) => Polynomial::parse(s),
        Value::Array(_) => Ok(Polynomial::new(vector_from_json(v)?)),
        _ => Err(parse_err("a polynomial", v)),
    }
}

/// Certifies a polynomial, falling back on the hint list for degrees the
/// library cannot prove irreducible on its own.
pub fn resolve_poly(p: Polynomial, hints: &[IrreduciblePoly]) -> Result<IrreduciblePoly> {
    match IrreduciblePoly::new(p.clone()) {
        Err(Error::NeedsHint(_)) if hints.iter().any(|h| *h.poly() == p) => IrreduciblePoly::hinted(p),
        other => other,
    }
}

/// A hint file: an array of polynomials asserted irreducible.
pub fn hints_from_json(v: &Value) -> Result<Vec<IrreduciblePoly>> {
    v.as_array()
        .ok_or_else(|| parse_err("an array of polynomials", v))?
        .iter()
        .map(|p| IrreduciblePoly::hinted(poly_from_json(p)?))
        .collect()
}

pub fn aleph_to_json(aleph: &MultiplicityFunction) -> Value {
    Value::Array(
        aleph
            .entries()
            .map(|(p, n, mult)| json!({"p": poly_to_json(p.poly()), "n": n, "mult": mult}))
            .collect(),
    )
}

fn usize_field(obj: &Value, key: &str) -> Result<usize> {
    obj.get(key)
        .and_then(Value::as_u64)
        .map(|n| n as usize)
        .ok_or_else(|| Error::Parse(format!("missing or invalid field {key:?} in {obj}")))
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::Parse(format!("missing field {key:?} in {obj}")))
}

/// Accepts a list of entries, or `{"aleph": list}`. `mult` defaults to 1.
pub fn aleph_from_json(v: &Value, hints: &[IrreduciblePoly]) -> Result<MultiplicityFunction> {
    if let Some(inner) = v.get("aleph") {
        return aleph_from_json(inner, hints);
    }
    let mut aleph = MultiplicityFunction::new();
    for entry in v.as_array().ok_or_else(|| parse_err("an array of blocks", v))? {
        let p = resolve_poly(poly_from_json(field(entry, "p")?)?, hints)?;
        let n = usize_field(entry, "n")?;
        let mult = match entry.get("mult") {
            None => 1,
            Some(_) => usize_field(entry, "mult")?,
        };
        aleph.add(p, n, mult)?;
    }
    Ok(aleph)
}

pub fn solution_space_to_json(s: &SolutionSpace) -> Value {
    let mut obj = Map::new();
    obj.insert("dim".into(), json!(s.dim()));
    if let Some(offset) = &s.offset {
        obj.insert("offset".into(), matrix_to_json(offset));
    }
    obj.insert("basis".into(), Value::Array(s.basis.iter().map(matrix_to_json).collect()));
    Value::Object(obj)
}

/// `{code, message, context}`.
pub fn error_to_json(e: &Error, context: Value) -> Value {
    json!({"code": e.code(), "message": e.to_string(), "context": context})
}

/// `{"kind": ..., ...}` with kinds `intertwine` (`t1`, `t2`), `lambda_comm`
/// (`t`, `lambda`), `inhom_comm` (`t`), `transpose_pair` (`j`),
/// `symmetric_transpose_pair` (`j`) and `derivation` (`ad`).
pub fn equation_spec_from_json(v: &Value) -> Result<EquationSpec> {
    let kind = field(v, "kind")?
        .as_str()
        .ok_or_else(|| parse_err("a string kind", v))?;
    let m = |key: &str| field(v, key).and_then(matrix_from_json);
    Ok(match kind {
        "intertwine" => EquationSpec::Intertwine { t1: m("t1")?, t2: m("t2")? },
        "lambda_comm" => EquationSpec::LambdaComm {
            t: m("t")?,
            lambda: rational_from_json(field(v, "lambda")?)?,
        },
        "inhom_comm" => EquationSpec::InhomComm { t: m("t")? },
        "transpose_pair" => EquationSpec::TransposePair { j: m("j")? },
        "symmetric_transpose_pair" => EquationSpec::SymmetricTransposePair { j: m("j")? },
        "derivation" => EquationSpec::Derivation { ad: m("ad")? },
        other => return Err(Error::Parse(format!("unknown equation kind {other:?}"))),
    })
}

/// `{"beth": aleph, "mu": [{"p", "n", "beta", "k", "alpha", "shift", "value"}]}`.
pub fn subspace_spec_from_json(v: &Value, hints: &[IrreduciblePoly]) -> Result<InvariantSubspaceSpec> {
    let mut spec = InvariantSubspaceSpec::new(aleph_from_json(field(v, "beth")?, hints)?);
    let entries = match v.get("mu") {
        None => return Ok(spec),
        Some(mu) => mu.as_array().ok_or_else(|| parse_err("an array", mu))?,
    };
    for e in entries {
        let key = MuKey {
            p: resolve_poly(poly_from_json(field(e, "p")?)?, hints)?,
            n: usize_field(e, "n")?,
            beta: usize_field(e, "beta")?,
            k: usize_field(e, "k")?,
            alpha: usize_field(e, "alpha")?,
            shift: usize_field(e, "shift")?,
        };
        spec.set(key, poly_from_json(field(e, "value")?)?);
    }
    Ok(spec)
}
