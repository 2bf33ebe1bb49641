//! JSON encoding of fields, elements, polynomials, matrices and manifests.
//!
//! Canonical form: rationals are JSON integers when integral and small
//! enough for `i64`, otherwise `"p/q"` (or `"n"`) strings; residues are
//! integers in `[0, p)`; extension elements are coefficient arrays, low to
//! high, of length `deg(minpoly)`. Keys are emitted sorted and documents are
//! pretty-printed with a trailing newline, so `serialize(parse(text))`
//! reproduces canonical inputs byte for byte.

use std::collections::BTreeMap;
use std::fmt;

use comsub::fields::parse_rational;
use comsub::{Elem, Field, FieldKind, Matrix, Poly, Subspace};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "1";

/// Anything wrong with user-supplied input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormatError(pub String);

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for FormatError {}

impl From<comsub::Error> for FormatError {
    fn from(e: comsub::Error) -> Self {
        FormatError(e.to_string())
    }
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError(format!("invalid JSON: {e}"))
    }
}

pub type Result<T> = std::result::Result<T, FormatError>;

fn bad<T>(msg: impl Into<String>) -> Result<T> {
    Err(FormatError(msg.into()))
}

// ---- fields ----

pub fn field_to_json(field: &Field) -> Value {
    match field.kind() {
        FieldKind::Rational => json!({ "kind": "rational" }),
        FieldKind::Prime(p) => json!({ "kind": "prime", "p": p }),
        FieldKind::Extension(e) => json!({
            "kind": "extension",
            "base": field_to_json(e.base()),
            "minpoly": poly_to_json(e.modulus()),
            "gen": e.name(),
        }),
    }
}

pub fn field_from_json(v: &Value) -> Result<Field> {
    let obj = v.as_object().ok_or_else(|| FormatError("field descriptor must be an object".into()))?;
    match obj.get("kind").and_then(Value::as_str) {
        Some("rational") => Ok(Field::rational()),
        Some("prime") => {
            let p = obj.get("p").and_then(Value::as_u64).ok_or_else(|| FormatError("prime field needs integer \"p\"".into()))?;
            Ok(Field::prime(p)?)
        }
        Some("extension") => {
            let base = field_from_json(obj.get("base").ok_or_else(|| FormatError("extension needs \"base\"".into()))?)?;
            let minpoly = poly_from_json(&base, obj.get("minpoly").ok_or_else(|| FormatError("extension needs \"minpoly\"".into()))?)?;
            let gen = match obj.get("gen") {
                None => "a",
                Some(g) => g.as_str().ok_or_else(|| FormatError("\"gen\" must be a string".into()))?,
            };
            Ok(Field::extension(&base, &minpoly, gen)?)
        }
        Some(other) => bad(format!("unknown field kind {other:?}")),
        None => bad("field descriptor needs a \"kind\""),
    }
}

/// Command-line field: `q`, `fp:P`, inline JSON, or a path to a JSON file.
pub fn parse_field_arg(s: &str) -> Result<Field> {
    let t = s.trim();
    match t {
        "q" | "Q" | "rational" => return Ok(Field::rational()),
        _ => {}
    }
    if let Some(p) = t.strip_prefix("fp:").or_else(|| t.strip_prefix("F_")) {
        let p: u64 = p.trim().parse().map_err(|_| FormatError(format!("bad prime in {t:?}")))?;
        return Ok(Field::prime(p)?);
    }
    let text = if t.starts_with('{') { t.to_string() } else { read_file(t)? };
    field_from_json(&serde_json::from_str(&text)?)
}

fn same_desc(a: &Field, b: &Field) -> bool {
    field_to_json(a) == field_to_json(b)
}

// ---- elements ----

fn rational_to_json(r: &BigRational) -> Value {
    if r.is_integer() {
        if let Some(i) = r.numer().to_i64() {
            return json!(i);
        }
    }
    Value::String(r.to_string())
}

fn json_to_rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(BigRational::from_integer(BigInt::from(i))),
            None => match n.as_u64() {
                Some(u) => Ok(BigRational::from_integer(BigInt::from(u))),
                None => bad(format!("{n} is not an integer; write fractions as \"p/q\" strings")),
            },
        },
        Value::String(s) => Ok(parse_rational(s)?),
        other => bad(format!("expected a number or \"p/q\" string, found {other}")),
    }
}

pub fn elem_to_json(field: &Field, x: &Elem) -> Value {
    match (field.kind(), x) {
        (FieldKind::Rational, Elem::Rat(r)) => rational_to_json(r),
        (FieldKind::Prime(_), Elem::Mod(v)) => json!(v),
        (FieldKind::Extension(e), Elem::Ext(c)) => Value::Array(c.iter().map(|y| elem_to_json(e.base(), y)).collect()),
        _ => Value::Null,
    }
}

pub fn elem_from_json(field: &Field, v: &Value) -> Result<Elem> {
    match field.kind() {
        FieldKind::Rational | FieldKind::Prime(_) => Ok(field.from_rational(&json_to_rational(v)?)?),
        FieldKind::Extension(e) => {
            let arr = v.as_array().ok_or_else(|| FormatError(format!("extension element must be an array, found {v}")))?;
            if arr.len() != e.degree() {
                return bad(format!("extension element needs {} coefficients, found {}", e.degree(), arr.len()));
            }
            let coeffs = arr.iter().map(|c| elem_from_json(e.base(), c)).collect::<Result<Vec<_>>>()?;
            Ok(field.from_base_coeffs(&coeffs))
        }
    }
}

pub fn vector_to_json(field: &Field, v: &[Elem]) -> Value {
    Value::Array(v.iter().map(|x| elem_to_json(field, x)).collect())
}

// ---- polynomials ----

pub fn poly_to_json(p: &Poly) -> Value {
    vector_to_json(p.field(), p.coeffs())
}

pub fn poly_from_json(field: &Field, v: &Value) -> Result<Poly> {
    let arr = v.as_array().ok_or_else(|| FormatError("polynomial must be a coefficient array".into()))?;
    let coeffs = arr.iter().map(|c| elem_from_json(field, c)).collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(field.clone(), coeffs))
}

/// Parses `x^4 + x^3 - 3/2*x + 1` style text; coefficients are rationals
/// mapped into the field. The variable may be any identifier.
pub fn parse_poly_text(field: &Field, s: &str) -> Result<Poly> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return bad("empty polynomial");
    }
    let mut terms: Vec<String> = Vec::new();
    let mut current = String::new();
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !current.ends_with('^') {
            terms.push(std::mem::take(&mut current));
        }
        current.push(ch);
    }
    terms.push(current);
    let mut coeffs: BTreeMap<usize, BigRational> = BTreeMap::new();
    let mut var: Option<String> = None;
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, term.strip_prefix('+').unwrap_or(&term)),
        };
        if body.is_empty() {
            return bad(format!("dangling sign in {s:?}"));
        }
        let split = body.find(|c: char| c.is_ascii_alphabetic());
        let (coef_text, mono) = match split {
            Some(i) => (body[..i].trim_end_matches('*'), &body[i..]),
            None => (body, ""),
        };
        let coef = if coef_text.is_empty() {
            BigRational::from_integer(BigInt::from(1))
        } else {
            parse_rational(coef_text).map_err(|_| FormatError(format!("bad coefficient {coef_text:?} in {s:?}")))?
        };
        let degree = if mono.is_empty() {
            0
        } else {
            let (name, pow) = match mono.split_once('^') {
                Some((n, p)) => (n, p.parse::<usize>().map_err(|_| FormatError(format!("bad exponent in {mono:?}")))?),
                None => (mono, 1),
            };
            if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return bad(format!("bad monomial {mono:?}"));
            }
            match &var {
                Some(v) if v != name => return bad(format!("mixed variables {v:?} and {name:?}")),
                Some(_) => {}
                None => var = Some(name.to_string()),
            }
            pow
        };
        if degree > 1 << 16 {
            return bad("degree too large");
        }
        let entry = coeffs.entry(degree).or_insert_with(BigRational::zero);
        *entry += coef * BigInt::from(sign);
    }
    let top = coeffs.keys().next_back().copied().unwrap_or(0);
    let mut out = vec![field.zero(); top + 1];
    for (d, c) in coeffs {
        out[d] = field.from_rational(&c)?;
    }
    Ok(Poly::new(field.clone(), out))
}

// ---- matrices and subspaces ----

pub fn matrix_to_json(m: &Matrix) -> Value {
    let entries: Vec<Value> = m.to_rows().iter().map(|r| vector_to_json(m.field(), r)).collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries })
}

pub fn matrix_from_json(field: &Field, v: &Value) -> Result<Matrix> {
    let obj = v.as_object().ok_or_else(|| FormatError("matrix must be an object".into()))?;
    let dim = |key: &str| {
        obj.get(key)
            .and_then(Value::as_u64)
            .map(|x| x as usize)
            .ok_or_else(|| FormatError(format!("matrix needs integer \"{key}\"")))
    };
    let (rows, cols) = (dim("rows")?, dim("cols")?);
    let entries = obj.get("entries").and_then(Value::as_array).ok_or_else(|| FormatError("matrix needs \"entries\"".into()))?;
    if entries.len() != rows {
        return bad(format!("declared {rows} rows, found {}", entries.len()));
    }
    if rows == 0 || cols == 0 {
        return bad("matrices must be nonempty");
    }
    let mut data = Vec::with_capacity(rows);
    for (i, row) in entries.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| FormatError(format!("row {i} must be an array")))?;
        if row.len() != cols {
            return bad(format!("row {i} has {} entries, declared {cols}", row.len()));
        }
        data.push(row.iter().map(|x| elem_from_json(field, x)).collect::<Result<Vec<_>>>()?);
    }
    Ok(Matrix::from_rows(field.clone(), data)?)
}

/// A subspace as the matrix of its canonical basis (columns).
pub fn subspace_to_json(w: &Subspace) -> Value {
    if w.dim() == 0 {
        return json!({ "rows": w.ambient_dim(), "cols": 0, "entries": vec![Value::Array(Vec::new()); w.ambient_dim()] });
    }
    matrix_to_json(w.basis())
}

// ---- manifests ----

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    Matrix(Matrix),
    Poly(Poly),
    /// Column span of the given basis.
    Subspace(Subspace),
}

impl Object {
    pub fn field(&self) -> &Field {
        match self {
            Object::Matrix(m) => m.field(),
            Object::Poly(p) => p.field(),
            Object::Subspace(w) => w.field(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Object::Matrix(_) => "matrix",
            Object::Poly(_) => "polynomial",
            Object::Subspace(_) => "subspace",
        }
    }
}

/// A field plus named objects; an object may override the field (e.g. a
/// subspace over an extension).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifest {
    pub field: Field,
    pub objects: BTreeMap<String, Object>,
}

fn object_to_json(default: &Field, o: &Object) -> Value {
    let mut v = match o {
        Object::Matrix(m) => matrix_to_json(m),
        Object::Poly(p) => json!({ "poly": poly_to_json(p) }),
        Object::Subspace(w) => json!({ "subspace": subspace_to_json(w) }),
    };
    if !same_desc(default, o.field()) {
        v.as_object_mut().expect("object").insert("field".into(), field_to_json(o.field()));
    }
    v
}

fn object_from_json(default: &Field, v: &Value) -> Result<Object> {
    let obj = v.as_object().ok_or_else(|| FormatError("manifest objects must be JSON objects".into()))?;
    let field = match obj.get("field") {
        Some(f) => field_from_json(f)?,
        None => default.clone(),
    };
    if let Some(p) = obj.get("poly") {
        return Ok(Object::Poly(poly_from_json(&field, p)?));
    }
    if let Some(s) = obj.get("subspace") {
        let m = matrix_from_json_allow_empty(&field, s)?;
        return Ok(Object::Subspace(m));
    }
    Ok(Object::Matrix(matrix_from_json(&field, v)?))
}

fn matrix_from_json_allow_empty(field: &Field, v: &Value) -> Result<Subspace> {
    let cols = v.get("cols").and_then(Value::as_u64);
    let rows = v.get("rows").and_then(Value::as_u64);
    match (rows, cols) {
        (Some(n), Some(0)) if n > 0 => Ok(Subspace::zero(field, n as usize)),
        _ => Ok(Subspace::column_span(&matrix_from_json(field, v)?)),
    }
}

pub fn manifest_to_json(m: &Manifest) -> Value {
    let objects: Map<String, Value> = m.objects.iter().map(|(k, o)| (k.clone(), object_to_json(&m.field, o))).collect();
    json!({ "schema": SCHEMA, "field": field_to_json(&m.field), "objects": objects })
}

pub fn manifest_from_json(v: &Value) -> Result<Manifest> {
    let obj = v.as_object().ok_or_else(|| FormatError("manifest must be a JSON object".into()))?;
    if let Some(s) = obj.get("schema") {
        if s.as_str() != Some(SCHEMA) {
            return bad(format!("unsupported schema {s}"));
        }
    }
    let field = match obj.get("field") {
        Some(f) => field_from_json(f)?,
        None => Field::rational(),
    };
    let objects = obj.get("objects").and_then(Value::as_object).ok_or_else(|| FormatError("manifest needs \"objects\"".into()))?;
    let objects = objects
        .iter()
        .map(|(k, v)| object_from_json(&field, v).map(|o| (k.clone(), o)).map_err(|e| FormatError(format!("{k}: {e}"))))
        .collect::<Result<_>>()?;
    Ok(Manifest { field, objects })
}

pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn parse_manifest(text: &str) -> Result<Manifest> {
    manifest_from_json(&serde_json::from_str(text)?)
}

pub fn serialize_manifest(m: &Manifest) -> String {
    to_canonical_string(&manifest_to_json(m))
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| FormatError(format!("cannot read {path}: {e}")))
}

/// Resolves `FILE#NAME`, or `FILE` holding either a manifest with a single
/// object or a bare matrix/polynomial document (optionally with its own
/// `"field"`). `fallback` is the field used when the file declares none.
pub fn load_object(spec: &str, fallback: &Field) -> Result<Object> {
    let (path, name) = match spec.rsplit_once('#') {
        Some((p, n)) => (p, Some(n)),
        None => (spec, None),
    };
    let v: Value = serde_json::from_str(&read_file(path)?)?;
    if v.get("objects").is_some() {
        let v = if v.get("field").is_none() {
            let mut v = v.clone();
            v.as_object_mut().expect("object").insert("field".into(), field_to_json(fallback));
            v
        } else {
            v
        };
        let m = manifest_from_json(&v)?;
        return match name {
            Some(n) => m.objects.get(n).cloned().ok_or_else(|| FormatError(format!("{path} has no object {n:?}"))),
            None if m.objects.len() == 1 => Ok(m.objects.into_values().next().expect("one object")),
            None => bad(format!("{path} holds {} objects; select one with {path}#NAME", m.objects.len())),
        };
    }
    if name.is_some() {
        return bad(format!("{path} is not a manifest, so #NAME cannot be used"));
    }
    object_from_json(fallback, &v)
}

pub fn load_matrix(spec: &str, fallback: &Field) -> Result<Matrix> {
    match load_object(spec, fallback)? {
        Object::Matrix(m) => Ok(m),
        other => bad(format!("{spec} is a {}, expected a matrix", other.kind())),
    }
}

/// Polynomial from text, an inline JSON coefficient array, or a file.
pub fn load_poly(spec: &str, field: &Field) -> Result<Poly> {
    let t = spec.trim();
    if t.starts_with('[') {
        return poly_from_json(field, &serde_json::from_str(t)?);
    }
    let looks_like_file = t.contains('#') || t.ends_with(".json") || std::path::Path::new(t).is_file();
    if looks_like_file {
        return match load_object(t, field)? {
            Object::Poly(p) => Ok(p),
            other => bad(format!("{t} is a {}, expected a polynomial", other.kind())),
        };
    }
    parse_poly_text(field, t)
}

pub fn load_subspace(spec: &str, fallback: &Field) -> Result<Subspace> {
    match load_object(spec, fallback)? {
        Object::Subspace(w) => Ok(w),
        Object::Matrix(m) => Ok(Subspace::column_span(&m)),
        other => bad(format!("{spec} is a {}, expected a subspace", other.kind())),
    }
}
