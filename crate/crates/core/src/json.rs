//! JSON encodings of the library's values, shared by the command-line tool
//! and any scripting against it.
//!
//! Structural problems (missing keys, wrong shapes, unknown tags) come back
//! as parse errors; values that are well-formed but mathematically invalid
//! (a reducible modulus, mismatched fields) surface the underlying usage or
//! domain error.
//!
//! Schemas:
//! - field: `{"p": int}` or `{"p": int, "modulus": [int, ...]}` (low-to-high,
//!   monic).
//! - element: bare integer (prime fields), coefficient array, or
//!   `{"p", "modulus", "coeffs"}`.
//! - series: `{"field", "val": int, "prec": int, "coeffs": [element, ...]}`
//!   with coefficients low-to-high from `val`.
//! - global P1 element: `{"field", "coeffs": [element, ...]}` where entry j
//!   is the coefficient of t^{-j}.
//! - curve: `{"p": int, "A": int, "B": int}`.
//! - elliptic global function: `{"curve", "x": [int, ...], "xy": [int, ...]}`
//!   for a(x) + b(x)y, coefficients low-to-high.
//! - matrix: `{"n": int, "ring": "fq"|"p1"|"laurent"|"elliptic",
//!   "entries": {"i,j": entry, ...}}`, 1-based strictly-upper positions;
//!   missing entries are zero.

use serde_json::{json, Map, Value};

use crate::curves::{EllipticFunction, EllipticMarkedCurve, VerdictReport};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField};
use crate::series::{GlobalP1Element, LaurentSeries};
use crate::unipotent::{positions_row_major, LangSection, OrbitReport, UnipotentMatrix};

pub fn field_to_json(field: &FiniteField) -> Value {
    if field.degree() == 1 {
        json!({ "p": field.characteristic() })
    } else {
        json!({ "p": field.characteristic(), "modulus": field.modulus() })
    }
}

pub fn field_from_json(v: &Value) -> Result<FiniteField> {
    if let Some(p) = v.as_u64() {
        return FiniteField::prime(p);
    }
    let map = expect_object(v, "field")?;
    let p = expect_u64(expect_key(map, "p", "field")?, "field.p")?;
    match map.get("modulus") {
        None => FiniteField::prime(p),
        Some(m) => {
            let modulus = u64_array(m, "field.modulus")?;
            if modulus.len() <= 2 {
                FiniteField::prime(p)
            } else {
                FiniteField::with_modulus(p, &modulus)
            }
        }
    }
}

pub fn element_to_json(e: &FieldElement) -> Value {
    if e.field().degree() == 1 {
        json!(e.constant_coeff())
    } else {
        json!({
            "p": e.field().characteristic(),
            "modulus": e.field().modulus(),
            "coeffs": e.coeffs(),
        })
    }
}

/// Decodes any of the element forms into the given field. Object forms must
/// agree with it.
pub fn element_from_json(v: &Value, field: &FiniteField) -> Result<FieldElement> {
    match v {
        Value::Number(_) => {
            let c = expect_u64(v, "element")?;
            if c >= field.characteristic() && field.degree() == 1 {
                return Err(Error::Parse(format!(
                    "element {c} is not reduced mod {}",
                    field.characteristic()
                )));
            }
            Ok(field.from_u64(c))
        }
        Value::Array(_) => field.element(&u64_array(v, "element coefficients")?),
        Value::Object(map) => {
            let declared = field_from_json(v)?;
            if &declared != field {
                return Err(Error::Usage(format!(
                    "element declares field {declared} but {field} was expected"
                )));
            }
            let coeffs = u64_array(expect_key(map, "coeffs", "element")?, "element.coeffs")?;
            field.element(&coeffs)
        }
        _ => Err(Error::Parse(
            "element must be an integer, an array, or an object".into(),
        )),
    }
}

/// Field declared inside an element/series/matrix-entry value, if any.
fn declared_field(v: &Value) -> Result<Option<FiniteField>> {
    match v {
        Value::Object(map) => {
            if map.contains_key("p") {
                field_from_json(v).map(Some)
            } else if let Some(f) = map.get("field") {
                field_from_json(f).map(Some)
            } else {
                Ok(None)
            }
        }
        _ => Ok(None),
    }
}

pub fn series_to_json(s: &LaurentSeries) -> Value {
    let coeffs: Vec<Value> = (s.val()..=s.prec()).map(|k| element_to_json(&s.coeff(k))).collect();
    json!({
        "field": field_to_json(s.field()),
        "val": s.val(),
        "prec": s.prec(),
        "coeffs": coeffs,
    })
}

/// `field_hint` supplies the field when the object omits its own, and
/// `default_prec` fills a missing "prec" key. Coefficient arrays shorter
/// than the window are padded with zeros at the top; longer ones are
/// rejected.
pub fn series_from_json(
    v: &Value,
    field_hint: Option<&FiniteField>,
    default_prec: Option<i64>,
) -> Result<LaurentSeries> {
    let map = expect_object(v, "series")?;
    let field = match map.get("field") {
        Some(f) => field_from_json(f)?,
        None => field_hint
            .cloned()
            .ok_or_else(|| Error::Parse("series has no \"field\" and no context supplies one".into()))?,
    };
    let val = expect_i64(expect_key(map, "val", "series")?, "series.val")?;
    let prec = match map.get("prec") {
        Some(p) => expect_i64(p, "series.prec")?,
        None => default_prec
            .ok_or_else(|| Error::Parse("series has no \"prec\" and no context supplies one".into()))?,
    };
    let coeffs_v = expect_key(map, "coeffs", "series")?
        .as_array()
        .ok_or_else(|| Error::Parse("series.coeffs must be an array".into()))?;
    let window = (prec - val + 1).max(0) as usize;
    if coeffs_v.len() > window {
        return Err(Error::Parse(format!(
            "series window [{val}, {prec}] holds {window} coefficients, got {}",
            coeffs_v.len()
        )));
    }
    let mut coeffs = coeffs_v
        .iter()
        .map(|c| element_from_json(c, &field))
        .collect::<Result<Vec<_>>>()?;
    coeffs.resize(window, field.zero());
    LaurentSeries::from_coeffs(&field, val, prec, coeffs)
}

pub fn p1_to_json(h: &GlobalP1Element) -> Value {
    let coeffs: Vec<Value> = h.coeffs().iter().map(element_to_json).collect();
    json!({ "field": field_to_json(h.field()), "coeffs": coeffs })
}

pub fn p1_from_json(v: &Value, field_hint: Option<&FiniteField>) -> Result<GlobalP1Element> {
    let map = expect_object(v, "global P1 element")?;
    let field = match map.get("field") {
        Some(f) => field_from_json(f)?,
        None => field_hint.cloned().ok_or_else(|| {
            Error::Parse("P1 element has no \"field\" and no context supplies one".into())
        })?,
    };
    let coeffs_v = expect_key(map, "coeffs", "P1 element")?
        .as_array()
        .ok_or_else(|| Error::Parse("P1 coeffs must be an array".into()))?;
    let coeffs = coeffs_v
        .iter()
        .map(|c| element_from_json(c, &field))
        .collect::<Result<Vec<_>>>()?;
    GlobalP1Element::new(&field, coeffs)
}

pub fn curve_to_json(e: &EllipticMarkedCurve) -> Value {
    json!({ "p": e.p(), "A": e.a(), "B": e.b() })
}

pub fn curve_from_json(v: &Value) -> Result<EllipticMarkedCurve> {
    let map = expect_object(v, "curve")?;
    let p = expect_u64(expect_key(map, "p", "curve")?, "curve.p")?;
    let a = expect_u64(expect_key(map, "A", "curve")?, "curve.A")?;
    let b = expect_u64(expect_key(map, "B", "curve")?, "curve.B")?;
    EllipticMarkedCurve::new(p, a, b)
}

pub fn elliptic_fn_to_json(g: &EllipticFunction) -> Value {
    json!({
        "curve": curve_to_json(g.curve()),
        "x": g.x_polynomial(),
        "xy": g.xy_polynomial(),
    })
}

pub fn elliptic_fn_from_json(
    v: &Value,
    curve_hint: Option<&EllipticMarkedCurve>,
) -> Result<EllipticFunction> {
    let map = expect_object(v, "elliptic function")?;
    let curve = match map.get("curve") {
        Some(c) => curve_from_json(c)?,
        None => curve_hint.cloned().ok_or_else(|| {
            Error::Parse("elliptic function has no \"curve\" and no context supplies one".into())
        })?,
    };
    if let Some(hint) = curve_hint {
        if hint != &curve {
            return Err(Error::Usage(
                "elliptic function declares a different curve than the context".into(),
            ));
        }
    }
    let x = match map.get("x") {
        Some(v) => u64_array(v, "elliptic x polynomial")?,
        None => Vec::new(),
    };
    let xy = match map.get("xy") {
        Some(v) => u64_array(v, "elliptic xy polynomial")?,
        None => Vec::new(),
    };
    Ok(EllipticFunction::new(&curve, x, xy))
}

/// A matrix decoded from JSON, tagged by its coefficient ring.
#[derive(Clone, Debug)]
pub enum DecodedMatrix {
    Fq(UnipotentMatrix<FieldElement>),
    P1(UnipotentMatrix<GlobalP1Element>),
    Laurent(UnipotentMatrix<LaurentSeries>),
    Elliptic(UnipotentMatrix<EllipticFunction>),
}

impl DecodedMatrix {
    pub fn ring_name(&self) -> &'static str {
        match self {
            DecodedMatrix::Fq(_) => "fq",
            DecodedMatrix::P1(_) => "p1",
            DecodedMatrix::Laurent(_) => "laurent",
            DecodedMatrix::Elliptic(_) => "elliptic",
        }
    }
}

pub fn matrix_fq_to_json(m: &UnipotentMatrix<FieldElement>) -> Value {
    matrix_json(m.n(), "fq", m, element_to_json)
}

pub fn matrix_laurent_to_json(m: &UnipotentMatrix<LaurentSeries>) -> Value {
    matrix_json(m.n(), "laurent", m, series_to_json)
}

pub fn matrix_p1_to_json(m: &UnipotentMatrix<GlobalP1Element>) -> Value {
    matrix_json(m.n(), "p1", m, p1_to_json)
}

pub fn matrix_elliptic_to_json(m: &UnipotentMatrix<EllipticFunction>) -> Value {
    matrix_json(m.n(), "elliptic", m, elliptic_fn_to_json)
}

pub fn matrix_to_json(m: &DecodedMatrix) -> Value {
    match m {
        DecodedMatrix::Fq(m) => matrix_fq_to_json(m),
        DecodedMatrix::P1(m) => matrix_p1_to_json(m),
        DecodedMatrix::Laurent(m) => matrix_laurent_to_json(m),
        DecodedMatrix::Elliptic(m) => matrix_elliptic_to_json(m),
    }
}

fn matrix_json<R: crate::ring::Ring>(
    n: usize,
    ring: &str,
    m: &UnipotentMatrix<R>,
    encode: impl Fn(&R) -> Value,
) -> Value {
    let mut entries = Map::new();
    for (i, j) in positions_row_major(n) {
        entries.insert(format!("{i},{j}"), encode(m.entry(i, j)));
    }
    json!({ "n": n, "ring": ring, "entries": entries })
}

/// Decodes a matrix of any ring. `field_hint` and `curve_hint` supply
/// context the entries may omit; `default_prec` is the precision given to
/// missing (zero) Laurent entries. Present entries must agree with each
/// other, which the matrix constructor enforces.
pub fn matrix_from_json(
    v: &Value,
    field_hint: Option<&FiniteField>,
    curve_hint: Option<&EllipticMarkedCurve>,
    default_prec: i64,
) -> Result<DecodedMatrix> {
    let map = expect_object(v, "matrix")?;
    let n = expect_u64(expect_key(map, "n", "matrix")?, "matrix.n")? as usize;
    let ring = expect_key(map, "ring", "matrix")?
        .as_str()
        .ok_or_else(|| Error::Parse("matrix.ring must be a string".into()))?;
    let empty = Map::new();
    let entries = match map.get("entries") {
        Some(e) => expect_object(e, "matrix.entries")?,
        None => &empty,
    };
    let mut slots: Vec<(usize, usize, &Value)> = Vec::new();
    for (k, val) in entries {
        let (i, j) = parse_position(k, n)?;
        slots.push((i, j, val));
    }

    match ring {
        "fq" => {
            let field = context_field(field_hint, &slots, "matrix over F_q")?;
            build_matrix(n, &slots, field.zero(), |v| element_from_json(v, &field))
                .map(DecodedMatrix::Fq)
        }
        "laurent" => {
            let field = context_field(field_hint, &slots, "matrix of series")?;
            build_matrix(n, &slots, LaurentSeries::zero(&field, default_prec), |v| {
                series_from_json(v, Some(&field), Some(default_prec))
            })
            .map(DecodedMatrix::Laurent)
        }
        "p1" => {
            let field = context_field(field_hint, &slots, "matrix over k[t^-1]")?;
            build_matrix(n, &slots, GlobalP1Element::zero(&field), |v| {
                p1_from_json(v, Some(&field))
            })
            .map(DecodedMatrix::P1)
        }
        "elliptic" => {
            let curve = match curve_hint {
                Some(c) => c.clone(),
                None => slots
                    .iter()
                    .find_map(|(_, _, v)| v.get("curve"))
                    .map(curve_from_json)
                    .transpose()?
                    .ok_or_else(|| {
                        Error::Parse(
                            "elliptic matrix has no curve context; pass the model curve".into(),
                        )
                    })?,
            };
            build_matrix(n, &slots, EllipticFunction::zero(&curve), |v| {
                elliptic_fn_from_json(v, Some(&curve))
            })
            .map(DecodedMatrix::Elliptic)
        }
        other => Err(Error::Parse(format!(
            "unknown matrix ring tag {other:?}; expected fq, p1, laurent, or elliptic"
        ))),
    }
}

fn context_field(
    hint: Option<&FiniteField>,
    slots: &[(usize, usize, &Value)],
    what: &str,
) -> Result<FiniteField> {
    if let Some(f) = hint {
        return Ok(f.clone());
    }
    for (_, _, v) in slots {
        if let Some(f) = declared_field(v)? {
            return Ok(f);
        }
    }
    Err(Error::Parse(format!(
        "{what} carries no field information; pass the field explicitly"
    )))
}

fn build_matrix<R: crate::ring::Ring>(
    n: usize,
    slots: &[(usize, usize, &Value)],
    zero: R,
    decode: impl Fn(&Value) -> Result<R>,
) -> Result<UnipotentMatrix<R>> {
    let mut m = UnipotentMatrix::identity(n, &zero)?;
    for &(i, j, v) in slots {
        m.set_entry(i, j, decode(v)?);
    }
    Ok(m)
}

fn parse_position(key: &str, n: usize) -> Result<(usize, usize)> {
    let parse = |s: &str| -> Option<usize> { s.trim().parse().ok() };
    let (i, j) = key
        .split_once(',')
        .and_then(|(a, b)| Some((parse(a)?, parse(b)?)))
        .ok_or_else(|| Error::Parse(format!("matrix entry key {key:?} is not \"i,j\"")))?;
    if i < 1 || j <= i || j > n {
        return Err(Error::Parse(format!(
            "matrix entry ({i}, {j}) is not strictly upper in dimension {n}"
        )));
    }
    Ok((i, j))
}

/// Exactly the seven report keys; the prime is implicit in the curve input.
pub fn verdict_to_json(r: &VerdictReport) -> Value {
    json!({
        "count": r.count,
        "alpha": r.alpha,
        "deuring": r.deuring,
        "anomalous": r.anomalous,
        "injective": r.injective,
        "surjective": r.surjective,
        "equivalence": r.equivalence,
    })
}

pub fn orbit_report_to_json(r: &OrbitReport) -> Value {
    let reps: Vec<Value> = r.representatives.iter().map(matrix_fq_to_json).collect();
    json!({
        "n": r.n,
        "field": field_to_json(&r.field),
        "class_count": r.class_count,
        "class_sizes": r.class_sizes,
        "representatives": reps,
    })
}

pub fn lang_section_to_json(s: &LangSection) -> Value {
    json!({
        "extension_degree": s.extension_degree,
        "preimage": matrix_fq_to_json(&s.preimage),
        "base_image": matrix_fq_to_json(&s.base_image),
    })
}

fn expect_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::Parse(format!("{what} must be a JSON object")))
}

fn expect_key<'a>(map: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    map.get(key)
        .ok_or_else(|| Error::Parse(format!("{what} is missing the \"{key}\" key")))
}

fn expect_u64(v: &Value, what: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| Error::Parse(format!("{what} must be a nonnegative integer")))
}

fn expect_i64(v: &Value, what: &str) -> Result<i64> {
    v.as_i64()
        .ok_or_else(|| Error::Parse(format!("{what} must be an integer")))
}

fn u64_array(v: &Value, what: &str) -> Result<Vec<u64>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{what} must be an array")))?;
    arr.iter().map(|x| expect_u64(x, what)).collect()
}
