//! Reading payloads and encoding kernel objects as JSON.

use std::io::Read;
use std::path::Path;

use oreseries::linalg::Matrix;
use oreseries::{Error, Field, LinRep, OreFraction, OrePoly, Recurrence, RecurrenceKind, TwistedSeries};
use serde_json::{json, Map, Value};

use crate::CliError;

/// A payload as given on the command line: inline text, a file path, or
/// `-` for standard input.
pub struct Payload {
    pub flag: &'static str,
    pub text: String,
    pub json: Option<Value>,
}

/// Resolves every given payload. At most one of them may read stdin.
pub fn load(args: &[(&'static str, Option<&String>)]) -> Result<Vec<Payload>, CliError> {
    let mut used_stdin = false;
    let mut out = Vec::new();
    for &(flag, value) in args {
        let Some(value) = value else { continue };
        let text = if value == "-" {
            if used_stdin {
                return Err(CliError::Usage("only one payload can be read from stdin".into()));
            }
            used_stdin = true;
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Usage(format!("reading stdin: {e}")))?;
            buf
        } else if Path::new(value).is_file() {
            std::fs::read_to_string(value)
                .map_err(|e| CliError::Usage(format!("reading {value}: {e}")))?
        } else {
            value.clone()
        };
        let text = text.trim().to_string();
        let json = if text.starts_with('{') {
            Some(
                serde_json::from_str(&text)
                    .map_err(|e| CliError::Usage(format!("--{flag}: invalid JSON: {e}")))?,
            )
        } else {
            None
        };
        out.push(Payload { flag, text, json });
    }
    Ok(out)
}

/// The field named by `--field` or, failing that, by the payloads.
pub fn field_spec(flag: Option<&String>, payloads: &[Payload]) -> Result<String, CliError> {
    let mut spec = flag.cloned();
    for p in payloads {
        let Some(named) = p.json.as_ref().and_then(|v| v.get("field")) else {
            continue;
        };
        let named = named
            .as_str()
            .ok_or_else(|| CliError::Usage(format!("--{}: `field` must be a string", p.flag)))?;
        match &spec {
            None => spec = Some(named.to_string()),
            Some(s) if same_spec(s, named) => {}
            Some(s) => {
                return Err(CliError::Usage(format!(
                    "--{}: payload field `{named}` differs from `{s}`",
                    p.flag
                )))
            }
        }
    }
    spec.ok_or_else(|| CliError::Usage("no field given; pass --field".into()))
}

fn same_spec(a: &str, b: &str) -> bool {
    match (oreseries::make_context(a), oreseries::make_context(b)) {
        (Ok(x), Ok(y)) => x == y,
        _ => a == b,
    }
}

fn parse_err(flag: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Kernel(Error::Parse(format!("--{flag}: {msg}")))
}

fn member<'a>(v: &'a Value, key: &str, flag: &str) -> Result<&'a Value, CliError> {
    v.get(key).ok_or_else(|| parse_err(flag, format!("missing `{key}`")))
}

fn elem<F: Field>(f: &F, v: &Value, flag: &str) -> Result<F::Elem, CliError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        other => return Err(parse_err(flag, format!("expected a field element, got {other}"))),
    };
    Ok(f.parse_elem(&text)?)
}

fn elems<F: Field>(f: &F, v: &Value, flag: &str) -> Result<Vec<F::Elem>, CliError> {
    v.as_array()
        .ok_or_else(|| parse_err(flag, "expected an array"))?
        .iter()
        .map(|x| elem(f, x, flag))
        .collect()
}

fn string<'a>(v: &'a Value, key: &str, flag: &str) -> Result<&'a str, CliError> {
    member(v, key, flag)?
        .as_str()
        .ok_or_else(|| parse_err(flag, format!("`{key}` must be a string")))
}

pub fn series<F: Field>(f: &F, p: &Payload) -> Result<TwistedSeries<F>, CliError> {
    let Some(v) = &p.json else {
        return Ok(TwistedSeries::parse(f, &p.text)?);
    };
    let coeffs = elems(f, member(v, "coeffs", p.flag)?, p.flag)?;
    if coeffs.is_empty() {
        return Err(parse_err(p.flag, "a series needs at least one coefficient"));
    }
    if let Some(n) = v.get("precision") {
        if n.as_u64() != Some(coeffs.len() as u64) {
            return Err(parse_err(p.flag, "`precision` must equal the number of coefficients"));
        }
    }
    Ok(TwistedSeries::new(f, coeffs))
}

pub fn fraction<F: Field>(f: &F, p: &Payload) -> Result<OreFraction<F>, CliError> {
    let Some(v) = &p.json else {
        return Ok(OreFraction::parse(f, &p.text)?);
    };
    let den = OrePoly::parse(f, string(v, "denominator", p.flag)?)?;
    let num = OrePoly::parse(f, string(v, "numerator", p.flag)?)?;
    Ok(OreFraction::from_parts(den, num)?)
}

pub fn rep<F: Field>(f: &F, p: &Payload) -> Result<LinRep<F>, CliError> {
    let v = p
        .json
        .as_ref()
        .ok_or_else(|| parse_err(p.flag, "a representation is given as a JSON object"))?;
    let x = elems(f, member(v, "X", p.flag)?, p.flag)?;
    let y = elems(f, member(v, "Y", p.flag)?, p.flag)?;
    let a = member(v, "A", p.flag)?
        .as_array()
        .ok_or_else(|| parse_err(p.flag, "`A` must be an array of rows"))?
        .iter()
        .map(|row| elems(f, row, p.flag))
        .collect::<Result<Matrix<F::Elem>, _>>()?;
    Ok(LinRep::new(f, x, a, y)?)
}

pub fn recurrence<F: Field>(f: &F, p: &Payload) -> Result<(Recurrence<F>, Vec<F::Elem>), CliError> {
    let v = p
        .json
        .as_ref()
        .ok_or_else(|| parse_err(p.flag, "a recurrence is given as a JSON object"))?;
    let coeffs = elems(f, member(v, "coeffs", p.flag)?, p.flag)?;
    let seed = elems(f, member(v, "seed", p.flag)?, p.flag)?;
    let rec = match string(v, "kind", p.flag)? {
        "syntactic" => Recurrence::syntactic(f, coeffs),
        "denominator" => {
            let n0 = member(v, "n0", p.flag)?
                .as_u64()
                .ok_or_else(|| parse_err(p.flag, "`n0` must be a non-negative integer"))?;
            Recurrence::denominator(f, coeffs, n0 as usize)
        }
        other => return Err(parse_err(p.flag, format!("unknown recurrence kind `{other}`"))),
    };
    Ok((rec, seed))
}

pub fn elem_json<F: Field>(f: &F, x: &F::Elem) -> Value {
    Value::String(f.format_elem(x))
}

pub fn elems_json<F: Field>(f: &F, xs: &[F::Elem]) -> Value {
    Value::Array(xs.iter().map(|x| elem_json(f, x)).collect())
}

pub fn matrix_json<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Value {
    Value::Array(m.iter().map(|row| elems_json(f, row)).collect())
}

fn with_field<F: Field>(f: &F, mut body: Map<String, Value>) -> Value {
    body.insert("field".into(), Value::String(f.spec()));
    Value::Object(body)
}

fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("json! object literal"),
    }
}

pub fn series_json<F: Field>(s: &TwistedSeries<F>) -> Value {
    let f = s.field();
    with_field(
        f,
        object(json!({ "coeffs": elems_json(f, s.coeffs()), "precision": s.precision() })),
    )
}

/// The fraction members without the field, for nesting.
pub fn fraction_members<F: Field>(x: &OreFraction<F>) -> Value {
    json!({
        "denominator": x.denominator().to_string(),
        "numerator": x.numerator().to_string(),
    })
}

pub fn fraction_json<F: Field>(x: &OreFraction<F>) -> Value {
    with_field(x.field(), object(fraction_members(x)))
}

pub fn rep_json<F: Field>(r: &LinRep<F>) -> Value {
    let f = r.field();
    with_field(
        f,
        object(json!({
            "X": elems_json(f, r.x()),
            "A": matrix_json(f, r.a()),
            "Y": elems_json(f, r.y()),
        })),
    )
}

pub fn recurrence_members<F: Field>(rec: &Recurrence<F>, seed: &[F::Elem]) -> Value {
    let f = rec.field();
    let mut body = json!({
        "kind": match rec.kind() {
            RecurrenceKind::Syntactic => "syntactic",
            RecurrenceKind::Denominator { .. } => "denominator",
        },
        "coeffs": elems_json(f, rec.coeffs()),
        "seed": elems_json(f, seed),
    });
    if let RecurrenceKind::Denominator { n0 } = rec.kind() {
        body["n0"] = json!(n0);
    }
    body
}

pub fn recurrence_json<F: Field>(rec: &Recurrence<F>, seed: &[F::Elem]) -> Value {
    with_field(rec.field(), object(recurrence_members(rec, seed)))
}

pub fn tagged<F: Field>(f: &F, body: Value) -> Value {
    with_field(f, object(body))
}
