//! JSON documents for fans, toric fans, and cover certificates.
//!
//! All numbers are exact: integers appear as JSON numbers when they fit
//! in 64 bits and as decimal strings otherwise; rationals appear as
//! integers or as "p/q" strings. Floating point is never read or written.
//! Points of P¹ are spelled "0", "inf", "@<rational>", or a free-form
//! name. Parse errors carry the JSON path of the offending value.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::acover::{ACoverCertificate, ACoverChart, ChartOrigin};
use crate::cone::Cone;
use crate::divfan::DivisorialFan;
use crate::lattice::{Int, LatticeVector, Rational, RationalVector};
use crate::pdivisor::{AffineSpaceCertificate, Coefficient, PDivisor, PointOnP1};
use crate::polyhedron::Polyhedron;
use crate::report::Finding;
use crate::toric::ToricFan;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at {path}: {message}")]
pub struct ParseError {
    pub path: String,
    pub message: String,
}

impl ParseError {
    fn new(path: impl Into<String>, message: impl Into<String>) -> ParseError {
        ParseError {
            path: path.into(),
            message: message.into(),
        }
    }

    pub fn to_finding(&self) -> Finding {
        Finding::new("parse", self.path.clone(), self.message.clone())
    }
}

fn root_value(text: &str) -> Result<Value, ParseError> {
    serde_json::from_str(text).map_err(|e| {
        ParseError::new(
            format!("line {}, column {}", e.line(), e.column()),
            format!("invalid JSON: {e}"),
        )
    })
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, ParseError> {
    v.as_object()
        .ok_or_else(|| ParseError::new(path, "expected an object"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, ParseError> {
    v.as_array()
        .ok_or_else(|| ParseError::new(path, "expected an array"))
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str, ParseError> {
    v.as_str()
        .ok_or_else(|| ParseError::new(path, "expected a string"))
}

fn as_bool(v: &Value, path: &str) -> Result<bool, ParseError> {
    v.as_bool()
        .ok_or_else(|| ParseError::new(path, "expected a boolean"))
}

fn field<'a>(obj: &'a Map<String, Value>, name: &str, path: &str) -> Result<&'a Value, ParseError> {
    obj.get(name)
        .ok_or_else(|| ParseError::new(path, format!("missing field \"{name}\"")))
}

fn expect_format(obj: &Map<String, Value>, tag: &str, path: &str) -> Result<(), ParseError> {
    let fmt = as_str(field(obj, "format", path)?, &format!("{path}.format"))?;
    if fmt != tag {
        return Err(ParseError::new(
            format!("{path}.format"),
            format!("expected \"{tag}\", found \"{fmt}\""),
        ));
    }
    let version = field(obj, "version", path)?;
    if version.as_u64() != Some(1) {
        return Err(ParseError::new(
            format!("{path}.version"),
            "unsupported version (expected 1)",
        ));
    }
    Ok(())
}

fn parse_usize(v: &Value, path: &str) -> Result<usize, ParseError> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| ParseError::new(path, "expected a nonnegative integer"))
}

fn parse_int(v: &Value, path: &str) -> Result<Int, ParseError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Int::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(Int::from(u))
            } else {
                Err(ParseError::new(
                    path,
                    "non-integer number; write exact values as strings",
                ))
            }
        }
        Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|_| ParseError::new(path, format!("invalid integer \"{s}\""))),
        _ => Err(ParseError::new(path, "expected an integer")),
    }
}

fn parse_rational(v: &Value, path: &str) -> Result<Rational, ParseError> {
    match v {
        Value::Number(_) => Ok(Rational::from_integer(parse_int(v, path)?)),
        Value::String(s) => {
            let s = s.trim();
            let (num, den) = match s.split_once('/') {
                None => (s, "1"),
                Some((n, d)) => (n.trim(), d.trim()),
            };
            let num = num
                .parse::<BigInt>()
                .map_err(|_| ParseError::new(path, format!("invalid rational \"{s}\"")))?;
            let den = den
                .parse::<BigInt>()
                .map_err(|_| ParseError::new(path, format!("invalid rational \"{s}\"")))?;
            if den == BigInt::from(0) {
                return Err(ParseError::new(path, "zero denominator"));
            }
            Ok(Rational::new(num, den))
        }
        _ => Err(ParseError::new(path, "expected an integer or \"p/q\" string")),
    }
}

fn parse_lattice_vector(v: &Value, rank: usize, path: &str) -> Result<LatticeVector, ParseError> {
    let arr = as_array(v, path)?;
    if arr.len() != rank {
        return Err(ParseError::new(
            path,
            format!("expected {rank} coordinates, found {}", arr.len()),
        ));
    }
    let coords = arr
        .iter()
        .enumerate()
        .map(|(i, c)| parse_int(c, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LatticeVector::new(coords))
}

fn parse_rational_vector(v: &Value, rank: usize, path: &str) -> Result<RationalVector, ParseError> {
    let arr = as_array(v, path)?;
    if arr.len() != rank {
        return Err(ParseError::new(
            path,
            format!("expected {rank} coordinates, found {}", arr.len()),
        ));
    }
    let coords = arr
        .iter()
        .enumerate()
        .map(|(i, c)| parse_rational(c, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RationalVector::new(coords))
}

fn parse_ray_list(v: &Value, rank: usize, path: &str) -> Result<Vec<LatticeVector>, ParseError> {
    let arr = as_array(v, path)?;
    arr.iter()
        .enumerate()
        .map(|(i, r)| parse_lattice_vector(r, rank, &format!("{path}[{i}]")))
        .collect()
}

pub fn parse_point(s: &str, path: &str) -> Result<PointOnP1, ParseError> {
    match s {
        "0" => Ok(PointOnP1::Zero),
        "inf" => Ok(PointOnP1::Infinity),
        _ => {
            if let Some(coord) = s.strip_prefix('@') {
                let r = parse_rational(&Value::String(coord.to_string()), path)?;
                Ok(PointOnP1::coordinate(r))
            } else if s.is_empty() {
                Err(ParseError::new(path, "empty point name"))
            } else {
                Ok(PointOnP1::named(s))
            }
        }
    }
}

pub fn point_to_string(p: &PointOnP1) -> String {
    p.to_string()
}

fn parse_polyhedron(v: &Value, rank: usize, path: &str) -> Result<Polyhedron, ParseError> {
    let obj = as_object(v, path)?;
    let vertices = as_array(field(obj, "vertices", path)?, &format!("{path}.vertices"))?
        .iter()
        .enumerate()
        .map(|(i, p)| parse_rational_vector(p, rank, &format!("{path}.vertices[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let rays = match obj.get("rays") {
        None => Vec::new(),
        Some(r) => parse_ray_list(r, rank, &format!("{path}.rays"))?,
    };
    Polyhedron::from_generators(rank, &vertices, &rays)
        .map_err(|e| ParseError::new(path, e.to_string()))
}

fn parse_coefficient(
    v: &Value,
    rank: usize,
    tail: &Cone,
    path: &str,
) -> Result<Coefficient, ParseError> {
    match v {
        Value::String(s) if s == "empty" => Ok(Coefficient::Empty),
        Value::String(s) if s == "tail" => Ok(Coefficient::Poly(
            Polyhedron::from_cone(tail).map_err(|e| ParseError::new(path, e.to_string()))?,
        )),
        Value::Object(_) => Ok(Coefficient::Poly(parse_polyhedron(v, rank, path)?)),
        _ => Err(ParseError::new(
            path,
            "expected \"empty\", \"tail\", or {vertices, rays}",
        )),
    }
}

fn parse_member(v: &Value, rank: usize, path: &str) -> Result<PDivisor, ParseError> {
    let obj = as_object(v, path)?;
    let tail_rays = parse_ray_list(field(obj, "tail", path)?, rank, &format!("{path}.tail"))?;
    let tail = Cone::from_rays(rank, &tail_rays);
    let coeffs = as_object(
        field(obj, "coefficients", path)?,
        &format!("{path}.coefficients"),
    )?;
    let mut support = BTreeMap::new();
    for (key, cv) in coeffs {
        let cpath = format!("{path}.coefficients[\"{key}\"]");
        let point = parse_point(key, &cpath)?;
        let coeff = parse_coefficient(cv, rank, &tail, &cpath)?;
        support.insert(point, coeff);
    }
    PDivisor::new(tail, support).map_err(|e| ParseError::new(path, e.to_string()))
}

/// Parses a divisorial-fan document.
pub fn parse_fan_document(text: &str) -> Result<DivisorialFan, ParseError> {
    let root = root_value(text)?;
    let obj = as_object(&root, "$")?;
    expect_format(obj, "tfan-fan", "$")?;
    let rank = parse_usize(field(obj, "rank", "$")?, "$.rank")?;
    if rank == 0 {
        return Err(ParseError::new("$.rank", "rank must be at least 1"));
    }
    let mut extra: BTreeSet<PointOnP1> = BTreeSet::new();
    if let Some(points) = obj.get("points") {
        for (i, p) in as_array(points, "$.points")?.iter().enumerate() {
            let path = format!("$.points[{i}]");
            extra.insert(parse_point(as_str(p, &path)?, &path)?);
        }
    }
    let members = as_array(field(obj, "members", "$")?, "$.members")?
        .iter()
        .enumerate()
        .map(|(i, m)| parse_member(m, rank, &format!("$.members[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    DivisorialFan::with_extra_points(rank, members, extra)
        .map_err(|e| ParseError::new("$.members", e.to_string()))
}

/// Parses a toric-fan document (maximal cones by their rays).
pub fn parse_toric_document(text: &str) -> Result<ToricFan, ParseError> {
    let root = root_value(text)?;
    let obj = as_object(&root, "$")?;
    expect_format(obj, "tfan-toric", "$")?;
    let rank = parse_usize(field(obj, "rank", "$")?, "$.rank")?;
    if rank == 0 {
        return Err(ParseError::new("$.rank", "rank must be at least 1"));
    }
    let cones = as_array(field(obj, "maximal_cones", "$")?, "$.maximal_cones")?
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let path = format!("$.maximal_cones[{i}]");
            let rays = parse_ray_list(c, rank, &path)?;
            Ok(Cone::from_rays(rank, &rays))
        })
        .collect::<Result<Vec<_>, ParseError>>()?;
    ToricFan::new(rank, cones).map_err(|e| ParseError::new("$.maximal_cones", e.to_string()))
}

pub fn int_to_json(i: &Int) -> Value {
    match i64::try_from(i) {
        Ok(v) => json!(v),
        Err(_) => json!(i.to_string()),
    }
}

pub fn rational_to_json(r: &Rational) -> Value {
    if r.is_integer() {
        int_to_json(r.numer())
    } else {
        json!(r.to_string())
    }
}

pub fn lattice_vector_to_json(v: &LatticeVector) -> Value {
    Value::Array(v.coords().iter().map(int_to_json).collect())
}

pub fn rational_vector_to_json(v: &RationalVector) -> Value {
    Value::Array(v.coords().iter().map(rational_to_json).collect())
}

pub fn rays_to_json(rays: &[LatticeVector]) -> Value {
    Value::Array(rays.iter().map(lattice_vector_to_json).collect())
}

pub fn polyhedron_to_json(p: &Polyhedron) -> Value {
    json!({
        "vertices": Value::Array(p.vertices().iter().map(rational_vector_to_json).collect()),
        "rays": rays_to_json(p.tail_rays()),
    })
}

fn coefficient_to_json(c: &Coefficient) -> Value {
    match c {
        Coefficient::Empty => json!("empty"),
        Coefficient::Poly(p) => polyhedron_to_json(p),
    }
}

pub fn member_to_json(d: &PDivisor) -> Value {
    let mut coeffs = Map::new();
    for (y, c) in d.support() {
        coeffs.insert(y.to_string(), coefficient_to_json(c));
    }
    json!({
        "tail": rays_to_json(d.tail().rays()),
        "coefficients": Value::Object(coeffs),
    })
}

pub fn fan_to_json(fan: &DivisorialFan) -> Value {
    json!({
        "format": "tfan-fan",
        "version": 1,
        "rank": fan.rank(),
        "points": Value::Array(
            fan.point_universe().iter().map(|p| json!(p.to_string())).collect()
        ),
        "members": Value::Array(fan.members().iter().map(member_to_json).collect()),
    })
}

pub fn fan_to_string(fan: &DivisorialFan) -> String {
    let mut s = serde_json::to_string_pretty(&fan_to_json(fan)).expect("fan serializes");
    s.push('\n');
    s
}

pub fn toric_to_json(fan: &ToricFan) -> Value {
    json!({
        "format": "tfan-toric",
        "version": 1,
        "rank": fan.rank(),
        "maximal_cones": Value::Array(
            fan.maximal_cones().iter().map(|c| rays_to_json(c.rays())).collect()
        ),
    })
}

pub fn toric_to_string(fan: &ToricFan) -> String {
    let mut s = serde_json::to_string_pretty(&toric_to_json(fan)).expect("toric fan serializes");
    s.push('\n');
    s
}

fn origin_to_json(origin: &ChartOrigin) -> Value {
    match origin {
        ChartOrigin::MarkedMax(c) => json!({
            "kind": "marked-max",
            "tail": rays_to_json(c.rays()),
        }),
        ChartOrigin::UnmarkedMaxZero(c) => json!({
            "kind": "unmarked-max-zero",
            "tail": rays_to_json(c.rays()),
        }),
        ChartOrigin::UnmarkedMaxInfinity(c) => json!({
            "kind": "unmarked-max-infinity",
            "tail": rays_to_json(c.rays()),
        }),
        ChartOrigin::NonMaxTail {
            cell,
            at,
            tail,
            puncture,
        } => json!({
            "kind": "non-max-tail",
            "at": at.to_string(),
            "puncture": puncture.to_string(),
            "tail": rays_to_json(tail.rays()),
            "cell": polyhedron_to_json(cell),
        }),
    }
}

fn certificate_to_json(cert: &AffineSpaceCertificate) -> Value {
    json!({
        "cone": rays_to_json(cert.cone.rays()),
        "y0": cert.y0.to_string(),
        "y_inf": cert.y_inf.to_string(),
        "w0": lattice_vector_to_json(&cert.w0),
        "w_inf": lattice_vector_to_json(&cert.w_inf),
        "regular": cert.regular,
        "full_dimensional": cert.full_dimensional,
    })
}

pub fn chart_to_json(chart: &ACoverChart) -> Value {
    json!({
        "origin": origin_to_json(&chart.origin),
        "divisor": member_to_json(&chart.divisor),
        "certificate": certificate_to_json(&chart.certificate),
    })
}

pub fn cover_to_json(cover: &ACoverCertificate) -> Value {
    json!({
        "rank": cover.input.rank(),
        "chart_count": cover.charts.len(),
        "coverage_ok": cover.coverage_ok,
        "markings_ok": cover.markings_ok,
        "charts": Value::Array(cover.charts.iter().map(chart_to_json).collect()),
    })
}

fn parse_origin(v: &Value, rank: usize, path: &str) -> Result<ChartOrigin, ParseError> {
    let obj = as_object(v, path)?;
    let kind = as_str(field(obj, "kind", path)?, &format!("{path}.kind"))?;
    let tail_rays = parse_ray_list(field(obj, "tail", path)?, rank, &format!("{path}.tail"))?;
    let tail = Cone::from_rays(rank, &tail_rays);
    match kind {
        "marked-max" => Ok(ChartOrigin::MarkedMax(tail)),
        "unmarked-max-zero" => Ok(ChartOrigin::UnmarkedMaxZero(tail)),
        "unmarked-max-infinity" => Ok(ChartOrigin::UnmarkedMaxInfinity(tail)),
        "non-max-tail" => {
            let at = parse_point(
                as_str(field(obj, "at", path)?, &format!("{path}.at"))?,
                &format!("{path}.at"),
            )?;
            let puncture = parse_point(
                as_str(field(obj, "puncture", path)?, &format!("{path}.puncture"))?,
                &format!("{path}.puncture"),
            )?;
            let cell = parse_polyhedron(field(obj, "cell", path)?, rank, &format!("{path}.cell"))?;
            Ok(ChartOrigin::NonMaxTail {
                cell,
                at,
                tail,
                puncture,
            })
        }
        other => Err(ParseError::new(
            format!("{path}.kind"),
            format!("unknown origin kind \"{other}\""),
        )),
    }
}

fn parse_certificate(
    v: &Value,
    rank: usize,
    path: &str,
) -> Result<(AffineSpaceCertificate, Vec<Finding>), ParseError> {
    let obj = as_object(v, path)?;
    let literal_rays = parse_ray_list(field(obj, "cone", path)?, rank + 1, &format!("{path}.cone"))?;
    let cone = Cone::from_rays(rank + 1, &literal_rays);
    let mut integrity = Vec::new();
    let mut sorted = literal_rays.clone();
    sorted.sort();
    if sorted != cone.rays() {
        integrity.push(Finding::new(
            "certificate",
            format!("{path}.cone"),
            "listed rays are not the primitive extremal rays of the cone they span",
        ));
    }
    let y0 = parse_point(
        as_str(field(obj, "y0", path)?, &format!("{path}.y0"))?,
        &format!("{path}.y0"),
    )?;
    let y_inf = parse_point(
        as_str(field(obj, "y_inf", path)?, &format!("{path}.y_inf"))?,
        &format!("{path}.y_inf"),
    )?;
    let w0 = parse_lattice_vector(field(obj, "w0", path)?, rank, &format!("{path}.w0"))?;
    let w_inf = parse_lattice_vector(field(obj, "w_inf", path)?, rank, &format!("{path}.w_inf"))?;
    let regular = as_bool(field(obj, "regular", path)?, &format!("{path}.regular"))?;
    let full_dimensional = as_bool(
        field(obj, "full_dimensional", path)?,
        &format!("{path}.full_dimensional"),
    )?;
    Ok((
        AffineSpaceCertificate {
            cone,
            y0,
            y_inf,
            w0,
            w_inf,
            regular,
            full_dimensional,
        },
        integrity,
    ))
}

/// Parses a chart list from an acover report (or from its bare
/// certificate payload). Returns the charts plus integrity findings for
/// tampered certificate data that normalizes away on reconstruction.
pub fn parse_charts_document(
    text: &str,
) -> Result<(Vec<ACoverChart>, Vec<Finding>), ParseError> {
    let root = root_value(text)?;
    let obj = as_object(&root, "$")?;
    let (payload, base) = if obj.contains_key("charts") {
        (obj, "$".to_string())
    } else {
        let cert = field(obj, "certificate", "$")?;
        (as_object(cert, "$.certificate")?, "$.certificate".to_string())
    };
    let rank = parse_usize(field(payload, "rank", &base)?, &format!("{base}.rank"))?;
    let mut charts = Vec::new();
    let mut integrity = Vec::new();
    for (i, cv) in as_array(field(payload, "charts", &base)?, &format!("{base}.charts"))?
        .iter()
        .enumerate()
    {
        let path = format!("{base}.charts[{i}]");
        let cobj = as_object(cv, &path)?;
        let divisor = parse_member(field(cobj, "divisor", &path)?, rank, &format!("{path}.divisor"))?;
        let origin = parse_origin(field(cobj, "origin", &path)?, rank, &format!("{path}.origin"))?;
        let (certificate, mut cert_findings) = parse_certificate(
            field(cobj, "certificate", &path)?,
            rank,
            &format!("{path}.certificate"),
        )?;
        integrity.append(&mut cert_findings);
        charts.push(ACoverChart {
            divisor,
            origin,
            certificate,
        });
    }
    Ok((charts, integrity))
}
