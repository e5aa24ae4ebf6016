//! JSON forms of fields, polynomials, lines, curves and reports.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arrangement::{IncidenceStructure, ProjLine, ProjPoint};
use crate::catalog::CurveSpec;
use crate::combinatorics::{DiophantineSystem, WeakCombinatorics};
use crate::error::{Error, Result};
use crate::milnor::MilnorReport;
use crate::numberfield::{format_rational, parse_rational, FieldElement, FieldRef, NumberField};
use crate::polyring::HomPoly;
use crate::tangency::numeric::NumericLine;
use crate::tangency::{BitangentReport, SingularityProfile};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub label: String,
    /// Constant term first.
    pub min_poly: Vec<String>,
    pub root_index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: [u32; 3],
    pub coeff: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub degree: u32,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineJson {
    pub coords: [Vec<String>; 3],
}

/// A curve input; every part is optional, the field defaults to `Q`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quartic: Option<PolyJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lines: Option<Vec<LineJson>>,
    /// A further factor of any degree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<PolyJson>,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn field_to_json(f: &NumberField) -> FieldJson {
    FieldJson {
        label: f.label().to_string(),
        min_poly: f.min_poly_strings(),
        root_index: f.root_index(),
    }
}

pub fn field_from_json(j: &FieldJson) -> Result<FieldRef> {
    let coeffs = j.min_poly.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
    NumberField::new(j.label.clone(), coeffs, j.root_index)
}

fn element_from_strings(field: &FieldRef, coeffs: &[String]) -> Result<FieldElement> {
    if coeffs.len() > field.degree() {
        return Err(Error::Parse(format!(
            "{} coefficients for a field of degree {}",
            coeffs.len(),
            field.degree()
        )));
    }
    let mut padded = coeffs.to_vec();
    padded.resize(field.degree(), "0".into());
    FieldElement::parse(field, &padded)
}

pub fn poly_to_json(p: &HomPoly) -> PolyJson {
    PolyJson {
        degree: p.degree(),
        terms: p
            .terms()
            .map(|(m, c)| TermJson {
                exp: m.0,
                coeff: c.coeff_strings(),
            })
            .collect(),
    }
}

pub fn poly_from_json(field: &FieldRef, j: &PolyJson) -> Result<HomPoly> {
    let terms = j
        .terms
        .iter()
        .map(|t| Ok((t.exp, element_from_strings(field, &t.coeff)?)))
        .collect::<Result<Vec<_>>>()?;
    HomPoly::from_terms(field, j.degree, terms)
}

pub fn line_to_json(l: &ProjLine) -> LineJson {
    LineJson {
        coords: l.coords().clone().map(|c| c.coeff_strings()),
    }
}

pub fn lines_to_json(lines: &[ProjLine]) -> Vec<LineJson> {
    lines.iter().map(line_to_json).collect()
}

pub fn lines_from_json(field: &FieldRef, j: &[LineJson]) -> Result<Vec<ProjLine>> {
    j.iter()
        .map(|l| {
            let [a, b, c] = &l.coords;
            ProjLine::new([
                element_from_strings(field, a)?,
                element_from_strings(field, b)?,
                element_from_strings(field, c)?,
            ])
        })
        .collect()
}

/// Parses a JSON array of lines over `field`.
pub fn parse_lines(field: &FieldRef, text: &str) -> Result<Vec<ProjLine>> {
    let j: Vec<LineJson> = serde_json::from_str(text).map_err(parse_err)?;
    lines_from_json(field, &j)
}

pub fn curve_to_json(c: &CurveSpec) -> CurveJson {
    CurveJson {
        label: Some(c.label.clone()),
        field: Some(field_to_json(&c.field)),
        quartic: c.quartic.as_ref().map(poly_to_json),
        lines: Some(lines_to_json(&c.lines)),
        poly: c.extra.as_ref().map(poly_to_json),
    }
}

pub fn curve_from_json(j: &CurveJson) -> Result<CurveSpec> {
    let field = match &j.field {
        Some(f) => field_from_json(f)?,
        None => NumberField::rationals(),
    };
    let quartic = j.quartic.as_ref().map(|p| poly_from_json(&field, p)).transpose()?;
    if let Some(q) = &quartic {
        if q.degree() != 4 {
            return Err(Error::DegreeMismatch(format!("quartic of degree {}", q.degree())));
        }
    }
    let lines = match &j.lines {
        Some(l) => lines_from_json(&field, l)?,
        None => vec![],
    };
    let extra = j.poly.as_ref().map(|p| poly_from_json(&field, p)).transpose()?;
    Ok(CurveSpec {
        label: j.label.clone().unwrap_or_else(|| "input".into()),
        field,
        quartic,
        lines,
        extra,
    })
}

pub fn parse_curve(text: &str) -> Result<CurveSpec> {
    let j: CurveJson = serde_json::from_str(text).map_err(parse_err)?;
    curve_from_json(&j)
}

pub fn curve_to_string(c: &CurveSpec) -> String {
    serde_json::to_string_pretty(&curve_to_json(c)).expect("serializable")
}

pub fn parse_wc(text: &str) -> Result<WeakCombinatorics> {
    serde_json::from_str(text).map_err(parse_err)
}

pub fn parse_system(text: &str) -> Result<DiophantineSystem> {
    serde_json::from_str(text).map_err(parse_err)
}

fn point_strings(p: &ProjPoint) -> Vec<Vec<String>> {
    p.coords().iter().map(FieldElement::coeff_strings).collect()
}

/// `{"points": [...], "t_vector": {...}}`.
pub fn incidence_json(inc: &IncidenceStructure) -> Value {
    let points: Vec<Value> = inc
        .points
        .iter()
        .map(|p| {
            json!({
                "point": point_strings(&p.point),
                "display": p.point.to_string(),
                "multiplicity": p.multiplicity,
                "lines": p.lines.iter().map(|i| i + 1).collect::<Vec<_>>(),
            })
        })
        .collect();
    let t: serde_json::Map<String, Value> = inc.t_vector.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    json!({ "n_lines": inc.n_lines, "points": points, "t_vector": t })
}

/// `{"d","m","d_list","e_list","class","tau","mdr"}`.
pub fn resolution_json(r: &MilnorReport) -> Value {
    let mut v = json!({
        "d": r.d,
        "m": r.resolution.m,
        "d_list": r.resolution.d_list,
        "e_list": r.resolution.e_list,
        "class": r.class.label(),
        "tau": r.tau,
        "mdr": r.mdr,
    });
    if let crate::milnor::CurveClass::PlusOneGenerated { level } = r.class {
        v["level"] = json!(level);
    }
    v
}

/// `{"per_line": [{"line", "label"}], "h", "profile", "tau"}`.
pub fn tangency_json(report: &BitangentReport, profile: Option<&SingularityProfile>) -> Value {
    let per_line: Vec<Value> = report
        .per_line
        .iter()
        .enumerate()
        .map(|(i, c)| json!({ "line": i + 1, "label": c.label() }))
        .collect();
    let mut v = json!({
        "per_line": per_line,
        "h": report.h,
        "ordinary": report.ordinary,
        "failures": report.failures.iter().map(|i| i + 1).collect::<Vec<_>>(),
    });
    if let Some(p) = profile {
        v["profile"] = serde_json::to_value(p).expect("serializable");
        v["tau"] = json!(p.tau());
    }
    v
}

pub fn numeric_line_json(l: &NumericLine) -> Value {
    json!({ "coords": l.normalized_strings(), "residual": format!("{:.3e}", l.residual) })
}

/// Rational as used in JSON payloads.
pub fn rational_string(q: &crate::numberfield::Rational) -> String {
    format_rational(q)
}
