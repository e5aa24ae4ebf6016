//! How lines meet a plane curve: contact patterns, bitangent verification
//! and the singularities of a curve-plus-lines arrangement.

pub mod numeric;

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{incidence, ProjLine, ProjPoint};
use crate::error::{Error, Result};
use crate::numberfield::FieldElement;
use crate::polyring::{cross, spanning_points, BinaryForm, HomPoly, MultiplicityPattern};

pub use numeric::{find_bitangents_numeric, match_table, NumericLine, NumericQuartic, TableMatch};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TangencyKind {
    Transverse,
    SimpleTangent,
    Bitangent,
    Flex,
    Hyperosculating,
    Component,
}

impl TangencyKind {
    pub fn label(self) -> &'static str {
        match self {
            TangencyKind::Transverse => "transverse",
            TangencyKind::SimpleTangent => "simple-tangent",
            TangencyKind::Bitangent => "bitangent",
            TangencyKind::Flex => "flex",
            TangencyKind::Hyperosculating => "hyperosculating",
            TangencyKind::Component => "component",
        }
    }
}

/// Contact of a line with a quartic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangencyClass {
    /// `None` when the line is a component.
    pub pattern: Option<MultiplicityPattern>,
    pub kind: TangencyKind,
}

impl TangencyClass {
    /// Bitangent in the wide sense: the two tangency points may coincide.
    pub fn is_bitangent(&self) -> bool {
        matches!(self.kind, TangencyKind::Bitangent | TangencyKind::Hyperosculating)
    }

    pub fn label(&self) -> String {
        match &self.pattern {
            Some(p) => format!("{}:{}", self.kind.label(), p),
            None => self.kind.label().to_string(),
        }
    }
}

impl fmt::Display for TangencyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Contact pattern of `line` with the quartic `q`.
pub fn classify_line(q: &HomPoly, line: &ProjLine) -> Result<TangencyClass> {
    if q.degree() != 4 {
        return Err(Error::DegreeMismatch(format!("expected a quartic, got degree {}", q.degree())));
    }
    let b = q.restrict_to_line(line);
    if b.is_zero() {
        return Ok(TangencyClass {
            pattern: None,
            kind: TangencyKind::Component,
        });
    }
    let pattern = b.squarefree_pattern()?;
    let kind = match pattern.parts() {
        [1, 1, 1, 1] => TangencyKind::Transverse,
        [2, 1, 1] => TangencyKind::SimpleTangent,
        [2, 2] => TangencyKind::Bitangent,
        [3, 1] => TangencyKind::Flex,
        [4] => TangencyKind::Hyperosculating,
        other => unreachable!("pattern {other:?} of a quartic restriction"),
    };
    Ok(TangencyClass {
        pattern: Some(pattern),
        kind,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitangentReport {
    pub per_line: Vec<TangencyClass>,
    /// Lines with pattern 22.
    pub ordinary: usize,
    /// Lines with pattern 4, the hyperflex count.
    pub h: usize,
    /// Indices of lines that are not bitangent.
    pub failures: Vec<usize>,
}

impl BitangentReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Classifies every line; lines that are not bitangent are listed in `failures`.
pub fn verify_bitangent_set(q: &HomPoly, lines: &[ProjLine]) -> Result<BitangentReport> {
    let per_line: Vec<TangencyClass> = lines
        .par_iter()
        .map(|l| classify_line(q, l))
        .collect::<Result<_>>()?;
    let count = |k| per_line.iter().filter(|c| c.kind == k).count();
    Ok(BitangentReport {
        ordinary: count(TangencyKind::Bitangent),
        h: count(TangencyKind::Hyperosculating),
        failures: per_line
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_bitangent())
            .map(|(i, _)| i)
            .collect(),
        per_line,
    })
}

/// Local singularity types of the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SingularityKind {
    A1,
    A3,
    A5,
    A7,
    D4,
    D6,
    X9,
}

impl SingularityKind {
    /// Local Tjurina number (equal to the Milnor number for these types).
    pub fn tau(self) -> u64 {
        match self {
            SingularityKind::A1 => 1,
            SingularityKind::A3 => 3,
            SingularityKind::A5 => 5,
            SingularityKind::A7 => 7,
            SingularityKind::D4 => 4,
            SingularityKind::D6 => 6,
            SingularityKind::X9 => 9,
        }
    }

    /// `A_(2m-1)` for a smooth branch meeting a line with contact `m`.
    fn from_contact(m: u32) -> Option<Self> {
        match m {
            1 => Some(SingularityKind::A1),
            2 => Some(SingularityKind::A3),
            3 => Some(SingularityKind::A5),
            4 => Some(SingularityKind::A7),
            _ => None,
        }
    }
}

/// Counts of catalog singularities.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SingularityProfile {
    pub n2: u64,
    pub t2: u64,
    pub t5: u64,
    pub t7: u64,
    pub n3: u64,
    pub d6: u64,
    pub n4: u64,
}

impl SingularityProfile {
    pub fn add(&mut self, kind: SingularityKind) {
        match kind {
            SingularityKind::A1 => self.n2 += 1,
            SingularityKind::A3 => self.t2 += 1,
            SingularityKind::A5 => self.t5 += 1,
            SingularityKind::A7 => self.t7 += 1,
            SingularityKind::D4 => self.n3 += 1,
            SingularityKind::D6 => self.d6 += 1,
            SingularityKind::X9 => self.n4 += 1,
        }
    }

    pub fn tau(&self) -> u64 {
        self.n2 + 3 * self.t2 + 5 * self.t5 + 7 * self.t7 + 4 * self.n3 + 6 * self.d6 + 9 * self.n4
    }
}

/// One singular point of an arrangement.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalSite {
    /// Known for line intersections; contact points of a single line may lie
    /// outside the field and are left unnamed.
    pub point: Option<ProjPoint>,
    pub lines: Vec<usize>,
    pub on_quartic: bool,
    /// Contact order of each incident line with the curve (0 when off it).
    pub contacts: Vec<u32>,
    pub kind: SingularityKind,
}

/// Parameter `(s : t)` of a point of the line with respect to the spanning
/// points `p`, `q`.
fn line_parameter(p: &[FieldElement; 3], q: &[FieldElement; 3], point: &[FieldElement; 3]) -> (FieldElement, FieldElement) {
    let pq = cross(p, q);
    let k = pq.iter().position(|c| !c.is_zero()).expect("independent spanning points");
    let s = cross(point, q)[k].checked_div(&pq[k]).expect("nonzero");
    let t = cross(p, point)[k].checked_div(&pq[k]).expect("nonzero");
    (s, t)
}

fn unsupported(point: &ProjPoint, detail: String) -> Error {
    Error::UnsupportedSingularity {
        point: point.to_string(),
        detail,
    }
}

/// Singular points of `q · Π lines`, each classified into the catalog.
///
/// `q` is assumed smooth. Line intersections off the curve give ordinary
/// multiple points; on the curve only a transverse pair (D4) or a tangent
/// plus a transverse line (D6) is supported. The remaining contacts of each
/// line give `A_(2m-1)` points.
pub fn arrangement_sites(q: &HomPoly, lines: &[ProjLine]) -> Result<Vec<LocalSite>> {
    struct Restriction {
        p: [FieldElement; 3],
        q: [FieldElement; 3],
        form: BinaryForm,
        pattern: MultiplicityPattern,
    }
    let restrictions: Vec<Restriction> = lines
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let (p, qq) = spanning_points(l.coords());
            let form = q.substitute_points(&p, &qq);
            if form.is_zero() {
                return Err(Error::NonReduced(format!("line {} is a component of the curve", i + 1)));
            }
            let pattern = form.squarefree_pattern()?;
            Ok(Restriction { p, q: qq, form, pattern })
        })
        .collect::<Result<_>>()?;
    let inc = incidence(lines).map_err(|e| match e {
        Error::DuplicateLine(i, j) => Error::NonReduced(format!("lines {} and {} coincide", i + 1, j + 1)),
        other => other,
    })?;
    let mut remaining: Vec<MultiplicityPattern> = restrictions.iter().map(|r| r.pattern.clone()).collect();
    let mut sites = Vec::new();
    for ip in &inc.points {
        let on_quartic = q.evaluate(ip.point.coords()).is_zero();
        let k = ip.multiplicity;
        if !on_quartic {
            let kind = match k {
                2 => SingularityKind::A1,
                3 => SingularityKind::D4,
                4 => SingularityKind::X9,
                _ => return Err(unsupported(&ip.point, format!("{k} concurrent lines off the curve"))),
            };
            sites.push(LocalSite {
                point: Some(ip.point.clone()),
                lines: ip.lines.clone(),
                on_quartic,
                contacts: vec![0; k],
                kind,
            });
            continue;
        }
        let contacts: Vec<u32> = ip
            .lines
            .iter()
            .map(|&i| {
                let r = &restrictions[i];
                let (s, t) = line_parameter(&r.p, &r.q, ip.point.coords());
                r.form.root_multiplicity(&s, &t)
            })
            .collect::<Result<_>>()?;
        let mut sorted = contacts.clone();
        sorted.sort_unstable();
        let kind = match (k, sorted.as_slice()) {
            (2, [1, 1]) => SingularityKind::D4,
            (2, [1, 2]) => SingularityKind::D6,
            _ => {
                return Err(unsupported(
                    &ip.point,
                    format!("{k} lines meeting on the curve with contacts {contacts:?}"),
                ))
            }
        };
        for (&i, &m) in ip.lines.iter().zip(&contacts) {
            let removed = remaining[i].remove_part(m);
            debug_assert!(removed, "contact not in the line pattern");
        }
        sites.push(LocalSite {
            point: Some(ip.point.clone()),
            lines: ip.lines.clone(),
            on_quartic,
            contacts,
            kind,
        });
    }
    for (i, pattern) in remaining.iter().enumerate() {
        for &m in pattern.parts() {
            let kind = SingularityKind::from_contact(m).ok_or_else(|| Error::UnsupportedSingularity {
                point: format!("contact point of line {}", i + 1),
                detail: format!("contact order {m}"),
            })?;
            sites.push(LocalSite {
                point: None,
                lines: vec![i],
                on_quartic: true,
                contacts: vec![m],
                kind,
            });
        }
    }
    Ok(sites)
}

pub fn classify_arrangement(q: &HomPoly, lines: &[ProjLine]) -> Result<SingularityProfile> {
    let mut profile = SingularityProfile::default();
    for site in arrangement_sites(q, lines)? {
        profile.add(site.kind);
    }
    Ok(profile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::NumberField;

    fn fermat() -> HomPoly {
        let q = NumberField::rationals();
        HomPoly::from_int_terms(&q, 4, &[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)]).unwrap()
    }

    #[test]
    fn coordinate_line_is_transverse() {
        let q = NumberField::rationals();
        let c = classify_line(&fermat(), &ProjLine::from_ints(&q, [1, 0, 0]).unwrap()).unwrap();
        assert_eq!(c.kind, TangencyKind::Transverse);
        assert_eq!(c.label(), "transverse:1111");
    }

    #[test]
    fn smooth_quartic_alone() {
        assert_eq!(classify_arrangement(&fermat(), &[]).unwrap(), SingularityProfile::default());
    }

    #[test]
    fn coordinate_triangle_on_fermat() {
        // three lines off the curve meeting in three nodes, each meeting the
        // curve in four transverse points
        let q = NumberField::rationals();
        let lines: Vec<ProjLine> = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
            .iter()
            .map(|c| ProjLine::from_ints(&q, *c).unwrap())
            .collect();
        let p = classify_arrangement(&fermat(), &lines).unwrap();
        assert_eq!(p.n2, 3 + 12);
        assert_eq!(p.tau(), 15);
    }

    #[test]
    fn component_is_non_reduced() {
        let q = NumberField::rationals();
        let x = HomPoly::linear(&[1, 0, 0].map(|v| crate::numberfield::FieldElement::from_int(&q, v)));
        let curve = &x * &fermat().partial_derivative(crate::polyring::Var::X);
        let line = ProjLine::from_ints(&q, [1, 0, 0]).unwrap();
        assert_eq!(classify_line(&curve, &line).unwrap().kind, TangencyKind::Component);
        assert!(matches!(classify_arrangement(&curve, &[line]), Err(Error::NonReduced(_))));
    }
}
