//! Projective lines and points over a number field and the incidence
//! structure of a line arrangement.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numberfield::{FieldElement, FieldRef, Rational};
use crate::polyring::{cross, HomPoly};

fn canonical(coords: [FieldElement; 3]) -> Result<[FieldElement; 3]> {
    let lead = coords
        .iter()
        .find(|c| !c.is_zero())
        .ok_or(Error::ZeroTriple)?
        .inv()?;
    Ok(coords.map(|c| &c * &lead))
}

fn key_of(coords: &[FieldElement; 3]) -> Vec<Rational> {
    coords.iter().flat_map(|c| c.coeffs().iter().cloned()).collect()
}

macro_rules! proj_type {
    ($name:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(Clone, PartialEq, Eq)]
        pub struct $name {
            coords: [FieldElement; 3],
        }

        impl $name {
            /// Scales so that the first nonzero coordinate is 1.
            pub fn new(coords: [FieldElement; 3]) -> Result<Self> {
                let f = coords[0].field().clone();
                if coords.iter().any(|c| !c.field().same_as(&f)) {
                    return Err(Error::FieldMismatch(f.label().into(), "mixed coordinates".into()));
                }
                Ok($name {
                    coords: canonical(coords)?,
                })
            }

            pub fn from_ints(field: &FieldRef, c: [i64; 3]) -> Result<Self> {
                Self::new(c.map(|v| FieldElement::from_int(field, v)))
            }

            pub fn coords(&self) -> &[FieldElement; 3] {
                &self.coords
            }

            pub fn field(&self) -> &FieldRef {
                self.coords[0].field()
            }

            /// Ordering key: the power-basis coordinates in sequence.
            pub fn key(&self) -> Vec<Rational> {
                key_of(&self.coords)
            }

            /// The same object over another field, when all coordinates are rational.
            pub fn to_field(&self, field: &FieldRef) -> Option<Self> {
                let [a, b, c] = &self.coords;
                Some($name {
                    coords: [a.to_field(field)?, b.to_field(field)?, c.to_field(field)?],
                })
            }
        }

        impl PartialOrd for $name {
            fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
                Some(self.cmp(other))
            }
        }

        impl Ord for $name {
            fn cmp(&self, other: &Self) -> std::cmp::Ordering {
                self.key().cmp(&other.key())
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self)
            }
        }
    };
}

proj_type!(ProjLine, "The line `u x + v y + w z = 0`, canonically scaled.");
proj_type!(ProjPoint, "A point `(x : y : z)`, canonically scaled.");

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [u, v, w] = &self.coords;
        write!(f, "[{u}, {v}, {w}]")
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = &self.coords;
        write!(f, "({x} : {y} : {z})")
    }
}

impl ProjLine {
    /// The linear form of the line.
    pub fn to_poly(&self) -> HomPoly {
        HomPoly::linear(&self.coords)
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        let s = self
            .coords
            .iter()
            .zip(p.coords())
            .fold(FieldElement::zero(self.field()), |acc, (a, b)| &acc + &(a * b));
        s.is_zero()
    }
}

/// Meeting point of two distinct lines.
pub fn intersect(l1: &ProjLine, l2: &ProjLine) -> Result<ProjPoint> {
    if l1 == l2 {
        return Err(Error::EqualLines);
    }
    ProjPoint::new(cross(l1.coords(), l2.coords()))
}

/// A point where at least two lines of the arrangement meet.
#[derive(Clone, Debug, PartialEq)]
pub struct IncidencePoint {
    pub point: ProjPoint,
    pub multiplicity: usize,
    /// Indices of the incident lines, increasing.
    pub lines: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IncidenceStructure {
    pub n_lines: usize,
    /// Ordered by the canonical coordinates of the points.
    pub points: Vec<IncidencePoint>,
    /// `t_k`, the number of points of multiplicity `k`.
    pub t_vector: BTreeMap<usize, usize>,
}

impl IncidenceStructure {
    pub fn t(&self, k: usize) -> usize {
        self.t_vector.get(&k).copied().unwrap_or(0)
    }

    /// Points of multiplicity exactly `k`, in structure order.
    pub fn points_of_multiplicity(&self, k: usize) -> impl Iterator<Item = &IncidencePoint> {
        self.points.iter().filter(move |p| p.multiplicity == k)
    }

    pub fn find(&self, p: &ProjPoint) -> Option<&IncidencePoint> {
        self.points.iter().find(|q| &q.point == p)
    }
}

/// Incidence structure of pairwise distinct lines.
pub fn incidence(lines: &[ProjLine]) -> Result<IncidenceStructure> {
    let n = lines.len();
    for i in 0..n {
        for j in i + 1..n {
            if lines[i] == lines[j] {
                return Err(Error::DuplicateLine(i, j));
            }
        }
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let meets: Vec<(usize, usize, ProjPoint)> = pairs
        .par_iter()
        .map(|&(i, j)| intersect(&lines[i], &lines[j]).map(|p| (i, j, p)))
        .collect::<Result<_>>()?;
    #[allow(clippy::mutable_key_type)] // the cached embedding does not enter Ord
    let mut groups: BTreeMap<ProjPoint, BTreeSet<usize>> = BTreeMap::new();
    for (i, j, p) in meets {
        let set = groups.entry(p).or_default();
        set.insert(i);
        set.insert(j);
    }
    let mut t_vector = BTreeMap::new();
    let mut points = Vec::with_capacity(groups.len());
    for (point, set) in groups {
        let multiplicity = set.len();
        *t_vector.entry(multiplicity).or_insert(0) += 1;
        points.push(IncidencePoint {
            point,
            multiplicity,
            lines: set.into_iter().collect(),
        });
    }
    let inc = IncidenceStructure {
        n_lines: n,
        points,
        t_vector,
    };
    check_counts(&inc, lines);
    Ok(inc)
}

fn choose2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Naive count and membership recheck; a failure here is a bug.
fn check_counts(inc: &IncidenceStructure, lines: &[ProjLine]) {
    let pairs: usize = inc.points.iter().map(|p| choose2(p.multiplicity)).sum();
    assert_eq!(pairs, choose2(inc.n_lines), "counting identity violated");
    for p in &inc.points {
        let through: Vec<usize> = (0..lines.len()).filter(|&i| lines[i].contains(&p.point)).collect();
        assert_eq!(through, p.lines, "incidence recheck failed at {}", p.point);
    }
}

/// Sum of `(m_p - 1)^2`: total Tjurina number when every point is ordinary.
pub fn ordinary_tjurina(inc: &IncidenceStructure) -> usize {
    inc.points.iter().map(|p| (p.multiplicity - 1).pow(2)).sum()
}

/// Line-by-point incidence table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceTable {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub cells: Vec<Vec<bool>>,
}

impl IncidenceTable {
    /// Header row of point labels, then one row per line with `+` cells.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if self.row_labels.is_empty() && self.col_labels.is_empty() {
            return out;
        }
        out.push_str("line");
        for c in &self.col_labels {
            out.push(',');
            out.push_str(c);
        }
        out.push('\n');
        for (label, row) in self.row_labels.iter().zip(&self.cells) {
            out.push_str(label);
            for &cell in row {
                out.push(',');
                if cell {
                    out.push('+');
                }
            }
            out.push('\n');
        }
        out
    }

    /// Cells that differ from another table of the same shape, as
    /// `(row label, column label)`.
    pub fn mismatches(&self, other: &IncidenceTable) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (r, label) in self.row_labels.iter().enumerate() {
            for (c, col) in self.col_labels.iter().enumerate() {
                let a = self.cells[r][c];
                let b = other.cells.get(r).and_then(|row| row.get(c)).copied().unwrap_or(!a);
                if a != b {
                    out.push((label.clone(), col.clone()));
                }
            }
        }
        out
    }
}

/// Which points become table columns.
#[derive(Clone, Debug)]
pub enum ColumnSelection {
    /// All points of multiplicity at least 3, labelled `P1, P2, …` in structure order.
    Default,
    /// Points of exactly this multiplicity.
    Multiplicity(usize),
    /// Given points, in the given order, with labels.
    Points(Vec<(String, ProjPoint)>),
}

pub fn incidence_table(inc: &IncidenceStructure, lines: &[ProjLine], columns: &ColumnSelection) -> IncidenceTable {
    let cols: Vec<(String, ProjPoint)> = match columns {
        ColumnSelection::Default => inc
            .points
            .iter()
            .filter(|p| p.multiplicity >= 3)
            .enumerate()
            .map(|(k, p)| (format!("P{}", k + 1), p.point.clone()))
            .collect(),
        ColumnSelection::Multiplicity(m) => inc
            .points_of_multiplicity(*m)
            .enumerate()
            .map(|(k, p)| (format!("P{}", k + 1), p.point.clone()))
            .collect(),
        ColumnSelection::Points(list) => list.clone(),
    };
    let cells = lines
        .iter()
        .map(|l| cols.iter().map(|(_, p)| l.contains(p)).collect())
        .collect();
    IncidenceTable {
        row_labels: (1..=lines.len()).map(|i| format!("l{i}")).collect(),
        col_labels: cols.into_iter().map(|(l, _)| l).collect(),
        cells,
    }
}
