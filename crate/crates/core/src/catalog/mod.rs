//! Built-in fields, quartics, bitangent tables and quartic-line curves.

use crate::arrangement::{ColumnSelection, IncidenceTable, ProjLine, ProjPoint};
use crate::error::{Error, Result};
use crate::numberfield::{rat, FieldElement, FieldRef, NumberField};
use crate::polyring::HomPoly;

/// `Q(e)`, `e^2 + e + 2 = 0`.
pub fn klein_field() -> FieldRef {
    NumberField::from_ints("e", &[2, 1, 1], 0).expect("static field")
}

/// `Q(w)`, `w^4 + 1 = 0`.
pub fn dyck_field() -> FieldRef {
    NumberField::from_ints("w", &[1, 0, 0, 0, 1], 0).expect("static field")
}

/// `Q(g)`, `g^4 - 8 g^2 + 36 = 0`, containing `i` and `sqrt 5`.
pub fn kk_field() -> FieldRef {
    NumberField::from_ints("g", &[36, 0, -8, 0, 1], 0).expect("static field")
}

/// `i = (g^3 - 2g)/12` in [`kk_field`].
pub fn kk_i(field: &FieldRef) -> FieldElement {
    FieldElement::from_coeffs(field, vec![rat(0, 1), rat(-1, 6), rat(0, 1), rat(1, 12)])
}

/// `r = (14g - g^3)/12` in [`kk_field`], `r^2 = 5`.
pub fn kk_r(field: &FieldRef) -> FieldElement {
    FieldElement::from_coeffs(field, vec![rat(0, 1), rat(7, 6), rat(0, 1), rat(-1, 12)])
}

/// Checks the identities the built-in data relies on: `9e^2 + 9e + 18 = 0`
/// (so `3e` is a root of `l^2 + 3l + 18`), `i^2 = -1`, `r^2 = 5`.
pub fn check_field_identities() -> Result<()> {
    let k = klein_field();
    let lambda = klein_lambda(&k);
    let klein = &(&(&lambda * &lambda) + &lambda.scale(&rat(3, 1))) + &FieldElement::from_int(&k, 18);
    let g = kk_field();
    let (i, r) = (kk_i(&g), kk_r(&g));
    let ok = klein.is_zero()
        && (&i * &i) == FieldElement::from_int(&g, -1)
        && (&r * &r) == FieldElement::from_int(&g, 5);
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidField("built-in field identities fail".into()))
    }
}

/// `l = 3e`.
pub fn klein_lambda(k: &FieldRef) -> FieldElement {
    FieldElement::generator(k).scale(&rat(3, 1))
}

/// Both roots of `l^2 + 3l + 18`: `3e` and `-3(e+1)`.
pub fn klein_lambda_candidates(k: &FieldRef) -> [FieldElement; 2] {
    let e = FieldElement::generator(k);
    let other = (&e + &FieldElement::one(k)).scale(&rat(-3, 1));
    [klein_lambda(k), other]
}

/// `x^4 + y^4 + z^4 + l (x^2 y^2 + x^2 z^2 + y^2 z^2)`.
pub fn ciani(lambda: &FieldElement) -> HomPoly {
    let f = lambda.field();
    let one = FieldElement::one(f);
    let terms = [
        ([4, 0, 0], one.clone()),
        ([0, 4, 0], one.clone()),
        ([0, 0, 4], one),
        ([2, 2, 0], lambda.clone()),
        ([2, 0, 2], lambda.clone()),
        ([0, 2, 2], lambda.clone()),
    ];
    HomPoly::from_terms(f, 4, terms).expect("degree 4 terms")
}

pub fn fermat(field: &FieldRef) -> HomPoly {
    ciani(&FieldElement::zero(field))
}

/// Exact bitangent table of one of the three named quartics.
#[derive(Clone, Debug)]
pub struct BitangentTable {
    pub name: &'static str,
    pub field: FieldRef,
    pub quartic: HomPoly,
    pub lines: Vec<ProjLine>,
    pub points: Vec<ProjPoint>,
    /// for every line, the 1-based indices of the listed points it passes through
    pub incidences: Vec<Vec<usize>>,
}

impl BitangentTable {
    /// The "+" table as printed, rows `l1..l28`, columns `P1..`.
    pub fn printed_table(&self) -> IncidenceTable {
        IncidenceTable {
            row_labels: (1..=self.lines.len()).map(|i| format!("l{i}")).collect(),
            col_labels: (1..=self.points.len()).map(|i| format!("P{i}")).collect(),
            cells: self
                .incidences
                .iter()
                .map(|row| (1..=self.points.len()).map(|j| row.contains(&j)).collect())
                .collect(),
        }
    }

    /// Column selection using the listed points and their labels.
    pub fn point_columns(&self) -> ColumnSelection {
        ColumnSelection::Points(
            self.points
                .iter()
                .enumerate()
                .map(|(k, p)| (format!("P{}", k + 1), p.clone()))
                .collect(),
        )
    }
}

fn line(c: [FieldElement; 3]) -> ProjLine {
    ProjLine::new(c).expect("nonzero table line")
}

fn point(c: [FieldElement; 3]) -> ProjPoint {
    ProjPoint::new(c).expect("nonzero table point")
}

fn lines_from(field: &FieldRef, rows: &[[&[i64]; 3]]) -> Vec<ProjLine> {
    rows.iter()
        .map(|r| line(r.map(|c| FieldElement::from_int_coeffs(field, c))))
        .collect()
}

fn points_from(field: &FieldRef, rows: &[[&[i64]; 3]]) -> Vec<ProjPoint> {
    rows.iter()
        .map(|r| point(r.map(|c| FieldElement::from_int_coeffs(field, c))))
        .collect()
}

fn rows(list: &[&[usize]]) -> Vec<Vec<usize>> {
    list.iter().map(|r| r.to_vec()).collect()
}

/// Klein quartic (Ciani member at `l = 3e`) with its 28 bitangents.
pub fn klein_table() -> BitangentTable {
    let k = klein_field();
    // entries a + b e as [a, b]
    const O: &[i64] = &[0];
    const I: &[i64] = &[1];
    const N: &[i64] = &[-1];
    const E: &[i64] = &[0, 1];
    const NE: &[i64] = &[0, -1];
    const EM: &[i64] = &[-1, 1];
    const ME: &[i64] = &[1, -1];
    let lines = lines_from(
        &k,
        &[
            [O, I, E],
            [O, I, NE],
            [E, N, O],
            [O, E, N],
            [ME, I, N],
            [I, N, EM],
            [I, ME, I],
            [E, I, O],
            [I, NE, O],
            [I, N, ME],
            [I, I, EM],
            [I, O, E],
            [I, E, O],
            [I, N, I],
            [I, EM, I],
            [O, E, I],
            [EM, I, I],
            [E, O, I],
            [I, I, N],
            [I, I, I],
            [I, O, NE],
            [I, I, ME],
            [EM, I, N],
            [I, ME, N],
            [I, EM, N],
            [EM, N, N],
            [I, N, N],
            [E, O, N],
        ],
    );
    let points = points_from(
        &k,
        &[
            [I, O, O],
            [E, &[-2, -1], NE],
            [E, &[2, 1], E],
            [NE, &[2, 1], NE],
            [E, &[2, 1], NE],
            [O, O, I],
            [ME, EM, &[-2, -2]],
            [ME, ME, &[2, 2]],
            [O, I, I],
            [&[-2, -3], &[-2, 1], &[2, -1]],
            [I, I, O],
            [N, O, I],
            [&[-2, -2], EM, EM],
            [E, N, N],
            [N, I, O],
            [O, I, O],
            [&[2, 1], E, NE],
            [N, N, E],
            [N, I, NE],
            [O, N, I],
            [I, O, I],
        ],
    );
    let incidences = rows(&[
        &[1, 2, 3],
        &[1, 4, 5],
        &[2, 4, 6],
        &[1, 7, 8],
        &[4, 7, 9],
        &[4, 10, 11],
        &[7, 10, 12],
        &[3, 5, 6],
        &[6, 10, 13],
        &[2, 11, 13],
        &[3, 14, 15],
        &[10, 14, 16],
        &[6, 14, 17],
        &[9, 11, 12],
        &[12, 14, 18],
        &[1, 18, 19],
        &[3, 18, 20],
        &[7, 16, 18],
        &[9, 15, 21],
        &[12, 15, 20],
        &[13, 16, 17],
        &[5, 15, 17],
        &[5, 8, 9],
        &[13, 19, 21],
        &[8, 17, 21],
        &[2, 19, 20],
        &[11, 20, 21],
        &[8, 16, 19],
    ]);
    BitangentTable {
        name: "klein",
        quartic: ciani(&klein_lambda(&k)),
        field: k,
        lines,
        points,
        incidences,
    }
}

/// Fermat (Dyck) quartic with its 28 bitangents.
pub fn dyck_table() -> BitangentTable {
    let k = dyck_field();
    const O: &[i64] = &[0];
    const I: &[i64] = &[1];
    const N: &[i64] = &[-1];
    const W: &[i64] = &[0, 1];
    const NW: &[i64] = &[0, -1];
    const W2: &[i64] = &[0, 0, 1];
    const NW2: &[i64] = &[0, 0, -1];
    const W3: &[i64] = &[0, 0, 0, 1];
    const NW3: &[i64] = &[0, 0, 0, -1];
    let lines = lines_from(
        &k,
        &[
            [O, NW, I],
            [O, W, I],
            [O, NW3, I],
            [O, W3, I],
            [N, N, I],
            [N, I, I],
            [N, NW2, I],
            [N, W2, I],
            [I, N, I],
            [I, I, I],
            [I, NW2, I],
            [I, W2, I],
            [NW, O, I],
            [W, O, I],
            [NW2, N, I],
            [NW2, I, I],
            [NW2, NW2, I],
            [NW2, W2, I],
            [W2, N, I],
            [W2, I, I],
            [W2, NW2, I],
            [W2, W2, I],
            [NW3, O, I],
            [W3, O, I],
            [NW, I, O],
            [W, I, O],
            [NW3, I, O],
            [W3, I, O],
        ],
    );
    let points = points_from(
        &k,
        &[
            [I, O, O],
            [I, O, I],
            [O, I, I],
            [N, I, O],
            [I, I, O],
            [O, I, N],
            [O, I, W2],
            [NW2, I, O],
            [W2, I, O],
            [O, I, NW2],
            [N, O, I],
            [O, I, O],
            [N, O, NW2],
            [N, O, W2],
            [O, O, I],
        ],
    );
    let incidences = rows(&[
        &[1],
        &[1],
        &[1],
        &[1],
        &[2, 3, 4],
        &[2, 5, 6],
        &[2, 7, 8],
        &[2, 9, 10],
        &[3, 5, 11],
        &[4, 6, 11],
        &[7, 9, 11],
        &[8, 10, 11],
        &[12],
        &[12],
        &[3, 9, 13],
        &[6, 8, 13],
        &[4, 7, 13],
        &[5, 10, 13],
        &[3, 8, 14],
        &[6, 9, 14],
        &[5, 7, 14],
        &[4, 10, 14],
        &[12],
        &[12],
        &[15],
        &[15],
        &[15],
        &[15],
    ]);
    BitangentTable {
        name: "dyck",
        quartic: fermat(&k),
        field: k,
        lines,
        points,
        incidences,
    }
}

/// Komiya-Kuribayashi quartic (Ciani member at `l = 3`) with its 28 bitangents.
pub fn kk_table() -> BitangentTable {
    let k = kk_field();
    let c = |n: i64| FieldElement::from_int(&k, n);
    let i = kk_i(&k);
    let r = kk_r(&k);
    let fifth = rat(1, 5);
    let a = (&r * &(&i.scale(&rat(2, 1)) + &c(1))).scale(&fifth);
    let b = (&r * &(&i.scale(&rat(2, 1)) - &c(1))).scale(&fifth);
    let i2 = i.scale(&rat(2, 1));
    let ih = i.scale(&rat(1, 2));
    let (o, one) = (c(0), c(1));
    let n = |x: &FieldElement| -x;
    let lines = [
        [o.clone(), n(&a), one.clone()],
        [o.clone(), n(&b), one.clone()],
        [o.clone(), b.clone(), one.clone()],
        [o.clone(), a.clone(), one.clone()],
        [c(-1), c(-1), one.clone()],
        [c(-1), c(1), one.clone()],
        [c(-1), n(&i2), one.clone()],
        [c(-1), i2.clone(), one.clone()],
        [c(1), c(-1), one.clone()],
        [c(1), c(1), one.clone()],
        [c(1), n(&i2), one.clone()],
        [c(1), i2.clone(), one.clone()],
        [n(&i2), c(-1), one.clone()],
        [n(&i2), c(1), one.clone()],
        [n(&ih), n(&ih), one.clone()],
        [n(&ih), ih.clone(), one.clone()],
        [ih.clone(), n(&ih), one.clone()],
        [ih.clone(), ih.clone(), one.clone()],
        [i2.clone(), c(-1), one.clone()],
        [i2.clone(), c(1), one.clone()],
        [n(&a), o.clone(), one.clone()],
        [n(&b), o.clone(), one.clone()],
        [b.clone(), o.clone(), one.clone()],
        [a.clone(), o.clone(), one.clone()],
        [n(&a), one.clone(), o.clone()],
        [n(&b), one.clone(), o.clone()],
        [b.clone(), one.clone(), o.clone()],
        [a.clone(), one.clone(), o.clone()],
    ]
    .into_iter()
    .map(line)
    .collect();
    let points = points_from(
        &k,
        &[
            [&[1], &[0], &[-1]],
            [&[1], &[0], &[0]],
            [&[1], &[0], &[1]],
            [&[0], &[1], &[-1]],
            [&[0], &[1], &[0]],
            [&[0], &[1], &[1]],
            [&[-1], &[1], &[0]],
            [&[1], &[1], &[0]],
            [&[0], &[0], &[1]],
        ],
    );
    let incidences = rows(&[
        &[2],
        &[2],
        &[2],
        &[2],
        &[3, 6, 7],
        &[3, 4, 8],
        &[3],
        &[3],
        &[1, 6, 8],
        &[1, 4, 7],
        &[1],
        &[1],
        &[6],
        &[4],
        &[7],
        &[8],
        &[8],
        &[7],
        &[6],
        &[4],
        &[5],
        &[5],
        &[5],
        &[5],
        &[9],
        &[9],
        &[9],
        &[9],
    ]);
    BitangentTable {
        name: "kk",
        quartic: ciani(&c(3)),
        field: k,
        lines,
        points,
        incidences,
    }
}

/// A curve `quartic * product of lines` (either part may be absent).
#[derive(Clone, Debug, PartialEq)]
pub struct CurveSpec {
    pub label: String,
    pub field: FieldRef,
    pub quartic: Option<HomPoly>,
    pub lines: Vec<ProjLine>,
    /// Further factor of arbitrary degree.
    pub extra: Option<HomPoly>,
}

impl CurveSpec {
    pub fn degree(&self) -> u32 {
        4 * self.quartic.is_some() as u32 + self.lines.len() as u32 + self.extra.as_ref().map_or(0, HomPoly::degree)
    }

    /// Defining polynomial.
    pub fn polynomial(&self) -> HomPoly {
        let mut factors: Vec<HomPoly> = self.quartic.iter().chain(&self.extra).cloned().collect();
        factors.extend(self.lines.iter().map(ProjLine::to_poly));
        HomPoly::product(&self.field, &factors)
    }
}

fn spec(label: &str, table: &BitangentTable, quartic: bool, idx: &[usize]) -> CurveSpec {
    CurveSpec {
        label: label.to_string(),
        field: table.field.clone(),
        quartic: quartic.then(|| table.quartic.clone()),
        lines: idx.iter().map(|&i| table.lines[i - 1].clone()).collect(),
        extra: None,
    }
}

/// Hyperosculating lines of the Fermat quartic as factors of the binary
/// quartics `y^4+z^4`, `x^4+z^4`, `x^4+y^4` (Dyck table indices).
const DYCK_YZ: [usize; 4] = [1, 2, 3, 4];
const DYCK_XZ: [usize; 4] = [13, 14, 23, 24];
const DYCK_XY: [usize; 4] = [25, 26, 27, 28];

/// Base lines and candidate added lines for the three `Q_k`.
fn q_family(k: usize) -> ([usize; 4], [usize; 8]) {
    let cat = |a: [usize; 4], b: [usize; 4]| [a[0], a[1], a[2], a[3], b[0], b[1], b[2], b[3]];
    match k {
        1 => (DYCK_XY, cat(DYCK_YZ, DYCK_XZ)),
        2 => (DYCK_YZ, cat(DYCK_XY, DYCK_XZ)),
        _ => (DYCK_XZ, cat(DYCK_XY, DYCK_YZ)),
    }
}

/// Fermat quartic times the 4 hyperosculating lines of the `k`-th coordinate pair.
pub fn q_octic(k: usize) -> CurveSpec {
    let t = dyck_table();
    spec(&format!("q{k}-octic"), &t, true, &q_family(k).0)
}

/// `H^k_i`: `Q_k` times one further hyperosculating line; `n = 8(k-1) + i`, `1 <= n <= 24`.
pub fn h_arrangement(n: usize) -> Option<CurveSpec> {
    if !(1..=24).contains(&n) {
        return None;
    }
    let (k, i) = ((n - 1) / 8 + 1, (n - 1) % 8);
    let (base, extra) = q_family(k);
    let mut idx = base.to_vec();
    idx.push(extra[i]);
    Some(spec(&format!("h-arrangement-{n}"), &dyck_table(), true, &idx))
}

/// `G^{i,j}_k`: `Q_k` times two further hyperosculating lines;
/// `n = 28(k-1) + (index of the pair i<j in lexicographic order) + 1`, `1 <= n <= 84`.
pub fn g_arrangement(n: usize) -> Option<CurveSpec> {
    if !(1..=84).contains(&n) {
        return None;
    }
    let (k, p) = ((n - 1) / 28 + 1, (n - 1) % 28);
    let (base, extra) = q_family(k);
    let pairs: Vec<(usize, usize)> = (0..8).flat_map(|i| (i + 1..8).map(move |j| (i, j))).collect();
    let (i, j) = pairs[p];
    let mut idx = base.to_vec();
    idx.extend([extra[i], extra[j]]);
    Some(spec(&format!("g-arrangement-{n}"), &dyck_table(), true, &idx))
}

/// Fermat quartic times 8 hyperosculating lines from two coordinate pairs.
pub fn c_dodecic(k: usize) -> CurveSpec {
    let pair = match k {
        1 => [DYCK_XY, DYCK_YZ],
        2 => [DYCK_XY, DYCK_XZ],
        _ => [DYCK_YZ, DYCK_XZ],
    };
    let idx: Vec<usize> = pair.concat();
    spec(&format!("c{k}-dodecic"), &dyck_table(), true, &idx)
}

/// KK quartic times two bitangents and two hyperosculating lines through one point.
pub fn kl_octic() -> CurveSpec {
    spec("kl-octic", &kk_table(), true, &[5, 6, 7, 8])
}

/// Fermat quartic times three concurrent hyperosculating lines.
pub fn dl_septic() -> CurveSpec {
    spec("dl-septic", &dyck_table(), true, &[2, 1, 4])
}

/// Klein quartic times four bitangents through one quadruple point.
pub fn qk_octic() -> CurveSpec {
    spec("qk-octic", &klein_table(), true, &[1, 2, 4, 16])
}

/// Quartic plus all 28 bitangents.
pub fn with_bitangents(table: &BitangentTable) -> CurveSpec {
    let all: Vec<usize> = (1..=28).collect();
    spec(table.name, table, true, &all)
}

/// Ciani member over `Q` for a rational `l`, as a lone quartic.
pub fn ciani_rational(lambda: &str) -> Result<CurveSpec> {
    let q = NumberField::rationals();
    let l = crate::numberfield::parse_rational(lambda)?;
    Ok(CurveSpec {
        label: format!("ciani:{lambda}"),
        field: q.clone(),
        quartic: Some(ciani(&FieldElement::from_rational(&q, l))),
        lines: vec![],
        extra: None,
    })
}

/// Table registered under a `--match` style name.
pub fn table_by_name(name: &str) -> Option<BitangentTable> {
    match name {
        "klein" | "klein-table" | "klein-bitangents" => Some(klein_table()),
        "dyck" | "fermat" | "dyck-table" | "fermat-table" | "dyck-bitangents" | "fermat-bitangents" => {
            Some(dyck_table())
        }
        "kk" | "kk-table" | "kk-bitangents" => Some(kk_table()),
        _ => None,
    }
}

/// Every named curve.
pub fn builtin(name: &str) -> Result<CurveSpec> {
    let unknown = || Error::UnknownBuiltin(name.to_string());
    if let Some(t) = table_by_name(name) {
        let mut s = with_bitangents(&t);
        s.label = name.to_string();
        return Ok(s);
    }
    if let Some(l) = name.strip_prefix("ciani:") {
        return ciani_rational(l);
    }
    let numbered = |prefix: &str| name.strip_prefix(prefix).and_then(|n| n.parse::<usize>().ok());
    if let Some(n) = numbered("h-arrangement-") {
        return h_arrangement(n).ok_or_else(unknown);
    }
    if let Some(n) = numbered("g-arrangement-") {
        return g_arrangement(n).ok_or_else(unknown);
    }
    match name {
        "kl-octic" => Ok(kl_octic()),
        "dl-septic" => Ok(dl_septic()),
        "qk-octic" => Ok(qk_octic()),
        "q1-octic" => Ok(q_octic(1)),
        "q2-octic" => Ok(q_octic(2)),
        "q3-octic" => Ok(q_octic(3)),
        "c1-dodecic" => Ok(c_dodecic(1)),
        "c2-dodecic" => Ok(c_dodecic(2)),
        "c3-dodecic" => Ok(c_dodecic(3)),
        _ => Err(unknown()),
    }
}

/// Names accepted by [`builtin`] (the Ciani family is listed once as `ciani:<l>`).
pub fn builtin_names() -> Vec<String> {
    let mut v: Vec<String> = [
        "klein",
        "klein-bitangents",
        "dyck",
        "fermat",
        "dyck-bitangents",
        "fermat-bitangents",
        "kk",
        "kk-bitangents",
        "ciani:<l>",
        "kl-octic",
        "dl-septic",
        "qk-octic",
        "q1-octic",
        "q2-octic",
        "q3-octic",
        "c1-dodecic",
        "c2-dodecic",
        "c3-dodecic",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    v.extend((1..=24).map(|n| format!("h-arrangement-{n}")));
    v.extend((1..=84).map(|n| format!("g-arrangement-{n}")));
    v
}
