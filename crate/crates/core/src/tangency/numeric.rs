//! Numeric bitangents of a smooth quartic.
//!
//! In a chart `Z = 1` a line `Y = m X + c` is a bitangent when
//! `p(X) = Q(X, mX + c, 1) = a4 (X^2 + u X + v)^2`. Eliminating `u, v` gives
//!
//! ```text
//! E1 = 8 a1 a4^2 - 4 a2 a3 a4 + a3^3
//! E2 = 64 a0 a4^3 - (4 a2 a4 - a3^2)^2
//! ```
//!
//! The resultant of `E1, E2` in `c` is sampled on a circle and interpolated
//! by an inverse DFT, its roots are found by Aberth iteration, and every
//! candidate `(m, c, u, v)` is polished by Newton's method on the four
//! coefficient equations. The three cyclic charts are merged.

use num_complex::Complex64;

use crate::arrangement::ProjLine;
use crate::error::{Error, Result};
use crate::numberfield::aberth;
use crate::polyring::HomPoly;

type C = Complex64;

const ZERO: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);

/// Degree bound of the resultant in `m`: `deg_c E2 · deg_m E1 + deg_c E1 · deg_m E2`.
const RESULTANT_DEGREE: usize = 4 * 9 + 3 * 12;
const SAMPLES: usize = 128;

/// A quartic with complex coefficients, as `(exponent, coefficient)` terms.
#[derive(Clone, Debug)]
pub struct NumericQuartic {
    terms: Vec<([u32; 3], C)>,
}

impl NumericQuartic {
    pub fn new(terms: Vec<([u32; 3], C)>) -> Result<Self> {
        if terms.iter().any(|(e, c)| e.iter().sum::<u32>() != 4 || !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::DegreeMismatch("numeric quartic needs finite degree-4 terms".into()));
        }
        Ok(NumericQuartic { terms })
    }

    /// Embeds an exact quartic at the field's chosen root.
    pub fn from_poly(q: &HomPoly) -> Result<Self> {
        if q.degree() != 4 {
            return Err(Error::DegreeMismatch(format!("expected a quartic, got degree {}", q.degree())));
        }
        let terms = q
            .terms()
            .map(|(m, c)| Ok((m.0, c.embed_numeric(14)?)))
            .collect::<Result<_>>()?;
        Self::new(terms)
    }

    pub fn terms(&self) -> &[([u32; 3], C)] {
        &self.terms
    }

    /// The quartic in permuted coordinates: variable `k` of the result is
    /// variable `perm[k]` of `self`.
    fn permuted(&self, perm: [usize; 3]) -> NumericQuartic {
        NumericQuartic {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ([e[perm[0]], e[perm[1]], e[perm[2]]], *c))
                .collect(),
        }
    }

    pub fn evaluate(&self, p: [C; 3]) -> C {
        self.terms
            .iter()
            .map(|(e, c)| c * p[0].powu(e[0]) * p[1].powu(e[1]) * p[2].powu(e[2]))
            .sum()
    }
}

/// Coefficients (constant first) of `g(X, mX + c, 1)` for a form `g`.
fn chart_restriction(terms: &[([u32; 3], C)], deg: usize, m: C, c: C) -> Vec<C> {
    let mut out = vec![ZERO; deg + 1];
    for (e, coef) in terms {
        let (a, b) = (e[0] as usize, e[1] as usize);
        // (mX + c)^b = sum_j binom(b, j) m^j c^(b-j) X^j
        let mut binom = 1.0;
        for j in 0..=b {
            out[a + j] += coef * binom * m.powu(j as u32) * c.powu((b - j) as u32);
            binom = binom * (b - j) as f64 / (j + 1) as f64;
        }
    }
    out
}

fn y_derivative(terms: &[([u32; 3], C)]) -> Vec<([u32; 3], C)> {
    terms
        .iter()
        .filter(|(e, _)| e[1] > 0)
        .map(|(e, c)| ([e[0], e[1] - 1, e[2]], c * e[1] as f64))
        .collect()
}

fn e1_e2(a: &[C]) -> (C, C) {
    let (a0, a1, a2, a3, a4) = (a[0], a[1], a[2], a[3], a[4]);
    let e1 = 8.0 * a1 * a4 * a4 - 4.0 * a2 * a3 * a4 + a3 * a3 * a3;
    let s = 4.0 * a2 * a4 - a3 * a3;
    let e2 = 64.0 * a0 * a4 * a4 * a4 - s * s;
    (e1, e2)
}

/// `E1(m, c)` and `E2(m, c)` as polynomials in `c` (constant first), by
/// interpolation at the fifth roots of unity scaled to unit radius.
fn e_polys_in_c(q: &[([u32; 3], C)], m: C) -> (Vec<C>, Vec<C>) {
    const N: usize = 5;
    let nodes: Vec<C> = (0..N)
        .map(|k| C::from_polar(1.0, std::f64::consts::TAU * k as f64 / N as f64))
        .collect();
    let vals: Vec<(C, C)> = nodes.iter().map(|&c| e1_e2(&chart_restriction(q, 4, m, c))).collect();
    let interp = |f: &dyn Fn(&(C, C)) -> C| -> Vec<C> {
        (0..N)
            .map(|j| {
                vals.iter()
                    .zip(&nodes)
                    .map(|(v, w)| f(v) * w.powi(-(j as i32)))
                    .sum::<C>()
                    / N as f64
            })
            .collect()
    };
    let mut e1 = interp(&|v| v.0);
    e1.truncate(4);
    let e2 = interp(&|v| v.1);
    (e1, e2)
}

fn det(mut a: Vec<Vec<C>>) -> C {
    let n = a.len();
    let mut d = ONE;
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].norm().partial_cmp(&a[j][col].norm()).unwrap())
            .unwrap();
        if a[piv][col].norm() == 0.0 {
            return ZERO;
        }
        if piv != col {
            a.swap(piv, col);
            d = -d;
        }
        d *= a[col][col];
        let prow = a[col].clone();
        for row in a.iter_mut().skip(col + 1) {
            let f = row[col] / prow[col];
            for (x, y) in row.iter_mut().zip(&prow).skip(col) {
                *x -= f * y;
            }
        }
    }
    d
}

/// Sylvester resultant of two polynomials of formal degrees `len - 1`.
fn resultant(f: &[C], g: &[C]) -> C {
    let (df, dg) = (f.len() - 1, g.len() - 1);
    let n = df + dg;
    let mut rows = vec![vec![ZERO; n]; n];
    for i in 0..dg {
        for (k, c) in f.iter().rev().enumerate() {
            rows[i][i + k] = *c;
        }
    }
    for i in 0..df {
        for (k, c) in g.iter().rev().enumerate() {
            rows[dg + i][i + k] = *c;
        }
    }
    det(rows)
}

fn solve4(mut a: [[C; 4]; 4], mut b: [C; 4]) -> Option<[C; 4]> {
    for col in 0..4 {
        let piv = (col..4).max_by(|&i, &j| a[i][col].norm().partial_cmp(&a[j][col].norm()).unwrap())?;
        if a[piv][col].norm() < 1e-300 {
            return None;
        }
        a.swap(piv, col);
        b.swap(piv, col);
        for r in col + 1..4 {
            let f = a[r][col] / a[col][col];
            for c in col..4 {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = [ZERO; 4];
    for r in (0..4).rev() {
        let mut s = b[r];
        for c in r + 1..4 {
            s -= a[r][c] * x[c];
        }
        x[r] = s / a[r][r];
    }
    Some(x)
}

/// Residuals of the four coefficient equations and their scale.
fn square_residual(q: &[([u32; 3], C)], m: C, c: C, u: C, v: C) -> ([C; 4], f64) {
    let a = chart_restriction(q, 4, m, c);
    let f = [
        a[3] - 2.0 * a[4] * u,
        a[2] - a[4] * (u * u + 2.0 * v),
        a[1] - 2.0 * a[4] * u * v,
        a[0] - a[4] * v * v,
    ];
    let scale = a.iter().map(|x| x.norm()).fold(0.0, f64::max);
    (f, scale)
}

struct Candidate {
    m: C,
    c: C,
    residual: f64,
}

fn polish(q: &[([u32; 3], C)], dq: &[([u32; 3], C)], m0: C, c0: C) -> Option<Candidate> {
    let a = chart_restriction(q, 4, m0, c0);
    if a[4].norm() == 0.0 {
        return None;
    }
    let (mut m, mut c) = (m0, c0);
    let mut u = a[3] / (2.0 * a[4]);
    let mut v = (4.0 * a[2] * a[4] - a[3] * a[3]) / (8.0 * a[4] * a[4]);
    for _ in 0..60 {
        let a = chart_restriction(q, 4, m, c);
        let r = chart_restriction(dq, 3, m, c);
        // d a_k / dc = r_k and d a_k / dm = r_(k-1)
        let dc = |k: usize| if k <= 3 { r[k] } else { ZERO };
        let dm = |k: usize| if k >= 1 { r[k - 1] } else { ZERO };
        let (f, _) = square_residual(q, m, c, u, v);
        let jac = [
            [dm(3) - 2.0 * u * dm(4), dc(3) - 2.0 * u * dc(4), -2.0 * a[4], ZERO],
            [
                dm(2) - (u * u + 2.0 * v) * dm(4),
                dc(2) - (u * u + 2.0 * v) * dc(4),
                -2.0 * a[4] * u,
                -2.0 * a[4],
            ],
            [
                dm(1) - 2.0 * u * v * dm(4),
                dc(1) - 2.0 * u * v * dc(4),
                -2.0 * a[4] * v,
                -2.0 * a[4] * u,
            ],
            [dm(0) - v * v * dm(4), dc(0) - v * v * dc(4), ZERO, -2.0 * a[4] * v],
        ];
        let step = solve4(jac, f)?;
        m -= step[0];
        c -= step[1];
        u -= step[2];
        v -= step[3];
        let size = 1.0 + m.norm() + c.norm() + u.norm() + v.norm();
        let snorm: f64 = step.iter().map(|s| s.norm()).sum();
        if !snorm.is_finite() {
            return None;
        }
        if snorm <= 1e-15 * size {
            break;
        }
    }
    let (f, scale) = square_residual(q, m, c, u, v);
    let a4 = chart_restriction(q, 4, m, c)[4];
    let residual = f.iter().map(|x| x.norm()).fold(0.0, f64::max) / scale.max(f64::MIN_POSITIVE);
    if a4.norm() < 1e-8 * scale || residual > 1e-10 {
        return None;
    }
    Some(Candidate { m, c, residual })
}

/// Candidates in the chart where `(X, Y, Z)` are variables `perm` of `q`.
fn chart_candidates(q: &NumericQuartic, perm: [usize; 3]) -> Vec<(NumericLine, f64)> {
    let qc = q.permuted(perm);
    let terms = qc.terms();
    let dq = y_derivative(terms);
    let samples: Vec<C> = (0..SAMPLES)
        .map(|k| {
            let m = C::from_polar(1.0, std::f64::consts::TAU * k as f64 / SAMPLES as f64);
            let (e1, e2) = e_polys_in_c(terms, m);
            resultant(&e1, &e2)
        })
        .collect();
    // inverse DFT: coefficient j = mean of samples * w^(-jk)
    let mut coeffs: Vec<C> = (0..=RESULTANT_DEGREE)
        .map(|j| {
            samples
                .iter()
                .enumerate()
                .map(|(k, s)| s * C::from_polar(1.0, -std::f64::consts::TAU * (j * k) as f64 / SAMPLES as f64))
                .sum::<C>()
                / SAMPLES as f64
        })
        .collect();
    let big = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    for c in coeffs.iter_mut() {
        if c.norm() <= 1e-11 * big {
            *c = ZERO;
        }
    }
    let roots = aberth(&coeffs, 1000, 1e-15).roots;
    let mut out = Vec::new();
    for m in roots {
        let (e1, e2) = e_polys_in_c(terms, m);
        let mut starts = aberth(&e1, 1000, 1e-15).roots;
        starts.extend(aberth(&e2, 1000, 1e-15).roots);
        for c in starts {
            if let Some(cand) = polish(terms, &dq, m, c) {
                // m X - Y + c Z = 0 in the permuted coordinates
                let mut coords = [ZERO; 3];
                coords[perm[0]] = cand.m;
                coords[perm[1]] = -ONE;
                coords[perm[2]] = cand.c;
                out.push((NumericLine::new(coords), cand.residual));
            }
        }
    }
    out
}

/// A numerically computed line `u x + v y + w z = 0`, scaled to unit norm
/// with its largest coordinate real and positive.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericLine {
    pub coords: [C; 3],
    /// Relative residual of the perfect-square equations.
    pub residual: f64,
}

impl NumericLine {
    fn new(coords: [C; 3]) -> Self {
        let k = (0..3)
            .max_by(|&i, &j| coords[i].norm().partial_cmp(&coords[j].norm()).unwrap())
            .unwrap();
        let norm = coords.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let phase = coords[k] / coords[k].norm();
        NumericLine {
            coords: coords.map(|c| c / (phase * norm)),
            residual: 0.0,
        }
    }

    /// Sine of the angle between the two lines as points of `P^2`.
    pub fn distance(&self, other: &NumericLine) -> f64 {
        // Lagrange identity: |a|^2 |b|^2 - |<a, b>|^2 = sum of |a_i b_j - a_j b_i|^2
        let (a, b) = (&self.coords, &other.coords);
        [(0, 1), (0, 2), (1, 2)]
            .iter()
            .map(|&(i, j)| (a[i] * b[j] - a[j] * b[i]).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Coordinates scaled so that coordinate `k` is 1.
    pub fn scaled_at(&self, k: usize) -> Option<[C; 3]> {
        let d = self.coords[k];
        (d.norm() > 1e-12).then(|| self.coords.map(|c| c / d))
    }

    /// Coordinates scaled so that the first significant one is 1, as decimal
    /// strings `re+imi`.
    pub fn normalized_strings(&self) -> [String; 3] {
        let k = (0..3).find(|&i| self.coords[i].norm() > 1e-9).unwrap_or(0);
        let s = self.scaled_at(k).unwrap_or(self.coords);
        s.map(|c| format!("{:.12}{:+.12}i", c.re + 0.0, c.im + 0.0))
    }
}

/// The 28 bitangents of a smooth quartic, deduplicated within `tol`.
pub fn find_bitangents_numeric(q: &NumericQuartic, tol: f64) -> Result<Vec<NumericLine>> {
    let charts = [[0, 1, 2], [1, 2, 0], [2, 0, 1]];
    let found: Vec<Vec<(NumericLine, f64)>> = std::thread::scope(|s| {
        let handles: Vec<_> = charts.iter().map(|&perm| s.spawn(move || chart_candidates(q, perm))).collect();
        handles.into_iter().map(|h| h.join().expect("chart thread")).collect()
    });
    let mut lines: Vec<NumericLine> = Vec::new();
    for (mut line, residual) in found.into_iter().flatten() {
        line.residual = residual;
        match lines.iter_mut().find(|l| l.distance(&line) < tol) {
            Some(existing) => {
                if residual < existing.residual {
                    *existing = line;
                }
            }
            None => lines.push(line),
        }
    }
    if lines.len() != 28 {
        return Err(Error::BitangentCount {
            found: lines.len(),
            residuals: lines.iter().map(|l| l.residual).collect(),
        });
    }
    lines.sort_by(|a, b| {
        let ka: Vec<f64> = a.coords.iter().flat_map(|c| [c.re, c.im]).collect();
        let kb: Vec<f64> = b.coords.iter().flat_map(|c| [c.re, c.im]).collect();
        ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(lines)
}

/// Outcome of matching numeric lines against an exact table.
#[derive(Clone, Debug, PartialEq)]
pub struct TableMatch {
    pub matched: usize,
    pub total: usize,
    /// Largest coordinate difference over the matched lines.
    pub max_diff: f64,
    /// Table indices without a numeric partner.
    pub unmatched: Vec<usize>,
}

/// Matches each exact line, embedded numerically and scaled at its first
/// nonzero coordinate, to a distinct numeric line within `tol`.
pub fn match_table(numeric: &[NumericLine], exact: &[ProjLine], tol: f64) -> Result<TableMatch> {
    let mut used = vec![false; numeric.len()];
    let mut max_diff: f64 = 0.0;
    let mut unmatched = Vec::new();
    for (idx, line) in exact.iter().enumerate() {
        let k = line.coords().iter().position(|c| !c.is_zero()).expect("nonzero line");
        let target: Vec<C> = line
            .coords()
            .iter()
            .map(|c| c.embed_numeric(14))
            .collect::<Result<_>>()?;
        let best = numeric
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .filter_map(|(i, n)| {
                let s = n.scaled_at(k)?;
                let d = s.iter().zip(&target).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
                Some((i, d))
            })
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        match best {
            Some((i, d)) if d < tol => {
                used[i] = true;
                max_diff = max_diff.max(d);
            }
            _ => unmatched.push(idx),
        }
    }
    Ok(TableMatch {
        matched: exact.len() - unmatched.len(),
        total: exact.len(),
        max_diff,
        unmatched,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resultant_of_linear_factors() {
        // (c - 1)(c - 2) and (c - 2)(c + 3) share the root 2
        let f = [C::new(2.0, 0.0), C::new(-3.0, 0.0), ONE];
        let g = [C::new(-6.0, 0.0), ONE, ONE];
        assert!(resultant(&f, &g).norm() < 1e-12);
        let h = [C::new(-4.0, 0.0), ZERO, ONE];
        // Res((c-1)(c-2), c^2-4) = prod over roots of f of h = (1-4)(4-4) = 0
        assert!(resultant(&f, &h).norm() < 1e-12);
        let k = [C::new(1.0, 0.0), ZERO, ONE];
        // prod of (r^2 + 1) over r = 1, 2 -> 2 * 5 = 10
        assert!((resultant(&f, &k) - C::new(10.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn fermat_has_28() {
        let terms = vec![([4, 0, 0], ONE), ([0, 4, 0], ONE), ([0, 0, 4], ONE)];
        let q = NumericQuartic::new(terms).unwrap();
        let lines = find_bitangents_numeric(&q, 1e-8).unwrap();
        assert_eq!(lines.len(), 28);
    }

    #[test]
    fn ciani_three_has_28() {
        let three = C::new(3.0, 0.0);
        let terms = vec![
            ([4, 0, 0], ONE),
            ([0, 4, 0], ONE),
            ([0, 0, 4], ONE),
            ([2, 2, 0], three),
            ([2, 0, 2], three),
            ([0, 2, 2], three),
        ];
        let q = NumericQuartic::new(terms).unwrap();
        let lines = find_bitangents_numeric(&q, 1e-8).unwrap();
        assert_eq!(lines.len(), 28);
    }
}
