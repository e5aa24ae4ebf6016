//! Sparse homogeneous polynomials in `x, y, z` over a number field.
//!
//! Monomials are ordered degree-lexicographically with `x > y > z`; the same
//! order indexes the bases of the graded pieces `S_t` used by the linear
//! algebra in [`crate::milnor`].

mod binary;
mod univariate;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

pub use binary::{BinaryForm, MultiplicityPattern};

use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::numberfield::{int, FieldElement, FieldRef, NumberField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::Z => 2,
        }
    }

    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];
}

/// Exponent triple `(a, b, c)` of `x^a y^b z^c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Position inside the deglex basis of `S_degree`.
    pub fn index(&self) -> usize {
        let [_, b, c] = self.0;
        let s = (b + c) as usize;
        s * (s + 1) / 2 + c as usize
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // x^t comes first, then x^(t-1) y, x^(t-1) z, ...
        other
            .degree()
            .cmp(&self.degree())
            .then(other.0[0].cmp(&self.0[0]))
            .then(other.0[1].cmp(&self.0[1]))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `dim S_t = (t+1)(t+2)/2`.
pub fn dim_s(t: usize) -> usize {
    (t + 1) * (t + 2) / 2
}

/// The deglex monomial basis of `S_t`.
pub fn monomials(t: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(dim_s(t as usize));
    for s in 0..=t {
        for c in 0..=s {
            out.push(Monomial([t - s, s - c, c]));
        }
    }
    out
}

/// A homogeneous polynomial; the zero polynomial keeps its nominal degree.
#[derive(Clone, PartialEq)]
pub struct HomPoly {
    field: FieldRef,
    degree: u32,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl fmt::Debug for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let vars: Vec<String> = ["x", "y", "z"]
                    .iter()
                    .zip(m.0)
                    .filter(|(_, e)| *e > 0)
                    .map(|(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
                    .collect();
                format!("({c})*{}", if vars.is_empty() { "1".into() } else { vars.join("*") })
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl HomPoly {
    pub fn zero(field: &FieldRef, degree: u32) -> Self {
        HomPoly {
            field: field.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(value: FieldElement) -> Self {
        let mut p = HomPoly::zero(value.field(), 0);
        p.add_term(Monomial([0, 0, 0]), value);
        p
    }

    pub fn monomial(coeff: FieldElement, exp: [u32; 3]) -> Self {
        let m = Monomial(exp);
        let mut p = HomPoly::zero(coeff.field(), m.degree());
        p.add_term(m, coeff);
        p
    }

    /// Builds a form from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I>(field: &FieldRef, degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = ([u32; 3], FieldElement)>,
    {
        let mut p = HomPoly::zero(field, degree);
        for (exp, c) in terms {
            let m = Monomial(exp);
            if m.degree() != degree {
                return Err(Error::DegreeMismatch(format!(
                    "monomial {exp:?} in a form of degree {degree}"
                )));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Integer-coefficient form, handy for rational data.
    pub fn from_int_terms(field: &FieldRef, degree: u32, terms: &[([u32; 3], i64)]) -> Result<Self> {
        Self::from_terms(
            field,
            degree,
            terms.iter().map(|(e, c)| (*e, FieldElement::from_int(field, *c))),
        )
    }

    /// The linear form `u x + v y + w z`.
    pub fn linear(coords: &[FieldElement; 3]) -> Self {
        let field = coords[0].field().clone();
        let mut p = HomPoly::zero(&field, 1);
        p.add_term(Monomial([1, 0, 0]), coords[0].clone());
        p.add_term(Monomial([0, 1, 0]), coords[1].clone());
        p.add_term(Monomial([0, 0, 1]), coords[2].clone());
        p
    }

    fn add_term(&mut self, m: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: [u32; 3]) -> FieldElement {
        self.terms
            .get(&Monomial(exp))
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(&self.field))
    }

    fn same_shape(&self, other: &HomPoly) -> Result<()> {
        if !self.field.same_as(&other.field) {
            return Err(Error::FieldMismatch(
                self.field.label().into(),
                other.field.label().into(),
            ));
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(format!(
                "adding forms of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &HomPoly) -> Result<HomPoly> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &HomPoly) -> Result<HomPoly> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &HomPoly) -> Result<HomPoly> {
        if !self.field.same_as(&other.field) {
            return Err(Error::FieldMismatch(
                self.field.label().into(),
                other.field.label().into(),
            ));
        }
        let mut out = HomPoly::zero(&self.field, self.degree + other.degree);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiplies all coefficients by a field element.
    pub fn scale(&self, c: &FieldElement) -> HomPoly {
        let mut out = HomPoly::zero(&self.field, self.degree);
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }

    pub fn partial_derivative(&self, var: Var) -> HomPoly {
        let i = var.index();
        let mut out = HomPoly::zero(&self.field, self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exp = m.0;
            exp[i] -= 1;
            out.add_term(Monomial(exp), c.scale(&int(e as i64)));
        }
        out
    }

    pub fn gradient(&self) -> [HomPoly; 3] {
        Var::ALL.map(|v| self.partial_derivative(v))
    }

    pub fn evaluate(&self, point: &[FieldElement; 3]) -> FieldElement {
        let powers: Vec<Vec<FieldElement>> = point
            .iter()
            .map(|p| {
                let mut acc = vec![FieldElement::one(&self.field)];
                for k in 0..self.degree as usize {
                    let next = &acc[k] * p;
                    acc.push(next);
                }
                acc
            })
            .collect();
        let mut sum = FieldElement::zero(&self.field);
        for (m, c) in &self.terms {
            let [a, b, cz] = m.0;
            let term = &(&(c * &powers[0][a as usize]) * &powers[1][b as usize]) * &powers[2][cz as usize];
            sum = &sum + &term;
        }
        sum
    }

    /// `b(s, t) = f(s p + t q)`.
    pub fn substitute_points(&self, p: &[FieldElement; 3], q: &[FieldElement; 3]) -> BinaryForm {
        let d = self.degree as usize;
        let field = &self.field;
        // linear binary forms of each coordinate: coordinate_i = p_i s + q_i t
        let lin: Vec<BinaryForm> = (0..3)
            .map(|i| BinaryForm::new(field, vec![p[i].clone(), q[i].clone()]))
            .collect();
        let powers: Vec<Vec<BinaryForm>> = lin
            .iter()
            .map(|l| {
                let mut acc = vec![BinaryForm::new(field, vec![FieldElement::one(field)])];
                for k in 0..d {
                    let next = acc[k].mul(l);
                    acc.push(next);
                }
                acc
            })
            .collect();
        let mut out = vec![FieldElement::zero(field); d + 1];
        for (m, c) in &self.terms {
            let [a, b, cz] = m.0;
            let term = powers[0][a as usize]
                .mul(&powers[1][b as usize])
                .mul(&powers[2][cz as usize]);
            for (k, v) in term.coeffs().iter().enumerate() {
                out[k] = &out[k] + &(c * v);
            }
        }
        BinaryForm::new(field, out)
    }

    /// Restriction to a line, parametrised by [`spanning_points`].
    pub fn restrict_to_line(&self, line: &crate::arrangement::ProjLine) -> BinaryForm {
        let (p, q) = spanning_points(line.coords());
        self.substitute_points(&p, &q)
    }

    /// The same form over `Q` when every coefficient is rational.
    pub fn descend_to_rationals(&self) -> Option<HomPoly> {
        let q = NumberField::rationals();
        let mut out = HomPoly::zero(&q, self.degree);
        for (m, c) in &self.terms {
            out.terms.insert(*m, c.to_field(&q)?);
        }
        Some(out)
    }

    /// The same form over another field, when all coefficients are rational.
    pub fn to_field(&self, field: &FieldRef) -> Option<HomPoly> {
        let mut out = HomPoly::zero(field, self.degree);
        for (m, c) in &self.terms {
            out.terms.insert(*m, c.to_field(field)?);
        }
        Some(out)
    }

    /// Coefficient vector in the deglex basis of `S_degree`.
    pub fn dense_coeffs(&self) -> Vec<FieldElement> {
        let mut v = vec![FieldElement::zero(&self.field); dim_s(self.degree as usize)];
        for (m, c) in &self.terms {
            v[m.index()] = c.clone();
        }
        v
    }

    /// Product of a list of forms.
    pub fn product<'a, I: IntoIterator<Item = &'a HomPoly>>(field: &FieldRef, factors: I) -> HomPoly {
        factors.into_iter().fold(
            HomPoly::constant(FieldElement::one(field)),
            |acc, f| &acc * f,
        )
    }
}

impl<'a> Add<&'a HomPoly> for &'a HomPoly {
    type Output = HomPoly;
    /// Panics on field or degree mismatch.
    fn add(self, rhs: &'a HomPoly) -> HomPoly {
        self.checked_add(rhs).expect("incompatible forms")
    }
}

impl<'a> Sub<&'a HomPoly> for &'a HomPoly {
    type Output = HomPoly;
    fn sub(self, rhs: &'a HomPoly) -> HomPoly {
        self.checked_sub(rhs).expect("incompatible forms")
    }
}

impl<'a> Mul<&'a HomPoly> for &'a HomPoly {
    type Output = HomPoly;
    fn mul(self, rhs: &'a HomPoly) -> HomPoly {
        self.checked_mul(rhs).expect("field mismatch")
    }
}

/// Two distinct points spanning the line `u X + v Y + w Z = 0`.
///
/// Scans the triples `(0,-w,v)`, `(-w,0,u)`, `(-v,u,0)` in order and keeps the
/// first nonzero one together with the next one independent of it; no
/// division is involved. (For `w = 0` the first two candidates are
/// proportional, hence the independence test.)
pub fn spanning_points(line: &[FieldElement; 3]) -> ([FieldElement; 3], [FieldElement; 3]) {
    let [u, v, w] = line;
    let zero = FieldElement::zero(u.field());
    let candidates = [
        [zero.clone(), -w, v.clone()],
        [-w, zero.clone(), u.clone()],
        [-v, u.clone(), zero.clone()],
    ];
    let mut nonzero = candidates
        .into_iter()
        .filter(|c| c.iter().any(|x| !x.is_zero()));
    let p = nonzero.next().expect("nonzero line");
    let q = nonzero
        .find(|c| cross(&p, c).iter().any(|x| !x.is_zero()))
        .expect("nonzero line");
    (p, q)
}

pub(crate) fn cross(a: &[FieldElement; 3], b: &[FieldElement; 3]) -> [FieldElement; 3] {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

/// Matrix of `(a_1, ..., a_k) -> sum a_i g_i` from `S_(t-g)^k` to `S_t`, where
/// `g` is the common degree of the generators. Columns are generator-major,
/// each block in the deglex basis of `S_(t-g)`; rows follow the basis of `S_t`.
pub fn graded_map_matrix(generators: &[HomPoly], t: u32) -> Result<SparseMatrix> {
    let first = generators
        .first()
        .ok_or_else(|| Error::DegreeMismatch("no generators".into()))?;
    let g = first.degree();
    if generators.iter().any(|p| p.degree() != g) {
        return Err(Error::DegreeMismatch("generators of unequal degree".into()));
    }
    let field = first.field().clone();
    let nrows = dim_s(t as usize);
    if t < g {
        return Ok(SparseMatrix::new(&field, nrows, 0));
    }
    let src = monomials(t - g);
    let mut m = SparseMatrix::new(&field, nrows, generators.len() * src.len());
    for (k, gen) in generators.iter().enumerate() {
        // each coefficient enters the value table once
        let terms: Vec<(Monomial, usize)> = gen.terms().map(|(gm, c)| (*gm, m.push_value(c.clone()))).collect();
        for (j, mono) in src.iter().enumerate() {
            let col = terms.iter().map(|(gm, v)| (gm.times(mono).index(), *v)).collect();
            m.set_column_indexed(k * src.len() + j, col);
        }
    }
    Ok(m)
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
    fn basis_indexing_matches_enumeration() {
        for t in 0..9 {
            let basis = monomials(t);
            assert_eq!(basis.len(), dim_s(t as usize));
            for (i, m) in basis.iter().enumerate() {
                assert_eq!(m.index(), i);
            }
            let mut sorted = basis.clone();
            sorted.sort();
            assert_eq!(sorted, basis);
        }
    }

    #[test]
    fn derivative_examples() {
        let q = NumberField::rationals();
        let dx = fermat().partial_derivative(Var::X);
        assert_eq!(dx, HomPoly::from_int_terms(&q, 3, &[([3, 0, 0], 4)]).unwrap());
        let x2y2 = HomPoly::from_int_terms(&q, 4, &[([2, 2, 0], 1)]).unwrap();
        assert_eq!(
            x2y2.partial_derivative(Var::Y),
            HomPoly::from_int_terms(&q, 3, &[([2, 1, 0], 2)]).unwrap()
        );
        let c = HomPoly::constant(FieldElement::one(&q));
        assert!(c.partial_derivative(Var::Z).is_zero());
    }

    #[test]
    fn euler_identity_on_ciani_three() {
        let q = NumberField::rationals();
        let f = HomPoly::from_int_terms(
            &q,
            4,
            &[
                ([4, 0, 0], 1),
                ([0, 4, 0], 1),
                ([0, 0, 4], 1),
                ([2, 2, 0], 3),
                ([2, 0, 2], 3),
                ([0, 2, 2], 3),
            ],
        )
        .unwrap();
        let vars = [[1, 0, 0], [0, 1, 0], [0, 0, 1]].map(|e| HomPoly::from_int_terms(&q, 1, &[(e, 1)]).unwrap());
        let grad = f.gradient();
        let euler = &(&(&vars[0] * &grad[0]) + &(&vars[1] * &grad[1])) + &(&vars[2] * &grad[2]);
        assert_eq!(euler, f.scale(&FieldElement::from_int(&q, 4)));
    }

    #[test]
    fn fermat_line_sections() {
        let q = NumberField::rationals();
        let e = |v| FieldElement::from_int(&q, v);
        let b = fermat().substitute_points(&[e(1), e(0), e(0)], &[e(0), e(1), e(0)]);
        assert_eq!(b.squarefree_pattern().unwrap().parts(), &[1, 1, 1, 1]);
    }

    #[test]
    fn graded_map_of_fermat_partials() {
        let grad = fermat().gradient();
        let m = graded_map_matrix(&grad, 3).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (10, 3));
        assert_eq!(m.exact_rank(), 3);
        let empty = graded_map_matrix(&grad, 2).unwrap();
        assert_eq!((empty.nrows(), empty.ncols()), (6, 0));
        // smooth quartic: the Jacobian map is onto S_t for t > 6
        let big = graded_map_matrix(&grad, 7).unwrap();
        assert_eq!(big.exact_rank(), dim_s(7));
    }

    #[test]
    fn evaluation_and_mismatch() {
        let q = NumberField::rationals();
        let e = |v| FieldElement::from_int(&q, v);
        assert_eq!(fermat().evaluate(&[e(1), e(2), e(-1)]), e(18));
        let lin = HomPoly::linear(&[e(1), e(1), e(1)]);
        assert!(fermat().checked_add(&lin).is_err());
    }
}
