//! Exact arithmetic in `Q` and simple extensions `Q(a) = Q[x]/(m(x))`.
//!
//! Elements are stored in the power basis `1, a, ..., a^(n-1)` and every
//! operation returns a reduced representative. Fields are shared through
//! [`FieldRef`]; two fields are considered equal when their minimal
//! polynomials agree.

mod roots;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use roots::{aberth, sort_roots, RootSet};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;
pub type FieldRef = Arc<NumberField>;

/// Largest precision, in decimal digits, that [`FieldElement::embed_numeric`] honours.
pub const MAX_NUMERIC_PRECISION: u32 = 14;

const ROOT_ITERATION_CAP: usize = 1000;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // fall back on a scaled division when the parts overflow f64
        let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
        let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// A simple algebraic extension of `Q` given by a monic minimal polynomial.
///
/// Irreducibility of the minimal polynomial is a precondition and is not
/// checked.
pub struct NumberField {
    label: String,
    min_poly: Vec<Rational>,
    root_index: usize,
    roots: OnceLock<std::result::Result<Vec<Complex64>, usize>>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumberField")
            .field("label", &self.label)
            .field("min_poly", &self.min_poly_strings())
            .field("root_index", &self.root_index)
            .finish()
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl NumberField {
    /// `min_poly` lists coefficients constant term first and must be monic.
    pub fn new(label: impl Into<String>, min_poly: Vec<Rational>, root_index: usize) -> Result<FieldRef> {
        if min_poly.len() < 2 {
            return Err(Error::InvalidField("minimal polynomial must have degree >= 1".into()));
        }
        if !min_poly.last().is_some_and(|c| c.is_one()) {
            return Err(Error::InvalidField("minimal polynomial must be monic".into()));
        }
        let degree = min_poly.len() - 1;
        if root_index >= degree {
            return Err(Error::InvalidField(format!(
                "root_index {root_index} out of range for degree {degree}"
            )));
        }
        Ok(Arc::new(NumberField {
            label: label.into(),
            min_poly,
            root_index,
            roots: OnceLock::new(),
        }))
    }

    pub fn from_ints(label: impl Into<String>, min_poly: &[i64], root_index: usize) -> Result<FieldRef> {
        Self::new(label, min_poly.iter().map(|&c| int(c)).collect(), root_index)
    }

    /// `Q` itself, presented as `Q[x]/(x)`.
    pub fn rationals() -> FieldRef {
        static Q: OnceLock<FieldRef> = OnceLock::new();
        Q.get_or_init(|| Self::from_ints("Q", &[0, 1], 0).expect("valid field"))
            .clone()
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn min_poly(&self) -> &[Rational] {
        &self.min_poly
    }

    pub fn min_poly_strings(&self) -> Vec<String> {
        self.min_poly.iter().map(format_rational).collect()
    }

    pub fn root_index(&self) -> usize {
        self.root_index
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }

    pub fn same_as(&self, other: &NumberField) -> bool {
        std::ptr::eq(self, other) || self.min_poly == other.min_poly
    }

    /// Complex roots of the minimal polynomial, sorted by (real, imaginary).
    pub fn complex_roots(&self) -> Result<&[Complex64]> {
        let cached = self.roots.get_or_init(|| {
            let poly: Vec<Complex64> = self
                .min_poly
                .iter()
                .map(|c| Complex64::new(rational_to_f64(c), 0.0))
                .collect();
            let set = aberth(&poly, ROOT_ITERATION_CAP, 1e-15);
            if set.converged {
                Ok(sort_roots(set.roots))
            } else {
                Err(set.iterations)
            }
        });
        match cached {
            Ok(r) => Ok(r),
            Err(it) => Err(Error::RootFinding(*it)),
        }
    }

    /// The complex number the generator is sent to.
    pub fn embedding_root(&self) -> Result<Complex64> {
        Ok(self.complex_roots()?[self.root_index])
    }

    /// Reduces a coefficient vector of arbitrary length modulo the minimal polynomial.
    fn reduce(&self, mut coeffs: Vec<Rational>) -> Vec<Rational> {
        let n = self.degree();
        for k in (n..coeffs.len()).rev() {
            let c = std::mem::take(&mut coeffs[k]);
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                if !self.min_poly[j].is_zero() {
                    coeffs[k - n + j] -= &c * &self.min_poly[j];
                }
            }
        }
        coeffs.resize(n, Rational::zero());
        coeffs
    }
}

/// An element of a number field in the power basis of its generator.
#[derive(Clone)]
pub struct FieldElement {
    field: FieldRef,
    coeffs: Vec<Rational>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = format_rational(c);
            parts.push(match k {
                0 => c,
                1 => format!("({c})*a"),
                _ => format!("({c})*a^{k}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_as(&other.field) && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl FieldElement {
    pub fn zero(field: &FieldRef) -> Self {
        FieldElement {
            field: field.clone(),
            coeffs: vec![Rational::zero(); field.degree()],
        }
    }

    pub fn one(field: &FieldRef) -> Self {
        Self::from_rational(field, Rational::one())
    }

    pub fn from_rational(field: &FieldRef, q: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); field.degree()];
        coeffs[0] = q;
        FieldElement {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_int(field: &FieldRef, n: i64) -> Self {
        Self::from_rational(field, int(n))
    }

    /// The primitive element itself.
    pub fn generator(field: &FieldRef) -> Self {
        Self::from_coeffs(field, vec![Rational::zero(), Rational::one()])
    }

    /// Builds an element from power-basis coordinates of any length, reducing as needed.
    pub fn from_coeffs(field: &FieldRef, coeffs: Vec<Rational>) -> Self {
        let coeffs = if coeffs.len() == field.degree() {
            coeffs
        } else {
            field.reduce(coeffs)
        };
        FieldElement {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_int_coeffs(field: &FieldRef, coeffs: &[i64]) -> Self {
        Self::from_coeffs(field, coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn parse(field: &FieldRef, coeffs: &[String]) -> Result<Self> {
        let coeffs = coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(field, coeffs))
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    /// Copies the element into another field when it lies in `Q`.
    pub fn to_field(&self, field: &FieldRef) -> Option<FieldElement> {
        self.as_rational()
            .map(|q| FieldElement::from_rational(field, q.clone()))
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field.same_as(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch(
                self.field.label.clone(),
                other.field.label.clone(),
            ))
        }
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(FieldElement {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(FieldElement {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        let n = self.field.degree();
        if n == 1 {
            return Ok(FieldElement {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            });
        }
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(FieldElement {
            field: self.field.clone(),
            coeffs: self.field.reduce(prod),
        })
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.checked_mul(&other.inv()?)
    }

    pub fn scale(&self, q: &Rational) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse, found by solving `a * v = 1` in the power basis.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.field.degree();
        if n == 1 {
            return Ok(FieldElement {
                field: self.field.clone(),
                coeffs: vec![self.coeffs[0].recip()],
            });
        }
        // column j of the multiplication matrix is a * alpha^j
        let mut cols = Vec::with_capacity(n);
        let mut power = self.clone();
        let alpha = FieldElement::generator(&self.field);
        for _ in 0..n {
            cols.push(power.coeffs.clone());
            power = power.checked_mul(&alpha)?;
        }
        // augmented rows: sum_j cols[j][i] v_j = delta_{i0}
        let mut rows: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational> = (0..n).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !rows[r][c].is_zero())
                .ok_or(Error::DivisionByZero)?;
            rows.swap(c, p);
            let piv = rows[c][c].recip();
            for v in rows[c].iter_mut() {
                *v *= &piv;
            }
            for r in 0..n {
                if r != c && !rows[r][c].is_zero() {
                    let f = rows[r][c].clone();
                    for k in c..=n {
                        let t = &f * &rows[c][k];
                        rows[r][k] -= t;
                    }
                }
            }
        }
        Ok(FieldElement {
            field: self.field.clone(),
            coeffs: rows.into_iter().map(|mut r| r.pop().unwrap()).collect(),
        })
    }

    pub fn pow(&self, mut e: u32) -> FieldElement {
        let mut base = self.clone();
        let mut acc = FieldElement::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Evaluates the element at the chosen complex root of the minimal polynomial.
    ///
    /// Supports up to [`MAX_NUMERIC_PRECISION`] digits.
    pub fn embed_numeric(&self, precision: u32) -> Result<Complex64> {
        if precision > MAX_NUMERIC_PRECISION {
            return Err(Error::PrecisionUnsupported(precision));
        }
        Ok(self.embed_at(self.field.embedding_root()?))
    }

    /// Evaluates the coordinates at an arbitrary complex point.
    pub fn embed_at(&self, root: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| {
                acc * root + Complex64::new(rational_to_f64(c), 0.0)
            })
    }

    pub fn is_negative_rational(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_negative())
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    /// Panics when the operands live in different fields.
    fn add(self, rhs: &'a FieldElement) -> FieldElement {
        self.checked_add(rhs).expect("field mismatch in addition")
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &'a FieldElement) -> FieldElement {
        self.checked_sub(rhs).expect("field mismatch in subtraction")
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &'a FieldElement) -> FieldElement {
        self.checked_mul(rhs).expect("field mismatch in multiplication")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}
