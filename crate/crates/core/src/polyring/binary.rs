use std::fmt;

use serde::{Deserialize, Serialize};

use super::univariate::UniPoly;
use crate::error::{Error, Result};
use crate::numberfield::{FieldElement, FieldRef};

/// A binary form `sum_i c_i s^(d-i) t^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm {
    field: FieldRef,
    coeffs: Vec<FieldElement>,
}

/// Root multiplicities of a nonzero binary form over the algebraic closure,
/// sorted in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiplicityPattern(Vec<u32>);

impl MultiplicityPattern {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        MultiplicityPattern(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn max_part(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// Removes one occurrence of `part`; false when it is absent.
    pub fn remove_part(&mut self, part: u32) -> bool {
        match self.0.iter().position(|&p| p == part) {
            Some(i) => {
                self.0.remove(i);
                true
            }
            None => false,
        }
    }
}

impl fmt::Display for MultiplicityPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl BinaryForm {
    /// `coeffs[i]` multiplies `s^(d-i) t^i`; the degree is `coeffs.len() - 1`.
    pub fn new(field: &FieldRef, coeffs: Vec<FieldElement>) -> Self {
        assert!(!coeffs.is_empty(), "binary form needs at least one coefficient");
        BinaryForm {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FieldElement::is_zero)
    }

    /// Multiplicity of the root `(1:0)`, i.e. the power of `t` dividing the form.
    fn infinity_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// `b(s, 1)` as a univariate polynomial in `s`.
    fn dehomogenized(&self) -> UniPoly {
        let d = self.degree();
        UniPoly::new(&self.field, (0..=d).map(|k| self.coeffs[d - k].clone()).collect())
    }

    /// Root multiplicities via iterated gcds with the derivative; the form is
    /// never factored.
    pub fn squarefree_pattern(&self) -> Result<MultiplicityPattern> {
        if self.is_zero() {
            return Err(Error::ZeroForm);
        }
        let mut parts = Vec::new();
        let inf = self.infinity_multiplicity();
        if inf > 0 {
            parts.push(inf as u32);
        }
        for (i, count) in self.dehomogenized().squarefree_degrees().into_iter().enumerate() {
            parts.extend(std::iter::repeat_n((i + 1) as u32, count));
        }
        Ok(MultiplicityPattern::new(parts))
    }

    /// Order of vanishing at the point `(s0 : t0)`.
    pub fn root_multiplicity(&self, s0: &FieldElement, t0: &FieldElement) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroForm);
        }
        if t0.is_zero() {
            return Ok(self.infinity_multiplicity() as u32);
        }
        let root = s0.checked_div(t0)?;
        Ok(self.dehomogenized().root_multiplicity(&root))
    }

    /// Evaluates at `(s, t)`.
    pub fn evaluate(&self, s: &FieldElement, t: &FieldElement) -> FieldElement {
        let d = self.degree();
        let mut acc = FieldElement::zero(&self.field);
        for (i, c) in self.coeffs.iter().enumerate() {
            acc = &acc + &(&(c * &s.pow((d - i) as u32)) * &t.pow(i as u32));
        }
        acc
    }

    /// Linear substitution `s -> a s + b t`, `t -> c s + d t`.
    pub fn substitute(&self, a: &FieldElement, b: &FieldElement, c: &FieldElement, d: &FieldElement) -> BinaryForm {
        let deg = self.degree();
        // powers of the two linear forms as binary forms
        let lin_s = vec![a.clone(), b.clone()];
        let lin_t = vec![c.clone(), d.clone()];
        let pow = |lin: &Vec<FieldElement>, e: usize| -> Vec<FieldElement> {
            let mut acc = vec![FieldElement::one(&self.field)];
            for _ in 0..e {
                acc = mul_forms(&self.field, &acc, lin);
            }
            acc
        };
        let mut out = vec![FieldElement::zero(&self.field); deg + 1];
        for (i, coef) in self.coeffs.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let term = mul_forms(&self.field, &pow(&lin_s, deg - i), &pow(&lin_t, i));
            for (k, v) in term.iter().enumerate() {
                out[k] = &out[k] + &(coef * v);
            }
        }
        BinaryForm::new(&self.field, out)
    }

    /// Product of binary forms.
    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        BinaryForm::new(&self.field, mul_forms(&self.field, &self.coeffs, &other.coeffs))
    }
}

fn mul_forms(field: &FieldRef, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let mut out = vec![FieldElement::zero(field); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::NumberField;

    fn q() -> FieldRef {
        NumberField::rationals()
    }

    fn form(c: &[i64]) -> BinaryForm {
        let f = q();
        BinaryForm::new(&f, c.iter().map(|&v| FieldElement::from_int(&f, v)).collect())
    }

    #[test]
    fn pattern_examples() {
        assert_eq!(form(&[1, 0, 0, 0, 0]).squarefree_pattern().unwrap().parts(), &[4]);
        assert_eq!(form(&[0, 0, 1, 0, 0]).squarefree_pattern().unwrap().parts(), &[2, 2]);
        // (s^2 + t^2)^2 = s^4 + 2 s^2 t^2 + t^4
        assert_eq!(form(&[1, 0, 2, 0, 1]).squarefree_pattern().unwrap().parts(), &[2, 2]);
        assert_eq!(form(&[1, 0, 0, 0, 1]).squarefree_pattern().unwrap().parts(), &[1, 1, 1, 1]);
        // t^4 only: root at (1:0) with multiplicity 4
        assert_eq!(form(&[0, 0, 0, 0, 1]).squarefree_pattern().unwrap().parts(), &[4]);
        // s^3 t
        assert_eq!(form(&[0, 1, 0, 0, 0]).squarefree_pattern().unwrap().parts(), &[3, 1]);
        assert!(matches!(form(&[0, 0, 0]).squarefree_pattern(), Err(Error::ZeroForm)));
    }

    #[test]
    fn root_multiplicities() {
        let f = q();
        let one = FieldElement::one(&f);
        let zero = FieldElement::zero(&f);
        // s^3 t: (0:1) has multiplicity 3, (1:0) multiplicity 1
        let b = form(&[0, 1, 0, 0, 0]);
        assert_eq!(b.root_multiplicity(&zero, &one).unwrap(), 3);
        assert_eq!(b.root_multiplicity(&one, &zero).unwrap(), 1);
        assert_eq!(b.root_multiplicity(&one, &one).unwrap(), 0);
    }

    #[test]
    fn substitution_preserves_pattern() {
        let f = q();
        let b = form(&[1, 0, 2, 0, 1]);
        let e = |v| FieldElement::from_int(&f, v);
        let sub = b.substitute(&e(2), &e(1), &e(1), &e(1));
        assert_eq!(sub.squarefree_pattern().unwrap().parts(), &[2, 2]);
        assert_eq!(format!("{}", sub.squarefree_pattern().unwrap()), "22");
    }
}
