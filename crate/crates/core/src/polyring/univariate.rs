//! Dense univariate polynomials over a number field, constant term first.
//! Only what the squarefree decomposition needs.

use crate::numberfield::{int, FieldElement, FieldRef};

#[derive(Clone, Debug)]
pub(crate) struct UniPoly {
    pub field: FieldRef,
    pub coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(field: &FieldRef, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&int(k as i64)))
            .collect();
        UniPoly::new(&self.field, coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = FieldElement::zero(&self.field);
        let coeffs = (0..n)
            .map(|k| {
                let a = self.coeffs.get(k).unwrap_or(&zero);
                let b = other.coeffs.get(k).unwrap_or(&zero);
                a - b
            })
            .collect();
        UniPoly::new(&self.field, coeffs)
    }

    pub fn monic(&self) -> UniPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lead) => {
                let inv = lead.inv().expect("nonzero leading coefficient");
                UniPoly::new(&self.field, self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        if self.coeffs.len() < divisor.coeffs.len() {
            return (UniPoly::new(&self.field, vec![]), self.clone());
        }
        let inv_lead = divisor.coeffs[dd].inv().expect("nonzero leading coefficient");
        let mut quot = vec![FieldElement::zero(&self.field); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = &rem[k] * &inv_lead;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[k - dd + j] = &rem[k - dd + j] - &(&q * d);
                }
            }
            quot[k - dd] = q;
        }
        rem.truncate(dd);
        (UniPoly::new(&self.field, quot), UniPoly::new(&self.field, rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            // keep intermediate coefficients from growing
            b = r.monic();
        }
        a.monic()
    }

    pub fn exact_div(&self, divisor: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    /// Multiplicity of `root` as a zero of the polynomial (by synthetic division).
    pub fn root_multiplicity(&self, root: &FieldElement) -> u32 {
        let mut p = self.coeffs.clone();
        let mut mult = 0;
        loop {
            if p.is_empty() {
                return mult;
            }
            // Horner: quotient and remainder of division by (x - root)
            let n = p.len();
            let mut q = vec![FieldElement::zero(&self.field); n - 1];
            let mut acc = FieldElement::zero(&self.field);
            for k in (0..n).rev() {
                acc = &(&acc * root) + &p[k];
                if k > 0 {
                    q[k - 1] = acc.clone();
                }
            }
            if !acc.is_zero() {
                return mult;
            }
            mult += 1;
            p = q;
        }
    }

    /// Degrees of the squarefree parts (Yun): entry `i` counts the distinct
    /// roots of multiplicity `i + 1`.
    pub fn squarefree_degrees(&self) -> Vec<usize> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0);
        let c = df.exact_div(&a0);
        let mut d = c.sub(&b.derivative());
        while b.degree() > 0 {
            let a = b.gcd(&d);
            b = b.exact_div(&a);
            let c_next = d.exact_div(&a);
            d = c_next.sub(&b.derivative());
            out.push(a.degree());
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }
}
