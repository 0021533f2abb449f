//! Ordinary univariate polynomials over GF(q^e).

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::field::{Elem, Field};
use crate::{Error, Result};

/// Dense polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: Arc<Field>,
    coeffs: Vec<Elem>,
}

fn trim(c: &mut Vec<Elem>) {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
}

impl Poly {
    pub fn new(field: &Arc<Field>, mut coeffs: Vec<Elem>) -> Result<Poly> {
        if let Some(bad) = coeffs.iter().find(|c| !field.contains(**c)) {
            return Err(Error::InvalidElement(bad.serial()));
        }
        trim(&mut coeffs);
        Ok(Poly { field: field.clone(), coeffs })
    }

    pub(crate) fn from_trusted(field: &Arc<Field>, mut coeffs: Vec<Elem>) -> Poly {
        trim(&mut coeffs);
        Poly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Arc<Field>) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    /// `c * x^d`.
    pub fn monomial(field: &Arc<Field>, d: usize, c: Elem) -> Poly {
        let mut coeffs = vec![Elem::ZERO; d + 1];
        coeffs[d] = c;
        Self::from_trusted(field, coeffs)
    }

    /// `prod_{r in roots} (x - r)`.
    pub fn from_roots(field: &Arc<Field>, roots: &[Elem]) -> Poly {
        let f = field;
        let mut c = vec![Elem::ONE];
        for &r in roots {
            let mut next = vec![Elem::ZERO; c.len() + 1];
            for (i, &a) in c.iter().enumerate() {
                next[i + 1] = f.add(next[i + 1], a);
                next[i] = f.sub(next[i], f.mul(a, r));
            }
            c = next;
        }
        Self::from_trusted(field, c)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Ok(Self::from_trusted(f, c))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Ok(Self::from_trusted(f, c))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.field));
        }
        let f = &self.field;
        let mut c = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Ok(Self::from_trusted(f, c))
    }

    /// Quotient and remainder; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check(divisor)?;
        let f = &self.field;
        let dd = divisor.degree().ok_or(Error::BadParameters("division by zero polynomial"))?;
        let lead_inv = f.inv(divisor.coeffs[dd]).expect("leading coefficient is nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut quot = vec![Elem::ZERO; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = rem[top];
            if c.is_zero() {
                continue;
            }
            let t = f.mul(c, lead_inv);
            quot[top - dd] = t;
            for (k, &dk) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + k;
                rem[idx] = f.sub(rem[idx], f.mul(t, dk));
            }
        }
        Ok((Self::from_trusted(f, quot), Self::from_trusted(f, rem)))
    }

    /// Whether `divisor` divides `self`.
    pub fn is_divisible_by(&self, divisor: &Poly) -> Result<bool> {
        Ok(self.div_rem(divisor)?.1.is_zero())
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Number of distinct roots in the coefficient field, by exhaustive scan.
    pub fn count_roots(&self, budget: u64) -> Result<u64> {
        let size = self.field.order();
        if size > budget {
            return Err(Error::BudgetExceeded { needed: size as u128, budget: budget as u128 });
        }
        Ok(self.field.elements().filter(|&x| self.eval(x).is_zero()).count() as u64)
    }
}
