//! Linearized polynomials `a_r x^[r] + ... + a_1 x^[1] + a_0 x`, `[i] = q^i`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::field::{Elem, Embedding, Field};
use crate::gfq::EchelonBasis;
use crate::poly::Poly;
use crate::subspace::Subspace;
use crate::{Error, Result};

/// Largest field scanned by [`kernel`].
pub const KERNEL_BUDGET: u64 = 1 << 20;
/// Largest ordinary degree [`divides_check`] expands to before switching to
/// composition division.
pub const EXPANSION_LIMIT: u64 = 1 << 16;

/// Coefficient `i` multiplies `x^(q^i)`. Canonical: no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizedPoly {
    field: Arc<Field>,
    coeffs: Vec<Elem>,
}

fn trim(c: &mut Vec<Elem>) {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
}

impl LinearizedPoly {
    pub fn new(field: &Arc<Field>, mut coeffs: Vec<Elem>) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|c| !field.contains(**c)) {
            return Err(Error::InvalidElement(bad.serial()));
        }
        trim(&mut coeffs);
        Ok(LinearizedPoly { field: field.clone(), coeffs })
    }

    pub(crate) fn from_trusted(field: &Arc<Field>, mut coeffs: Vec<Elem>) -> Self {
        trim(&mut coeffs);
        LinearizedPoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Arc<Field>) -> Self {
        LinearizedPoly { field: field.clone(), coeffs: Vec::new() }
    }

    /// The identity map `x`.
    pub fn identity(field: &Arc<Field>) -> Self {
        Self::monomial(field, 0, Elem::ONE)
    }

    /// `c * x^[i]`.
    pub fn monomial(field: &Arc<Field>, i: usize, c: Elem) -> Self {
        let mut coeffs = vec![Elem::ZERO; i + 1];
        coeffs[i] = c;
        Self::from_trusted(field, coeffs)
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

    /// `r` such that the ordinary degree is `q^r`; `None` for zero.
    pub fn q_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&Elem::ONE)
    }

    /// Coefficient serials, lowest index first.
    pub fn serials(&self) -> Vec<u64> {
        self.coeffs.iter().map(|c| c.serial()).collect()
    }

    /// `sum a_i x^(q^i)`. The caller guarantees `x` lies in the field.
    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        let mut acc = Elem::ZERO;
        let mut xp = x;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                xp = f.frobenius(xp, 1);
            }
            if !a.is_zero() {
                acc = f.add(acc, f.mul(a, xp));
            }
        }
        acc
    }

    pub fn evaluate(&self, x: Elem) -> Result<Elem> {
        if !self.field.contains(x) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.eval(x))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Self::from_trusted(f, (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Self::from_trusted(f, (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect()))
    }

    pub fn scale(&self, c: Elem) -> Self {
        let f = &self.field;
        Self::from_trusted(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// `x^[t] ∘ self`, i.e. `self(x)^(q^t)`.
    pub fn frobenius_shift(&self, t: usize) -> Self {
        let f = &self.field;
        let mut coeffs = vec![Elem::ZERO; t];
        coeffs.extend(self.coeffs.iter().map(|&a| f.frobenius(a, t)));
        Self::from_trusted(f, coeffs)
    }

    /// `self ∘ inner`, the polynomial `self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check(inner)?;
        let mut acc = Self::zero(&self.field);
        for (i, &m) in self.coeffs.iter().enumerate() {
            if !m.is_zero() {
                acc = acc.add(&inner.frobenius_shift(i).scale(m))?;
            }
        }
        Ok(acc)
    }

    /// Composition division `self = quotient ∘ divisor + remainder` with
    /// `q_degree(remainder) < q_degree(divisor)`.
    pub fn right_div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check(divisor)?;
        let f = &self.field;
        let r1 = divisor.q_degree().ok_or(Error::BadParameters("division by zero polynomial"))?;
        let lead = divisor.coeffs[r1];
        let mut rem = self.clone();
        let mut quot = vec![Elem::ZERO; self.coeffs.len().saturating_sub(r1)];
        while let Some(d) = rem.q_degree().filter(|&d| d >= r1) {
            let t = d - r1;
            let m = f.div(rem.coeffs[d], f.frobenius(lead, t)).expect("nonzero lead");
            quot[t] = m;
            rem = rem.sub(&divisor.frobenius_shift(t).scale(m))?;
        }
        Ok((Self::from_trusted(f, quot), rem))
    }

    /// The same polynomial in ordinary form, `None` beyond `limit` terms.
    pub fn to_ordinary(&self, limit: u64) -> Option<Poly> {
        let Some(r) = self.q_degree() else {
            return Some(Poly::zero(&self.field));
        };
        let q = self.field.characteristic() as u64;
        let deg = q.checked_pow(r as u32).filter(|&d| d < limit)?;
        let mut c = vec![Elem::ZERO; deg as usize + 1];
        let mut pos = 1usize;
        for &a in &self.coeffs {
            c[pos] = a;
            pos *= q as usize;
        }
        Some(Poly::from_trusted(&self.field, c))
    }
}

/// Whether `divisor` divides `target` as ordinary polynomials.
///
/// Expands both sides and divides when the expansion is small; otherwise
/// falls back to composition division, which decides the same question.
pub fn divides_check(divisor: &LinearizedPoly, target: &LinearizedPoly) -> Result<bool> {
    divisor.check(target)?;
    if divisor.is_zero() {
        return Ok(target.is_zero());
    }
    match (divisor.to_ordinary(EXPANSION_LIMIT), target.to_ordinary(EXPANSION_LIMIT)) {
        (Some(d), Some(t)) => t.is_divisible_by(&d),
        _ => Ok(divisor_by_composition(divisor, target)?),
    }
}

/// Composition-division route for [`divides_check`].
pub fn divisor_by_composition(divisor: &LinearizedPoly, target: &LinearizedPoly) -> Result<bool> {
    Ok(target.right_div_rem(divisor)?.1.is_zero())
}

/// Direction of the q^g-associate map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Associate {
    /// `sum c_i x^i  ->  sum c_i x^[g i]`
    Forward,
    /// The inverse of `Forward`.
    Backward,
}

/// `sum c_i x^i -> sum c_i x^[g i]`.
pub fn q_associate_forward(ordinary: &Poly, stride: usize) -> LinearizedPoly {
    assert!(stride >= 1, "stride must be positive");
    let f = ordinary.field();
    let Some(d) = ordinary.degree() else {
        return LinearizedPoly::zero(f);
    };
    let mut c = vec![Elem::ZERO; d * stride + 1];
    for (i, &a) in ordinary.coeffs().iter().enumerate() {
        c[i * stride] = a;
    }
    LinearizedPoly::from_trusted(f, c)
}

/// Inverse of [`q_associate_forward`].
pub fn q_associate_backward(lin: &LinearizedPoly, stride: usize) -> Result<Poly> {
    assert!(stride >= 1, "stride must be positive");
    if let Some(index) =
        lin.coeffs().iter().enumerate().position(|(i, a)| i % stride != 0 && !a.is_zero())
    {
        return Err(Error::StrideViolation { index, stride });
    }
    let c = lin.coeffs().iter().step_by(stride).copied().collect();
    Ok(Poly::from_trusted(lin.field(), c))
}

/// Roots of `p` inside `ambient`, by exhaustive scan.
///
/// `ambient` is either the coefficient field of `p` or a subfield of it, in
/// which case the scan runs over the embedded copy and the kernel is
/// reported in `ambient` coordinates.
pub fn kernel(p: &LinearizedPoly, ambient: &Arc<Field>) -> Result<Subspace> {
    let size = ambient.order();
    if size > KERNEL_BUDGET {
        return Err(Error::BudgetExceeded { needed: size as u128, budget: KERNEL_BUDGET as u128 });
    }
    let emb = if **ambient == **p.field() {
        None
    } else {
        if ambient.characteristic() != p.field().characteristic() {
            return Err(Error::FieldMismatch);
        }
        Some(Embedding::new(ambient, p.field()).map_err(|_| Error::FieldMismatch)?)
    };
    let mut basis = EchelonBasis::new(ambient.characteristic(), ambient.degree() as usize);
    for x in ambient.elements() {
        let img = emb.as_ref().map_or(x, |e| e.apply(x));
        if p.eval(img).is_zero() {
            basis.insert(&ambient.digits(x));
        }
    }
    Ok(Subspace::from_echelon(ambient, &basis))
}
