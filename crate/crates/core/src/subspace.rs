//! GF(q)-subspaces of GF(q^n), subspace polynomials, cyclic shifts and the
//! Grassmannian.
//!
//! A subspace is stored as the rows of its reduced row echelon basis, each
//! row packed as a field element (column `j` is the coefficient of `x^j`).
//! Two subspaces are equal iff their bases are equal.

use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::field::{Elem, Field};
use crate::gfq::{self, EchelonBasis, Matrix};
use crate::linpoly::LinearizedPoly;
use crate::{Error, Result};

/// Largest subspace whose polynomial is built element-wise.
pub const POLY_BUDGET: u64 = 1 << 16;
/// Largest field scanned by [`Subspace::orbit`].
pub const ORBIT_BUDGET: u64 = 1 << 20;
/// Largest Grassmannian returned by [`enumerate_grassmannian`].
pub const GRASSMANNIAN_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct Subspace {
    field: Arc<Field>,
    basis: Vec<Elem>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the packed basis rows.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.basis.cmp(&other.basis)
    }
}

impl Subspace {
    /// GF(q)-span of `vectors`.
    pub fn span(field: &Arc<Field>, vectors: &[Elem]) -> Result<Subspace> {
        let mut eb = EchelonBasis::new(field.characteristic(), field.degree() as usize);
        for &v in vectors {
            if !field.contains(v) {
                return Err(Error::InvalidElement(v.serial()));
            }
            eb.insert(&field.digits(v));
        }
        Ok(Self::from_echelon(field, &eb))
    }

    pub(crate) fn from_echelon(field: &Arc<Field>, eb: &EchelonBasis) -> Subspace {
        let basis = eb.rows().iter().map(|r| field.from_digits(r)).collect();
        Subspace { field: field.clone(), basis }
    }

    pub fn zero(field: &Arc<Field>) -> Subspace {
        Subspace { field: field.clone(), basis: Vec::new() }
    }

    pub fn full(field: &Arc<Field>) -> Subspace {
        let mut x = vec![0u32; field.degree() as usize];
        let basis = (0..x.len())
            .map(|j| {
                x.fill(0);
                x[j] = 1;
                field.from_digits(&x)
            })
            .collect();
        Subspace { field: field.clone(), basis }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Echelon basis rows, pivot columns increasing.
    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    pub fn basis_serials(&self) -> Vec<u64> {
        self.basis.iter().map(|b| b.serial()).collect()
    }

    /// The basis as an `r x n` matrix over GF(q).
    pub fn matrix(&self) -> Matrix {
        let f = &self.field;
        let rows: Vec<Vec<u32>> = self.basis.iter().map(|&b| f.digits(b)).collect();
        Matrix::from_rows(f.characteristic(), f.degree() as usize, &rows).expect("digits are reduced")
    }

    fn echelon(&self) -> EchelonBasis {
        let f = &self.field;
        let mut eb = EchelonBasis::new(f.characteristic(), f.degree() as usize);
        for &b in &self.basis {
            eb.insert(&f.digits(b));
        }
        eb
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.field.contains(x) && self.echelon().reduce(&self.field.digits(x)).iter().all(|&c| c == 0)
    }

    /// All `q^r` elements, in odometer order over the basis coefficients.
    pub fn elements(&self) -> Vec<Elem> {
        let f = &self.field;
        let q = f.characteristic();
        let mut out = vec![Elem::ZERO];
        for &b in self.basis.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * q as usize);
            for &x in &out {
                for c in 0..q {
                    next.push(f.add(x, f.scale(b, c)));
                }
            }
            out = next;
        }
        out
    }

    /// The monic linearized polynomial of q-degree `dim` vanishing exactly
    /// on this subspace, built by adjoining one basis vector at a time:
    /// `P_{W+<b>} = P_W^q - P_W(b)^(q-1) P_W`.
    pub fn subspace_polynomial(&self) -> Result<LinearizedPoly> {
        let f = &self.field;
        let q = f.characteristic() as u64;
        let size = q.checked_pow(self.dim() as u32).unwrap_or(u64::MAX);
        if size > POLY_BUDGET {
            return Err(Error::BudgetExceeded { needed: size as u128, budget: POLY_BUDGET as u128 });
        }
        let mut p = LinearizedPoly::identity(f);
        for &b in &self.basis {
            let c = f.pow(p.eval(b), q - 1);
            p = p.frobenius_shift(1).sub(&p.scale(c))?;
        }
        Ok(p)
    }

    /// `αV`.
    pub fn cyclic_shift(&self, alpha: Elem) -> Result<Subspace> {
        if alpha.is_zero() {
            return Err(Error::ZeroShift);
        }
        if !self.field.contains(alpha) {
            return Err(Error::InvalidElement(alpha.serial()));
        }
        let shifted: Vec<Elem> = self.basis.iter().map(|&b| self.field.mul(alpha, b)).collect();
        Self::span(&self.field, &shifted)
    }

    /// Distinct cyclic shifts, sorted.
    pub fn orbit(&self) -> Result<Vec<Subspace>> {
        let f = &self.field;
        if f.order() > ORBIT_BUDGET {
            return Err(Error::BudgetExceeded {
                needed: f.order() as u128,
                budget: ORBIT_BUDGET as u128,
            });
        }
        let mut seen = BTreeSet::new();
        for a in f.elements().skip(1) {
            seen.insert(self.cyclic_shift(a)?);
        }
        Ok(seen.into_iter().collect())
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    /// `U ∩ V`, from the null space of `[U^T | -V^T]`.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let f = &self.field;
        let q = f.characteristic();
        let n = f.degree() as usize;
        let (r1, r2) = (self.dim(), other.dim());
        let mut m = Matrix::zeros(q, n, r1 + r2);
        for (i, &u) in self.basis.iter().enumerate() {
            for (row, d) in f.digits(u).into_iter().enumerate() {
                m.set(row, i, d);
            }
        }
        for (j, &v) in other.basis.iter().enumerate() {
            for (row, d) in f.digits(v).into_iter().enumerate() {
                m.set(row, r1 + j, gfq::sub(0, d, q));
            }
        }
        let vectors: Vec<Elem> = m
            .nullspace()
            .iter()
            .map(|a| {
                self.basis
                    .iter()
                    .zip(a)
                    .fold(Elem::ZERO, |acc, (&u, &c)| f.add(acc, f.scale(u, c)))
            })
            .collect();
        Self::span(f, &vectors)
    }

    /// `U + V`.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut all = self.basis.clone();
        all.extend_from_slice(&other.basis);
        Self::span(&self.field, &all)
    }
}

/// `dim U + dim V - 2 dim(U ∩ V)`.
pub fn subspace_distance(u: &Subspace, v: &Subspace) -> Result<usize> {
    let meet = u.intersection(v)?;
    Ok(u.dim() + v.dim() - 2 * meet.dim())
}

/// The number of `r`-dimensional subspaces of GF(q)^n.
pub fn gaussian_binomial(n: u32, r: u32, q: u64) -> BigUint {
    if r > n {
        return BigUint::default();
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..r {
        num *= q.pow(n - i) - 1u32;
        den *= q.pow(i + 1) - 1u32;
    }
    num / den
}

/// Visits every `r x n` reduced row echelon matrix over an alphabet of
/// size `alphabet`, where symbol 0 is zero and symbol 1 is one. Pivot
/// patterns come in lexicographic order, free entries in odometer order.
pub fn for_each_rref(n: usize, r: usize, alphabet: usize, mut visit: impl FnMut(&[Vec<usize>])) {
    if r > n {
        return;
    }
    let mut pivots: Vec<usize> = (0..r).collect();
    loop {
        // Free cells: right of the row's pivot, outside pivot columns.
        let mut free = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            for c in p + 1..n {
                if !pivots.contains(&c) {
                    free.push((i, c));
                }
            }
        }
        let mut m = vec![vec![0usize; n]; r];
        for (i, &p) in pivots.iter().enumerate() {
            m[i][p] = 1;
        }
        let mut counter = vec![0usize; free.len()];
        'odometer: loop {
            visit(&m);
            for (slot, &(i, c)) in free.iter().enumerate().rev() {
                counter[slot] += 1;
                if counter[slot] < alphabet {
                    m[i][c] = counter[slot];
                    continue 'odometer;
                }
                counter[slot] = 0;
                m[i][c] = 0;
            }
            break;
        }
        // Next r-combination of 0..n.
        let Some(i) = (0..r).rev().find(|&i| pivots[i] < n - r + i) else {
            return;
        };
        pivots[i] += 1;
        for j in i + 1..r {
            pivots[j] = pivots[j - 1] + 1;
        }
    }
}

/// Every `r`-dimensional subspace of the field, sorted.
pub fn enumerate_grassmannian(field: &Arc<Field>, r: usize) -> Result<Vec<Subspace>> {
    let n = field.degree() as usize;
    if r > n {
        return Err(Error::BadDimension("subspace dimension exceeds the ambient dimension"));
    }
    let count = gaussian_binomial(n as u32, r as u32, field.characteristic() as u64);
    let fits = count.to_u64().filter(|&c| c <= GRASSMANNIAN_BUDGET);
    if fits.is_none() {
        return Err(Error::BudgetExceeded {
            needed: count.to_u128().unwrap_or(u128::MAX),
            budget: GRASSMANNIAN_BUDGET as u128,
        });
    }
    let mut out = Vec::new();
    for_each_rref(n, r, field.characteristic() as usize, |m| {
        let basis = m
            .iter()
            .map(|row| {
                let digits: Vec<u32> = row.iter().map(|&d| d as u32).collect();
                field.from_digits(&digits)
            })
            .collect();
        out.push(Subspace { field: field.clone(), basis });
    });
    out.sort();
    Ok(out)
}
