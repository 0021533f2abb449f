//! Families of subspace polynomials sharing their top coefficients.
//!
//! * [`construct_cg`]: the polynomials of every r-subspace of GF(q^n) that is
//!   also a GF(q^g)-subspace. Only indices divisible by `g` are nonzero.
//! * [`pigeonhole_family`]: the largest class of such a family agreeing on
//!   the top `g(ℓ+1)` coefficients.
//! * [`construct_z`]: `sum_i β^([r]-[igs]) x^[igs]` over orbit
//!   representatives `β` of GF(q^gs).
//! * [`shift_family`]: embedding into GF(q^m) followed by a cyclic shift.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::field::{Elem, Embedding, Field};
use crate::linpoly::{self, LinearizedPoly};
use crate::poly::Poly;
use crate::subspace::{for_each_rref, gaussian_binomial, Subspace};
use crate::{Error, Result};

/// Largest 𝒞_g family enumerated.
pub const CG_BUDGET: u64 = 100_000;
/// Largest 𝒵 family materialized.
pub const Z_BUDGET: u64 = 1 << 20;
/// Largest field scanned for roots.
pub const ROOT_BUDGET: u64 = 1 << 20;

/// `n = r + g s` and `ℓ = s - 1`, so the agreement length `g(ℓ+1)` equals
/// `n - r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub q: u32,
    pub n: u32,
    pub r: u32,
    pub g: u32,
    pub s: u32,
    pub ell: u32,
}

impl FamilyParams {
    fn new(q: u32, n: u32, r: u32, g: u32) -> Self {
        let s = (n - r) / g;
        FamilyParams { q, n, r, g, s, ell: s.saturating_sub(1) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Cg,
    Pigeonhole,
    Z,
    Shifted,
}

impl FamilyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::Cg => "cg",
            FamilyKind::Pigeonhole => "pigeonhole",
            FamilyKind::Z => "z",
            FamilyKind::Shifted => "shifted",
        }
    }
}

/// Monic subspace polynomials of q-degree `params.r` over one field.
///
/// Every member has the coefficients `mutual_top` at the indices
/// `r, r-1, ..., r - mutual_top.len() + 1`.
#[derive(Clone, Debug)]
pub struct PolyFamily {
    pub params: FamilyParams,
    pub field: Arc<Field>,
    pub members: Vec<LinearizedPoly>,
    pub mutual_top: Vec<Elem>,
    pub kind: FamilyKind,
    /// Agreement covers every coefficient, or the family has fewer than
    /// two members.
    pub degenerate: bool,
}

impl PolyFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Whether every member carries `mutual_top` at the top.
    pub fn agreement_holds(&self) -> bool {
        let r = self.params.r as usize;
        self.members.iter().all(|p| {
            p.q_degree() == Some(r) && top_coefficients(p, self.mutual_top.len()) == self.mutual_top
        })
    }
}

/// Coefficients at `r, r-1, ...`, `count` of them, stopping at index 0.
pub fn top_coefficients(p: &LinearizedPoly, count: usize) -> Vec<Elem> {
    let Some(r) = p.q_degree() else {
        return Vec::new();
    };
    (0..count.min(r + 1)).map(|i| p.coeff(r - i)).collect()
}

fn check_divisibility(n: u32, r: u32, g: u32) -> Result<()> {
    if g < 2 {
        return Err(Error::DivisibilityViolation("g must be at least 2"));
    }
    if r == 0 || r >= n {
        return Err(Error::DivisibilityViolation("dimension must satisfy 0 < r < n"));
    }
    if !n.is_multiple_of(g) || !r.is_multiple_of(g) {
        return Err(Error::DivisibilityViolation("g must divide both n and r"));
    }
    Ok(())
}

/// The r-subspaces of GF(q^n) closed under GF(q^g)-scaling, in enumeration
/// order of their GF(q^g) echelon forms.
///
/// GF(q^g)^(n/g) is identified with GF(q^n) through the basis
/// `1, γ, ..., γ^(n/g-1)`, and a GF(q^g)-basis is expanded over GF(q) with
/// the powers `1, w, ..., w^(g-1)` of the subfield generator.
pub fn cg_subspaces(field: &Arc<Field>, r: u32, g: u32) -> Result<Vec<Subspace>> {
    let n = field.degree();
    check_divisibility(n, r, g)?;
    let qg = (field.characteristic() as u64).pow(g);
    let count = gaussian_binomial(n / g, r / g, qg);
    let count = count.to_u64().filter(|&c| c <= CG_BUDGET).ok_or(Error::BudgetExceeded {
        needed: count.to_u128().unwrap_or(u128::MAX),
        budget: CG_BUDGET as u128,
    })?;
    let sub = field.subfield_elements(g)?;
    let w = field.subfield_generator(g)?;
    let gamma = field.primitive_element();
    let outer: Vec<Elem> = (0..n / g).map(|j| field.pow(gamma, j as u64)).collect();
    let inner: Vec<Elem> = (0..g).map(|k| field.pow(w, k as u64)).collect();
    let mut out = Vec::with_capacity(count as usize);
    let mut failure = None;
    for_each_rref((n / g) as usize, (r / g) as usize, qg as usize, |m| {
        if failure.is_some() {
            return;
        }
        let mut gens = Vec::with_capacity(r as usize);
        for row in m {
            let h = row
                .iter()
                .zip(&outer)
                .fold(Elem::ZERO, |acc, (&sym, &b)| field.add(acc, field.mul(sub[sym], b)));
            gens.extend(inner.iter().map(|&c| field.mul(c, h)));
        }
        match Subspace::span(field, &gens) {
            Ok(v) => out.push(v),
            Err(e) => failure = Some(e),
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    debug_assert!(out.iter().all(|v| v.dim() == r as usize));
    Ok(out)
}

/// Subspace polynomials of [`cg_subspaces`].
pub fn construct_cg(field: &Arc<Field>, r: u32, g: u32) -> Result<PolyFamily> {
    let members = cg_subspaces(field, r, g)?
        .iter()
        .map(Subspace::subspace_polynomial)
        .collect::<Result<Vec<_>>>()?;
    let mut mutual_top = vec![Elem::ZERO; g as usize];
    mutual_top[0] = Elem::ONE;
    let params = FamilyParams::new(field.characteristic(), field.degree(), r, g);
    Ok(PolyFamily {
        params,
        field: field.clone(),
        degenerate: members.len() < 2,
        members,
        mutual_top,
        kind: FamilyKind::Cg,
    })
}

/// The largest class of `family` under agreement on the top `g(ℓ+1)`
/// coefficients; ties go to the smallest coefficient key.
pub fn pigeonhole_family(family: &PolyFamily, ell: u32) -> Result<PolyFamily> {
    if family.kind != FamilyKind::Cg {
        return Err(Error::ParamMismatch("pigeonhole input must be a 𝒞_g family"));
    }
    let p = family.params;
    if p.g * (ell + 1) + p.r != p.n {
        return Err(Error::ParamMismatch("r must equal n - g(ℓ+1)"));
    }
    let count = (p.g * (ell + 1)) as usize;
    let mut buckets: BTreeMap<Vec<Elem>, Vec<LinearizedPoly>> = BTreeMap::new();
    for m in &family.members {
        buckets.entry(top_coefficients(m, count)).or_default().push(m.clone());
    }
    let (key, members) = buckets
        .into_iter()
        .fold(None::<(Vec<Elem>, Vec<LinearizedPoly>)>, |best, (k, v)| match best {
            Some(b) if b.1.len() >= v.len() => Some(b),
            _ => Some((k, v)),
        })
        .ok_or(Error::ParamMismatch("empty family"))?;
    Ok(PolyFamily {
        params: FamilyParams { ell, ..p },
        field: family.field.clone(),
        degenerate: count >= p.r as usize || members.len() < 2,
        members,
        mutual_top: key,
        kind: FamilyKind::Pigeonhole,
    })
}

fn check_z(field: &Field, g: u32, s: u32) -> Result<u32> {
    let n = field.degree();
    let gs = g.checked_mul(s).filter(|&gs| gs >= 1).ok_or(Error::BadParameters("g s must be positive"))?;
    if !n.is_multiple_of(gs) {
        return Err(Error::DivisibilityViolation("g s must divide r"));
    }
    if gs >= n {
        return Err(Error::DivisibilityViolation("r = n - g s must be positive"));
    }
    Ok(n - gs)
}

/// `sum_{i < n/gs} x^[igs]` over GF(q^n), a subspace polynomial of q-degree
/// `n - gs`.
pub fn explicit_base_poly(field: &Arc<Field>, g: u32, s: u32) -> Result<LinearizedPoly> {
    check_z(field, g, s)?;
    let gs = (g * s) as usize;
    let n = field.degree() as usize;
    let mut c = vec![Elem::ZERO; n - gs + 1];
    for i in (0..=n - gs).step_by(gs) {
        c[i] = Elem::ONE;
    }
    LinearizedPoly::new(field, c)
}

/// `γ^i` for `0 <= i < (q^n-1)/(q^gs-1)`: one element from each coset of
/// GF(q^gs)*.
pub fn representatives_b(field: &Arc<Field>, gs: u32) -> Result<Vec<Elem>> {
    let n = field.degree();
    if gs == 0 || !n.is_multiple_of(gs) {
        return Err(Error::DivisibilityViolation("g s must divide n"));
    }
    let count = (field.order() - 1) / ((field.characteristic() as u64).pow(gs) - 1);
    if count > Z_BUDGET {
        return Err(Error::BudgetExceeded { needed: count as u128, budget: Z_BUDGET as u128 });
    }
    let gamma = field.primitive_element();
    let mut out = Vec::with_capacity(count as usize);
    let mut cur = Elem::ONE;
    for _ in 0..count {
        out.push(cur);
        cur = field.mul(cur, gamma);
    }
    Ok(out)
}

/// `β^([r]-[j]) c` for the coefficient `c` at index `j`.
fn shift_coefficient(field: &Field, beta: Elem, r: usize, j: usize, c: Elem) -> Elem {
    if c.is_zero() {
        return c;
    }
    let num = field.frobenius(beta, r);
    let den = field.frobenius(beta, j);
    field.mul(c, field.div(num, den).expect("β is nonzero"))
}

/// Construction of 𝒵 over GF(q^n) with `r = n - gs`.
pub fn construct_z(field: &Arc<Field>, g: u32, s: u32) -> Result<PolyFamily> {
    let r = check_z(field, g, s)? as usize;
    let gs = (g * s) as usize;
    let base = explicit_base_poly(field, g, s)?;
    let members = representatives_b(field, gs as u32)?
        .into_iter()
        .map(|beta| {
            let c = base
                .coeffs()
                .iter()
                .enumerate()
                .map(|(j, &a)| shift_coefficient(field, beta, r, j, a))
                .collect();
            LinearizedPoly::from_trusted(field, c)
        })
        .collect::<Vec<_>>();
    let mut mutual_top = vec![Elem::ZERO; gs];
    mutual_top[0] = Elem::ONE;
    let params = FamilyParams::new(field.characteristic(), field.degree(), r as u32, g);
    Ok(PolyFamily {
        params,
        field: field.clone(),
        degenerate: members.len() < 2 || gs > r,
        members,
        mutual_top,
        kind: FamilyKind::Z,
    })
}

/// Embeds every member into `target` and replaces it by the polynomial of
/// the `β`-shifted kernel.
pub fn shift_family(family: &PolyFamily, beta: Elem, target: &Arc<Field>) -> Result<PolyFamily> {
    if beta.is_zero() {
        return Err(Error::ZeroShift);
    }
    if !target.contains(beta) {
        return Err(Error::InvalidElement(beta.serial()));
    }
    let emb = Embedding::new(&family.field, target)?;
    let r = family.params.r as usize;
    let map = |p: &[Elem], top: bool| -> Vec<Elem> {
        p.iter()
            .enumerate()
            .map(|(i, &c)| {
                let j = if top { r - i } else { i };
                shift_coefficient(target, beta, r, j, emb.apply(c))
            })
            .collect()
    };
    let members = family
        .members
        .iter()
        .map(|p| LinearizedPoly::from_trusted(target, map(p.coeffs(), false)))
        .collect();
    Ok(PolyFamily {
        params: family.params,
        field: target.clone(),
        members,
        mutual_top: map(&family.mutual_top, true),
        kind: FamilyKind::Shifted,
        degenerate: family.degenerate,
    })
}

/// Three equivalent characterizations of a subspace polynomial of q-degree
/// `r` over GF(q^e), evaluated independently.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubspacePolyChecks {
    /// `p` divides `x^[e] - x`.
    pub divides_frobenius: bool,
    /// `p` has `q^r` distinct roots in GF(q^e).
    pub distinct_roots: bool,
    /// The root set is a subspace of dimension `r`.
    pub kernel_dimension: bool,
}

impl SubspacePolyChecks {
    pub fn all(&self) -> bool {
        self.divides_frobenius && self.distinct_roots && self.kernel_dimension
    }

    pub fn consistent(&self) -> bool {
        self.divides_frobenius == self.distinct_roots && self.distinct_roots == self.kernel_dimension
    }
}

pub fn subspace_poly_checks(p: &LinearizedPoly) -> Result<SubspacePolyChecks> {
    let f = p.field();
    let r = p.q_degree().ok_or(Error::BadParameters("zero polynomial"))?;
    let e = f.degree() as usize;
    let q = f.characteristic() as u64;
    let mut frob = vec![Elem::ZERO; e + 1];
    frob[e] = Elem::ONE;
    frob[0] = f.neg(Elem::ONE);
    let frob = LinearizedPoly::from_trusted(f, frob);
    let divides_frobenius = linpoly::divides_check(p, &frob)?;
    let roots = match p.to_ordinary(linpoly::EXPANSION_LIMIT) {
        Some(ordinary) => ordinary.count_roots(ROOT_BUDGET)?,
        None => {
            if f.order() > ROOT_BUDGET {
                return Err(Error::BudgetExceeded {
                    needed: f.order() as u128,
                    budget: ROOT_BUDGET as u128,
                });
            }
            f.elements().filter(|&x| p.eval(x).is_zero()).count() as u64
        }
    };
    let expected = q.checked_pow(r as u32);
    let kernel = linpoly::kernel(p, f)?;
    Ok(SubspacePolyChecks {
        divides_frobenius,
        distinct_roots: expected == Some(roots),
        kernel_dimension: kernel.dim() == r,
    })
}

/// Tests for an (a, s)-family: every polynomial has at least `a` roots in
/// its field and all of them lie within degree `s` of a common pivot.
///
/// The pivot candidate is the shared part above degree `s` with a zero tail.
pub fn is_as_family(polys: &[Poly], a: u64, s: usize) -> Result<(bool, Option<Poly>)> {
    let Some(first) = polys.first() else {
        return Ok((true, None));
    };
    let f = first.field();
    if polys.iter().any(|p| p.field() != f) {
        return Err(Error::FieldMismatch);
    }
    for p in polys {
        if p.count_roots(ROOT_BUDGET)? < a {
            return Ok((false, None));
        }
    }
    let len = polys.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
    let mut top = vec![Elem::ZERO; len];
    for (i, t) in top.iter_mut().enumerate().skip(s + 1) {
        *t = first.coeff(i);
    }
    let pivot = Poly::new(f, top)?;
    for p in polys {
        let diff = p.sub(&pivot)?;
        if diff.degree().is_some_and(|d| d > s) {
            return Ok((false, None));
        }
    }
    Ok((true, Some(pivot)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::make_field;

    #[test]
    fn cg_family_over_gf16() {
        let f = make_field(2, 4).unwrap();
        let fam = construct_cg(&f, 2, 2).unwrap();
        assert_eq!(fam.len(), 5);
        assert!(fam.agreement_holds());
        for p in &fam.members {
            assert!(p.coeff(1).is_zero());
            assert!(subspace_poly_checks(p).unwrap().all());
        }
    }

    #[test]
    fn pigeonhole_rejects_inconsistent_ell() {
        let f = make_field(2, 4).unwrap();
        let fam = construct_cg(&f, 2, 2).unwrap();
        assert_eq!(pigeonhole_family(&fam, 1).unwrap_err(), Error::ParamMismatch("r must equal n - g(ℓ+1)"));
        let all = pigeonhole_family(&fam, 0).unwrap();
        assert_eq!(all.len(), 5);
        assert_eq!(all.mutual_top, [Elem::ONE, Elem::ZERO]);
    }

    #[test]
    fn z_family_kernels_are_shifts() {
        let f = make_field(2, 4).unwrap();
        let z = construct_z(&f, 2, 1).unwrap();
        let base = linpoly::kernel(&z.members[0], &f).unwrap();
        let reps = representatives_b(&f, 2).unwrap();
        for (p, &beta) in z.members.iter().zip(&reps) {
            assert_eq!(linpoly::kernel(p, &f).unwrap(), base.cyclic_shift(beta).unwrap());
        }
    }

    #[test]
    fn explicit_base_rejects_bad_stride() {
        let f = make_field(2, 5).unwrap();
        assert!(matches!(explicit_base_poly(&f, 2, 1), Err(Error::DivisibilityViolation(_))));
    }
}
