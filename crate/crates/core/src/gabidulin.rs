//! Gabidulin codes over GF(q^m), the rank metric, puncturing and bound
//! calculators.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::field::{Elem, Embedding, Field, ModulusTable};
use crate::gfq::EchelonBasis;
use crate::linpoly::LinearizedPoly;
use crate::subspace::gaussian_binomial;
use crate::{Error, Result};

/// Largest message space enumerated by [`GabidulinCode::enumerate_ball`].
pub const BALL_BUDGET: u64 = 1 << 22;

/// A word of `GF(q^m)^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankWord {
    field: Arc<Field>,
    coords: Vec<Elem>,
}

impl RankWord {
    pub fn new(field: &Arc<Field>, coords: Vec<Elem>) -> Result<RankWord> {
        if let Some(bad) = coords.iter().find(|c| !field.contains(**c)) {
            return Err(Error::InvalidElement(bad.serial()));
        }
        Ok(RankWord { field: field.clone(), coords })
    }

    pub fn zero(field: &Arc<Field>, n: usize) -> RankWord {
        RankWord { field: field.clone(), coords: alloc::vec![Elem::ZERO; n] }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    pub fn serials(&self) -> Vec<u64> {
        self.coords.iter().map(|c| c.serial()).collect()
    }

    fn check(&self, other: &RankWord) -> Result<()> {
        if self.field == other.field && self.coords.len() == other.coords.len() {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &RankWord) -> Result<RankWord> {
        self.check(other)?;
        let f = &self.field;
        let coords = self.coords.iter().zip(&other.coords).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(RankWord { field: f.clone(), coords })
    }

    pub fn sub(&self, other: &RankWord) -> Result<RankWord> {
        self.check(other)?;
        let f = &self.field;
        let coords = self.coords.iter().zip(&other.coords).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(RankWord { field: f.clone(), coords })
    }

    pub fn scale(&self, c: Elem) -> RankWord {
        let f = &self.field;
        RankWord { field: f.clone(), coords: self.coords.iter().map(|&a| f.mul(a, c)).collect() }
    }

    /// `m x n` matrix over GF(q); column `i` holds the coordinates of entry `i`.
    pub fn to_matrix(&self) -> crate::gfq::Matrix {
        let f = &self.field;
        let cols: Vec<Vec<u32>> = self.coords.iter().map(|&c| f.digits(c)).collect();
        crate::gfq::Matrix::from_rows(f.characteristic(), f.degree() as usize, &cols)
            .expect("digits are reduced")
            .transpose()
    }

    /// Rank over GF(q) of the coordinates.
    pub fn rank_weight(&self) -> usize {
        rank_of(&self.field, &self.coords)
    }

    /// Keeps every coordinate except those at `positions`.
    pub fn puncture(&self, positions: &[usize]) -> RankWord {
        let coords = self
            .coords
            .iter()
            .enumerate()
            .filter(|(i, _)| !positions.contains(i))
            .map(|(_, &c)| c)
            .collect();
        RankWord { field: self.field.clone(), coords }
    }
}

fn rank_of(field: &Field, elems: &[Elem]) -> usize {
    let mut eb = EchelonBasis::new(field.characteristic(), field.degree() as usize);
    let mut rank = 0;
    for &c in elems {
        if !c.is_zero() && eb.insert(&field.digits(c)) {
            rank += 1;
        }
    }
    rank
}

pub fn rank_distance(a: &RankWord, b: &RankWord) -> Result<usize> {
    Ok(a.sub(b)?.rank_weight())
}

/// Evaluations of linearized polynomials of q-degree `< k` at `n` GF(q)-linearly
/// independent points of GF(q^m).
#[derive(Clone, Debug)]
pub struct GabidulinCode {
    field: Arc<Field>,
    k: usize,
    beta: Elem,
    beta_exponent: Option<u64>,
    eval_points: Vec<Elem>,
    // moore[i][j] = eval_points[j]^[i]
    moore: Vec<Vec<Elem>>,
}

impl GabidulinCode {
    /// Code with custom evaluation points, which must be linearly independent.
    pub fn with_points(field: &Arc<Field>, eval_points: Vec<Elem>, k: usize) -> Result<GabidulinCode> {
        let n = eval_points.len();
        if k == 0 || k > n {
            return Err(Error::BadDimension("need 1 <= k <= n"));
        }
        if n > field.degree() as usize {
            return Err(Error::BadDimension("need n <= m"));
        }
        if let Some(bad) = eval_points.iter().find(|c| !field.contains(**c)) {
            return Err(Error::InvalidElement(bad.serial()));
        }
        if rank_of(field, &eval_points) != n {
            return Err(Error::BadDimension("evaluation points are linearly dependent"));
        }
        let moore = (0..k)
            .map(|i| eval_points.iter().map(|&a| field.frobenius(a, i)).collect())
            .collect();
        Ok(GabidulinCode {
            field: field.clone(),
            k,
            beta: Elem::ONE,
            beta_exponent: None,
            eval_points,
            moore,
        })
    }

    /// Gab[n, k] over GF(q^m) with evaluation points `β φ(γ_n^i)`, `i < n`,
    /// where `β = γ_m^beta_exponent` and `φ` embeds GF(q^n).
    pub fn new(table: &ModulusTable, q: u32, n: u32, m: u32, k: u32, beta_exponent: u64) -> Result<GabidulinCode> {
        if n == 0 || !m.is_multiple_of(n) {
            return Err(Error::NotASubfield { sub: n, ext: m });
        }
        if k == 0 || k > n {
            return Err(Error::BadDimension("need 1 <= k <= n"));
        }
        let big = table.field(q, m)?;
        let small = table.field(q, n)?;
        let emb = Embedding::new(&small, &big)?;
        let beta = big.pow(big.primitive_element(), beta_exponent);
        let gn = small.primitive_element();
        let points = (0..n).map(|i| big.mul(beta, emb.apply(small.pow(gn, i as u64)))).collect();
        let mut code = Self::with_points(&big, points, k as usize)?;
        code.beta = beta;
        code.beta_exponent = Some(beta_exponent);
        Ok(code)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.eval_points.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Designed minimum rank distance `n - k + 1`.
    pub fn d(&self) -> usize {
        self.n() - self.k + 1
    }

    pub fn beta(&self) -> Elem {
        self.beta
    }

    /// `None` for codes built from custom points.
    pub fn beta_exponent(&self) -> Option<u64> {
        self.beta_exponent
    }

    pub fn eval_points(&self) -> &[Elem] {
        &self.eval_points
    }

    /// `q^(m k)`, saturating.
    pub fn size(&self) -> u128 {
        let qm = self.field.order() as u128;
        (0..self.k).try_fold(1u128, |acc, _| acc.checked_mul(qm)).unwrap_or(u128::MAX)
    }

    pub fn encode(&self, message: &LinearizedPoly) -> Result<RankWord> {
        if **message.field() != *self.field {
            return Err(Error::FieldMismatch);
        }
        if let Some(d) = message.q_degree().filter(|&d| d >= self.k) {
            return Err(Error::DegreeTooHigh { q_degree: d, k: self.k });
        }
        Ok(self.encode_coeffs(message.coeffs()))
    }

    /// Encodes the coefficients `a_0, ..., a_{k-1}` (missing ones are zero).
    pub fn encode_coeffs(&self, coeffs: &[Elem]) -> RankWord {
        let f = &self.field;
        let mut coords = alloc::vec![Elem::ZERO; self.n()];
        for (row, &a) in self.moore.iter().zip(coeffs) {
            if a.is_zero() {
                continue;
            }
            for (c, &x) in coords.iter_mut().zip(row) {
                *c = f.add(*c, f.mul(a, x));
            }
        }
        RankWord { field: f.clone(), coords }
    }

    fn check_budget(&self, budget: u64) -> Result<u64> {
        let size = self.size();
        if size > budget as u128 {
            return Err(Error::BudgetExceeded { needed: size, budget: budget as u128 });
        }
        Ok(size as u64)
    }

    /// Calls `visit(message, codeword)` for every message, in order of the
    /// integer whose base-`q^m` digits are `a_0, a_1, ...`.
    pub fn for_each_codeword(&self, budget: u64, mut visit: impl FnMut(&[Elem], &RankWord)) -> Result<()> {
        let size = self.check_budget(budget)?;
        let f = &self.field;
        let qm = f.order();
        let mut msg = alloc::vec![Elem::ZERO; self.k];
        let mut word = RankWord::zero(f, self.n());
        for idx in 0..size {
            if idx > 0 {
                // Odometer step: bump the lowest digit, carrying over.
                for (i, a) in msg.iter_mut().enumerate() {
                    let next = a.serial() + 1;
                    let row = &self.moore[i];
                    // Replace a by next (or by 0 on carry) in the running word.
                    let new = if next == qm { Elem::ZERO } else { f.elem(next).expect("in range") };
                    let delta = f.sub(new, *a);
                    for (c, &x) in word.coords.iter_mut().zip(row) {
                        *c = f.add(*c, f.mul(delta, x));
                    }
                    *a = new;
                    if next < qm {
                        break;
                    }
                }
            }
            visit(&msg, &word);
        }
        Ok(())
    }

    /// All codewords within rank distance `tau` of `center`, in message order.
    pub fn enumerate_ball(&self, center: &RankWord, tau: usize, budget: u64) -> Result<Vec<RankWord>> {
        if center.field != self.field || center.len() != self.n() {
            return Err(Error::ContextMismatch);
        }
        let mut out = Vec::new();
        let mut diff = alloc::vec![Elem::ZERO; self.n()];
        let f = &self.field;
        self.for_each_codeword(budget, |_, c| {
            for (d, (&a, &b)) in diff.iter_mut().zip(center.coords.iter().zip(&c.coords)) {
                *d = f.sub(a, b);
            }
            if rank_of(f, &diff) <= tau {
                out.push(c.clone());
            }
        })?;
        Ok(out)
    }

    /// Smallest rank weight of a nonzero codeword.
    pub fn minimum_distance(&self, budget: u64) -> Result<usize> {
        let mut best = usize::MAX;
        let f = &self.field;
        self.for_each_codeword(budget, |msg, c| {
            if msg.iter().any(|a| !a.is_zero()) {
                best = best.min(rank_of(f, &c.coords));
            }
        })?;
        Ok(best)
    }

    /// Gab[n - s, k] on the first `n - s` evaluation points.
    pub fn puncture(&self, s: usize) -> Result<GabidulinCode> {
        let limit = self.n() - self.k + 1;
        if s >= limit {
            return Err(Error::TooManyPunctures { s, limit });
        }
        let points = self.eval_points[..self.n() - s].to_vec();
        let mut code = Self::with_points(&self.field, points, self.k)?;
        code.beta = self.beta;
        code.beta_exponent = self.beta_exponent;
        Ok(code)
    }

    /// Positions removed by [`GabidulinCode::puncture`].
    pub fn puncture_positions(&self, s: usize) -> Vec<usize> {
        (self.n() - s.min(self.n())..self.n()).collect()
    }

    /// Coefficients `a_0, ..., a_{k-1}` with `encode = word`, if any.
    pub fn solve_message(&self, word: &RankWord) -> Result<Option<Vec<Elem>>> {
        if word.field != self.field || word.len() != self.n() {
            return Err(Error::ContextMismatch);
        }
        let f = &self.field;
        let k = self.k;
        // Augmented rows [α_j^[0] ... α_j^[k-1] | w_j].
        let mut rows: Vec<Vec<Elem>> = (0..self.n())
            .map(|j| {
                let mut r: Vec<Elem> = (0..k).map(|i| self.moore[i][j]).collect();
                r.push(word.coords[j]);
                r
            })
            .collect();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..k {
            let Some(p) = (lead..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
                continue;
            };
            rows.swap(lead, p);
            let iv = f.inv(rows[lead][c]).expect("nonzero pivot");
            for x in rows[lead].iter_mut() {
                *x = f.mul(*x, iv);
            }
            let pivot_row = rows[lead].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == lead || row[c].is_zero() {
                    continue;
                }
                let factor = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            }
            pivots.push(c);
            lead += 1;
        }
        if rows[lead..].iter().any(|r| !r[k].is_zero()) {
            return Ok(None);
        }
        let mut msg = alloc::vec![Elem::ZERO; k];
        for (r, &c) in pivots.iter().enumerate() {
            msg[c] = rows[r][k];
        }
        Ok(Some(msg))
    }

    pub fn is_codeword(&self, word: &RankWord) -> Result<bool> {
        Ok(self.solve_message(word)?.is_some())
    }
}

/// Radius gained back after puncturing `s` coordinates of Gab[n, k].
pub fn punctured_radius_shift(s: usize, n: usize, k: usize) -> usize {
    debug_assert!(s < n - k + 1);
    if s.is_multiple_of(2) {
        s / 2
    } else if (n - k).is_multiple_of(2) {
        s.div_ceil(2)
    } else {
        (s - 1) / 2
    }
}

/// `(m+n)/2 - sqrt((m+n)^2/4 - m(d-ε))`.
pub fn johnson_like_radius(n: f64, m: f64, d: f64, eps: f64) -> Result<f64> {
    let half = (m + n) / 2.0;
    let prod = m * (d - eps);
    let disc = half * half - prod;
    if disc < 0.0 {
        return Err(Error::NegativeDiscriminant);
    }
    // Rationalized to avoid cancellation when the root is close to `half`.
    let denom = half + libm::sqrt(disc);
    if denom == 0.0 {
        return Ok(0.0);
    }
    Ok(prod / denom)
}

/// `[n, n-τ]_q / q^(m(n-τ-k))`, the prior lower bound on the largest list
/// size at radius `τ`.
pub fn counting_bound_prior(q: u32, n: u32, m: u32, k: u32, tau: u32) -> Result<BigRational> {
    let d = n + 1 - k;
    if tau >= d {
        return Err(Error::RadiusTooLarge { tau, d });
    }
    let num = gaussian_binomial(n, n - tau, q as u64);
    let den = BigUint::from(q).pow(m * (n - tau - k));
    Ok(BigRational::new(num.into(), den.into()))
}

/// Smallest integer at least `x`; `x` must be non-negative.
pub fn ceil_ratio(x: &BigRational) -> BigUint {
    let c = x.ceil().to_integer();
    if c.sign() == num_bigint::Sign::Minus || c.is_zero() {
        BigUint::zero()
    } else {
        c.to_biguint().expect("non-negative")
    }
}

/// Lossy conversion for reporting.
pub fn ratio_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
