//! Lifting rank-metric codes to constant-dimension subspace codes.
//!
//! A matrix `X` (`n x m` over GF(q)) lifts to the row space of `[I_n | X]`.
//! A word of `GF(q^m)^n` is first expanded into its `m x n` matrix `C`
//! (column `i` = coordinates of entry `i`) and then `C^T` is lifted.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_rational::BigRational;

use crate::adversarial::{show, InstanceClaim, InstanceKind, VerificationReport};
use crate::gabidulin::{GabidulinCode, RankWord};
use crate::gfq::Matrix;
use crate::subspace::gaussian_binomial;
use crate::{Error, Result};

/// Largest code lifted by [`lift_code`].
pub const LIFT_BUDGET: u64 = 1 << 18;

/// Row space of `[I_n | X]`, stored as that generator (already in reduced
/// row echelon form).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LiftedSubspace {
    generator: Matrix,
    n: usize,
}

impl LiftedSubspace {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.generator.cols() - self.n
    }

    pub fn q(&self) -> u32 {
        self.generator.q()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    /// The block `X`.
    pub fn payload(&self) -> Matrix {
        let rows: Vec<Vec<u32>> = (0..self.n).map(|r| self.generator.row(r)[self.n..].to_vec()).collect();
        Matrix::from_rows(self.q(), self.m(), &rows).expect("rows have width m")
    }

    /// Rows packed base q, first column least significant.
    pub fn row_serials(&self) -> Vec<u128> {
        let q = self.q() as u128;
        (0..self.n)
            .map(|r| self.generator.row(r).iter().rev().fold(0u128, |acc, &d| acc * q + d as u128))
            .collect()
    }
}

pub fn lift(x: &Matrix) -> LiftedSubspace {
    let n = x.rows();
    let generator = Matrix::identity(x.q(), n).hstack(x).expect("same row count");
    LiftedSubspace { generator, n }
}

/// Lifts `C^T`, the transposed matrix expansion of `word`.
pub fn lift_word(word: &RankWord) -> LiftedSubspace {
    lift(&word.to_matrix().transpose())
}

/// Subspace distance, computed from the stacked generators and checked
/// against `2 rank(X - Y)`.
pub fn lifted_distance(a: &LiftedSubspace, b: &LiftedSubspace) -> Result<usize> {
    if a.q() != b.q() || a.n != b.n || a.m() != b.m() {
        return Err(Error::ShapeMismatch);
    }
    let stacked = a.generator.vstack(&b.generator)?.rank();
    let from_stack = 2 * stacked - 2 * a.n;
    let from_payload = 2 * a.payload().sub(&b.payload())?.rank();
    if from_stack != from_payload {
        return Err(Error::Inconsistent("subspace distance disagrees with payload rank"));
    }
    Ok(from_stack)
}

/// The lifts of all codewords, in message order.
pub fn lift_code(code: &GabidulinCode, budget: u64) -> Result<Vec<LiftedSubspace>> {
    let budget = budget.min(LIFT_BUDGET);
    let mut out = Vec::new();
    code.for_each_codeword(budget, |_, c| out.push(lift_word(c)))?;
    Ok(out)
}

/// Lower bound on the lifted list size for the instance kind, at
/// subspace radius `tau_s`.
pub fn lifted_bound(inst: &InstanceClaim, tau_s: usize) -> BigRational {
    let q = inst.code.field().characteristic();
    let n = inst.code.n() as i64;
    let t = (tau_s / 2) as u32;
    match inst.kind {
        InstanceKind::Explicit => {
            let num = BigUint::from(q).pow(n as u32) - 1u32;
            let den = BigUint::from(q).pow(t) - 1u32;
            if den == BigUint::default() {
                return BigRational::from_integer(0.into());
            }
            BigRational::new(num.into(), den.into())
        }
        InstanceKind::Counting => {
            let exp = n - t as i64 * (inst.ell as i64 + 1);
            let p = BigUint::from(q).pow(exp.unsigned_abs() as u32);
            if exp >= 0 {
                BigRational::from_integer(p.into())
            } else {
                BigRational::new(1.into(), p.into())
            }
        }
    }
}

/// Lifts an instance and checks it at subspace radius `tau_s`.
pub fn verify_lifted_instance(inst: &InstanceClaim, tau_s: usize, ball_budget: u64) -> VerificationReport {
    let mut rep = VerificationReport::default();
    let center = lift_word(&inst.center);
    let mut dists = Vec::with_capacity(inst.codewords.len());
    let mut failure = None;
    for cw in &inst.codewords {
        match lifted_distance(&center, &lift_word(cw)) {
            Ok(d) => dists.push(d),
            Err(e) => failure = Some(e),
        }
    }
    if let Some(e) = failure {
        rep.push("lifted_distances", false, format!("{e}"));
        return rep;
    }
    let within = dists.iter().filter(|&&d| d <= tau_s).count();
    rep.push(
        "lifted_containment",
        within == dists.len(),
        format!("{} of {} lifted codewords within {}", within, dists.len(), tau_s),
    );
    rep.push(
        "lifted_distances_doubled",
        dists.iter().all(|&d| d == 2 * inst.tau),
        format!(
            "expected {} min={} max={}",
            2 * inst.tau,
            show(dists.iter().min().copied()),
            show(dists.iter().max().copied())
        ),
    );
    let bound = lifted_bound(inst, tau_s);
    rep.push(
        "lifted_bound",
        BigRational::from_integer(within.into()) >= bound,
        format!("within={} bound={}", within, bound),
    );
    let code = &inst.code;
    if code.size() <= ball_budget as u128 {
        let rank_ball = code.enumerate_ball(&inst.center, tau_s / 2, ball_budget).map(|b| b.len());
        let mut lifted_ball = 0usize;
        let scan = code.for_each_codeword(ball_budget, |_, c| {
            if lifted_distance(&center, &lift_word(c)).is_ok_and(|d| d <= tau_s) {
                lifted_ball += 1;
            }
        });
        match (rank_ball, scan) {
            (Ok(r), Ok(())) => rep.push(
                "ball_relation",
                r <= lifted_ball,
                format!("rank_ball={} lifted_ball={}", r, lifted_ball),
            ),
            (Err(e), _) | (_, Err(e)) => rep.push("ball_relation", false, format!("{e}")),
        }
    } else {
        rep.skip("ball_relation", format!("code size {} exceeds budget {}", code.size(), ball_budget));
    }
    rep
}

/// `[n, ⌊τ_s/2⌋]_q / q^(m(n-k-⌊τ_s/2⌋))`.
pub fn prior_lifted_bound(q: u32, n: u32, m: u32, k: u32, tau_s: u32) -> Result<BigRational> {
    let t = tau_s / 2;
    let d = n + 1 - k;
    if t >= d {
        return Err(Error::RadiusTooLarge { tau: t, d });
    }
    let num = gaussian_binomial(n, t, q as u64);
    let den = BigUint::from(q).pow(m * (n - k - t));
    Ok(BigRational::new(num.into(), den.into()))
}
