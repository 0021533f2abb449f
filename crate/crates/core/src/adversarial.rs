//! Adversarial list-decoding instances for Gabidulin codes.
//!
//! An instance is a center word `c_R = (R(α_1), ..., R(α_n))` with
//! `deg_q R >= k`, together with the codewords `c_{R - P}` for every `P` in
//! a family of subspace polynomials sharing the top coefficients of `R`.
//! Each such codeword lies at rank distance exactly `τ` from the center.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

use crate::constructions::{self, PolyFamily};
use crate::field::{Elem, ModulusTable};
use crate::gabidulin::{ceil_ratio, rank_distance, GabidulinCode, RankWord};
use crate::linpoly::LinearizedPoly;
use crate::subspace::gaussian_binomial;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceKind {
    Counting,
    Explicit,
}

impl InstanceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            InstanceKind::Counting => "counting",
            InstanceKind::Explicit => "explicit",
        }
    }
}

#[derive(Clone, Debug)]
pub struct AdversarialInstance {
    pub kind: InstanceKind,
    pub code: GabidulinCode,
    pub tau: usize,
    pub g: u32,
    pub s: u32,
    pub ell: u32,
    pub pivot: LinearizedPoly,
    pub center: RankWord,
    pub family: PolyFamily,
    pub codewords: Vec<RankWord>,
    pub claimed_bound: BigUint,
    /// The claimed bound is below two, so the instance says nothing.
    pub degenerate: bool,
}

/// Evaluates `p` at the evaluation points of `code`, regardless of degree.
pub fn evaluate_word(code: &GabidulinCode, p: &LinearizedPoly) -> Result<RankWord> {
    if **p.field() != **code.field() {
        return Err(Error::FieldMismatch);
    }
    RankWord::new(code.field(), code.eval_points().iter().map(|&a| p.eval(a)).collect())
}

/// Polynomial with `top` at indices `r, r-1, ...` and zeros below.
fn pivot_from_top(family: &PolyFamily) -> LinearizedPoly {
    let r = family.params.r as usize;
    let mut c = vec![Elem::ZERO; r + 1];
    for (i, &a) in family.mutual_top.iter().enumerate() {
        c[r - i] = a;
    }
    LinearizedPoly::new(&family.field, c).expect("coefficients come from the family field")
}

fn assemble(
    kind: InstanceKind,
    code: GabidulinCode,
    tau: usize,
    (g, s, ell): (u32, u32, u32),
    family: PolyFamily,
    claimed_bound: BigUint,
) -> Result<AdversarialInstance> {
    let pivot = pivot_from_top(&family);
    let center = evaluate_word(&code, &pivot)?;
    let codewords = family
        .members
        .iter()
        .map(|p| code.encode(&pivot.sub(p)?))
        .collect::<Result<Vec<_>>>()?;
    let degenerate = family.degenerate || claimed_bound < BigUint::from(2u32);
    Ok(AdversarialInstance {
        kind,
        code,
        tau,
        g,
        s,
        ell,
        pivot,
        center,
        family,
        codewords,
        claimed_bound,
        degenerate,
    })
}

/// Smallest `τ` with `⌊(d-1)/2⌋ + 1 <= τ <= d - 1`, `g | τ` and `g | n`.
pub fn smallest_counting_radius(n: u32, k: u32, g: u32) -> Result<u32> {
    let d = n + 1 - k;
    if g == 0 || !n.is_multiple_of(g) {
        return Err(Error::NoValidRadius);
    }
    ((d - 1) / 2 + 1..d).find(|t| t % g == 0).ok_or(Error::NoValidRadius)
}

/// Instance from the largest pigeonhole class of 𝒞_g.
pub fn build_counting_instance(
    table: &ModulusTable,
    q: u32,
    n: u32,
    m: u32,
    k: u32,
    g: u32,
    beta_exponent: u64,
) -> Result<AdversarialInstance> {
    if g < 2 {
        return Err(Error::DivisibilityViolation("g must be at least 2"));
    }
    let code = GabidulinCode::new(table, q, n, m, k, beta_exponent)?;
    let tau = smallest_counting_radius(n, k, g)?;
    let ell = tau / g - 1;
    let r = n - tau;
    let small = table.field(q, n)?;
    let cg = constructions::construct_cg(&small, r, g)?;
    let class = constructions::pigeonhole_family(&cg, ell)?;
    let family = constructions::shift_family(&class, code.beta(), code.field())?;
    let bound = bound_counting(q, n, g, tau)?;
    assemble(
        InstanceKind::Counting,
        code,
        tau as usize,
        (g, tau / g, ell),
        family,
        ceil_ratio(&bound.exact),
    )
}

/// Instance from 𝒵 with pivot `x^[n - gs]` for Gab[n, n - 2gs + 1].
pub fn build_explicit_instance(
    table: &ModulusTable,
    q: u32,
    g: u32,
    s: u32,
    n: u32,
    m: u32,
    beta_exponent: u64,
) -> Result<AdversarialInstance> {
    if g < 2 || s == 0 {
        return Err(Error::DivisibilityViolation("need g >= 2 and s >= 1"));
    }
    let gs = g * s;
    if !n.is_multiple_of(gs) {
        return Err(Error::DivisibilityViolation("g s must divide n"));
    }
    if n < 2 * gs {
        return Err(Error::DivisibilityViolation("need n >= 2 g s"));
    }
    let k = n - 2 * gs + 1;
    let code = GabidulinCode::new(table, q, n, m, k, beta_exponent)?;
    let small = table.field(q, n)?;
    let z = constructions::construct_z(&small, g, s)?;
    let family = constructions::shift_family(&z, code.beta(), code.field())?;
    let bound = (BigUint::from(q).pow(n) - 1u32) / (BigUint::from(q).pow(gs) - 1u32);
    assemble(InstanceKind::Explicit, code, gs as usize, (g, s, s - 1), family, bound)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped => "skipped",
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn push(&mut self, name: &'static str, ok: bool, detail: String) {
        self.checks.push(Check { name, status: CheckStatus::from_bool(ok), detail });
    }

    pub fn skip(&mut self, name: &'static str, detail: String) {
        self.checks.push(Check { name, status: CheckStatus::Skipped, detail });
    }

    /// No check failed.
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// The checkable content of an instance: what is claimed about the code,
/// without the family that produced it.
#[derive(Clone, Debug)]
pub struct InstanceClaim {
    pub kind: InstanceKind,
    pub code: GabidulinCode,
    pub tau: usize,
    pub ell: u32,
    /// When present, the center must be its evaluation.
    pub pivot: Option<LinearizedPoly>,
    pub center: RankWord,
    pub codewords: Vec<RankWord>,
    pub claimed_bound: BigUint,
}

impl AdversarialInstance {
    pub fn claim(&self) -> InstanceClaim {
        InstanceClaim {
            kind: self.kind,
            code: self.code.clone(),
            tau: self.tau,
            ell: self.ell,
            pivot: Some(self.pivot.clone()),
            center: self.center.clone(),
            codewords: self.codewords.clone(),
            claimed_bound: self.claimed_bound.clone(),
        }
    }
}

/// `-` for a missing value.
pub(crate) fn show(x: Option<usize>) -> String {
    x.map_or_else(|| String::from("-"), |v| format!("{v}"))
}

pub fn verify_instance(inst: &AdversarialInstance, ball_budget: u64) -> VerificationReport {
    verify_claim(&inst.claim(), ball_budget)
}

/// Re-derives every claim from the code alone. The ball oracle runs only
/// when the code has at most `ball_budget` codewords.
pub fn verify_claim(inst: &InstanceClaim, ball_budget: u64) -> VerificationReport {
    let code = &inst.code;
    let mut rep = VerificationReport::default();
    let d = code.d();

    let lo = (d - 1) / 2 + 1;
    rep.push(
        "radius_range",
        lo <= inst.tau && inst.tau < d,
        format!("tau={} d={} range=[{}, {}]", inst.tau, d, lo, d - 1),
    );

    let center_ok = code.solve_message(&inst.center);
    rep.push(
        "center_not_in_code",
        matches!(center_ok, Ok(None)),
        match center_ok {
            Ok(None) => String::from("no message of q-degree < k reproduces the center"),
            Ok(Some(_)) => String::from("center is a codeword"),
            Err(e) => format!("{e}"),
        },
    );

    if let Some(pivot) = &inst.pivot {
        let eval = evaluate_word(code, pivot);
        let ok = eval.as_ref().is_ok_and(|w| *w == inst.center);
        rep.push(
            "center_matches_pivot",
            ok && pivot.q_degree().is_some_and(|r| r >= code.k()),
            match eval {
                Ok(_) => format!("pivot q-degree {}, k={}", show(pivot.q_degree()), code.k()),
                Err(e) => format!("{e}"),
            },
        );
    }

    let mut non_codewords = Vec::new();
    for (i, cw) in inst.codewords.iter().enumerate() {
        if !matches!(code.solve_message(cw), Ok(Some(_))) {
            non_codewords.push(i);
        }
    }
    rep.push(
        "codewords_in_code",
        non_codewords.is_empty(),
        if non_codewords.is_empty() {
            format!("{} codewords decode to messages", inst.codewords.len())
        } else {
            format!("not codewords: {non_codewords:?}")
        },
    );

    let mut dists = Vec::with_capacity(inst.codewords.len());
    let mut dist_err = None;
    for cw in &inst.codewords {
        match rank_distance(&inst.center, cw) {
            Ok(x) => dists.push(x),
            Err(e) => dist_err = Some(e),
        }
    }
    let (lo_d, hi_d) = (dists.iter().min().copied(), dists.iter().max().copied());
    rep.push(
        "distances_exact",
        dist_err.is_none() && dists.iter().all(|&x| x == inst.tau),
        match dist_err {
            Some(e) => format!("{e}"),
            None => format!("tau={} min={} max={}", inst.tau, show(lo_d), show(hi_d)),
        },
    );

    let mut sorted: Vec<Vec<u64>> = inst.codewords.iter().map(RankWord::serials).collect();
    sorted.sort();
    let before = sorted.len();
    sorted.dedup();
    rep.push("codewords_distinct", sorted.len() == before, format!("{} distinct of {}", sorted.len(), before));

    let listed = BigUint::from(inst.codewords.len());
    rep.push(
        "list_size",
        listed >= inst.claimed_bound,
        format!("listed={} claimed_bound={}", listed, inst.claimed_bound),
    );

    if code.size() <= ball_budget as u128 {
        match code.enumerate_ball(&inst.center, inst.tau, ball_budget) {
            Ok(ball) => {
                let mut ball_serials: Vec<Vec<u64>> = ball.iter().map(RankWord::serials).collect();
                ball_serials.sort();
                let missing = sorted.iter().filter(|w| ball_serials.binary_search(w).is_err()).count();
                rep.push(
                    "ball_oracle",
                    missing == 0 && ball.len() >= inst.codewords.len(),
                    format!("ball_count={} listed={} missing={}", ball.len(), inst.codewords.len(), missing),
                );
            }
            Err(e) => rep.push("ball_oracle", false, format!("{e}")),
        }
    } else {
        rep.skip("ball_oracle", format!("code size {} exceeds budget {}", code.size(), ball_budget));
    }
    rep
}

/// Exact and simplified counting bounds for radius `τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingBound {
    pub ell: u32,
    /// `[n/g, (n-τ)/g]_{q^g} / q^(nℓ)`
    pub exact: BigRational,
    /// `q^(n - τ(ℓ+1))`
    pub simplified: BigRational,
}

fn q_power(q: u32, exp: i64) -> BigRational {
    let p = BigUint::from(q).pow(exp.unsigned_abs() as u32);
    if exp >= 0 {
        BigRational::from_integer(p.into())
    } else {
        BigRational::new(1.into(), p.into())
    }
}

pub fn bound_counting(q: u32, n: u32, g: u32, tau: u32) -> Result<CountingBound> {
    if g == 0 || tau == 0 || !tau.is_multiple_of(g) || !n.is_multiple_of(g) || tau > n {
        return Err(Error::DivisibilityViolation("need g | τ, g | n and 0 < τ <= n"));
    }
    let ell = tau / g - 1;
    let num = gaussian_binomial(n / g, (n - tau) / g, (q as u64).pow(g));
    let den = BigUint::from(q).pow(n * ell);
    let simplified = q_power(q, n as i64 - tau as i64 * (ell as i64 + 1));
    Ok(CountingBound { ell, exact: BigRational::new(num.into(), den.into()), simplified })
}

/// The parameter family `n = α_n g`, `τ = α_τ g`, `k = n - 2τ + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Example2 {
    pub n: u32,
    pub tau: u32,
    pub k: u32,
    pub rate: BigRational,
    /// `(α_n - α_τ^2) g`
    pub bound_exponent: u32,
    pub bound: BigUint,
}

pub fn example2_parameters(q: u32, alpha_n: u32, alpha_tau: u32, g: u32) -> Result<Example2> {
    if g < 2 {
        return Err(Error::ConstraintViolation("g must be at least 2"));
    }
    if alpha_n < alpha_tau * alpha_tau + 1 {
        return Err(Error::ConstraintViolation("need α_n >= α_τ^2 + 1"));
    }
    if alpha_n <= 2 * alpha_tau {
        return Err(Error::ConstraintViolation("need α_n > 2 α_τ"));
    }
    let n = alpha_n * g;
    let tau = alpha_tau * g;
    let k = n - 2 * tau + 1;
    let rate = BigRational::new(k.into(), n.into());
    let bound_exponent = (alpha_n - alpha_tau * alpha_tau) * g;
    Ok(Example2 { n, tau, k, rate, bound_exponent, bound: BigUint::from(q).pow(bound_exponent) })
}

/// `1 - sqrt(1 - x)` without cancellation.
fn one_minus_sqrt_one_minus(x: f64) -> f64 {
    x / (1.0 + libm::sqrt(1.0 - x))
}

/// `(1 - sqrt((2^i - 1)/2^i), 2^-(i+1))`; the first should exceed the second.
pub fn technical_inequality(i: u32) -> (f64, f64) {
    let x = libm::ldexp(1.0, -(i as i32));
    (one_minus_sqrt_one_minus(x), x / 2.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AppendixB {
    /// `n / 2^(i+1)`
    pub tau: f64,
    /// `n (1 - sqrt(1 - 2^-i + 2/n))`
    pub tau_prime: f64,
    /// The same without the `2/n` term.
    pub tau_prime_asymptotic: f64,
    pub tau_below: bool,
}

pub fn appendix_b_compare(i: u32, n: u64) -> Result<AppendixB> {
    if !n.is_power_of_two() || n < 8 {
        return Err(Error::BadParameters("n must be a power of two, at least 8"));
    }
    let log = n.trailing_zeros();
    if i < 1 || i > log - 2 {
        return Err(Error::BadParameters("need 1 <= i <= log2(n) - 2"));
    }
    let nf = n as f64;
    let x = libm::ldexp(1.0, -(i as i32));
    let tau = nf * x / 2.0;
    let tau_prime = nf * one_minus_sqrt_one_minus(x - 2.0 / nf);
    let tau_prime_asymptotic = nf * one_minus_sqrt_one_minus(x);
    Ok(AppendixB { tau, tau_prime, tau_prime_asymptotic, tau_below: tau < tau_prime })
}

/// Size bound for the Reed-Solomon analogue of the pigeonhole family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RsFamilyReport {
    /// `4 q^((r/g)(n-r) - nℓ)`
    pub bound: BigRational,
    /// `4 q^n`
    pub cap: BigUint,
    pub within_cap: bool,
    pub superpolynomial: bool,
}

pub fn rs_family_size_report(q: u32, n: u32, r: u32, g: u32) -> Result<RsFamilyReport> {
    if g == 0 || !n.is_multiple_of(g) || !r.is_multiple_of(g) || r >= n {
        return Err(Error::DivisibilityViolation("need g | gcd(n, r) and r < n"));
    }
    let ell = (n - r) / g - 1;
    let exp = (r / g) as i64 * (n - r) as i64 - n as i64 * ell as i64;
    let bound = q_power(q, exp) * BigRational::from_integer(4.into());
    let cap = BigUint::from(q).pow(n) * 4u32;
    let within_cap = bound <= BigRational::from_integer(cap.clone().into());
    Ok(RsFamilyReport { bound, cap, within_cap, superpolynomial: false })
}

/// A lower bound below one says nothing.
pub fn is_vacuous(x: &BigRational) -> bool {
    *x < BigRational::one()
}
