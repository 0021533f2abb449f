//! Arithmetic in GF(q^e) for a prime `q`.
//!
//! Elements are packed as the integer `sum(c_i * q^i)` of their coordinates
//! in the polynomial basis `1, x, ..., x^(e-1)`; that integer is also the
//! serial used by every file format. Operations go through the owning
//! [`Field`], which is immutable once built.
//!
//! Multiplication is schoolbook with modular reduction. Fields with at most
//! 2^16 elements additionally carry log/antilog tables built at
//! construction; [`Field::mul`] uses them and [`Field::mul_schoolbook`]
//! stays available for cross-checking.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith;
use crate::gfq::{self, upoly};
use crate::{Error, Result};

const TABLE_LIMIT: u64 = 1 << 16;
// Monic candidates of degree <= e/2 tried by trial division before
// switching to Rabin's test.
const TRIAL_DIVISION_LIMIT: u64 = 1 << 16;

/// A field element, packed as its base-q serial.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(u64);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn serial(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct LogTables {
    exp: Vec<u64>,
    log: Vec<u32>,
}

/// GF(q^e) defined by a monic irreducible modulus over GF(q).
pub struct Field {
    q: u32,
    e: u32,
    size: u64,
    modulus: Vec<u32>,
    x_is_primitive: bool,
    gamma: Elem,
    group_factors: Vec<u64>,
    tables: Option<LogTables>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("q", &self.q)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .field("x_is_primitive", &self.x_is_primitive)
            .finish()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.q, self.e)
    }
}

// a * b mod f on coordinate vectors of length e.
fn mulmod_digits(a: &[u32], b: &[u32], f: &[u32], q: u32) -> Vec<u32> {
    let e = f.len() - 1;
    let mut r = vec![0u64; 2 * e];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x as u64 * y as u64) % q as u64;
        }
    }
    for d in (e..2 * e).rev() {
        let c = r[d];
        if c == 0 {
            continue;
        }
        for (k, &fk) in f.iter().enumerate() {
            let idx = d - e + k;
            r[idx] = (r[idx] + (q as u64 - c) * fk as u64) % q as u64;
        }
    }
    r.truncate(e);
    r.into_iter().map(|v| v as u32).collect()
}

fn powmod_digits(base: &[u32], mut exp: u64, f: &[u32], q: u32) -> Vec<u32> {
    let e = f.len() - 1;
    let mut acc = vec![0u32; e];
    acc[0] = 1;
    let mut b = base.to_vec();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_digits(&acc, &b, f, q);
        }
        b = mulmod_digits(&b, &b, f, q);
        exp >>= 1;
    }
    acc
}

// The residue class of x modulo f, as a coordinate vector.
fn x_residue(f: &[u32], q: u32) -> Vec<u32> {
    let e = f.len() - 1;
    let mut x = vec![0u32; e];
    if e == 1 {
        x[0] = gfq::sub(0, f[0], q);
    } else {
        x[1] = 1;
    }
    x
}

fn is_irreducible_trial(f: &[u32], q: u32) -> bool {
    let e = f.len() - 1;
    for d in 1..=e / 2 {
        let count = (q as u64).pow(d as u32);
        for low in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut v = low;
            for _ in 0..d {
                cand.push((v % q as u64) as u32);
                v /= q as u64;
            }
            cand.push(1);
            if upoly::rem(f, &cand, q).is_empty() {
                return false;
            }
        }
    }
    true
}

// Rabin: f of degree e is irreducible iff x^(q^e) = x mod f and
// gcd(x^(q^(e/p)) - x, f) = 1 for every prime p | e.
fn is_irreducible_rabin(f: &[u32], q: u32) -> bool {
    let e = f.len() - 1;
    let x = x_residue(f, q);
    let mut frob = vec![x.clone()];
    for _ in 0..e {
        let last = frob.last().unwrap();
        frob.push(powmod_digits(last, q as u64, f, q));
    }
    if frob[e] != x {
        return false;
    }
    for p in arith::prime_factors(e as u64) {
        let h = &frob[e / p as usize];
        let diff: Vec<u32> = h.iter().zip(&x).map(|(&a, &b)| gfq::sub(a, b, q)).collect();
        let g = upoly::gcd(f, &diff, q);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn trial_division_candidates(q: u32, e: u32) -> u64 {
    let mut total = 0u64;
    for d in 1..=e / 2 {
        match (q as u64).checked_pow(d) {
            Some(c) => total = total.saturating_add(c),
            None => return u64::MAX,
        }
    }
    total
}

impl Field {
    /// Builds GF(q^e) from a monic modulus of degree `e` (ascending
    /// coefficients) and certifies that it is irreducible.
    pub fn new(q: u32, modulus: &[u32]) -> Result<Field> {
        if !arith::is_prime(q as u64) {
            return Err(Error::NotPrime(q));
        }
        if modulus.len() < 2 {
            return Err(Error::BadParameters("modulus must have degree >= 1"));
        }
        if modulus.iter().any(|&c| c >= q) || *modulus.last().unwrap() != 1 {
            return Err(Error::BadParameters("modulus must be monic with entries below q"));
        }
        let e = (modulus.len() - 1) as u32;
        let size = (q as u64).checked_pow(e).ok_or(Error::FieldTooLarge { q, e })?;
        let irreducible = if e == 1 {
            true
        } else if trial_division_candidates(q, e) <= TRIAL_DIVISION_LIMIT {
            is_irreducible_trial(modulus, q)
        } else {
            is_irreducible_rabin(modulus, q)
        };
        if !irreducible {
            return Err(Error::NotIrreducible);
        }
        let mut field = Field {
            q,
            e,
            size,
            modulus: modulus.to_vec(),
            x_is_primitive: false,
            gamma: Elem::ZERO,
            group_factors: arith::prime_factors(size - 1),
            tables: None,
        };
        let x = field.from_digits(&x_residue(modulus, q));
        field.x_is_primitive = field.has_full_order(x);
        field.gamma = if field.x_is_primitive {
            x
        } else {
            (1..size)
                .map(Elem)
                .find(|&a| field.has_full_order(a))
                .expect("a finite field has a primitive element")
        };
        if size <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    fn has_full_order(&self, a: Elem) -> bool {
        if a.is_zero() {
            return false;
        }
        let n = self.size - 1;
        self.pow_schoolbook(a, n) == Elem::ONE
            && self.group_factors.iter().all(|&p| self.pow_schoolbook(a, n / p) != Elem::ONE)
    }

    fn build_tables(&self) -> LogTables {
        let n = (self.size - 1) as usize;
        let mut exp = vec![0u64; 2 * n.max(1)];
        let mut log = vec![0u32; self.size as usize];
        let mut cur = Elem::ONE;
        for (i, e) in exp.iter_mut().enumerate().take(n) {
            *e = cur.0;
            log[cur.0 as usize] = i as u32;
            cur = self.mul_schoolbook(cur, self.gamma);
        }
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }
        LogTables { exp, log }
    }

    pub fn characteristic(&self) -> u32 {
        self.q
    }

    /// Extension degree `e` over the prime field.
    pub fn degree(&self) -> u32 {
        self.e
    }

    /// Number of elements `q^e`.
    pub fn order(&self) -> u64 {
        self.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Whether the residue class of `x` generates the multiplicative group.
    pub fn is_primitive(&self) -> bool {
        self.x_is_primitive
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    /// The fixed primitive element `γ` (the class of `x` when the modulus is
    /// primitive).
    pub fn primitive_element(&self) -> Elem {
        self.gamma
    }

    pub fn elem(&self, serial: u64) -> Result<Elem> {
        if serial < self.size {
            Ok(Elem(serial))
        } else {
            Err(Error::InvalidElement(serial))
        }
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.0 < self.size
    }

    /// All elements in serial order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.size).map(Elem)
    }

    /// Image of a prime-field residue.
    pub fn from_prime(&self, c: u32) -> Elem {
        Elem((c % self.q) as u64)
    }

    pub fn digits(&self, a: Elem) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.e as usize);
        let mut v = a.0;
        for _ in 0..self.e {
            out.push((v % self.q as u64) as u32);
            v /= self.q as u64;
        }
        out
    }

    /// Packs coordinates; entries are reduced mod q and missing high
    /// coordinates are zero.
    pub fn from_digits(&self, digits: &[u32]) -> Elem {
        debug_assert!(digits.len() <= self.e as usize);
        let mut v = 0u64;
        for &d in digits.iter().rev() {
            v = v * self.q as u64 + (d % self.q) as u64;
        }
        Elem(v)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.q == 2 {
            return Elem(a.0 ^ b.0);
        }
        let q = self.q as u64;
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u64, 1u64);
        while x > 0 || y > 0 {
            out += ((x % q + y % q) % q) * place;
            x /= q;
            y /= q;
            place = place.wrapping_mul(q);
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.q == 2 {
            return a;
        }
        let q = self.q as u64;
        let (mut x, mut out, mut place) = (a.0, 0u64, 1u64);
        while x > 0 {
            out += ((q - x % q) % q) * place;
            x /= q;
            place = place.wrapping_mul(q);
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// Multiplies by a prime-field scalar.
    pub fn scale(&self, a: Elem, c: u32) -> Elem {
        let c = c % self.q;
        match c {
            0 => Elem::ZERO,
            1 => a,
            _ => {
                let d: Vec<u32> = self.digits(a).iter().map(|&x| gfq::mul(x, c, self.q)).collect();
                self.from_digits(&d)
            }
        }
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let i = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
                Elem(t.exp[i])
            }
            None => self.mul_schoolbook(a, b),
        }
    }

    /// Polynomial multiplication followed by reduction modulo the modulus.
    pub fn mul_schoolbook(&self, a: Elem, b: Elem) -> Elem {
        if self.q == 2 {
            let e = self.e;
            let mut acc: u128 = 0;
            let (x, mut y) = (a.0 as u128, b.0);
            let mut shift = 0;
            while y > 0 {
                if y & 1 == 1 {
                    acc ^= x << shift;
                }
                y >>= 1;
                shift += 1;
            }
            let m: u128 = self.modulus.iter().rev().fold(0u128, |v, &c| (v << 1) | c as u128);
            for d in (e..2 * e).rev() {
                if (acc >> d) & 1 == 1 {
                    acc ^= m << (d - e);
                }
            }
            return Elem(acc as u64);
        }
        let r = mulmod_digits(&self.digits(a), &self.digits(b), &self.modulus, self.q);
        self.from_digits(&r)
    }

    fn pow_schoolbook(&self, a: Elem, mut exp: u64) -> Elem {
        let mut acc = Elem::ONE;
        let mut base = a;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_schoolbook(acc, base);
            }
            base = self.mul_schoolbook(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn pow(&self, a: Elem, exp: u64) -> Elem {
        if exp == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let mut exp = exp % (self.size - 1);
        if let Some(t) = &self.tables {
            let i = (t.log[a.0 as usize] as u128 * exp as u128) % (self.size - 1) as u128;
            return Elem(t.exp[i as usize]);
        }
        let mut acc = Elem::ONE;
        let mut base = a;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.is_zero() {
            return None;
        }
        Some(self.pow(a, self.size - 2))
    }

    /// `a / b`, or `None` when `b` is zero.
    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        Some(self.mul(a, self.inv(b)?))
    }

    /// `a^(q^i)`; the map is the identity when `e | i`.
    pub fn frobenius(&self, a: Elem, i: usize) -> Elem {
        let i = (i % self.e as usize) as u32;
        self.pow(a, (self.q as u64).pow(i))
    }

    /// Discrete logarithm to base `γ`.
    pub fn log(&self, a: Elem) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        if let Some(t) = &self.tables {
            return Some(t.log[a.0 as usize] as u64);
        }
        let mut cur = Elem::ONE;
        for i in 0..self.size - 1 {
            if cur == a {
                return Some(i);
            }
            cur = self.mul(cur, self.gamma);
        }
        None
    }

    /// `γ^((q^e - 1) / (q^g - 1))`, which generates the subfield GF(q^g).
    pub fn subfield_generator(&self, g: u32) -> Result<Elem> {
        if g == 0 || !self.e.is_multiple_of(g) {
            return Err(Error::NotASubfield { sub: g, ext: self.e });
        }
        let sub_order = (self.q as u64).pow(g) - 1;
        Ok(self.pow(self.gamma, (self.size - 1) / sub_order))
    }

    /// The q^g elements of the subfield GF(q^g), zero first, then powers of
    /// its generator.
    pub fn subfield_elements(&self, g: u32) -> Result<Vec<Elem>> {
        let w = self.subfield_generator(g)?;
        let count = (self.q as u64).pow(g);
        let mut out = Vec::with_capacity(count as usize);
        out.push(Elem::ZERO);
        let mut cur = Elem::ONE;
        for _ in 1..count {
            out.push(cur);
            cur = self.mul(cur, w);
        }
        Ok(out)
    }

    /// Whether `a` lies in GF(q^g).
    pub fn in_subfield(&self, a: Elem, g: u32) -> bool {
        self.frobenius(a, g as usize) == a
    }

    /// Evaluates a polynomial with prime-field coefficients at `a`.
    pub fn eval_prime_poly(&self, coeffs: &[u32], a: Elem) -> Elem {
        coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| {
            self.add(self.mul(acc, a), self.from_prime(c))
        })
    }
}

/// A fixed injective ring homomorphism GF(q^n) -> GF(q^m), `n | m`.
///
/// The source generator `x` is sent to `γ_m^(t (q^m-1)/(q^n-1))` for the
/// smallest `t >= 1` whose image is a root of the source modulus; with
/// compatible table moduli this is `t = 1`.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Arc<Field>,
    target: Arc<Field>,
    image: Elem,
    basis_images: Vec<Elem>,
}

impl Embedding {
    pub fn new(source: &Arc<Field>, target: &Arc<Field>) -> Result<Embedding> {
        if source.q != target.q {
            return Err(Error::FieldMismatch);
        }
        if !target.e.is_multiple_of(source.e) {
            return Err(Error::NotASubfield { sub: source.e, ext: target.e });
        }
        let image = if **source == **target {
            target.from_digits(&x_residue(&target.modulus, target.q))
        } else {
            let base = target.pow(target.gamma, (target.size - 1) / (source.size - 1));
            let mut w = base;
            loop {
                if target.eval_prime_poly(&source.modulus, w).is_zero() {
                    break w;
                }
                w = target.mul(w, base);
                debug_assert!(w != base, "source modulus has no root in the target");
            }
        };
        let mut basis_images = Vec::with_capacity(source.e as usize);
        let mut cur = Elem::ONE;
        for _ in 0..source.e {
            basis_images.push(cur);
            cur = target.mul(cur, image);
        }
        Ok(Embedding { source: source.clone(), target: target.clone(), image, basis_images })
    }

    pub fn source(&self) -> &Arc<Field> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Field> {
        &self.target
    }

    /// Image of the class of `x` in the source.
    pub fn image_of_generator(&self) -> Elem {
        self.image
    }

    pub fn apply(&self, a: Elem) -> Elem {
        let t = &self.target;
        self.source
            .digits(a)
            .iter()
            .zip(&self.basis_images)
            .fold(Elem::ZERO, |acc, (&d, &b)| t.add(acc, t.scale(b, d)))
    }
}

/// `φ(x)` for the fixed embedding from `source` into `target`.
pub fn embed(x: Elem, source: &Arc<Field>, target: &Arc<Field>) -> Result<Elem> {
    Ok(Embedding::new(source, target)?.apply(x))
}

/// Irreducible moduli keyed by `(q, e)`.
///
/// The built-in table holds a primitive polynomial for every `q` in
/// {2, 3, 5} and `e <= 24`. Text format: one `q e c_0 ... c_e` entry per
/// line, `#` starts a comment.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModulusTable {
    entries: BTreeMap<(u32, u32), Vec<u32>>,
}

const BUILTIN_TABLE: &str = include_str!("../data/moduli.txt");

impl ModulusTable {
    pub fn builtin() -> ModulusTable {
        Self::parse(BUILTIN_TABLE).expect("built-in modulus table is well formed")
    }

    pub fn builtin_text() -> &'static str {
        BUILTIN_TABLE
    }

    pub fn parse(text: &str) -> Result<ModulusTable> {
        let mut table = ModulusTable::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let nums: core::result::Result<Vec<u32>, _> =
                line.split_whitespace().map(str::parse::<u32>).collect();
            let nums = nums.map_err(|_| Error::Parse { line: idx + 1, msg: "not an integer" })?;
            if nums.len() < 4 {
                return Err(Error::Parse { line: idx + 1, msg: "expected q e c_0 .. c_e" });
            }
            let (q, e) = (nums[0], nums[1]);
            if nums.len() != e as usize + 3 {
                return Err(Error::Parse { line: idx + 1, msg: "wrong coefficient count" });
            }
            table.entries.insert((q, e), nums[2..].to_vec());
        }
        Ok(table)
    }

    pub fn get(&self, q: u32, e: u32) -> Option<&[u32]> {
        self.entries.get(&(q, e)).map(Vec::as_slice)
    }

    pub fn insert(&mut self, q: u32, modulus: Vec<u32>) {
        let e = modulus.len().saturating_sub(1) as u32;
        self.entries.insert((q, e), modulus);
    }

    /// Entries from `other` replace ours.
    pub fn merge(&mut self, other: ModulusTable) {
        self.entries.extend(other.entries);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn field(&self, q: u32, e: u32) -> Result<Arc<Field>> {
        if !arith::is_prime(q as u64) {
            return Err(Error::NotPrime(q));
        }
        if e == 0 {
            return Err(Error::BadParameters("extension degree must be positive"));
        }
        let modulus = self.get(q, e).ok_or(Error::NoModulusKnown { q, e })?;
        Field::new(q, modulus).map(Arc::new)
    }
}

/// GF(q^e) from the built-in table.
pub fn make_field(q: u32, e: u32) -> Result<Arc<Field>> {
    ModulusTable::builtin().field(q, e)
}
