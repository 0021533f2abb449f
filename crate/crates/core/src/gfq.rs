//! Linear algebra over a prime field GF(q).
//!
//! Entries are stored as `u32` residues in `[0, q)`. Row echelon forms put
//! the pivot of each row at its first nonzero column, pivots strictly
//! increasing, with every pivot column cleared elsewhere.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

#[inline]
pub fn add(a: u32, b: u32, q: u32) -> u32 {
    ((a as u64 + b as u64) % q as u64) as u32
}

#[inline]
pub fn sub(a: u32, b: u32, q: u32) -> u32 {
    ((a as u64 + q as u64 - b as u64) % q as u64) as u32
}

#[inline]
pub fn mul(a: u32, b: u32, q: u32) -> u32 {
    ((a as u64 * b as u64) % q as u64) as u32
}

pub fn inv(a: u32, q: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(q));
    let mut acc = 1u64;
    let mut base = a as u64 % q as u64;
    let mut e = q - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % q as u64;
        }
        base = base * base % q as u64;
        e >>= 1;
    }
    acc as u32
}

/// Dense row-major matrix over GF(q).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    q: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(q: u32, rows: usize, cols: usize) -> Self {
        Matrix { q, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(q: u32, n: usize) -> Self {
        let mut m = Self::zeros(q, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries below `q`.
    pub fn from_rows(q: u32, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::ShapeMismatch);
            }
            if row.iter().any(|&x| x >= q) {
                return Err(Error::BadParameters("matrix entry not reduced mod q"));
            }
            data.extend_from_slice(row);
        }
        Ok(Matrix { q, rows: rows.len(), cols, data })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.q;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.q, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.q != other.q || self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch);
        }
        let q = self.q;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| sub(a, b, q)).collect();
        Ok(Matrix { q, rows: self.rows, cols: self.cols, data })
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.q != other.q || self.rows != other.rows {
            return Err(Error::ShapeMismatch);
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(Matrix { q: self.q, rows: self.rows, cols, data })
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.q != other.q || self.cols != other.cols {
            return Err(Error::ShapeMismatch);
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { q: self.q, rows: self.rows + other.rows, cols: self.cols, data })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduces in place to reduced row echelon form and drops zero rows.
    /// Returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let q = self.q;
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..self.cols {
            if lead == self.rows {
                break;
            }
            let Some(p) = (lead..self.rows).find(|&r| self.get(r, c) != 0) else {
                continue;
            };
            self.swap_rows(lead, p);
            let iv = inv(self.get(lead, c), q);
            for j in c..self.cols {
                let v = mul(self.get(lead, j), iv, q);
                self.set(lead, j, v);
            }
            for r in 0..self.rows {
                if r == lead {
                    continue;
                }
                let factor = self.get(r, c);
                if factor == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = sub(self.get(r, j), mul(factor, self.get(lead, j), q), q);
                    self.set(r, j, v);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        self.rows = lead;
        self.data.truncate(lead * self.cols);
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let q = self.q;
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = sub(0, m.get(r, free), q);
            }
            basis.push(v);
        }
        basis
    }
}

/// Incrementally maintained reduced row echelon basis.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    q: u32,
    cols: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(q: u32, cols: usize) -> Self {
        EchelonBasis { q, cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Rows sorted by pivot column.
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Reduces `v` against the basis; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let q = self.q;
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = sub(*x, mul(c, y, q), q);
                }
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        let q = self.q;
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let iv = inv(v[p], q);
        for x in v.iter_mut() {
            *x = mul(*x, iv, q);
        }
        for row in self.rows.iter_mut() {
            let c = row[p];
            if c != 0 {
                for (x, &y) in row.iter_mut().zip(&v) {
                    *x = sub(*x, mul(c, y, q), q);
                }
            }
        }
        let at = self.pivots.partition_point(|&x| x < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }
}

/// Dense polynomials over GF(q), ascending coefficients, used for modulus
/// certification.
pub(crate) mod upoly {
    use alloc::vec::Vec;

    use super::{inv, mul, sub};

    pub fn trim(p: &mut Vec<u32>) {
        while p.last() == Some(&0) {
            p.pop();
        }
    }

    /// Remainder of `a` modulo `f` (`f` nonzero).
    pub fn rem(a: &[u32], f: &[u32], q: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut f = f.to_vec();
        trim(&mut f);
        let df = f.len() - 1;
        let lead_inv = inv(f[df], q);
        while r.len() > df {
            let top = r.len() - 1;
            let c = mul(r[top], lead_inv, q);
            for (k, &fk) in f.iter().enumerate() {
                let idx = top - df + k;
                r[idx] = sub(r[idx], mul(c, fk, q), q);
            }
            trim(&mut r);
        }
        r
    }

    pub fn gcd(a: &[u32], b: &[u32], q: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, q);
            a = b;
            b = r;
        }
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_rank_over_gf3() {
        let m = Matrix::from_rows(3, 3, &[vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]]).unwrap();
        // row 2 = 2 * row 1 mod 3
        assert_eq!(m.rank(), 2);
        let mut r = m.clone();
        assert_eq!(r.rref(), [0, 2]);
        assert_eq!(r.to_rows(), [vec![1, 2, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let q = 5;
        let m = Matrix::from_rows(q, 4, &[vec![1, 2, 3, 4], vec![0, 1, 1, 1]]).unwrap();
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            for r in 0..m.rows() {
                let dot = (0..4).fold(0, |acc, c| add(acc, mul(m.get(r, c), v[c], q), q));
                assert_eq!(dot, 0);
            }
        }
    }

    #[test]
    fn poly_gcd_over_gf2() {
        // (x+1)(x^2+x+1) and (x+1)x
        let a = [1, 0, 0, 1];
        let b = [0, 1, 1];
        assert_eq!(upoly::gcd(&a, &b, 2), [1, 1]);
    }
}
