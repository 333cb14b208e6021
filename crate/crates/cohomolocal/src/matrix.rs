//! Dense matrices over Z/qZ, row-major.
//!
//! The carrier type for group elements, module maps and linear systems.
//! Matrices with zero rows or zero columns are permitted so that empty
//! generating sets and empty constraint systems have a uniform
//! representation.

use crate::error::{Error, Result};
use crate::ring::Modulus;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModMatrix {
    modulus: Modulus,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl ModMatrix {
    pub fn new(modulus: Modulus, rows: usize, cols: usize, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        let entries = entries.into_iter().map(|e| modulus.reduce(e)).collect();
        Ok(ModMatrix { modulus, rows, cols, entries })
    }

    pub fn from_rows(modulus: Modulus, cols: usize, rows: Vec<Vec<u64>>) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in &rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            entries.extend(r.iter().map(|&e| e % modulus.q()));
        }
        ModMatrix { modulus, rows: rows.len(), cols, entries }
    }

    pub fn zeros(modulus: Modulus, rows: usize, cols: usize) -> Self {
        ModMatrix { modulus, rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(modulus: Modulus, n: usize) -> Self {
        let mut m = Self::zeros(modulus, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1 % modulus.q();
        }
        m
    }

    pub fn scalar(modulus: Modulus, n: usize, lambda: u64) -> Self {
        let mut m = Self::zeros(modulus, n, n);
        for i in 0..n {
            m.entries[i * n + i] = lambda % modulus.q();
        }
        m
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.cols + j] = v % self.modulus.q();
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<u64> {
        self.row(i).to_vec()
    }

    pub fn col_vec(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.modulus, self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// Some(lambda) if the matrix is lambda * I.
    pub fn as_scalar(&self) -> Option<u64> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let d = self.get(0, 0);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { d } else { 0 };
                if self.get(i, j) != want {
                    return None;
                }
            }
        }
        Some(d)
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let q = self.modulus.q();
        let mut out = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = &other.entries[k * other.cols..(k + 1) * other.cols];
                let out_row = &mut out[i * other.cols..(i + 1) * other.cols];
                for (o, &b) in out_row.iter_mut().zip(orow) {
                    *o = (*o + a * b) % q;
                }
            }
        }
        ModMatrix { modulus: self.modulus, rows: self.rows, cols: other.cols, entries: out }
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        let q = self.modulus.q();
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a * b) % q)
            })
            .collect()
    }

    pub fn add(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let m = self.modulus;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| m.add(a, b))
            .collect();
        ModMatrix { modulus: m, rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let m = self.modulus;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| m.sub(a, b))
            .collect();
        ModMatrix { modulus: m, rows: self.rows, cols: self.cols, entries }
    }

    pub fn scale(&self, c: u64) -> ModMatrix {
        let m = self.modulus;
        let entries = self.entries.iter().map(|&a| m.mul(a, c)).collect();
        ModMatrix { modulus: m, rows: self.rows, cols: self.cols, entries }
    }

    pub fn transpose(&self) -> ModMatrix {
        let mut out = Self::zeros(self.modulus, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> ModMatrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.modulus, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Determinant via triangularization with minimal-valuation pivoting.
    pub fn det(&self) -> u64 {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return 1 % self.modulus.q();
        }
        let m = self.modulus;
        let mut a = self.clone();
        let mut sign_neg = false;
        for col in 0..n {
            // pivot: minimal valuation in column at or below the diagonal
            let mut best: Option<(usize, u32)> = None;
            for r in col..n {
                let v = m.valuation(a.get(r, col));
                if v < m.l() && best.map_or(true, |(_, bv)| v < bv) {
                    best = Some((r, v));
                }
            }
            let (prow, pval) = match best {
                Some(b) => b,
                None => return 0, // whole column below diagonal is zero
            };
            if prow != col {
                for j in 0..n {
                    let t = a.get(prow, j);
                    let s = a.get(col, j);
                    a.set(prow, j, s);
                    a.set(col, j, t);
                }
                sign_neg = !sign_neg;
            }
            let pivot = a.get(col, col);
            let unit = pivot / m.pow_p(pval);
            let unit_inv = m.inverse(unit).expect("odd part is a unit");
            for r in col + 1..n {
                let b = a.get(r, col);
                if b == 0 {
                    continue;
                }
                let mult = m.mul(b / m.pow_p(pval), unit_inv);
                for j in col..n {
                    let val = m.sub(a.get(r, j), m.mul(mult, a.get(col, j)));
                    a.set(r, j, val);
                }
            }
        }
        let mut d = 1u64;
        for i in 0..n {
            d = m.mul(d, a.get(i, i));
        }
        if sign_neg {
            m.neg(d)
        } else {
            d
        }
    }

    /// Inverse by unit-pivot Gauss-Jordan; None when det is not a unit.
    pub fn inverse(&self) -> Option<ModMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let m = self.modulus;
        let mut a = self.clone();
        let mut inv = Self::identity(m, n);
        for col in 0..n {
            let prow = (col..n).find(|&r| m.is_unit(a.get(r, col)))?;
            if prow != col {
                for j in 0..n {
                    let (x, y) = (a.get(prow, j), a.get(col, j));
                    a.set(prow, j, y);
                    a.set(col, j, x);
                    let (x, y) = (inv.get(prow, j), inv.get(col, j));
                    inv.set(prow, j, y);
                    inv.set(col, j, x);
                }
            }
            let piv_inv = m.inverse(a.get(col, col)).unwrap();
            for j in 0..n {
                a.set(col, j, m.mul(a.get(col, j), piv_inv));
                inv.set(col, j, m.mul(inv.get(col, j), piv_inv));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col);
                if f == 0 {
                    continue;
                }
                for j in 0..n {
                    let av = m.sub(a.get(r, j), m.mul(f, a.get(col, j)));
                    a.set(r, j, av);
                    let iv = m.sub(inv.get(r, j), m.mul(f, inv.get(col, j)));
                    inv.set(r, j, iv);
                }
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.modulus.is_unit(self.det())
    }

    /// Kronecker product; acts on the tensor product of the column spaces.
    pub fn kronecker(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.modulus, other.modulus);
        let (ra, ca) = (self.rows, self.cols);
        let (rb, cb) = (other.rows, other.cols);
        let mut out = Self::zeros(self.modulus, ra * rb, ca * cb);
        for i in 0..ra {
            for j in 0..ca {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..rb {
                    for l in 0..cb {
                        out.set(i * rb + k, j * cb + l, self.modulus.mul(a, other.get(k, l)));
                    }
                }
            }
        }
        out
    }

    /// Stacks rows of `self` above rows of `other`.
    pub fn vstack(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.modulus, other.modulus);
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        ModMatrix {
            modulus: self.modulus,
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Places `self` and `other` as diagonal blocks.
    pub fn direct_sum(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.modulus, other.modulus);
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        let mut out = Self::zeros(self.modulus, rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        out
    }
}

impl std::fmt::Debug for ModMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ModMatrix {}x{} over {}", self.rows, self.cols, self.modulus)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

impl std::fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            write!(f, "{}", row.join(","))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u64, l: u32) -> Modulus {
        Modulus::new(p, l).unwrap()
    }

    #[test]
    fn mul_and_pow() {
        let z5 = m(5, 1);
        let j = ModMatrix::new(z5, 2, 2, vec![1, 1, 0, 1]).unwrap();
        assert!(j.pow(5).is_identity());
        assert!(!j.pow(3).is_identity());
    }

    #[test]
    fn det_and_inverse() {
        let z4 = m(2, 2);
        let a = ModMatrix::new(z4, 2, 2, vec![1, 2, 0, 1]).unwrap();
        assert_eq!(a.det(), 1);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());

        let b = ModMatrix::new(z4, 2, 2, vec![2, 0, 0, 1]).unwrap();
        assert_eq!(b.det(), 2);
        assert!(b.inverse().is_none());

        let z5 = m(5, 1);
        let c = ModMatrix::new(z5, 2, 2, vec![0, 4, 1, 4]).unwrap();
        assert_eq!(c.det(), z5.reduce(-4));
        assert!(c.is_invertible());
    }

    #[test]
    fn det_matches_cofactor_3x3() {
        let z9 = m(3, 2);
        let a = ModMatrix::new(z9, 3, 3, vec![2, 3, 1, 0, 4, 5, 7, 1, 8]).unwrap();
        // cofactor expansion by hand
        let c = |i: usize, j: usize| a.get(i, j) as i64;
        let det = c(0, 0) * (c(1, 1) * c(2, 2) - c(1, 2) * c(2, 1))
            - c(0, 1) * (c(1, 0) * c(2, 2) - c(1, 2) * c(2, 0))
            + c(0, 2) * (c(1, 0) * c(2, 1) - c(1, 1) * c(2, 0));
        assert_eq!(a.det(), z9.reduce(det));
    }

    #[test]
    fn scalar_detection() {
        let z5 = m(5, 1);
        assert_eq!(ModMatrix::scalar(z5, 3, 4).as_scalar(), Some(4));
        let a = ModMatrix::new(z5, 2, 2, vec![4, 1, 0, 4]).unwrap();
        assert_eq!(a.as_scalar(), None);
    }

    #[test]
    fn kronecker_shape() {
        let z3 = m(3, 1);
        let j = ModMatrix::new(z3, 2, 2, vec![1, 1, 0, 1]).unwrap();
        let i2 = ModMatrix::identity(z3, 2);
        let k = j.kronecker(&i2);
        assert_eq!((k.rows(), k.cols()), (4, 4));
        // (J ⊗ I)(e3) = e1 + e3 with basis e1..e4
        assert_eq!(k.mul_vec(&[0, 0, 1, 0]), vec![1, 0, 1, 0]);
    }
}
