//! Exact linear algebra over Z/p^l Z.
//!
//! Z/p^l Z is a local ring, so minimal-valuation pivoting with unit scaling
//! gives exact echelon and diagonal forms without general-ring machinery:
//! the pivot entry p^v divides every other entry in its search range, and
//! the quotient of two entries of comparable valuation is exact integer
//! arithmetic on canonical representatives.
//!
//! Row modules are canonicalized by the Howell form (the substitute for
//! reduced row echelon over a non-field ring); column modules are handled
//! through a Smith-style diagonalization `D = U A V`.

use crate::error::{Error, Result};
use crate::matrix::ModMatrix;
use crate::ring::Modulus;

/// One pivot of a Howell basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pivot {
    pub row: usize,
    pub col: usize,
    pub valuation: u32,
}

/// Canonical generating set for a row module: two matrices with the same
/// row module produce entry-for-entry identical Howell forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HowellForm {
    basis: ModMatrix,
    pivots: Vec<Pivot>,
}

impl HowellForm {
    pub fn basis(&self) -> &ModMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[Pivot] {
        &self.pivots
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Number of elements of the row module.
    pub fn module_order(&self) -> u128 {
        let m = self.basis.modulus();
        self.pivots
            .iter()
            .map(|p| (m.q() / m.pow_p(p.valuation)) as u128)
            .product()
    }

    /// Membership of a row vector in the row module.
    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&e| e == 0)
    }

    /// Residual of `v` after elimination against the basis.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let m = self.basis.modulus();
        assert_eq!(v.len(), self.basis.cols(), "dimension mismatch in reduce");
        let mut v: Vec<u64> = v.iter().map(|&e| e % m.q()).collect();
        for p in &self.pivots {
            let e = v[p.col];
            if e == 0 {
                continue;
            }
            if m.valuation(e) < p.valuation {
                continue; // cannot be cleared by this pivot
            }
            let mult = e / m.pow_p(p.valuation);
            let row = self.basis.row(p.row);
            for (x, &b) in v.iter_mut().zip(row) {
                *x = m.sub(*x, m.mul(mult, b));
            }
        }
        v
    }
}

/// Echelonize rows in place with minimal-valuation pivoting.
/// Returns rows ordered by pivot column together with pivot data.
fn echelonize(modulus: Modulus, cols: usize, rows: Vec<Vec<u64>>) -> (Vec<Vec<u64>>, Vec<Pivot>) {
    let m = modulus;
    let mut work: Vec<Vec<u64>> = rows.into_iter().filter(|r| r.iter().any(|&e| e != 0)).collect();
    let mut out: Vec<Vec<u64>> = Vec::new();
    let mut pivots: Vec<Pivot> = Vec::new();
    for col in 0..cols {
        // pivot with minimal valuation in this column, first occurrence wins
        let mut best: Option<(usize, u32)> = None;
        for (i, r) in work.iter().enumerate() {
            let v = m.valuation(r[col]);
            if v < m.l() && best.map_or(true, |(_, bv)| v < bv) {
                best = Some((i, v));
            }
        }
        let Some((idx, val)) = best else { continue };
        let mut prow = work.swap_remove(idx);
        let unit = prow[col] / m.pow_p(val);
        let unit_inv = m.inverse(unit).expect("odd part is a unit");
        for e in prow.iter_mut() {
            *e = m.mul(*e, unit_inv);
        }
        debug_assert_eq!(prow[col], m.pow_p(val));
        for r in work.iter_mut() {
            let b = r[col];
            if b == 0 {
                continue;
            }
            debug_assert!(m.valuation(b) >= val);
            let mult = b / m.pow_p(val);
            for (x, &p) in r.iter_mut().zip(&prow) {
                *x = m.sub(*x, m.mul(mult, p));
            }
            debug_assert_eq!(r[col], 0);
        }
        work.retain(|r| r.iter().any(|&e| e != 0));
        pivots.push(Pivot { row: out.len(), col, valuation: val });
        out.push(prow);
    }
    // normalize entries above each pivot to the canonical residue mod p^v
    for j in 0..pivots.len() {
        let pj = pivots[j];
        for i in 0..j {
            let e = out[i][pj.col];
            let mult = e / m.pow_p(pj.valuation);
            if mult == 0 {
                continue;
            }
            let prow = out[pj.row].clone();
            for (x, &p) in out[i].iter_mut().zip(&prow) {
                *x = m.sub(*x, m.mul(mult, p));
            }
        }
    }
    (out, pivots)
}

/// Howell form of the row module of `a`.
pub fn howell(a: &ModMatrix) -> HowellForm {
    let m = a.modulus();
    let cols = a.cols();
    let mut rows: Vec<Vec<u64>> = (0..a.rows()).map(|i| a.row_vec(i)).collect();
    let mut guard = 0usize;
    loop {
        let (basis_rows, pivots) = echelonize(m, cols, rows);
        // Howell completion: the shift p^(l-v) * row lies in the module and
        // has its leading entry strictly to the right; absorb any shift that
        // does not already reduce to zero.
        let form = HowellForm {
            basis: ModMatrix::from_rows(m, cols, basis_rows.clone()),
            pivots: pivots.clone(),
        };
        let mut extra: Vec<Vec<u64>> = Vec::new();
        for p in &pivots {
            if p.valuation == 0 {
                continue;
            }
            let shift = m.q() / m.pow_p(p.valuation);
            let shifted: Vec<u64> = basis_rows[p.row].iter().map(|&e| m.mul(e, shift)).collect();
            let residual = form.reduce(&shifted);
            if residual.iter().any(|&e| e != 0) {
                extra.push(residual);
            }
        }
        if extra.is_empty() {
            return form;
        }
        rows = basis_rows;
        rows.extend(extra);
        guard += 1;
        assert!(guard <= (m.l() as usize + 1) * (cols + 1), "howell completion diverged");
    }
}

/// D = U A V with U, V invertible and D diagonal of nondecreasing valuation.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub u: ModMatrix,
    pub v: ModMatrix,
    /// Valuation of the i-th diagonal entry of D, for i < min(rows, cols);
    /// entries past `diag.len()` are zero (valuation l).
    pub diag: Vec<u32>,
    rows: usize,
    cols: usize,
}

impl Diagonalization {
    /// Valuation of the i-th diagonal position, with l for implicit zeros.
    pub fn valuation_at(&self, i: usize) -> u32 {
        let l = self.u.modulus().l();
        self.diag.get(i).copied().unwrap_or(l)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn u_inverse(&self) -> ModMatrix {
        self.u.inverse().expect("U is a product of elementary operations")
    }
}

pub fn diagonalize(a: &ModMatrix) -> Diagonalization {
    let m = a.modulus();
    let (rows, cols) = (a.rows(), a.cols());
    let mut w = a.clone();
    let mut u = ModMatrix::identity(m, rows);
    let mut v = ModMatrix::identity(m, cols);
    let mut diag: Vec<u32> = Vec::new();
    let steps = rows.min(cols);
    for k in 0..steps {
        // global minimal-valuation pivot in the trailing submatrix
        let mut best: Option<(usize, usize, u32)> = None;
        for i in k..rows {
            for j in k..cols {
                let val = m.valuation(w.get(i, j));
                if val < m.l() && best.map_or(true, |(_, _, bv)| val < bv) {
                    best = Some((i, j, val));
                }
            }
        }
        let Some((pi, pj, val)) = best else { break };
        if pi != k {
            swap_rows(&mut w, pi, k);
            swap_rows(&mut u, pi, k);
        }
        if pj != k {
            swap_cols(&mut w, pj, k);
            swap_cols(&mut v, pj, k);
        }
        let unit = w.get(k, k) / m.pow_p(val);
        let unit_inv = m.inverse(unit).expect("odd part is a unit");
        scale_row(&mut w, k, unit_inv);
        scale_row(&mut u, k, unit_inv);
        // clear the pivot column with row operations
        for i in 0..rows {
            if i == k {
                continue;
            }
            let b = w.get(i, k);
            if b == 0 {
                continue;
            }
            let mult = b / m.pow_p(val);
            row_sub(&mut w, i, k, mult);
            row_sub(&mut u, i, k, mult);
        }
        // clear the pivot row with column operations
        for j in 0..cols {
            if j == k {
                continue;
            }
            let b = w.get(k, j);
            if b == 0 {
                continue;
            }
            let mult = b / m.pow_p(val);
            col_sub(&mut w, j, k, mult);
            col_sub(&mut v, j, k, mult);
        }
        diag.push(val);
    }
    debug_assert!(diag.windows(2).all(|p| p[0] <= p[1]));
    Diagonalization { u, v, diag, rows, cols }
}

fn swap_rows(a: &mut ModMatrix, i: usize, j: usize) {
    for c in 0..a.cols() {
        let (x, y) = (a.get(i, c), a.get(j, c));
        a.set(i, c, y);
        a.set(j, c, x);
    }
}

fn swap_cols(a: &mut ModMatrix, i: usize, j: usize) {
    for r in 0..a.rows() {
        let (x, y) = (a.get(r, i), a.get(r, j));
        a.set(r, i, y);
        a.set(r, j, x);
    }
}

fn scale_row(a: &mut ModMatrix, i: usize, c: u64) {
    let m = a.modulus();
    for j in 0..a.cols() {
        a.set(i, j, m.mul(a.get(i, j), c));
    }
}

fn row_sub(a: &mut ModMatrix, i: usize, k: usize, mult: u64) {
    let m = a.modulus();
    for j in 0..a.cols() {
        let val = m.sub(a.get(i, j), m.mul(mult, a.get(k, j)));
        a.set(i, j, val);
    }
}

fn col_sub(a: &mut ModMatrix, j: usize, k: usize, mult: u64) {
    let m = a.modulus();
    for i in 0..a.rows() {
        let val = m.sub(a.get(i, j), m.mul(mult, a.get(i, k)));
        a.set(i, j, val);
    }
}

/// Solve A x = b exactly; None iff no solution exists.
pub fn solve(a: &ModMatrix, b: &[u64]) -> Result<Option<Vec<u64>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "solve: matrix has {} rows, rhs has {}",
            a.rows(),
            b.len()
        )));
    }
    let m = a.modulus();
    let d = diagonalize(a);
    let c = d.u.mul_vec(b);
    let mut y = vec![0u64; a.cols()];
    for (i, &ci) in c.iter().enumerate() {
        if i < d.diag.len() && i < a.cols() {
            let v = d.diag[i];
            if m.valuation(ci) < v {
                return Ok(None);
            }
            y[i] = ci / m.pow_p(v);
        } else if ci != 0 {
            return Ok(None);
        }
    }
    let x = d.v.mul_vec(&y);
    debug_assert_eq!(a.mul_vec(&x), b.iter().map(|&e| e % m.q()).collect::<Vec<_>>());
    Ok(Some(x))
}

/// Membership of x in the column module of B.
pub fn membership(b: &ModMatrix, x: &[u64]) -> Result<bool> {
    Ok(solve(b, x)?.is_some())
}

/// Generators (as columns) of the kernel {x : A x = 0}.
pub fn kernel(a: &ModMatrix) -> ModMatrix {
    let m = a.modulus();
    let d = diagonalize(a);
    let mut gens: Vec<Vec<u64>> = Vec::new();
    for j in 0..a.cols() {
        let v = d.valuation_at(j);
        if v == 0 {
            continue; // unit pivot forces y_j = 0
        }
        let mut y = vec![0u64; a.cols()];
        // p^v y_j = 0 iff y_j is a multiple of p^(l-v); v = l frees it
        y[j] = m.pow_p(m.l() - v);
        gens.push(d.v.mul_vec(&y));
    }
    columns_matrix(m, a.cols(), gens)
}

/// K with {x : K x = 0} equal to the column module of B.
pub fn annihilator(b: &ModMatrix) -> ModMatrix {
    let m = b.modulus();
    let d = diagonalize(b);
    let mut k = d.u.clone();
    for i in 0..b.rows() {
        let v = d.valuation_at(i);
        let factor = m.pow_p(m.l() - v);
        for j in 0..b.rows() {
            k.set(i, j, m.mul(k.get(i, j), factor));
        }
    }
    k
}

/// Number of elements of the column module of B.
pub fn column_module_order(b: &ModMatrix) -> u128 {
    let m = b.modulus();
    let d = diagonalize(b);
    (0..b.cols().min(b.rows()))
        .map(|i| (m.q() / m.pow_p(d.valuation_at(i))) as u128)
        .product()
}

/// Invariant factors d_1 | d_2 | ... of a finite abelian p-group.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct InvariantFactors {
    factors: Vec<u64>,
}

impl InvariantFactors {
    pub fn new(factors: Vec<u64>) -> Self {
        assert!(factors.iter().all(|&f| f > 1));
        assert!(factors.windows(2).all(|w| w[1] % w[0] == 0), "divisibility chain");
        InvariantFactors { factors }
    }

    pub fn trivial() -> Self {
        InvariantFactors { factors: Vec::new() }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn order(&self) -> u128 {
        self.factors.iter().map(|&f| f as u128).product()
    }
}

impl std::fmt::Display for InvariantFactors {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            write!(f, "0")
        } else {
            let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{}", d)).collect();
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Quotient presentation: invariant factors together with one module
/// element per factor, expressed in the ambient coordinates.
pub struct QuotientPresentation {
    pub invariants: InvariantFactors,
    pub representatives: Vec<Vec<u64>>,
}

/// Invariant factors of (column module of amb) / (column module of sub).
pub fn quotient_invariants(sub: &ModMatrix, amb: &ModMatrix) -> Result<InvariantFactors> {
    Ok(quotient_presentation(sub, amb)?.invariants)
}

pub fn quotient_presentation(sub: &ModMatrix, amb: &ModMatrix) -> Result<QuotientPresentation> {
    if sub.rows() != amb.rows() {
        return Err(Error::DimensionMismatch(format!(
            "quotient: ambient lives in rank {}, submodule in rank {}",
            amb.rows(),
            sub.rows()
        )));
    }
    let m = amb.modulus();
    let t = amb.cols();
    // express each submodule generator in ambient generators
    let mut coeff_cols: Vec<Vec<u64>> = Vec::new();
    for j in 0..sub.cols() {
        let col = sub.col_vec(j);
        match solve(amb, &col)? {
            Some(c) => coeff_cols.push(c),
            None => return Err(Error::ContainmentViolation),
        }
    }
    // relations of the quotient in ambient-generator coordinates
    let ker = kernel(amb);
    let mut rel_cols: Vec<Vec<u64>> = (0..ker.cols()).map(|j| ker.col_vec(j)).collect();
    rel_cols.extend(coeff_cols);
    let relations = columns_matrix(m, t, rel_cols);
    let d = diagonalize(&relations);
    let u_inv = d.u_inverse();
    let mut factors: Vec<(u32, usize)> = Vec::new();
    for i in 0..t {
        let v = d.valuation_at(i);
        if v > 0 {
            factors.push((v, i));
        }
    }
    factors.sort(); // ascending valuation = divisibility chain
    let mut invariants = Vec::new();
    let mut representatives = Vec::new();
    for (v, i) in factors {
        invariants.push(m.pow_p(v));
        let coeffs = u_inv.col_vec(i);
        representatives.push(amb.mul_vec(&coeffs));
    }
    Ok(QuotientPresentation { invariants: InvariantFactors::new(invariants), representatives })
}

/// Builds a matrix whose columns are the given vectors (possibly none).
pub fn columns_matrix(modulus: Modulus, rows: usize, cols: Vec<Vec<u64>>) -> ModMatrix {
    let n = cols.len();
    let mut out = ModMatrix::zeros(modulus, rows, n);
    for (j, c) in cols.iter().enumerate() {
        assert_eq!(c.len(), rows);
        for (i, &e) in c.iter().enumerate() {
            out.set(i, j, e);
        }
    }
    out
}

/// Generators (as columns) of the intersection of two column modules.
pub fn column_module_intersection(a: &ModMatrix, b: &ModMatrix) -> ModMatrix {
    assert_eq!(a.rows(), b.rows());
    let m = a.modulus();
    let rows = a.rows();
    // solutions of A x = B y: kernel of [A | -B], intersection gens = A x
    let mut cols: Vec<Vec<u64>> = (0..a.cols()).map(|j| a.col_vec(j)).collect();
    for j in 0..b.cols() {
        cols.push(b.col_vec(j).iter().map(|&e| m.neg(e)).collect());
    }
    let stacked = columns_matrix(m, rows, cols);
    let ker = kernel(&stacked);
    let mut gens = Vec::new();
    for j in 0..ker.cols() {
        let full = ker.col_vec(j);
        let x = &full[..a.cols()];
        gens.push(a.mul_vec(x));
    }
    columns_matrix(m, rows, gens)
}
