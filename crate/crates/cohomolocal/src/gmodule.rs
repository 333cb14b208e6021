//! G-module structure of M = (Z/qZ)^n under a matrix group:
//! invariant submodules, the irreducible / reducible-indecomposable /
//! decomposable trichotomy, and the endomorphism algebra.
//!
//! Over the field Z/pZ the verdict is decided by exhaustive spinning: the
//! test set of all nonzero vectors is sound and complete because any
//! proper invariant subspace contains a nonzero vector. For l > 1 the
//! module pM is always a proper nonzero invariant submodule, so the
//! report is never Irreducible; decomposability is decided by exhaustive
//! idempotent search in the endomorphism algebra under a hard budget.

use crate::error::{Error, Result};
use crate::group::MatrixGroup;
use crate::linalg::{self, HowellForm};
use crate::matrix::ModMatrix;
use crate::ring::Modulus;

/// Budget for the idempotent search over the endomorphism algebra (l > 1).
pub const IDEMPOTENT_BUDGET: u128 = 1_000_000;

/// The module (Z/qZ)^n with the group acting by matrix-vector product.
pub struct GModule {
    group: MatrixGroup,
}

impl GModule {
    pub fn natural(group: MatrixGroup) -> Self {
        GModule { group }
    }

    pub fn group(&self) -> &MatrixGroup {
        &self.group
    }

    pub fn modulus(&self) -> Modulus {
        self.group.modulus()
    }

    pub fn rank(&self) -> usize {
        self.group.dim()
    }

    pub fn into_group(self) -> MatrixGroup {
        self.group
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum StructureKind {
    Irreducible,
    ReducibleIndecomposable,
    Decomposable,
}

/// Verdict with verified witnesses. Submodules are given by generating
/// rows in Howell form.
#[derive(Clone, Debug)]
pub struct StructureVerdict {
    pub kind: StructureKind,
    /// A proper nonzero invariant submodule (reducible verdicts).
    pub invariant_submodule: Option<ModMatrix>,
    /// Complementary invariant pair with U + W = M and U ∩ W = 0.
    pub complement: Option<(ModMatrix, ModMatrix)>,
    /// True when a reducible verdict for l > 1 rests on the convention
    /// that pM witnesses reducibility.
    pub by_convention: bool,
}

impl StructureVerdict {
    fn plain(kind: StructureKind) -> Self {
        StructureVerdict { kind, invariant_submodule: None, complement: None, by_convention: false }
    }
}

/// Smallest G-invariant submodule containing v, as Howell basis rows.
pub fn spin(module: &GModule, v: &[u64]) -> ModMatrix {
    let m = module.modulus();
    let n = module.rank();
    assert_eq!(v.len(), n, "vector length must match module rank");
    let mut basis = linalg::howell(&ModMatrix::from_rows(m, n, vec![v.to_vec()]));
    loop {
        let mut new_rows: Vec<Vec<u64>> = Vec::new();
        for i in 0..basis.basis().rows() {
            let row = basis.basis().row_vec(i);
            for g in module.group.generators() {
                let image = g.mul_vec(&row);
                if !basis.contains(&image) {
                    new_rows.push(image);
                }
            }
        }
        if new_rows.is_empty() {
            debug_assert!(is_invariant(module, &basis));
            return basis.basis().clone();
        }
        let mut rows: Vec<Vec<u64>> =
            (0..basis.basis().rows()).map(|i| basis.basis().row_vec(i)).collect();
        rows.extend(new_rows);
        basis = linalg::howell(&ModMatrix::from_rows(m, n, rows));
    }
}

fn is_invariant(module: &GModule, basis: &HowellForm) -> bool {
    for i in 0..basis.basis().rows() {
        let row = basis.basis().row_vec(i);
        for g in module.group.generators() {
            if !basis.contains(&g.mul_vec(&row)) {
                return false;
            }
        }
    }
    true
}

/// Decides the structure trichotomy.
pub fn structure(module: &GModule) -> Result<StructureVerdict> {
    if module.modulus().l() == 1 {
        Ok(structure_field_case(module))
    } else {
        structure_ring_case(module)
    }
}

fn all_vectors(m: Modulus, n: usize) -> impl Iterator<Item = Vec<u64>> {
    let q = m.q();
    let total = (q as u128).pow(n as u32);
    (0..total).map(move |code| {
        let mut v = vec![0u64; n];
        let mut c = code;
        for x in v.iter_mut() {
            *x = (c % q as u128) as u64;
            c /= q as u128;
        }
        v
    })
}

fn structure_field_case(module: &GModule) -> StructureVerdict {
    let m = module.modulus();
    let n = module.rank();
    // all spins, deduplicated by their canonical basis
    let mut seen: std::collections::HashMap<Vec<u64>, ModMatrix> = std::collections::HashMap::new();
    for v in all_vectors(m, n).skip(1) {
        let s = spin(module, &v);
        seen.entry(s.entries().to_vec()).or_insert(s);
    }
    let mut spins: Vec<ModMatrix> = seen.into_values().collect();
    spins.sort_by(|a, b| a.rows().cmp(&b.rows()).then(a.entries().cmp(b.entries())));
    if spins.iter().all(|s| s.rows() == n) {
        return StructureVerdict::plain(StructureKind::Irreducible);
    }
    // invariant-subspace lattice: spins closed under sums
    let mut lattice: Vec<ModMatrix> = Vec::new();
    let mut known: std::collections::HashSet<Vec<u64>> = std::collections::HashSet::new();
    for s in spins {
        if known.insert(s.entries().to_vec()) {
            lattice.push(s);
        }
    }
    let mut frontier: Vec<usize> = (0..lattice.len()).collect();
    while !frontier.is_empty() {
        let mut added: Vec<usize> = Vec::new();
        for fi in 0..frontier.len() {
            let i = frontier[fi];
            let mut j = 0;
            while j < lattice.len() {
                if lattice[i].rows() < n && lattice[j].rows() < n {
                    let sum = linalg::howell(&lattice[i].vstack(&lattice[j]));
                    let key = sum.basis().entries().to_vec();
                    if known.insert(key) {
                        lattice.push(sum.basis().clone());
                        added.push(lattice.len() - 1);
                    }
                }
                j += 1;
            }
        }
        frontier = added;
    }
    lattice.sort_by(|a, b| a.rows().cmp(&b.rows()).then(a.entries().cmp(b.entries())));
    // complementary pair: dims add up and the joint span is everything
    for u in &lattice {
        let du = u.rows();
        if du == 0 || du == n {
            continue;
        }
        for w in &lattice {
            if w.rows() != n - du {
                continue;
            }
            let joint = linalg::howell(&u.vstack(w));
            if joint.rank() == n {
                return StructureVerdict {
                    kind: StructureKind::Decomposable,
                    invariant_submodule: Some(u.clone()),
                    complement: Some((u.clone(), w.clone())),
                    by_convention: false,
                };
            }
        }
    }
    let witness = lattice.iter().find(|s| s.rows() > 0 && s.rows() < n).cloned();
    StructureVerdict {
        kind: StructureKind::ReducibleIndecomposable,
        invariant_submodule: witness,
        complement: None,
        by_convention: false,
    }
}

fn structure_ring_case(module: &GModule) -> Result<StructureVerdict> {
    let m = module.modulus();
    let n = module.rank();
    let endos = endomorphism_algebra(module);
    // enumerate the endomorphism module through the independent cyclic
    // coordinates of its canonical basis
    let cols: Vec<Vec<u64>> = endos.iter().map(|e| e.entries().to_vec()).collect();
    let gen_matrix = linalg::columns_matrix(m, n * n, cols);
    let basis = linalg::howell(&gen_matrix.transpose());
    let orders: Vec<u64> =
        basis.pivots().iter().map(|p| m.q() / m.pow_p(p.valuation)).collect();
    let count: u128 = orders.iter().map(|&o| o as u128).product();
    if count > IDEMPOTENT_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "endomorphism algebra has {count} elements, budget {IDEMPOTENT_BUDGET}"
        )));
    }
    let identity = ModMatrix::identity(m, n);
    let mut coeffs = vec![0u64; orders.len()];
    loop {
        let mut x = ModMatrix::zeros(m, n, n);
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                let row = basis.basis().row(i);
                for r in 0..n {
                    for cidx in 0..n {
                        let v = m.add(x.get(r, cidx), m.mul(c, row[r * n + cidx]));
                        x.set(r, cidx, v);
                    }
                }
            }
        }
        if !x.is_zero() && x != identity && x.mul(&x) == x {
            let u = linalg::howell(&x.transpose()); // image of X, as rows
            let w = linalg::howell(&identity.sub(&x).transpose());
            if u.rank() > 0 && w.rank() > 0 {
                return Ok(StructureVerdict {
                    kind: StructureKind::Decomposable,
                    invariant_submodule: Some(u.basis().clone()),
                    complement: Some((u.basis().clone(), w.basis().clone())),
                    by_convention: false,
                });
            }
        }
        // odometer over the mixed radix given by the cyclic orders
        let mut i = 0;
        loop {
            if i == coeffs.len() {
                // exhausted: no nontrivial idempotent, so not decomposable;
                // pM witnesses reducibility by convention
                let p_rows: Vec<Vec<u64>> = (0..n)
                    .map(|j| {
                        let mut r = vec![0u64; n];
                        r[j] = m.p();
                        r
                    })
                    .collect();
                let pm = linalg::howell(&ModMatrix::from_rows(m, n, p_rows));
                return Ok(StructureVerdict {
                    kind: StructureKind::ReducibleIndecomposable,
                    invariant_submodule: Some(pm.basis().clone()),
                    complement: None,
                    by_convention: true,
                });
            }
            coeffs[i] += 1;
            if coeffs[i] < orders[i] {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}

/// Module generators of {X : Xg = gX for every generator g}.
pub fn endomorphism_algebra(module: &GModule) -> Vec<ModMatrix> {
    let m = module.modulus();
    let n = module.rank();
    let gens = module.group.generators();
    if gens.is_empty() {
        // everything commutes with the trivial group
        return (0..n * n)
            .map(|k| {
                let mut e = ModMatrix::zeros(m, n, n);
                e.set(k / n, k % n, 1);
                e
            })
            .collect();
    }
    // unknowns: X flattened row-major; constraints per generator g:
    // (X g - g X)[i][j] = 0
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for g in gens {
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![0u64; n * n];
                for b in 0..n {
                    let idx = i * n + b;
                    row[idx] = m.add(row[idx], g.get(b, j));
                }
                for a in 0..n {
                    let idx = a * n + j;
                    row[idx] = m.sub(row[idx], g.get(i, a));
                }
                rows.push(row);
            }
        }
    }
    let constraint = ModMatrix::from_rows(m, n * n, rows);
    let ker = linalg::kernel(&constraint);
    (0..ker.cols())
        .map(|j| {
            let flat = ker.col_vec(j);
            let mut x = ModMatrix::zeros(m, n, n);
            for a in 0..n {
                for b in 0..n {
                    x.set(a, b, flat[a * n + b]);
                }
            }
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ELEMENT_CAP;

    fn m(p: u64, l: u32) -> Modulus {
        Modulus::new(p, l).unwrap()
    }

    fn mat(modulus: Modulus, e: Vec<i64>) -> ModMatrix {
        let n = (e.len() as f64).sqrt() as usize;
        ModMatrix::new(modulus, n, n, e).unwrap()
    }

    fn module_of(gens: Vec<ModMatrix>, modulus: Modulus, dim: usize) -> GModule {
        let g = if gens.is_empty() {
            MatrixGroup::trivial(modulus, dim)
        } else {
            MatrixGroup::closure(gens, DEFAULT_ELEMENT_CAP).unwrap()
        };
        GModule::natural(g)
    }

    #[test]
    fn spin_examples() {
        let z3 = m(3, 1);
        let jmod = module_of(vec![mat(z3, vec![1, 1, 0, 1])], z3, 2);
        assert_eq!(spin(&jmod, &[0, 0]).rows(), 0);
        // J fixes e1, so spin(e1) is the invariant line
        let line = spin(&jmod, &[1, 0]);
        assert_eq!(line.rows(), 1);
        assert_eq!(line.row(0), &[1, 0]);

        // SL2(3) natural module: any nonzero vector spins to everything
        let sl23 =
            module_of(vec![mat(z3, vec![1, 1, 0, 1]), mat(z3, vec![1, 0, 1, 1])], z3, 2);
        assert_eq!(spin(&sl23, &[1, 0]).rows(), 2);
    }

    #[test]
    fn spin_result_is_invariant() {
        let z5 = m(5, 1);
        let g = module_of(vec![mat(z5, vec![1, 1, 0, 1])], z5, 2);
        for v in [[1u64, 0], [0, 1], [2, 3]] {
            let s = spin(&g, &v);
            let h = linalg::howell(&s);
            assert!(is_invariant(&g, &h));
        }
    }

    #[test]
    fn structure_trivial_action_is_decomposable() {
        let z5 = m(5, 1);
        let t = module_of(vec![], z5, 2);
        let v = structure(&t).unwrap();
        assert_eq!(v.kind, StructureKind::Decomposable);
        let (u, w) = v.complement.unwrap();
        assert_eq!(u.rows() + w.rows(), 2);
    }

    #[test]
    fn structure_unipotent_is_reducible_indecomposable() {
        // brute-forced over all 4 lines of (Z/3)^2: only span(e1) is invariant
        let z3 = m(3, 1);
        let jmod = module_of(vec![mat(z3, vec![1, 1, 0, 1])], z3, 2);
        let v = structure(&jmod).unwrap();
        assert_eq!(v.kind, StructureKind::ReducibleIndecomposable);
        let w = v.invariant_submodule.unwrap();
        assert_eq!(w.rows(), 1);
        assert_eq!(w.row(0), &[1, 0]);
    }

    #[test]
    fn structure_sl25_natural_is_irreducible() {
        let z5 = m(5, 1);
        let sl25 =
            module_of(vec![mat(z5, vec![1, 1, 0, 1]), mat(z5, vec![1, 0, 1, 1])], z5, 2);
        let v = structure(&sl25).unwrap();
        assert_eq!(v.kind, StructureKind::Irreducible);
    }

    #[test]
    fn structure_block_group_is_decomposable() {
        // diag(J, I) and diag(I, J) mod 3 acting on (Z/3)^4
        let z3 = m(3, 1);
        let j = mat(z3, vec![1, 1, 0, 1]);
        let g1 = j.direct_sum(&ModMatrix::identity(z3, 2));
        let g2 = ModMatrix::identity(z3, 2).direct_sum(&j);
        let md = module_of(vec![g1, g2], z3, 4);
        let v = structure(&md).unwrap();
        assert_eq!(v.kind, StructureKind::Decomposable);
        let (u, w) = v.complement.unwrap();
        // |U| * |W| = |M| and both witnesses invariant under every generator
        assert_eq!(u.rows() + w.rows(), 4);
        for witness in [&u, &w] {
            let h = linalg::howell(witness);
            assert!(is_invariant(&md, &h));
        }
    }

    #[test]
    fn structure_ring_case_decomposable_blocks() {
        // diag(-1, 1) over Z/4: the coordinate projection is an idempotent
        let z4 = m(2, 2);
        let g = mat(z4, vec![3, 0, 0, 1]);
        let md = module_of(vec![g], z4, 2);
        let v = structure(&md).unwrap();
        assert_eq!(v.kind, StructureKind::Decomposable);
        assert!(!v.by_convention);
    }

    #[test]
    fn structure_ring_case_convention_flag() {
        // <J> over Z/4 has no invariant complement; verdict rests on pM
        let z4 = m(2, 2);
        let j = mat(z4, vec![1, 1, 0, 1]);
        let md = module_of(vec![j], z4, 2);
        let v = structure(&md).unwrap();
        assert_eq!(v.kind, StructureKind::ReducibleIndecomposable);
        assert!(v.by_convention);
        assert!(v.invariant_submodule.is_some());
    }

    #[test]
    fn structure_is_conjugation_invariant() {
        let z3 = m(3, 1);
        let j = mat(z3, vec![1, 1, 0, 1]);
        let p = mat(z3, vec![1, 2, 1, 0]);
        let pinv = p.inverse().unwrap();
        let base = module_of(vec![j.clone()], z3, 2);
        let conj = module_of(vec![p.mul(&j).mul(&pinv)], z3, 2);
        assert_eq!(structure(&base).unwrap().kind, structure(&conj).unwrap().kind);
    }

    #[test]
    fn endomorphisms_of_irreducible_module_are_scalars() {
        // commutation system solved for the SL2(5) natural module
        let z5 = m(5, 1);
        let sl25 =
            module_of(vec![mat(z5, vec![1, 1, 0, 1]), mat(z5, vec![1, 0, 1, 1])], z5, 2);
        let endos = endomorphism_algebra(&sl25);
        let cols: Vec<Vec<u64>> = endos.iter().map(|e| e.entries().to_vec()).collect();
        let span = linalg::howell(&linalg::columns_matrix(z5, 4, cols).transpose());
        assert_eq!(span.module_order(), 5);
        assert!(span.contains(ModMatrix::identity(z5, 2).entries()));
    }

    #[test]
    fn endomorphisms_of_trivial_group_are_everything() {
        let z3 = m(3, 1);
        let t = module_of(vec![], z3, 2);
        let endos = endomorphism_algebra(&t);
        assert_eq!(endos.len(), 4);
    }

    #[test]
    fn endomorphisms_commute_with_whole_closure() {
        let z3 = m(3, 1);
        let md =
            module_of(vec![mat(z3, vec![1, 1, 0, 1]), mat(z3, vec![2, 0, 0, 1])], z3, 2);
        let endos = endomorphism_algebra(&md);
        for x in &endos {
            for e in md.group().elements() {
                assert_eq!(x.mul(e), e.mul(x));
            }
        }
    }

    #[test]
    fn endomorphisms_block_diagonal_for_inequivalent_blocks() {
        // J-block and trivial block mod 3 are inequivalent; brute force over
        // all 3^9 matrices confirms the commutant count
        let z3 = m(3, 1);
        let g = mat(z3, vec![1, 1, 0, 1]).direct_sum(&ModMatrix::identity(z3, 1));
        let md = module_of(vec![g.clone()], z3, 3);
        let endos = endomorphism_algebra(&md);
        let cols: Vec<Vec<u64>> = endos.iter().map(|e| e.entries().to_vec()).collect();
        let span = linalg::howell(&linalg::columns_matrix(z3, 9, cols).transpose());
        let mut brute = 0u64;
        for code in 0..3u64.pow(9) {
            let mut c = code;
            let mut e = vec![0i64; 9];
            for x in e.iter_mut() {
                *x = (c % 3) as i64;
                c /= 3;
            }
            let x = mat(z3, e);
            if x.mul(&g) == g.mul(&x) {
                brute += 1;
            }
        }
        assert_eq!(span.module_order(), brute as u128);
    }
}
