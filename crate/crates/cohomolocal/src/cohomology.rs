//! Z^1, B^1, H^1, the local-condition submodule and H^1_loc, computed two
//! independent ways, plus restriction maps and coboundary certificates.
//!
//! A cocycle is determined by its values on the generators. The engine
//! fixes one unknown block per generator and propagates Z_sigma along the
//! BFS spanning tree of the Cayley graph recorded by the closure; every
//! non-tree edge (sigma, g) contributes the linear constraint
//! Z_{sigma g} = Z_sigma + sigma Z_g. This shrinks the system from
//! |G| * n unknowns to |gens| * n while remaining exact.
//!
//! The local conditions are imposed per element sigma through annihilator
//! matrices K_sigma with ker K_sigma = Im(sigma - 1), so Z_sigma lies in
//! Im(sigma - 1) iff K_sigma Z_sigma = 0. The cyclic-subgroup definition
//! (intersection of restriction kernels over all cyclic subgroups) is kept
//! as a second, independently coded route and cross-checked everywhere.

use crate::error::{Error, Result};
use crate::gmodule::GModule;
use crate::group::Subgroup;
use crate::linalg::{self, InvariantFactors};
use crate::matrix::ModMatrix;
use std::collections::BTreeMap;

/// Memory budget for the per-element expression table, in u64 entries.
const EXPRESSION_ENTRY_BUDGET: usize = 1 << 25;

/// A map G -> M given by its value table in the group's enumeration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    values: Vec<Vec<u64>>,
}

impl Cocycle {
    pub fn new(values: Vec<Vec<u64>>) -> Self {
        Cocycle { values }
    }

    pub fn zero(module: &GModule) -> Self {
        Cocycle { values: vec![vec![0; module.rank()]; module.group().order()] }
    }

    pub fn values(&self) -> &[Vec<u64>] {
        &self.values
    }

    pub fn value(&self, i: u32) -> &[u64] {
        &self.values[i as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.iter().all(|&e| e == 0))
    }

    pub fn add(&self, other: &Cocycle, module: &GModule) -> Cocycle {
        let m = module.modulus();
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| m.add(x, y)).collect())
            .collect();
        Cocycle { values }
    }

    /// Serialization keyed by the element's row-major entries.
    pub fn to_map(&self, module: &GModule) -> BTreeMap<String, Vec<u64>> {
        let mut out = BTreeMap::new();
        for (i, v) in self.values.iter().enumerate() {
            let key: Vec<String> =
                module.group().element(i as u32).entries().iter().map(|e| e.to_string()).collect();
            out.insert(key.join(","), v.clone());
        }
        out
    }
}

/// A finite abelian p-group presented by invariant factors, together with
/// one representative cocycle per factor.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    invariants: InvariantFactors,
    representatives: Vec<Cocycle>,
}

impl CohomologyGroup {
    pub fn trivial() -> Self {
        CohomologyGroup { invariants: InvariantFactors::trivial(), representatives: Vec::new() }
    }

    pub fn invariants(&self) -> &InvariantFactors {
        &self.invariants
    }

    pub fn representatives(&self) -> &[Cocycle] {
        &self.representatives
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_trivial()
    }

    pub fn order(&self) -> u128 {
        self.invariants.order()
    }
}

/// Verifies the cocycle identity on all pairs; test and assertion helper.
pub fn validate_cocycle(module: &GModule, c: &Cocycle) -> bool {
    let g = module.group();
    let m = module.modulus();
    if c.values.len() != g.order() {
        return false;
    }
    if c.values[0].iter().any(|&e| e != 0) {
        return false;
    }
    for s in 0..g.order() as u32 {
        for t in 0..g.order() as u32 {
            let st = g.product(s, t);
            let sigma = g.element(s);
            let expect: Vec<u64> = c
                .value(s)
                .iter()
                .zip(sigma.mul_vec(c.value(t)))
                .map(|(&a, b)| m.add(a, b))
                .collect();
            if c.value(st) != expect.as_slice() {
                return false;
            }
        }
    }
    true
}

/// The solved generator-coordinate system for one (G, M) pair.
struct CocycleSystem<'m> {
    module: &'m GModule,
    k: usize,
    n: usize,
    /// expressions[i] is the n x (k n) matrix C_sigma with Z_sigma = C_sigma z.
    expressions: Vec<ModMatrix>,
    /// Howell rows of the cocycle constraints (non-tree edges).
    cocycle_rows: ModMatrix,
    /// coboundary generators as columns of a (k n) x n matrix
    b1: ModMatrix,
}

struct RowAccumulator {
    cols: usize,
    rows: Vec<Vec<u64>>,
    modulus: crate::ring::Modulus,
}

impl RowAccumulator {
    fn new(modulus: crate::ring::Modulus, cols: usize) -> Self {
        RowAccumulator { cols, rows: Vec::new(), modulus }
    }

    fn push(&mut self, row: Vec<u64>) {
        if row.iter().all(|&e| e == 0) {
            return;
        }
        self.rows.push(row);
        if self.rows.len() > 4 * self.cols + 8 {
            self.compact();
        }
    }

    fn compact(&mut self) {
        let h = linalg::howell(&ModMatrix::from_rows(
            self.modulus,
            self.cols,
            std::mem::take(&mut self.rows),
        ));
        self.rows = (0..h.basis().rows()).map(|i| h.basis().row_vec(i)).collect();
    }

    fn finish(mut self) -> ModMatrix {
        self.compact();
        ModMatrix::from_rows(self.modulus, self.cols, self.rows)
    }
}

impl<'m> CocycleSystem<'m> {
    fn new(module: &'m GModule) -> Result<Self> {
        let g = module.group();
        let m = module.modulus();
        let n = module.rank();
        let k = g.generators().len();
        let kn = k * n;
        if g.order().saturating_mul(n).saturating_mul(kn) > EXPRESSION_ENTRY_BUDGET {
            return Err(Error::BudgetExceeded(format!(
                "expression table {} x {} x {} exceeds the memory budget",
                g.order(),
                n,
                kn
            )));
        }
        // C_sigma along the BFS tree
        let mut expressions: Vec<ModMatrix> = Vec::with_capacity(g.order());
        expressions.push(ModMatrix::zeros(m, n, kn));
        for i in 1..g.order() as u32 {
            let (parent, gen) = g.parent_edge(i).expect("non-root elements have a tree edge");
            let mut c = expressions[parent as usize].clone();
            let sigma = g.element(parent);
            let off = gen as usize * n;
            for r in 0..n {
                for s in 0..n {
                    let v = m.add(c.get(r, off + s), sigma.get(r, s));
                    c.set(r, off + s, v);
                }
            }
            expressions.push(c);
        }
        // constraints from non-tree edges
        let gen_indices: Vec<u32> = g
            .generators()
            .iter()
            .map(|gen| g.index_of(gen).expect("generators are elements"))
            .collect();
        let mut acc = RowAccumulator::new(m, kn);
        for s in 0..g.order() as u32 {
            for (j, &gidx) in gen_indices.iter().enumerate() {
                let t = g.product(s, gidx);
                if g.parent_edge(t) == Some((s, j as u32)) {
                    continue;
                }
                let sigma = g.element(s);
                let off = j * n;
                for r in 0..n {
                    let mut row = vec![0u64; kn];
                    for c in 0..kn {
                        row[c] = m.sub(
                            expressions[t as usize].get(r, c),
                            expressions[s as usize].get(r, c),
                        );
                    }
                    for c in 0..n {
                        row[off + c] = m.sub(row[off + c], sigma.get(r, c));
                    }
                    acc.push(row);
                }
            }
        }
        let cocycle_rows = acc.finish();
        // coboundary generators: A -> ((g_j - 1) A)_j stacked
        let mut b1 = ModMatrix::zeros(m, kn, n);
        for (j, gen) in g.generators().iter().enumerate() {
            let block = gen.sub(&ModMatrix::identity(m, n));
            for r in 0..n {
                for c in 0..n {
                    b1.set(j * n + r, c, block.get(r, c));
                }
            }
        }
        Ok(CocycleSystem { module, k, n, expressions, cocycle_rows, b1 })
    }

    /// Z^1 generators as columns of a (k n) x t matrix.
    fn z1(&self) -> ModMatrix {
        linalg::kernel(&self.cocycle_rows)
    }

    /// Z^1_loc generators: cocycle constraints plus one local block per element.
    fn z1loc(&self) -> ModMatrix {
        let g = self.module.group();
        let m = self.module.modulus();
        let n = self.n;
        let kn = self.k * n;
        let mut acc = RowAccumulator::new(m, kn);
        for i in 0..self.cocycle_rows.rows() {
            acc.push(self.cocycle_rows.row_vec(i));
        }
        let identity = ModMatrix::identity(m, n);
        for s in 0..g.order() as u32 {
            let shifted = g.element(s).sub(&identity);
            let k_sigma = linalg::annihilator(&shifted);
            let block = k_sigma.mul(&self.expressions[s as usize]);
            for r in 0..n {
                acc.push(block.row_vec(r));
            }
        }
        linalg::kernel(&acc.finish())
    }

    fn materialize(&self, coords: &[u64]) -> Cocycle {
        let values = self.expressions.iter().map(|c| c.mul_vec(coords)).collect();
        Cocycle { values }
    }

    fn present(&self, amb: &ModMatrix) -> Result<CohomologyGroup> {
        let pres = linalg::quotient_presentation(&self.b1, amb)?;
        let representatives = pres.representatives.iter().map(|w| self.materialize(w)).collect();
        Ok(CohomologyGroup { invariants: pres.invariants, representatives })
    }
}

/// Basis of Z^1 as full value tables.
pub fn cocycle_space(module: &GModule) -> Result<Vec<Cocycle>> {
    if module.group().generators().is_empty() {
        return Ok(Vec::new());
    }
    let sys = CocycleSystem::new(module)?;
    let z1 = sys.z1();
    Ok((0..z1.cols()).map(|j| sys.materialize(&z1.col_vec(j))).collect())
}

/// Basis of B^1 as full value tables (image of A -> ((sigma - 1) A)).
pub fn coboundaries(module: &GModule) -> Vec<Cocycle> {
    let g = module.group();
    let m = module.modulus();
    let n = module.rank();
    if g.generators().is_empty() {
        return Vec::new();
    }
    let identity = ModMatrix::identity(m, n);
    (0..n)
        .map(|j| {
            let mut a = vec![0u64; n];
            a[j] = 1;
            let values = g.elements().iter().map(|e| e.sub(&identity).mul_vec(&a)).collect();
            Cocycle { values }
        })
        .collect()
}

/// H^1(G, M) = Z^1 / B^1 with invariant factors and representatives.
pub fn h1(module: &GModule) -> Result<CohomologyGroup> {
    if module.group().generators().is_empty() {
        return Ok(CohomologyGroup::trivial());
    }
    let sys = CocycleSystem::new(module)?;
    let z1 = sys.z1();
    sys.present(&z1)
}

/// Basis of Z^1_loc: cocycles with Z_sigma in Im(sigma - 1) for every sigma.
pub fn local_cocycles(module: &GModule) -> Result<Vec<Cocycle>> {
    if module.group().generators().is_empty() {
        return Ok(Vec::new());
    }
    let sys = CocycleSystem::new(module)?;
    let z = sys.z1loc();
    Ok((0..z.cols()).map(|j| sys.materialize(&z.col_vec(j))).collect())
}

/// H^1_loc by the per-element local conditions.
pub fn h1loc(module: &GModule) -> Result<CohomologyGroup> {
    if module.group().generators().is_empty() {
        return Ok(CohomologyGroup::trivial());
    }
    let sys = CocycleSystem::new(module)?;
    let zloc = sys.z1loc();
    sys.present(&zloc)
}

/// Both H^1 and H^1_loc from a single solved system.
pub struct CohomologyAnalysis {
    pub h1: CohomologyGroup,
    pub h1_loc: CohomologyGroup,
}

pub fn analyze(module: &GModule) -> Result<CohomologyAnalysis> {
    if module.group().generators().is_empty() {
        return Ok(CohomologyAnalysis {
            h1: CohomologyGroup::trivial(),
            h1_loc: CohomologyGroup::trivial(),
        });
    }
    let sys = CocycleSystem::new(module)?;
    let z1 = sys.z1();
    let zloc = sys.z1loc();
    Ok(CohomologyAnalysis { h1: sys.present(&z1)?, h1_loc: sys.present(&zloc)? })
}

/// H^1_loc by the kernel-intersection definition: compute H^1(G, M), then
/// intersect the kernels of restriction to every cyclic subgroup. For a
/// cyclic subgroup generated by c, a class restricts to zero iff its value
/// at c lies in Im(c - 1), so each cyclic subgroup contributes one linear
/// condition block on class coordinates.
pub fn h1loc_cyclic_oracle(module: &GModule) -> Result<CohomologyGroup> {
    let g = module.group();
    let m = module.modulus();
    let n = module.rank();
    if g.generators().is_empty() {
        return Ok(CohomologyGroup::trivial());
    }
    let sys = CocycleSystem::new(module)?;
    let z1 = sys.z1();
    let pres = linalg::quotient_presentation(&sys.b1, &z1)?;
    let t = pres.invariants.factors().len();
    if t == 0 {
        return Ok(CohomologyGroup::trivial());
    }
    let class_vectors: Vec<Vec<u64>> = pres.representatives.clone();
    let identity = ModMatrix::identity(m, n);
    let mut acc = RowAccumulator::new(m, t);
    for cyc in g.cyclic_subgroups() {
        let c = cyc.generator_index().expect("cyclic subgroups record a generator");
        if c == 0 {
            continue; // the trivial subgroup restricts everything to zero
        }
        let shifted = g.element(c).sub(&identity);
        let k_sigma = linalg::annihilator(&shifted);
        // column i: K_c * C_c * z_i
        let mut block = ModMatrix::zeros(m, n, t);
        for (i, z) in class_vectors.iter().enumerate() {
            let val = k_sigma.mul_vec(&sys.expressions[c as usize].mul_vec(z));
            for r in 0..n {
                block.set(r, i, val[r]);
            }
        }
        for r in 0..n {
            acc.push(block.row_vec(r));
        }
    }
    let conditions = acc.finish();
    let kernel = linalg::kernel(&conditions);
    // kernel classes modulo the relations a_i = 0 mod d_i
    let relation_cols: Vec<Vec<u64>> = (0..t)
        .map(|i| {
            let mut col = vec![0u64; t];
            col[i] = pres.invariants.factors()[i] % m.q();
            col
        })
        .collect();
    let relations = linalg::columns_matrix(m, t, relation_cols);
    let quot = linalg::quotient_presentation(&relations, &kernel)?;
    let representatives = quot
        .representatives
        .iter()
        .map(|a| {
            // class coordinates back to a generator-coordinate vector
            let mut z = vec![0u64; sys.k * n];
            for (i, &ai) in a.iter().enumerate() {
                for (zi, &ci) in z.iter_mut().zip(&class_vectors[i]) {
                    *zi = m.add(*zi, m.mul(ai, ci));
                }
            }
            sys.materialize(&z)
        })
        .collect();
    Ok(CohomologyGroup { invariants: quot.invariants, representatives })
}

/// Value-wise restriction of a cocycle to a subgroup, returned over the
/// subgroup's own enumeration together with the restricted module.
pub fn restriction(
    module: &GModule,
    c: &Cocycle,
    sub: &Subgroup<'_>,
) -> Result<(GModule, Cocycle)> {
    let g = module.group();
    if !std::ptr::eq(sub.parent(), g) {
        return Err(Error::SubgroupMismatch);
    }
    if c.values.len() != g.order() {
        return Err(Error::DimensionMismatch("cocycle table does not match the group".into()));
    }
    let h = sub.to_group();
    let mut values = Vec::with_capacity(h.order());
    for i in 0..h.order() as u32 {
        let elem = h.element(i);
        let parent_idx = g.index_of(elem).ok_or(Error::SubgroupMismatch)?;
        values.push(c.value(parent_idx).to_vec());
    }
    Ok((GModule::natural(h), Cocycle { values }))
}

/// A with Z_sigma = (sigma - 1) A for all sigma, or None. It suffices to
/// solve on the generators: the cocycle identity extends the certificate
/// to every product.
pub fn is_coboundary(module: &GModule, c: &Cocycle) -> Result<Option<Vec<u64>>> {
    let g = module.group();
    let m = module.modulus();
    let n = module.rank();
    if c.values.len() != g.order() {
        return Err(Error::DimensionMismatch("cocycle table does not match the group".into()));
    }
    if g.generators().is_empty() {
        return Ok(Some(vec![0; n]));
    }
    let identity = ModMatrix::identity(m, n);
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut rhs: Vec<u64> = Vec::new();
    for gen in g.generators() {
        let idx = g.index_of(gen).expect("generators are elements");
        let block = gen.sub(&identity);
        for r in 0..n {
            rows.push(block.row_vec(r));
            rhs.push(c.value(idx)[r]);
        }
    }
    let system = ModMatrix::from_rows(m, n, rows);
    linalg::solve(&system, &rhs)
}
