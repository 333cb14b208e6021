//! Finite matrix-group engine: breadth-first closure, element orders,
//! cyclic subgroups, Sylow p-subgroups, scalar detection and the full
//! subgroup lattice for small groups.
//!
//! Elements are canonicalized by their row-major entry tuple, which makes
//! hash-set closure and O(1) membership possible. The closure remembers a
//! BFS spanning tree of the Cayley graph (element = parent * generator);
//! the cohomology engine propagates cocycle unknowns along that tree.

use crate::error::{Error, Result};
use crate::matrix::ModMatrix;
use crate::ring::Modulus;
use std::collections::HashMap;

pub const DEFAULT_ELEMENT_CAP: usize = 200_000;

/// Largest group order for which the full subgroup lattice is computed.
pub const SUBGROUP_LATTICE_ORDER_LIMIT: usize = 1000;

/// Largest group order for which a dense multiplication table is built.
const MULT_TABLE_LIMIT: usize = 4096;

#[derive(Clone)]
pub struct MatrixGroup {
    modulus: Modulus,
    dim: usize,
    generators: Vec<ModMatrix>,
    elements: Vec<ModMatrix>,
    index: HashMap<Vec<u64>, u32>,
    /// parent_edges[i] = Some((parent, gen)) with elements[i] = elements[parent] * generators[gen].
    parent_edges: Vec<Option<(u32, u32)>>,
}

impl MatrixGroup {
    /// Breadth-first product closure of the generators.
    pub fn closure(generators: Vec<ModMatrix>, element_cap: usize) -> Result<Self> {
        if element_cap == 0 {
            return Err(Error::CapExceeded { cap: 0 });
        }
        let (modulus, dim) = match generators.first() {
            Some(g) => {
                if !g.is_square() {
                    return Err(Error::DimensionMismatch("generators must be square".into()));
                }
                (g.modulus(), g.rows())
            }
            None => {
                return Err(Error::InvalidInput(
                    "closure needs at least one generator; use trivial() for the empty case".into(),
                ))
            }
        };
        for g in &generators {
            if g.modulus() != modulus {
                return Err(Error::ModulusMismatch);
            }
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::DimensionMismatch("generator dimensions differ".into()));
            }
            if !g.is_invertible() {
                return Err(Error::NonInvertibleGenerator);
            }
        }
        let identity = ModMatrix::identity(modulus, dim);
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::new();
        index.insert(identity.entries().to_vec(), 0u32);
        let mut parent_edges: Vec<Option<(u32, u32)>> = vec![None];
        let mut cursor = 0usize;
        while cursor < elements.len() {
            for (gi, g) in generators.iter().enumerate() {
                let prod = elements[cursor].mul(g);
                let key = prod.entries().to_vec();
                if !index.contains_key(&key) {
                    if elements.len() >= element_cap {
                        return Err(Error::CapExceeded { cap: element_cap });
                    }
                    index.insert(key, elements.len() as u32);
                    elements.push(prod);
                    parent_edges.push(Some((cursor as u32, gi as u32)));
                }
            }
            cursor += 1;
        }
        Ok(MatrixGroup { modulus, dim, generators, elements, index, parent_edges })
    }

    pub fn trivial(modulus: Modulus, dim: usize) -> Self {
        let identity = ModMatrix::identity(modulus, dim);
        let mut index = HashMap::new();
        index.insert(identity.entries().to_vec(), 0u32);
        MatrixGroup {
            modulus,
            dim,
            generators: Vec::new(),
            elements: vec![identity],
            index,
            parent_edges: vec![None],
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[ModMatrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[ModMatrix] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &ModMatrix {
        &self.elements[i as usize]
    }

    pub fn parent_edge(&self, i: u32) -> Option<(u32, u32)> {
        self.parent_edges[i as usize]
    }

    pub fn index_of(&self, m: &ModMatrix) -> Option<u32> {
        self.index.get(m.entries()).copied()
    }

    pub fn contains(&self, m: &ModMatrix) -> bool {
        self.index_of(m).is_some()
    }

    pub fn product(&self, i: u32, j: u32) -> u32 {
        let prod = self.elements[i as usize].mul(&self.elements[j as usize]);
        *self.index.get(prod.entries()).expect("closed under products")
    }

    pub fn inverse_index(&self, i: u32) -> u32 {
        let inv = self.elements[i as usize].inverse().expect("group elements are invertible");
        *self.index.get(inv.entries()).expect("closed under inverses")
    }

    pub fn element_order_of(&self, i: u32) -> u64 {
        let mut cur = i;
        let mut k = 1u64;
        while cur != 0 {
            cur = self.product(cur, i);
            k += 1;
        }
        k
    }

    /// Dense index-level multiplication table for small groups.
    pub fn multiplication_table(&self) -> Option<MultTable> {
        let n = self.order();
        if n > MULT_TABLE_LIMIT {
            return None;
        }
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = self.product(i as u32, j as u32);
            }
        }
        Some(MultTable { order: n, table })
    }

    /// One Subgroup per distinct cyclic subgroup; every element of the group
    /// appears in at least one of them.
    pub fn cyclic_subgroups(&self) -> Vec<Subgroup<'_>> {
        let mut seen: HashMap<Vec<u32>, u32> = HashMap::new();
        for i in 0..self.order() as u32 {
            let mut powers = vec![0u32];
            let mut cur = i;
            while cur != 0 {
                powers.push(cur);
                cur = self.product(cur, i);
            }
            powers.sort_unstable();
            powers.dedup();
            seen.entry(powers).or_insert(i);
        }
        let mut subs: Vec<(Vec<u32>, u32)> = seen.into_iter().collect();
        subs.sort();
        subs.into_iter()
            .map(|(indices, g)| Subgroup { parent: self, indices, generator: Some(g) })
            .collect()
    }

    /// A Sylow p-subgroup, found by greedy extension: start from an element
    /// of maximal p-power order and adjoin p-elements while the join stays a
    /// p-group. A maximal p-subgroup of a finite group is Sylow.
    pub fn sylow(&self, p: u64) -> Subgroup<'_> {
        let mut p_part = 1usize;
        let mut rest = self.order();
        while rest % p as usize == 0 {
            rest /= p as usize;
            p_part *= p as usize;
        }
        if p_part == 1 {
            return Subgroup { parent: self, indices: vec![0], generator: Some(0) };
        }
        let mut p_elements: Vec<(u64, u32)> = Vec::new();
        for i in 0..self.order() as u32 {
            let ord = self.element_order_of(i);
            if is_p_power(ord, p) {
                p_elements.push((ord, i));
            }
        }
        p_elements.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let table = self.multiplication_table();
        let seed = p_elements[0].1;
        let mut current = self.close_indices_impl(&[seed], table.as_ref(), false);
        loop {
            if current.len() == p_part {
                break;
            }
            let mut extended = false;
            for &(_, x) in &p_elements {
                if current.binary_search(&x).is_ok() {
                    continue;
                }
                let mut seeds = current.clone();
                seeds.push(x);
                let join = self.close_indices_impl(&seeds, table.as_ref(), false);
                if is_p_power(join.len() as u64, p) {
                    current = join;
                    extended = true;
                    break;
                }
            }
            if !extended {
                break;
            }
        }
        debug_assert_eq!(current.len(), p_part);
        Subgroup { parent: self, indices: current, generator: None }
    }

    /// Some nontrivial scalar lambda with lambda*I in the group, preferring
    /// lambda with lambda - 1 a unit; None if only the identity is scalar.
    pub fn contains_scalar(&self) -> Option<u64> {
        let m = self.modulus;
        let mut fallback = None;
        for e in &self.elements {
            if let Some(lambda) = e.as_scalar() {
                if lambda == 1 {
                    continue;
                }
                if m.is_unit(m.sub(lambda, 1)) {
                    return Some(lambda);
                }
                if fallback.is_none() {
                    fallback = Some(lambda);
                }
            }
        }
        fallback
    }

    /// Sorted index closure of a seed set (identity always included).
    pub fn close_indices(&self, seed: &[u32]) -> Vec<u32> {
        self.close_indices_impl(seed, None, false)
    }

    /// Subgroup generated by the given elements, by BFS right-multiplication.
    /// A submonoid of a finite group is a subgroup, so generator products
    /// suffice. Cost O(|span| * |gens|), fit for large parents.
    pub fn span_indices(&self, gens: &[u32]) -> Vec<u32> {
        let mut member = vec![false; self.order()];
        member[0] = true;
        let mut list = vec![0u32];
        let mut cursor = 0usize;
        while cursor < list.len() {
            let a = list[cursor];
            cursor += 1;
            for &g in gens {
                let prod = self.product(a, g);
                if !member[prod as usize] {
                    member[prod as usize] = true;
                    list.push(prod);
                }
            }
        }
        list.sort_unstable();
        list
    }

    fn close_indices_impl(
        &self,
        seed: &[u32],
        table: Option<&MultTable>,
        early_exit_full: bool,
    ) -> Vec<u32> {
        let mut member = vec![false; self.order()];
        member[0] = true;
        let mut list = vec![0u32];
        for &s in seed {
            if !member[s as usize] {
                member[s as usize] = true;
                list.push(s);
            }
        }
        let mut cursor = 0usize;
        while cursor < list.len() {
            let a = list[cursor];
            cursor += 1;
            let mut bi = 0usize;
            while bi < list.len() {
                let b = list[bi];
                bi += 1;
                let prods = match table {
                    Some(t) => [t.product(a, b), t.product(b, a)],
                    None => [self.product(a, b), self.product(b, a)],
                };
                for prod in prods {
                    if !member[prod as usize] {
                        member[prod as usize] = true;
                        list.push(prod);
                        // a subgroup larger than half the group is the group
                        if early_exit_full && list.len() > self.order() / 2 {
                            return (0..self.order() as u32).collect();
                        }
                    }
                }
            }
        }
        list.sort_unstable();
        list
    }

    /// Complete subgroup lattice: join-closure of the cyclic subgroups.
    /// Joining known subgroups with cyclic ones to a fixpoint is complete,
    /// since any subgroup arises by adjoining cyclic generators one at a
    /// time, and every intermediate join appears along the way.
    pub fn all_subgroups(&self, count_cap: usize) -> Result<Vec<Subgroup<'_>>> {
        if self.order() > SUBGROUP_LATTICE_ORDER_LIMIT {
            return Err(Error::CapExceeded { cap: SUBGROUP_LATTICE_ORDER_LIMIT });
        }
        let table = self.multiplication_table();
        let cyclics: Vec<Vec<u32>> =
            self.cyclic_subgroups().into_iter().map(|c| c.indices).collect();
        let mut known: HashMap<Vec<u32>, ()> = HashMap::new();
        let mut list: Vec<Vec<u32>> = Vec::new();
        for c in &cyclics {
            if known.insert(c.clone(), ()).is_none() {
                list.push(c.clone());
            }
        }
        let mut frontier: Vec<Vec<u32>> = list.clone();
        while !frontier.is_empty() {
            let mut new_items: Vec<Vec<u32>> = Vec::new();
            for a in &frontier {
                if a.len() == self.order() {
                    continue;
                }
                for c in &cyclics {
                    let mut seeds = a.clone();
                    seeds.extend_from_slice(c);
                    let join = self.close_indices_impl(&seeds, table.as_ref(), true);
                    if !known.contains_key(&join) {
                        known.insert(join.clone(), ());
                        new_items.push(join);
                        if known.len() > count_cap {
                            return Err(Error::CapExceeded { cap: count_cap });
                        }
                    }
                }
            }
            list.extend(new_items.iter().cloned());
            frontier = new_items;
        }
        list.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        Ok(list
            .into_iter()
            .map(|indices| Subgroup { parent: self, indices, generator: None })
            .collect())
    }

    /// Greedy small generating set: highest-order elements first.
    pub fn minimal_generating_indices(&self) -> Vec<u32> {
        if self.order() == 1 {
            return Vec::new();
        }
        let mut candidates: Vec<(u64, u32)> =
            (0..self.order() as u32).map(|i| (self.element_order_of(i), i)).collect();
        candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut gens: Vec<u32> = Vec::new();
        let mut span = vec![0u32];
        for &(_, i) in &candidates {
            if span.binary_search(&i).is_ok() {
                continue;
            }
            gens.push(i);
            span = self.span_indices(&gens);
            if span.len() == self.order() {
                break;
            }
        }
        gens
    }

    /// Rebuilds the group from a small generating set; useful before
    /// cohomology on groups constructed with large generator families.
    pub fn with_minimal_generators(&self) -> Self {
        if self.order() == 1 {
            return Self::trivial(self.modulus, self.dim);
        }
        let gens: Vec<ModMatrix> =
            self.minimal_generating_indices().iter().map(|&i| self.element(i).clone()).collect();
        Self::closure(gens, self.order()).expect("regenerating an enumerated group")
    }

    /// The whole group as a subgroup of itself.
    pub fn full_subgroup(&self) -> Subgroup<'_> {
        Subgroup { parent: self, indices: (0..self.order() as u32).collect(), generator: None }
    }
}

fn is_p_power(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// Least k >= 1 with g^k = I.
pub fn element_order(g: &ModMatrix) -> Result<u64> {
    if !g.is_invertible() {
        return Err(Error::NonInvertibleGenerator);
    }
    let mut cur = g.clone();
    let mut k = 1u64;
    while !cur.is_identity() {
        cur = cur.mul(g);
        k += 1;
    }
    Ok(k)
}

pub struct MultTable {
    order: usize,
    table: Vec<u32>,
}

impl MultTable {
    #[inline]
    pub fn product(&self, i: u32, j: u32) -> u32 {
        self.table[i as usize * self.order + j as usize]
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

/// A subgroup is a sorted set of element indices into its parent group.
#[derive(Clone)]
pub struct Subgroup<'g> {
    parent: &'g MatrixGroup,
    indices: Vec<u32>,
    /// For cyclic subgroups, an element that generates it.
    generator: Option<u32>,
}

impl<'g> Subgroup<'g> {
    pub fn from_indices(parent: &'g MatrixGroup, mut indices: Vec<u32>) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        if indices.iter().any(|&i| i as usize >= parent.order()) {
            return Err(Error::SubgroupMismatch);
        }
        let closed = parent.close_indices(&indices);
        if closed != indices {
            return Err(Error::SubgroupMismatch);
        }
        Ok(Subgroup { parent, indices, generator: None })
    }

    pub fn parent(&self) -> &'g MatrixGroup {
        self.parent
    }

    pub fn order(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn generator_index(&self) -> Option<u32> {
        self.generator
    }

    pub fn contains_index(&self, i: u32) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.indices.len() == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = &ModMatrix> + '_ {
        self.indices.iter().map(|&i| self.parent.element(i))
    }

    /// Standalone group with the same element set, generated by a greedy
    /// small generating subset, with its own BFS enumeration.
    pub fn to_group(&self) -> MatrixGroup {
        if self.indices.len() == 1 {
            return MatrixGroup::trivial(self.parent.modulus(), self.parent.dim());
        }
        let mut candidates: Vec<(u64, u32)> = self
            .indices
            .iter()
            .map(|&i| (self.parent.element_order_of(i), i))
            .collect();
        candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut gens: Vec<u32> = Vec::new();
        let mut span = vec![0u32];
        for &(_, i) in &candidates {
            if span.binary_search(&i).is_ok() {
                continue;
            }
            gens.push(i);
            span = self.parent.span_indices(&gens);
            if span.len() == self.indices.len() {
                break;
            }
        }
        debug_assert_eq!(span, self.indices);
        let mats: Vec<ModMatrix> = gens.iter().map(|&i| self.parent.element(i).clone()).collect();
        MatrixGroup::closure(mats, self.indices.len()).expect("subgroup closure within parent")
    }
}

impl std::fmt::Debug for MatrixGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "MatrixGroup(dim {}, {} generators, order {}, over {})",
            self.dim,
            self.generators.len(),
            self.order(),
            self.modulus
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u64, l: u32) -> Modulus {
        Modulus::new(p, l).unwrap()
    }

    fn mat(modulus: Modulus, e: Vec<i64>) -> ModMatrix {
        let n = (e.len() as f64).sqrt() as usize;
        ModMatrix::new(modulus, n, n, e).unwrap()
    }

    fn gl2(q_mod: Modulus) -> MatrixGroup {
        let mut gens = vec![mat(q_mod, vec![1, 1, 0, 1]), mat(q_mod, vec![1, 0, 1, 1])];
        for u in q_mod.unit_group_generators() {
            gens.push(mat(q_mod, vec![u as i64, 0, 0, 1]));
        }
        MatrixGroup::closure(gens, DEFAULT_ELEMENT_CAP).unwrap()
    }

    #[test]
    fn closure_examples() {
        let t = MatrixGroup::trivial(m(5, 1), 2);
        assert_eq!(t.order(), 1);

        let g = MatrixGroup::closure(vec![mat(m(5, 1), vec![1, 1, 0, 1])], 100).unwrap();
        assert_eq!(g.order(), 5); // unipotent element order = p

        // companion of x^2+x+1: order verified by exhaustive powering
        let c = mat(m(5, 1), vec![0, 4, 1, 4]);
        let mut pow = c.clone();
        let mut brute_order = 1;
        while !pow.is_identity() {
            pow = pow.mul(&c);
            brute_order += 1;
        }
        assert_eq!(brute_order, 3);
        let g = MatrixGroup::closure(vec![c], 100).unwrap();
        assert_eq!(g.order() as u64, brute_order);
    }

    #[test]
    fn closure_rejects_bad_input() {
        assert!(matches!(
            MatrixGroup::closure(vec![mat(m(2, 2), vec![2, 0, 0, 1])], 10),
            Err(Error::NonInvertibleGenerator)
        ));
        assert!(matches!(
            MatrixGroup::closure(vec![mat(m(5, 1), vec![1, 1, 0, 1])], 3),
            Err(Error::CapExceeded { cap: 3 })
        ));
    }

    #[test]
    fn closure_is_a_group() {
        let g = gl2(m(3, 1));
        assert_eq!(g.order(), 48);
        for i in 0..g.order() as u32 {
            let _ = g.inverse_index(i); // panics if not closed under inverse
            for j in 0..g.order() as u32 {
                let _ = g.product(i, j); // panics if not closed under product
            }
        }
    }

    #[test]
    fn element_orders() {
        assert_eq!(element_order(&ModMatrix::identity(m(5, 1), 2)).unwrap(), 1);
        assert_eq!(element_order(&mat(m(5, 1), vec![4, 0, 0, 4])).unwrap(), 2);
        // (I+N)^k over Z/9: order 9, verified against brute-force powering
        let j9 = mat(m(3, 2), vec![1, 1, 0, 1]);
        let mut pow = j9.clone();
        let mut k = 1;
        while !pow.is_identity() {
            pow = pow.mul(&j9);
            k += 1;
        }
        assert_eq!(k, 9);
        assert_eq!(element_order(&j9).unwrap(), 9);
    }

    #[test]
    fn cyclic_subgroup_enumeration() {
        let t = MatrixGroup::trivial(m(5, 1), 2);
        assert_eq!(t.cyclic_subgroups().len(), 1);

        let pm = MatrixGroup::closure(vec![mat(m(5, 1), vec![4, 0, 0, 4])], 10).unwrap();
        let subs = pm.cyclic_subgroups();
        assert_eq!(subs.len(), 2);
        assert_eq!(subs.iter().map(|s| s.order()).collect::<Vec<_>>(), vec![1, 2]);

        let j = MatrixGroup::closure(vec![mat(m(3, 1), vec![1, 1, 0, 1])], 10).unwrap();
        let subs = j.cyclic_subgroups();
        assert_eq!(subs.iter().map(|s| s.order()).collect::<Vec<_>>(), vec![1, 3]);

        // every element generates exactly one of the returned subgroups
        let g = gl2(m(3, 1));
        let subs = g.cyclic_subgroups();
        for i in 0..g.order() as u32 {
            let powers = {
                let mut v = vec![0u32];
                let mut cur = i;
                while cur != 0 {
                    v.push(cur);
                    cur = g.product(cur, i);
                }
                v.sort_unstable();
                v.dedup();
                v
            };
            let matching: Vec<_> =
                subs.iter().filter(|s| s.indices() == powers.as_slice()).collect();
            assert_eq!(matching.len(), 1);
        }
    }

    #[test]
    fn sylow_of_gl23() {
        let g = gl2(m(3, 1));
        let s = g.sylow(3);
        assert_eq!(s.order(), 3); // 48 = 16 * 3
        let s2 = g.sylow(2);
        assert_eq!(s2.order(), 16);
        let s5 = g.sylow(5);
        assert!(s5.is_trivial());
    }

    #[test]
    fn sylow_order_is_exact_p_part() {
        let g = gl2(m(2, 2)); // |GL2(Z/4)| = 96 = 2^5 * 3
        assert_eq!(g.order(), 96);
        assert_eq!(g.sylow(2).order(), 32);
        assert_eq!(g.sylow(3).order(), 3);
    }

    #[test]
    fn scalar_detection() {
        let t = MatrixGroup::trivial(m(5, 1), 2);
        assert_eq!(t.contains_scalar(), None);

        // SL2(5) contains -I; lambda - 1 = 3 is a unit mod 5
        let sl25 = MatrixGroup::closure(
            vec![mat(m(5, 1), vec![1, 1, 0, 1]), mat(m(5, 1), vec![1, 0, 1, 1])],
            1000,
        )
        .unwrap();
        assert_eq!(sl25.order(), 120);
        assert_eq!(sl25.contains_scalar(), Some(4));

        // unitriangular mod 3: all elements unipotent, no nontrivial scalar
        let uni = MatrixGroup::closure(vec![mat(m(3, 1), vec![1, 1, 0, 1])], 10).unwrap();
        assert_eq!(uni.contains_scalar(), None);
    }

    #[test]
    fn scalar_preference_for_unit_difference() {
        // 3I mod 4: 3 - 1 = 2 is not a unit, still reported as a fallback
        let g = MatrixGroup::closure(vec![mat(m(2, 2), vec![3, 0, 0, 3])], 10).unwrap();
        assert_eq!(g.contains_scalar(), Some(3));
    }

    #[test]
    fn lattice_of_klein_group() {
        let g = MatrixGroup::closure(
            vec![mat(m(5, 1), vec![1, 0, 0, 4]), mat(m(5, 1), vec![4, 0, 0, 1])],
            10,
        )
        .unwrap();
        assert_eq!(g.order(), 4);
        let subs = g.all_subgroups(100).unwrap();
        assert_eq!(subs.len(), 5);
    }

    #[test]
    fn lattice_of_trivial_group() {
        let t = MatrixGroup::trivial(m(3, 1), 2);
        assert_eq!(t.all_subgroups(10).unwrap().len(), 1);
    }

    /// Independent lattice oracle: grow subgroups by single-element
    /// extensions starting from the trivial subgroup. Any subgroup arises by
    /// adjoining generators one at a time, so this enumeration is complete.
    fn lattice_by_extension(g: &MatrixGroup) -> std::collections::BTreeSet<Vec<u32>> {
        let mut known = std::collections::BTreeSet::new();
        known.insert(vec![0u32]);
        let mut frontier = vec![vec![0u32]];
        while let Some(h) = frontier.pop() {
            for x in 0..g.order() as u32 {
                if h.binary_search(&x).is_ok() {
                    continue;
                }
                let mut seeds = h.clone();
                seeds.push(x);
                let ext = g.close_indices(&seeds);
                if known.insert(ext.clone()) {
                    frontier.push(ext);
                }
            }
        }
        known
    }

    #[test]
    fn lattice_of_gl23_cross_checked() {
        let g = gl2(m(3, 1));
        let subs = g.all_subgroups(10_000).unwrap();
        let oracle = lattice_by_extension(&g);
        assert_eq!(subs.len(), oracle.len());
        assert_eq!(subs.len(), 55);
        for s in &subs {
            assert!(oracle.contains(s.indices()));
            assert_eq!(g.order() % s.order(), 0); // Lagrange
        }
    }

    #[test]
    fn lattice_join_and_intersection_closed() {
        let g = gl2(m(2, 1)); // GL2(2), order 6
        assert_eq!(g.order(), 6);
        let subs = g.all_subgroups(100).unwrap();
        assert_eq!(subs.len(), 6);
        for a in &subs {
            for b in &subs {
                let mut seeds = a.indices().to_vec();
                seeds.extend_from_slice(b.indices());
                let join = g.close_indices(&seeds);
                assert!(subs.iter().any(|s| s.indices() == join.as_slice()));
                let inter: Vec<u32> =
                    a.indices().iter().copied().filter(|i| b.contains_index(*i)).collect();
                assert!(subs.iter().any(|s| s.indices() == inter.as_slice()));
            }
        }
    }

    #[test]
    fn subgroup_to_group_round_trip() {
        let g = gl2(m(3, 1));
        let s = g.sylow(2);
        let h = s.to_group();
        assert_eq!(h.order(), s.order());
        for e in s.elements() {
            assert!(h.contains(e));
        }
    }

    #[test]
    fn minimal_generators_regenerate() {
        let g = gl2(m(2, 2));
        let small = g.with_minimal_generators();
        assert_eq!(small.order(), g.order());
        assert!(small.generators().len() <= 4);
    }
}
