//! Exhaustive reference oracle for the cohomology engine.
//!
//! Everything here is pure enumeration: candidate cocycles are produced by
//! assigning arbitrary module values to the generators, extended along the
//! multiplication action with conflict detection, and filtered by checking
//! the defining conditions element by element. Quotient invariants are read
//! off from torsion counts. None of the Howell/kernel machinery of the
//! decision path is used, so agreement between the two is meaningful.
//!
//! Feasible only for tiny instances; guarded by hard budgets.

use crate::cohomology::Cocycle;
use crate::error::{Error, Result};
use crate::gmodule::GModule;
use std::collections::HashSet;

/// Value table of a map G -> M in the group's enumeration order.
pub type ValueTable = Vec<Vec<u64>>;

const ASSIGNMENT_BUDGET: u128 = 1 << 24;

fn all_module_vectors(module: &GModule) -> Vec<Vec<u64>> {
    let q = module.modulus().q();
    let n = module.rank();
    let total = (q as u128).pow(n as u32);
    (0..total)
        .map(|code| {
            let mut v = vec![0u64; n];
            let mut c = code;
            for x in v.iter_mut() {
                *x = (c % q as u128) as u64;
                c /= q as u128;
            }
            v
        })
        .collect()
}

/// All cocycles by brute force over generator assignments.
pub fn enumerate_cocycles(module: &GModule) -> Result<Vec<ValueTable>> {
    let g = module.group();
    let m = module.modulus();
    let n = module.rank();
    let k = g.generators().len();
    if k == 0 {
        return Ok(vec![vec![vec![0; n]]]);
    }
    let vectors = all_module_vectors(module);
    let space = (vectors.len() as u128).pow(k as u32);
    if space > ASSIGNMENT_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "{space} generator assignments exceed the brute-force budget"
        )));
    }
    // BFS fill schedule and the residual check edges
    let gen_indices: Vec<u32> = g
        .generators()
        .iter()
        .map(|gen| g.index_of(gen).expect("generators are elements"))
        .collect();
    let mut schedule: Vec<(u32, u32, usize)> = Vec::new(); // (target, source, gen)
    let mut checks: Vec<(u32, usize, u32)> = Vec::new(); // (source, gen, target)
    let mut seen = vec![false; g.order()];
    seen[0] = true;
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let s = queue[head];
        head += 1;
        for (j, &gi) in gen_indices.iter().enumerate() {
            let t = g.product(s, gi);
            if !seen[t as usize] {
                seen[t as usize] = true;
                schedule.push((t, s, j));
                queue.push(t);
            } else {
                checks.push((s, j, t));
            }
        }
    }
    let mut out = Vec::new();
    let mut assignment = vec![0usize; k];
    loop {
        let mut table: Vec<Option<Vec<u64>>> = vec![None; g.order()];
        table[0] = Some(vec![0; n]);
        for &(t, s, j) in &schedule {
            let sv = table[s as usize].as_ref().unwrap().clone();
            let gv = g.element(s).mul_vec(&vectors[assignment[j]]);
            table[t as usize] =
                Some(sv.iter().zip(gv).map(|(&a, b)| m.add(a, b)).collect());
        }
        let mut ok = true;
        for &(s, j, t) in &checks {
            let sv = table[s as usize].as_ref().unwrap();
            let gv = g.element(s).mul_vec(&vectors[assignment[j]]);
            let expect: Vec<u64> = sv.iter().zip(gv).map(|(&a, b)| m.add(a, b)).collect();
            if table[t as usize].as_ref().unwrap() != &expect {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(table.into_iter().map(Option::unwrap).collect());
        }
        // odometer
        let mut i = 0;
        loop {
            if i == k {
                return Ok(out);
            }
            assignment[i] += 1;
            if assignment[i] < vectors.len() {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}

/// All coboundary tables (sigma - 1) A over A in M.
pub fn coboundary_set(module: &GModule) -> HashSet<ValueTable> {
    let g = module.group();
    let m = module.modulus();
    let identity = crate::matrix::ModMatrix::identity(m, module.rank());
    let mut out = HashSet::new();
    for a in all_module_vectors(module) {
        let table: ValueTable =
            g.elements().iter().map(|e| e.sub(&identity).mul_vec(&a)).collect();
        out.insert(table);
    }
    out
}

/// Filters cocycles by the per-element local condition, each condition
/// checked by exhausting witness candidates A_sigma over the module.
pub fn local_filter(module: &GModule, cocycles: &[ValueTable]) -> Vec<ValueTable> {
    let g = module.group();
    let m = module.modulus();
    let identity = crate::matrix::ModMatrix::identity(m, module.rank());
    let vectors = all_module_vectors(module);
    let images: Vec<HashSet<Vec<u64>>> = g
        .elements()
        .iter()
        .map(|e| {
            let shifted = e.sub(&identity);
            vectors.iter().map(|a| shifted.mul_vec(a)).collect()
        })
        .collect();
    cocycles
        .iter()
        .filter(|z| z.iter().enumerate().all(|(i, v)| images[i].contains(v)))
        .cloned()
        .collect()
}

/// Invariant factors of span(list)/span(sub) from torsion counts:
/// N_k = #{x : p^k x in sub} determines the abelian p-group type.
fn torsion_invariants(
    module: &GModule,
    list: &[ValueTable],
    sub: &HashSet<ValueTable>,
) -> Vec<u64> {
    let m = module.modulus();
    let p = m.p();
    let q = m.q();
    let quotient_order = list.len() / sub.len();
    if quotient_order == 1 {
        return Vec::new();
    }
    let mut exps: Vec<u32> = vec![0];
    let mut k = 1u32;
    loop {
        let pk = p.pow(k) % q;
        let count = list
            .iter()
            .filter(|z| {
                let scaled: ValueTable = z
                    .iter()
                    .map(|v| v.iter().map(|&e| (e * pk) % q).collect())
                    .collect();
                sub.contains(&scaled)
            })
            .count()
            / sub.len();
        let mut e = 0u32;
        let mut c = count as u64;
        while c > 1 {
            assert_eq!(c % p, 0, "torsion count must be a power of p");
            c /= p;
            e += 1;
        }
        exps.push(e);
        if count == quotient_order {
            break;
        }
        k += 1;
    }
    // d_k = #{i : lambda_i >= k}; multiplicity of p^k is d_k - d_{k+1}
    let ds: Vec<u32> = (1..exps.len()).map(|i| exps[i] - exps[i - 1]).collect();
    let mut factors = Vec::new();
    for (i, &d) in ds.iter().enumerate() {
        let next = ds.get(i + 1).copied().unwrap_or(0);
        for _ in 0..(d - next) {
            factors.push(p.pow(i as u32 + 1));
        }
    }
    factors
}

/// (H^1 invariant factors, H^1_loc invariant factors) by pure enumeration.
pub fn brute_h1(module: &GModule) -> Result<(Vec<u64>, Vec<u64>)> {
    let z1 = enumerate_cocycles(module)?;
    let b1 = coboundary_set(module);
    let zloc = local_filter(module, &z1);
    let h1 = torsion_invariants(module, &z1, &b1);
    let h1loc = torsion_invariants(module, &zloc, &b1);
    Ok((h1, h1loc))
}

/// Number of distinct maps in the additive span of the given cocycles.
pub fn span_order(module: &GModule, cocycles: &[Cocycle]) -> u128 {
    span_set(module, cocycles).len() as u128
}

/// The additive span of the given cocycles as a set of value tables.
pub fn span_set(module: &GModule, cocycles: &[Cocycle]) -> HashSet<ValueTable> {
    let m = module.modulus();
    let zero: ValueTable = vec![vec![0; module.rank()]; module.group().order()];
    let mut seen: HashSet<ValueTable> = HashSet::new();
    seen.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for c in cocycles {
            let sum: ValueTable = x
                .iter()
                .zip(c.values())
                .map(|(a, b)| a.iter().zip(b).map(|(&u, &v)| m.add(u, v)).collect())
                .collect();
            if seen.insert(sum.clone()) {
                frontier.push(sum);
            }
        }
    }
    seen
}
