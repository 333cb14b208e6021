//! The complete subgroup lattice of a small ambient group.

use cohomolocal::constructions::general_linear_group;
use cohomolocal::ring::Modulus;
use std::collections::BTreeMap;

fn main() {
    let z3 = Modulus::new(3, 1).unwrap();
    let gl23 = general_linear_group(2, z3, 1000).unwrap();
    let subs = gl23.all_subgroups(10_000).unwrap();
    println!("GL2(3) has order {} and {} subgroups", gl23.order(), subs.len());

    let mut by_order: BTreeMap<usize, usize> = BTreeMap::new();
    for s in &subs {
        *by_order.entry(s.order()).or_default() += 1;
    }
    for (order, count) in by_order {
        println!("  order {order:3}: {count} subgroup(s)");
    }
}
