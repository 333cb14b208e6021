//! Exhaustive search over the subgroup lattice of GL2(Z/4): groups with
//! nontrivial H^1_loc exist there, unlike over any prime field.

use cohomolocal::cohomology::h1loc;
use cohomolocal::constructions::general_linear_group;
use cohomolocal::gmodule::GModule;
use cohomolocal::ring::Modulus;

fn main() {
    let z4 = Modulus::new(2, 2).unwrap();
    let ambient = general_linear_group(2, z4, 1000).unwrap();
    let subs = ambient.all_subgroups(10_000).unwrap();
    println!("GL2(Z/4): order {}, {} subgroups", ambient.order(), subs.len());

    let mut witnesses = 0;
    let mut smallest: Option<(usize, String)> = None;
    for sub in &subs {
        let g = sub.to_group();
        let module = GModule::natural(g);
        let h = h1loc(&module).unwrap();
        if !h.is_trivial() {
            witnesses += 1;
            if smallest.as_ref().map_or(true, |(o, _)| sub.order() < *o) {
                let gens: Vec<String> = module
                    .group()
                    .generators()
                    .iter()
                    .map(|m| m.to_string())
                    .collect();
                smallest = Some((sub.order(), format!("{} -> {}", gens.join(", "), h.invariants())));
            }
        }
    }
    println!("subgroups with nontrivial H^1_loc: {witnesses}");
    if let Some((order, desc)) = smallest {
        println!("smallest witness has order {order}: {desc}");
    }
}
