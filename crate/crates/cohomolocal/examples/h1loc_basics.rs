//! Z^1, B^1, H^1 and H^1_loc on the textbook-sized cases, including the
//! cross-check between the two definitions of H^1_loc.

use cohomolocal::cohomology::{
    coboundaries, cocycle_space, h1, h1loc, h1loc_cyclic_oracle, local_cocycles,
};
use cohomolocal::gmodule::GModule;
use cohomolocal::group::MatrixGroup;
use cohomolocal::matrix::ModMatrix;
use cohomolocal::ring::Modulus;

fn survey(label: &str, module: &GModule) {
    println!("{label}:");
    println!("  Z^1 basis size      : {}", cocycle_space(module).unwrap().len());
    println!("  B^1 basis size      : {}", coboundaries(module).len());
    println!("  Z^1_loc basis size  : {}", local_cocycles(module).unwrap().len());
    println!("  H^1                 : {}", h1(module).unwrap().invariants());
    println!("  H^1_loc             : {}", h1loc(module).unwrap().invariants());
    println!("  H^1_loc (oracle)    : {}", h1loc_cyclic_oracle(module).unwrap().invariants());
}

fn main() {
    let z3 = Modulus::new(3, 1).unwrap();
    let j = MatrixGroup::closure(
        vec![ModMatrix::new(z3, 2, 2, vec![1, 1, 0, 1]).unwrap()],
        100,
    )
    .unwrap();
    survey("cyclic unipotent <J> mod 3", &GModule::natural(j));

    let z4 = Modulus::new(2, 2).unwrap();
    let minus = MatrixGroup::closure(vec![ModMatrix::scalar(z4, 2, 3)], 100).unwrap();
    survey("{±I} mod 4", &GModule::natural(minus));
}
