//! Matrix-group closure: exact element sets, element orders, cyclic
//! subgroups, Sylow subgroups and scalar detection.

use cohomolocal::group::{element_order, MatrixGroup};
use cohomolocal::matrix::ModMatrix;
use cohomolocal::ring::Modulus;

fn main() {
    let z5 = Modulus::new(5, 1).unwrap();
    let e12 = ModMatrix::new(z5, 2, 2, vec![1, 1, 0, 1]).unwrap();
    let e21 = ModMatrix::new(z5, 2, 2, vec![1, 0, 1, 1]).unwrap();

    let sl25 = MatrixGroup::closure(vec![e12.clone(), e21], 10_000).unwrap();
    println!("|SL2(5)| = {}", sl25.order());
    println!("SL2(5) contains the scalar {:?}", sl25.contains_scalar());
    println!("2-Sylow has order {}", sl25.sylow(2).order());
    println!("5-Sylow has order {}", sl25.sylow(5).order());
    println!("distinct cyclic subgroups: {}", sl25.cyclic_subgroups().len());

    println!("order of a transvection mod 5: {}", element_order(&e12).unwrap());
    let j9 = ModMatrix::new(Modulus::new(3, 2).unwrap(), 2, 2, vec![1, 1, 0, 1]).unwrap();
    println!("order of [[1,1],[0,1]] mod 9: {}", element_order(&j9).unwrap());
}
