//! Exact linear algebra over Z/p^l Z: canonical Howell forms, solvability,
//! annihilators and quotient invariants.

use cohomolocal::linalg;
use cohomolocal::matrix::ModMatrix;
use cohomolocal::ring::Modulus;

fn main() {
    let z4 = Modulus::new(2, 2).unwrap();

    // Two presentations of the same row module over Z/4 canonicalize to the
    // same basis.
    let a = ModMatrix::new(z4, 2, 2, vec![2, 2, 0, 2]).unwrap();
    let h = linalg::howell(&a);
    println!("howell({a}) = {} (module order {})", h.basis(), h.module_order());

    // Over a non-field ring the echelon span can miss module elements; the
    // Howell completion catches them.
    let b = ModMatrix::new(z4, 1, 2, vec![2, 1]).unwrap();
    let hb = linalg::howell(&b);
    println!("howell({b}) = {} with {} basis rows", hb.basis(), hb.rank());

    // Exact solvability: 2x = 2 has a solution mod 4, 2x = 1 does not.
    let two = ModMatrix::new(z4, 1, 1, vec![2]).unwrap();
    println!("solve 2x=2 over Z/4: {:?}", linalg::solve(&two, &[2]).unwrap());
    println!("solve 2x=1 over Z/4: {:?}", linalg::solve(&two, &[1]).unwrap());

    // The annihilator of a column module cuts it out as a kernel.
    let k = linalg::annihilator(&two);
    println!("annihilator of Im(2) over Z/4: {k}");

    // Invariant factors of (Z/4) / (2 Z/4).
    let full = ModMatrix::identity(z4, 1);
    let sub = two.clone();
    let inv = linalg::quotient_invariants(&sub, &full).unwrap();
    println!("(Z/4)/(2Z/4) = {inv}");
}
