//! The structure trichotomy: irreducible, reducible-indecomposable, or
//! decomposable, with verified witnesses.

use cohomolocal::constructions::{block_diag, special_linear_group};
use cohomolocal::gmodule::{structure, GModule};
use cohomolocal::group::MatrixGroup;
use cohomolocal::matrix::ModMatrix;
use cohomolocal::ring::Modulus;

fn show(label: &str, module: &GModule) {
    let v = structure(module).unwrap();
    print!("{label}: {:?}", v.kind);
    if v.by_convention {
        print!(" (reducibility witnessed by pM, by convention for l > 1)");
    }
    if let Some((u, w)) = &v.complement {
        print!(" with complement ranks {} + {}", u.rows(), w.rows());
    }
    println!();
}

fn main() {
    let z5 = Modulus::new(5, 1).unwrap();
    let sl25 = special_linear_group(2, z5, 1000).unwrap();
    show("SL2(5) natural module", &GModule::natural(sl25.clone()));

    let z3 = Modulus::new(3, 1).unwrap();
    let j = MatrixGroup::closure(
        vec![ModMatrix::new(z3, 2, 2, vec![1, 1, 0, 1]).unwrap()],
        100,
    )
    .unwrap();
    show("unipotent <J> mod 3", &GModule::natural(j.clone()));

    let jj = block_diag(&[&j, &j]).unwrap();
    show("diag(J) + diag(J) blocks", &GModule::natural(jj));

    let trivial = MatrixGroup::trivial(z5, 2);
    show("trivial action on (Z/5)^2", &GModule::natural(trivial));
}
