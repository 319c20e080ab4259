//! The variation group of a degenerate form: composition, Ξ, its kernel,
//! and lifting isometries back to variations.

use mcg4::exact_linalg::IntMatrix;
use mcg4::forms::{Isometry, SymmetricForm};
use mcg4::variations::{
    kernel_basis_of_xi, lift_isometry, random_member, FormVariation,
};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn main() {
    // ⟨1⟩ ⊕ 0 ⊕ 0: corank two, so ker Ξ ≅ ℤ
    let q = SymmetricForm::diagonal(&[1, 0, 0]);
    println!("corank {}", q.corank());
    for v in kernel_basis_of_xi(&q) {
        println!("kernel generator {}", v.matrix());
    }

    let mut rng = StdRng::seed_from_u64(7);
    let a = random_member(&q, &mut rng);
    let b = random_member(&q, &mut rng);
    let ab = a.compose(&b).unwrap();
    println!("V1 = {}\nV2 = {}\nV1 * V2 = {}", a.matrix(), b.matrix(), ab.matrix());
    assert_eq!(ab.xi(), a.xi().compose(&b.xi()));
    assert!(ab.compose(&ab.inverse()).unwrap().is_zero());

    // on ⟨1⟩ ⊕ 0 the shear e1 ↦ e1 + c e2 lifts only for even c
    let q = SymmetricForm::diagonal(&[1, 0]);
    for c in 0..4 {
        let shear = Isometry::new(&q, IntMatrix::from_rows(&[[1, 0], [c, 1]])).unwrap();
        match lift_isometry(&q, &shear).unwrap() {
            Some(v) => println!("c = {c}: lifts to {}", v.matrix()),
            None => println!("c = {c}: no variation"),
        }
    }
    let v = FormVariation::new(&q, IntMatrix::from_rows(&[[2, 0], [0, 0]])).unwrap();
    println!("Ξ({}) = {}", v.matrix(), v.xi().matrix());
}
