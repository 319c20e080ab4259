//! Steenrod squares on H*(K(ℤⁿ,2); 𝔽₂) and the E3 terms they determine.

use mcg4::james_ss::{d2_matrices, e3_report, sq2, sq2_w, F2Poly};

fn main() {
    let n = 3;
    let (x1, x2) = (F2Poly::var(n, 0), F2Poly::var(n, 1));
    println!("Sq²(x1 x2) = {}", sq2(&x1.mul(&x2)).unwrap());
    println!("Sq²_w(x1²) = {}  (w = x1)", sq2_w(&x1.mul(&x1), &x1).unwrap());

    let d = d2_matrices(2, &F2Poly::var(2, 0)).unwrap();
    print!("d2^(4,1) for n = 2, w = x1:\n{}", d.d2_r1(4));

    for n in 1..=4 {
        for spin in [true, false] {
            let r = e3_report(n, spin).unwrap();
            println!(
                "n = {n} {:>8}: E3^(2,2) dim {}, E3^(4,0) rank {} ({} at index 2), E3^(4,1) dim {}",
                if spin { "spin" } else { "non-spin" },
                r.e3_22_dim,
                r.e3_40.free_rank,
                r.e3_40.index_two,
                r.e3_41_dim
            );
        }
    }
}
