//! Smith form, kernel and cokernel of a small integer matrix.

use mcg4::exact_linalg::{cokernel_presentation, kernel_basis, smith_normal_form, IntMatrix};

fn main() {
    let m = IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
    let snf = smith_normal_form(&m);
    println!("M = {m}");
    let d: Vec<String> = snf.d.iter().map(|x| x.to_string()).collect();
    println!("invariant factors: {}", d.join(", "));
    // left · M · right is the diagonal
    assert_eq!(&(&snf.left * &m) * &snf.right, snf.diagonal());

    let c = cokernel_presentation(&m);
    let t: Vec<String> = c.torsion.iter().map(|x| format!("ℤ/{x}")).collect();
    println!("coker M = ℤ^{} ⊕ {}", c.free_rank, t.join(" ⊕ "));

    let degenerate = IntMatrix::from_rows(&[[1, 2, 3], [2, 4, 6]]);
    println!("kernel basis of {degenerate}: {}", kernel_basis(&degenerate));
}
