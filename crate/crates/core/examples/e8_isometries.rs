//! Orders of isometry groups of definite lattices, including E8.

use std::time::Instant;

use mcg4::forms::{enumerate_isometries, isometry_group_order, SymmetricForm};

fn main() {
    let d4 = SymmetricForm::from_rows(&[[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]])
        .unwrap();
    let a2 = SymmetricForm::from_rows(&[[2, -1], [-1, 2]]).unwrap();
    for (name, q) in [("A2", a2), ("D4", d4), ("<1>^3", SymmetricForm::diagonal(&[1, 1, 1]))] {
        let all = enumerate_isometries(&q).unwrap();
        println!("{name}: {} isometries", all.len());
    }

    let e8 = SymmetricForm::e8();
    println!("E8 unimodular: {}, even: {}", e8.is_unimodular(), e8.is_even());
    let t = Instant::now();
    let order = isometry_group_order(&e8).unwrap();
    println!("|O(E8)| = {order} ({:.1?})", t.elapsed());
    // listing them all is refused
    println!("enumerate: {}", enumerate_isometries(&e8).unwrap_err());
}
