//! Random members of the variation group, for property tests and demos.
//!
//! Members are built as products of kernel elements `R B Rᵀ` and lifts of
//! random isometries that fix the boundary.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use super::{compose, is_rel_boundary, lift_isometry, s_map, FormVariation, SkewForm};
use crate::exact_linalg::{solve_linear, unimodular_inverse, IntMatrix};
use crate::forms::{random_isometry, Isometry, SymmetricForm};

fn small<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> BigInt {
    BigInt::from(rng.gen_range(-bound..=bound))
}

/// `R B Rᵀ` with the upper entries of `B` drawn from `[-2, 2]`.
pub fn random_kernel_element<R: Rng + ?Sized>(q: &SymmetricForm, rng: &mut R) -> FormVariation {
    let k = q.corank();
    let mut b = IntMatrix::zeros(k, k);
    for i in 0..k {
        for j in i + 1..k {
            let x = small(rng, 2);
            b.set(j, i, -x.clone());
            b.set(i, j, x);
        }
    }
    s_map(q, &SkewForm { b }).expect("size matches corank")
}

/// An isometry of the nondegenerate part: a random one when the group is
/// enumerable, otherwise a signed permutation of equal diagonal entries
/// (diagonal forms) or `±I`.
fn random_reduced_isometry<R: Rng + ?Sized>(qbar: &SymmetricForm, rng: &mut R) -> IntMatrix {
    if let Ok(a) = random_isometry(qbar, rng) {
        return a.into_matrix();
    }
    let m = qbar.rank();
    let g = qbar.gram();
    let diagonal = (0..m).all(|i| (0..m).all(|j| i == j || g.get(i, j) == &BigInt::from(0)));
    let mut a = IntMatrix::zeros(m, m);
    if diagonal {
        let mut perm: Vec<usize> = (0..m).collect();
        perm.shuffle(rng);
        // keep only swaps between equal diagonal entries
        for i in 0..m {
            if g.get(i, i) != g.get(perm[i], perm[i]) {
                perm[i] = i;
            }
        }
        let mut used = vec![false; m];
        for i in 0..m {
            let j = if used[perm[i]] { i } else { perm[i] };
            used[j] = true;
            let sign = if rng.gen() { 1 } else { -1 };
            a.set(j, i, BigInt::from(sign));
        }
        if a.is_unimodular() {
            return a;
        }
    }
    let sign = if rng.gen() { 1 } else { -1 };
    IntMatrix::identity(m).scale(&BigInt::from(sign))
}

/// A random isometry fixing the boundary. In a basis `[R | C]` adapted to
/// the radical it has the shape `[[I, S], [0, Ā]]` with `Sᵀ ∈ Q̄ ℤ`; shears
/// `S` are drawn at random, and `Ā` is dropped to `I` when it fails the
/// cokernel condition.
pub fn random_rel_boundary_isometry<R: Rng + ?Sized>(
    q: &SymmetricForm,
    rng: &mut R,
) -> Isometry {
    let n = q.rank();
    let (u, qbar) = q.radical_splitting();
    let k = n - qbar.rank();
    let m = qbar.rank();
    let mut abar = random_reduced_isometry(&qbar, rng);
    let delta = &abar.transpose() - &IntMatrix::identity(m);
    if solve_linear(qbar.gram(), &delta).ok().flatten().is_none() {
        abar = IntMatrix::identity(m);
    }
    let mut mm = IntMatrix::zeros(m, k);
    for i in 0..m {
        for j in 0..k {
            mm.set(i, j, small(rng, 1));
        }
    }
    let s = (qbar.gram() * &mm).transpose();
    let mut b = IntMatrix::identity(n);
    for i in 0..k {
        for j in 0..m {
            b.set(i, k + j, s.get(i, j).clone());
        }
    }
    for i in 0..m {
        for j in 0..m {
            b.set(k + i, k + j, abar.get(i, j).clone());
        }
    }
    let uinv = unimodular_inverse(&u).expect("splitting is unimodular");
    let a = Isometry::new(q, &(&u * &b) * &uinv).expect("block shape preserves the form");
    debug_assert!(is_rel_boundary(q, &a).unwrap_or(false));
    a
}

/// A random member: a product of up to four kernel elements and lifts of
/// random boundary-fixing isometries. Isometries that do not lift are
/// skipped.
pub fn random_member<R: Rng + ?Sized>(q: &SymmetricForm, rng: &mut R) -> FormVariation {
    let mut v = FormVariation::zero(q);
    for _ in 0..rng.gen_range(1..=4) {
        let factor = if rng.gen_bool(0.5) {
            random_kernel_element(q, rng)
        } else {
            let a = random_rel_boundary_isometry(q, rng);
            match lift_isometry(q, &a).expect("a is an isometry") {
                Some(f) => f,
                None => continue,
            }
        };
        v = compose(&v, &factor).expect("same form");
    }
    v
}
