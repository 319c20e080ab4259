//! Symmetric bilinear forms over ℤ and their isometries.
//!
//! Conventions used throughout the crate: vectors are columns, the pairing
//! is `λ(x, y) = xᵀ Q y`, and matrices act on the left of their argument.

mod enumerate;
mod search;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_linalg::{complete_to_unimodular, kernel_basis, IntMatrix, LinalgError};

pub use enumerate::{
    enumerate_isometries, isometry_group_order, random_isometry, ENUMERATION_LIMIT,
};
pub use search::IsometrySearch;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("Gram matrix must be square, got {0:?}")]
    NotSquare((usize, usize)),
    #[error("Gram matrix is not symmetric: entry ({0},{1}) differs from ({1},{0})")]
    NotSymmetric(usize, usize),
    #[error("matrix of shape {got:?} does not act on a rank {rank} form")]
    DimensionMismatch { rank: usize, got: (usize, usize) },
    #[error("matrix is not an isometry of the form")]
    NotAnIsometry,
    #[error("isometry enumeration unsupported: {0}")]
    EnumerationUnsupported(String),
    #[error("isometry group has order {order}, above the enumeration limit {limit}")]
    TooLarge { order: u64, limit: u64 },
    #[error("form entries too large for the short-vector search")]
    EntriesTooLarge,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Integer symmetric bilinear form, stored as its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymmetricForm {
    gram: IntMatrix,
}

pub fn make_form(gram: IntMatrix) -> Result<SymmetricForm, FormError> {
    SymmetricForm::new(gram)
}

impl SymmetricForm {
    pub fn new(gram: IntMatrix) -> Result<Self, FormError> {
        if !gram.is_square() {
            return Err(FormError::NotSquare(gram.shape()));
        }
        let n = gram.nrows();
        for i in 0..n {
            for j in i + 1..n {
                if gram.get(i, j) != gram.get(j, i) {
                    return Err(FormError::NotSymmetric(i, j));
                }
            }
        }
        Ok(SymmetricForm { gram })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, FormError> {
        Self::new(IntMatrix::from_rows(rows))
    }

    /// The rank zero form.
    pub fn empty() -> Self {
        SymmetricForm {
            gram: IntMatrix::zeros(0, 0),
        }
    }

    /// `⟨d₁⟩ ⊕ ⋯ ⊕ ⟨dₙ⟩`
    pub fn diagonal(entries: &[i64]) -> Self {
        let d: Vec<BigInt> = entries.iter().map(|&x| BigInt::from(x)).collect();
        SymmetricForm {
            gram: IntMatrix::from_diagonal(&d),
        }
    }

    pub fn zero(n: usize) -> Self {
        SymmetricForm {
            gram: IntMatrix::zeros(n, n),
        }
    }

    /// Gram matrix of the E8 lattice (Dynkin diagram basis, positive definite).
    pub fn e8() -> Self {
        let mut rows = [[0i64; 8]; 8];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 2;
        }
        // chain 0-1-2-3-4-5-6 with node 7 attached to node 4
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
        for (a, b) in edges {
            rows[a][b] = -1;
            rows[b][a] = -1;
        }
        SymmetricForm {
            gram: IntMatrix::from_rows(&rows),
        }
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.nrows()
    }

    /// `λ(x, y)` for column vectors given as slices.
    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                acc += xi * self.gram.get(i, j) * yj;
            }
        }
        acc
    }

    pub fn determinant(&self) -> BigInt {
        self.gram.determinant().expect("Gram matrices are square")
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.determinant().is_zero()
    }

    pub fn is_unimodular(&self) -> bool {
        self.gram.is_unimodular()
    }

    /// `(n₊, n₋, n₀)` from a rational congruence diagonalization.
    pub fn signature(&self) -> (usize, usize, usize) {
        signature(&self.gram)
    }

    pub fn is_definite(&self) -> bool {
        let n = self.rank();
        let (p, m, _) = self.signature();
        n > 0 && (p == n || m == n)
    }

    /// Saturated basis of the radical `ker Q`, as columns in Hermite form.
    pub fn radical_basis(&self) -> IntMatrix {
        kernel_basis(&self.gram)
    }

    pub fn corank(&self) -> usize {
        self.radical_basis().ncols()
    }

    /// All diagonal entries even.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram.get(i, i) % 2 == BigInt::zero())
    }

    /// Orthogonal sum with block diagonal Gram matrix.
    pub fn direct_sum(&self, other: &SymmetricForm) -> SymmetricForm {
        SymmetricForm {
            gram: self.gram.block_diag(&other.gram),
        }
    }

    /// The form `Uᵀ Q U`.
    pub fn pullback(&self, u: &IntMatrix) -> Result<SymmetricForm, FormError> {
        let g = u.transpose().try_mul(&self.gram)?.try_mul(u)?;
        Ok(SymmetricForm { gram: g })
    }

    /// Splits off the radical: a unimodular `U = [R | C]` with `R` the radical
    /// basis, so that `Uᵀ Q U = 0_k ⊕ Q̄`. Returns `(U, Q̄)`.
    pub fn radical_splitting(&self) -> (IntMatrix, SymmetricForm) {
        let r = self.radical_basis();
        let k = r.ncols();
        let u = complete_to_unimodular(&r).expect("radical basis is saturated");
        let c = u.select_columns(&(k..self.rank()).collect::<Vec<_>>());
        let reduced = self.pullback(&c).expect("shapes agree");
        (u, reduced)
    }

    fn check_dims(&self, a: &IntMatrix) -> Result<(), FormError> {
        if a.shape() != (self.rank(), self.rank()) {
            return Err(FormError::DimensionMismatch {
                rank: self.rank(),
                got: a.shape(),
            });
        }
        Ok(())
    }
}

pub fn hyperbolic() -> SymmetricForm {
    SymmetricForm {
        gram: IntMatrix::from_rows(&[[0, 1], [1, 0]]),
    }
}

pub fn direct_sum(f: &SymmetricForm, g: &SymmetricForm) -> SymmetricForm {
    f.direct_sum(g)
}

pub fn radical_basis(f: &SymmetricForm) -> IntMatrix {
    f.radical_basis()
}

pub fn corank(f: &SymmetricForm) -> usize {
    f.corank()
}

pub fn is_even(f: &SymmetricForm) -> bool {
    f.is_even()
}

/// `AᵀQA = Q` and `A` invertible over ℤ.
pub fn is_isometry(f: &SymmetricForm, a: &IntMatrix) -> Result<bool, FormError> {
    f.check_dims(a)?;
    let pulled = a.transpose().try_mul(f.gram())?.try_mul(a)?;
    Ok(&pulled == f.gram() && a.is_unimodular())
}

/// An integer isometry of a fixed form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Isometry {
    a: IntMatrix,
}

impl Isometry {
    pub fn new(form: &SymmetricForm, a: IntMatrix) -> Result<Self, FormError> {
        if !is_isometry(form, &a)? {
            return Err(FormError::NotAnIsometry);
        }
        Ok(Isometry { a })
    }

    pub(crate) fn new_unchecked(a: IntMatrix) -> Self {
        Isometry { a }
    }

    pub fn identity(n: usize) -> Self {
        Isometry {
            a: IntMatrix::identity(n),
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.a
    }

    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry { a: &self.a * &other.a }
    }

    /// `Q⁻¹ Aᵀ Q` is the inverse of an isometry of a nondegenerate form, but
    /// we only need unimodularity here.
    pub fn inverse(&self) -> Isometry {
        Isometry {
            a: crate::exact_linalg::unimodular_inverse(&self.a).expect("isometries are unimodular"),
        }
    }
}

/// Serializable view of a small matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SmallMatrix(pub Vec<Vec<i64>>);

impl SmallMatrix {
    pub fn from_matrix(m: &IntMatrix) -> Option<Self> {
        m.to_i64_rows().map(SmallMatrix)
    }
}

fn signature(g: &IntMatrix) -> (usize, usize, usize) {
    let n = g.nrows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer(g.get(i, j).clone()))
                .collect()
        })
        .collect();
    let (mut pos, mut neg) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&i| !a[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // all diagonal entries vanish; use an off-diagonal entry
                let pair = active.iter().copied().find_map(|i| {
                    active
                        .iter()
                        .copied()
                        .find(|&j| j != i && !a[i][j].is_zero())
                        .map(|j| (i, j))
                });
                let Some((i, j)) = pair else { break };
                // x_i ← x_i + x_j (congruence)
                for k in 0..n {
                    let v = a[j][k].clone();
                    a[i][k] += v;
                }
                for k in 0..n {
                    let v = a[k][j].clone();
                    a[k][i] += v;
                }
                i
            }
        };
        let d = a[p][p].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != p);
        for &i in &active {
            let f = a[i][p].clone() / d.clone();
            if f.is_zero() {
                continue;
            }
            for &j in &active {
                let v = f.clone() * a[p][j].clone();
                a[i][j] -= v;
            }
        }
        for &i in &active {
            a[i][p] = BigRational::zero();
            a[p][i] = BigRational::zero();
        }
    }
    (pos, neg, n - pos - neg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_form_examples() {
        assert!(SymmetricForm::from_rows(&[[1]]).is_ok());
        assert_eq!(SymmetricForm::from_rows(&[[0, 1], [1, 0]]).unwrap(), hyperbolic());
        assert!(matches!(
            SymmetricForm::from_rows(&[[0, 1], [2, 0]]),
            Err(FormError::NotSymmetric(0, 1))
        ));
        assert!(matches!(
            make_form(IntMatrix::zeros(1, 2)),
            Err(FormError::NotSquare(_))
        ));
    }

    #[test]
    fn direct_sums() {
        let one = SymmetricForm::diagonal(&[1]);
        let s = direct_sum(&one, &hyperbolic());
        assert_eq!(
            s.gram(),
            &IntMatrix::from_rows(&[[1, 0, 0], [0, 0, 1], [0, 1, 0]])
        );
        assert_eq!(direct_sum(&SymmetricForm::empty(), &hyperbolic()), hyperbolic());
    }

    #[test]
    fn radicals() {
        assert_eq!(SymmetricForm::diagonal(&[1]).corank(), 0);
        assert_eq!(SymmetricForm::zero(2).corank(), 2);
        let f = SymmetricForm::diagonal(&[0, 2]);
        assert_eq!(f.corank(), 1);
        assert_eq!(f.radical_basis(), IntMatrix::from_rows(&[[1], [0]]));
    }

    #[test]
    fn isometry_membership() {
        let one = SymmetricForm::diagonal(&[1]);
        assert!(is_isometry(&one, &IntMatrix::from_rows(&[[-1]])).unwrap());
        assert!(!is_isometry(&one, &IntMatrix::from_rows(&[[2]])).unwrap());
        let swap = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
        assert!(is_isometry(&hyperbolic(), &swap).unwrap());
        assert!(is_isometry(&one, &swap).is_err());
    }

    #[test]
    fn evenness() {
        assert!(hyperbolic().is_even());
        assert!(!SymmetricForm::diagonal(&[1]).is_even());
        assert!(SymmetricForm::empty().is_even());
        assert!(SymmetricForm::e8().is_even());
    }

    #[test]
    fn signatures() {
        assert_eq!(hyperbolic().signature(), (1, 1, 0));
        assert_eq!(SymmetricForm::e8().signature(), (8, 0, 0));
        assert_eq!(SymmetricForm::diagonal(&[1, -3, 0]).signature(), (1, 1, 1));
        assert_eq!(SymmetricForm::zero(3).signature(), (0, 0, 3));
        assert!(SymmetricForm::e8().is_unimodular());
    }

    #[test]
    fn radical_splitting_blocks() {
        let f = SymmetricForm::from_rows(&[[1, 1, 0], [1, 1, 0], [0, 0, 3]]).unwrap();
        let (u, reduced) = f.radical_splitting();
        assert!(u.is_unimodular());
        let pulled = f.pullback(&u).unwrap();
        assert!(pulled.gram().row(0).iter().all(Zero::is_zero));
        assert_eq!(reduced.rank(), 2);
        assert!(reduced.is_nondegenerate());
    }
}
