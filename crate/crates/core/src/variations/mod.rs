//! Form variations of a symmetric form `Q` on `ℤⁿ`.
//!
//! A variation is an `n×n` integer matrix `V` (read as a map from the dual
//! lattice to the lattice) with `V + Vᵀ = V Q Vᵀ`. Under
//! `V₁ ∗ V₂ = V₁ + (I − V₁Q) V₂` these form a group with identity `0`, and
//! `Ξ(V) = I − VQ` is a homomorphism onto a subgroup of the isometries
//! that act trivially on the boundary. Its kernel consists of the skew
//! matrices killed by `Q`, which are exactly `R B Rᵀ` for `R` a basis of
//! the radical and `B` skew.

mod sample;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::exact_linalg::{
    f2_in_column_space, solve_linear, F2Matrix, IntMatrix, LinalgError,
};
use crate::forms::{hyperbolic, is_isometry, FormError, Isometry, SymmetricForm};

pub use sample::{random_kernel_element, random_member, random_rel_boundary_isometry};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VariationError {
    #[error("matrix of shape {got:?} does not match a form of rank {rank}")]
    DimensionMismatch { rank: usize, got: (usize, usize) },
    #[error("variations are attached to different forms")]
    FormMismatch,
    #[error("V + Vᵀ ≠ V Q Vᵀ")]
    NotAMember,
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("skew form has size {got} but the radical has rank {corank}")]
    CorankMismatch { corank: usize, got: usize },
    #[error("matrix is not an isometry between the given forms")]
    NotAnIsometry,
    #[error("isometry does not act trivially on the boundary")]
    NotRelBoundary,
    #[error("malformed torsor data: {0}")]
    MalformedTorsor(String),
    #[error("torsor data is inconsistent with the isometry: {0}")]
    InconsistentTorsor(String),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A member of the variation group of a fixed form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormVariation {
    v: IntMatrix,
    form: SymmetricForm,
}

impl FormVariation {
    pub fn new(form: &SymmetricForm, v: IntMatrix) -> Result<Self, VariationError> {
        if !is_variation(form, &v)? {
            return Err(VariationError::NotAMember);
        }
        Ok(FormVariation {
            v,
            form: form.clone(),
        })
    }

    pub(crate) fn new_unchecked(form: &SymmetricForm, v: IntMatrix) -> Self {
        debug_assert!(is_variation(form, &v).unwrap_or(false));
        FormVariation {
            v,
            form: form.clone(),
        }
    }

    /// The identity element `0`.
    pub fn zero(form: &SymmetricForm) -> Self {
        let n = form.rank();
        FormVariation {
            v: IntMatrix::zeros(n, n),
            form: form.clone(),
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.v
    }

    pub fn form(&self) -> &SymmetricForm {
        &self.form
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn compose(&self, other: &FormVariation) -> Result<FormVariation, VariationError> {
        compose(self, other)
    }

    pub fn inverse(&self) -> FormVariation {
        inverse(self)
    }

    pub fn xi(&self) -> Isometry {
        xi(self)
    }
}

/// A skew-symmetric integer matrix with zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewForm {
    b: IntMatrix,
}

impl SkewForm {
    pub fn new(b: IntMatrix) -> Result<Self, VariationError> {
        if !b.is_square() || &b + &b.transpose() != IntMatrix::zeros(b.nrows(), b.ncols()) {
            return Err(VariationError::NotSkew);
        }
        Ok(SkewForm { b })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, VariationError> {
        Self::new(IntMatrix::from_rows(rows))
    }

    pub fn zero(k: usize) -> Self {
        SkewForm {
            b: IntMatrix::zeros(k, k),
        }
    }

    /// `e_i e_jᵀ − e_j e_iᵀ`.
    pub fn elementary(k: usize, i: usize, j: usize) -> Self {
        let mut b = IntMatrix::zeros(k, k);
        b.set(i, j, BigInt::one());
        b.set(j, i, -BigInt::one());
        SkewForm { b }
    }

    pub fn size(&self) -> usize {
        self.b.nrows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.b
    }
}

fn check_square(q: &SymmetricForm, m: &IntMatrix) -> Result<(), VariationError> {
    let n = q.rank();
    if m.shape() != (n, n) {
        return Err(VariationError::DimensionMismatch {
            rank: n,
            got: m.shape(),
        });
    }
    Ok(())
}

/// `V + Vᵀ = V Q Vᵀ`.
pub fn is_variation(q: &SymmetricForm, v: &IntMatrix) -> Result<bool, VariationError> {
    check_square(q, v)?;
    let vt = v.transpose();
    Ok(&(v + &vt) == &(&(v * q.gram()) * &vt))
}

/// `V₁ + (I − V₁Q) V₂`.
pub fn compose(
    v1: &FormVariation,
    v2: &FormVariation,
) -> Result<FormVariation, VariationError> {
    if v1.form != v2.form {
        return Err(VariationError::FormMismatch);
    }
    let a1 = xi_matrix(&v1.form, &v1.v);
    let v = &v1.v + &(&a1 * &v2.v);
    Ok(FormVariation::new_unchecked(&v1.form, v))
}

/// `−(I − VᵀQ) V`.
pub fn inverse(v: &FormVariation) -> FormVariation {
    let n = v.form.rank();
    let m = &IntMatrix::identity(n) - &(&v.v.transpose() * v.form.gram());
    FormVariation::new_unchecked(&v.form, -&(&m * &v.v))
}

fn xi_matrix(q: &SymmetricForm, v: &IntMatrix) -> IntMatrix {
    &IntMatrix::identity(q.rank()) - &(v * q.gram())
}

/// `Ξ(V) = I − VQ`.
pub fn xi(v: &FormVariation) -> Isometry {
    Isometry::new_unchecked(xi_matrix(&v.form, &v.v))
}

/// The generators `R E_ij Rᵀ`, `i < j`, of `ker Ξ`, where `R` is the
/// radical basis. There are `C(k, 2)` of them for corank `k`.
pub fn kernel_basis_of_xi(q: &SymmetricForm) -> Vec<FormVariation> {
    let k = q.corank();
    let mut out = Vec::with_capacity(k * k.saturating_sub(1) / 2);
    for i in 0..k {
        for j in i + 1..k {
            out.push(s_map(q, &SkewForm::elementary(k, i, j)).expect("sizes agree"));
        }
    }
    out
}

/// The embedding of skew forms on the radical into `ker Ξ`: `B ↦ R B Rᵀ`.
pub fn s_map(q: &SymmetricForm, kappa: &SkewForm) -> Result<FormVariation, VariationError> {
    let r = q.radical_basis();
    if kappa.size() != r.ncols() {
        return Err(VariationError::CorankMismatch {
            corank: r.ncols(),
            got: kappa.size(),
        });
    }
    let v = &(&r * &kappa.b) * &r.transpose();
    Ok(FormVariation::new_unchecked(q, v))
}

/// Whether `A` fixes the radical pointwise and `Aᵀ` acts trivially on
/// `coker Q`, i.e. `Aᵀ − I = Q M` for some integer `M`.
pub fn is_rel_boundary(q: &SymmetricForm, a: &Isometry) -> Result<bool, VariationError> {
    let a = a.matrix();
    check_square(q, a)?;
    let r = q.radical_basis();
    if &(a * &r) != &r {
        return Ok(false);
    }
    let rhs = &a.transpose() - &IntMatrix::identity(q.rank());
    Ok(solve_linear(q.gram(), &rhs)?.is_some())
}

/// Answer of the fix-permutation test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum FixVerdict {
    Yes,
    No,
    Unchecked,
}

/// An affine model `τ ↦ c + L τ` over 𝔽₂ of the relative second
/// Stiefel–Whitney class, as a function of the boundary spin structure
/// `τ ∈ 𝔽₂^k`, with values in `H₂(X; 𝔽₂) = 𝔽₂ⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsorData {
    pub offset: Vec<bool>,
    pub linear: F2Matrix,
}

impl TorsorData {
    pub fn new(offset: Vec<bool>, linear: F2Matrix) -> Result<Self, VariationError> {
        if linear.nrows() != offset.len() {
            return Err(VariationError::MalformedTorsor(format!(
                "offset has length {} but the linear part has {} rows",
                offset.len(),
                linear.nrows()
            )));
        }
        Ok(TorsorData { offset, linear })
    }

    /// A constant map.
    pub fn constant(offset: Vec<bool>, k: usize) -> Self {
        let n = offset.len();
        TorsorData {
            offset,
            linear: F2Matrix::zeros(n, k),
        }
    }
}

/// Whether the permutation of relative spin structures induced by `A` is
/// the identity. Spin manifolds always answer yes. Otherwise `A` permutes
/// the values of the torsor map, and the permutation is trivial exactly
/// when `A` fixes every value: `(A − I) c = 0` and `(A − I) L = 0` mod 2.
pub fn fix_permutation_trivial(
    q: &SymmetricForm,
    spin: bool,
    a: &Isometry,
    torsor: Option<&TorsorData>,
) -> Result<FixVerdict, VariationError> {
    check_square(q, a.matrix())?;
    if spin {
        return Ok(FixVerdict::Yes);
    }
    let Some(t) = torsor else {
        return Ok(FixVerdict::Unchecked);
    };
    let n = q.rank();
    if t.offset.len() != n {
        return Err(VariationError::MalformedTorsor(format!(
            "values live in a space of dimension {} but the form has rank {n}",
            t.offset.len()
        )));
    }
    let diff = F2Matrix::reduce(&(a.matrix() - &IntMatrix::identity(n)));
    let moved_offset = diff.apply(&t.offset);
    let moved_linear = diff.try_mul(&t.linear)?;
    if moved_offset.iter().all(|x| !x) && moved_linear.is_zero() {
        return Ok(FixVerdict::Yes);
    }
    // A must map the affine image {c + Lτ} onto itself: A c − c ∈ im L and
    // A L has columns in im L
    let a2 = F2Matrix::reduce(a.matrix());
    let image_preserved = f2_in_column_space(&t.linear, &moved_offset)
        && (0..t.linear.ncols()).all(|j| {
            let col = a2.apply(&t.linear.column(j));
            f2_in_column_space(&t.linear, &col)
        });
    if image_preserved {
        Ok(FixVerdict::No)
    } else {
        Err(VariationError::InconsistentTorsor(
            "the isometry does not preserve the set of relative Stiefel-Whitney classes".into(),
        ))
    }
}

/// A variation `V` with `Ξ(V) = A`, or `None` when there is none.
///
/// Solutions of `VQ = I − A` form a coset `V₀ + X Rᵀ`, and
/// `V Q Vᵀ = V₀ Q V₀ᵀ` on the whole coset, so membership becomes the
/// linear system `X Rᵀ + R Xᵀ = V₀QV₀ᵀ − V₀ − V₀ᵀ` in the `n×k` unknown
/// `X`. Both steps are exact, so `None` is a proof of nonexistence.
pub fn lift_isometry(
    q: &SymmetricForm,
    a: &Isometry,
) -> Result<Option<FormVariation>, VariationError> {
    let n = q.rank();
    check_square(q, a.matrix())?;
    if !is_isometry(q, a.matrix())? {
        return Err(VariationError::NotAnIsometry);
    }
    // V Q = I − A  ⟺  Q Vᵀ = I − Aᵀ
    let rhs = &IntMatrix::identity(n) - &a.matrix().transpose();
    let Some(v0t) = solve_linear(q.gram(), &rhs)? else {
        return Ok(None);
    };
    let v0 = v0t.transpose();
    if is_variation(q, &v0)? {
        return Ok(Some(FormVariation::new_unchecked(q, v0)));
    }
    let r = q.radical_basis();
    let k = r.ncols();
    let e = &(&(&(&v0 * q.gram()) * &v0t) - &v0) - &v0t;
    // unknown X[i][j] sits at index i*k + j; equation (a, b) at a*n + b
    let mut m = IntMatrix::zeros(n * n, n * k);
    let mut target = IntMatrix::zeros(n * n, 1);
    for x in 0..n {
        for y in 0..n {
            let row = x * n + y;
            target.set(row, 0, e.get(x, y).clone());
            for j in 0..k {
                *m.get_mut(row, x * k + j) += r.get(y, j);
                *m.get_mut(row, y * k + j) += r.get(x, j);
            }
        }
    }
    let Some(sol) = solve_linear(&m, &target)? else {
        return Ok(None);
    };
    let mut xm = IntMatrix::zeros(n, k);
    for i in 0..n {
        for j in 0..k {
            xm.set(i, j, sol.get(i * k + j, 0).clone());
        }
    }
    let v = &v0 + &(&xm * &r.transpose());
    debug_assert!(is_variation(q, &v)?);
    Ok(Some(FormVariation::new_unchecked(q, v)))
}

/// Transport along an isometry `ψ` from the form of `v` to `target`
/// (so `ψᵀ β ψ = α`): `V ↦ ψ V ψᵀ`.
pub fn conjugate(
    psi: &IntMatrix,
    v: &FormVariation,
    target: &SymmetricForm,
) -> Result<FormVariation, VariationError> {
    check_square(&v.form, psi)?;
    check_square(target, psi)?;
    if !psi.is_unimodular() || &(&(&psi.transpose() * target.gram()) * psi) != v.form.gram() {
        return Err(VariationError::NotAnIsometry);
    }
    let w = &(psi * &v.v) * &psi.transpose();
    Ok(FormVariation::new_unchecked(target, w))
}

/// The form `Q ⊕ ℋ` reached by one stabilization.
pub fn stabilized_form(q: &SymmetricForm) -> SymmetricForm {
    q.direct_sum(&hyperbolic())
}

/// `V ↦ V ⊕ 0` over `Q ⊕ ℋ`.
pub fn stabilize_variation(v: &FormVariation) -> FormVariation {
    FormVariation::new_unchecked(
        &stabilized_form(&v.form),
        v.v.block_diag(&IntMatrix::zeros(2, 2)),
    )
}
