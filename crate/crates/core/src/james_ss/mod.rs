//! The low-degree part of the James spectral sequence for
//! `K = K(ℤⁿ, 2)`, whose mod 2 cohomology is `𝔽₂[x₁,…,xₙ]` with
//! `deg xᵢ = 2`.
//!
//! The `d₂` differentials out of the rows `s = 0, 1` are duals of the
//! twisted square `Sq²_w = Sq² + w ∪ −`, with `w = 0` for spin and
//! `w = x₁` otherwise. Homology bases are dual to the monomial bases, so
//! dualizing is transposition.

mod poly;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_linalg::{
    f2_kernel_basis, f2_rank, hermite_rows, kernel_basis, smith_normal_form, F2Matrix, IntMatrix,
};

pub use poly::{monomial_basis, monomial_name, sq2, sq2_w, F2Poly};

/// Highest degree the differentials are built for.
pub const MAX_DEGREE: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SsError {
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("twisting class must have degree 2")]
    TwistDegree,
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("need at least one generator")]
    NoGenerators,
}

/// Matrix of `Sq²_w` from degree `r − 2` to degree `r` in the monomial
/// bases: columns index the source.
fn sq2_w_matrix(n: usize, w: &F2Poly, r: usize) -> F2Matrix {
    let target = monomial_basis(n, r);
    let source = if r >= 2 {
        monomial_basis(n, r - 2)
    } else {
        Vec::new()
    };
    let mut m = F2Matrix::zeros(target.len(), source.len());
    for (j, s) in source.iter().enumerate() {
        let image = sq2_w(&F2Poly::monomial(s.clone()), w).expect("monomials are homogeneous");
        for (i, t) in target.iter().enumerate() {
            if image.contains(t) {
                m.set(i, j, true);
            }
        }
    }
    m
}

/// `d₂^{r,1}` and `d₂^{r,0}` for `r ≤ 6`.
///
/// `d₂^{r,1}: H_r(K;ℤ/2) → H_{r−2}(K;ℤ/2)` is the transpose of `Sq²_w`,
/// and `d₂^{r,0}: H_r(K;ℤ) → H_{r−2}(K;ℤ/2)` is the same matrix applied
/// after reduction mod 2, so the two share their entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D2Matrices {
    pub n: usize,
    pub w: F2Poly,
    pub r1: Vec<F2Matrix>,
    pub r0: Vec<F2Matrix>,
}

impl D2Matrices {
    pub fn d2_r1(&self, r: usize) -> &F2Matrix {
        &self.r1[r]
    }

    pub fn d2_r0(&self, r: usize) -> &F2Matrix {
        &self.r0[r]
    }

    /// `d₂^{r,0}` on an integral class.
    pub fn apply_r0(&self, r: usize, x: &[i64]) -> Vec<bool> {
        let bits: Vec<bool> = x.iter().map(|v| v.rem_euclid(2) == 1).collect();
        self.r0[r].apply(&bits)
    }
}

pub fn d2_matrices(n: usize, w: &F2Poly) -> Result<D2Matrices, SsError> {
    if w.nvars() != n {
        return Err(SsError::RingMismatch);
    }
    if !w.is_zero() && w.degree() != Some(2) {
        return Err(SsError::TwistDegree);
    }
    let r1: Vec<F2Matrix> = (0..=MAX_DEGREE)
        .map(|r| sq2_w_matrix(n, w, r).transpose())
        .collect();
    Ok(D2Matrices {
        n,
        w: w.clone(),
        r0: r1.clone(),
        r1,
    })
}

/// The sublattice `E₃^{4,0} = ker d₂^{4,0}` of `H₄(K;ℤ) = ℤ^N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E3Lattice {
    pub free_rank: usize,
    /// Elementary divisors of the inclusion into `H₄(K;ℤ)`.
    pub divisors: Vec<u64>,
    /// How many basis vectors enter with index 2.
    pub index_two: usize,
    /// A Hermite basis, written in the duals `[m]*` of the monomials.
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SSReport {
    pub n: usize,
    pub spin: bool,
    pub w: String,
    pub e3_22_dim: usize,
    /// Classes spanning `E₃^{2,2}`, as duals of degree-2 generators.
    pub e3_22_generators: Vec<String>,
    pub e3_40: E3Lattice,
    pub e3_41_dim: usize,
    pub omega4_summands: Vec<String>,
    /// `E₃^{4,1} = 0`; the other terms on the line `r + s = 5` vanish
    /// because `H_odd(K) = 0` and `Ω₅ = 0`.
    pub omega5_zero: bool,
}

fn dual_name(m: &[u32]) -> String {
    format!("[{}]*", monomial_name(m))
}

fn lattice_kernel(d: &F2Matrix, basis: &[Vec<u32>]) -> E3Lattice {
    let (rows, cols) = (d.nrows(), d.ncols());
    // x ∈ ℤ^N with d·x ≡ 0 mod 2  ⟺  (x, y) ∈ ker [d | 2I]
    let mut aug = IntMatrix::zeros(rows, cols + rows);
    for i in 0..rows {
        for j in 0..cols {
            if d.get(i, j) {
                aug.set(i, j, 1.into());
            }
        }
        aug.set(i, cols + i, 2.into());
    }
    let ker = kernel_basis(&aug);
    let lattice = ker.select_rows(&(0..cols).collect::<Vec<_>>());
    let snf = smith_normal_form(&lattice);
    let divisors: Vec<u64> = snf
        .d
        .iter()
        .map(|x| u64::try_from(x).expect("divisors are 1 or 2"))
        .collect();
    let generators = hermite_rows(&lattice.transpose())
        .to_i64_rows()
        .expect("small entries")
        .iter()
        .map(|row| {
            let parts: Vec<String> = row
                .iter()
                .zip(basis)
                .filter(|(c, _)| **c != 0)
                .map(|(&c, m)| match c {
                    1 => dual_name(m),
                    -1 => format!("-{}", dual_name(m)),
                    _ => format!("{c}·{}", dual_name(m)),
                })
                .collect();
            parts.join(" + ")
        })
        .collect();
    E3Lattice {
        free_rank: snf.rank(),
        index_two: divisors.iter().filter(|&&d| d == 2).count(),
        divisors,
        generators,
    }
}

/// Complement of `im d` in `𝔽₂^rows`, chosen greedily from the standard
/// basis.
fn cokernel_representatives(d: &F2Matrix) -> Vec<usize> {
    let rows = d.nrows();
    let mut span = d.clone();
    let mut rank = f2_rank(&span);
    let mut picked = Vec::new();
    for i in 0..rows {
        let mut extended = F2Matrix::zeros(rows, span.ncols() + 1);
        for r in 0..rows {
            for c in 0..span.ncols() {
                extended.set(r, c, span.get(r, c));
            }
        }
        extended.set(i, span.ncols(), true);
        let new_rank = f2_rank(&extended);
        if new_rank > rank {
            picked.push(i);
            span = extended;
            rank = new_rank;
        }
    }
    picked
}

/// The `E₃` terms relevant to `Ω₄` and `Ω₅` of the normal 2-type, with
/// `w = 0` (spin) or `w = x₁` (non-spin).
pub fn e3_report(n: usize, spin: bool) -> Result<SSReport, SsError> {
    if n == 0 {
        return Err(SsError::NoGenerators);
    }
    let w = if spin {
        F2Poly::zero(n)
    } else {
        F2Poly::var(n, 0)
    };
    let d = d2_matrices(n, &w)?;
    let deg2 = monomial_basis(n, 2);
    let deg4 = monomial_basis(n, 4);

    // E₃^{2,2} = H₂(K;ℤ/2) / im d₂^{4,1}
    let d41 = d.d2_r1(4);
    let rank41 = f2_rank(d41);
    let e3_22_generators = cokernel_representatives(d41)
        .into_iter()
        .map(|i| dual_name(&deg2[i]))
        .collect();

    // E₃^{4,1} = ker d₂^{4,1} / im d₂^{6,0}; reduction mod 2 is onto
    let ker41 = f2_kernel_basis(d41).ncols();
    let rank60 = f2_rank(d.d2_r0(6));
    let e3_41_dim = ker41 - rank60;

    let e3_40 = lattice_kernel(d.d2_r0(4), &deg4);

    let mut omega4_summands = vec!["Ω₄^TOPSpin".to_string(), "E₃^{4,0}".to_string()];
    if !spin {
        omega4_summands.push("E₃^{2,2}".to_string());
    }
    Ok(SSReport {
        n,
        spin,
        w: w.to_string(),
        e3_22_dim: deg2.len() - rank41,
        e3_22_generators,
        e3_40,
        e3_41_dim,
        omega4_summands,
        omega5_zero: e3_41_dim == 0,
    })
}

impl SSReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("n: {}\n", self.n));
        s.push_str(&format!("spin: {}\n", self.spin));
        s.push_str(&format!("w: {}\n", self.w));
        s.push_str(&format!(
            "E3^(2,2): dim {} {:?}\n",
            self.e3_22_dim, self.e3_22_generators
        ));
        s.push_str(&format!(
            "E3^(4,0): free rank {}, {} generators at index 2\n",
            self.e3_40.free_rank, self.e3_40.index_two
        ));
        s.push_str(&format!("E3^(4,1): dim {}\n", self.e3_41_dim));
        s.push_str(&format!("Omega4 summands: {}\n", self.omega4_summands.join(" ⊕ ")));
        s.push_str(&format!("omega5_zero: {}\n", self.omega5_zero));
        s
    }
}

#[cfg(test)]
mod tests;
