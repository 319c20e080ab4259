//! Mapping class groups of simply connected 4-manifolds with boundary,
//! assembled from homological data.
//!
//! A model is an intersection form on `H₂(X)`, a spin flag and the number
//! `r` of boundary components. The mapping class group sits in
//!
//! ```text
//! 0 → ∧²H₁(∂X)* → MCG → Aut^fix_∂ → 0          (non-spin)
//! MCG ≅ H¹(X,∂X;ℤ/2) × 𝒱,  0 → ∧² → 𝒱 → Aut_∂ → 0   (spin)
//! ```
//!
//! where `𝒱` is the variation group of the form and `H¹(X,∂X;ℤ/2)` has
//! rank `r − 1`.

mod report;
mod smooth;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forms::{hyperbolic, FormError, SymmetricForm};
use crate::variations::VariationError;

pub use report::{analyze, AutDescription, Extension, MCGReport};
pub use smooth::{gdt_parity_flag, seifert_kappa, theta_realizable_smoothly, ThetaRealizability};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum McgError {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid boundary component {label:?}: {reason}")]
    InvalidComponent { label: String, reason: String },
    #[error("the Θ invariant is only defined for spin manifolds")]
    NotSpin,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("Seifert base genus must be at least 1")]
    ZeroGenus,
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Variation(#[from] VariationError),
}

/// Whether a boundary component carries a generalized Dehn twist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GdtStatus {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryComponentInfo {
    pub label: String,
    pub heegaard_genus: Option<u32>,
    pub admits_gdt: GdtStatus,
    pub seifert_base_genus: Option<u32>,
    /// Euler number `a/b` with `b > 0` and `gcd(a, b) = 1`.
    pub seifert_euler: Option<(i64, i64)>,
}

impl BoundaryComponentInfo {
    /// Validates and normalizes. Components of Heegaard genus at most one
    /// always admit a generalized Dehn twist, so `Unknown` becomes `Yes`
    /// there and `No` is rejected.
    pub fn new(
        label: impl Into<String>,
        heegaard_genus: Option<u32>,
        admits_gdt: GdtStatus,
        seifert_base_genus: Option<u32>,
        seifert_euler: Option<(i64, i64)>,
    ) -> Result<Self, McgError> {
        let label = label.into();
        let mut admits_gdt = admits_gdt;
        if heegaard_genus.is_some_and(|g| g <= 1) {
            if admits_gdt == GdtStatus::No {
                return Err(McgError::InvalidComponent {
                    label,
                    reason: "Heegaard genus at most one forces a generalized Dehn twist".into(),
                });
            }
            admits_gdt = GdtStatus::Yes;
        }
        let seifert_euler = match seifert_euler {
            None => None,
            Some((_, 0)) => {
                return Err(McgError::InvalidComponent {
                    label,
                    reason: "Euler number has zero denominator".into(),
                })
            }
            Some((a, b)) => {
                let g = num_integer::gcd(a, b).max(1);
                let s = b.signum();
                Some((s * a / g, s * b / g))
            }
        };
        Ok(BoundaryComponentInfo {
            label,
            heegaard_genus,
            admits_gdt,
            seifert_base_genus,
            seifert_euler,
        })
    }

    /// A component with nothing known beyond its name.
    pub fn unknown(label: impl Into<String>) -> Self {
        BoundaryComponentInfo {
            label: label.into(),
            heegaard_genus: None,
            admits_gdt: GdtStatus::Unknown,
            seifert_base_genus: None,
            seifert_euler: None,
        }
    }
}

/// Homological model of a compact simply connected oriented 4-manifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldModel {
    form: SymmetricForm,
    spin: bool,
    boundary_components: usize,
    components: Option<Vec<BoundaryComponentInfo>>,
}

impl ManifoldModel {
    pub fn new(
        form: SymmetricForm,
        spin: bool,
        boundary_components: usize,
        components: Option<Vec<BoundaryComponentInfo>>,
    ) -> Result<Self, McgError> {
        if boundary_components == 0 {
            if !form.is_nondegenerate() {
                return Err(McgError::InvalidModel(
                    "a closed manifold has a nondegenerate intersection form".into(),
                ));
            }
            if spin && !form.is_even() {
                return Err(McgError::InvalidModel(
                    "a closed spin manifold has an even intersection form".into(),
                ));
            }
        }
        if let Some(c) = &components {
            if c.len() != boundary_components {
                return Err(McgError::InvalidModel(format!(
                    "{} component descriptions for {} boundary components",
                    c.len(),
                    boundary_components
                )));
            }
        }
        Ok(ManifoldModel {
            form,
            spin,
            boundary_components,
            components,
        })
    }

    pub fn form(&self) -> &SymmetricForm {
        &self.form
    }

    pub fn spin(&self) -> bool {
        self.spin
    }

    pub fn boundary_components(&self) -> usize {
        self.boundary_components
    }

    pub fn components(&self) -> Option<&[BoundaryComponentInfo]> {
        self.components.as_deref()
    }
}

/// Rank of `H¹(X,∂X;ℤ/2)`, where Θ takes values: `r − 1` for spin `X`.
pub fn theta_rank(m: &ManifoldModel) -> usize {
    if m.spin {
        m.boundary_components.saturating_sub(1)
    } else {
        0
    }
}

/// `(free rank, 2-torsion rank)` of the Torelli group:
/// `∧²H₁(∂X)* × H¹(X,∂X;ℤ/2)`.
pub fn torelli(m: &ManifoldModel) -> (usize, usize) {
    let k = m.form.corank();
    (k * k.saturating_sub(1) / 2, theta_rank(m))
}

/// The model with `g` hyperbolic summands added to the form.
pub fn stabilize_model(m: &ManifoldModel, g: usize) -> ManifoldModel {
    let mut form = m.form.clone();
    for _ in 0..g {
        form = form.direct_sum(&hyperbolic());
    }
    ManifoldModel {
        form,
        ..m.clone()
    }
}

#[cfg(test)]
mod tests;
