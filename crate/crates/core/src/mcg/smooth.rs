//! Which classes are realized by diffeomorphisms supported near the
//! boundary.

use serde::{Deserialize, Serialize};

use super::{BoundaryComponentInfo, GdtStatus, ManifoldModel, McgError};
use crate::variations::SkewForm;
use crate::exact_linalg::IntMatrix;

/// How much of the Θ group is realized by collar twists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ThetaRealizability {
    All,
    /// A lower bound: `H¹(X,∂X;ℤ/2)` has a basis dual to arcs from each
    /// component to `base`, and the listed components carry twists that
    /// realize their basis element. `conservative` marks the bound as an
    /// extrapolation beyond the all-but-one criterion.
    SubgroupAtLeast {
        base: usize,
        generators: Vec<usize>,
        conservative: bool,
    },
    Unknown,
}

/// Θ is realized in full when all but at most one boundary component
/// admit a generalized Dehn twist: put the exceptional one last and twist
/// collars of the others.
pub fn theta_realizable_smoothly(m: &ManifoldModel) -> Result<ThetaRealizability, McgError> {
    if !m.spin() {
        return Err(McgError::NotSpin);
    }
    let r = m.boundary_components();
    if r <= 1 {
        return Ok(ThetaRealizability::All);
    }
    let Some(components) = m.components() else {
        return Ok(ThetaRealizability::Unknown);
    };
    let gdt: Vec<usize> = components
        .iter()
        .enumerate()
        .filter(|(_, c)| c.admits_gdt == GdtStatus::Yes)
        .map(|(i, _)| i)
        .collect();
    if gdt.len() + 1 >= r {
        return Ok(ThetaRealizability::All);
    }
    let base = (0..r)
        .find(|i| !gdt.contains(i))
        .expect("at least two components lack a twist");
    Ok(ThetaRealizability::SubgroupAtLeast {
        base,
        generators: gdt,
        conservative: true,
    })
}

/// `Σ αᵢ* ∧ βᵢ*` on the first homology of a Seifert boundary of base
/// genus `g`: `g` diagonal blocks `[[0,1],[-1,0]]`.
pub fn seifert_kappa(g: usize) -> Result<SkewForm, McgError> {
    if g == 0 {
        return Err(McgError::ZeroGenus);
    }
    let block = IntMatrix::from_rows(&[[0, 1], [-1, 0]]);
    let mut b = IntMatrix::zeros(0, 0);
    for _ in 0..g {
        b = b.block_diag(&block);
    }
    Ok(SkewForm::new(b).expect("blocks are skew"))
}

/// When the Seifert Euler number `a/b` has `a` and `b` both odd, the
/// fiber-rotation twist of that component has trivial Θ. This is only a
/// note: other twists may still exist.
pub fn gdt_parity_flag(info: &BoundaryComponentInfo) -> Option<String> {
    let (a, b) = info.seifert_euler?;
    if a % 2 != 0 && b % 2 != 0 {
        Some(format!(
            "{}: fiber-rotation twist has Θ = 0 for this component (Euler number {a}/{b})",
            info.label
        ))
    } else {
        None
    }
}
