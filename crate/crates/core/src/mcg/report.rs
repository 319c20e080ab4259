use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{gdt_parity_flag, theta_rank, torelli, ManifoldModel, McgError};
use crate::forms::{enumerate_isometries, FormError, SmallMatrix};
use crate::variations::{is_rel_boundary, kernel_basis_of_xi, lift_isometry};

/// The isometries of the form that fix the boundary, and how many of them
/// are `Ξ` of a variation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AutDescription {
    Trivial,
    Finite {
        order: u64,
        /// Size of the image of `Ξ`.
        lifted: u64,
        /// Every element squares to the identity; absent when the group was
        /// counted rather than listed.
        exponent_two: Option<bool>,
    },
    Infinite {
        reason: String,
    },
    Unresolved {
        reason: String,
    },
}

/// Data of `0 → ∧²H₁(∂X)* → 𝒱 → quotient → 0`, plus the Θ factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extension {
    pub kernel_rank: usize,
    /// `R E_ij Rᵀ` for a radical basis `R`.
    pub kernel_generators: Vec<SmallMatrix>,
    pub quotient: String,
    pub theta_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MCGReport {
    pub rank: usize,
    pub corank: usize,
    pub spin: bool,
    pub boundary_components: usize,
    pub theta_rank: usize,
    pub torelli_free_rank: usize,
    pub torelli_two_torsion_rank: usize,
    pub aut: AutDescription,
    pub extension: Extension,
    pub order: Option<u64>,
    pub infinite: bool,
    pub structure: String,
    pub simplification: Option<String>,
    pub notes: Vec<String>,
    pub caveats: Vec<String>,
}

const FIX_UNCHECKED: &str = "unchecked fix condition";

fn describe_aut(m: &ManifoldModel) -> Result<AutDescription, McgError> {
    let q = m.form();
    let n = q.rank();
    let k = q.corank();
    if n == k {
        // the radical is everything and must be fixed
        return Ok(AutDescription::Trivial);
    }
    if k > 0 {
        return Ok(AutDescription::Infinite {
            reason: format!(
                "shears x ↦ x + s(x) into the radical give a free abelian subgroup of rank {}",
                k * (n - k)
            ),
        });
    }
    match enumerate_isometries(q) {
        Ok(all) => {
            let mut order = 0u64;
            let mut lifted = 0u64;
            let mut exponent_two = true;
            for a in all {
                if !is_rel_boundary(q, &a)? {
                    continue;
                }
                order += 1;
                if let Some(v) = lift_isometry(q, &a)? {
                    if v.xi() != a {
                        return Err(McgError::Inconsistent(
                            "lift does not reproduce the isometry".into(),
                        ));
                    }
                    lifted += 1;
                }
                exponent_two &= a.compose(&a).matrix().is_identity();
            }
            if order == 1 {
                return Ok(AutDescription::Trivial);
            }
            Ok(AutDescription::Finite {
                order,
                lifted,
                exponent_two: Some(exponent_two),
            })
        }
        // for unimodular forms every isometry fixes the boundary and
        // V = (I − A)Q⁻¹ is an integral variation
        Err(FormError::TooLarge { order, .. }) if q.is_unimodular() => Ok(AutDescription::Finite {
            order,
            lifted: order,
            exponent_two: None,
        }),
        Err(FormError::TooLarge { order, .. }) => Ok(AutDescription::Unresolved {
            reason: format!("isometry group of order {order} is too large to filter"),
        }),
        Err(FormError::EnumerationUnsupported(reason)) if !q.is_definite() => {
            Ok(AutDescription::Infinite {
                reason: format!("{reason}; Aut_∂ has finite index in it"),
            })
        }
        Err(e) => Ok(AutDescription::Unresolved {
            reason: e.to_string(),
        }),
    }
}

fn power_of_two(x: u64) -> Option<u32> {
    x.is_power_of_two().then(|| x.trailing_zeros())
}

fn group_power(base: &str, e: usize) -> String {
    if e == 1 {
        base.to_string()
    } else {
        format!("({base})^{e}")
    }
}

/// Mapping class group report for a model.
pub fn analyze(m: &ManifoldModel) -> Result<MCGReport, McgError> {
    let q = m.form();
    let theta = theta_rank(m);
    let (torelli_free, torelli_two) = torelli(m);
    let aut = describe_aut(m)?;
    let quotient = if m.spin() { "Aut_∂" } else { "Aut^fix_∂" };

    let variation_order = match (&aut, torelli_free) {
        (_, t) if t > 0 => None,
        (AutDescription::Trivial, _) => Some(1u64),
        (AutDescription::Finite { lifted, .. }, _) => Some(*lifted),
        _ => None,
    };
    let order = variation_order.and_then(|v| {
        1u64.checked_shl(theta as u32)
            .filter(|_| theta < 64)
            .and_then(|t| t.checked_mul(v))
    });
    let infinite = torelli_free > 0 || matches!(aut, AutDescription::Infinite { .. });

    let elementary = match &aut {
        AutDescription::Trivial => true,
        AutDescription::Finite {
            exponent_two: Some(true),
            order,
            lifted,
        } => order == lifted,
        _ => false,
    };
    let structure = match order {
        Some(1) => "trivial group".to_string(),
        Some(o) if elementary => group_power("ℤ/2", power_of_two(o).unwrap_or(0) as usize),
        Some(2) => "ℤ/2".to_string(),
        Some(o) => format!("finite group of order {o}"),
        None => {
            let core = match (&aut, torelli_free) {
                (AutDescription::Trivial, t) => group_power("ℤ", t),
                (AutDescription::Infinite { .. }, 0) => format!("infinite group, isomorphic to {quotient}"),
                (_, 0) => format!("{quotient}, order not determined"),
                (_, t) => format!("extension of {quotient} by {}", group_power("ℤ", t)),
            };
            if theta > 0 {
                format!("{} × {core}", group_power("ℤ/2", theta))
            } else {
                core
            }
        }
    };

    let simplification = (q.corank() <= 1).then(|| {
        let mut s = format!("corank at most 1: no Torelli part, MCG ≅ {quotient}");
        if theta > 0 {
            write!(s, " × {}", group_power("ℤ/2", theta)).expect("string write");
        }
        s
    });

    let notes = m
        .components()
        .unwrap_or(&[])
        .iter()
        .filter_map(gdt_parity_flag)
        .collect();

    let mut caveats = Vec::new();
    if !m.spin() {
        caveats.push(match &aut {
            AutDescription::Trivial => format!(
                "{FIX_UNCHECKED}: not tested against spin data, but Aut_∂ is trivial so Aut^fix_∂ = Aut_∂"
            ),
            AutDescription::Finite { order, lifted, .. } if order == lifted => format!(
                "{FIX_UNCHECKED}: not tested against spin data, but every element of Aut_∂ lifts to a variation, so Aut^fix_∂ = Aut_∂"
            ),
            AutDescription::Finite { order, lifted, .. } => format!(
                "{FIX_UNCHECKED}: only {lifted} of the {order} elements of Aut_∂ lift to a variation; the quotient is that subgroup"
            ),
            _ => format!(
                "{FIX_UNCHECKED}: the quotient Aut^fix_∂ may be a proper subgroup of Aut_∂"
            ),
        });
    }
    if let AutDescription::Unresolved { reason } = &aut {
        caveats.push(format!("isometries rel boundary not determined: {reason}"));
    }

    let kernel_generators = kernel_basis_of_xi(q)
        .iter()
        .filter_map(|v| SmallMatrix::from_matrix(v.matrix()))
        .collect();

    Ok(MCGReport {
        rank: q.rank(),
        corank: q.corank(),
        spin: m.spin(),
        boundary_components: m.boundary_components(),
        theta_rank: theta,
        torelli_free_rank: torelli_free,
        torelli_two_torsion_rank: torelli_two,
        aut,
        extension: Extension {
            kernel_rank: torelli_free,
            kernel_generators,
            quotient: quotient.to_string(),
            theta_rank: theta,
        },
        order,
        infinite,
        structure,
        simplification,
        notes,
        caveats,
    })
}

impl MCGReport {
    /// Fixed-layout text rendering.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut line = |k: &str, v: String| {
            writeln!(s, "{k}: {v}").expect("string write");
        };
        line("rank", self.rank.to_string());
        line("corank", self.corank.to_string());
        line("spin", self.spin.to_string());
        line("boundary components", self.boundary_components.to_string());
        line("theta rank", self.theta_rank.to_string());
        line("torelli free rank", self.torelli_free_rank.to_string());
        line("torelli 2-torsion rank", self.torelli_two_torsion_rank.to_string());
        line(
            "isometries rel boundary",
            match &self.aut {
                AutDescription::Trivial => "trivial".to_string(),
                AutDescription::Finite { order, lifted, .. } => {
                    format!("order {order}, image of Ξ order {lifted}")
                }
                AutDescription::Infinite { reason } => format!("infinite ({reason})"),
                AutDescription::Unresolved { reason } => format!("unresolved ({reason})"),
            },
        );
        line("structure", self.structure.clone());
        line(
            "order",
            match self.order {
                Some(o) => o.to_string(),
                None if self.infinite => "infinite".to_string(),
                None => "unknown".to_string(),
            },
        );
        if let Some(simp) = &self.simplification {
            line("simplification", simp.clone());
        }
        for n in &self.notes {
            line("note", n.clone());
        }
        for c in &self.caveats {
            line("caveat", c.clone());
        }
        s
    }
}
