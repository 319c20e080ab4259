//! Command implementations behind the `mcg4` binary. Each command returns
//! its exit code and output instead of printing, so it can be tested.

pub mod catalog;

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::exact_linalg::IntMatrix;
use crate::forms::{SmallMatrix, SymmetricForm};
use crate::james_ss::{e3_report, SSReport};
use crate::mcg::{
    analyze, theta_realizable_smoothly, BoundaryComponentInfo, GdtStatus, MCGReport,
    ManifoldModel, McgError, ThetaRealizability,
};
use crate::variations::{is_rel_boundary, is_variation, FormVariation, VariationError};

pub use catalog::{Catalog, CATALOG_DIR_VAR};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Clone, Copy, Debug, Default)]
pub struct Flags {
    pub json: bool,
    pub quiet: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmdOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CmdOutput {
    fn ok(stdout: String) -> Self {
        CmdOutput {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, msg: impl std::fmt::Display) -> Self {
        CmdOutput {
            code,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentFile {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heegaard_genus: Option<u32>,
    pub admits_gdt: GdtStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seifert_base_genus: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seifert_euler: Option<[i64; 2]>,
}

/// On-disk model description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub name: String,
    pub gram: Vec<Vec<i64>>,
    pub spin: bool,
    pub boundary_components: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<ComponentFile>>,
}

fn gram_form(gram: &[Vec<i64>]) -> Result<SymmetricForm, String> {
    let n = gram.len();
    for (i, row) in gram.iter().enumerate() {
        if row.len() != n {
            return Err(format!(
                "field gram: row {i} has {} entries, expected {n}",
                row.len()
            ));
        }
    }
    SymmetricForm::from_rows(gram).map_err(|e| format!("field gram: {e}"))
}

fn square_matrix(rows: &[Vec<i64>], what: &str) -> Result<IntMatrix, String> {
    let n = rows.len();
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(format!("{what}: row {i} has {} entries, expected {n}", r.len()));
    }
    Ok(IntMatrix::from_rows(rows))
}

impl ModelFile {
    /// Parses and checks field names and types. Errors carry the line and
    /// column from the JSON parser.
    pub fn parse(text: &str) -> Result<ModelFile, String> {
        serde_json::from_str(text).map_err(|e| e.to_string())
    }

    pub fn to_model(&self) -> Result<ManifoldModel, McgError> {
        let form = gram_form(&self.gram).map_err(McgError::InvalidModel)?;
        let components = match &self.components {
            None => None,
            Some(cs) => Some(
                cs.iter()
                    .map(|c| {
                        BoundaryComponentInfo::new(
                            c.label.clone(),
                            c.heegaard_genus,
                            c.admits_gdt,
                            c.seifert_base_genus,
                            c.seifert_euler.map(|[a, b]| (a, b)),
                        )
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        ManifoldModel::new(form, self.spin, self.boundary_components, components)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }
}

fn mcg_exit(e: &McgError) -> i32 {
    match e {
        McgError::Inconsistent(_) => EXIT_INTERNAL,
        McgError::Variation(VariationError::Linalg(_)) => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    }
}

/// Output of `analyze --json`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeOutput {
    pub name: String,
    pub report: MCGReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_realizability: Option<ThetaRealizability>,
}

fn realizability_text(t: &ThetaRealizability) -> String {
    match t {
        ThetaRealizability::All => "all".to_string(),
        ThetaRealizability::SubgroupAtLeast {
            base,
            generators,
            conservative,
        } => {
            let mut s = format!("subgroup generated by components {generators:?} against base {base}");
            if *conservative {
                s.push_str(" (lower bound)");
            }
            s
        }
        ThetaRealizability::Unknown => "unknown".to_string(),
    }
}

/// Loads a model from a file path, or by catalog name when no such file
/// exists.
pub fn load_model(target: &str, catalog: &Catalog) -> Result<ModelFile, String> {
    let path = Path::new(target);
    if path.is_file() {
        let text =
            std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        return ModelFile::parse(&text).map_err(|e| format!("{}: {e}", path.display()));
    }
    catalog
        .get(target)
        .cloned()
        .ok_or_else(|| format!("{target}: no such file or catalog entry"))
}

pub fn analyze_model(file: &ModelFile) -> Result<AnalyzeOutput, McgError> {
    let model = file.to_model()?;
    let report = analyze(&model)?;
    let theta_realizability = if model.spin() {
        Some(theta_realizable_smoothly(&model)?)
    } else {
        None
    };
    Ok(AnalyzeOutput {
        name: file.name.clone(),
        report,
        theta_realizability,
    })
}

pub fn cmd_analyze(target: &str, flags: Flags) -> CmdOutput {
    cmd_analyze_with(target, flags, &Catalog::from_env())
}

pub fn cmd_analyze_with(target: &str, flags: Flags, catalog: &Catalog) -> CmdOutput {
    let file = match load_model(target, catalog) {
        Ok(f) => f,
        Err(e) => return CmdOutput::fail(EXIT_INPUT, e),
    };
    let out = match analyze_model(&file) {
        Ok(o) => o,
        Err(e) => return CmdOutput::fail(mcg_exit(&e), format!("{}: {e}", file.name)),
    };
    if flags.json {
        return CmdOutput::ok(
            serde_json::to_string_pretty(&out).expect("report serializes") + "\n",
        );
    }
    let mut text = format!("name: {}\n", out.name);
    let mut body = out.report.to_text();
    if flags.quiet {
        body = body
            .lines()
            .filter(|l| l.starts_with("structure:") || l.starts_with("order:"))
            .map(|l| format!("{l}\n"))
            .collect();
    }
    text.push_str(&body);
    if let (Some(t), false) = (&out.theta_realizability, flags.quiet) {
        text.push_str(&format!("theta realizable smoothly: {}\n", realizability_text(t)));
    }
    CmdOutput::ok(text)
}

pub fn cmd_ss(rank: usize, spin: bool, flags: Flags) -> CmdOutput {
    if !(1..=8).contains(&rank) {
        return CmdOutput::fail(EXIT_INPUT, format!("rank must be between 1 and 8, got {rank}"));
    }
    let report: SSReport = match e3_report(rank, spin) {
        Ok(r) => r,
        Err(e) => return CmdOutput::fail(EXIT_INPUT, e),
    };
    if flags.json {
        CmdOutput::ok(serde_json::to_string_pretty(&report).expect("report serializes") + "\n")
    } else {
        CmdOutput::ok(report.to_text())
    }
}

/// Output of `check --json`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutput {
    pub member: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<SmallMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_boundary: Option<bool>,
}

fn read_json(path: &Path) -> Result<Value, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn matrix_from_value(v: Value, what: &str) -> Result<Vec<Vec<i64>>, String> {
    serde_json::from_value(v).map_err(|e| format!("{what}: expected an integer matrix: {e}"))
}

/// A form file is either a bare Gram matrix or a model file.
fn read_form(path: &Path) -> Result<SymmetricForm, String> {
    let v = read_json(path)?;
    let gram = if v.is_object() {
        let m: ModelFile =
            serde_json::from_value(v).map_err(|e| format!("{}: {e}", path.display()))?;
        m.gram
    } else {
        matrix_from_value(v, &path.display().to_string())?
    };
    gram_form(&gram).map_err(|e| format!("{}: {e}", path.display()))
}

fn render_matrix(m: &SmallMatrix) -> String {
    let rows: Vec<String> = m
        .0
        .iter()
        .map(|r| {
            let items: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            format!("[{}]", items.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

pub fn check(form: &SymmetricForm, v: &IntMatrix) -> Result<CheckOutput, VariationError> {
    if !is_variation(form, v)? {
        return Ok(CheckOutput {
            member: false,
            xi: None,
            rel_boundary: None,
        });
    }
    let var = FormVariation::new(form, v.clone())?;
    let a = var.xi();
    Ok(CheckOutput {
        member: true,
        xi: SmallMatrix::from_matrix(a.matrix()),
        rel_boundary: Some(is_rel_boundary(form, &a)?),
    })
}

impl CheckOutput {
    pub fn to_text(&self) -> String {
        let mut parts = vec![format!("member: {}", self.member)];
        if let Some(x) = &self.xi {
            let identity = x
                .0
                .iter()
                .enumerate()
                .all(|(i, r)| r.iter().enumerate().all(|(j, &e)| e == i64::from(i == j)));
            parts.push(if identity {
                "xi: I".to_string()
            } else {
                format!("xi: {}", render_matrix(x))
            });
        }
        if let Some(b) = self.rel_boundary {
            parts.push(format!("rel boundary: {b}"));
        }
        parts.join("; ") + "\n"
    }
}

pub fn cmd_check(form_path: &Path, variation_path: &Path, flags: Flags) -> CmdOutput {
    let form = match read_form(form_path) {
        Ok(f) => f,
        Err(e) => return CmdOutput::fail(EXIT_INPUT, e),
    };
    let rows = match read_json(variation_path)
        .and_then(|v| matrix_from_value(v, &variation_path.display().to_string()))
        .and_then(|r| square_matrix(&r, &variation_path.display().to_string()))
    {
        Ok(r) => r,
        Err(e) => return CmdOutput::fail(EXIT_INPUT, e),
    };
    let out = match check(&form, &rows) {
        Ok(o) => o,
        Err(e) => return CmdOutput::fail(EXIT_INPUT, e),
    };
    if flags.json {
        CmdOutput::ok(serde_json::to_string_pretty(&out).expect("serializes") + "\n")
    } else {
        CmdOutput::ok(out.to_text())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogAction {
    List,
    Show(String),
}

pub fn cmd_catalog(action: &CatalogAction, flags: Flags) -> CmdOutput {
    cmd_catalog_with(action, flags, &Catalog::from_env())
}

pub fn cmd_catalog_with(action: &CatalogAction, flags: Flags, catalog: &Catalog) -> CmdOutput {
    match action {
        CatalogAction::List => {
            let names: Vec<&str> = catalog.names().collect();
            let stdout = if flags.json {
                serde_json::to_string(&names).expect("serializes") + "\n"
            } else {
                names.iter().map(|n| format!("{n}\n")).collect()
            };
            let stderr = if flags.quiet {
                String::new()
            } else {
                catalog
                    .problems
                    .iter()
                    .map(|p| format!("warning: skipped {p}\n"))
                    .collect()
            };
            CmdOutput {
                code: EXIT_OK,
                stdout,
                stderr,
            }
        }
        CatalogAction::Show(name) => match catalog.get(name) {
            Some(m) => CmdOutput::ok(m.to_json() + "\n"),
            None => CmdOutput::fail(EXIT_INPUT, format!("no catalog entry named {name}")),
        },
    }
}

#[cfg(test)]
mod tests;
