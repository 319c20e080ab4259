use std::path::{Path, PathBuf};

use super::ModelFile;

/// Environment variable naming a directory of extra model files.
pub const CATALOG_DIR_VAR: &str = "MCG4_CATALOG_DIR";

/// What `analyze` must report for a built-in model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expected {
    pub order: Option<u64>,
    pub structure: &'static str,
    pub theta_rank: usize,
    pub torelli_free_rank: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct BuiltIn {
    pub name: &'static str,
    pub source: &'static str,
    pub expected: Expected,
}

pub const BUILT_IN: &[BuiltIn] = &[
    BuiltIn {
        name: "S3xI",
        source: include_str!("../../catalog/S3xI.json"),
        // one nontrivial class: the Θ invariant of the collar twist
        expected: Expected {
            order: Some(2),
            structure: "ℤ/2",
            theta_rank: 1,
            torelli_free_rank: 0,
        },
    },
    BuiltIn {
        name: "D4",
        source: include_str!("../../catalog/D4.json"),
        expected: Expected {
            order: Some(1),
            structure: "trivial group",
            theta_rank: 0,
            torelli_free_rank: 0,
        },
    },
    BuiltIn {
        name: "CP2-minus-disk",
        source: include_str!("../../catalog/CP2-minus-disk.json"),
        // variations {0, 2} map onto the isometries {1, -1}
        expected: Expected {
            order: Some(2),
            structure: "ℤ/2",
            theta_rank: 0,
            torelli_free_rank: 0,
        },
    },
    BuiltIn {
        name: "E8-minus-disk",
        source: include_str!("../../catalog/E8-minus-disk.json"),
        // the isometry group of E8 is its Weyl group
        expected: Expected {
            order: Some(696_729_600),
            structure: "finite group of order 696729600",
            theta_rank: 0,
            torelli_free_rank: 0,
        },
    },
    BuiltIn {
        name: "S2xD2",
        source: include_str!("../../catalog/S2xD2.json"),
        // corank one: no Torelli part, and the radical must be fixed
        expected: Expected {
            order: Some(1),
            structure: "trivial group",
            theta_rank: 0,
            torelli_free_rank: 0,
        },
    },
    BuiltIn {
        name: "H",
        source: include_str!("../../catalog/H.json"),
        // O(H) = {±1, ±swap}
        expected: Expected {
            order: Some(4),
            structure: "(ℤ/2)^2",
            theta_rank: 0,
            torelli_free_rank: 0,
        },
    },
];

/// Built-in models followed by any found in the catalog directory.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    pub entries: Vec<(String, ModelFile)>,
    /// Files in the extra directory that failed to load.
    pub problems: Vec<String>,
}

impl Catalog {
    pub fn load(extra: Option<&Path>) -> Catalog {
        let mut entries: Vec<(String, ModelFile)> = BUILT_IN
            .iter()
            .map(|b| {
                let m = ModelFile::parse(b.source).expect("built-in catalog parses");
                (b.name.to_string(), m)
            })
            .collect();
        let mut problems = Vec::new();
        if let Some(dir) = extra {
            let mut found = Vec::new();
            match std::fs::read_dir(dir) {
                Ok(listing) => {
                    let mut paths: Vec<PathBuf> = listing
                        .filter_map(|e| e.ok().map(|e| e.path()))
                        .filter(|p| p.extension().is_some_and(|x| x == "json"))
                        .collect();
                    paths.sort();
                    for p in paths {
                        match std::fs::read_to_string(&p)
                            .map_err(|e| e.to_string())
                            .and_then(|s| ModelFile::parse(&s))
                        {
                            Ok(m) if entries.iter().any(|(n, _)| n == &m.name) => {
                                problems.push(format!("{}: duplicate name {}", p.display(), m.name))
                            }
                            Ok(m) => found.push((m.name.clone(), m)),
                            Err(e) => problems.push(format!("{}: {e}", p.display())),
                        }
                    }
                }
                Err(e) => problems.push(format!("{}: {e}", dir.display())),
            }
            found.sort_by(|a, b| a.0.cmp(&b.0));
            entries.extend(found);
        }
        Catalog { entries, problems }
    }

    pub fn from_env() -> Catalog {
        let dir = std::env::var_os(CATALOG_DIR_VAR).map(PathBuf::from);
        Self::load(dir.as_deref())
    }

    pub fn get(&self, name: &str) -> Option<&ModelFile> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _)| n.as_str())
    }
}
