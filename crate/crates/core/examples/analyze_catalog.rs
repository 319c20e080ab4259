//! Runs the analysis over the built-in catalog and a hand-built model.

use mcg4::cli::{analyze_model, Catalog};
use mcg4::forms::SymmetricForm;
use mcg4::mcg::{analyze, ManifoldModel};

fn main() {
    let catalog = Catalog::load(None);
    for (name, file) in &catalog.entries {
        let out = analyze_model(file).unwrap();
        println!("{name:>16}: {}", out.report.structure);
    }

    // a plumbing-like model with a rank two radical and three boundary components
    let q = SymmetricForm::from_rows(&[[2, 1, 0, 0], [1, 2, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
        .unwrap();
    let m = ManifoldModel::new(q, true, 3, None).unwrap();
    print!("\n{}", analyze(&m).unwrap().to_text());
}
