//! Which Θ values are realized by generalized Dehn twists, and how the
//! Torelli data behaves under adding copies of ℋ.

use mcg4::forms::SymmetricForm;
use mcg4::mcg::{
    analyze, seifert_kappa, stabilize_model, theta_realizable_smoothly, BoundaryComponentInfo,
    GdtStatus, ManifoldModel,
};

fn main() {
    let comps = vec![
        BoundaryComponentInfo::new("S3", Some(0), GdtStatus::Unknown, None, None).unwrap(),
        BoundaryComponentInfo::new("Sigma(2,3,7)", None, GdtStatus::No, Some(0), Some((-1, 42)))
            .unwrap(),
        BoundaryComponentInfo::unknown("Y"),
    ];
    let m = ManifoldModel::new(SymmetricForm::zero(2), true, 3, Some(comps)).unwrap();
    println!("Θ realizable: {:?}", theta_realizable_smoothly(&m).unwrap());

    let kappa = seifert_kappa(2).unwrap();
    println!("Seifert skew form for base genus 2: {}", kappa.matrix());

    for g in 0..=3 {
        let r = analyze(&stabilize_model(&m, g)).unwrap();
        println!(
            "g = {g}: rank {}, torelli free rank {}, theta rank {}",
            r.rank, r.torelli_free_rank, r.theta_rank
        );
    }
}
