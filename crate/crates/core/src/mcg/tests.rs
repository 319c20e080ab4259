use super::*;
use crate::exact_linalg::IntMatrix;
use crate::forms::enumerate_isometries;
use crate::variations::{is_rel_boundary, lift_isometry, xi};

fn model(form: SymmetricForm, spin: bool, r: usize) -> ManifoldModel {
    ManifoldModel::new(form, spin, r, None).unwrap()
}

fn comp(label: &str, genus: Option<u32>, gdt: GdtStatus) -> BoundaryComponentInfo {
    BoundaryComponentInfo::new(label, genus, gdt, None, None).unwrap()
}

#[test]
fn s3_times_interval() {
    let r = analyze(&model(SymmetricForm::empty(), true, 2)).unwrap();
    assert_eq!(r.order, Some(2));
    assert_eq!(r.structure, "ℤ/2");
    assert_eq!(r.theta_rank, 1);
    assert_eq!(torelli(&model(SymmetricForm::empty(), true, 2)), (0, 1));
}

#[test]
fn disk_is_trivial() {
    let r = analyze(&model(SymmetricForm::empty(), true, 1)).unwrap();
    assert_eq!(r.order, Some(1));
    assert_eq!(r.structure, "trivial group");
    assert!(r.caveats.is_empty());
}

#[test]
fn punctured_cp2() {
    let r = analyze(&model(SymmetricForm::diagonal(&[1]), false, 1)).unwrap();
    assert_eq!(r.order, Some(2));
    assert_eq!(
        r.aut,
        AutDescription::Finite {
            order: 2,
            lifted: 2,
            exponent_two: Some(true)
        }
    );
    assert_eq!(r.caveats.len(), 1);
    assert!(r.caveats[0].contains("unchecked fix condition"));
}

#[test]
fn zero_plane_has_infinite_cyclic_torelli() {
    let r = analyze(&model(SymmetricForm::zero(2), true, 1)).unwrap();
    assert_eq!(r.torelli_free_rank, 1);
    assert_eq!(r.theta_rank, 0);
    assert_eq!(r.order, None);
    assert!(r.infinite);
    assert_eq!(r.structure, "ℤ");
    assert_eq!(r.extension.kernel_generators.len(), 1);
}

#[test]
fn torelli_examples() {
    assert_eq!(torelli(&model(SymmetricForm::zero(3), false, 1)), (3, 0));
    assert_eq!(torelli(&model(SymmetricForm::e8(), true, 1)), (0, 0));
}

#[test]
fn hyperbolic_and_s2_times_disk() {
    let r = analyze(&model(hyperbolic(), true, 1)).unwrap();
    assert_eq!(r.order, Some(4));
    assert_eq!(r.structure, "(ℤ/2)^2");
    let r = analyze(&model(SymmetricForm::zero(1), true, 1)).unwrap();
    assert_eq!(r.order, Some(1));
    assert!(r.simplification.is_some());
}

#[test]
fn degenerate_with_nondegenerate_part_is_infinite() {
    let r = analyze(&model(SymmetricForm::diagonal(&[1, 0]), false, 1)).unwrap();
    assert!(matches!(r.aut, AutDescription::Infinite { .. }));
    assert!(r.infinite);
    assert_eq!(r.order, None);
    assert!(r.caveats[0].contains("may be a proper subgroup"));
}

#[test]
fn indefinite_forms_are_infinite() {
    let f = SymmetricForm::diagonal(&[1, 1, -1]);
    let r = analyze(&model(f, false, 0)).unwrap();
    assert!(matches!(r.aut, AutDescription::Infinite { .. }));
}

#[test]
fn model_validation() {
    assert!(ManifoldModel::new(SymmetricForm::zero(1), false, 0, None).is_err());
    assert!(ManifoldModel::new(SymmetricForm::diagonal(&[1]), true, 0, None).is_err());
    assert!(ManifoldModel::new(SymmetricForm::e8(), true, 0, None).is_ok());
    assert!(ManifoldModel::new(SymmetricForm::empty(), true, 2, Some(vec![])).is_err());
    assert!(BoundaryComponentInfo::new("L(5,2)", Some(1), GdtStatus::No, None, None).is_err());
    let c = BoundaryComponentInfo::new("L(5,2)", Some(1), GdtStatus::Unknown, None, None).unwrap();
    assert_eq!(c.admits_gdt, GdtStatus::Yes);
    let c = BoundaryComponentInfo::new("Σ", None, GdtStatus::Unknown, Some(1), Some((2, -6))).unwrap();
    assert_eq!(c.seifert_euler, Some((-1, 3)));
    assert!(BoundaryComponentInfo::new("Σ", None, GdtStatus::Unknown, None, Some((1, 0))).is_err());
}

#[test]
fn theta_realizability() {
    let lens = |l: &str| comp(l, Some(1), GdtStatus::Unknown);
    let hyp = |l: &str| comp(l, None, GdtStatus::No);
    let m = ManifoldModel::new(SymmetricForm::empty(), true, 2, Some(vec![lens("a"), lens("b")])).unwrap();
    assert_eq!(theta_realizable_smoothly(&m).unwrap(), ThetaRealizability::All);
    let m = ManifoldModel::new(SymmetricForm::empty(), true, 2, Some(vec![hyp("a"), hyp("b")])).unwrap();
    assert_eq!(
        theta_realizable_smoothly(&m).unwrap(),
        ThetaRealizability::SubgroupAtLeast {
            base: 0,
            generators: vec![],
            conservative: true
        }
    );
    // one exceptional component is allowed
    let m = ManifoldModel::new(SymmetricForm::empty(), true, 2, Some(vec![hyp("a"), lens("b")])).unwrap();
    assert_eq!(theta_realizable_smoothly(&m).unwrap(), ThetaRealizability::All);
    assert_eq!(
        theta_realizable_smoothly(&model(SymmetricForm::empty(), true, 1)).unwrap(),
        ThetaRealizability::All
    );
    assert_eq!(
        theta_realizable_smoothly(&model(SymmetricForm::empty(), true, 3)).unwrap(),
        ThetaRealizability::Unknown
    );
    assert_eq!(
        theta_realizable_smoothly(&model(SymmetricForm::diagonal(&[1]), false, 1)),
        Err(McgError::NotSpin)
    );
}

#[test]
fn theta_never_overclaims() {
    // every assignment of statuses to four components
    let statuses = [GdtStatus::Yes, GdtStatus::No, GdtStatus::Unknown];
    for code in 0..81usize {
        let mut c = code;
        let comps: Vec<_> = (0..4)
            .map(|i| {
                let s = statuses[c % 3];
                c /= 3;
                comp(&format!("Y{i}"), None, s)
            })
            .collect();
        let yes = comps.iter().filter(|c| c.admits_gdt == GdtStatus::Yes).count();
        let m = ManifoldModel::new(SymmetricForm::empty(), true, 4, Some(comps.clone())).unwrap();
        match theta_realizable_smoothly(&m).unwrap() {
            ThetaRealizability::All => assert!(yes >= 3),
            ThetaRealizability::SubgroupAtLeast { base, generators, .. } => {
                assert!(yes < 3);
                assert_ne!(comps[base].admits_gdt, GdtStatus::Yes);
                assert!(generators.iter().all(|&g| comps[g].admits_gdt == GdtStatus::Yes));
                assert_eq!(generators.len(), yes);
            }
            ThetaRealizability::Unknown => panic!("components were supplied"),
        }
    }
}

#[test]
fn seifert_and_parity() {
    assert_eq!(seifert_kappa(1).unwrap().matrix(), &IntMatrix::from_rows(&[[0, 1], [-1, 0]]));
    assert_eq!(
        seifert_kappa(2).unwrap().matrix(),
        &IntMatrix::from_rows(&[[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
    );
    assert_eq!(seifert_kappa(0), Err(McgError::ZeroGenus));
    let odd = BoundaryComponentInfo::new("Σ", None, GdtStatus::Unknown, Some(1), Some((1, 3))).unwrap();
    assert!(gdt_parity_flag(&odd).is_some());
    let even = BoundaryComponentInfo::new("Σ", None, GdtStatus::Unknown, Some(1), Some((1, 2))).unwrap();
    assert!(gdt_parity_flag(&even).is_none());
    assert!(gdt_parity_flag(&BoundaryComponentInfo::unknown("Σ")).is_none());
    // the note never changes the twist status
    let m = ManifoldModel::new(SymmetricForm::empty(), true, 1, Some(vec![odd.clone()])).unwrap();
    let r = analyze(&m).unwrap();
    assert_eq!(r.notes.len(), 1);
    assert_eq!(odd.admits_gdt, GdtStatus::Unknown);
}

#[test]
fn stabilization_keeps_torelli() {
    let base = [
        model(SymmetricForm::empty(), true, 2),
        model(SymmetricForm::diagonal(&[1]), false, 1),
        model(SymmetricForm::zero(3), false, 2),
    ];
    for m in &base {
        for g in 0..=5 {
            let s = stabilize_model(m, g);
            assert_eq!(s.form().rank(), m.form().rank() + 2 * g);
            assert_eq!(torelli(&s), torelli(m));
            assert_eq!(theta_rank(&s), theta_rank(m));
        }
    }
    assert_eq!(
        stabilize_model(&model(SymmetricForm::diagonal(&[1]), false, 1), 1).form(),
        &SymmetricForm::diagonal(&[1]).direct_sum(&hyperbolic())
    );
    assert_eq!(
        stabilize_model(&model(SymmetricForm::empty(), true, 1), 2).form(),
        &hyperbolic().direct_sum(&hyperbolic())
    );
}

#[test]
fn order_matches_lifting_for_definite_forms() {
    for (form, spin) in [
        (SymmetricForm::diagonal(&[1]), false),
        (SymmetricForm::diagonal(&[1, 1]), false),
        (SymmetricForm::diagonal(&[1, 2]), false),
        (SymmetricForm::from_rows(&[[2, -1], [-1, 2]]).unwrap(), true),
        (SymmetricForm::diagonal(&[-1, -1, -3]), false),
    ] {
        let m = model(form.clone(), spin, 1);
        let r = analyze(&m).unwrap();
        let mut count = 0u64;
        for a in enumerate_isometries(&form).unwrap() {
            if !is_rel_boundary(&form, &a).unwrap() {
                continue;
            }
            let v = lift_isometry(&form, &a).unwrap().expect("corank 0 lifts");
            assert_eq!(xi(&v), a);
            count += 1;
        }
        assert_eq!(r.order, Some(count), "form {}", form.gram());
    }
}

#[test]
fn report_json_round_trip() {
    for m in [
        model(SymmetricForm::empty(), true, 2),
        model(SymmetricForm::zero(3), false, 2),
        model(SymmetricForm::diagonal(&[1, 0]), false, 1),
    ] {
        let r = analyze(&m).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let back: MCGReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
