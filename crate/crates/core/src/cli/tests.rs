use super::catalog::BUILT_IN;
use super::*;

fn builtin() -> Catalog {
    Catalog::load(None)
}

fn text() -> Flags {
    Flags::default()
}

#[test]
fn catalog_regression() {
    let cat = builtin();
    for b in BUILT_IN {
        let out = analyze_model(cat.get(b.name).unwrap()).unwrap();
        let r = &out.report;
        assert_eq!(r.order, b.expected.order, "{}", b.name);
        assert_eq!(r.structure, b.expected.structure, "{}", b.name);
        assert_eq!(r.theta_rank, b.expected.theta_rank, "{}", b.name);
        assert_eq!(r.torelli_free_rank, b.expected.torelli_free_rank, "{}", b.name);
    }
}

#[test]
fn analyze_text_output() {
    let cat = builtin();
    let out = cmd_analyze_with("S3xI", text(), &cat);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("order: 2\n"));
    assert!(out.stdout.contains("theta realizable smoothly: all"));
    let d4 = cmd_analyze_with("D4", text(), &cat);
    assert!(d4.stdout.contains("trivial group"));
    let cp2 = cmd_analyze_with("CP2-minus-disk", text(), &cat);
    assert!(cp2.stdout.contains("order: 2\n"));
    assert!(cp2.stdout.contains("caveat: unchecked fix condition"));
    let quiet = cmd_analyze_with("S3xI", Flags { json: false, quiet: true }, &cat);
    assert_eq!(quiet.stdout, "name: S3xI\nstructure: ℤ/2\norder: 2\n");
}

#[test]
fn analyze_json_round_trips() {
    let cat = builtin();
    for b in BUILT_IN {
        let out = cmd_analyze_with(b.name, Flags { json: true, quiet: false }, &cat);
        assert_eq!(out.code, 0);
        let back: AnalyzeOutput = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(back, analyze_model(cat.get(b.name).unwrap()).unwrap());
        let again = serde_json::to_string_pretty(&back).unwrap() + "\n";
        assert_eq!(again, out.stdout);
    }
}

#[test]
fn malformed_models() {
    let bad = [
        (r#"{"name":"x","gram":[[1,2],[3,4]],"spin":false,"boundary_components":1}"#, "symmetric"),
        (r#"{"name":"x","gram":[[1,2]],"spin":false,"boundary_components":1}"#, "row 0"),
        (r#"{"name":"x","gram":[[1]],"spin":false,"boundary_components":2,
             "components":[{"label":"a","admits_gdt":"yes"}]}"#, "component"),
        (r#"{"name":"x","gram":[[0]],"spin":false,"boundary_components":0}"#, "closed"),
    ];
    for (src, needle) in bad {
        let m = ModelFile::parse(src).unwrap();
        let e = m.to_model().unwrap_err().to_string();
        assert!(e.contains(needle), "{e}");
    }
    let e = ModelFile::parse("{\"name\":\"x\",\n\"gram\":[[1]],\"spn\":true}").unwrap_err();
    assert!(e.contains("spn") && e.contains("line 2"), "{e}");
    let e = ModelFile::parse(r#"{"name":"x","gram":"no","spin":true,"boundary_components":1}"#)
        .unwrap_err();
    assert!(e.contains("invalid type"), "{e}");
    let e = ModelFile::parse(
        r#"{"name":"x","gram":[],"spin":true,"boundary_components":1,
            "components":[{"label":"a","admits_gdt":"maybe"}]}"#,
    )
    .unwrap_err();
    assert!(e.contains("maybe"), "{e}");
}

#[test]
fn analyze_errors_exit_two() {
    let cat = builtin();
    let out = cmd_analyze_with("nosuch", text(), &cat);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stdout.is_empty());
    let dir = std::env::temp_dir().join(format!("mcg4-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("bad.json");
    std::fs::write(&p, r#"{"name":"bad","gram":[[1,0],[1,1]],"spin":false,"boundary_components":1}"#).unwrap();
    let out = cmd_analyze_with(p.to_str().unwrap(), text(), &cat);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("gram"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn ss_command() {
    let out = cmd_ss(2, false, text());
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("E3^(2,2): dim 1"));
    assert!(cmd_ss(3, true, text()).stdout.contains("E3^(4,1): dim 0"));
    assert!(cmd_ss(1, true, text()).stdout.contains("E3^(2,2): dim 0"));
    assert_eq!(cmd_ss(0, true, text()).code, EXIT_INPUT);
    assert_eq!(cmd_ss(9, true, text()).code, EXIT_INPUT);
    let j = cmd_ss(4, false, Flags { json: true, quiet: false });
    let back: SSReport = serde_json::from_str(&j.stdout).unwrap();
    assert_eq!(back, e3_report(4, false).unwrap());
}

#[test]
fn check_verdicts() {
    let q = SymmetricForm::from_rows(&[[1]]).unwrap();
    let t = |v: i64| check(&q, &IntMatrix::from_rows(&[[v]])).unwrap().to_text();
    assert_eq!(t(2), "member: true; xi: [[-1]]; rel boundary: true\n");
    assert_eq!(t(1), "member: false\n");
    assert_eq!(t(0), "member: true; xi: I; rel boundary: true\n");
    let h = SymmetricForm::from_rows(&[[0, 1], [1, 0]]).unwrap();
    assert!(check(&h, &IntMatrix::zeros(3, 3)).is_err());
}

#[test]
fn check_files() {
    let dir = std::env::temp_dir().join(format!("mcg4-check-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let form = dir.join("q.json");
    let model = dir.join("m.json");
    let var = dir.join("v.json");
    let big = dir.join("w.json");
    std::fs::write(&form, "[[1]]").unwrap();
    std::fs::write(&model, builtin().get("CP2-minus-disk").unwrap().to_json()).unwrap();
    std::fs::write(&var, "[[2]]").unwrap();
    std::fs::write(&big, "[[0,0],[0,0]]").unwrap();
    for f in [&form, &model] {
        let out = cmd_check(f, &var, text());
        assert_eq!(out.code, 0);
        assert!(out.stdout.starts_with("member: true; xi: [[-1]]"));
    }
    assert_eq!(cmd_check(&form, &big, text()).code, EXIT_INPUT);
    assert_eq!(cmd_check(&form, &dir.join("missing.json"), text()).code, EXIT_INPUT);
    let j = cmd_check(&form, &var, Flags { json: true, quiet: false });
    let back: CheckOutput = serde_json::from_str(&j.stdout).unwrap();
    assert_eq!(back.xi, Some(SmallMatrix(vec![vec![-1]])));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn catalog_listing_and_extra_dir() {
    let cat = builtin();
    let list = cmd_catalog_with(&CatalogAction::List, text(), &cat);
    assert_eq!(
        list.stdout,
        "S3xI\nD4\nCP2-minus-disk\nE8-minus-disk\nS2xD2\nH\n"
    );
    let show = cmd_catalog_with(&CatalogAction::Show("S3xI".into()), text(), &cat);
    let m = ModelFile::parse(&show.stdout).unwrap();
    assert!(m.gram.is_empty() && m.spin && m.boundary_components == 2);
    assert_eq!(
        cmd_catalog_with(&CatalogAction::Show("nosuch".into()), text(), &cat).code,
        EXIT_INPUT
    );

    let dir = std::env::temp_dir().join(format!("mcg4-cat-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(
        dir.join("b.json"),
        r#"{"name":"zeta","gram":[[2]],"spin":true,"boundary_components":1}"#,
    )
    .unwrap();
    std::fs::write(
        dir.join("a.json"),
        r#"{"name":"alpha","gram":[[0,0],[0,0]],"spin":true,"boundary_components":3}"#,
    )
    .unwrap();
    std::fs::write(dir.join("c.json"), "not json").unwrap();
    std::fs::write(dir.join("d.json"), cat.get("H").unwrap().to_json()).unwrap();
    let cat = Catalog::load(Some(&dir));
    let names: Vec<&str> = cat.names().collect();
    assert_eq!(&names[6..], ["alpha", "zeta"]);
    assert_eq!(cat.problems.len(), 2);
    let out = cmd_analyze_with("alpha", text(), &cat);
    assert!(out.stdout.contains("torelli free rank: 1"), "{}", out.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}
