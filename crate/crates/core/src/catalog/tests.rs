use std::path::{Path, PathBuf};

use super::*;

fn catalog_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../catalog")
}

#[test]
fn group_descriptions() {
    let p = |s| Pi1::parse(s).unwrap();
    assert_eq!(p("1").factors, Vec::<u64>::new());
    assert_eq!(p("Z^3").factors, vec![0, 0, 0]);
    assert_eq!(p("Z x Z/2").factors, vec![0, 2]);
    assert_eq!(p("Z/3").hom_count(3), 3);
    assert_eq!(p("Z/2").hom_count(3), 1);
    assert_eq!(p("Z^3").hom_count(2), 8);
    assert_eq!(p("Z/3").vec_zn_value(3), FieldElement::from_int(1, 1));
    assert_eq!(p("Z/2").vec_zn_value(3), FieldElement::frac(1, 1, 3));
    for bad in ["", "Q", "Z/1", "Z^x", "Z/0"] {
        assert!(Pi1::parse(bad).is_err(), "{bad}");
    }
}

#[test]
fn default_suite_is_all_equal() {
    let cfg = load_config(&catalog_dir().join("suite.conf")).unwrap();
    assert_eq!(cfg.entries.len(), 5);
    let report = run_suite(&cfg, 4).unwrap();
    let text = report.to_text(None);
    assert!(report.passed(), "{text}");
    assert_eq!(report.rows.len(), 20);
    assert_eq!(report.oracles.len(), 15);
    let row = |m: &str, c: &str| {
        report
            .rows
            .iter()
            .find(|r| r.manifold == m && r.category == c)
            .unwrap()
    };
    assert_eq!(row("S3", "vec_z2").tv, Some(FieldElement::frac(1, 1, 2)));
    assert_eq!(row("RP3", "vec_z3").rt, Some(FieldElement::frac(1, 1, 3)));
    assert!(row("S2xS1", "fib").rt.as_ref().unwrap().is_one());
    // serial and parallel runs give the same report apart from timings
    let strip = |s: String| {
        s.lines()
            .map(|l| l.split(" time_ms=").next().unwrap().to_string())
            .collect::<Vec<_>>()
    };
    assert_eq!(
        strip(text),
        strip(run_suite(&cfg, 1).unwrap().to_text(None))
    );
}

#[test]
fn corrupt_suite_fails_validation() {
    let cfg = load_config(&catalog_dir().join("suite_corrupt.conf")).unwrap();
    let report = run_suite(&cfg, 1).unwrap();
    assert!(!report.passed());
    assert!(report.rows.is_empty());
    let text = report.to_text(None);
    assert!(
        text.contains("validation target=category:fib_corrupt check=pentagon status=FAIL"),
        "{text}"
    );
    assert!(text.ends_with("passed=false\n"));
}

#[test]
fn empty_suite_passes() {
    let report = run_suite(&parse_config("# nothing\n", Path::new(".")).unwrap(), 2).unwrap();
    assert!(report.passed());
    assert_eq!(
        report.to_text(None),
        "summary rows=0 equal=0 validations_failed=0 passed=true\n"
    );
}

#[test]
fn config_errors() {
    let dir = Path::new(".");
    for (bad, line) in [
        ("entry S3 tri=a link=b\n", 1),
        ("\nentry S3 tri=a link=b pi1=Q\n", 0),
        ("category c cat=x center=magic:1\n", 1),
        ("category c cat=x center=solve-vecG:two\n", 1),
        ("entry S3 tri=a tri=b link=c pi1=1\n", 1),
        ("entry S3 tri=a link=b pi1=1 colour=red\n", 1),
        ("manifold S3\n", 1),
        ("entry\n", 1),
    ] {
        match parse_config(bad, dir) {
            Err(CatalogError::Config { line: l, .. }) => assert_eq!(l, line, "{bad}"),
            Err(CatalogError::Group(_)) => assert_eq!(line, 0),
            other => panic!("{bad}: {other:?}"),
        }
    }
    let cfg = parse_config(
        "entry S3 tri=missing.tri link=s3.link pi1=1\n",
        Path::new("/nonexistent"),
    )
    .unwrap();
    assert!(matches!(run_suite(&cfg, 1), Err(CatalogError::Io { .. })));
}

#[test]
fn center_file_source_matches_solver() {
    let dir = tempdir();
    let c = crate::center::solve_center_vecg(2).unwrap();
    let path = dir.join("z2.center");
    std::fs::write(&path, c.to_text()).unwrap();
    let cat =
        crate::fusion::parse_category(&read(&catalog_dir().join("vec_z2.cat")).unwrap()).unwrap();
    let from_file = CenterSource::File(path).build(Some(&cat)).unwrap();
    assert_eq!(from_file.modular.to_text(), c.modular.to_text());
}

fn tempdir() -> PathBuf {
    let d = std::env::temp_dir().join(format!("tvrt-catalog-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}
