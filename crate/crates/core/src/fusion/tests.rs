use super::*;
use crate::field::FieldElement;
use crate::testdata;

const VEC: &str = include_str!("../../../../catalog/vec.cat");
const VEC_Z2: &str = include_str!("../../../../catalog/vec_z2.cat");
const VEC_Z3: &str = include_str!("../../../../catalog/vec_z3.cat");
const FIB: &str = include_str!("../../../../catalog/fib.cat");
const FIB_CYCLO: &str = include_str!("../../../../catalog/fib_cyclo.cat");
const FIB_CORRUPT: &str = include_str!("../../../../catalog/fib_corrupt.cat");

fn phi(n: u32) -> FieldElement {
    // 2cos(2π/10) written in Q(ζ20)
    assert_eq!(n, 20);
    FieldElement::zeta(20, 2) + FieldElement::zeta(20, -2)
}

#[test]
fn catalog_categories_validate() {
    for (name, text) in [
        ("vec", VEC),
        ("z2", VEC_Z2),
        ("z3", VEC_Z3),
        ("fib", FIB),
        ("fibc", FIB_CYCLO),
    ] {
        let c = parse_category(text).unwrap();
        let r = validate_category(&c);
        assert!(r.all_passed(), "{name}:\n{r}");
    }
}

#[test]
fn flipped_sign_breaks_the_pentagon() {
    let c = parse_category(FIB_CORRUPT).unwrap();
    let r = validate_category(&c);
    let p = r.get("pentagon").unwrap();
    assert!(!p.passed);
    assert!(p.witness.as_deref().unwrap().contains("(a,b,c,d,e)"));
    assert!(r.get("fusion_character").unwrap().passed);
}

#[test]
fn global_dims() {
    let vec = parse_category(VEC).unwrap().global_dim().unwrap();
    assert!(vec.d.is_one());
    let z2 = parse_category(VEC_Z2).unwrap().global_dim().unwrap();
    assert_eq!(z2.d_squared, FieldElement::from_int(1, 2));
    let fib = parse_category(FIB).unwrap().global_dim().unwrap();
    // (5+√5)/2 = 2 + φ
    assert_eq!(fib.d_squared, &FieldElement::from_int(20, 2) + &phi(20));
}

#[test]
fn hom_counts_from_fusion() {
    let fib = parse_category(FIB).unwrap();
    let t = fib.index("t").unwrap();
    assert_eq!(fib.channels(t, t), &[0, 1]);
    assert_eq!(fib.f_matrix(t, t, t, t).rows, 2);
    let inv = fib.f_matrix(t, t, t, t).inverse().unwrap();
    assert_eq!(inv.get(1, 0), &fib.finv(t, t, t, t, 1, 0));
}

#[test]
fn deligne_products() {
    let vec = parse_category(VEC).unwrap();
    let fib = parse_category(FIB).unwrap();
    let vf = vec.deligne_product(&fib).unwrap();
    assert_eq!(vf.rank(), 2);
    assert_eq!(vf.labels(), &["1_1", "1_t"]);
    for k in fib.tables().fsym.keys() {
        let k = k.map(|x| x as usize);
        assert_eq!(
            vf.f(k[0], k[1], k[2], k[3], k[4], k[5]),
            fib.f(k[0], k[1], k[2], k[3], k[4], k[5])
        );
    }

    let z2 = parse_category(VEC_Z2).unwrap();
    let zz = z2.deligne_product(&z2).unwrap();
    assert_eq!(zz.rank(), 4);
    assert!((0..4).all(|a| zz.dim(a).is_one()));
    assert_eq!(
        zz.global_dim().unwrap().d_squared,
        FieldElement::from_int(1, 4)
    );

    let ff = fib.deligne_product(&fib).unwrap();
    assert!(validate_category(&ff).all_passed());
    let g = fib.global_dim().unwrap().d_squared;
    assert_eq!(ff.global_dim().unwrap().d_squared, &g * &g);
}

#[test]
fn incompatible_radicands_are_rejected() {
    let fib = parse_category(FIB).unwrap();
    let other = FIB.replace("sqrt_adjoin: z^2 + z^18", "sqrt_adjoin: 2");
    // the file no longer squares correctly but still loads
    let odd = parse_category(&other).unwrap();
    assert_eq!(
        fib.deligne_product(&odd).unwrap_err(),
        FusionError::IncompatibleFields
    );
}

#[test]
fn load_errors() {
    assert!(matches!(parse_category(""), Err(FusionError::Missing(_))));
    let unknown = format!("{VEC}colour: red\n");
    assert!(matches!(
        parse_category(&unknown),
        Err(FusionError::Syntax { .. })
    ));
    let missing_f = VEC_Z2.replace("F: 1 1 1 ; 1 | 0 0 = 1\n", "");
    assert!(matches!(
        parse_category(&missing_f),
        Err(FusionError::MissingF(_))
    ));
    let bad_dual = VEC_Z3.replace("dual: 2 -> 1", "dual: 2 -> 2");
    assert!(matches!(
        parse_category(&bad_dual),
        Err(FusionError::DualNotInvolutive(_))
    ));
    let extra_f = format!("{VEC_Z2}F: 1 1 1 ; 1 | 1 1 = 1\n");
    assert!(matches!(
        parse_category(&extra_f),
        Err(FusionError::InadmissibleF(_))
    ));
    let bad_root = VEC_Z2.replace("global_dim: z - z^3", "global_dim: 2");
    let c = parse_category(&bad_root).unwrap();
    assert!(c.global_dim().is_err());
    assert!(!validate_category(&c).get("global_dim").unwrap().passed);
}

#[test]
fn wrong_pivotal_entry_is_reported() {
    let text = FIB.replace(
        "F: t t t ; t | 1 1 = z^2 + z^18 - 1",
        "F: t t t ; t | 1 1 = 1",
    );
    let c = parse_category(&text).unwrap();
    let r = validate_category(&c);
    assert!(!r.get("trivial_pivotal").unwrap().passed);
}

#[test]
fn written_categories_parse_back() {
    for (name, cat) in testdata::all() {
        let again = parse_category(&cat.to_text()).unwrap();
        assert_eq!(again.to_text(), cat.to_text(), "{name}");
        assert_eq!(again.labels(), cat.labels());
    }
}
