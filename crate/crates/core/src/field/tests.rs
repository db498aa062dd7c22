use super::*;
use proptest::prelude::*;

fn p(s: &str, n: u32) -> FieldElement {
    parse_field_element(s, n, None).unwrap()
}

#[test]
fn i_squared_is_minus_one() {
    let i = FieldElement::zeta(4, 1);
    assert_eq!(&i * &i, FieldElement::from_int(4, -1));
}

#[test]
fn golden_ratio_squares_to_itself_plus_one() {
    let phi = p("-z^2 - z^3", 5);
    let sq = &phi * &phi;
    // (ζ²+ζ³)² = ζ⁴ + 2 + ζ = 1 - ζ² - ζ³ after ζ⁴ = -1-ζ-ζ²-ζ³
    assert_eq!(sq.to_string(), "-z^3 - z^2 + 1");
    assert_eq!(sq, &phi + &FieldElement::one(5));
}

#[test]
fn conjugate_of_zeta8() {
    let z = FieldElement::zeta(8, 1);
    assert_eq!(z.conjugate().to_string(), "-z^3");
    let q = FieldElement::frac(8, 3, 7);
    assert_eq!(q.conjugate(), q);
}

#[test]
fn numeric_embedding() {
    assert_eq!(p("-z^2-z^3", 5).approx_string(10), "~1.6180339887");
    assert_eq!(FieldElement::zero(7).approx_string(4), "~0.0000");
    assert_eq!(FieldElement::frac(3, 1, 2).approx_string(3), "~0.500");
}

#[test]
fn division_by_zero_is_an_error() {
    let a = FieldElement::one(5);
    assert_eq!(
        a.try_div(&FieldElement::zero(5)),
        Err(FieldError::DivisionByZero)
    );
}

#[test]
fn mixed_orders_embed_into_lcm() {
    let i = FieldElement::zeta(4, 1);
    let w = FieldElement::zeta(3, 1);
    let prod = &i * &w;
    assert_eq!(prod.order(), 12);
    assert_eq!(prod, FieldElement::zeta(12, 3 + 4));
    // √3 = ζ12 + ζ12^{-1}
    let s3 = &FieldElement::zeta(12, 1) + &FieldElement::zeta(12, -1);
    assert_eq!(&s3 * &s3, FieldElement::from_int(1, 3));
}

#[test]
fn adjoined_root_of_golden_ratio() {
    let phi = p("-z^2-z^3", 5);
    let w = FieldElement::sqrt_of(&phi);
    assert_eq!(&w * &w, phi);
    let x = &FieldElement::one(5) + &w;
    let inv = x.inverse().unwrap();
    assert!((&x * &inv).is_one());
    let (re, _) = w.to_complex();
    assert!((re - ((1.0 + 5f64.sqrt()) / 2.0).sqrt()).abs() < 1e-12);
    let parsed = parse_field_element("2*w^2 - w", 5, Some(&phi)).unwrap();
    assert_eq!(parsed, &(&phi + &phi) - &w);
    assert_eq!(w.conjugate(), w);
    let other = FieldElement::sqrt_of(&FieldElement::from_int(5, 2));
    assert_eq!(w.try_add(&other), Err(FieldError::IncompatibleRadicands));
}

#[test]
fn parse_errors() {
    assert!(parse_field_element("", 5, None).is_err());
    assert!(parse_field_element("z^-1", 5, None).is_err());
    assert!(parse_field_element("w", 5, None).is_err());
    assert!(parse_field_element("1/0", 5, None).is_err());
    assert!(parse_field_element("2+", 5, None).is_err());
}

fn arb_elem(n: u32) -> impl Strategy<Value = FieldElement> {
    let deg = cyclo::CycloTable::get(n).degree;
    prop::collection::vec((-6i64..7, 1i64..5), deg).prop_map(move |cs| {
        cs.iter()
            .enumerate()
            .fold(FieldElement::zero(n), |acc, (k, (a, b))| {
                &acc + &(&FieldElement::frac(n, *a, *b) * &FieldElement::zeta(n, k as i64))
            })
    })
}

fn arb_pair_triple() -> impl Strategy<Value = (FieldElement, FieldElement, FieldElement)> {
    prop_oneof![Just(5u32), Just(8), Just(12), Just(20)]
        .prop_flat_map(|n| (arb_elem(n), arb_elem(n), arb_elem(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms((a, b, c) in arb_pair_triple()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn conjugate_is_a_ring_homomorphism((a, b, _c) in arb_pair_triple()) {
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        prop_assert_eq!((&a + &b).conjugate(), &a.conjugate() + &b.conjugate());
        prop_assert_eq!(a.conjugate().conjugate(), a);
    }

    #[test]
    fn canonical_form_is_stable((a, _b, _c) in arb_pair_triple()) {
        let again = parse_field_element(&a.to_string(), a.order(), None).unwrap();
        prop_assert_eq!(again.coefficients(), a.coefficients());
    }
}
