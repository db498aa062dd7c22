use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::diagram::{hom_space_dim, HomVector};
use crate::testdata;

const VEC_MODULAR: &str = "cyclo_order: 1\nsimples: 1\nunit: 1\ndual: 1 -> 1\nfuse: 1 1 -> 1\n\
dim: 1 = 1\nsqrtdim: 1 = 1\nglobal_dim: 1\nF: 1 1 1 ; 1 | 1 1 = 1\nR: 1 1 ; 1 = 1\n\
twist: 1 = 1\nsmat: 1 1 = 1\n";

fn fib_modular() -> ModularData {
    parse_modular(testdata::FIB_MTC).unwrap()
}

fn assert_all_pass(r: &Report, what: &str) {
    assert!(r.all_passed(), "{what}:\n{r}");
}

fn zeta(n: usize, k: usize) -> FieldElement {
    FieldElement::zeta(n as u32, (k % n) as i64)
}

#[test]
fn solved_centers_pass_every_check() {
    for n in 1..=4 {
        let c = solve_center_vecg(n).unwrap();
        assert_all_pass(&verify_center(&c), &format!("D(Z/{n})"));
        assert_eq!(c.rank(), n * n);
    }
}

#[test]
fn solver_output_matches_character_formulas() {
    // (g, k) has half-braiding h ↦ ζ^{kh}, twist ζ^{gk}, and s̃ = ζ^{-(kh + lg)}
    for n in 1..=4 {
        let c = solve_center_vecg(n).unwrap();
        let f = c.forget().unwrap();
        for g in 0..n {
            for k in 0..n {
                let z = c.index(&format!("{g}_{k}")).unwrap();
                assert_eq!(f.simples[z].underlying, g);
                for h in 0..n {
                    assert_eq!(f.simples[z].halfbraid[h], zeta(n, k * h));
                }
                assert_eq!(*c.modular.twist(z), zeta(n, g * k));
                for h in 0..n {
                    for l in 0..n {
                        let w = c.index(&format!("{h}_{l}")).unwrap();
                        assert_eq!(
                            *c.modular.smat().get(z, w),
                            zeta(n, 2 * n * n - k * h - l * g)
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn small_centers() {
    let c1 = solve_center_vecg(1).unwrap();
    assert_eq!(c1.rank(), 1);
    assert!(c1.modular.twist(0).is_one());

    let c2 = solve_center_vecg(2).unwrap();
    let labels: Vec<&str> = (0..4).map(|z| c2.label(z)).collect();
    assert_eq!(labels, ["0_0", "0_1", "1_0", "1_1"]);
    let m = &c2.modular;
    for z in 0..4 {
        assert!(m.base.dim(z).is_one());
        assert!(m.smat().get(m.base.unit(), z).is_one());
    }
    // Dim(Z(C)) = 4 = Dim(C)²
    assert_eq!(m.base.dims_squared_sum(), FieldElement::from_int(1, 4));
    assert_eq!(*m.global_dim(), FieldElement::from_int(1, 2));
    let (p, q) = m.gauss_sums();
    assert_eq!(p, FieldElement::from_int(1, 2));
    assert_eq!(q, FieldElement::from_int(1, 2));
    for w in 0..4 {
        let mut s = FieldElement::zero(1);
        for z in 0..4 {
            s += m.smat().get(z, w);
        }
        assert_eq!(s, FieldElement::from_int(1, if w == 0 { 4 } else { 0 }));
    }
    assert!(solve_center_vecg(0).is_err());
}

#[test]
fn vec_zn_global_dimension() {
    for n in 1..=6 {
        let c = vec_zn(n).unwrap();
        let g = c.global_dim().unwrap();
        assert_eq!(g.d_squared, FieldElement::from_int(1, n as i64));
        let (re, im) = g.d.to_complex();
        assert!((re - (n as f64).sqrt()).abs() < 1e-9 && im.abs() < 1e-9);
        assert_all_pass(&crate::fusion::validate_category(&c), "vec_zn");
    }
}

#[test]
fn fibonacci_data_and_its_center() {
    let fib = fib_modular();
    assert_all_pass(&verify_modular(&fib), "fib");
    // Fibonacci alone is anomalous
    assert!(!fib.is_anomaly_free());
    let z = center_of_modular(&fib).unwrap();
    assert_all_pass(&verify_center(&z), "Z(fib)");
    assert_eq!(z.rank(), 4);
    let labels: Vec<&str> = (0..4).map(|i| z.label(i)).collect();
    assert_eq!(labels, ["1_1", "1_t", "t_1", "t_t"]);
    // Dim = ((5+√5)/2)² = (1 + φ²)²
    let phi = FieldElement::zeta(20, 2) + FieldElement::zeta(20, 18);
    let d2 = FieldElement::one(1) + &phi * &phi;
    assert_eq!(z.modular.base.dims_squared_sum(), &d2 * &d2);
    assert_eq!(*z.modular.global_dim(), d2);
    assert!(z.modular.twist(z.index("t_t").unwrap()).is_one());
    let t = z.modular.twist(z.index("t_1").unwrap());
    assert_eq!(*t, FieldElement::zeta(20, 8));
    assert_eq!(
        *z.modular.twist(z.index("1_t").unwrap()),
        FieldElement::zeta(20, 12)
    );
}

#[test]
fn trivial_modular_center() {
    let v = parse_modular(VEC_MODULAR).unwrap();
    let z = center_of_modular(&v).unwrap();
    assert_eq!(z.rank(), 1);
    assert_all_pass(&verify_center(&z), "Z(Vec)");
}

#[test]
fn broken_braided_data_is_reported() {
    let bad_r = testdata::FIB_MTC.replace("R: t t ; t = -z^16", "R: t t ; t = -z^4");
    let r = verify_modular(&parse_modular(&bad_r).unwrap());
    assert!(!r.get("hexagon_left").unwrap().passed);
    assert!(!r.get("smat_hopf_link").unwrap().passed);

    let bad_twist = testdata::FIB_MTC.replace("twist: t = z^8", "twist: t = z^12");
    let r = verify_modular(&parse_modular(&bad_twist).unwrap());
    assert!(r.get("hexagon_left").unwrap().passed);
    assert!(!r.get("twist_kink").unwrap().passed);

    // symmetric braiding on Vec_{Z/2}: s̃ is all ones, hence degenerate
    let sym = format!(
        "{}R: 0 0 ; 0 = 1\nR: 0 1 ; 1 = 1\nR: 1 0 ; 1 = 1\nR: 1 1 ; 0 = 1\ntwist: 0 = 1\ntwist: 1 = 1\n\
smat: 0 0 = 1\nsmat: 0 1 = 1\nsmat: 1 0 = 1\nsmat: 1 1 = 1\n",
        testdata::VEC_Z2
    );
    let m = parse_modular(&sym).unwrap();
    assert!(!verify_modular(&m).get("smat_nondegenerate").unwrap().passed);
    assert!(matches!(
        center_of_modular(&m),
        Err(CenterError::NotModular(_))
    ));
}

#[test]
fn center_files_round_trip() {
    for n in 1..=3 {
        let c = solve_center_vecg(n).unwrap();
        let base = c.forget().unwrap().base.clone();
        let text = c.to_text();
        let again = parse_center(&text, Some(&base)).unwrap();
        assert_eq!(again.to_text(), text);
        assert_all_pass(&verify_center(&again), "reloaded");
        // without the base category the half-braiding lines cannot be read
        assert!(matches!(
            parse_center(&text, None),
            Err(CenterError::Syntax { .. })
        ));
    }
    let z = center_of_modular(&fib_modular()).unwrap();
    let again = parse_center(&z.to_text(), None).unwrap();
    assert_eq!(again.modular.to_text(), z.modular.to_text());
}

#[test]
fn center_file_errors() {
    let missing = testdata::FIB_MTC.replace("R: t t ; 1 = z^12\n", "");
    assert!(matches!(
        parse_modular(&missing),
        Err(CenterError::Missing(_))
    ));
    let extra = format!("{}R: 1 1 ; t = 1\n", testdata::FIB_MTC);
    assert!(matches!(
        parse_modular(&extra),
        Err(CenterError::InadmissibleR(_))
    ));
    let no_twist = testdata::FIB_MTC.replace("twist: t = z^8\n", "");
    assert!(matches!(
        parse_modular(&no_twist),
        Err(CenterError::Missing(_))
    ));
    let bad_label = testdata::FIB_MTC.replace("smat: t t = -1", "smat: t q = -1");
    assert!(matches!(
        parse_modular(&bad_label),
        Err(CenterError::Syntax { .. })
    ));
}

fn simple_pairs(c: &CenterData) -> Vec<(usize, usize)> {
    let f = c.forget().unwrap();
    let mut out = Vec::new();
    for y in 0..c.rank() {
        for z in 0..c.rank() {
            if f.simples[y].underlying == f.simples[z].underlying {
                out.push((y, z));
            }
        }
    }
    out
}

fn bent_boundary(c: &CenterData, y: usize, z: usize) -> Vec<usize> {
    let f = c.forget().unwrap();
    vec![
        f.simples[z].underlying,
        f.base.dual(f.simples[y].underlying),
    ]
}

#[test]
fn projector_examples() {
    let c2 = solve_center_vecg(2).unwrap();
    let f = c2.forget().unwrap();
    for (y, z) in simple_pairs(&c2) {
        let b = bent_boundary(&c2, y, z);
        let id = HomVector::basis_vector(&f.base, &b, 0);
        let p = project_p(&id, y, z, &c2).unwrap();
        if y == z {
            assert_eq!(p, id);
        } else {
            assert!(p.is_zero(), "{} -> {}", c2.label(y), c2.label(z));
        }
    }
    let c3 = solve_center_vecg(3).unwrap();
    let f3 = c3.forget().unwrap();
    let z = c3.index("1_2").unwrap();
    let id = HomVector::basis_vector(&f3.base, &bent_boundary(&c3, z, z), 0);
    let five = id.scale(&FieldElement::from_int(1, 5));
    assert_eq!(project_p(&five, z, z, &c3).unwrap(), five);
    // wrong boundary and missing forgetful functor
    assert!(project_p(&HomVector::basis_vector(&f3.base, &[0, 0], 0), z, z, &c3).is_err());
    let zf = center_of_modular(&fib_modular()).unwrap();
    assert!(matches!(
        project_p(&id, 0, 0, &zf),
        Err(CenterError::NoForget)
    ));
}

#[test]
fn projector_is_idempotent_with_central_image() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for n in [2, 3] {
        let c = solve_center_vecg(n).unwrap();
        let f = c.forget().unwrap();
        for (y, z) in simple_pairs(&c) {
            for _ in 0..3 {
                let psi = HomVector::random(&f.base, &bent_boundary(&c, y, z), &mut rng);
                let p = project_p(&psi, y, z, &c).unwrap();
                assert_eq!(project_p(&p, y, z, &c).unwrap(), p);
                assert!(is_central(&p, y, z, &c).unwrap());
                // Pψ = δ_{YZ} tr(ψ)/d_Z · Id
                let expect = if y == z {
                    let tr = bent_trace(&psi, &c).unwrap();
                    let id = HomVector::basis_vector(&f.base, &psi.boundary, 0);
                    id.scale(&(tr / c.modular.base.dim(z)))
                } else {
                    HomVector::zero(&f.base, &psi.boundary)
                };
                assert_eq!(p, expect);
                // a nonzero ψ between different simples is not central
                if y != z && !psi.is_zero() {
                    assert!(!is_central(&psi, y, z, &c).unwrap());
                }
            }
        }
    }
}

fn words(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut cur = vec![vec![]];
    for _ in 0..max_len {
        cur = cur
            .iter()
            .flat_map(|w: &Vec<usize>| {
                (0..n).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
        out.extend(cur.iter().cloned());
    }
    out
}

#[test]
fn gluing_examples() {
    let c2 = solve_center_vecg(2).unwrap();
    assert_eq!(gluing_sides(&[0], &[0], &c2).unwrap(), (2, 2));
    let m = gluing_isom(&[0], &[0], &c2).unwrap();
    assert_eq!((m.rows, m.cols), (2, 2));
    assert!(m.inverse().is_some());

    let c1 = solve_center_vecg(1).unwrap();
    let m = gluing_isom(&[], &[], &c1).unwrap();
    assert!(m.is_identity());
}

#[test]
fn gluing_dimension_bookkeeping() {
    let c = solve_center_vecg(3).unwrap();
    let base = &c.forget().unwrap().base;
    for a in words(3, 2) {
        for b in words(3, 2) {
            let (dom, cod) = gluing_sides(&a, &b, &c).unwrap();
            let mut direct = 0;
            for x in 0..3 {
                let w: Vec<usize> = a
                    .iter()
                    .copied()
                    .chain([x])
                    .chain(b.iter().copied())
                    .chain([(3 - x) % 3])
                    .collect();
                direct += hom_space_dim(base, &w);
            }
            assert_eq!(cod, direct);
            assert_eq!(dom, cod, "A={a:?} B={b:?}");
        }
    }
}

#[test]
fn gluing_maps_are_invertible() {
    for n in [2, 3] {
        let c = solve_center_vecg(n).unwrap();
        for a in words(n, 2) {
            for b in words(n, 2) {
                let m = gluing_isom(&a, &b, &c).unwrap();
                assert_eq!(m.rows, m.cols);
                if m.rows == 0 {
                    continue;
                }
                let inv = m
                    .inverse()
                    .unwrap_or_else(|| panic!("N={n} A={a:?} B={b:?}"));
                assert!(m.mul(&inv).is_identity());
            }
        }
    }
}
