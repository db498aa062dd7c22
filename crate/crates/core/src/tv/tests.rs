use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::field::FieldElement;
use crate::testdata;

/// #Hom(π₁, Z/n)/n from the abelianization; independent of the state sum.
fn vec_zn_oracle(h1: &[u64], n: u64) -> FieldElement {
    let homs: u64 = h1
        .iter()
        .map(|&k| if k == 0 { n } else { k.gcd(&n) })
        .product();
    FieldElement::frac(1, homs as i64, n as i64)
}

fn load(text: &str) -> Triangulation {
    load_triangulation(text).unwrap()
}

/// Isomorphism of branched triangulations: a bijection of tetrahedra carrying gluings
/// to gluings (vertex orders are forced).
fn isomorphic(a: &Triangulation, b: &Triangulation) -> bool {
    fn search(
        a: &Triangulation,
        b: &Triangulation,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let t = map.len();
        if t == a.tet_count() {
            return (0..t).all(|s| {
                (0..4).all(|f| {
                    let ga = a.gluing(s, f);
                    let gb = b.gluing(map[s], f);
                    gb.tet == map[ga.tet] && gb.face == ga.face && gb.perm == ga.perm
                })
            });
        }
        for c in 0..b.tet_count() {
            if !used[c] {
                used[c] = true;
                map.push(c);
                if search(a, b, map, used) {
                    return true;
                }
                map.pop();
                used[c] = false;
            }
        }
        false
    }
    a.tet_count() == b.tet_count() && search(a, b, &mut Vec::new(), &mut vec![false; b.tet_count()])
}

#[test]
fn catalog_triangulations_load() {
    let counts = [
        ("S3", 2),
        ("S2xS1", 2),
        ("RP3", 2),
        ("L(3,1)", 2),
        ("T3", 6),
    ];
    for ((name, text, _), (n2, tets)) in testdata::manifolds().into_iter().zip(counts) {
        assert_eq!(name, n2);
        let t = load(text);
        assert_eq!(t.tet_count(), tets, "{name}");
        assert_eq!(t.vertex_count() + t.tet_count(), t.edge_count(), "{name}");
        assert_eq!(load(&t.to_text()), t, "{name}");
    }
    let s3 = load(testdata::S3_TRI);
    assert_eq!((s3.vertex_count(), s3.edge_count()), (4, 6));
    assert_eq!(s3.orientation(0), -s3.orientation(1));
}

#[test]
fn vec_g_values_match_group_counts() {
    let cats = [
        (2, testdata::cat(testdata::VEC_Z2)),
        (3, testdata::cat(testdata::VEC_Z3)),
    ];
    for (name, text, h1) in testdata::manifolds() {
        let t = load(text);
        for (n, c) in &cats {
            assert_eq!(tv_state_sum(&t, c), vec_zn_oracle(&h1, *n), "{name} Z/{n}");
        }
        assert!(
            tv_state_sum(&t, &testdata::cat(testdata::VEC)).is_one(),
            "{name}"
        );
    }
    // the pinned values
    let z2 = &cats[0].1;
    let v = |text| tv_state_sum(&load(text), z2);
    assert_eq!(v(testdata::S3_TRI), FieldElement::frac(1, 1, 2));
    assert!(v(testdata::S2XS1_TRI).is_one());
    assert!(v(testdata::RP3_TRI).is_one());
    assert_eq!(v(testdata::T3_TRI), FieldElement::from_int(1, 4));
}

#[test]
fn sphere_is_inverse_global_dimension_squared() {
    let s3 = load(testdata::S3_TRI);
    for (name, c) in testdata::all() {
        let d = c.declared_global_dim();
        assert_eq!(tv_state_sum(&s3, &c), (d * d).pow(-1), "{name}");
    }
}

#[test]
fn gauges_agree() {
    for (name, text, _) in testdata::manifolds() {
        let t = load(text);
        let a = tv_state_sum(&t, &testdata::cat(testdata::FIB));
        let b = tv_state_sum(&t, &testdata::cat(testdata::FIB_CYCLO));
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn disjoint_union_multiplies() {
    let s3 = load(testdata::S3_TRI);
    let rp3 = load(testdata::RP3_TRI);
    for (name, c) in testdata::all() {
        let both = s3.disjoint_union(&s3);
        assert_eq!(both.tet_count(), 4);
        let one = tv_state_sum(&s3, &c);
        assert_eq!(tv_state_sum(&both, &c), &one * &one, "{name}");
        let mixed = s3.disjoint_union(&rp3);
        assert_eq!(
            tv_state_sum(&mixed, &c),
            one * tv_state_sum(&rp3, &c),
            "{name}"
        );
    }
}

#[test]
fn parallel_sum_agrees() {
    let c = testdata::cat(testdata::FIB);
    for (name, text, _) in testdata::manifolds() {
        let t = load(text);
        let serial = tv_state_sum(&t, &c);
        for j in [1, 2, 3] {
            assert_eq!(tv_state_sum_parallel(&t, &c, j), serial, "{name} j={j}");
        }
    }
}

#[test]
fn load_errors() {
    assert!(matches!(load_triangulation(""), Err(TvError::Empty)));
    assert!(matches!(
        load_triangulation("tets: 0\n"),
        Err(TvError::Empty)
    ));
    assert!(matches!(
        load_triangulation("tets: 1\nglue: 0.3 -> 0.3 perm=0123\n"),
        Err(TvError::NonOrientable)
    ));
    assert!(matches!(
        load_triangulation("tets: 1\nglue: 0.0 -> 0.1 perm=1023\n"),
        Err(TvError::Unglued { .. })
    ));
    // both tetrahedra positive: gluings must reverse orientation
    let flipped = testdata::S3_TRI.replace("0.3 -> 1.3 perm=0123", "0.3 -> 1.2 perm=0132");
    assert!(load_triangulation(&flipped).is_err());
    let unbranched = testdata::S3_TRI.replace("0.3 -> 1.3 perm=0123", "0.3 -> 1.3 perm=1023");
    assert!(matches!(
        load_triangulation(&unbranched),
        Err(TvError::NotBranched { tet: 0, face: 3 })
    ));
    let twice = format!("{}glue: 0.0 -> 1.1 perm=0123\n", testdata::S3_TRI);
    assert!(matches!(
        load_triangulation(&twice),
        Err(TvError::Involution { .. })
    ));
    let wrong_face = testdata::S3_TRI.replace("0.0 -> 1.0 perm=0123", "0.0 -> 1.0 perm=1023");
    assert!(matches!(
        load_triangulation(&wrong_face),
        Err(TvError::Involution { .. })
    ));
    for bad in [
        "tets: x\n",
        "tets: 1\nglue: 0.4 -> 0.0 perm=0123\n",
        "tets: 1\nglue: 0.1 -> 0.0 perm=0113\n",
        "glue: 0.1 -> 0.0 perm=0123\n",
        "tets: 1\nsides: 4\n",
        "tets: 1\nglue: 2.1 -> 0.0 perm=0123\n",
    ] {
        assert!(
            matches!(load_triangulation(bad), Err(TvError::Syntax { .. })),
            "{bad}"
        );
    }
}

#[test]
fn move_bookkeeping() {
    let s3 = load(testdata::S3_TRI);
    let m = Move::TwoThree { tet: 0, face: 0 };
    let t = pachner_move(&s3, m).unwrap();
    assert_eq!(t.tet_count(), 3);
    assert_eq!(t.edge_count(), s3.edge_count() + 1);
    // the new edge is the only one of degree 3 created by the move
    let back = admissible_moves(&t)
        .into_iter()
        .filter(|m| matches!(m, Move::ThreeTwo { .. }))
        .map(|m| pachner_move(&t, m).unwrap())
        .find(|b| isomorphic(b, &s3));
    assert!(back.is_some());

    for slot in 0..5 {
        let t = pachner_move(&s3, Move::OneFour { tet: 1, slot }).unwrap();
        assert_eq!(t.tet_count(), 5);
        assert_eq!(t.vertex_count(), 5);
        let fours: Vec<Move> = admissible_moves(&t)
            .into_iter()
            .filter(|m| matches!(m, Move::FourOne { .. }))
            .collect();
        assert!(
            fours
                .iter()
                .any(|&m| isomorphic(&pachner_move(&t, m).unwrap(), &s3)),
            "slot {slot}"
        );
    }
}

#[test]
fn inadmissible_moves_are_refused() {
    let s3 = load(testdata::S3_TRI);
    // every edge of the two-tetrahedron sphere has degree 2
    assert!(matches!(
        pachner_move(&s3, Move::ThreeTwo { tet: 0, edge: 0 }),
        Err(TvError::Inadmissible(_))
    ));
    assert!(matches!(
        pachner_move(&s3, Move::FourOne { tet: 0, vertex: 0 }),
        Err(TvError::Inadmissible(_))
    ));
    assert!(matches!(
        pachner_move(&s3, Move::TwoThree { tet: 5, face: 0 }),
        Err(TvError::Inadmissible(_))
    ));
    assert!(matches!(
        pachner_move(&s3, Move::OneFour { tet: 0, slot: 7 }),
        Err(TvError::Inadmissible(_))
    ));
    // S²×S¹ glues tetrahedron 0 to itself
    let s2s1 = load(testdata::S2XS1_TRI);
    assert!(pachner_move(&s2s1, Move::TwoThree { tet: 0, face: 0 }).is_err());
}

#[test]
fn random_move_sequences_preserve_the_state_sum() {
    let cats = [
        ("z2", testdata::cat(testdata::VEC_Z2)),
        ("z3", testdata::cat(testdata::VEC_Z3)),
        ("fib", testdata::cat(testdata::FIB)),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, text, _) in testdata::manifolds() {
        let start = load(text);
        let before: Vec<FieldElement> = cats.iter().map(|(_, c)| tv_state_sum(&start, c)).collect();
        for round in 0..3 {
            let mut t = start.clone();
            let mut applied = Vec::new();
            for _ in 0..6 {
                let Some((m, next)) = random_move(&t, &mut rng, 14) else {
                    break;
                };
                applied.push(m);
                t = next;
            }
            assert!(!applied.is_empty());
            for ((cn, c), v) in cats.iter().zip(&before) {
                assert_eq!(
                    tv_state_sum(&t, c),
                    *v,
                    "{name} {cn} round {round} moves {applied:?}"
                );
            }
        }
    }
}
