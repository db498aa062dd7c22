//! The acceptance suite: one line per criterion, nonzero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tvrt_core::center::{
    bent_trace, center_of_modular, gluing_isom, parse_modular, project_p, solve_center_vecg,
    CenterData,
};
use tvrt_core::diagram::{compose_along, hom_space_dim, pair};
use tvrt_core::fusion::{parse_category, FusionData};
use tvrt_core::rt::{
    parse_link, rt_invariant, sl2z_relations, torus_identities, verify_surgery_step, FramedLink,
    SurgeryPresentation,
};
use tvrt_core::tv::{load_triangulation, random_move, tv_state_sum, Triangulation};
use tvrt_core::{FieldElement, HomVector};

type Outcome = Result<(), String>;

fn e<T>(r: Result<T, impl std::fmt::Display>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn catalog(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../catalog")
        .join(name)
}

fn text(name: &str) -> String {
    std::fs::read_to_string(catalog(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn category(name: &str) -> FusionData {
    parse_category(&text(name)).unwrap()
}

/// Catalog manifolds: name, triangulation file, surgery file.
const MANIFOLDS: [(&str, &str, &str); 5] = [
    ("S3", "s3.tri", "s3.link"),
    ("S2xS1", "s2xs1.tri", "s2xs1.link"),
    ("RP3", "rp3.tri", "rp3.link"),
    ("L(3,1)", "l31.tri", "l31.link"),
    ("T3", "t3.tri", "t3.link"),
];

/// #Hom(π₁(M), Z/n) from the known groups 1, Z, Z/2, Z/3, Z³.
fn hom_count(manifold: &str, n: u64) -> u64 {
    let gcd = |mut a: u64, mut b: u64| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    match manifold {
        "S3" => 1,
        "S2xS1" => n,
        "RP3" => gcd(2, n),
        "L(3,1)" => gcd(3, n),
        "T3" => n * n * n,
        _ => unreachable!(),
    }
}

struct Setup {
    cats: Vec<(&'static str, FusionData, CenterData)>,
    tris: Vec<Triangulation>,
    links: Vec<SurgeryPresentation>,
}

fn setup() -> Setup {
    let fib_mtc = parse_modular(&text("fib.mtc")).unwrap();
    Setup {
        cats: vec![
            (
                "Vec(Z/2)",
                category("vec_z2.cat"),
                solve_center_vecg(2).unwrap(),
            ),
            (
                "Vec(Z/3)",
                category("vec_z3.cat"),
                solve_center_vecg(3).unwrap(),
            ),
            (
                "Fibonacci",
                category("fib.cat"),
                center_of_modular(&fib_mtc).unwrap(),
            ),
        ],
        tris: MANIFOLDS
            .iter()
            .map(|(_, t, _)| load_triangulation(&text(t)).unwrap())
            .collect(),
        links: MANIFOLDS
            .iter()
            .map(|(_, _, l)| parse_link(&text(l)).unwrap())
            .collect(),
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Outcome {
    ensure!(elapsed <= limit, "{what} took {elapsed:?}, over {limit:?}");
    Ok(())
}

fn main_theorem(s: &Setup) -> Outcome {
    let start = Instant::now();
    for (name, cat, center) in &s.cats {
        for (i, (m, _, _)) in MANIFOLDS.iter().enumerate() {
            let tv = tv_state_sum(&s.tris[i], cat);
            let rt = rt_invariant(&s.links[i], &center.modular).map_err(|e| e.to_string())?;
            ensure!(tv == rt, "{m} over {name}: tv={tv} rt={rt}");
        }
    }
    within(start.elapsed(), Duration::from_secs(300), "all pairs")
}

fn sphere(s: &Setup) -> Outcome {
    for (name, cat, center) in &s.cats {
        let start = Instant::now();
        let tv = tv_state_sum(&s.tris[0], cat);
        within(start.elapsed(), Duration::from_secs(1), name)?;
        // Dim(Z(C)) = Dim(C)² is the center's global dimension
        let want = center.modular.global_dim().pow(-1);
        ensure!(tv == want, "{name}: tv={tv}, 1/Dim(Z(C))={want}");
        let d = cat.declared_global_dim();
        ensure!(
            tv == (d * d).pow(-1),
            "{name}: tv={tv} differs from 1/Dim(C)^2"
        );
    }
    Ok(())
}

fn vec_g_oracle(s: &Setup) -> Outcome {
    for (n, (name, cat, _)) in [2u64, 3].iter().zip(&s.cats) {
        for (i, (m, _, _)) in MANIFOLDS.iter().enumerate() {
            let want = FieldElement::frac(1, hom_count(m, *n) as i64, *n as i64);
            let tv = tv_state_sum(&s.tris[i], cat);
            ensure!(tv == want, "{m} over {name}: tv={tv}, #Hom/|G|={want}");
        }
    }
    Ok(())
}

fn pachner(s: &Setup) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (i, (m, _, _)) in MANIFOLDS.iter().enumerate() {
        let before: Vec<FieldElement> = s
            .cats
            .iter()
            .map(|(_, c, _)| tv_state_sum(&s.tris[i], c))
            .collect();
        for round in 0..10 {
            let len = rng.gen_range(1..=6);
            let mut t = s.tris[i].clone();
            let mut moves = Vec::new();
            for _ in 0..len {
                let Some((mv, next)) = random_move(&t, &mut rng, 16) else {
                    break;
                };
                moves.push(mv.to_string());
                t = next;
            }
            ensure!(!moves.is_empty(), "{m}: no admissible move");
            for ((name, c, _), v) in s.cats.iter().zip(&before) {
                let after = tv_state_sum(&t, c);
                ensure!(
                    after == *v,
                    "{m} over {name}, round {round}, moves {moves:?}: {v} became {after}"
                );
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(120), "move sequences")
}

fn projector(s: &Setup) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, _, c) in &s.cats[..2] {
        let f = c.forget().map_err(|e| e.to_string())?;
        for y in 0..c.rank() {
            for z in 0..c.rank() {
                if f.simples[y].underlying != f.simples[z].underlying {
                    continue;
                }
                let boundary = [
                    f.simples[z].underlying,
                    f.base.dual(f.simples[y].underlying),
                ];
                for _ in 0..3 {
                    let psi = HomVector::random(&f.base, &boundary, &mut rng);
                    let p = project_p(&psi, y, z, c).map_err(|e| e.to_string())?;
                    let pp = project_p(&p, y, z, c).map_err(|e| e.to_string())?;
                    ensure!(
                        pp == p,
                        "{name}: P∘P ≠ P at ({}, {})",
                        c.label(y),
                        c.label(z)
                    );
                    let want = if y == z {
                        let tr = bent_trace(&psi, c).map_err(|e| e.to_string())?;
                        HomVector::basis_vector(&f.base, &boundary, 0)
                            .scale(&(tr / c.modular.base.dim(z)))
                    } else {
                        HomVector::zero(&f.base, &boundary)
                    };
                    ensure!(
                        p == want,
                        "{name}: Pψ ≠ δ tr(ψ)/d Id at ({}, {})",
                        c.label(y),
                        c.label(z)
                    );
                }
            }
        }
    }
    Ok(())
}

fn words(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<usize>| (0..n).map(move |x| [w.as_slice(), &[x]].concat()))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn gluing(s: &Setup) -> Outcome {
    for (name, _, c) in &s.cats[..2] {
        let n = c.forget().map_err(|e| e.to_string())?.base.rank();
        for a in words(n, 2) {
            for b in words(n, 2) {
                let m = gluing_isom(&a, &b, c).map_err(|e| e.to_string())?;
                ensure!(
                    m.rows == m.cols,
                    "{name} A={a:?} B={b:?}: {}x{}",
                    m.rows,
                    m.cols
                );
                if m.rows > 0 {
                    let inv = m
                        .inverse()
                        .ok_or_else(|| format!("{name} A={a:?} B={b:?}: singular"))?;
                    ensure!(m.mul(&inv).is_identity(), "{name} A={a:?} B={b:?}");
                }
            }
        }
    }
    Ok(())
}

fn dual_rev(cat: &FusionData, w: &[usize]) -> Vec<usize> {
    w.iter().rev().map(|&x| cat.dual(x)).collect()
}

fn composition_pairing() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for file in ["vec.cat", "vec_z2.cat", "vec_z3.cat", "fib.cat"] {
        let cat = category(file);
        let ws = words(cat.rank(), 2);
        let mut done = 0;
        while done < 50 {
            let v = ws.choose(&mut rng).unwrap();
            let w = ws.choose(&mut rng).unwrap();
            let x = rng.gen_range(0..cat.rank());
            let vx: Vec<usize> = v.iter().copied().chain([x]).collect();
            let xw: Vec<usize> = [cat.dual(x)].into_iter().chain(w.iter().copied()).collect();
            if hom_space_dim(&cat, &vx) == 0 || hom_space_dim(&cat, &xw) == 0 {
                continue;
            }
            let phi = HomVector::random(&cat, &vx, &mut rng);
            let psi = HomVector::random(&cat, &xw, &mut rng);
            let phi_p = HomVector::random(&cat, &dual_rev(&cat, &vx), &mut rng);
            let psi_p = HomVector::random(&cat, &dual_rev(&cat, &xw), &mut rng);
            let lhs = e(pair(
                &cat,
                &e(compose_along(&cat, &phi, &psi, x))?,
                &e(compose_along(&cat, &psi_p, &phi_p, x))?,
            ))?;
            let rhs = e(pair(&cat, &phi, &phi_p))? * e(pair(&cat, &psi_p, &psi))?;
            ensure!(lhs == rhs, "{file} v={v:?} x={x} w={w:?}: {lhs} vs {rhs}");
            done += 1;
        }
    }
    Ok(())
}

fn torus(s: &Setup) -> Outcome {
    for (name, _, c) in &s.cats {
        let start = Instant::now();
        let mut r = sl2z_relations(&c.modular);
        r.extend(torus_identities(&c.modular));
        ensure!(r.all_passed(), "{name}:\n{r}");
        within(start.elapsed(), Duration::from_secs(1), name)?;
    }
    Ok(())
}

fn modular_identities(s: &Setup) -> Outcome {
    for (name, _, c) in &s.cats {
        let m = &c.modular;
        let cat = &m.base;
        let dim_z = cat.dims_squared_sum();
        for z in 0..m.rank() {
            ensure!(
                m.smat().get(cat.unit(), z) == cat.dim(z),
                "{name}: s̃(1,{}) ≠ d",
                cat.label(z)
            );
        }
        for w in 0..m.rank() {
            let mut sum = FieldElement::zero(1);
            for z in 0..m.rank() {
                sum += &(cat.dim(z) * m.smat().get(z, w));
            }
            let want = if w == cat.unit() {
                dim_z.clone()
            } else {
                FieldElement::zero(1)
            };
            ensure!(sum == want, "{name}: row sum at {} is {sum}", cat.label(w));
        }
        let (p, q) = m.gauss_sums();
        ensure!(p == q, "{name}: p+={p} p-={q}");
        ensure!(&p * &q == dim_z, "{name}: p+p- = {} ≠ Σ d²", &p * &q);
    }
    Ok(())
}

fn surgery_step(s: &Setup) -> Outcome {
    let step = |l: &FramedLink, c: &CenterData, what: &str| -> Outcome {
        let r = verify_surgery_step(l, 0, &c.modular).map_err(|e| e.to_string())?;
        ensure!(r.all_passed(), "{what}:\n{r}");
        Ok(())
    };
    let (d2, d3) = (&s.cats[0].2, &s.cats[1].2);
    step(&FramedLink::unknot(0), d2, "unknot framing 0 over D(Z/2)")?;
    step(&FramedLink::unknot(1), d3, "unknot framing 1 over D(Z/3)")?;
    for w in 0..d2.rank() {
        let mut hopf = FramedLink::hopf();
        hopf.set_color(1, Some(d2.label(w).to_string()))
            .map_err(|e| e.to_string())?;
        step(&hopf, d2, "Hopf link over D(Z/2)")?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for (name, _, c) in &s.cats {
        for _ in 0..5 {
            let strands = rng.gen_range(1..=3usize);
            let len = if strands == 1 {
                0
            } else {
                rng.gen_range(0..=6)
            };
            let word: Vec<i32> = (0..len)
                .map(|_| {
                    let g = rng.gen_range(1..strands as i32);
                    if rng.gen() {
                        g
                    } else {
                        -g
                    }
                })
                .collect();
            let mut l = FramedLink::new(strands, word.clone()).map_err(|e| e.to_string())?;
            for k in 0..l.components() {
                l.set_framing(k, rng.gen_range(-2..=2))
                    .map_err(|e| e.to_string())?;
            }
            let k = rng.gen_range(0..l.components());
            let r = verify_surgery_step(&l, k, &c.modular).map_err(|e| e.to_string())?;
            ensure!(
                r.all_passed(),
                "{name} word={word:?} framings={:?}:\n{r}",
                l.framings()
            );
        }
    }
    Ok(())
}

fn main() {
    let total = Instant::now();
    let s = setup();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (
            "main theorem tv = rt on all catalog pairs",
            Box::new(|| main_theorem(&s)),
        ),
        ("sphere value 1/Dim(Z(C))", Box::new(|| sphere(&s))),
        ("Vec_G group-count oracle", Box::new(|| vec_g_oracle(&s))),
        (
            "Pachner invariance on random move sequences",
            Box::new(|| pachner(&s)),
        ),
        (
            "projector idempotent with trace formula",
            Box::new(|| projector(&s)),
        ),
        ("gluing isomorphism invertible", Box::new(|| gluing(&s))),
        (
            "composition and pairing compatibility",
            Box::new(composition_pairing),
        ),
        ("torus S/T action", Box::new(|| torus(&s))),
        ("modular identities", Box::new(|| modular_identities(&s))),
        ("surgery-step identity", Box::new(|| surgery_step(&s))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({ms} ms): {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} passed in {:?}",
        criteria.len() - failed,
        criteria.len(),
        total.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
