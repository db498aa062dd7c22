use std::collections::HashMap;

use crate::field::FieldElement;
use crate::fusion::{FusionData, FusionTables};
use crate::linalg::Matrix;

use super::{verify_modular, CenterData, CenterError, CenterSimple, Forget, ModularData};

/// √N as an element of Q(ζ_{4N}): the quadratic Gauss sum Σ_{k<4N} ζ_{4N}^{k²} equals
/// 2(1+i)√N.
fn sqrt_n(n: usize) -> FieldElement {
    let m = 4 * n as u32;
    let mut g = FieldElement::zero(m);
    for k in 0..4 * n as i64 {
        g += &FieldElement::zeta(m, k * k % m as i64);
    }
    let two_one_plus_i =
        FieldElement::from_int(m, 2) * (FieldElement::one(m) + FieldElement::zeta(m, n as i64));
    g / two_one_plus_i
}

/// Vec_{Z/N} with trivial associator, over Q(ζ_{4N}) so that 𝒟 = √N is available.
pub fn vec_zn(n: usize) -> Result<FusionData, CenterError> {
    if n == 0 {
        return Err(CenterError::BadOrder);
    }
    let m = 4 * n as u32;
    let one = FieldElement::one(m);
    let mut fuse = vec![false; n * n * n];
    let mut fsym = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            fuse[(a * n + b) * n + (a + b) % n] = true;
            for c in 0..n {
                let (e, f, d) = ((a + b) % n, (b + c) % n, (a + b + c) % n);
                fsym.insert([a, b, c, d, e, f].map(|x| x as u8), one.clone());
            }
        }
    }
    Ok(FusionData::from_tables(FusionTables {
        order: m,
        radicand: None,
        labels: (0..n).map(|g| g.to_string()).collect(),
        unit: 0,
        dual: (0..n).map(|g| (n - g) % n).collect(),
        fuse,
        dims: vec![one.clone(); n],
        sqrt_dims: vec![one; n],
        global_dim: sqrt_n(n),
        fsym,
    })?)
}

/// All half-braidings on the simple `g` of Vec_{Z/N}, as exponent vectors e with
/// φ(h) = ζ_N^{e[h]}. The values must be N-th roots of unity since φ(h)^N = φ(Nh) =
/// φ(0) = 1; the search assigns φ(0), φ(1), … in turn and prunes on the unit and
/// multiplicativity conditions, which are the full coherence conditions for a trivial
/// associator.
fn halfbraidings(n: usize) -> Vec<Vec<usize>> {
    fn search(n: usize, assign: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let h = assign.len();
        if h == n {
            out.push(assign.clone());
            return;
        }
        for e in 0..n {
            if h == 0 && e != 0 {
                continue;
            }
            assign.push(e);
            let ok = (0..=h).all(|a| {
                (0..=h).all(|b| {
                    let s = (a + b) % n;
                    s > h || (assign[a] + assign[b]) % n == assign[s]
                })
            });
            if ok {
                search(n, assign, out);
            }
            assign.pop();
        }
    }
    let mut out = Vec::new();
    search(n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Z(Vec_{Z/N}) solved from the definition of the center.
///
/// Simples are pairs (g, χ) labelled `g_k` where χ(1) = ζ_N^k. Braiding, twists and
/// s̃ are read off the half-braidings: R^{ZW} = φ_Z(W), θ_a = Σ_c d_c R^{aa}_c / d_a,
/// s̃_{ab} = Σ_c d_c R^{ba}_c R^{ab}_c.
pub fn solve_center_vecg(n: usize) -> Result<CenterData, CenterError> {
    let base = vec_zn(n)?;
    let m = base.order();
    let zeta = |e: usize| FieldElement::zeta(m, (4 * e) as i64);
    let mut simples = Vec::new();
    let mut exps = Vec::new();
    for g in 0..n {
        for e in halfbraidings(n) {
            let k = if n > 1 { e[1] } else { 0 };
            simples.push(CenterSimple {
                label: format!("{g}_{k}"),
                underlying: g,
                halfbraid: e.iter().map(|&x| zeta(x)).collect(),
            });
            exps.push((g, e));
        }
    }
    let r = simples.len();
    // tensor products and duals of center simples, located among the solutions
    let find = |g: usize, e: &[usize]| {
        exps.iter()
            .position(|(h, f)| *h == g && f == e)
            .expect("closed under products")
    };
    let prod = |a: usize, b: usize| {
        let (ga, ea) = &exps[a];
        let (gb, eb) = &exps[b];
        let e: Vec<usize> = ea.iter().zip(eb).map(|(x, y)| (x + y) % n).collect();
        find((ga + gb) % n, &e)
    };
    let dual: Vec<usize> = (0..r)
        .map(|a| {
            let (g, e) = &exps[a];
            let ed: Vec<usize> = e.iter().map(|x| (n - x) % n).collect();
            find((n - g) % n, &ed)
        })
        .collect();
    let mut fuse = vec![false; r * r * r];
    let mut fsym = HashMap::new();
    let mut rsym = HashMap::new();
    for a in 0..r {
        for b in 0..r {
            let c = prod(a, b);
            fuse[(a * r + b) * r + c] = true;
            let u = |z: usize| simples[z].underlying;
            rsym.insert(
                [a as u8, b as u8, c as u8],
                simples[a].halfbraid[u(b)].clone(),
            );
            for cc in 0..r {
                let (e, f) = (c, prod(b, cc));
                let d = prod(c, cc);
                let v = base.f(u(a), u(b), u(cc), u(d), u(e), u(f));
                fsym.insert([a, b, cc, d, e, f].map(|x| x as u8), v);
            }
        }
    }
    let dims: Vec<FieldElement> = simples
        .iter()
        .map(|z| base.dim(z.underlying).clone())
        .collect();
    let sqrt_dims = simples
        .iter()
        .map(|z| base.sqrt_dim(z.underlying).clone())
        .collect();
    let cat = FusionData::from_tables(FusionTables {
        order: m,
        radicand: None,
        labels: simples.iter().map(|z| z.label.clone()).collect(),
        unit: find(0, &vec![0; n]),
        dual,
        fuse,
        dims,
        sqrt_dims,
        global_dim: base.dims_squared_sum(),
        fsym,
    })?;
    let (twists, smat) = twists_and_s(&cat, |a, b, c| {
        rsym.get(&[a as u8, b as u8, c as u8]).cloned()
    });
    let forget = Forget::new(base.clone(), simples, &cat);
    Ok(CenterData {
        modular: ModularData::new(cat, rsym, twists, smat)?,
        forget: Some(forget),
        source_dim_squared: Some(base.dims_squared_sum()),
    })
}

fn twists_and_s(
    cat: &FusionData,
    r: impl Fn(usize, usize, usize) -> Option<FieldElement>,
) -> (Vec<FieldElement>, Matrix) {
    let n = cat.rank();
    let rr = |a, b, c| r(a, b, c).unwrap_or_else(|| FieldElement::zero(1));
    let twists = (0..n)
        .map(|a| {
            let mut t = FieldElement::zero(1);
            for &c in cat.channels(a, a) {
                t += &(cat.dim(c) * &rr(a, a, c));
            }
            t / cat.dim(a)
        })
        .collect();
    let smat = Matrix::from_fn(n, n, |a, b| {
        let a = cat.dual(a);
        let mut s = FieldElement::zero(1);
        for &c in cat.channels(a, b) {
            s += &(&(cat.dim(c) * &rr(b, a, c)) * &rr(a, b, c));
        }
        s
    });
    (twists, smat)
}

/// Z(C) ≃ C ⊠ C^rev for modular C. The second factor carries the reversed braiding
/// R′^{ab}_c = (R^{ba}_c)⁻¹, whose twists are θ⁻¹.
pub fn center_of_modular(c: &ModularData) -> Result<CenterData, CenterError> {
    let report = verify_modular(c);
    if !report.all_passed() {
        return Err(CenterError::NotModular(report));
    }
    let base = &c.base;
    let cat = base.deligne_product(base)?;
    let k = base.rank();
    let split = |x: usize| (x / k, x % k);
    let rev = |a: usize, b: usize, cc: usize| {
        if base.n(a, b, cc) {
            Some(c.r(b, a, cc).pow(-1))
        } else {
            None
        }
    };
    let (_, rev_s) = twists_and_s(base, rev);
    let mut rsym = HashMap::new();
    let n = cat.rank();
    for a in 0..n {
        for b in 0..n {
            for &cc in cat.channels(a, b) {
                let ((a1, a2), (b1, b2), (c1, c2)) = (split(a), split(b), split(cc));
                let v = c.r(a1, b1, c1) * rev(a2, b2, c2).expect("admissible");
                rsym.insert([a as u8, b as u8, cc as u8], v);
            }
        }
    }
    let twists = (0..n)
        .map(|a| {
            let (a1, a2) = split(a);
            c.twist(a1) * &c.twist(a2).pow(-1)
        })
        .collect();
    let smat = Matrix::from_fn(n, n, |a, b| {
        let ((a1, a2), (b1, b2)) = (split(a), split(b));
        c.smat().get(a1, b1) * rev_s.get(a2, b2)
    });
    Ok(CenterData {
        modular: ModularData::new(cat, rsym, twists, smat)?,
        forget: None,
        source_dim_squared: Some(base.dims_squared_sum()),
    })
}
