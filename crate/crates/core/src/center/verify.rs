use crate::diagram::{hom_space_basis, Ctx, HalfBraiding, State, Strand};
use crate::field::FieldElement;
use crate::fusion::validate_category;
use crate::report::Report;
use crate::rt::{eval_link, FramedLink};

use super::{CenterData, Forget, ModularData};

fn same(a: &State, b: &State) -> bool {
    a.word == b.word && a.terms == b.terms
}

/// Triples (y, z, w) with ⟨y, z, w⟩ ≠ 0, each with the chain of its basis vector.
fn vertices(cat: &crate::fusion::FusionData) -> Vec<([usize; 3], Vec<u8>)> {
    let n = cat.rank();
    let mut out = Vec::new();
    for y in 0..n {
        for z in 0..n {
            for w in 0..n {
                for chain in hom_space_basis(cat, &[y, z, w]) {
                    out.push(([y, z, w], chain));
                }
            }
        }
    }
    out
}

fn vertex_terms(chain: &[u8]) -> std::collections::BTreeMap<Vec<u8>, FieldElement> {
    let mut t = std::collections::BTreeMap::new();
    t.insert(chain.to_vec(), FieldElement::one(1));
    t
}

/// Naturality of the braiding through every trivalent vertex, on both sides. For
/// multiplicity-free data this is equivalent to the two hexagon equations.
fn hexagons(m: &ModularData) -> (Option<String>, Option<String>) {
    let cat = &m.base;
    let ctx = Ctx::new(cat);
    let b = |x: usize| Strand::Black(x);
    let (mut left, mut right) = (None, None);
    for x in 0..cat.rank() {
        for (yzw, chain) in vertices(cat) {
            let word: Vec<Strand> = yzw.iter().map(|&y| b(y)).collect();
            let v = vertex_terms(&chain);
            let name = || {
                format!(
                    "x={} vertex=({} {} {})",
                    cat.label(x),
                    cat.label(yzw[0]),
                    cat.label(yzw[1]),
                    cat.label(yzw[2])
                )
            };
            if left.is_none() {
                let cup = State::vacuum(&ctx).insert_cup(&ctx, 0, b(x));
                let mut st = cup.insert(&ctx, 1, &word, &v);
                for p in 0..3 {
                    st = m.braid(&ctx, &st, p, true);
                }
                if !same(&st, &cup.insert(&ctx, 0, &word, &v)) {
                    left = Some(name());
                }
            }
            if right.is_none() {
                let cup = State::vacuum(&ctx).insert_cup(&ctx, 0, b(cat.dual(x)));
                let mut st = cup.insert(&ctx, 1, &word, &v);
                for p in (1..4).rev() {
                    st = m.braid(&ctx, &st, p, true);
                }
                if !same(&st, &cup.insert(&ctx, 2, &word, &v)) {
                    right = Some(name());
                }
            }
        }
    }
    (left, right)
}

/// tr(c_{a,a}) evaluated from the R-symbols.
fn kink(m: &ModularData, a: usize) -> FieldElement {
    let ctx = Ctx::new(&m.base);
    let st = State::vacuum(&ctx)
        .insert_cup(&ctx, 0, Strand::Black(a))
        .insert_cup(&ctx, 1, Strand::Black(a));
    m.braid(&ctx, &st, 0, true)
        .cap(&ctx, 1)
        .cap(&ctx, 0)
        .scalar()
}

fn first<T>(it: impl IntoIterator<Item = T>, bad: impl Fn(&T) -> Option<String>) -> Option<String> {
    it.into_iter().find_map(|x| bad(&x))
}

/// Checks on braided data: the category itself, hexagons, twists, the s̃-matrix
/// against the Hopf link and the balancing formula, modularity, and Gauss sums.
pub fn verify_modular(m: &ModularData) -> Report {
    let cat = &m.base;
    let n = m.rank();
    let mut r = validate_category(cat);
    let (l, rt) = hexagons(m);
    r.record("hexagon_left", l);
    r.record("hexagon_right", rt);
    let lab = |a: usize| cat.label(a).to_string();
    r.record(
        "twist_unit",
        (!m.twist(cat.unit()).is_one()).then(|| format!("theta_1={}", m.twist(cat.unit()))),
    );
    r.record(
        "twist_dual",
        first(0..n, |&a| {
            (m.twist(a) != m.twist(cat.dual(a))).then(|| lab(a))
        }),
    );
    r.record(
        "twist_kink",
        first(0..n, |&a| {
            (kink(m, a) != m.twist(a) * cat.dim(a)).then(|| lab(a))
        }),
    );
    let s = m.smat();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    r.record(
        "smat_symmetric",
        first(pairs.iter().copied(), |&(a, b)| {
            (s.get(a, b) != s.get(b, a)).then(|| format!("({} {})", lab(a), lab(b)))
        }),
    );
    r.record(
        "smat_balancing",
        first(pairs.iter().copied(), |&(a, b)| {
            let mut sum = FieldElement::zero(1);
            for &c in cat.channels(cat.dual(a), b) {
                sum += &(m.twist(c) * cat.dim(c));
            }
            let want = sum / (m.twist(a) * m.twist(b));
            (&want != s.get(a, b)).then(|| format!("({} {})", lab(a), lab(b)))
        }),
    );
    let hopf = FramedLink::hopf();
    r.record(
        "smat_hopf_link",
        first(pairs.iter().copied(), |&(a, b)| {
            match eval_link(&hopf, &[cat.dual(a), b], m) {
                Ok(v) if &v == s.get(a, b) => None,
                Ok(v) => Some(format!("({} {}) link={v}", lab(a), lab(b))),
                Err(e) => Some(e.to_string()),
            }
        }),
    );
    r.record(
        "smat_unit_row",
        first(0..n, |&z| {
            (s.get(cat.unit(), z) != cat.dim(z)).then(|| lab(z))
        }),
    );
    r.record(
        "smat_nondegenerate",
        s.inverse().is_none().then(|| "det=0".to_string()),
    );
    let d2 = cat.dims_squared_sum();
    r.record(
        "smat_row_sum",
        first(0..n, |&w| {
            let mut sum = FieldElement::zero(1);
            for z in 0..n {
                sum += &(cat.dim(z) * s.get(z, w));
            }
            let want = if w == cat.unit() {
                d2.clone()
            } else {
                FieldElement::zero(1)
            };
            (sum != want).then(|| format!("W={} sum={sum}", lab(w)))
        }),
    );
    let (p, q) = m.gauss_sums();
    r.record(
        "gauss_product",
        (&p * &q != d2).then(|| format!("p+={p} p-={q}")),
    );
    r
}

/// Half-braiding coherence on every center simple: unit, naturality through every
/// trivalent vertex of C, compatibility with duality, and agreement of the braiding
/// with the half-braidings.
fn halfbraid_checks(c: &CenterData, f: &Forget, r: &mut Report) {
    let base = &f.base;
    let ctx = f.ctx();
    let nz = c.rank();
    let lab = |z: usize| c.label(z).to_string();
    let over = |st: &State, pos: usize| {
        let z = match st.word[pos] {
            Strand::Red(z) => z,
            _ => unreachable!(),
        };
        let x = ctx.under(st.word[pos + 1]);
        st.swap(&ctx, pos, |_| {
            f.halfbraid(z, x).expect("scalar half-braiding")
        })
    };
    r.record(
        "halfbraid_unit",
        first(0..nz, |&z| {
            (!f.simples[z].halfbraid[base.unit()].is_one()).then(|| lab(z))
        }),
    );
    r.record(
        "halfbraid_underlying_dims",
        first(0..nz, |&z| {
            (c.modular.base.dim(z) != base.dim(f.simples[z].underlying)).then(|| lab(z))
        }),
    );
    let verts = vertices(base);
    r.record(
        "halfbraid_natural",
        first(0..nz, |&z| {
            let cup = State::vacuum(&ctx).insert_cup(&ctx, 0, Strand::Red(z));
            first(verts.iter(), |(yzw, chain)| {
                let word: Vec<Strand> = yzw.iter().map(|&y| Strand::Black(y)).collect();
                let v = vertex_terms(chain);
                let mut st = cup.insert(&ctx, 1, &word, &v);
                for p in 0..3 {
                    st = over(&st, p);
                }
                (!same(&st, &cup.insert(&ctx, 0, &word, &v)))
                    .then(|| format!("Z={} vertex={yzw:?}", lab(z)))
            })
        }),
    );
    r.record(
        "halfbraid_dual",
        first(0..nz, |&z| {
            first(0..base.rank(), |&x| {
                let st = State::vacuum(&ctx)
                    .insert_cup(&ctx, 0, Strand::Red(z))
                    .insert_cup(&ctx, 2, Strand::Black(x));
                let st = over(&over(&st, 1), 0);
                let want = State::vacuum(&ctx)
                    .insert_cup(&ctx, 0, Strand::Black(x))
                    .insert_cup(&ctx, 1, Strand::Red(z));
                (!same(&st, &want)).then(|| format!("Z={} X={}", lab(z), base.label(x)))
            })
        }),
    );
    let m = &c.modular;
    r.record(
        "braiding_from_halfbraid",
        first(0..nz, |&a| {
            first(0..nz, |&b| {
                first(m.base.channels(a, b).to_vec(), |&cc| {
                    (m.r(a, b, cc) != f.simples[a].halfbraid[f.simples[b].underlying])
                        .then(|| format!("({} {} ; {})", lab(a), lab(b), lab(cc)))
                })
            })
        }),
    );
}

/// All modular checks plus anomaly-freeness, Dim(Z(C)) = Dim(C)² when C is known, and
/// half-braiding coherence when the forgetful functor is present.
pub fn verify_center(c: &CenterData) -> Report {
    let m = &c.modular;
    let mut r = verify_modular(m);
    let (p, q) = m.gauss_sums();
    r.record("anomaly_free", (p != q).then(|| format!("p+={p} p-={q}")));
    if let Some(src) = &c.source_dim_squared {
        let d2 = m.base.dims_squared_sum();
        r.record(
            "dim_identity",
            (d2 != (src * src)).then(|| format!("sum d_Z^2={d2}")),
        );
    }
    if let Some(f) = &c.forget {
        halfbraid_checks(c, f, &mut r);
    }
    r
}
