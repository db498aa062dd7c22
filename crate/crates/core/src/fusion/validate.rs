use crate::field::FieldElement;
use crate::report::Report;

use super::FusionData;

/// Run every structural and coherence check on loaded data. Failures are report
/// entries carrying the first offending tuple.
pub fn validate_category(c: &FusionData) -> Report {
    let mut r = Report::new();
    let n = c.rank();
    let u = c.unit();
    let all = || (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)));

    let unit_bad = all()
        .flat_map(|(a, b)| (0..n).map(move |x| (a, b, x)))
        .find(|&(a, b, x)| {
            (a == u && c.n(u, b, x) != (b == x))
                || (b == u && c.n(a, u, x) != (a == x))
                || (x == u && c.n(a, b, u) != (b == c.dual(a)))
        })
        .map(|(a, b, x)| format!("N[{} {} -> {}]", c.label(a), c.label(b), c.label(x)));
    r.record("unit_simple", unit_bad);

    r.record(
        "dual_dims",
        (0..n)
            .find(|&a| c.dim(a) != c.dim(c.dual(a)))
            .map(|a| c.label(a).to_string()),
    );
    r.record(
        "dims_nonzero",
        (0..n)
            .find(|&a| c.dim(a).is_zero())
            .map(|a| c.label(a).to_string()),
    );

    let sqrt_bad = (0..n).find(|&a| {
        let s = c.sqrt_dim(a);
        &(s * s) != c.dim(a) || s != c.sqrt_dim(c.dual(a)) || (a == u && !s.is_one())
    });
    r.record("sqrt_dims", sqrt_bad.map(|a| c.label(a).to_string()));

    let char_bad = all().find(|&(a, b)| {
        let rhs = c
            .channels(a, b)
            .iter()
            .fold(FieldElement::zero(1), |acc, &x| &acc + c.dim(x));
        c.dim(a) * c.dim(b) != rhs
    });
    r.record(
        "fusion_character",
        char_bad.map(|(a, b)| format!("d[{}]*d[{}]", c.label(a), c.label(b))),
    );

    r.record("global_dim", c.global_dim().err().map(|e| e.to_string()));

    let mut f_unit_bad = None;
    'outer: for [a, b, cc, d] in c.blocks() {
        if a != u && b != u && cc != u {
            continue;
        }
        let (rows, cols) = c.block_indices(a, b, cc, d);
        for &e in &rows {
            for &f in &cols {
                if !c.f(a, b, cc, d, e, f).is_one() {
                    f_unit_bad = Some(c.fmt_key(&[a, b, cc, d, e, f]));
                    break 'outer;
                }
            }
        }
    }
    r.record("f_unit_normalized", f_unit_bad);

    r.record(
        "f_invertible",
        c.singular_blocks().first().map(|&[a, b, cc, d]| {
            format!(
                "F[{} {} {} ; {}]",
                c.label(a),
                c.label(b),
                c.label(cc),
                c.label(d)
            )
        }),
    );

    let piv_bad = (0..n).find(|&a| {
        let ad = c.dual(a);
        let v = c.f(a, ad, a, a, u, u);
        !(&v * c.dim(a)).is_one()
    });
    r.record(
        "trivial_pivotal",
        piv_bad.map(|a| {
            let ad = c.dual(a);
            c.fmt_key(&[a, ad, a, a, u, u])
        }),
    );

    r.record("pentagon", pentagon_witness(c));
    r
}

/// First 9-tuple (a,b,c,d,e; f,g,k,l) violating
/// F^{fcd}_e[g,l] F^{abl}_e[f,k] = Σ_h F^{abc}_g[f,h] F^{ahd}_e[g,k] F^{bcd}_k[h,l].
pub(crate) fn pentagon_witness(cat: &FusionData) -> Option<String> {
    let n = cat.rank();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    for &f in cat.channels(a, b) {
                        for &g in cat.channels(f, c) {
                            for &e in cat.channels(g, d) {
                                for &l in cat.channels(c, d) {
                                    for &k in cat.channels(b, l) {
                                        if !cat.n(a, k, e) {
                                            continue;
                                        }
                                        let lhs = cat.f(f, c, d, e, g, l) * cat.f(a, b, l, e, f, k);
                                        let mut rhs = FieldElement::zero(1);
                                        for &h in cat.channels(b, c) {
                                            let t1 = cat.f(a, b, c, g, f, h);
                                            if t1.is_zero() {
                                                continue;
                                            }
                                            let t2 = cat.f(a, h, d, e, g, k);
                                            if t2.is_zero() {
                                                continue;
                                            }
                                            rhs += &(&(&t1 * &t2) * &cat.f(b, c, d, k, h, l));
                                        }
                                        if lhs != rhs {
                                            let lb = |x: usize| cat.label(x);
                                            return Some(format!(
                                                "(a,b,c,d,e)=({},{},{},{},{}) (f,g,k,l)=({},{},{},{})",
                                                lb(a), lb(b), lb(c), lb(d), lb(e), lb(f), lb(g), lb(k), lb(l)
                                            ));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    None
}
