use crate::diagram::{hom_space_dim, HalfBraiding, HomVector, State, Strand};
use crate::field::FieldElement;
use crate::linalg::Matrix;

use super::{CenterData, CenterError, Forget};

/// Move the red strand at `pos` right past the black strand at `pos + 1` by φ_Z(X).
fn over(f: &Forget, st: &State, pos: usize) -> State {
    let ctx = f.ctx();
    let Strand::Red(z) = st.word[pos] else {
        unreachable!("half-braiding needs a red strand on the left")
    };
    let x = ctx.under(st.word[pos + 1]);
    st.swap(&ctx, pos, |_| {
        f.halfbraid(z, x).expect("scalar half-braiding")
    })
}

fn check_boundary(f: &Forget, psi: &HomVector, y: usize, z: usize) -> Result<(), CenterError> {
    let want = [f.underlying(z), f.base.dual(f.underlying(y))];
    if psi.boundary != want {
        return Err(crate::diagram::DiagramError::Boundary(
            "ψ must be given in ⟨Z, Y*⟩ on the underlying simples".into(),
        )
        .into());
    }
    Ok(())
}

/// Pψ = (1/𝒟²) Σ_X d_X (X-loop around ψ), for ψ ∈ Hom_C(Y, Z) written bent as a vector
/// of ⟨Z, Y*⟩. The loop crosses both red strands by their half-braidings.
pub fn project_p(
    psi: &HomVector,
    y: usize,
    z: usize,
    center: &CenterData,
) -> Result<HomVector, CenterError> {
    let f = center.forget()?;
    check_boundary(f, psi, y, z)?;
    let ctx = f.ctx();
    let base = &f.base;
    let word = [Strand::Red(z), Strand::Red(f.center_dual(y))];
    let terms = psi.to_terms(base);
    let mut total: Option<State> = None;
    for x in 0..base.rank() {
        let st = State::vacuum(&ctx)
            .insert_cup(&ctx, 0, Strand::Black(x))
            .insert(&ctx, 1, &word, &terms);
        let mut st = over(f, &over(f, &st, 2), 1).cap(&ctx, 0);
        st.scale(base.dim(x));
        match &mut total {
            None => total = Some(st),
            Some(t) => t.add_assign(&st),
        }
    }
    let mut total = total.expect("C has a simple");
    total.scale(&base.dims_squared_sum().pow(-1));
    Ok(HomVector::from_terms(base, &psi.boundary, &total.terms))
}

/// Whether ψ ∈ ⟨Z, Y*⟩ commutes with the half-braidings: every black strand passes
/// over the bent coupon.
pub fn is_central(
    psi: &HomVector,
    y: usize,
    z: usize,
    center: &CenterData,
) -> Result<bool, CenterError> {
    let f = center.forget()?;
    check_boundary(f, psi, y, z)?;
    let ctx = f.ctx();
    let word = [Strand::Red(z), Strand::Red(f.center_dual(y))];
    let terms = psi.to_terms(&f.base);
    for x in 0..f.base.rank() {
        let cup = State::vacuum(&ctx).insert_cup(&ctx, 0, Strand::Black(x));
        let moved = cup.insert(&ctx, 0, &word, &terms);
        let moved = over(f, &over(f, &moved, 1), 0);
        let direct = cup.insert(&ctx, 1, &word, &terms);
        if moved.word != direct.word || moved.terms != direct.terms {
            return Ok(false);
        }
    }
    Ok(true)
}

/// tr(ψ) for ψ ∈ Hom_C(Y, Y) written bent in ⟨Y, Y*⟩.
pub fn bent_trace(psi: &HomVector, center: &CenterData) -> Result<FieldElement, CenterError> {
    let f = center.forget()?;
    let ctx = f.ctx();
    let b: Vec<Strand> = psi.boundary.iter().map(|&x| Strand::Black(x)).collect();
    if b.len() != 2 || f.base.dual(psi.boundary[0]) != psi.boundary[1] {
        return Err(crate::diagram::DiagramError::Boundary("trace needs ⟨Y, Y*⟩".into()).into());
    }
    Ok(State::vacuum(&ctx)
        .insert(&ctx, 0, &b, &psi.to_terms(&f.base))
        .cap(&ctx, 0)
        .scalar())
}

/// Dimensions of Σ_Z ⟨Z, A⟩⊗⟨Z*, B⟩ and Σ_X ⟨A, X, B, X*⟩, counted from fusion data.
pub fn gluing_sides(
    a: &[usize],
    b: &[usize],
    center: &CenterData,
) -> Result<(usize, usize), CenterError> {
    let f = center.forget()?;
    let base = &f.base;
    let mut dom = 0;
    for z in 0..center.rank() {
        let za: Vec<usize> = [f.underlying(z)].iter().chain(a).copied().collect();
        let zb: Vec<usize> = [f.underlying(f.center_dual(z))]
            .iter()
            .chain(b)
            .copied()
            .collect();
        dom += hom_space_dim(base, &za) * hom_space_dim(base, &zb);
    }
    let mut cod = 0;
    for x in 0..base.rank() {
        cod += hom_space_dim(base, &axbx(base, a, b, x));
    }
    Ok((dom, cod))
}

fn axbx(base: &crate::fusion::FusionData, a: &[usize], b: &[usize], x: usize) -> Vec<usize> {
    a.iter()
        .copied()
        .chain([x])
        .chain(b.iter().copied())
        .chain([base.dual(x)])
        .collect()
}

/// Matrix of φ⊗ψ ↦ ⊕_X (√d_X √d_Z/𝒟) G_X(φ, ψ) from ⊕_Z ⟨Z, A⟩⊗⟨Z*, B⟩ to
/// ⊕_X ⟨A, X, B, X*⟩, in product fusion-tree bases (columns ordered by Z, then φ, then
/// ψ; rows by X, then basis index). G_X rotates φ into ⟨A, Z⟩, opens an X-cup to its
/// right, passes Z over X, and joins Z to ψ.
pub fn gluing_isom(a: &[usize], b: &[usize], center: &CenterData) -> Result<Matrix, CenterError> {
    let f = center.forget()?;
    let base = &f.base;
    let ctx = f.ctx();
    let blk = |w: &[usize]| w.iter().map(|&x| Strand::Black(x)).collect::<Vec<_>>();
    let (dom, cod) = gluing_sides(a, b, center)?;
    let mut row_offset = Vec::new();
    let mut off = 0;
    for x in 0..base.rank() {
        row_offset.push(off);
        off += hom_space_dim(base, &axbx(base, a, b, x));
    }
    let mut m = Matrix::zeros(cod, dom);
    let mut col = 0;
    let dd = base.declared_global_dim();
    for z in 0..center.rank() {
        let zd = f.center_dual(z);
        let za: Vec<usize> = [f.underlying(z)].iter().chain(a).copied().collect();
        let zb: Vec<usize> = [f.underlying(zd)].iter().chain(b).copied().collect();
        let (na, nb) = (hom_space_dim(base, &za), hom_space_dim(base, &zb));
        let wa: Vec<Strand> = [Strand::Red(z)].into_iter().chain(blk(a)).collect();
        let wb: Vec<Strand> = [Strand::Red(zd)].into_iter().chain(blk(b)).collect();
        for i in 0..na {
            let phi = HomVector::basis_vector(base, &za, i).to_terms(base);
            // φ rotated into ⟨A, Z⟩
            let rotated = State::vacuum(&ctx)
                .insert_cup(&ctx, 0, Strand::Red(zd))
                .insert(&ctx, 1, &wa, &phi)
                .cap(&ctx, 0);
            for j in 0..nb {
                let psi = HomVector::basis_vector(base, &zb, j).to_terms(base);
                for x in 0..base.rank() {
                    let k = a.len();
                    let st = rotated.insert_cup(&ctx, k + 1, Strand::Black(x));
                    let st = over(f, &st, k)
                        .insert(&ctx, k + 2, &wb, &psi)
                        .cap(&ctx, k + 1);
                    let w = &(base.sqrt_dim(x) * center.modular.base.sqrt_dim(z)) / dd;
                    let v = HomVector::from_terms(base, &axbx(base, a, b, x), &st.terms);
                    for (r, c) in v.coords.iter().enumerate() {
                        m.set(row_offset[x] + r, col, c * &w);
                    }
                }
                col += 1;
            }
        }
    }
    debug_assert_eq!(col, dom);
    Ok(m)
}
