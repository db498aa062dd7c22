use crate::field::FieldElement;
use crate::fusion::FusionData;
use crate::linalg::Matrix;

use super::state::State;
use super::{hom_space_basis, Ctx, DiagramError, HomVector, Strand};

fn dual_word(cat: &FusionData, w: &[usize]) -> Vec<usize> {
    w.iter().rev().map(|&x| cat.dual(x)).collect()
}

fn black(w: &[usize]) -> Vec<Strand> {
    w.iter().map(|&x| Strand::Black(x)).collect()
}

fn state_of(ctx: &Ctx, v: &HomVector) -> State {
    State::vacuum(ctx).insert(ctx, 0, &black(&v.boundary), &v.to_terms(ctx.cat))
}

/// The pairing ev ∘ (φ ⊗ φ′) for φ ∈ ⟨V₁,…,Vₙ⟩ and φ′ ∈ ⟨Vₙ*,…,V₁*⟩.
pub fn pair(
    cat: &FusionData,
    phi: &HomVector,
    phi_prime: &HomVector,
) -> Result<FieldElement, DiagramError> {
    if phi_prime.boundary != dual_word(cat, &phi.boundary) {
        return Err(DiagramError::Boundary(
            "second argument must live on the dual reversed word".into(),
        ));
    }
    let ctx = Ctx::new(cat);
    let n = phi.boundary.len();
    let mut st = state_of(&ctx, phi).insert(
        &ctx,
        n,
        &black(&phi_prime.boundary),
        &phi_prime.to_terms(cat),
    );
    for i in (0..n).rev() {
        st = st.cap(&ctx, i);
    }
    Ok(st.scalar())
}

/// ev_X ∘ (φ ⊗ ψ) without the √d_X normalization.
pub fn contract(
    cat: &FusionData,
    phi: &HomVector,
    psi: &HomVector,
) -> Result<HomVector, DiagramError> {
    let (Some(&x), Some(&y)) = (phi.boundary.last(), psi.boundary.first()) else {
        return Err(DiagramError::Boundary(
            "contraction needs nonempty words".into(),
        ));
    };
    if cat.dual(x) != y {
        return Err(DiagramError::Boundary(format!(
            "cannot contract `{}` with `{}`",
            cat.label(x),
            cat.label(y)
        )));
    }
    let ctx = Ctx::new(cat);
    let n = phi.boundary.len();
    let st = state_of(&ctx, phi)
        .insert(&ctx, n, &black(&psi.boundary), &psi.to_terms(cat))
        .cap(&ctx, n - 1);
    let boundary: Vec<usize> = st.word.iter().map(|&s| ctx.under(s)).collect();
    Ok(HomVector::from_terms(cat, &boundary, &st.terms))
}

/// φ ∘_X ψ = √d_X ev_X ∘ (φ ⊗ ψ) for φ ∈ ⟨V…, X⟩, ψ ∈ ⟨X*, W…⟩.
pub fn compose_along(
    cat: &FusionData,
    phi: &HomVector,
    psi: &HomVector,
    x: usize,
) -> Result<HomVector, DiagramError> {
    if phi.boundary.last() != Some(&x) {
        return Err(DiagramError::Boundary(format!(
            "first vector must end in `{}`",
            cat.label(x)
        )));
    }
    Ok(contract(cat, phi, psi)?.scale(cat.sqrt_dim(x)))
}

/// Move the first boundary object to the end: ⟨V₁,…,Vₙ⟩ → ⟨V₂,…,Vₙ,V₁⟩.
pub fn rotate(cat: &FusionData, phi: &HomVector) -> HomVector {
    let Some(&v1) = phi.boundary.first() else {
        return phi.clone();
    };
    let ctx = Ctx::new(cat);
    let st = State::vacuum(&ctx)
        .insert_cup(&ctx, 0, Strand::Black(cat.dual(v1)))
        .insert(&ctx, 1, &black(&phi.boundary), &phi.to_terms(cat))
        .cap(&ctx, 0);
    let boundary: Vec<usize> = st.word.iter().map(|&s| ctx.under(s)).collect();
    HomVector::from_terms(cat, &boundary, &st.terms)
}

/// G[i][j] = (bᵢ, b′ⱼ) for the fusion-tree bases of ⟨word⟩ and its dual reversed word.
pub fn gram_matrix(cat: &FusionData, word: &[usize]) -> Result<Matrix, DiagramError> {
    let dw = dual_word(cat, word);
    let n = hom_space_basis(cat, word).len();
    let m = hom_space_basis(cat, &dw).len();
    let mut g = Matrix::zeros(n, m);
    for i in 0..n {
        let bi = HomVector::basis_vector(cat, word, i);
        for j in 0..m {
            let bj = HomVector::basis_vector(cat, &dw, j);
            g.set(i, j, pair(cat, &bi, &bj)?);
        }
    }
    Ok(g)
}

/// Basis of ⟨word⟩ and the dual basis of ⟨word*⟩ with (bᵢ, b*ⱼ) = δᵢⱼ.
pub fn dual_basis(
    cat: &FusionData,
    word: &[usize],
) -> Result<(Vec<HomVector>, Vec<HomVector>), DiagramError> {
    let dw = dual_word(cat, word);
    let g = gram_matrix(cat, word)?;
    let n = g.rows;
    if g.cols != n {
        return Err(DiagramError::SingularGram(format!("{word:?}")));
    }
    if n == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let inv = g
        .inverse()
        .ok_or_else(|| DiagramError::SingularGram(format!("{word:?}")))?;
    let basis = (0..n)
        .map(|i| HomVector::basis_vector(cat, word, i))
        .collect();
    let dual = (0..n)
        .map(|j| HomVector {
            boundary: dw.clone(),
            coords: (0..n).map(|k| inv.get(k, j).clone()).collect(),
        })
        .collect();
    Ok((basis, dual))
}

pub(crate) fn dual_basis_strands(
    ctx: &Ctx,
    word: &[Strand],
) -> Result<(Vec<HomVector>, Vec<HomVector>), DiagramError> {
    let under: Vec<usize> = word.iter().map(|&s| ctx.under(s)).collect();
    dual_basis(ctx.cat, &under)
}
