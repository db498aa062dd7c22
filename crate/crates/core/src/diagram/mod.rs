//! Evaluation of sliced planar diagrams in a spherical fusion category.
//!
//! Vectors of ⟨V₁,…,Vₙ⟩ = Hom(1, V₁⊗…⊗Vₙ) are written in the basis of left-associated
//! splitting trees. A basis tree is a chain `c₀ = 1, c₁, …, cₙ = 1` of simples with
//! `c_{j+1} ∈ c_j ⊗ V_j`; bases are ordered lexicographically in the chain.
//!
//! Generators act on such vectors: `cup(X)` inserts coev_X (the splitting vertex
//! 1 → X⊗X*), `cap(X)` applies ev_X = d_X times the fusion vertex X⊗X* → 1, coupons
//! insert vectors, and half-braidings swap a red (center) strand past a black one.
//! Red strands are evaluated through their underlying simple; their half-braiding must
//! act by a scalar on each simple (the simple-underlying case).

mod eval;
mod ops;
mod parse;
mod state;

use std::collections::BTreeMap;

use crate::field::FieldElement;
use crate::fusion::FusionData;

pub use eval::{evaluate, Coupon, Diagram, Gen};
pub use ops::{compose_along, contract, dual_basis, gram_matrix, pair, rotate};
pub use parse::parse_diagram;
pub(crate) use state::State;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("layer {layer}: {msg}")]
    TypeMismatch { layer: usize, msg: String },
    #[error("dual-basis marker #{0} does not occur exactly twice")]
    UnmatchedMarker(u32),
    #[error("dual-basis marker #{0}: second word is not the dual reverse of the first")]
    MarkerWord(u32),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("no scalar half-braiding for `{0}`")]
    NoHalfBraiding(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("boundary mismatch: {0}")]
    Boundary(String),
    #[error("pairing Gram matrix is singular on {0}")]
    SingularGram(String),
}

/// Center simples whose underlying object is simple and whose half-braiding acts on
/// every simple by a scalar.
pub trait HalfBraiding {
    fn center_labels(&self) -> &[String];
    fn underlying(&self, z: usize) -> usize;
    fn center_dual(&self, z: usize) -> usize;
    /// Scalar of φ_Z(X): Z⊗X → X⊗Z, or `None` outside the scalar case.
    fn halfbraid(&self, z: usize, x: usize) -> Option<FieldElement>;
}

/// A strand label: a simple of C, a center simple, or a summed variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strand {
    Black(usize),
    Red(usize),
    /// Summation variable `$k`, possibly dualized.
    Var(u32, bool),
}

/// Category together with optional half-braiding data.
#[derive(Clone, Copy)]
pub struct Ctx<'a> {
    pub cat: &'a FusionData,
    pub center: Option<&'a dyn HalfBraiding>,
}

impl<'a> Ctx<'a> {
    pub fn new(cat: &'a FusionData) -> Self {
        Ctx { cat, center: None }
    }

    pub fn with_center(cat: &'a FusionData, center: &'a dyn HalfBraiding) -> Self {
        Ctx {
            cat,
            center: Some(center),
        }
    }

    pub fn dual(&self, s: Strand) -> Strand {
        match s {
            Strand::Black(x) => Strand::Black(self.cat.dual(x)),
            Strand::Red(z) => Strand::Red(
                self.center
                    .expect("red strand without center")
                    .center_dual(z),
            ),
            Strand::Var(k, d) => Strand::Var(k, !d),
        }
    }

    /// Underlying simple of C. Variables must be substituted first.
    pub fn under(&self, s: Strand) -> usize {
        match s {
            Strand::Black(x) => x,
            Strand::Red(z) => self
                .center
                .expect("red strand without center")
                .underlying(z),
            Strand::Var(..) => panic!("unsubstituted variable strand"),
        }
    }

    pub fn strand_name(&self, s: Strand) -> String {
        match s {
            Strand::Black(x) => self.cat.label(x).to_string(),
            Strand::Red(z) => self
                .center
                .map(|c| c.center_labels()[z].clone())
                .unwrap_or_else(|| format!("red{z}")),
            Strand::Var(k, d) => format!("${k}{}", if d { "*" } else { "" }),
        }
    }
}

/// Chains indexing the fusion-tree basis of ⟨V₁,…,Vₙ⟩, lexicographically ordered.
pub fn hom_space_basis(cat: &FusionData, word: &[usize]) -> Vec<Vec<u8>> {
    let u = cat.unit();
    let mut out = Vec::new();
    let mut chain = vec![u as u8];
    fn rec(cat: &FusionData, word: &[usize], chain: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        let j = chain.len() - 1;
        let last = *chain.last().unwrap() as usize;
        if j == word.len() {
            if last == cat.unit() {
                out.push(chain.clone());
            }
            return;
        }
        for &c in cat.channels(last, word[j]) {
            chain.push(c as u8);
            rec(cat, word, chain, out);
            chain.pop();
        }
    }
    rec(cat, word, &mut chain, &mut out);
    out
}

pub fn hom_space_dim(cat: &FusionData, word: &[usize]) -> usize {
    hom_space_basis(cat, word).len()
}

/// Vector of ⟨V₁,…,Vₙ⟩ with dense coordinates in the [`hom_space_basis`] order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomVector {
    pub boundary: Vec<usize>,
    pub coords: Vec<FieldElement>,
}

impl HomVector {
    pub fn zero(cat: &FusionData, boundary: &[usize]) -> Self {
        let n = hom_space_dim(cat, boundary);
        HomVector {
            boundary: boundary.to_vec(),
            coords: vec![FieldElement::zero(1); n],
        }
    }

    pub fn basis_vector(cat: &FusionData, boundary: &[usize], i: usize) -> Self {
        let mut v = Self::zero(cat, boundary);
        v.coords[i] = FieldElement::one(1);
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Value of a vector of ⟨⟩ (a closed diagram).
    pub fn scalar(&self) -> FieldElement {
        assert!(self.boundary.is_empty(), "not a closed diagram");
        self.coords[0].clone()
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        HomVector {
            boundary: self.boundary.clone(),
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &HomVector) -> Self {
        assert_eq!(
            self.boundary, other.boundary,
            "adding vectors of different spaces"
        );
        HomVector {
            boundary: self.boundary.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Random vector with small cyclotomic coefficients (for randomized identity checks).
    pub fn random(cat: &FusionData, boundary: &[usize], rng: &mut impl rand::Rng) -> Self {
        let n = hom_space_dim(cat, boundary);
        let order = cat.order() as i64;
        let coords = (0..n)
            .map(|_| {
                let a = FieldElement::from_int(1, rng.gen_range(-3..=3));
                let b = FieldElement::from_int(1, rng.gen_range(-2..=2));
                let z = FieldElement::zeta(cat.order(), rng.gen_range(0..order.max(1)));
                &a + &(&b * &z)
            })
            .collect();
        HomVector {
            boundary: boundary.to_vec(),
            coords,
        }
    }

    pub(crate) fn to_terms(&self, cat: &FusionData) -> BTreeMap<Vec<u8>, FieldElement> {
        hom_space_basis(cat, &self.boundary)
            .into_iter()
            .zip(&self.coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.clone()))
            .collect()
    }

    pub(crate) fn from_terms(
        cat: &FusionData,
        boundary: &[usize],
        terms: &BTreeMap<Vec<u8>, FieldElement>,
    ) -> Self {
        let coords = hom_space_basis(cat, boundary)
            .iter()
            .map(|k| {
                terms
                    .get(k)
                    .cloned()
                    .unwrap_or_else(|| FieldElement::zero(1))
            })
            .collect();
        HomVector {
            boundary: boundary.to_vec(),
            coords,
        }
    }
}
