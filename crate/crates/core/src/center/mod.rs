//! The Drinfeld center Z(C) and its modular data.
//!
//! Centers come from two sources. For Vec_{Z/N} the half-braidings are solved directly
//! from the definition; every center simple then has simple underlying object and a
//! half-braiding acting by a scalar on each simple of C. For a modular C the center is
//! C ⊠ C^rev, with the reversed braiding R′^{ab}_c = (R^{ba}_c)⁻¹ and twists θ⁻¹ on the
//! second factor.
//!
//! Braiding convention: c_{a,b} maps the splitting vertex of channel c of a⊗b to
//! R^{ab}_c times that of b⊗a. With it θ_a d_a = tr(c_{a,a}). The s̃-matrix is
//! s̃_{ab} = tr(c_{b,a*} c_{a*,b}), the Hopf link with one strand colored a*, so that
//! s̃_{ab} = θ_a⁻¹θ_b⁻¹ Σ_{c ∈ a*⊗b} θ_c d_c and (S T)³ = (p⁺/𝒟) S² with T = diag(θ).

mod ops;
mod parse;
mod solve;
mod verify;

use std::collections::HashMap;
use std::fmt::Write;

use crate::diagram::{Ctx, DiagramError, HalfBraiding, State};
use crate::field::FieldElement;
use crate::fusion::{FusionData, FusionError};
use crate::linalg::Matrix;
use crate::report::Report;

pub use ops::{bent_trace, gluing_isom, gluing_sides, is_central, project_p};
pub use parse::{parse_center, parse_modular};
pub use solve::{center_of_modular, solve_center_vecg, vec_zn};
pub use verify::{verify_center, verify_modular};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CenterError {
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing {0}")]
    Missing(String),
    #[error("R-symbol given for inadmissible triple {0}")]
    InadmissibleR(String),
    #[error("data is not modular:\n{0}")]
    NotModular(Report),
    #[error("center data has no forgetful functor to C")]
    NoForget,
    #[error("`{0}` is not a center simple")]
    UnknownLabel(String),
    #[error("N must be at least 1")]
    BadOrder,
}

/// Braided data on a fusion category: R-symbols, twists and the unnormalized s̃-matrix.
#[derive(Debug, Clone)]
pub struct ModularData {
    pub base: FusionData,
    rsym: HashMap<[u8; 3], FieldElement>,
    twists: Vec<FieldElement>,
    smat: Matrix,
}

impl ModularData {
    /// Requires an R-symbol for every admissible triple and nothing else.
    pub fn new(
        base: FusionData,
        rsym: HashMap<[u8; 3], FieldElement>,
        twists: Vec<FieldElement>,
        smat: Matrix,
    ) -> Result<Self, CenterError> {
        let n = base.rank();
        if twists.len() != n {
            return Err(CenterError::Missing("twists".into()));
        }
        if smat.rows != n || smat.cols != n {
            return Err(CenterError::Missing("s-matrix entries".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let k = [a as u8, b as u8, c as u8];
                    let name =
                        || format!("({} {} ; {})", base.label(a), base.label(b), base.label(c));
                    match (base.n(a, b, c), rsym.contains_key(&k)) {
                        (true, false) => {
                            return Err(CenterError::Missing(format!("R-symbol {}", name())))
                        }
                        (false, true) => return Err(CenterError::InadmissibleR(name())),
                        _ => {}
                    }
                }
            }
        }
        Ok(ModularData {
            base,
            rsym,
            twists,
            smat,
        })
    }

    pub fn rank(&self) -> usize {
        self.base.rank()
    }

    /// R^{ab}_c; zero when c is not a channel of a⊗b.
    pub fn r(&self, a: usize, b: usize, c: usize) -> FieldElement {
        self.rsym
            .get(&[a as u8, b as u8, c as u8])
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(1))
    }

    pub fn twist(&self, a: usize) -> &FieldElement {
        &self.twists[a]
    }

    pub fn twists(&self) -> &[FieldElement] {
        &self.twists
    }

    /// The unnormalized s̃-matrix as given.
    pub fn smat(&self) -> &Matrix {
        &self.smat
    }

    /// Declared global dimension 𝒟 of this category.
    pub fn global_dim(&self) -> &FieldElement {
        self.base.declared_global_dim()
    }

    /// Gauss sums p± = Σ θ^{±1} d².
    pub fn gauss_sums(&self) -> (FieldElement, FieldElement) {
        let mut p = FieldElement::zero(1);
        let mut m = FieldElement::zero(1);
        for a in 0..self.rank() {
            let d2 = self.base.dim(a) * self.base.dim(a);
            p += &(&d2 * &self.twists[a]);
            m += &(&d2 * &self.twists[a].pow(-1));
        }
        (p, m)
    }

    pub fn is_anomaly_free(&self) -> bool {
        let (p, m) = self.gauss_sums();
        p == m
    }

    /// Apply the braiding to strands `pos, pos+1` of a state: σ for `positive`, σ⁻¹
    /// otherwise.
    pub(crate) fn braid(&self, ctx: &Ctx, st: &State, pos: usize, positive: bool) -> State {
        let v = ctx.under(st.word[pos]);
        let w = ctx.under(st.word[pos + 1]);
        if positive {
            st.swap(ctx, pos, |f| self.r(v, w, f))
        } else {
            st.swap(ctx, pos, |f| self.r(w, v, f).pow(-1))
        }
    }

    /// Center file text: the category sections followed by R, twist and s̃ lines.
    pub fn to_text(&self) -> String {
        let mut s = self.base.to_text();
        let l = |a: usize| self.base.label(a);
        let n = self.rank();
        for a in 0..n {
            for b in 0..n {
                for &c in self.base.channels(a, b) {
                    let v = self.base.format_scalar(&self.r(a, b, c));
                    writeln!(s, "R: {} {} ; {} = {}", l(a), l(b), l(c), v).unwrap();
                }
            }
        }
        for a in 0..n {
            writeln!(
                s,
                "twist: {} = {}",
                l(a),
                self.base.format_scalar(&self.twists[a])
            )
            .unwrap();
        }
        for a in 0..n {
            for b in 0..n {
                writeln!(
                    s,
                    "smat: {} {} = {}",
                    l(a),
                    l(b),
                    self.base.format_scalar(self.smat.get(a, b))
                )
                .unwrap();
            }
        }
        s
    }
}

/// A simple of Z(C) with simple underlying object and scalar half-braiding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterSimple {
    pub label: String,
    pub underlying: usize,
    /// φ_Z(X) for each simple X of C.
    pub halfbraid: Vec<FieldElement>,
}

/// The forgetful functor Z(C) → C on simples.
#[derive(Debug, Clone)]
pub struct Forget {
    pub base: FusionData,
    pub simples: Vec<CenterSimple>,
    labels: Vec<String>,
    dual: Vec<usize>,
}

impl Forget {
    pub fn new(base: FusionData, simples: Vec<CenterSimple>, center: &FusionData) -> Self {
        let labels = simples.iter().map(|s| s.label.clone()).collect();
        let dual = (0..center.rank()).map(|z| center.dual(z)).collect();
        Forget {
            base,
            simples,
            labels,
            dual,
        }
    }

    pub fn ctx(&self) -> Ctx<'_> {
        Ctx::with_center(&self.base, self)
    }
}

impl HalfBraiding for Forget {
    fn center_labels(&self) -> &[String] {
        &self.labels
    }

    fn underlying(&self, z: usize) -> usize {
        self.simples[z].underlying
    }

    fn center_dual(&self, z: usize) -> usize {
        self.dual[z]
    }

    fn halfbraid(&self, z: usize, x: usize) -> Option<FieldElement> {
        Some(self.simples[z].halfbraid[x].clone())
    }
}

/// Z(C) as modular data, optionally with its forgetful functor and the global
/// dimension of C.
#[derive(Debug, Clone)]
pub struct CenterData {
    pub modular: ModularData,
    pub forget: Option<Forget>,
    /// Σ_X d_X² over the simples of C, when C is known.
    pub source_dim_squared: Option<FieldElement>,
}

impl CenterData {
    pub fn rank(&self) -> usize {
        self.modular.rank()
    }

    pub fn label(&self, z: usize) -> &str {
        self.modular.base.label(z)
    }

    pub fn index(&self, label: &str) -> Result<usize, CenterError> {
        self.modular
            .base
            .index(label)
            .map_err(|_| CenterError::UnknownLabel(label.to_string()))
    }

    pub fn forget(&self) -> Result<&Forget, CenterError> {
        self.forget.as_ref().ok_or(CenterError::NoForget)
    }

    /// Center file text, with `underlying` and `halfbraid` lines when available.
    pub fn to_text(&self) -> String {
        let mut s = self.modular.to_text();
        if let Some(f) = &self.forget {
            for z in &f.simples {
                writeln!(
                    s,
                    "underlying: {} -> {}",
                    z.label,
                    f.base.label(z.underlying)
                )
                .unwrap();
            }
            for z in &f.simples {
                for (x, v) in z.halfbraid.iter().enumerate() {
                    writeln!(
                        s,
                        "halfbraid: {} on {} = {}",
                        z.label,
                        f.base.label(x),
                        self.modular.base.format_scalar(v)
                    )
                    .unwrap();
                }
            }
        }
        s
    }
}

#[cfg(test)]
mod tests;
