//! Spherical fusion categories given by explicit data: simples, duals, multiplicity-free
//! fusion rules, F-symbols in a fixed gauge, dimensions and chosen square roots.
//!
//! F-symbol convention. With splitting trees written left-associated,
//! `|((ab)_e c)_d⟩ = Σ_f F^{abc}_d[e,f] |(a(bc)_f)_d⟩`. The pentagon then reads
//! `F^{fcd}_e[g,l] F^{abl}_e[f,k] = Σ_h F^{abc}_g[f,h] F^{ahd}_e[g,k] F^{bcd}_k[h,l]`.
//! The pivotal structure is assumed strict with trivial coefficients, which in this
//! convention means `F^{a a* a}_a[1,1] = 1/d_a`.

mod parse;
mod validate;
mod write;

use std::collections::HashMap;

use crate::field::{FieldElement, FieldError};
use crate::linalg::Matrix;

pub use parse::parse_category;
pub(crate) use parse::parse_category_with;
pub use validate::validate_category;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FusionError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Field {
        line: usize,
        #[source]
        source: FieldError,
    },
    #[error("unknown simple `{0}`")]
    UnknownLabel(String),
    #[error("missing `{0}`")]
    Missing(String),
    #[error("dual is not an involution at `{0}`")]
    DualNotInvolutive(String),
    #[error("missing F-symbol for admissible tuple {0}")]
    MissingF(String),
    #[error("F-symbol given for inadmissible tuple {0}")]
    InadmissibleF(String),
    #[error("declared global dimension squares to {got}, expected {expected}")]
    GlobalDim { got: String, expected: String },
    #[error("categories live in incompatible fields")]
    IncompatibleFields,
}

/// Index key for one F-symbol: `[a, b, c, d, e, f]` for F^{abc}_d[e,f].
pub type FKey = [u8; 6];

/// Plain tables from which [`FusionData`] is built; no validation beyond structure.
#[derive(Debug, Clone)]
pub struct FusionTables {
    pub order: u32,
    pub radicand: Option<FieldElement>,
    pub labels: Vec<String>,
    pub unit: usize,
    pub dual: Vec<usize>,
    /// `fuse[(a*n + b)*n + c]` is N_{ab}^c ∈ {0, 1}.
    pub fuse: Vec<bool>,
    pub dims: Vec<FieldElement>,
    pub sqrt_dims: Vec<FieldElement>,
    pub global_dim: FieldElement,
    pub fsym: HashMap<FKey, FieldElement>,
}

#[derive(Debug, Clone)]
pub struct FusionData {
    t: FusionTables,
    channels: Vec<Vec<usize>>,
    finv: HashMap<FKey, FieldElement>,
    singular_blocks: Vec<[usize; 4]>,
}

/// Σ d_X² together with the declared root 𝒟.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalDim {
    pub d_squared: FieldElement,
    pub d: FieldElement,
}

impl FusionData {
    pub fn from_tables(t: FusionTables) -> Result<Self, FusionError> {
        let n = t.labels.len();
        if n == 0 {
            return Err(FusionError::Missing("simples".into()));
        }
        if n > u8::MAX as usize {
            return Err(FusionError::Syntax {
                line: 0,
                msg: "too many simples".into(),
            });
        }
        for (i, &j) in t.dual.iter().enumerate() {
            if t.dual[j] != i {
                return Err(FusionError::DualNotInvolutive(t.labels[i].clone()));
            }
        }
        if t.dual[t.unit] != t.unit {
            return Err(FusionError::DualNotInvolutive(t.labels[t.unit].clone()));
        }
        let mut channels = vec![Vec::new(); n * n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if t.fuse[(a * n + b) * n + c] {
                        channels[a * n + b].push(c);
                    }
                }
            }
        }
        let mut data = FusionData {
            t,
            channels,
            finv: HashMap::new(),
            singular_blocks: Vec::new(),
        };
        // completeness of F, and no entries off the admissible set
        for key in data.t.fsym.keys() {
            let k = key.map(|x| x as usize);
            if k.iter().any(|&x| x >= n) || !data.f_admissible(k[0], k[1], k[2], k[3], k[4], k[5]) {
                return Err(FusionError::InadmissibleF(data.fmt_key(&k)));
            }
        }
        for [a, b, c, d] in data.blocks() {
            let (rows, cols) = data.block_indices(a, b, c, d);
            for &e in &rows {
                for &f in &cols {
                    if !data.t.fsym.contains_key(&key(a, b, c, d, e, f)) {
                        return Err(FusionError::MissingF(data.fmt_key(&[a, b, c, d, e, f])));
                    }
                }
            }
            let inv = if rows.len() == cols.len() {
                data.f_matrix(a, b, c, d).inverse()
            } else {
                None
            };
            match inv {
                // inverse matrix has rows f, columns e
                Some(m) => {
                    for (i, &f) in cols.iter().enumerate() {
                        for (j, &e) in rows.iter().enumerate() {
                            data.finv.insert(key(a, b, c, d, f, e), m.get(i, j).clone());
                        }
                    }
                }
                None => data.singular_blocks.push([a, b, c, d]),
            }
        }
        Ok(data)
    }

    pub fn tables(&self) -> &FusionTables {
        &self.t
    }

    pub fn rank(&self) -> usize {
        self.t.labels.len()
    }

    pub fn order(&self) -> u32 {
        self.t.order
    }

    pub fn radicand(&self) -> Option<&FieldElement> {
        self.t.radicand.as_ref()
    }

    pub fn labels(&self) -> &[String] {
        &self.t.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.t.labels[a]
    }

    pub fn index(&self, label: &str) -> Result<usize, FusionError> {
        self.t
            .labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| FusionError::UnknownLabel(label.to_string()))
    }

    pub fn unit(&self) -> usize {
        self.t.unit
    }

    pub fn dual(&self, a: usize) -> usize {
        self.t.dual[a]
    }

    pub fn n(&self, a: usize, b: usize, c: usize) -> bool {
        let n = self.rank();
        self.t.fuse[(a * n + b) * n + c]
    }

    /// Simples c with N_{ab}^c = 1, ascending.
    pub fn channels(&self, a: usize, b: usize) -> &[usize] {
        &self.channels[a * self.rank() + b]
    }

    pub fn dim(&self, a: usize) -> &FieldElement {
        &self.t.dims[a]
    }

    pub fn sqrt_dim(&self, a: usize) -> &FieldElement {
        &self.t.sqrt_dims[a]
    }

    /// The declared root 𝒟.
    pub fn declared_global_dim(&self) -> &FieldElement {
        &self.t.global_dim
    }

    pub fn dims_squared_sum(&self) -> FieldElement {
        self.t
            .dims
            .iter()
            .fold(FieldElement::zero(self.order()), |acc, d| &acc + &(d * d))
    }

    /// Σ d_X² and the declared root; errors when the root does not square correctly.
    pub fn global_dim(&self) -> Result<GlobalDim, FusionError> {
        let d_squared = self.dims_squared_sum();
        let d = self.t.global_dim.clone();
        let sq = &d * &d;
        if sq != d_squared || d.is_zero() {
            return Err(FusionError::GlobalDim {
                got: sq.to_string(),
                expected: d_squared.to_string(),
            });
        }
        Ok(GlobalDim { d_squared, d })
    }

    pub fn f_admissible(&self, a: usize, b: usize, c: usize, d: usize, e: usize, f: usize) -> bool {
        self.n(a, b, e) && self.n(e, c, d) && self.n(b, c, f) && self.n(a, f, d)
    }

    /// F^{abc}_d[e,f], or `None` when the tuple is not admissible.
    pub fn f_entry(
        &self,
        a: usize,
        b: usize,
        c: usize,
        d: usize,
        e: usize,
        f: usize,
    ) -> Option<&FieldElement> {
        self.t.fsym.get(&key(a, b, c, d, e, f))
    }

    /// F^{abc}_d[e,f], zero off the admissible set.
    pub fn f(&self, a: usize, b: usize, c: usize, d: usize, e: usize, f: usize) -> FieldElement {
        self.f_entry(a, b, c, d, e, f)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(self.order()))
    }

    /// Entry `[f, e]` of the inverse of the matrix F^{abc}_d (rows e, columns f).
    pub fn finv_entry(
        &self,
        a: usize,
        b: usize,
        c: usize,
        d: usize,
        f: usize,
        e: usize,
    ) -> Option<&FieldElement> {
        self.finv.get(&key(a, b, c, d, f, e))
    }

    pub fn finv(&self, a: usize, b: usize, c: usize, d: usize, f: usize, e: usize) -> FieldElement {
        self.finv_entry(a, b, c, d, f, e)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(self.order()))
    }

    /// Outer labels (a,b,c,d) with a nonempty F-matrix.
    pub fn blocks(&self) -> Vec<[usize; 4]> {
        let n = self.rank();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let (rows, _) = self.block_indices(a, b, c, d);
                        if !rows.is_empty() {
                            out.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        out
    }

    /// Row labels e and column labels f of the matrix F^{abc}_d.
    pub fn block_indices(
        &self,
        a: usize,
        b: usize,
        c: usize,
        d: usize,
    ) -> (Vec<usize>, Vec<usize>) {
        let rows = self
            .channels(a, b)
            .iter()
            .copied()
            .filter(|&e| self.n(e, c, d))
            .collect();
        let cols = self
            .channels(b, c)
            .iter()
            .copied()
            .filter(|&f| self.n(a, f, d))
            .collect();
        (rows, cols)
    }

    pub fn f_matrix(&self, a: usize, b: usize, c: usize, d: usize) -> Matrix {
        let (rows, cols) = self.block_indices(a, b, c, d);
        Matrix::from_fn(rows.len(), cols.len(), |i, j| {
            self.f(a, b, c, d, rows[i], cols[j])
        })
    }

    pub(crate) fn singular_blocks(&self) -> &[[usize; 4]] {
        &self.singular_blocks
    }

    pub(crate) fn fmt_key(&self, k: &[usize; 6]) -> String {
        let l = |i: usize| self.label(k[i]);
        format!(
            "F[{} {} {} ; {} | {} {}]",
            l(0),
            l(1),
            l(2),
            l(3),
            l(4),
            l(5)
        )
    }

    /// Deligne product C ⊠ D: simples are pairs `a_b`, all data componentwise.
    /// The braiding is not part of fusion data; the reversed braiding used for
    /// centers of modular categories is attached by the center module.
    pub fn deligne_product(&self, other: &FusionData) -> Result<FusionData, FusionError> {
        let radicand = match (self.radicand(), other.radicand()) {
            (Some(x), Some(y)) if x != y => return Err(FusionError::IncompatibleFields),
            (Some(x), _) => Some(x.clone()),
            (None, y) => y.cloned(),
        };
        let order = num_integer::lcm(self.order(), other.order());
        let (n1, n2) = (self.rank(), other.rank());
        let n = n1 * n2;
        let pair = |i: usize, j: usize| i * n2 + j;
        let split = |x: usize| (x / n2, x % n2);
        let labels = (0..n)
            .map(|x| {
                let (i, j) = split(x);
                format!("{}_{}", self.label(i), other.label(j))
            })
            .collect();
        let dual = (0..n)
            .map(|x| {
                let (i, j) = split(x);
                pair(self.dual(i), other.dual(j))
            })
            .collect();
        let mut fuse = vec![false; n * n * n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let ((a1, a2), (b1, b2), (c1, c2)) = (split(a), split(b), split(c));
                    fuse[(a * n + b) * n + c] = self.n(a1, b1, c1) && other.n(a2, b2, c2);
                }
            }
        }
        let prod = |v: &dyn Fn(&FusionData, usize) -> FieldElement, x: usize| {
            let (i, j) = split(x);
            &v(self, i) * &v(other, j)
        };
        let dims = (0..n).map(|x| prod(&|c, i| c.dim(i).clone(), x)).collect();
        let sqrt_dims = (0..n)
            .map(|x| prod(&|c, i| c.sqrt_dim(i).clone(), x))
            .collect();
        let mut fsym = HashMap::new();
        for (k1, v1) in &self.t.fsym {
            for (k2, v2) in &other.t.fsym {
                let k: FKey = std::array::from_fn(|i| pair(k1[i] as usize, k2[i] as usize) as u8);
                fsym.insert(k, v1 * v2);
            }
        }
        FusionData::from_tables(FusionTables {
            order,
            radicand,
            labels,
            unit: pair(self.unit(), other.unit()),
            dual,
            fuse,
            dims,
            sqrt_dims,
            global_dim: self.declared_global_dim() * other.declared_global_dim(),
            fsym,
        })
    }
}

pub(crate) fn key(a: usize, b: usize, c: usize, d: usize, e: usize, f: usize) -> FKey {
    [a as u8, b as u8, c as u8, d as u8, e as u8, f as u8]
}

#[cfg(test)]
mod tests;
