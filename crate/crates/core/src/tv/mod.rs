//! Turaev–Viro state sums on closed oriented branched triangulations.
//!
//! Edges carry simple objects of C, oriented from the smaller to the larger local
//! vertex. A face with vertices i < j < k is a fusion x_ij ⊗ x_jk → x_ik. Tetrahedron
//! weights are F-symbols divided by √(d_e d_f) for the two "diagonal" edges 02 and 13;
//! negatively oriented tetrahedra use the inverse F-matrix. With these weights
//!
//! Z(M) = 𝒟^{−2V} Σ Π_edges d_e Π_tets weight,
//!
//! which gives Z(S³) = 1/𝒟² and is unchanged under the Pachner moves in [`pachner_move`].

mod moves;
mod sum;
mod tri;

pub use moves::{admissible_moves, pachner_move, random_move, Move};
pub use sum::{tv_state_sum, tv_state_sum_parallel};
pub use tri::{load_triangulation, Gluing, Triangulation, EDGES};

#[derive(Debug, thiserror::Error)]
pub enum TvError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("no tetrahedra")]
    Empty,
    #[error("face {tet}.{face}: gluing is not a fixed-point-free involution")]
    Involution { tet: usize, face: usize },
    #[error("face {tet}.{face}: gluing does not preserve the vertex order (triangulation is not branched)")]
    NotBranched { tet: usize, face: usize },
    #[error("face {tet}.{face} is not glued")]
    Unglued { tet: usize, face: usize },
    #[error("gluings are not orientation-consistent")]
    NonOrientable,
    #[error("not a manifold: {0}")]
    NonManifold(String),
    #[error("move {0} is not admissible here")]
    Inadmissible(String),
}

#[cfg(test)]
mod tests;
