//! Exact Turaev–Viro state sums and Reshetikhin–Turaev surgery invariants.

pub mod catalog;
pub mod center;
pub mod diagram;
pub mod field;
pub mod fusion;
pub mod linalg;
pub mod report;
pub mod rt;
pub mod tv;

#[cfg(test)]
mod testdata;

pub use center::{CenterData, CenterError, ModularData};
pub use diagram::{Diagram, DiagramError, HomVector};
pub use field::{FieldElement, FieldError};
pub use fusion::{FusionData, FusionError, GlobalDim};
pub use linalg::Matrix;
pub use report::{Check, Report};
pub use rt::{FramedLink, RtError, SurgeryPresentation};
pub use tv::{Triangulation, TvError};
