//! Catalog entries and the end-to-end comparison of the two invariants.

mod suite;

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use crate::center::{
    center_of_modular, parse_center, parse_modular, solve_center_vecg, CenterData, CenterError,
};
use crate::field::FieldElement;
use crate::fusion::{FusionData, FusionError};
use crate::rt::{parse_link, rt_invariant, RtError, SurgeryPresentation};
use crate::tv::{load_triangulation, tv_state_sum_parallel, Triangulation, TvError};

pub use suite::{
    load_config, parse_config, run_suite, CategorySpec, EntrySpec, OracleRow, SuiteConfig,
    SuiteReport,
};

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error("bad group description `{0}`")]
    Group(String),
    #[error("{path}: {source}")]
    Fusion { path: PathBuf, source: FusionError },
    #[error("{path}: {source}")]
    Tv { path: PathBuf, source: TvError },
    #[error("{path}: {source}")]
    Rt { path: PathBuf, source: RtError },
    #[error(transparent)]
    Center(#[from] CenterError),
}

pub fn read(path: &Path) -> Result<String, CatalogError> {
    std::fs::read_to_string(path).map_err(|source| CatalogError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// An abelian fundamental group, as invariant factors (0 for a copy of Z). Written
/// `1`, `Z`, `Z^3`, `Z/2`, or products such as `Z x Z/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pi1 {
    pub factors: Vec<u64>,
}

impl Pi1 {
    pub fn parse(s: &str) -> Result<Self, CatalogError> {
        let bad = || CatalogError::Group(s.to_string());
        let mut factors = Vec::new();
        for part in s.split('x').map(str::trim) {
            match part {
                "1" => {}
                "Z" => factors.push(0),
                _ => {
                    if let Some(k) = part.strip_prefix("Z^") {
                        let k: usize = k.parse().map_err(|_| bad())?;
                        factors.extend(std::iter::repeat_n(0, k));
                    } else if let Some(n) = part.strip_prefix("Z/") {
                        let n: u64 = n.parse().map_err(|_| bad())?;
                        if n < 2 {
                            return Err(bad());
                        }
                        factors.push(n);
                    } else {
                        return Err(bad());
                    }
                }
            }
        }
        Ok(Pi1 { factors })
    }

    /// #Hom(π₁, Z/n).
    pub fn hom_count(&self, n: u64) -> u64 {
        use num_integer::Integer;
        self.factors
            .iter()
            .map(|&k| if k == 0 { n } else { k.gcd(&n) })
            .product()
    }

    /// The state sum of Vec_{Z/n} predicted by the group: #Hom(π₁, Z/n)/n.
    pub fn vec_zn_value(&self, n: u64) -> FieldElement {
        FieldElement::frac(1, self.hom_count(n) as i64, n as i64)
    }
}

/// A closed manifold given both as a triangulation and as a surgery presentation.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub triangulation: Triangulation,
    pub surgery: SurgeryPresentation,
    pub pi1: Pi1,
    pub notes: String,
}

impl CatalogEntry {
    pub fn load(name: &str, tri: &Path, link: &Path, pi1: &str) -> Result<Self, CatalogError> {
        let triangulation = load_triangulation(&read(tri)?).map_err(|source| CatalogError::Tv {
            path: tri.to_path_buf(),
            source,
        })?;
        let surgery = parse_link(&read(link)?).map_err(|source| CatalogError::Rt {
            path: link.to_path_buf(),
            source,
        })?;
        Ok(CatalogEntry {
            name: name.to_string(),
            triangulation,
            surgery,
            pi1: Pi1::parse(pi1)?,
            notes: String::new(),
        })
    }
}

/// Where the center of a category comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CenterSource {
    /// Solve the half-braidings of Vec_{Z/N}.
    SolveVecG(usize),
    /// C ⊠ C^rev for the modular data in the file.
    Product(PathBuf),
    /// A center file over the category.
    File(PathBuf),
}

impl CenterSource {
    /// `cat` is the base category, needed only to read half-braiding lines of a file.
    pub fn build(&self, cat: Option<&FusionData>) -> Result<CenterData, CatalogError> {
        Ok(match self {
            CenterSource::SolveVecG(n) => solve_center_vecg(*n)?,
            CenterSource::Product(p) => center_of_modular(&parse_modular(&read(p)?)?)?,
            CenterSource::File(p) => parse_center(&read(p)?, cat)?,
        })
    }
}

/// One (manifold, category) comparison.
#[derive(Debug, Clone)]
pub struct CompareRow {
    pub manifold: String,
    pub category: String,
    pub tv: Option<FieldElement>,
    pub rt: Option<FieldElement>,
    pub error: Option<String>,
    pub elapsed: Duration,
}

impl CompareRow {
    pub fn equal(&self) -> bool {
        self.error.is_none() && self.tv.is_some() && self.tv == self.rt
    }
}

/// Computes both invariants and compares them exactly.
pub fn run_compare(
    entry: &CatalogEntry,
    category: &str,
    cat: &FusionData,
    center: &CenterData,
    threads: usize,
) -> CompareRow {
    let start = Instant::now();
    let tv = tv_state_sum_parallel(&entry.triangulation, cat, threads);
    let rt = rt_invariant(&entry.surgery, &center.modular);
    let (rt, error) = match rt {
        Ok(v) => (Some(v), None),
        Err(e) => (None, Some(e.to_string())),
    };
    CompareRow {
        manifold: entry.name.clone(),
        category: category.to_string(),
        tv: Some(tv),
        rt,
        error,
        elapsed: start.elapsed(),
    }
}

#[cfg(test)]
mod tests;
