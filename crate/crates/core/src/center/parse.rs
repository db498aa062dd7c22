use std::collections::HashMap;

use crate::field::FieldElement;
use crate::fusion::{parse_category_with, FusionData};
use crate::linalg::Matrix;

use super::{CenterData, CenterError, CenterSimple, Forget, ModularData};

const EXTRA: &[&str] = &["R", "twist", "smat", "underlying", "halfbraid"];

/// Parse a center (or modular) file: category sections plus `R: a b ; c = v`,
/// `twist: a = v`, `smat: a b = v`, and optionally `underlying: a -> x` and
/// `halfbraid: a on x = v`. The last two name simples of `base`, which must then be
/// given.
pub fn parse_center(text: &str, base: Option<&FusionData>) -> Result<CenterData, CenterError> {
    let (cat, lines) = parse_category_with(text, EXTRA)?;
    let n = cat.rank();
    let syntax = |line: usize, msg: &str| CenterError::Syntax {
        line,
        msg: msg.to_string(),
    };
    let idx = |line: usize, s: &str| {
        cat.index(s.trim())
            .map_err(|_| syntax(line, &format!("unknown simple `{}`", s.trim())))
    };
    let scalar = |line: usize, t: &str| {
        cat.parse_scalar(t).map_err(|source| {
            CenterError::Fusion(crate::fusion::FusionError::Field { line, source })
        })
    };
    let mut rsym = HashMap::new();
    let mut twists: Vec<Option<FieldElement>> = vec![None; n];
    let mut smat: Vec<Option<FieldElement>> = vec![None; n * n];
    let mut underlying: Vec<Option<usize>> = vec![None; n];
    let mut halfbraids: HashMap<(usize, usize), FieldElement> = HashMap::new();
    for l in &lines {
        let (lhs, v) = match l.key.as_str() {
            "underlying" => l.rest.split_once("->"),
            _ => l.rest.split_once('='),
        }
        .ok_or_else(|| syntax(l.line, &format!("malformed `{}` line", l.key)))?;
        match l.key.as_str() {
            "R" => {
                let (ab, c) = lhs
                    .split_once(';')
                    .ok_or_else(|| syntax(l.line, "expected `R: a b ; c = value`"))?;
                let ab: Vec<&str> = ab.split_whitespace().collect();
                if ab.len() != 2 {
                    return Err(syntax(l.line, "expected `R: a b ; c = value`"));
                }
                let k = [
                    idx(l.line, ab[0])? as u8,
                    idx(l.line, ab[1])? as u8,
                    idx(l.line, c)? as u8,
                ];
                if rsym.insert(k, scalar(l.line, v)?).is_some() {
                    return Err(syntax(l.line, "R-symbol given twice"));
                }
            }
            "twist" => twists[idx(l.line, lhs)?] = Some(scalar(l.line, v)?),
            "smat" => {
                let ab: Vec<&str> = lhs.split_whitespace().collect();
                if ab.len() != 2 {
                    return Err(syntax(l.line, "expected `smat: a b = value`"));
                }
                smat[idx(l.line, ab[0])? * n + idx(l.line, ab[1])?] = Some(scalar(l.line, v)?);
            }
            "underlying" | "halfbraid" => {
                let base = base.ok_or_else(|| {
                    syntax(
                        l.line,
                        "`underlying`/`halfbraid` lines need the base category",
                    )
                })?;
                let base_idx = |s: &str| {
                    base.index(s.trim())
                        .map_err(|_| syntax(l.line, &format!("unknown simple of C `{}`", s.trim())))
                };
                if l.key == "underlying" {
                    underlying[idx(l.line, lhs)?] = Some(base_idx(v)?);
                } else {
                    let (z, x) = lhs
                        .split_once(" on ")
                        .ok_or_else(|| syntax(l.line, "expected `halfbraid: a on x = value`"))?;
                    halfbraids.insert((idx(l.line, z)?, base_idx(x)?), scalar(l.line, v)?);
                }
            }
            _ => unreachable!(),
        }
    }
    let twists = twists
        .into_iter()
        .enumerate()
        .map(|(a, t)| {
            t.ok_or_else(|| CenterError::Missing(format!("twist for `{}`", cat.label(a))))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let entries = smat
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            t.ok_or_else(|| {
                CenterError::Missing(format!(
                    "smat entry ({} {})",
                    cat.label(i / n),
                    cat.label(i % n)
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let smat = Matrix::from_fn(n, n, |i, j| entries[i * n + j].clone());
    let forget = match base {
        Some(b) if underlying.iter().any(Option::is_some) || !halfbraids.is_empty() => {
            let mut simples = Vec::with_capacity(n);
            for z in 0..n {
                let u = underlying[z].ok_or_else(|| {
                    CenterError::Missing(format!("underlying for `{}`", cat.label(z)))
                })?;
                let hb = (0..b.rank())
                    .map(|x| {
                        halfbraids.get(&(z, x)).cloned().ok_or_else(|| {
                            CenterError::Missing(format!(
                                "halfbraid of `{}` on `{}`",
                                cat.label(z),
                                b.label(x)
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                simples.push(CenterSimple {
                    label: cat.label(z).to_string(),
                    underlying: u,
                    halfbraid: hb,
                });
            }
            Some(Forget::new(b.clone(), simples, &cat))
        }
        _ => None,
    };
    let source_dim_squared = base.map(FusionData::dims_squared_sum);
    Ok(CenterData {
        modular: ModularData::new(cat, rsym, twists, smat)?,
        forget,
        source_dim_squared,
    })
}

/// Parse a file of braided data (a modular category such as Fibonacci).
pub fn parse_modular(text: &str) -> Result<ModularData, CenterError> {
    Ok(parse_center(text, None)?.modular)
}
