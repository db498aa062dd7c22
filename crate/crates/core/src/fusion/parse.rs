use std::collections::HashMap;

use crate::field::{parse_field_element, FieldElement};

use super::{key, FusionData, FusionError, FusionTables};

/// One `key: rest` line of a data file.
#[derive(Debug, Clone)]
pub(crate) struct RawLine {
    pub line: usize,
    pub key: String,
    pub rest: String,
}

const KEYS: &[&str] = &[
    "cyclo_order",
    "sqrt_adjoin",
    "simples",
    "unit",
    "dual",
    "fuse",
    "dim",
    "sqrtdim",
    "global_dim",
    "F",
];

pub(crate) fn raw_lines(text: &str) -> Result<Vec<RawLine>, FusionError> {
    let mut out = Vec::new();
    for (i, l) in text.lines().enumerate() {
        let t = l.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let (k, rest) = t.split_once(':').ok_or_else(|| FusionError::Syntax {
            line: i + 1,
            msg: format!("expected `key: value`, got `{t}`"),
        })?;
        out.push(RawLine {
            line: i + 1,
            key: k.trim().to_string(),
            rest: rest.trim().to_string(),
        });
    }
    Ok(out)
}

/// Parse a category file. Unknown keys are rejected.
pub fn parse_category(text: &str) -> Result<FusionData, FusionError> {
    parse_category_with(text, &[]).map(|(d, _)| d)
}

/// Parse the category sections of a file, returning lines whose key is listed in
/// `extra` untouched for the caller.
pub(crate) fn parse_category_with(
    text: &str,
    extra: &[&str],
) -> Result<(FusionData, Vec<RawLine>), FusionError> {
    let lines = raw_lines(text)?;
    let syntax = |line: usize, msg: String| FusionError::Syntax { line, msg };
    let mut rest_lines = Vec::new();
    let mut order = None;
    let mut radicand_text = None;
    let mut labels: Option<Vec<String>> = None;
    for l in &lines {
        if extra.contains(&l.key.as_str()) {
            rest_lines.push(l.clone());
            continue;
        }
        if !KEYS.contains(&l.key.as_str()) {
            return Err(syntax(l.line, format!("unknown key `{}`", l.key)));
        }
        match l.key.as_str() {
            "cyclo_order" => {
                let n: u32 = l.rest.parse().ok().filter(|&n| n > 0).ok_or_else(|| {
                    syntax(l.line, "cyclo_order must be a positive integer".into())
                })?;
                order = Some(n);
            }
            "sqrt_adjoin" => radicand_text = Some((l.line, l.rest.clone())),
            "simples" => {
                let ls: Vec<String> = l.rest.split_whitespace().map(String::from).collect();
                for (i, x) in ls.iter().enumerate() {
                    if ls[..i].contains(x) {
                        return Err(syntax(l.line, format!("duplicate simple `{x}`")));
                    }
                }
                labels = Some(ls);
            }
            _ => {}
        }
    }
    let order = order.ok_or_else(|| FusionError::Missing("cyclo_order".into()))?;
    let labels = labels.ok_or_else(|| FusionError::Missing("simples".into()))?;
    let radicand = match radicand_text {
        Some((line, t)) => Some(
            parse_field_element(&t, order, None)
                .map_err(|source| FusionError::Field { line, source })?,
        ),
        None => None,
    };
    if let Some(r) = &radicand {
        let (re, im) = r.to_complex();
        if !(re > 0.0 && im.abs() < 1e-9) {
            return Err(FusionError::Syntax {
                line: 0,
                msg: "sqrt_adjoin needs a real positive radicand".into(),
            });
        }
    }
    let n = labels.len();
    let idx = |s: &str| {
        labels
            .iter()
            .position(|l| l == s)
            .ok_or_else(|| FusionError::UnknownLabel(s.to_string()))
    };
    let scalar = |line: usize, t: &str| {
        parse_field_element(t, order, radicand.as_ref())
            .map_err(|source| FusionError::Field { line, source })
    };

    let mut unit = None;
    let mut dual: Vec<Option<usize>> = vec![None; n];
    let mut fuse = vec![false; n * n * n];
    let mut dims: Vec<Option<FieldElement>> = vec![None; n];
    let mut sqrt_dims: Vec<Option<FieldElement>> = vec![None; n];
    let mut global_dim = None;
    let mut fsym = HashMap::new();
    for l in &lines {
        match l.key.as_str() {
            "unit" => unit = Some(idx(&l.rest)?),
            "dual" => {
                let (a, b) = l
                    .rest
                    .split_once("->")
                    .ok_or_else(|| syntax(l.line, "expected `dual: a -> b`".into()))?;
                let (a, b) = (idx(a.trim())?, idx(b.trim())?);
                for (x, y) in [(a, b), (b, a)] {
                    match dual[x] {
                        Some(z) if z != y => {
                            return Err(FusionError::DualNotInvolutive(labels[x].clone()))
                        }
                        _ => dual[x] = Some(y),
                    }
                }
            }
            "fuse" => {
                let (lhs, c) = l
                    .rest
                    .split_once("->")
                    .ok_or_else(|| syntax(l.line, "expected `fuse: a b -> c`".into()))?;
                let ab: Vec<&str> = lhs.split_whitespace().collect();
                if ab.len() != 2 {
                    return Err(syntax(l.line, "expected two simples before `->`".into()));
                }
                let (a, b, c) = (idx(ab[0])?, idx(ab[1])?, idx(c.trim())?);
                fuse[(a * n + b) * n + c] = true;
            }
            "dim" | "sqrtdim" => {
                let (a, v) = l
                    .rest
                    .split_once('=')
                    .ok_or_else(|| syntax(l.line, format!("expected `{}: a = value`", l.key)))?;
                let a = idx(a.trim())?;
                let v = scalar(l.line, v)?;
                if l.key == "dim" {
                    dims[a] = Some(v);
                } else {
                    sqrt_dims[a] = Some(v);
                }
            }
            "global_dim" => global_dim = Some(scalar(l.line, &l.rest)?),
            "F" => {
                let (lhs, v) = l.rest.split_once('=').ok_or_else(|| {
                    syntax(l.line, "expected `F: a b c ; d | e f = value`".into())
                })?;
                let parts: Vec<&str> = lhs.split([';', '|']).map(str::trim).collect();
                let shape_err = || syntax(l.line, "expected `F: a b c ; d | e f = value`".into());
                if parts.len() != 3 {
                    return Err(shape_err());
                }
                let abc: Vec<&str> = parts[0].split_whitespace().collect();
                let ef: Vec<&str> = parts[2].split_whitespace().collect();
                if abc.len() != 3 || ef.len() != 2 || parts[1].split_whitespace().count() != 1 {
                    return Err(shape_err());
                }
                let k = key(
                    idx(abc[0])?,
                    idx(abc[1])?,
                    idx(abc[2])?,
                    idx(parts[1])?,
                    idx(ef[0])?,
                    idx(ef[1])?,
                );
                if fsym.insert(k, scalar(l.line, v)?).is_some() {
                    return Err(syntax(l.line, "F-symbol given twice".into()));
                }
            }
            _ => {}
        }
    }
    let unit = unit.ok_or_else(|| FusionError::Missing("unit".into()))?;
    let missing =
        |what: &str, i: usize| FusionError::Missing(format!("{what} for `{}`", labels[i]));
    let dual = dual
        .iter()
        .enumerate()
        .map(|(i, d)| d.ok_or_else(|| missing("dual", i)))
        .collect::<Result<Vec<_>, _>>()?;
    let dims = dims
        .into_iter()
        .enumerate()
        .map(|(i, d)| d.ok_or_else(|| missing("dim", i)))
        .collect::<Result<Vec<_>, _>>()?;
    let sqrt_dims = sqrt_dims
        .into_iter()
        .enumerate()
        .map(|(i, d)| d.ok_or_else(|| missing("sqrtdim", i)))
        .collect::<Result<Vec<_>, _>>()?;
    let global_dim = global_dim.ok_or_else(|| FusionError::Missing("global_dim".into()))?;
    let data = FusionData::from_tables(FusionTables {
        order,
        radicand,
        labels,
        unit,
        dual,
        fuse,
        dims,
        sqrt_dims,
        global_dim,
        fsym,
    })?;
    Ok((data, rest_lines))
}

impl FusionData {
    /// Parse a scalar in this category's field (same order and adjoined root).
    pub fn parse_scalar(&self, text: &str) -> Result<FieldElement, crate::field::FieldError> {
        parse_field_element(text, self.order(), self.radicand())
    }
}
