use super::eval::{Coupon, Diagram, Gen};
use super::{Ctx, DiagramError, Strand};

/// Parse a diagram file: one layer per line (bottom first), generators separated by
/// whitespace. Generators: `id(X)`, `cup(X)`, `cap(X)`, `capdual(X)`,
/// `coupon(#k; X Y …)`, `halfbraid_over(Z, X)`, `halfbraid_under(Z, X)`. Labels are
/// simples of the category, center simples, or summed edges `$k`; a trailing `*`
/// dualizes. Lines starting with `#` are comments.
pub fn parse_diagram(ctx: &Ctx, text: &str) -> Result<Diagram, DiagramError> {
    let mut d = Diagram::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let err = |msg: String| DiagramError::Parse { line: i + 1, msg };
        let mut gens = Vec::new();
        for tok in split_top(t).map_err(&err)? {
            gens.push(parse_gen(ctx, &tok).map_err(|e| match e {
                DiagramError::Parse { msg, .. } => err(msg),
                other => other,
            })?);
        }
        d.layers.push(gens);
    }
    Ok(d)
}

fn split_top(s: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err("unbalanced `)`".into());
        }
        if c.is_whitespace() && depth == 0 {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push(c);
        }
    }
    if depth != 0 {
        return Err("unbalanced `(`".into());
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

fn parse_label(ctx: &Ctx, s: &str) -> Result<Strand, DiagramError> {
    let s = s.trim();
    let (base, dual) = match s.strip_suffix('*') {
        Some(b) => (b.trim(), true),
        None => (s, false),
    };
    let strand = if let Some(k) = base.strip_prefix('$') {
        let k: u32 = k
            .parse()
            .map_err(|_| DiagramError::UnknownLabel(s.to_string()))?;
        Strand::Var(k, false)
    } else if let Ok(x) = ctx.cat.index(base) {
        Strand::Black(x)
    } else if let Some(z) = ctx
        .center
        .and_then(|c| c.center_labels().iter().position(|l| l == base))
    {
        Strand::Red(z)
    } else {
        return Err(DiagramError::UnknownLabel(base.to_string()));
    };
    Ok(if dual { ctx.dual(strand) } else { strand })
}

fn parse_gen(ctx: &Ctx, tok: &str) -> Result<Gen, DiagramError> {
    let perr = |msg: String| DiagramError::Parse { line: 0, msg };
    let (name, args) = tok
        .split_once('(')
        .and_then(|(n, rest)| rest.strip_suffix(')').map(|a| (n, a)))
        .ok_or_else(|| perr(format!("expected `name(args)`, got `{tok}`")))?;
    let one = |args: &str| parse_label(ctx, args);
    let two = |args: &str| -> Result<(Strand, Strand), DiagramError> {
        let (a, b) = args
            .split_once(',')
            .ok_or_else(|| perr(format!("`{name}` takes two labels")))?;
        Ok((parse_label(ctx, a)?, parse_label(ctx, b)?))
    };
    Ok(match name {
        "id" => Gen::Id(one(args)?),
        "cup" => Gen::Cup(one(args)?),
        "cap" => Gen::Cap(one(args)?),
        "capdual" => Gen::Cap(ctx.dual(one(args)?)),
        "halfbraid_over" => {
            let (z, x) = two(args)?;
            Gen::Over(z, x)
        }
        "halfbraid_under" => {
            let (z, x) = two(args)?;
            Gen::Under(z, x)
        }
        "coupon" => {
            let (m, word) = args
                .split_once(';')
                .ok_or_else(|| perr("expected `coupon(#k; X Y ...)`".into()))?;
            let id: u32 = m
                .trim()
                .strip_prefix('#')
                .and_then(|k| k.parse().ok())
                .ok_or_else(|| perr(format!("bad marker `{}`", m.trim())))?;
            let word = word
                .split_whitespace()
                .map(|l| parse_label(ctx, l))
                .collect::<Result<Vec<_>, _>>()?;
            Gen::Coupon(Coupon::Marker { id, word })
        }
        other => return Err(perr(format!("unknown generator `{other}`"))),
    })
}
