use super::{FramedLink, RtError, SurgeryPresentation};

/// Parse a link file: `strands: n`, `word: 1 -2 1 …`, `framing: c = k` and
/// `color: c = Label` with 1-based component numbers, and an optional `name:`.
pub fn parse_link(text: &str) -> Result<SurgeryPresentation, RtError> {
    let syntax = |line: usize, msg: &str| RtError::Parse {
        line,
        msg: msg.to_string(),
    };
    let mut strands = None;
    let mut word = Vec::new();
    let mut name = None;
    let mut per_component = Vec::new();
    for (i, l) in text.lines().enumerate() {
        let line = i + 1;
        let t = l.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let (k, rest) = t
            .split_once(':')
            .ok_or_else(|| syntax(line, "expected `key: value`"))?;
        let rest = rest.trim();
        match k.trim() {
            "strands" => {
                strands = Some(
                    rest.parse::<usize>()
                        .map_err(|_| syntax(line, "bad strand count"))?,
                )
            }
            "word" => {
                word = rest
                    .split_whitespace()
                    .map(|g| {
                        g.parse::<i32>()
                            .map_err(|_| syntax(line, &format!("bad generator `{g}`")))
                    })
                    .collect::<Result<_, _>>()?;
            }
            "name" => name = Some(rest.to_string()),
            key @ ("framing" | "color") => {
                let (c, v) = rest
                    .split_once('=')
                    .ok_or_else(|| syntax(line, "expected `c = value`"))?;
                let c: usize = c
                    .trim()
                    .parse()
                    .ok()
                    .filter(|&c| c >= 1)
                    .ok_or_else(|| syntax(line, "components are numbered from 1"))?;
                per_component.push((line, key == "framing", c - 1, v.trim().to_string()));
            }
            other => return Err(syntax(line, &format!("unknown key `{other}`"))),
        }
    }
    let strands = strands.ok_or_else(|| syntax(0, "missing `strands`"))?;
    let mut link = FramedLink::new(strands, word)?;
    for (line, is_framing, c, v) in per_component {
        if is_framing {
            let k: i64 = v
                .parse()
                .map_err(|_| syntax(line, "framing must be an integer"))?;
            link.set_framing(c, k)?;
        } else {
            link.set_color(c, Some(v))?;
        }
    }
    Ok(SurgeryPresentation { link, name })
}
