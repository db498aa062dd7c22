use crate::center::ModularData;
use crate::diagram::{Ctx, State, Strand};
use crate::field::FieldElement;

use super::RtError;

/// A framed link given as the closure of a braid, with one integer framing per
/// component and optional colors (labels of simples of the modular category).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedLink {
    strands: usize,
    word: Vec<i32>,
    /// Component of each bottom strand position.
    component_of: Vec<usize>,
    framings: Vec<i64>,
    colors: Vec<Option<String>>,
}

impl FramedLink {
    /// Closure of `word` (signed 1-based generators) on `strands` strands. Components
    /// are numbered by their lowest bottom position. Framings default to 0.
    pub fn new(strands: usize, word: Vec<i32>) -> Result<Self, RtError> {
        for &g in &word {
            if g == 0 || g.unsigned_abs() as usize >= strands {
                return Err(RtError::Generator(g));
            }
        }
        let mut at: Vec<usize> = (0..strands).collect(); // at[position] = bottom strand
        for &g in &word {
            let p = g.unsigned_abs() as usize - 1;
            at.swap(p, p + 1);
        }
        // strand starting at bottom b ends at top position top[b], which closes up to
        // bottom position top[b]
        let mut top = vec![0; strands];
        for (p, &b) in at.iter().enumerate() {
            top[b] = p;
        }
        let mut component_of = vec![usize::MAX; strands];
        let mut k = 0;
        for s in 0..strands {
            if component_of[s] != usize::MAX {
                continue;
            }
            let mut p = s;
            while component_of[p] == usize::MAX {
                component_of[p] = k;
                p = top[p];
            }
            k += 1;
        }
        Ok(FramedLink {
            strands,
            word,
            component_of,
            framings: vec![0; k],
            colors: vec![None; k],
        })
    }

    pub fn empty() -> Self {
        FramedLink::new(0, Vec::new()).expect("valid")
    }

    pub fn unknot(framing: i64) -> Self {
        FramedLink::new(1, Vec::new())
            .expect("valid")
            .with_framings(&[framing])
    }

    /// Closure of σ₁² on two strands.
    pub fn hopf() -> Self {
        FramedLink::new(2, vec![1, 1]).expect("valid")
    }

    pub fn with_framings(mut self, framings: &[i64]) -> Self {
        assert_eq!(framings.len(), self.components());
        self.framings = framings.to_vec();
        self
    }

    pub fn set_framing(&mut self, component: usize, framing: i64) -> Result<(), RtError> {
        *self
            .framings
            .get_mut(component)
            .ok_or(RtError::ComponentIndex(component))? = framing;
        Ok(())
    }

    pub fn set_color(&mut self, component: usize, label: Option<String>) -> Result<(), RtError> {
        *self
            .colors
            .get_mut(component)
            .ok_or(RtError::ComponentIndex(component))? = label;
        Ok(())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn word(&self) -> &[i32] {
        &self.word
    }

    pub fn components(&self) -> usize {
        self.framings.len()
    }

    pub fn component_of(&self, strand: usize) -> usize {
        self.component_of[strand]
    }

    pub fn framing(&self, component: usize) -> i64 {
        self.framings[component]
    }

    pub fn framings(&self) -> &[i64] {
        &self.framings
    }

    pub fn color(&self, component: usize) -> Option<&str> {
        self.colors[component].as_deref()
    }

    /// Blackboard framing of each component: the signed count of its self-crossings.
    pub fn writhes(&self) -> Vec<i64> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        let mut w = vec![0; self.components()];
        for &g in &self.word {
            let p = g.unsigned_abs() as usize - 1;
            let (c1, c2) = (self.component_of[at[p]], self.component_of[at[p + 1]]);
            if c1 == c2 {
                w[c1] += g.signum() as i64;
            }
            at.swap(p, p + 1);
        }
        w
    }

    /// Resolve the stored colors against the simples of `m`; `None` for uncolored
    /// components.
    pub fn resolved_colors(&self, m: &ModularData) -> Result<Vec<Option<usize>>, RtError> {
        self.colors
            .iter()
            .map(|c| match c {
                None => Ok(None),
                Some(l) => m
                    .base
                    .index(l)
                    .map(Some)
                    .map_err(|_| RtError::UnknownColor(l.clone())),
            })
            .collect()
    }
}

/// F(L) for the link colored by `colors` (one simple per component): the quantum trace
/// of the braid, corrected from blackboard to declared framing by θ^{framing − writhe}.
pub fn eval_link(
    link: &FramedLink,
    colors: &[usize],
    m: &ModularData,
) -> Result<FieldElement, RtError> {
    if colors.len() != link.components() {
        return Err(RtError::ColorCount {
            expected: link.components(),
            got: colors.len(),
        });
    }
    let n = link.strands;
    let ctx = Ctx::new(&m.base);
    let mut st = State::vacuum(&ctx);
    for p in 0..n {
        st = st.insert_cup(&ctx, p, Strand::Black(colors[link.component_of[p]]));
    }
    for &g in &link.word {
        st = m.braid(&ctx, &st, g.unsigned_abs() as usize - 1, g > 0);
    }
    for p in (0..n).rev() {
        st = st.cap(&ctx, p);
    }
    let mut v = st.scalar();
    for (k, w) in link.writhes().into_iter().enumerate() {
        v *= &m.twist(colors[k]).pow(link.framings[k] - w);
    }
    Ok(v)
}
