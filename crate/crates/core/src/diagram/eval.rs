use std::collections::{BTreeMap, BTreeSet};

use crate::field::FieldElement;

use super::ops::dual_basis_strands;
use super::state::State;
use super::{Ctx, DiagramError, HomVector, Strand};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coupon {
    /// A fixed vector; `word` gives the strand colors (red or black) over its boundary.
    Vector { word: Vec<Strand>, vec: HomVector },
    /// Half of a dual-basis pair `#k`: the first occurrence is summed over a basis of
    /// ⟨word⟩, the second over the dual basis of the dual reversed word.
    Marker { id: u32, word: Vec<Strand> },
}

/// Elementary generators; each consumes strands from the layer's input word and
/// produces strands of its output word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gen {
    Id(Strand),
    /// coev: nothing → (X, X*)
    Cup(Strand),
    /// ev: (X, X*) → nothing
    Cap(Strand),
    Coupon(Coupon),
    /// φ_Z(X): (Z, X) → (X, Z) for a red Z and black X
    Over(Strand, Strand),
    /// φ_Z(X)⁻¹: (X, Z) → (Z, X)
    Under(Strand, Strand),
}

/// Layers from bottom to top. The bottom boundary is empty.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diagram {
    pub layers: Vec<Vec<Gen>>,
}

impl Diagram {
    pub fn new() -> Self {
        Diagram::default()
    }

    pub fn layer(mut self, gens: Vec<Gen>) -> Self {
        self.layers.push(gens);
        self
    }

    fn strands(&self) -> impl Iterator<Item = Strand> + '_ {
        self.layers.iter().flatten().flat_map(|g| match g {
            Gen::Id(s) | Gen::Cup(s) | Gen::Cap(s) => vec![*s],
            Gen::Over(a, b) | Gen::Under(a, b) => vec![*a, *b],
            Gen::Coupon(Coupon::Vector { word, .. }) | Gen::Coupon(Coupon::Marker { word, .. }) => {
                word.clone()
            }
        })
    }

    fn substitute(&self, ctx: &Ctx, vals: &BTreeMap<u32, usize>) -> Diagram {
        let sub = |s: Strand| match s {
            Strand::Var(k, d) => {
                let x = vals[&k];
                Strand::Black(if d { ctx.cat.dual(x) } else { x })
            }
            other => other,
        };
        let layers = self
            .layers
            .iter()
            .map(|l| {
                l.iter()
                    .map(|g| match g {
                        Gen::Id(s) => Gen::Id(sub(*s)),
                        Gen::Cup(s) => Gen::Cup(sub(*s)),
                        Gen::Cap(s) => Gen::Cap(sub(*s)),
                        Gen::Over(a, b) => Gen::Over(sub(*a), sub(*b)),
                        Gen::Under(a, b) => Gen::Under(sub(*a), sub(*b)),
                        Gen::Coupon(Coupon::Marker { id, word }) => Gen::Coupon(Coupon::Marker {
                            id: *id,
                            word: word.iter().map(|&s| sub(s)).collect(),
                        }),
                        Gen::Coupon(c) => Gen::Coupon(c.clone()),
                    })
                    .collect()
            })
            .collect();
        Diagram { layers }
    }
}

/// Evaluate to a vector over the top boundary (a scalar when the top is empty).
/// Unlabeled edges (`$k`) are summed over simples with weight d, marker pairs over
/// dual bases.
pub fn evaluate(ctx: &Ctx, d: &Diagram) -> Result<HomVector, DiagramError> {
    let vars: BTreeSet<u32> = d
        .strands()
        .filter_map(|s| match s {
            Strand::Var(k, _) => Some(k),
            _ => None,
        })
        .collect();
    let vars: Vec<u32> = vars.into_iter().collect();
    let n = ctx.cat.rank();
    let mut total: Option<State> = None;
    let mut assignment = vec![0usize; vars.len()];
    loop {
        let vals: BTreeMap<u32, usize> = vars
            .iter()
            .copied()
            .zip(assignment.iter().copied())
            .collect();
        let weight = assignment
            .iter()
            .fold(FieldElement::one(1), |acc, &x| &acc * ctx.cat.dim(x));
        let concrete = d.substitute(ctx, &vals);
        let mut st = evaluate_markers(ctx, &concrete)?;
        st.scale(&weight);
        match &mut total {
            None => total = Some(st),
            Some(t) => {
                if t.word != st.word {
                    return Err(DiagramError::Boundary(
                        "summed label reaches the top boundary".into(),
                    ));
                }
                t.add_assign(&st);
            }
        }
        // next assignment
        let mut i = 0;
        while i < assignment.len() {
            assignment[i] += 1;
            if assignment[i] < n {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
        if i == assignment.len() {
            break;
        }
    }
    let st = total.expect("at least one assignment");
    let boundary: Vec<usize> = st.word.iter().map(|&s| ctx.under(s)).collect();
    Ok(HomVector::from_terms(ctx.cat, &boundary, &st.terms))
}

fn evaluate_markers(ctx: &Ctx, d: &Diagram) -> Result<State, DiagramError> {
    let mut occ: BTreeMap<u32, Vec<Vec<Strand>>> = BTreeMap::new();
    for g in d.layers.iter().flatten() {
        if let Gen::Coupon(Coupon::Marker { id, word }) = g {
            occ.entry(*id).or_default().push(word.clone());
        }
    }
    let mut bases: Vec<(u32, Vec<(HomVector, HomVector)>)> = Vec::new();
    for (id, words) in &occ {
        if words.len() != 2 {
            return Err(DiagramError::UnmatchedMarker(*id));
        }
        let expect: Vec<Strand> = words[0].iter().rev().map(|&s| ctx.dual(s)).collect();
        if words[1] != expect {
            return Err(DiagramError::MarkerWord(*id));
        }
        let (b, bd) = dual_basis_strands(ctx, &words[0])?;
        bases.push((*id, b.into_iter().zip(bd).collect()));
    }
    // iterate over all basis index tuples
    let mut idx = vec![0usize; bases.len()];
    let mut total: Option<State> = None;
    if bases.iter().any(|(_, b)| b.is_empty()) {
        // some marker space is zero: run the shape check only
        let st = run_layers(ctx, d, &BTreeMap::new(), true)?;
        return Ok(State {
            word: st.word,
            terms: BTreeMap::new(),
        });
    }
    loop {
        let chosen: BTreeMap<u32, &(HomVector, HomVector)> = bases
            .iter()
            .zip(&idx)
            .map(|((id, b), &i)| (*id, &b[i]))
            .collect();
        let st = run_layers(ctx, d, &chosen, false)?;
        match &mut total {
            None => total = Some(st),
            Some(t) => t.add_assign(&st),
        }
        let mut i = 0;
        while i < idx.len() {
            idx[i] += 1;
            if idx[i] < bases[i].1.len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == idx.len() {
            break;
        }
    }
    Ok(total.expect("at least one basis tuple"))
}

fn run_layers(
    ctx: &Ctx,
    d: &Diagram,
    markers: &BTreeMap<u32, &(HomVector, HomVector)>,
    shape_only: bool,
) -> Result<State, DiagramError> {
    let mut st = State::vacuum(ctx);
    if shape_only {
        st.terms.clear();
    }
    let mut seen: BTreeSet<u32> = BTreeSet::new();
    for (li, layer) in d.layers.iter().enumerate() {
        let mismatch = |msg: String| DiagramError::TypeMismatch { layer: li + 1, msg };
        let mut pos = 0;
        for g in layer {
            let expect = |st: &State, at: usize, s: Strand| -> Result<(), DiagramError> {
                match st.word.get(at) {
                    Some(&w) if w == s => Ok(()),
                    Some(&w) => Err(mismatch(format!(
                        "expected `{}` at position {}, found `{}`",
                        ctx.strand_name(s),
                        at + 1,
                        ctx.strand_name(w)
                    ))),
                    None => Err(mismatch(format!("missing input `{}`", ctx.strand_name(s)))),
                }
            };
            match g {
                Gen::Id(s) => {
                    expect(&st, pos, *s)?;
                    pos += 1;
                }
                Gen::Cup(s) => {
                    st = st.insert_cup(ctx, pos, *s);
                    pos += 2;
                }
                Gen::Cap(s) => {
                    expect(&st, pos, *s)?;
                    expect(&st, pos + 1, ctx.dual(*s))?;
                    st = st.cap(ctx, pos);
                }
                Gen::Coupon(Coupon::Vector { word, vec }) => {
                    let under: Vec<usize> = word.iter().map(|&s| ctx.under(s)).collect();
                    if under != vec.boundary {
                        return Err(mismatch("coupon word does not match its vector".into()));
                    }
                    st = st.insert(ctx, pos, word, &vec.to_terms(ctx.cat));
                    pos += word.len();
                }
                Gen::Coupon(Coupon::Marker { id, word }) => {
                    if shape_only {
                        // zero space: keep the word bookkeeping only
                        st.word.splice(pos..pos, word.iter().copied());
                    } else {
                        let (b, bd) = markers[id];
                        let v = if seen.insert(*id) { b } else { bd };
                        st = st.insert(ctx, pos, word, &v.to_terms(ctx.cat));
                    }
                    pos += word.len();
                }
                Gen::Over(z, x) | Gen::Under(z, x) => {
                    let over = matches!(g, Gen::Over(..));
                    let Strand::Red(zi) = *z else {
                        return Err(mismatch("half-braiding needs a red strand".into()));
                    };
                    if matches!(x, Strand::Red(_)) {
                        return Err(mismatch(
                            "half-braiding crosses a red strand with a black one".into(),
                        ));
                    }
                    let (first, second) = if over { (*z, *x) } else { (*x, *z) };
                    expect(&st, pos, first)?;
                    expect(&st, pos + 1, second)?;
                    let center = ctx
                        .center
                        .ok_or_else(|| DiagramError::NoHalfBraiding(ctx.strand_name(*z)))?;
                    let xi = ctx.under(*x);
                    let h = center
                        .halfbraid(zi, xi)
                        .ok_or_else(|| DiagramError::NoHalfBraiding(ctx.strand_name(*z)))?;
                    let h = if over {
                        h
                    } else {
                        h.inverse()
                            .ok_or_else(|| DiagramError::NoHalfBraiding(ctx.strand_name(*z)))?
                    };
                    if !shape_only {
                        st = st.swap(ctx, pos, |_| h.clone());
                    } else {
                        st.word.swap(pos, pos + 1);
                    }
                    pos += 2;
                }
            }
        }
        if pos != st.word.len() {
            return Err(mismatch(format!(
                "layer covers {} of {} strands",
                pos,
                st.word.len()
            )));
        }
    }
    Ok(st)
}
