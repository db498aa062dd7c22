use std::collections::BTreeMap;

use crate::field::FieldElement;

use super::{Ctx, Strand};

/// Sparse vector of ⟨word⟩ keyed by basis chains `c₀ … cₙ`.
#[derive(Debug, Clone)]
pub(crate) struct State {
    pub word: Vec<Strand>,
    pub terms: BTreeMap<Vec<u8>, FieldElement>,
}

fn accumulate(map: &mut BTreeMap<Vec<u8>, FieldElement>, key: Vec<u8>, v: FieldElement) {
    if v.is_zero() {
        return;
    }
    match map.get_mut(&key) {
        Some(x) => {
            *x += &v;
            if x.is_zero() {
                map.remove(&key);
            }
        }
        None => {
            map.insert(key, v);
        }
    }
}

impl State {
    /// The empty diagram: ⟨⟩ with coefficient 1.
    pub fn vacuum(ctx: &Ctx) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![ctx.cat.unit() as u8], FieldElement::one(1));
        State {
            word: Vec::new(),
            terms,
        }
    }

    /// Insert a vector of ⟨U₁,…,U_k⟩ (given by its chain terms) between word positions
    /// `pos-1` and `pos`.
    pub fn insert(
        &self,
        ctx: &Ctx,
        pos: usize,
        coupon: &[Strand],
        cterms: &BTreeMap<Vec<u8>, FieldElement>,
    ) -> State {
        let us: Vec<usize> = coupon.iter().map(|&s| ctx.under(s)).collect();
        let mut out = BTreeMap::new();
        for (chain, a) in &self.terms {
            let x = chain[pos] as usize;
            for (y, b) in cterms {
                let ab = a * b;
                for (zs, c) in absorb(ctx, x, x, &us, y) {
                    let mut key = Vec::with_capacity(chain.len() + us.len());
                    key.extend_from_slice(&chain[..=pos]);
                    key.extend(zs.iter().map(|&z| z as u8));
                    key.extend_from_slice(&chain[pos + 1..]);
                    accumulate(&mut out, key, &ab * &c);
                }
            }
        }
        let mut word = self.word.clone();
        word.splice(pos..pos, coupon.iter().copied());
        State { word, terms: out }
    }

    pub fn insert_cup(&self, ctx: &Ctx, pos: usize, s: Strand) -> State {
        let u = ctx.cat.unit() as u8;
        let x = ctx.under(s) as u8;
        let mut t = BTreeMap::new();
        t.insert(vec![u, x, u], FieldElement::one(1));
        self.insert(ctx, pos, &[s, ctx.dual(s)], &t)
    }

    /// Apply ev to the adjacent pair `(X, X*)` at `pos, pos+1`.
    pub fn cap(&self, ctx: &Ctx, pos: usize) -> State {
        let cat = ctx.cat;
        let u = cat.unit();
        let v = ctx.under(self.word[pos]);
        let w = ctx.under(self.word[pos + 1]);
        debug_assert_eq!(cat.dual(v), w);
        let mut out = BTreeMap::new();
        for (chain, a) in &self.terms {
            let (c0, c1, c2) = (
                chain[pos] as usize,
                chain[pos + 1] as usize,
                chain[pos + 2] as usize,
            );
            if c2 != c0 {
                continue;
            }
            let f = match cat.f_entry(c0, v, w, c2, c1, u) {
                Some(f) => f,
                None => continue,
            };
            let mut key = chain.clone();
            key.drain(pos + 1..pos + 3);
            accumulate(&mut out, key, &(a * f) * cat.dim(v));
        }
        let mut word = self.word.clone();
        word.drain(pos..pos + 2);
        State { word, terms: out }
    }

    /// Exchange the strands at `pos, pos+1`, acting on the fusion channel `f` of the
    /// pair by `scalar(f)`.
    pub fn swap(&self, ctx: &Ctx, pos: usize, scalar: impl Fn(usize) -> FieldElement) -> State {
        let cat = ctx.cat;
        let v = ctx.under(self.word[pos]);
        let w = ctx.under(self.word[pos + 1]);
        let mut cache: BTreeMap<usize, FieldElement> = BTreeMap::new();
        let mut out = BTreeMap::new();
        for (chain, a) in &self.terms {
            let (c0, c1, c2) = (
                chain[pos] as usize,
                chain[pos + 1] as usize,
                chain[pos + 2] as usize,
            );
            for &f in cat.channels(v, w) {
                let Some(x) = cat.f_entry(c0, v, w, c2, c1, f) else {
                    continue;
                };
                let s = cache.entry(f).or_insert_with(|| scalar(f)).clone();
                let axs = &(a * x) * &s;
                if axs.is_zero() {
                    continue;
                }
                for &e in cat.channels(c0, w) {
                    let Some(y) = cat.finv_entry(c0, w, v, c2, f, e) else {
                        continue;
                    };
                    let mut key = chain.clone();
                    key[pos + 1] = e as u8;
                    accumulate(&mut out, key, &axs * y);
                }
            }
        }
        let mut word = self.word.clone();
        word.swap(pos, pos + 1);
        State { word, terms: out }
    }

    pub fn scale(&mut self, s: &FieldElement) {
        if s.is_zero() {
            self.terms.clear();
            return;
        }
        for v in self.terms.values_mut() {
            *v *= s;
        }
    }

    pub fn add_assign(&mut self, other: &State) {
        debug_assert_eq!(self.word, other.word);
        for (k, v) in &other.terms {
            accumulate(&mut self.terms, k.clone(), v.clone());
        }
    }

    /// Coefficient of the basis vector when the word is a single unit strand or empty.
    #[cfg(test)]
    pub fn scalar_unit(&self, cat: &crate::fusion::FusionData) -> FieldElement {
        let u = cat.unit() as u8;
        let key = vec![u; self.word.len() + 1];
        self.terms
            .get(&key)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(1))
    }

    /// Coefficient of the empty word (closed diagrams).
    pub fn scalar(&self) -> FieldElement {
        debug_assert!(self.word.is_empty());
        self.terms
            .values()
            .next()
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(1))
    }
}

/// Re-associate `(x T)_r`, where `T` is the left-associated tree with leaves `us` and
/// chain `y` (`y[0] = 1`, `y[k]` its total), into left-associated form. Returns the new
/// intermediate charges `z₁ … z_k` (with `z_k = r`) and coefficients.
fn absorb(
    ctx: &Ctx,
    x: usize,
    r: usize,
    us: &[usize],
    y: &[u8],
) -> Vec<(Vec<usize>, FieldElement)> {
    let cat = ctx.cat;
    let k = us.len();
    match k {
        0 => {
            if r == x {
                vec![(Vec::new(), FieldElement::one(1))]
            } else {
                Vec::new()
            }
        }
        1 => {
            if cat.n(x, us[0], r) {
                vec![(vec![r], FieldElement::one(1))]
            } else {
                Vec::new()
            }
        }
        _ => {
            let (yk, ykm1, uk) = (y[k] as usize, y[k - 1] as usize, us[k - 1]);
            let mut out = Vec::new();
            for &e in cat.channels(x, ykm1) {
                let Some(c) = cat.finv_entry(x, ykm1, uk, r, yk, e) else {
                    continue;
                };
                for (mut zs, c2) in absorb(ctx, x, e, &us[..k - 1], &y[..k]) {
                    zs.push(r);
                    out.push((zs, c * &c2));
                }
            }
            out
        }
    }
}
