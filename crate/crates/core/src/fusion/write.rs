use std::fmt::Write;

use crate::field::FieldElement;

use super::FusionData;

impl FusionData {
    /// Scalar written in this category's field syntax.
    pub fn format_scalar(&self, v: &FieldElement) -> String {
        v.embed(self.order()).to_string()
    }

    /// The category file that parses back to this data.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let l = |a: usize| self.label(a);
        let v = |x: &FieldElement| self.format_scalar(x);
        writeln!(s, "cyclo_order: {}", self.order()).unwrap();
        if let Some(r) = self.radicand() {
            writeln!(s, "sqrt_adjoin: {}", r.embed(self.order())).unwrap();
        }
        writeln!(s, "simples: {}", self.labels().join(" ")).unwrap();
        writeln!(s, "unit: {}", l(self.unit())).unwrap();
        for a in 0..self.rank() {
            if a <= self.dual(a) {
                writeln!(s, "dual: {} -> {}", l(a), l(self.dual(a))).unwrap();
            }
        }
        for a in 0..self.rank() {
            for b in 0..self.rank() {
                for &c in self.channels(a, b) {
                    writeln!(s, "fuse: {} {} -> {}", l(a), l(b), l(c)).unwrap();
                }
            }
        }
        for a in 0..self.rank() {
            writeln!(s, "dim: {} = {}", l(a), v(self.dim(a))).unwrap();
        }
        for a in 0..self.rank() {
            writeln!(s, "sqrtdim: {} = {}", l(a), v(self.sqrt_dim(a))).unwrap();
        }
        writeln!(s, "global_dim: {}", v(self.declared_global_dim())).unwrap();
        let mut keys: Vec<_> = self.t.fsym.keys().copied().collect();
        keys.sort();
        for k in keys {
            let k6 = k.map(|x| x as usize);
            writeln!(
                s,
                "F: {} {} {} ; {} | {} {} = {}",
                l(k6[0]),
                l(k6[1]),
                l(k6[2]),
                l(k6[3]),
                l(k6[4]),
                l(k6[5]),
                v(&self.t.fsym[&k])
            )
            .unwrap();
        }
        s
    }
}
