use std::collections::HashMap;

use crate::field::FieldElement;
use crate::fusion::FusionData;

use super::tri::Triangulation;

/// A function of finitely many edge colors, stored on its support.
#[derive(Debug, Clone)]
struct Factor {
    vars: Vec<usize>,
    table: HashMap<Vec<u8>, FieldElement>,
}

impl Factor {
    fn mul(&self, other: &Factor) -> Factor {
        let mut vars = self.vars.clone();
        for &v in &other.vars {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        vars.sort_unstable();
        let shared: Vec<(usize, usize)> = self
            .vars
            .iter()
            .enumerate()
            .filter_map(|(i, v)| other.vars.iter().position(|w| w == v).map(|j| (i, j)))
            .collect();
        let mut index: HashMap<Vec<u8>, Vec<(&Vec<u8>, &FieldElement)>> = HashMap::new();
        for (k, v) in &other.table {
            index
                .entry(shared.iter().map(|&(_, j)| k[j]).collect())
                .or_default()
                .push((k, v));
        }
        let place = |k: &[u8], from: &[usize], out: &mut [u8]| {
            for (x, &v) in k.iter().zip(from) {
                out[vars.binary_search(&v).expect("present")] = *x;
            }
        };
        let mut table = HashMap::new();
        for (k, v) in &self.table {
            let probe: Vec<u8> = shared.iter().map(|&(i, _)| k[i]).collect();
            let Some(matches) = index.get(&probe) else {
                continue;
            };
            for (k2, v2) in matches {
                let mut key = vec![0u8; vars.len()];
                place(k, &self.vars, &mut key);
                place(k2, &other.vars, &mut key);
                table.insert(key, v * *v2);
            }
        }
        Factor { vars, table }
    }

    fn sum_out(&self, var: usize) -> Factor {
        let pos = self.vars.iter().position(|&v| v == var).expect("present");
        let mut vars = self.vars.clone();
        vars.remove(pos);
        let mut table: HashMap<Vec<u8>, FieldElement> = HashMap::new();
        for (k, v) in &self.table {
            let mut key = k.clone();
            key.remove(pos);
            match table.get_mut(&key) {
                Some(acc) => *acc += v,
                None => {
                    table.insert(key, v.clone());
                }
            }
        }
        Factor { vars, table }
    }

    fn scalar(&self) -> FieldElement {
        self.table
            .get(&Vec::new())
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(1))
    }
}

/// Weight of one tetrahedron with edge colors a = x01, b = x12, c = x23, e = x02,
/// f = x13, d = x03: F^{abc}_d[e,f]/√(d_e d_f) when positively oriented and
/// (F^{abc}_d)⁻¹[f,e]/√(d_e d_f) otherwise.
fn tet_factor(tri: &Triangulation, t: usize, c: &FusionData) -> Factor {
    let classes = tri.edges(t);
    let mut vars: Vec<usize> = classes.to_vec();
    vars.sort_unstable();
    vars.dedup();
    let mut table = HashMap::new();
    let n = c.rank();
    let positive = tri.orientation(t) > 0;
    for a in 0..n {
        for b in 0..n {
            for &e in c.channels(a, b) {
                for cc in 0..n {
                    for &d in c.channels(e, cc) {
                        for &f in c.channels(b, cc) {
                            if !c.n(a, f, d) {
                                continue;
                            }
                            // local edge order 01 02 03 12 13 23
                            let colors = [a, e, d, b, f, cc];
                            let mut key = vec![u8::MAX; vars.len()];
                            let mut ok = true;
                            for (i, &cls) in classes.iter().enumerate() {
                                let slot = &mut key[vars.binary_search(&cls).expect("present")];
                                if *slot != u8::MAX && *slot as usize != colors[i] {
                                    ok = false;
                                    break;
                                }
                                *slot = colors[i] as u8;
                            }
                            if !ok {
                                continue;
                            }
                            let g = if positive {
                                c.f(a, b, cc, d, e, f)
                            } else {
                                c.finv(a, b, cc, d, f, e)
                            };
                            if g.is_zero() {
                                continue;
                            }
                            let norm = c.sqrt_dim(e) * c.sqrt_dim(f);
                            table.insert(key, g / norm);
                        }
                    }
                }
            }
        }
    }
    Factor { vars, table }
}

fn eliminate(mut factors: Vec<Factor>, mut vars: Vec<usize>) -> FieldElement {
    while !vars.is_empty() {
        // min-degree: the variable whose elimination creates the smallest scope
        let (idx, _) = vars
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let mut scope: Vec<usize> = factors
                    .iter()
                    .filter(|f| f.vars.contains(&v))
                    .flat_map(|f| f.vars.iter().copied())
                    .collect();
                scope.sort_unstable();
                scope.dedup();
                (i, scope.len())
            })
            .min_by_key(|&(i, s)| (s, i))
            .expect("non-empty");
        let v = vars.swap_remove(idx);
        let (with, rest): (Vec<Factor>, Vec<Factor>) =
            factors.into_iter().partition(|f| f.vars.contains(&v));
        factors = rest;
        let mut prod = with[0].clone();
        for f in &with[1..] {
            prod = prod.mul(f);
        }
        factors.push(prod.sum_out(v));
    }
    let mut total = FieldElement::one(1);
    for f in &factors {
        total *= &f.scalar();
    }
    total
}

fn factors(tri: &Triangulation, c: &FusionData) -> Vec<Factor> {
    let mut out: Vec<Factor> = (0..tri.tet_count())
        .map(|t| tet_factor(tri, t, c))
        .collect();
    for e in 0..tri.edge_count() {
        out.push(Factor {
            vars: vec![e],
            table: (0..c.rank())
                .map(|x| (vec![x as u8], c.dim(x).clone()))
                .collect(),
        });
    }
    out
}

fn normalization(tri: &Triangulation, c: &FusionData) -> FieldElement {
    c.declared_global_dim().pow(-2 * tri.vertex_count() as i64)
}

/// Z = 𝒟^{−2V} Σ_labelings Π_edges d_e Π_tets (tetrahedron weight), summed by
/// eliminating edge colors one at a time.
pub fn tv_state_sum(tri: &Triangulation, c: &FusionData) -> FieldElement {
    let fs = factors(tri, c);
    eliminate(fs, (0..tri.edge_count()).collect()) * normalization(tri, c)
}

/// Same value as [`tv_state_sum`], with the colors of edge class 0 split over `threads`
/// worker threads.
pub fn tv_state_sum_parallel(tri: &Triangulation, c: &FusionData, threads: usize) -> FieldElement {
    let threads = threads.max(1);
    if threads == 1 {
        return tv_state_sum(tri, c);
    }
    let fs = factors(tri, c);
    let colors: Vec<u8> = (0..c.rank() as u8).collect();
    let chunks: Vec<&[u8]> = colors.chunks(colors.len().div_ceil(threads)).collect();
    let partial: Vec<FieldElement> = std::thread::scope(|s| {
        let handles: Vec<_> = chunks
            .iter()
            .map(|chunk| {
                let fs = &fs;
                s.spawn(move || {
                    let mut acc = FieldElement::zero(1);
                    for &x in *chunk {
                        let restricted: Vec<Factor> =
                            fs.iter().map(|f| restrict(f, 0, x)).collect();
                        acc += &eliminate(restricted, (1..tri.edge_count()).collect());
                    }
                    acc
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let mut total = FieldElement::zero(1);
    for p in &partial {
        total += p;
    }
    total * normalization(tri, c)
}

fn restrict(f: &Factor, var: usize, color: u8) -> Factor {
    let Some(pos) = f.vars.iter().position(|&v| v == var) else {
        return f.clone();
    };
    let mut vars = f.vars.clone();
    vars.remove(pos);
    let table = f
        .table
        .iter()
        .filter(|(k, _)| k[pos] == color)
        .map(|(k, v)| {
            let mut k = k.clone();
            k.remove(pos);
            (k, v.clone())
        })
        .collect();
    Factor { vars, table }
}
