use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rand::Rng;

use super::tri::{inverse, Gluing, Triangulation, EDGES};
use super::TvError;

/// A Pachner move and where to apply it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    /// Replace the two tetrahedra meeting at face `face` of `tet` by three.
    TwoThree { tet: usize, face: usize },
    /// Replace the three tetrahedra around local edge `edge` of `tet` by two.
    ThreeTwo { tet: usize, edge: usize },
    /// Cone `tet` from a new interior vertex, placed at position `slot` (0..=4) of the
    /// vertex order.
    OneFour { tet: usize, slot: usize },
    /// Remove the degree-four vertex at local vertex `vertex` of `tet`.
    FourOne { tet: usize, vertex: usize },
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Move::TwoThree { tet, face } => write!(f, "2-3 at face {tet}.{face}"),
            Move::ThreeTwo { tet, edge } => {
                let [u, v] = EDGES[edge];
                write!(f, "3-2 at edge {tet}.{u}{v}")
            }
            Move::OneFour { tet, slot } => write!(f, "1-4 at tet {tet} slot {slot}"),
            Move::FourOne { tet, vertex } => write!(f, "4-1 at vertex {tet}.{vertex}"),
        }
    }
}

type Keys = [u8; 4];

fn bad(m: Move, why: impl fmt::Display) -> TvError {
    TvError::Inadmissible(format!("{m}: {why}"))
}

/// Keys of the tetrahedron across face `face` of a tetrahedron with keys `keys`; the
/// vertex opposite the face gets `fresh`.
fn across(g: Gluing, face: usize, keys: Keys, fresh: u8) -> Keys {
    let mut out = [0u8; 4];
    for v in 0..4 {
        out[g.perm[v] as usize] = if v == face { fresh } else { keys[v] };
    }
    out
}

fn face_keys(keys: &Keys, opposite: usize) -> BTreeSet<u8> {
    (0..4).filter(|&v| v != opposite).map(|v| keys[v]).collect()
}

/// Total order on the keys compatible with the local order of every removed
/// tetrahedron and with the extra constraints; ties go to the smaller key.
fn key_order(
    removed: &[(usize, Keys)],
    extra: &[(u8, u8)],
    m: Move,
) -> Result<HashMap<u8, usize>, TvError> {
    let mut keys: BTreeSet<u8> = removed
        .iter()
        .flat_map(|(_, k)| k.iter().copied())
        .collect();
    keys.extend(extra.iter().flat_map(|&(a, b)| [a, b]));
    let mut before: HashMap<u8, BTreeSet<u8>> =
        keys.iter().map(|&k| (k, BTreeSet::new())).collect();
    for (_, k) in removed {
        for i in 0..4 {
            for j in i + 1..4 {
                before.get_mut(&k[j]).expect("key").insert(k[i]);
            }
        }
    }
    for &(a, b) in extra {
        before.get_mut(&b).expect("key").insert(a);
    }
    let mut rank = HashMap::new();
    while rank.len() < keys.len() {
        let next = keys
            .iter()
            .find(|k| !rank.contains_key(*k) && before[*k].iter().all(|p| rank.contains_key(p)))
            .ok_or_else(|| bad(m, "the new tetrahedra admit no compatible vertex order"))?;
        rank.insert(*next, rank.len());
    }
    Ok(rank)
}

/// Removes `removed` (tetrahedra with vertex keys), fills the ball with tetrahedra on
/// the key sets `new_sets`, and reglues.
fn rebuild(
    tri: &Triangulation,
    m: Move,
    removed: &[(usize, Keys)],
    new_sets: &[[u8; 4]],
    extra: &[(u8, u8)],
) -> Result<Triangulation, TvError> {
    let idx_of: HashMap<usize, usize> = removed
        .iter()
        .enumerate()
        .map(|(i, (t, _))| (*t, i))
        .collect();
    if idx_of.len() != removed.len() {
        return Err(bad(m, "the tetrahedra involved are not distinct"));
    }
    // classify faces of the removed tetrahedra by key set
    let mut faces: HashMap<BTreeSet<u8>, Vec<(usize, usize)>> = HashMap::new();
    for (r, (_, keys)) in removed.iter().enumerate() {
        for i in 0..4 {
            faces.entry(face_keys(keys, i)).or_default().push((r, i));
        }
    }
    for (set, occ) in &faces {
        match occ.as_slice() {
            [_] => {}
            [(r, i), (r2, i2)] => {
                let g = tri.gluing(removed[*r].0, *i);
                let mut expect = removed[*r2].1;
                expect[*i2] = u8::MAX;
                if g.tet != removed[*r2].0
                    || g.face != *i2
                    || across(g, *i, removed[*r].1, u8::MAX) != expect
                {
                    return Err(bad(
                        m,
                        format!("inner face {set:?} is not glued as expected"),
                    ));
                }
            }
            _ => return Err(bad(m, "degenerate neighbourhood")),
        }
    }
    let rank = key_order(removed, extra, m)?;
    let new_tets: Vec<Keys> = new_sets
        .iter()
        .map(|s| {
            let mut k = *s;
            k.sort_by_key(|x| rank[x]);
            k
        })
        .collect();
    let n = tri.tet_count();
    let kept: Vec<usize> = (0..n).filter(|t| !idx_of.contains_key(t)).collect();
    let mut remap = vec![usize::MAX; n];
    for (i, &t) in kept.iter().enumerate() {
        remap[t] = i;
    }
    let base = kept.len();
    let mut new_faces: HashMap<BTreeSet<u8>, Vec<(usize, usize)>> = HashMap::new();
    for (j, keys) in new_tets.iter().enumerate() {
        for i in 0..4 {
            new_faces
                .entry(face_keys(keys, i))
                .or_default()
                .push((base + j, i));
        }
    }
    let mut glue: Vec<[Option<Gluing>; 4]> = vec![[None; 4]; base + new_tets.len()];
    for &t in &kept {
        for f in 0..4 {
            let g = tri.gluing(t, f);
            if !idx_of.contains_key(&g.tet) {
                glue[remap[t]][f] = Some(Gluing {
                    tet: remap[g.tet],
                    ..g
                });
            }
        }
    }
    let local = |keys: &Keys, k: u8| keys.iter().position(|&x| x == k).expect("key present");
    for (j, keys) in new_tets.iter().enumerate() {
        let me = base + j;
        for i in 0..4 {
            let set = face_keys(keys, i);
            let partners = &new_faces[&set];
            if let Some(&(other, oi)) = partners.iter().find(|&&(o, _)| o != me) {
                let okeys = &new_tets[other - base];
                let mut perm = [0u8; 4];
                for v in 0..4 {
                    perm[v] = if v == i {
                        oi as u8
                    } else {
                        local(okeys, keys[v]) as u8
                    };
                }
                glue[me][i] = Some(Gluing {
                    tet: other,
                    face: oi,
                    perm,
                });
                continue;
            }
            let occ = faces.get(&set).ok_or_else(|| bad(m, "boundary mismatch"))?;
            let &(r, ri) = occ.first().expect("non-empty");
            let rkeys = removed[r].1;
            let g = tri.gluing(removed[r].0, ri);
            // new local v → key → removed local → neighbour local
            let mut to_neighbour = [0u8; 4];
            for v in 0..4 {
                let u = if v == i { ri } else { local(&rkeys, keys[v]) };
                to_neighbour[v] = g.perm[u];
            }
            let target = if let Some(&r2) = idx_of.get(&g.tet) {
                // the neighbour is another outer face of the ball
                let r2keys = removed[r2].1;
                let set2 = face_keys(&r2keys, g.face);
                let &(other, oi) = new_faces
                    .get(&set2)
                    .and_then(|v| v.first())
                    .ok_or_else(|| bad(m, "boundary mismatch"))?;
                let okeys = &new_tets[other - base];
                let mut perm = [0u8; 4];
                for v in 0..4 {
                    let w = to_neighbour[v] as usize;
                    perm[v] = if w == g.face {
                        oi as u8
                    } else {
                        local(okeys, r2keys[w]) as u8
                    };
                }
                Gluing {
                    tet: other,
                    face: oi,
                    perm,
                }
            } else {
                let gl = Gluing {
                    tet: remap[g.tet],
                    face: g.face,
                    perm: to_neighbour,
                };
                glue[gl.tet][gl.face] = Some(Gluing {
                    tet: me,
                    face: i,
                    perm: inverse(to_neighbour),
                });
                gl
            };
            glue[me][i] = Some(target);
        }
    }
    Triangulation::from_gluings(glue).map_err(|e| bad(m, e))
}

/// Applies a Pachner move. The result is validated like a loaded triangulation;
/// surviving tetrahedra keep their relative order and new ones are appended.
pub fn pachner_move(tri: &Triangulation, m: Move) -> Result<Triangulation, TvError> {
    let n = tri.tet_count();
    let tet = match m {
        Move::TwoThree { tet, .. }
        | Move::ThreeTwo { tet, .. }
        | Move::OneFour { tet, .. }
        | Move::FourOne { tet, .. } => tet,
    };
    if tet >= n {
        return Err(bad(m, "no such tetrahedron"));
    }
    match m {
        Move::TwoThree { tet, face } => {
            if face > 3 {
                return Err(bad(m, "face out of range"));
            }
            let mut k0 = [0u8; 4];
            let mut next = 0;
            for (v, slot) in k0.iter_mut().enumerate() {
                if v == face {
                    *slot = 3;
                } else {
                    *slot = next;
                    next += 1;
                }
            }
            let g = tri.gluing(tet, face);
            let k1 = across(g, face, k0, 4);
            let sets = [[1, 2, 3, 4], [0, 2, 3, 4], [0, 1, 3, 4]];
            rebuild(tri, m, &[(tet, k0), (g.tet, k1)], &sets, &[])
        }
        Move::ThreeTwo { tet, edge } => {
            if edge > 5 {
                return Err(bad(m, "edge out of range"));
            }
            if tri.edge_degrees()[tri.edges(tet)[edge]] != 3 {
                return Err(bad(m, "edge does not have degree 3"));
            }
            let [u, v] = EDGES[edge];
            let others: Vec<usize> = (0..4).filter(|&x| x != u && x != v).collect();
            let mut k0 = [0u8; 4];
            k0[u] = 3;
            k0[v] = 4;
            k0[others[0]] = 0;
            k0[others[1]] = 1;
            let g1 = tri.gluing(tet, others[0]);
            let k1 = across(g1, others[0], k0, 2);
            let b_in_1 = k1.iter().position(|&x| x == 1).expect("key 1");
            let g2 = tri.gluing(g1.tet, b_in_1);
            let k2 = across(g2, b_in_1, k1, 0);
            let sets = [[0, 1, 2, 3], [0, 1, 2, 4]];
            rebuild(tri, m, &[(tet, k0), (g1.tet, k1), (g2.tet, k2)], &sets, &[])
        }
        Move::OneFour { tet, slot } => {
            if slot > 4 {
                return Err(bad(m, "slot out of range"));
            }
            let mut extra = Vec::new();
            if slot > 0 {
                extra.push((slot as u8 - 1, 4));
            }
            if slot < 4 {
                extra.push((4, slot as u8));
            }
            let sets = [[1, 2, 3, 4], [0, 2, 3, 4], [0, 1, 3, 4], [0, 1, 2, 4]];
            rebuild(tri, m, &[(tet, [0, 1, 2, 3])], &sets, &extra)
        }
        Move::FourOne { tet, vertex } => {
            if vertex > 3 {
                return Err(bad(m, "vertex out of range"));
            }
            let class = tri.vertices(tet)[vertex];
            let occurrences: usize = (0..n)
                .map(|t| tri.vertices(t).iter().filter(|&&c| c == class).count())
                .sum();
            if occurrences != 4 {
                return Err(bad(m, "vertex does not have degree 4"));
            }
            let mut k0 = [0u8; 4];
            let mut next = 0;
            for (w, slot) in k0.iter_mut().enumerate() {
                if w == vertex {
                    *slot = 4;
                } else {
                    *slot = next;
                    next += 1;
                }
            }
            let mut removed = vec![(tet, k0)];
            for w in (0..4).filter(|&w| w != vertex) {
                let g = tri.gluing(tet, w);
                removed.push((g.tet, across(g, w, k0, 3)));
            }
            rebuild(tri, m, &removed, &[[0, 1, 2, 3]], &[])
        }
    }
}

/// Every move that applies to `tri`, in a deterministic order.
pub fn admissible_moves(tri: &Triangulation) -> Vec<Move> {
    let n = tri.tet_count();
    let mut candidates = Vec::new();
    for tet in 0..n {
        for face in 0..4 {
            let g = tri.gluing(tet, face);
            if (tet, face) < (g.tet, g.face) {
                candidates.push(Move::TwoThree { tet, face });
            }
        }
    }
    let degrees = tri.edge_degrees();
    let mut seen = vec![false; tri.edge_count()];
    for tet in 0..n {
        for (edge, &cls) in tri.edges(tet).iter().enumerate() {
            if degrees[cls] == 3 && !std::mem::replace(&mut seen[cls], true) {
                candidates.push(Move::ThreeTwo { tet, edge });
            }
        }
    }
    let mut vseen = vec![false; tri.vertex_count()];
    for tet in 0..n {
        candidates.extend((0..5).map(|slot| Move::OneFour { tet, slot }));
        for (vertex, &cls) in tri.vertices(tet).iter().enumerate() {
            if !std::mem::replace(&mut vseen[cls], true) {
                candidates.push(Move::FourOne { tet, vertex });
            }
        }
    }
    candidates.retain(|&m| pachner_move(tri, m).is_ok());
    candidates
}

/// A uniformly random admissible move that keeps the tetrahedron count at most
/// `max_tets`, together with its result.
pub fn random_move<R: Rng>(
    tri: &Triangulation,
    rng: &mut R,
    max_tets: usize,
) -> Option<(Move, Triangulation)> {
    let n = tri.tet_count();
    let moves: Vec<Move> = admissible_moves(tri)
        .into_iter()
        .filter(|m| match m {
            Move::TwoThree { .. } => n < max_tets,
            Move::OneFour { .. } => n + 3 <= max_tets,
            _ => true,
        })
        .collect();
    if moves.is_empty() {
        return None;
    }
    let m = moves[rng.gen_range(0..moves.len())];
    Some((m, pachner_move(tri, m).expect("admissible")))
}
