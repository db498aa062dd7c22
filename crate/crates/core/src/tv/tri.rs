use std::fmt::Write;

use super::TvError;

/// Local edges of a tetrahedron, indexed 0..6.
pub const EDGES: [[usize; 2]; 6] = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];

pub(crate) fn edge_index(u: usize, v: usize) -> usize {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    EDGES
        .iter()
        .position(|e| *e == [u, v])
        .expect("distinct vertices")
}

/// Where a face is glued: target tetrahedron, target face, and the vertex map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gluing {
    pub tet: usize,
    pub face: usize,
    pub perm: [u8; 4],
}

pub(crate) fn inverse(p: [u8; 4]) -> [u8; 4] {
    let mut q = [0u8; 4];
    for (i, &v) in p.iter().enumerate() {
        q[v as usize] = i as u8;
    }
    q
}

fn is_even(p: [u8; 4]) -> bool {
    let mut inv = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 0
}

/// A closed, oriented, branched triangulation. Every gluing preserves the order of the
/// vertices on the face, so each tetrahedron edge u<v carries the orientation u→v
/// consistently across its class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    glue: Vec<[Gluing; 4]>,
    orientation: Vec<i8>,
    edges: Vec<[usize; 6]>,
    edge_count: usize,
    vertices: Vec<[usize; 4]>,
    vertex_count: usize,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }

    /// Class numbers in order of first appearance.
    fn classes(&mut self) -> (Vec<usize>, usize) {
        let n = self.0.len();
        let mut map = vec![usize::MAX; n];
        let mut out = Vec::with_capacity(n);
        let mut count = 0;
        for i in 0..n {
            let r = self.find(i);
            if map[r] == usize::MAX {
                map[r] = count;
                count += 1;
            }
            out.push(map[r]);
        }
        (out, count)
    }
}

impl Triangulation {
    /// Builds and validates a triangulation from per-face gluings. `None` marks an
    /// unglued face, which is rejected.
    pub fn from_gluings(glue: Vec<[Option<Gluing>; 4]>) -> Result<Self, TvError> {
        let n = glue.len();
        if n == 0 {
            return Err(TvError::Empty);
        }
        for (t, faces) in glue.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                let Some(g) = g else { continue };
                if g.tet >= n || g.face > 3 || g.perm[f] as usize != g.face {
                    return Err(TvError::Involution { tet: t, face: f });
                }
                let back = glue[g.tet][g.face];
                if back
                    != Some(Gluing {
                        tet: t,
                        face: f,
                        perm: inverse(g.perm),
                    })
                {
                    return Err(TvError::Involution { tet: t, face: f });
                }
                let mut last = None;
                for v in (0..4).filter(|&v| v != f) {
                    let w = g.perm[v];
                    if last.is_some_and(|l| l > w) {
                        return Err(TvError::NotBranched { tet: t, face: f });
                    }
                    last = Some(w);
                }
            }
        }
        // orientations: every gluing must reverse orientation
        let mut orientation = vec![0i8; n];
        for start in 0..n {
            if orientation[start] != 0 {
                continue;
            }
            orientation[start] = 1;
            let mut stack = vec![start];
            while let Some(t) = stack.pop() {
                for g in glue[t].iter().flatten() {
                    let want = if is_even(g.perm) {
                        -orientation[t]
                    } else {
                        orientation[t]
                    };
                    if orientation[g.tet] == 0 {
                        orientation[g.tet] = want;
                        stack.push(g.tet);
                    } else if orientation[g.tet] != want {
                        return Err(TvError::NonOrientable);
                    }
                }
            }
        }
        let mut full = Vec::with_capacity(n);
        for (t, faces) in glue.iter().enumerate() {
            let mut row = [Gluing {
                tet: 0,
                face: 0,
                perm: [0, 1, 2, 3],
            }; 4];
            for f in 0..4 {
                row[f] = faces[f].ok_or(TvError::Unglued { tet: t, face: f })?;
                if row[f].tet == t && row[f].face == f {
                    return Err(TvError::NonManifold(format!(
                        "face {t}.{f} is glued to itself"
                    )));
                }
            }
            full.push(row);
        }
        let mut ue = UnionFind((0..6 * n).collect());
        let mut uv = UnionFind((0..4 * n).collect());
        for (t, row) in full.iter().enumerate() {
            for (f, g) in row.iter().enumerate() {
                for v in (0..4).filter(|&v| v != f) {
                    uv.union(4 * t + v, 4 * g.tet + g.perm[v] as usize);
                    for w in (v + 1..4).filter(|&w| w != f) {
                        let img = edge_index(g.perm[v] as usize, g.perm[w] as usize);
                        ue.union(6 * t + edge_index(v, w), 6 * g.tet + img);
                    }
                }
            }
        }
        let (ec, edge_count) = ue.classes();
        let (vc, vertex_count) = uv.classes();
        let tri = Triangulation {
            glue: full,
            orientation,
            edges: ec.chunks(6).map(|c| c.try_into().expect("six")).collect(),
            edge_count,
            vertices: vc.chunks(4).map(|c| c.try_into().expect("four")).collect(),
            vertex_count,
        };
        tri.check_manifold()?;
        Ok(tri)
    }

    fn check_manifold(&self) -> Result<(), TvError> {
        // χ = V − E + F − T with F = 2T vanishes exactly when every vertex link is a sphere
        let chi = self.vertex_count as i64 - self.edge_count as i64 + self.tet_count() as i64;
        if chi != 0 {
            return Err(TvError::NonManifold(format!("euler characteristic {chi}")));
        }
        Ok(())
    }

    pub fn tet_count(&self) -> usize {
        self.glue.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn gluing(&self, tet: usize, face: usize) -> Gluing {
        self.glue[tet][face]
    }

    /// +1 or −1; tetrahedron 0 of each connected piece is positive.
    pub fn orientation(&self, tet: usize) -> i8 {
        self.orientation[tet]
    }

    /// Edge classes of the six local edges, in [`EDGES`] order.
    pub fn edges(&self, tet: usize) -> [usize; 6] {
        self.edges[tet]
    }

    pub fn vertices(&self, tet: usize) -> [usize; 4] {
        self.vertices[tet]
    }

    /// Number of tetrahedron edges in each edge class.
    pub fn edge_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.edge_count];
        for e in &self.edges {
            for &c in e {
                d[c] += 1;
            }
        }
        d
    }

    pub(crate) fn raw(&self) -> Vec<[Option<Gluing>; 4]> {
        self.glue.iter().map(|r| r.map(Some)).collect()
    }

    pub fn disjoint_union(&self, other: &Triangulation) -> Triangulation {
        let k = self.tet_count();
        let mut glue = self.raw();
        for row in other.raw() {
            glue.push(row.map(|g| {
                g.map(|g| Gluing {
                    tet: g.tet + k,
                    ..g
                })
            }));
        }
        Triangulation::from_gluings(glue).expect("union of valid triangulations")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("tets: {}\n", self.tet_count());
        for (t, row) in self.glue.iter().enumerate() {
            for (f, g) in row.iter().enumerate() {
                if (t, f) < (g.tet, g.face) {
                    let p: String = g.perm.iter().map(|d| char::from(b'0' + d)).collect();
                    writeln!(s, "glue: {t}.{f} -> {}.{} perm={p}", g.tet, g.face).unwrap();
                }
            }
        }
        s
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> TvError {
    TvError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn tet_face(line: usize, s: &str) -> Result<(usize, usize), TvError> {
    let (t, f) = s
        .trim()
        .split_once('.')
        .ok_or_else(|| syntax(line, format!("expected tet.face, got `{s}`")))?;
    let t = t
        .parse()
        .map_err(|_| syntax(line, format!("bad tetrahedron `{t}`")))?;
    let f: usize = f
        .parse()
        .map_err(|_| syntax(line, format!("bad face `{f}`")))?;
    if f > 3 {
        return Err(syntax(line, format!("face {f} out of range")));
    }
    Ok((t, f))
}

/// Reads `tets: n` and `glue: t.f -> t'.f' perm=abcd` lines. Each face pair is listed
/// once; `#` starts a comment.
pub fn load_triangulation(text: &str) -> Result<Triangulation, TvError> {
    let mut glue: Option<Vec<[Option<Gluing>; 4]>> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        let (key, rest) = l
            .split_once(':')
            .ok_or_else(|| syntax(line, "expected `key: value`"))?;
        match key.trim() {
            "tets" => {
                if glue.is_some() {
                    return Err(syntax(line, "repeated `tets`"));
                }
                let n: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| syntax(line, "bad tetrahedron count"))?;
                glue = Some(vec![[None; 4]; n]);
            }
            "glue" => {
                let g = glue
                    .as_mut()
                    .ok_or_else(|| syntax(line, "`glue` before `tets`"))?;
                let (lhs, rhs) = rest
                    .split_once("->")
                    .ok_or_else(|| syntax(line, "expected `->`"))?;
                let (rhs, perm) = rhs
                    .trim()
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| syntax(line, "missing perm"))?;
                let perm = perm
                    .trim()
                    .strip_prefix("perm=")
                    .ok_or_else(|| syntax(line, "expected `perm=abcd`"))?;
                let digits: Vec<u8> = perm.bytes().map(|b| b.wrapping_sub(b'0')).collect();
                let mut seen = [false; 4];
                if digits.len() != 4
                    || digits
                        .iter()
                        .any(|&d| d > 3 || std::mem::replace(&mut seen[d as usize], true))
                {
                    return Err(syntax(
                        line,
                        format!("`{perm}` is not a permutation of 0123"),
                    ));
                }
                let perm: [u8; 4] = digits.try_into().expect("four");
                let (t, f) = tet_face(line, lhs)?;
                let (t2, f2) = tet_face(line, rhs)?;
                let n = g.len();
                for tt in [t, t2] {
                    if tt >= n {
                        return Err(syntax(line, format!("tetrahedron {tt} out of range")));
                    }
                }
                if g[t][f].is_some() || g[t2][f2].is_some() {
                    return Err(TvError::Involution { tet: t, face: f });
                }
                g[t][f] = Some(Gluing {
                    tet: t2,
                    face: f2,
                    perm,
                });
                g[t2][f2] = Some(Gluing {
                    tet: t,
                    face: f,
                    perm: inverse(perm),
                });
                if (t, f) == (t2, f2) && perm != inverse(perm) {
                    return Err(TvError::Involution { tet: t, face: f });
                }
            }
            other => return Err(syntax(line, format!("unknown key `{other}`"))),
        }
    }
    Triangulation::from_gluings(glue.ok_or(TvError::Empty)?)
}
