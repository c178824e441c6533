//! Spatial quickhull over triangle faces with explicit adjacency.
//!
//! Faces are kept simplicial. Points closer than `eps` to a face plane are
//! never treated as outside it, so coplanar input points do not become
//! vertices. Topological inconsistencies caused by round-off are reported as
//! [`Failure::Numerical`] so the caller can retry on joggled input.

use super::hull::Failure;

type V3 = [f64; 3];

#[inline]
fn sub(a: V3, b: V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
fn dot(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
fn cross(a: V3, b: V3) -> V3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
fn norm(a: V3) -> f64 {
    dot(a, a).sqrt()
}

const NONE: usize = usize::MAX;

#[derive(Clone, Debug)]
struct Face {
    v: [usize; 3],
    /// Face across edge `v[k] -> v[(k + 1) % 3]`.
    adj: [usize; 3],
    n: V3,
    d: f64,
    outside: Vec<usize>,
    alive: bool,
    /// Epoch in which this face was found visible.
    seen: u32,
}

impl Face {
    #[inline]
    fn dist(&self, p: V3) -> f64 {
        dot(self.n, p) - self.d
    }
}

struct Builder<'a> {
    pts: &'a [V3],
    eps: f64,
    faces: Vec<Face>,
    epoch: u32,
}

fn plane(pts: &[V3], v: [usize; 3]) -> Option<(V3, f64)> {
    let (a, b, c) = (pts[v[0]], pts[v[1]], pts[v[2]]);
    let n = cross(sub(b, a), sub(c, a));
    let len = norm(n);
    if !(len > 0.0) || !len.is_finite() {
        return None;
    }
    let n = [n[0] / len, n[1] / len, n[2] / len];
    let centroid = [
        (a[0] + b[0] + c[0]) / 3.0,
        (a[1] + b[1] + c[1]) / 3.0,
        (a[2] + b[2] + c[2]) / 3.0,
    ];
    Some((n, dot(n, centroid)))
}

impl<'a> Builder<'a> {
    fn new_face(&mut self, v: [usize; 3]) -> Result<usize, Failure> {
        let (n, d) = plane(self.pts, v).ok_or_else(|| Failure::Numerical("sliver face".into()))?;
        self.faces.push(Face {
            v,
            adj: [NONE; 3],
            n,
            d,
            outside: Vec::new(),
            alive: true,
            seen: 0,
        });
        Ok(self.faces.len() - 1)
    }

    fn initial_simplex(&mut self, degenerate_tol: f64) -> Result<[usize; 4], Failure> {
        let pts = self.pts;
        let mut extremes = [0usize; 6];
        for (i, p) in pts.iter().enumerate() {
            for k in 0..3 {
                if p[k] < pts[extremes[2 * k]][k] {
                    extremes[2 * k] = i;
                }
                if p[k] > pts[extremes[2 * k + 1]][k] {
                    extremes[2 * k + 1] = i;
                }
            }
        }
        let (mut i0, mut i1, mut best) = (0, 0, -1.0);
        for a in 0..6 {
            for b in a + 1..6 {
                let d = norm(sub(pts[extremes[a]], pts[extremes[b]]));
                if d > best {
                    best = d;
                    i0 = extremes[a];
                    i1 = extremes[b];
                }
            }
        }
        if best <= degenerate_tol {
            return Err(Failure::Degenerate("all points coincide".into()));
        }

        let axis = sub(pts[i1], pts[i0]);
        let axis_len = norm(axis);
        let (mut i2, mut best) = (0, -1.0);
        for (i, &p) in pts.iter().enumerate() {
            let d = norm(cross(axis, sub(p, pts[i0]))) / axis_len;
            if d > best {
                best = d;
                i2 = i;
            }
        }
        if best <= degenerate_tol {
            return Err(Failure::Degenerate("all points are collinear".into()));
        }

        let n = cross(axis, sub(pts[i2], pts[i0]));
        let n_len = norm(n);
        let (mut i3, mut best, mut signed) = (0, -1.0, 0.0);
        for (i, &p) in pts.iter().enumerate() {
            let d = dot(n, sub(p, pts[i0])) / n_len;
            if d.abs() > best {
                best = d.abs();
                signed = d;
                i3 = i;
            }
        }
        if best <= degenerate_tol {
            return Err(Failure::Degenerate("all points are coplanar".into()));
        }

        // Orient so the apex lies below the base face.
        let (b1, b2) = if signed > 0.0 { (i2, i1) } else { (i1, i2) };
        let tet = [i0, b1, b2, i3];
        let tris = [[i0, b1, b2], [i0, i3, b1], [b1, i3, b2], [b2, i3, i0]];
        for t in tris {
            self.new_face(t)?;
        }
        // Adjacency of the initial tetrahedron by edge matching.
        for f in 0..4 {
            for k in 0..3 {
                let (a, b) = (self.faces[f].v[k], self.faces[f].v[(k + 1) % 3]);
                for g in 0..4 {
                    if g == f {
                        continue;
                    }
                    let w = self.faces[g].v;
                    if (0..3).any(|j| w[j] == b && w[(j + 1) % 3] == a) {
                        self.faces[f].adj[k] = g;
                    }
                }
            }
        }
        if self.faces[..4].iter().any(|f| f.adj.contains(&NONE)) {
            return Err(Failure::Numerical("initial simplex orientation".into()));
        }
        Ok(tet)
    }

    fn assign(&mut self, point: usize, candidates: &[usize]) {
        let p = self.pts[point];
        for &f in candidates {
            if self.faces[f].dist(p) > self.eps {
                self.faces[f].outside.push(point);
                return;
            }
        }
    }

    /// Visible faces from `eye` starting at `start`, plus the horizon as
    /// `(visible face, edge slot)` pairs in boundary order.
    fn horizon(&mut self, eye: V3, start: usize) -> (Vec<usize>, Vec<(usize, usize)>) {
        self.epoch += 1;
        let epoch = self.epoch;
        let mut visible = vec![start];
        let mut horizon = Vec::new();
        self.faces[start].seen = epoch;
        // (face, first edge slot, steps taken, steps total)
        let mut stack = vec![(start, 0usize, 0usize, 3usize)];
        while let Some(top) = stack.last_mut() {
            let (face, base, step, total) = *top;
            if step == total {
                stack.pop();
                continue;
            }
            top.2 += 1;
            let slot = (base + step) % 3;
            let nb = self.faces[face].adj[slot];
            if self.faces[nb].seen == epoch {
                continue;
            }
            if self.faces[nb].dist(eye) > self.eps {
                self.faces[nb].seen = epoch;
                visible.push(nb);
                let back = (0..3).find(|&j| self.faces[nb].adj[j] == face).unwrap_or(0);
                stack.push((nb, back + 1, 0, 2));
            } else {
                horizon.push((face, slot));
            }
        }
        (visible, horizon)
    }

    fn add_point(&mut self, eye_idx: usize, start: usize) -> Result<Vec<usize>, Failure> {
        let eye = self.pts[eye_idx];
        let (visible, horizon) = self.horizon(eye, start);

        // Horizon edges must chain into one simple loop.
        let h = horizon.len();
        if h < 3 {
            return Err(Failure::Numerical("horizon too short".into()));
        }
        let edge = |faces: &[Face], (f, s): (usize, usize)| {
            let v = faces[f].v;
            (v[s], v[(s + 1) % 3])
        };
        for k in 0..h {
            let (_, end) = edge(&self.faces, horizon[k]);
            let (next_start, _) = edge(&self.faces, horizon[(k + 1) % h]);
            if end != next_start {
                return Err(Failure::Numerical("horizon is not a closed loop".into()));
            }
        }
        let mut starts: Vec<usize> = horizon.iter().map(|&e| edge(&self.faces, e).0).collect();
        starts.sort_unstable();
        if starts.windows(2).any(|w| w[0] == w[1]) {
            return Err(Failure::Numerical("horizon pinches at a vertex".into()));
        }

        let first_new = self.faces.len();
        for &(f, s) in &horizon {
            let (a, b) = edge(&self.faces, (f, s));
            let outer = self.faces[f].adj[s];
            let nf = self.new_face([a, b, eye_idx])?;
            self.faces[nf].adj[0] = outer;
            let slot = (0..3)
                .find(|&j| self.faces[outer].adj[j] == f && self.faces[outer].v[j] == b)
                .ok_or_else(|| Failure::Numerical("broken adjacency".into()))?;
            self.faces[outer].adj[slot] = nf;
        }
        for k in 0..h {
            let nf = first_new + k;
            self.faces[nf].adj[1] = first_new + (k + 1) % h;
            self.faces[nf].adj[2] = first_new + (k + h - 1) % h;
        }

        let new_faces: Vec<usize> = (first_new..self.faces.len()).collect();
        let mut orphans = Vec::new();
        for &f in &visible {
            self.faces[f].alive = false;
            orphans.append(&mut self.faces[f].outside);
        }
        for p in orphans {
            if p != eye_idx {
                self.assign(p, &new_faces);
            }
        }
        Ok(new_faces)
    }
}

/// Hull triangles (outward, right-handed) of `pts`.
pub(super) fn hull3(pts: &[V3], eps: f64, degenerate_tol: f64) -> Result<Vec<[usize; 3]>, Failure> {
    let mut b = Builder {
        pts,
        eps,
        faces: Vec::with_capacity(64),
        epoch: 0,
    };
    let tet = b.initial_simplex(degenerate_tol)?;
    let initial: Vec<usize> = (0..4).collect();
    for i in 0..pts.len() {
        if !tet.contains(&i) {
            b.assign(i, &initial);
        }
    }

    let mut pending: Vec<usize> = (0..4).rev().collect();
    while let Some(f) = pending.pop() {
        if !b.faces[f].alive || b.faces[f].outside.is_empty() {
            continue;
        }
        let face = &b.faces[f];
        let mut eye = face.outside[0];
        let mut far = f64::NEG_INFINITY;
        for &p in &face.outside {
            let d = face.dist(pts[p]);
            if d > far {
                far = d;
                eye = p;
            }
        }
        let created = b.add_point(eye, f)?;
        for nf in created.into_iter().rev() {
            if !b.faces[nf].outside.is_empty() {
                pending.push(nf);
            }
        }
    }

    let alive: Vec<&Face> = b.faces.iter().filter(|f| f.alive).collect();
    let mut used: Vec<usize> = alive.iter().flat_map(|f| f.v).collect();
    used.sort_unstable();
    used.dedup();
    let vertex_count = used.len();
    // Euler characteristic of a closed simplicial sphere.
    if alive.len() != 2 * vertex_count - 4 {
        return Err(Failure::Numerical("hull is not a closed sphere".into()));
    }
    // Local convexity across every edge.
    let check = 1e3 * eps;
    for f in &alive {
        for k in 0..3 {
            let g = &b.faces[f.adj[k]];
            if !g.alive {
                return Err(Failure::Numerical("adjacent to a deleted face".into()));
            }
            let apex =
                g.v.iter()
                    .copied()
                    .find(|v| !f.v.contains(v))
                    .ok_or_else(|| Failure::Numerical("duplicate face".into()))?;
            if f.dist(pts[apex]) > check {
                return Err(Failure::Numerical("concave edge".into()));
            }
        }
    }
    Ok(alive.iter().map(|f| f.v).collect())
}
