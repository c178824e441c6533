//! Brute-force oracles shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use freehull::geom::plane_through;
use freehull::scenes::SceneRng;
use freehull::{FreePolytope, HalfSpaceSystem, Point, PointCloud, StarPolytope};

/// Uniform direction on the unit sphere (or circle).
pub fn direction<const D: usize>(rng: &mut SceneRng) -> Point<D> {
    loop {
        let v = Point::<D>::from_fn(|_, _| rng.range(-1.0, 1.0));
        let n = v.norm();
        if n > 1e-3 && n <= 1.0 {
            return v / n;
        }
    }
}

/// Cloud points strictly inside the polytope, checked one by one.
pub fn points_inside<const D: usize>(poly: &FreePolytope<D>, cloud: &PointCloud<D>) -> usize {
    let scale = cloud
        .scale()
        .max(poly.system.scale(&poly.interior))
        .max(1.0);
    cloud
        .iter()
        .filter(|p| poly.system.strictly_contains(p, 1e-7 * scale))
        .count()
}

/// Smallest slack of the query over all rows.
pub fn query_margin<const D: usize>(poly: &FreePolytope<D>) -> f64 {
    poly.system.margin(&poly.interior)
}

/// Samples `samples` points of the star by rejection from its bounding box
/// and checks that `steps` points on each apex segment are in the star.
/// Returns the number of failing segments.
pub fn star_segment_failures<const D: usize>(
    star: &StarPolytope<D>,
    rng: &mut SceneRng,
    samples: usize,
    steps: usize,
) -> usize {
    let tol = 1e-9 * star.scale().max(1.0);
    let (mut lo, mut hi) = (star.apex, star.apex);
    for v in &star.vertices {
        lo = lo.inf(v);
        hi = hi.sup(v);
    }
    let (mut taken, mut failures) = (0, 0);
    while taken < samples {
        let x = Point::<D>::from_fn(|k, _| rng.range(lo[k], hi[k]));
        if !star.contains(&x, 0.0) {
            continue;
        }
        taken += 1;
        let bad = (0..=steps).any(|j| {
            let t = j as f64 / steps as f64;
            !star.contains(&(star.apex + (x - star.apex) * t), tol)
        });
        failures += bad as usize;
    }
    failures
}

/// Supporting plane `(unit normal, offset)` of every star facet, oriented
/// away from the apex.
pub fn star_facet_planes<const D: usize>(star: &StarPolytope<D>) -> Vec<(Point<D>, f64)> {
    star.facets
        .iter()
        .map(|f| {
            let pts: Vec<Point<D>> = f.iter().map(|&i| star.vertices[i]).collect();
            let (n, c) = plane_through(&pts).expect("non-degenerate facet");
            let (n, c) = if n.dot(&star.apex) > c {
                (-n, -c)
            } else {
                (n, c)
            };
            let len = n.norm();
            (n / len, c / len)
        })
        .collect()
}

/// True when both row sets describe the same planes, each one matched in
/// the other within `tol` on normal and offset.
pub fn same_planes<const D: usize>(a: &[(Point<D>, f64)], b: &[(Point<D>, f64)], tol: f64) -> bool {
    let covered = |x: &[(Point<D>, f64)], y: &[(Point<D>, f64)]| {
        x.iter().all(|(n, c)| {
            y.iter()
                .any(|(m, d)| (n - m).amax() <= tol && (c - d).abs() <= tol)
        })
    };
    covered(a, b) && covered(b, a)
}

pub fn rows<const D: usize>(system: &HalfSpaceSystem<D>) -> Vec<(Point<D>, f64)> {
    system.rows().map(|(n, c)| (*n, c)).collect()
}

/// Random bounded system around the origin: a box plus `extra` random cuts.
pub fn random_system<const D: usize>(rng: &mut SceneRng, extra: usize) -> HalfSpaceSystem<D> {
    let mut rows = Vec::new();
    for k in 0..D {
        let mut e = Point::<D>::zeros();
        e[k] = 1.0;
        rows.push((e, rng.range(1.0, 3.0)));
        rows.push((-e, rng.range(1.0, 3.0)));
    }
    for _ in 0..extra {
        rows.push((direction::<D>(rng), rng.range(0.5, 3.0)));
    }
    HalfSpaceSystem::new(rows).unwrap()
}

/// Outcome of the redundancy oracle for one system.
#[derive(Debug, Default)]
pub struct RedundancyCheck {
    pub kept: usize,
    pub dropped: usize,
    /// Kept rows whose removal did not enlarge the feasible set.
    pub without_witness: usize,
    /// Dropped rows violated somewhere in the reduced set.
    pub wrongly_dropped: usize,
    pub idempotent: bool,
}

/// For each kept row, removing it must expose a vertex that violates it (or
/// make the set unbounded). Each dropped row must hold at every vertex of the
/// reduced set. Running the removal again must change nothing.
pub fn check_redundancy<const D: usize>(
    system: &HalfSpaceSystem<D>,
    interior: &Point<D>,
) -> RedundancyCheck {
    let reduced = system.remove_redundant(interior).unwrap();
    let tol = 1e-7 * system.scale(interior).max(1.0);
    let verts = reduced.enumerate_vertices(interior).unwrap();
    let reduced_rows = rows(&reduced);
    let mut out = RedundancyCheck {
        kept: reduced.len(),
        dropped: system.len() - reduced.len(),
        idempotent: reduced.remove_redundant(interior).unwrap() == reduced,
        ..Default::default()
    };
    for (n, c) in rows(system) {
        if reduced_rows.contains(&(n, c)) {
            continue;
        }
        if verts.iter().any(|v| n.dot(v) > c + tol) {
            out.wrongly_dropped += 1;
        }
    }
    for (skip, &(n, c)) in reduced_rows.iter().enumerate() {
        let keep: Vec<usize> = (0..reduced.len()).filter(|&i| i != skip).collect();
        let rest = reduced.select(&keep);
        let witness = match rest.enumerate_vertices(interior) {
            Ok(vs) => vs.iter().any(|v| n.dot(v) > c + tol),
            Err(_) => true,
        };
        out.without_witness += !witness as usize;
    }
    out
}

pub fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}
