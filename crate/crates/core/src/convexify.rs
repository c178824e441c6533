//! Trimming the star polytope into a convex obstacle-free polytope, and the
//! end-to-end pipeline built on top of it.

use std::time::{Duration, Instant};

use nalgebra::SMatrix;

use crate::error::{Error, Result};
use crate::flip::QueryFrame;
use crate::geom::{
    convex_hull, plane_through, polytope_volume, tolerance, HalfSpaceSystem, Point, PointCloud,
};
use crate::star::{build_star, StarPolytope};

/// Candidate filter for the ray-exit facet search, relative to the star scale.
/// Far looser than the tolerance so no facet within `tol` of a vertex is missed.
const EXIT_SLACK_REL: f64 = 1e-6;

/// Per-facet outcome of the push step.
#[derive(Clone, Debug)]
pub struct ConvexRows<const D: usize> {
    /// One row per facet of the hull of the star vertices, in hull order.
    pub system: HalfSpaceSystem<D>,
    /// The star vertex each row was pushed to.
    pub support: Vec<usize>,
}

/// Side planes of the apex cone over each hull facet, outward.
fn cone_sides<const D: usize>(
    apex: &Point<D>,
    corners: &[Point<D>],
) -> Result<Vec<(Point<D>, f64)>> {
    let mut sides = Vec::with_capacity(D);
    for skip in 0..D {
        let mut pts = Vec::with_capacity(D);
        pts.push(*apex);
        pts.extend((0..D).filter(|&j| j != skip).map(|j| corners[j]));
        let (mut n, mut c) = plane_through(&pts)
            .ok_or_else(|| Error::degenerate("apex lies on a hull facet cone boundary"))?;
        if n.dot(&corners[skip]) > c {
            n = -n;
            c = -c;
        }
        sides.push((n, c));
    }
    Ok(sides)
}

/// Convexifies a star polytope.
///
/// For every facet of the convex hull of the star vertices, the facet plane
/// is pushed inward to the star vertex inside the (closed) simplex spanned by
/// the facet and the apex that lies deepest below it. Ties go to the lowest
/// vertex index.
pub fn modify_to_convex<const D: usize>(star: &StarPolytope<D>) -> Result<HalfSpaceSystem<D>> {
    Ok(modify_to_convex_rows(star)?.system)
}

/// [`modify_to_convex`] that also reports the supporting vertex of each row.
pub fn modify_to_convex_rows<const D: usize>(star: &StarPolytope<D>) -> Result<ConvexRows<D>> {
    let hull = convex_hull(&star.vertices)?;
    let apex = star.apex;
    let scale = star.scale();
    let tol = tolerance(scale);
    let slack = EXIT_SLACK_REL * scale.max(1.0);

    let heights: Vec<f64> = hull
        .facets
        .iter()
        .map(|f| f.offset - f.normal.dot(&apex))
        .collect();
    if heights.iter().any(|&h| !(h > tol)) {
        return Err(Error::degenerate(
            "apex is not inside the hull of the star vertices",
        ));
    }
    let mut sides = Vec::with_capacity(hull.facets.len());
    for f in &hull.facets {
        let corners: Vec<Point<D>> = f.vertices.iter().map(|&i| star.vertices[i]).collect();
        sides.push(cone_sides(&apex, &corners)?);
    }

    // Facet vertices lie on their own plane: depth zero.
    let mut best: Vec<(f64, usize)> = hull
        .facets
        .iter()
        .map(|f| (0.0, *f.vertices.iter().min().unwrap()))
        .collect();
    let mut on_hull = vec![false; star.vertices.len()];
    for &i in &hull.vertex_indices {
        on_hull[i] = true;
    }

    let mut rates = vec![0.0; hull.facets.len()];
    for (k, v) in star.vertices.iter().enumerate() {
        if on_hull[k] {
            continue;
        }
        let u = v - apex;
        // The ray from the apex through v leaves the hull through the facets
        // minimizing h_i / (n_i . u).
        let mut s_min = f64::INFINITY;
        let mut exit = 0;
        for (i, f) in hull.facets.iter().enumerate() {
            let rate = f.normal.dot(&u);
            rates[i] = rate;
            if rate > 0.0 {
                let s = heights[i] / rate;
                if s < s_min {
                    s_min = s;
                    exit = i;
                }
            }
        }
        if !s_min.is_finite() {
            continue;
        }
        let mut assigned = false;
        for i in 0..hull.facets.len() {
            let rate = rates[i];
            if rate <= 0.0 || heights[i] - s_min * rate > slack {
                continue;
            }
            if sides[i].iter().all(|(n, c)| n.dot(v) <= c + tol) {
                assigned = true;
                push_candidate(
                    &mut best[i],
                    hull.facets[i].offset - hull.facets[i].normal.dot(v),
                    k,
                );
            }
        }
        if !assigned {
            push_candidate(
                &mut best[exit],
                hull.facets[exit].offset - hull.facets[exit].normal.dot(v),
                k,
            );
        }
    }

    let mut system = HalfSpaceSystem::default();
    let mut support = Vec::with_capacity(hull.facets.len());
    for (f, &(depth, k)) in hull.facets.iter().zip(&best) {
        system.push(f.normal, f.offset - depth)?;
        support.push(k);
    }
    Ok(ConvexRows { system, support })
}

#[inline]
fn push_candidate(best: &mut (f64, usize), depth: f64, k: usize) {
    if depth > best.0 || (depth == best.0 && k < best.1) {
        *best = (depth, k);
    }
}

/// Timings and counters of one pipeline run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GenerationStats {
    pub star_vertices: usize,
    /// Star vertices that came from injected bounding-box samples.
    pub injected_vertices: usize,
    /// Cloud points beyond `2R` that could not be flipped.
    pub dropped: usize,
    /// Rows tightened after the emptiness recheck found an obstacle inside.
    pub safety_repairs: usize,
    pub star_build_ms: f64,
    /// Push step plus redundancy removal.
    pub convexify_ms: f64,
    pub total_ms: f64,
}

/// A convex obstacle-free polytope around a query point.
#[derive(Clone, Debug, PartialEq)]
pub struct FreePolytope<const D: usize> {
    pub system: HalfSpaceSystem<D>,
    pub vertices: Vec<Point<D>>,
    pub interior: Point<D>,
    pub volume: f64,
    pub stats: GenerationStats,
}

impl<const D: usize> FreePolytope<D> {
    /// Completes a half-space system with its vertices and volume.
    pub fn from_system(system: HalfSpaceSystem<D>, interior: Point<D>) -> Result<Self> {
        let vertices = system.enumerate_vertices(&interior)?;
        let volume = polytope_volume(&vertices)?;
        Ok(Self {
            system,
            vertices,
            interior,
            volume,
            stats: GenerationStats::default(),
        })
    }

    pub fn hyperplane_count(&self) -> usize {
        self.system.len()
    }

    pub fn contains(&self, x: &Point<D>, tol: f64) -> bool {
        self.system.contains(x, tol)
    }

    /// Tolerance matched to the polytope's coordinates.
    pub fn tolerance(&self) -> f64 {
        tolerance(self.system.scale(&self.interior))
    }
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// Star polytope, push step, bounding-box rows, redundancy removal and a
/// final emptiness recheck against the obstacle cloud.
///
/// The recheck tightens, for every obstacle point found strictly inside, the
/// row closest to it among those facing away from the query, so that the row
/// passes through the point. Each tightening counts as one safety repair.
pub fn generate_free_polytope<const D: usize>(
    cloud: &PointCloud<D>,
    frame: &QueryFrame<D>,
) -> Result<FreePolytope<D>> {
    let start = Instant::now();
    let star = build_star(cloud, frame)?;
    let star_done = Instant::now();

    let mut rows = modify_to_convex(&star)?;
    if let Some(bbox) = &frame.bbox {
        rows.extend(&HalfSpaceSystem::from_aabb(bbox));
    }
    let query = frame.query;
    let mut system = rows.remove_redundant(&query)?;
    let convex_done = Instant::now();

    let tol = tolerance(system.scale(&query).max(cloud.scale()));
    let mut repairs = 0;
    for p in cloud.iter() {
        if !system.strictly_contains(p, tol) {
            continue;
        }
        let d = p - query;
        let (row, _) = system
            .rows()
            .enumerate()
            .filter(|(_, (a, _))| a.dot(&d) > 0.0)
            .map(|(i, (a, b))| (i, b - a.dot(p)))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .ok_or(Error::Unbounded)?;
        let offset = system.normals()[row].dot(p);
        system.set_offset(row, offset);
        repairs += 1;
    }
    if repairs > 0 {
        system = system.remove_redundant(&query)?;
    }

    let mut poly = FreePolytope::from_system(system, query)?;
    let end = Instant::now();
    poly.stats = GenerationStats {
        star_vertices: star.vertices.len(),
        injected_vertices: star
            .vertex_source
            .iter()
            .filter(|s| s.is_injected())
            .count(),
        dropped: star.dropped,
        safety_repairs: repairs,
        star_build_ms: ms(star_done - start),
        convexify_ms: ms(convex_done - star_done),
        total_ms: ms(end - start),
    };
    Ok(poly)
}

/// Applies the rigid motion `x -> R x + t`.
pub fn transform_polytope<const D: usize>(
    poly: &FreePolytope<D>,
    rotation: &SMatrix<f64, D, D>,
    translation: &Point<D>,
) -> Result<FreePolytope<D>> {
    let deviation = (rotation.transpose() * rotation - SMatrix::<f64, D, D>::identity()).amax();
    if !(deviation <= 1e-9) {
        return Err(Error::InvalidRotation(deviation));
    }
    Ok(FreePolytope {
        system: poly.system.transformed(rotation, translation),
        vertices: poly
            .vertices
            .iter()
            .map(|v| rotation * v + translation)
            .collect(),
        interior: rotation * poly.interior + translation,
        volume: poly.volume,
        stats: poly.stats.clone(),
    })
}
