use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hull2::hull2;
use super::hull3::hull3;
use super::{check_dim, plane_through, tolerance, Point};
use crate::error::{Error, Result};

/// Why a hull kernel gave up.
#[derive(Debug)]
pub(super) enum Failure {
    /// The input does not span the space; retrying cannot help.
    Degenerate(String),
    /// Round-off broke the hull topology; a joggled retry may succeed.
    Numerical(String),
}

/// Visibility tolerance of the kernels, relative to the input extent.
const EPS_REL: f64 = 1e-11;
/// Joggle magnitudes tried after the exact attempt, relative to the extent.
const JOGGLE_REL: [f64; 5] = [1e-12, 1e-11, 1e-10, 1e-9, 1e-8];

/// One boundary facet: `D` vertex indices into the source points, oriented so
/// `normal` points outward, with `normal . x <= offset` for every hull point.
#[derive(Clone, Debug, PartialEq)]
pub struct Facet<const D: usize> {
    pub vertices: [usize; D],
    pub normal: Point<D>,
    pub offset: f64,
}

/// Convex hull of a point set. Facets are simplicial (segments in 2D,
/// triangles in 3D); coplanar faces are reported as several facets.
#[derive(Clone, Debug)]
pub struct Hull<const D: usize> {
    /// Sorted indices of the points that are hull vertices.
    pub vertex_indices: Vec<usize>,
    pub facets: Vec<Facet<D>>,
}

impl<const D: usize> Hull<D> {
    /// Largest signed distance of `x` outside any facet plane.
    pub fn max_violation(&self, x: &Point<D>) -> f64 {
        self.facets
            .iter()
            .map(|f| f.normal.dot(x) - f.offset)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn contains(&self, x: &Point<D>, tol: f64) -> bool {
        self.facets
            .iter()
            .all(|f| f.normal.dot(x) <= f.offset + tol)
    }
}

/// Quickhull in 2D or 3D.
///
/// The 3D kernel works on coordinates centered at the bounding-box midpoint.
/// When round-off breaks the hull topology the input is joggled by a few
/// increasingly large random perturbations (deterministically seeded) before
/// giving up; facet offsets are then re-fitted against the unperturbed points.
pub fn convex_hull<const D: usize>(points: &[Point<D>]) -> Result<Hull<D>> {
    check_dim::<D>()?;
    if points.len() < D + 1 {
        return Err(Error::degenerate(format!(
            "{} points cannot span {D} dimensions",
            points.len()
        )));
    }
    if points.iter().any(|p| !p.iter().all(|c| c.is_finite())) {
        return Err(Error::degenerate("non-finite coordinate"));
    }

    let mut lo = points[0];
    let mut hi = points[0];
    for p in points {
        lo = lo.inf(p);
        hi = hi.sup(p);
    }
    let center = (lo + hi) * 0.5;
    let extent = (hi - lo).amax();
    let eps = EPS_REL * extent;
    let degenerate_tol = tolerance(extent);

    let facets: Vec<[usize; D]> = match D {
        2 => {
            let pts: Vec<[f64; 2]> = points
                .iter()
                .map(|p| [p[0] - center[0], p[1] - center[1]])
                .collect();
            let ring = hull2(&pts, eps, degenerate_tol).map_err(into_error)?;
            (0..ring.len())
                .map(|k| std::array::from_fn(|j| ring[(k + j) % ring.len()]))
                .collect()
        }
        3 => {
            let pts: Vec<[f64; 3]> = points
                .iter()
                .map(|p| [p[0] - center[0], p[1] - center[1], p[2] - center[2]])
                .collect();
            triangulate_3d(&pts, extent, eps, degenerate_tol)?
                .into_iter()
                .map(|t| std::array::from_fn(|j| t[j]))
                .collect()
        }
        _ => unreachable!(),
    };

    let mut hull_facets = Vec::with_capacity(facets.len());
    for vertices in facets {
        let corners: Vec<Point<D>> = vertices.iter().map(|&i| points[i] - center).collect();
        let (normal, _) = plane_through(&corners)
            .ok_or_else(|| Error::degenerate("hull facet collapsed to lower dimension"))?;
        let offset = vertices
            .iter()
            .map(|&i| normal.dot(&points[i]))
            .fold(f64::NEG_INFINITY, f64::max);
        hull_facets.push(Facet {
            vertices,
            normal,
            offset,
        });
    }

    let mut vertex_indices: Vec<usize> = hull_facets.iter().flat_map(|f| f.vertices).collect();
    vertex_indices.sort_unstable();
    vertex_indices.dedup();
    Ok(Hull {
        vertex_indices,
        facets: hull_facets,
    })
}

fn into_error(f: Failure) -> Error {
    match f {
        Failure::Degenerate(m) => Error::DegenerateInput(m),
        Failure::Numerical(m) => Error::DegenerateInput(format!("hull construction failed: {m}")),
    }
}

fn triangulate_3d(
    pts: &[[f64; 3]],
    extent: f64,
    eps: f64,
    degenerate_tol: f64,
) -> Result<Vec<[usize; 3]>> {
    let mut last = match hull3(pts, eps, degenerate_tol) {
        Ok(tris) => return Ok(tris),
        Err(Failure::Degenerate(m)) => return Err(Error::DegenerateInput(m)),
        Err(e) => e,
    };
    for (attempt, rel) in JOGGLE_REL.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6a6f_6767_6c65 + attempt as u64);
        let amp = rel * extent;
        let joggled: Vec<[f64; 3]> = pts
            .iter()
            .map(|p| std::array::from_fn(|k| p[k] + amp * (2.0 * rng.random::<f64>() - 1.0)))
            .collect();
        match hull3(&joggled, eps.max(amp), degenerate_tol) {
            Ok(tris) => return Ok(tris),
            Err(Failure::Degenerate(m)) => return Err(Error::DegenerateInput(m)),
            Err(e) => last = e,
        }
    }
    Err(into_error(last))
}
