//! The point-free star-convex polytope around a query point.
//!
//! After flipping, the convex hull of the images is computed. Each hull facet
//! together with the query spans a simplex; back-mapping the facet vertices
//! to their original positions gives a simplex that holds no cloud point in
//! its interior. The union of these simplices is star-shaped about the query.

use crate::error::{Error, Result};
use crate::flip::{flip_points, QueryFrame};
use crate::geom::{convex_hull, plane_through, signed_volume, tolerance, Point, PointCloud};

/// Boundary grid nodes per box axis: 16 per edge in 2D, 8 x 8 per face in 3D.
pub fn default_bbox_samples(dim: usize) -> usize {
    if dim == 2 {
        16
    } else {
        8
    }
}

/// Where a star vertex came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexSource {
    /// Index into the obstacle cloud.
    Cloud(usize),
    /// Index into the injected bounding-box samples.
    BoundingBox(usize),
}

impl VertexSource {
    pub fn is_injected(&self) -> bool {
        matches!(self, VertexSource::BoundingBox(_))
    }
}

#[derive(Clone, Debug)]
pub struct StarPolytope<const D: usize> {
    pub apex: Point<D>,
    pub vertices: Vec<Point<D>>,
    pub vertex_source: Vec<VertexSource>,
    /// Outer boundary facets as indices into `vertices`, oriented outward.
    pub facets: Vec<[usize; D]>,
    /// Points that were beyond `2R` and could not be flipped.
    pub dropped: usize,
    /// `D + 1` bounding planes per apex simplex: `D` sides, then the facet.
    cones: Vec<(Point<D>, f64)>,
    reach: f64,
}

impl<const D: usize> StarPolytope<D> {
    /// A star polytope from explicit parts; every vertex is attributed to the
    /// cloud at its own index.
    pub fn from_parts(
        apex: Point<D>,
        vertices: Vec<Point<D>>,
        facets: Vec<[usize; D]>,
    ) -> Result<Self> {
        let vertex_source = (0..vertices.len()).map(VertexSource::Cloud).collect();
        Self::assemble(apex, vertices, vertex_source, facets, 0)
    }

    fn assemble(
        apex: Point<D>,
        vertices: Vec<Point<D>>,
        vertex_source: Vec<VertexSource>,
        facets: Vec<[usize; D]>,
        dropped: usize,
    ) -> Result<Self> {
        if facets.is_empty() {
            return Err(Error::degenerate("star polytope has no facets"));
        }
        let mut cones = Vec::with_capacity(facets.len() * (D + 1));
        let mut corners = Vec::with_capacity(D);
        for facet in &facets {
            corners.clear();
            corners.extend(facet.iter().map(|&i| vertices[i]));
            if !(signed_volume(&apex, &corners) > 0.0) {
                return Err(Error::degenerate("apex simplex is flat or inverted"));
            }
            for skip in 0..D {
                let mut side: Vec<Point<D>> = Vec::with_capacity(D);
                side.push(apex);
                side.extend((0..D).filter(|&j| j != skip).map(|j| corners[j]));
                let (mut n, mut c) = plane_through(&side)
                    .ok_or_else(|| Error::degenerate("apex simplex side collapsed"))?;
                if n.dot(&corners[skip]) > c {
                    n = -n;
                    c = -c;
                }
                cones.push((n, c));
            }
            cones.push(
                plane_through(&corners).ok_or_else(|| Error::degenerate("star facet collapsed"))?,
            );
        }
        let reach = vertices
            .iter()
            .map(|v| (v - apex).norm())
            .fold(0.0, f64::max);
        Ok(Self {
            apex,
            vertices,
            vertex_source,
            facets,
            dropped,
            cones,
            reach,
        })
    }

    /// Membership in the closed union of apex simplices, each relaxed by
    /// `tol` meters. A negative `tol` asks for strict interior membership.
    pub fn contains(&self, x: &Point<D>, tol: f64) -> bool {
        if (x - self.apex).norm() > self.reach + tol.max(0.0) {
            return false;
        }
        self.cones
            .chunks_exact(D + 1)
            .any(|planes| planes.iter().all(|(n, c)| n.dot(x) <= c + tol))
    }

    /// Indices of the apex simplices whose closed region holds `x`.
    pub fn simplices_containing(&self, x: &Point<D>, tol: f64) -> Vec<usize> {
        self.cones
            .chunks_exact(D + 1)
            .enumerate()
            .filter(|(_, planes)| planes.iter().all(|(n, c)| n.dot(x) <= c + tol))
            .map(|(i, _)| i)
            .collect()
    }

    /// Sum of the apex simplex volumes.
    pub fn volume(&self) -> f64 {
        self.facets
            .iter()
            .map(|f| {
                let corners: Vec<Point<D>> = f.iter().map(|&i| self.vertices[i]).collect();
                signed_volume(&self.apex, &corners)
            })
            .sum()
    }

    /// Coordinate scale of the polytope around its apex.
    pub fn scale(&self) -> f64 {
        self.reach.max(self.apex.amax())
    }
}

/// `star_contains` as a free function.
pub fn star_contains<const D: usize>(star: &StarPolytope<D>, x: &Point<D>, tol: f64) -> bool {
    star.contains(x, tol)
}

/// Builds the star polytope of `cloud` seen from `frame.query`.
///
/// With a bounding box in the frame, regular samples of its boundary are
/// added to the cloud first; star vertices that came from them are marked
/// [`VertexSource::BoundingBox`].
pub fn build_star<const D: usize>(
    cloud: &PointCloud<D>,
    frame: &QueryFrame<D>,
) -> Result<StarPolytope<D>> {
    let injected = frame
        .bbox
        .map(|b| b.boundary_samples(default_bbox_samples(D)))
        .unwrap_or_default();
    let mut points: Vec<Point<D>> = Vec::with_capacity(cloud.len() + injected.len());
    points.extend_from_slice(cloud.points());
    points.extend_from_slice(&injected);

    let flipped = flip_points(&points, frame, None)?;
    let hull = convex_hull(&flipped.points)?;

    let tol = tolerance(2.0 * frame.radius);
    if hull
        .facets
        .iter()
        .any(|f| !(f.offset - f.normal.dot(&frame.query) > tol))
    {
        return Err(Error::NotWrapped);
    }

    let mut slot = vec![usize::MAX; flipped.len()];
    let mut vertices = Vec::with_capacity(hull.vertex_indices.len());
    let mut sources = Vec::with_capacity(hull.vertex_indices.len());
    for (k, &fi) in hull.vertex_indices.iter().enumerate() {
        slot[fi] = k;
        let src = flipped.source_index[fi];
        // The original coordinates are used as-is, not re-derived by unflipping.
        vertices.push(points[src]);
        sources.push(if src < cloud.len() {
            VertexSource::Cloud(src)
        } else {
            VertexSource::BoundingBox(src - cloud.len())
        });
    }
    let facets = hull
        .facets
        .iter()
        .map(|f| std::array::from_fn(|j| slot[f.vertices[j]]))
        .collect();
    StarPolytope::assemble(frame.query, vertices, sources, facets, flipped.dropped)
}
