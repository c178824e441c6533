use super::{convex_hull, signed_volume, Point};
use crate::error::Result;

/// Volume (area in 2D) of the convex hull of `vertices`, summed over the
/// simplices joining each hull facet to the vertex centroid.
pub fn polytope_volume<const D: usize>(vertices: &[Point<D>]) -> Result<f64> {
    let hull = convex_hull(vertices)?;
    let centroid = hull
        .vertex_indices
        .iter()
        .fold(Point::<D>::zeros(), |acc, &i| acc + vertices[i])
        / hull.vertex_indices.len() as f64;
    let mut corners = Vec::with_capacity(D);
    let mut total = 0.0;
    for f in &hull.facets {
        corners.clear();
        corners.extend(f.vertices.iter().map(|&i| vertices[i]));
        total += signed_volume(&centroid, &corners).abs();
    }
    Ok(total)
}
