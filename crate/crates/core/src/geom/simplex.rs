use super::Point;

/// Signed volume of the simplex spanned by `apex` and a facet of `D` points.
///
/// Positive when the facet is oriented with its normal pointing away from
/// `apex` (counter-clockwise edge in 2D, right-hand triangle in 3D).
pub fn signed_volume<const D: usize>(apex: &Point<D>, facet: &[Point<D>]) -> f64 {
    debug_assert_eq!(facet.len(), D);
    match D {
        2 => {
            let a = facet[0] - apex;
            let b = facet[1] - apex;
            0.5 * (a[0] * b[1] - a[1] * b[0])
        }
        3 => {
            let a = facet[0] - apex;
            let b = facet[1] - apex;
            let c = facet[2] - apex;
            let det = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
                + a[2] * (b[0] * c[1] - b[1] * c[0]);
            det / 6.0
        }
        _ => unreachable!("unsupported dimension {D}"),
    }
}

/// Hyperplane through `D` points as `(unit normal, offset)`.
///
/// The normal follows the facet orientation convention of [`signed_volume`]:
/// for a facet oriented outward from some interior point, the normal points
/// away from that point. Returns `None` when the points are (nearly)
/// affinely dependent.
pub fn plane_through<const D: usize>(pts: &[Point<D>]) -> Option<(Point<D>, f64)> {
    debug_assert_eq!(pts.len(), D);
    let mut n = Point::<D>::zeros();
    match D {
        2 => {
            let d = pts[1] - pts[0];
            n[0] = d[1];
            n[1] = -d[0];
        }
        3 => {
            let u = pts[1] - pts[0];
            let v = pts[2] - pts[0];
            n[0] = u[1] * v[2] - u[2] * v[1];
            n[1] = u[2] * v[0] - u[0] * v[2];
            n[2] = u[0] * v[1] - u[1] * v[0];
        }
        _ => unreachable!("unsupported dimension {D}"),
    }
    let len = n.norm();
    let extent = pts.iter().map(|p| (p - pts[0]).norm()).fold(0.0, f64::max);
    if !(len > 1e-14 * extent.powi(D as i32 - 1)) || len == 0.0 {
        return None;
    }
    n /= len;
    let centroid = pts.iter().fold(Point::<D>::zeros(), |acc, p| acc + p) / D as f64;
    Some((n, n.dot(&centroid)))
}
