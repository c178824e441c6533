//! Sphere flipping: the radial inversion `p -> p (2R - |p|) / |p|` about a
//! query point, which maps near points far and far points near.

use crate::error::{Error, Result};
use crate::geom::{check_dim, Aabb, Point, PointCloud};

/// Collision distance below which a cloud point is considered to coincide
/// with the query, relative to the cloud's extent around it.
pub const COLLISION_TOL_REL: f64 = 1e-6;

/// Where and how to flip: query coordinate, flip radius `R` and an optional
/// workspace box.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QueryFrame<const D: usize> {
    pub query: Point<D>,
    pub radius: f64,
    pub bbox: Option<Aabb<D>>,
}

impl<const D: usize> QueryFrame<D> {
    pub fn new(query: Point<D>, radius: f64, bbox: Option<Aabb<D>>) -> Result<Self> {
        check_dim::<D>()?;
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "flip radius must be positive, got {radius}"
            )));
        }
        if !query.iter().all(|c| c.is_finite()) {
            return Err(Error::InvalidParameter(
                "query has a non-finite coordinate".into(),
            ));
        }
        if let Some(b) = &bbox {
            if !b.contains_strictly(&query) {
                return Err(Error::InvalidParameter(
                    "query must lie strictly inside the bounding box".into(),
                ));
            }
        }
        Ok(Self {
            query,
            radius,
            bbox,
        })
    }

    /// A frame whose radius is `gamma` times the distance to the farthest
    /// cloud point or bounding-box corner.
    pub fn auto(
        cloud: &PointCloud<D>,
        query: Point<D>,
        gamma: f64,
        bbox: Option<Aabb<D>>,
    ) -> Result<Self> {
        let corners = bbox.map(|b| b.corners()).unwrap_or_default();
        let all: Vec<Point<D>> = cloud.iter().chain(corners.iter()).copied().collect();
        let radius = auto_radius(&all, &query, gamma)?;
        Self::new(query, radius, bbox)
    }
}

/// `gamma * max_i |p_i - query|`. With `gamma = 1` every point lies inside
/// the closed flip ball; `gamma` must exceed 1/2 so that the farthest point
/// stays inside the open `2R` ball.
pub fn auto_radius<const D: usize>(
    points: &[Point<D>],
    query: &Point<D>,
    gamma: f64,
) -> Result<f64> {
    if !(gamma > 0.5) || !gamma.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "gamma must exceed 0.5, got {gamma}"
        )));
    }
    if points.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let far = points
        .iter()
        .map(|p| (p - query).norm())
        .fold(0.0, f64::max);
    let radius = gamma * far;
    if !(radius > 0.0) {
        return Err(Error::InvalidParameter(
            "every point coincides with the query".into(),
        ));
    }
    Ok(radius)
}

/// Flipped images of the points that could be flipped consistently.
#[derive(Clone, Debug)]
pub struct FlippedCloud<const D: usize> {
    /// Images `p'` in world coordinates.
    pub points: Vec<Point<D>>,
    /// Index of each image's source point.
    pub source_index: Vec<usize>,
    pub frame: QueryFrame<D>,
    /// Points at distance `>= 2R` from the query; they are left out.
    pub dropped: usize,
}

impl<const D: usize> FlippedCloud<D> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[inline]
fn flip_centered<const D: usize>(v: &Point<D>, radius: f64) -> Point<D> {
    let r = v.norm();
    v * ((2.0 * radius - r) / r)
}

/// Flips a single point. `p` must not coincide with the query and must lie
/// within `2R` of it.
pub fn flip_point<const D: usize>(p: &Point<D>, frame: &QueryFrame<D>) -> Result<Point<D>> {
    let v = p - frame.query;
    let r = v.norm();
    if r >= 2.0 * frame.radius {
        return Err(Error::Domain {
            distance: r,
            limit: 2.0 * frame.radius,
        });
    }
    if r == 0.0 {
        return Err(Error::QueryInsideObstacle {
            index: 0,
            distance: 0.0,
        });
    }
    Ok(frame.query + flip_centered(&v, frame.radius))
}

/// Flips a cloud about the frame's query point.
pub fn flip<const D: usize>(
    cloud: &PointCloud<D>,
    frame: &QueryFrame<D>,
) -> Result<FlippedCloud<D>> {
    flip_points(cloud.points(), frame, None)
}

/// Flips raw points. `collision_tol` defaults to [`COLLISION_TOL_REL`] times
/// the largest distance from the query (at least 1 m).
pub fn flip_points<const D: usize>(
    points: &[Point<D>],
    frame: &QueryFrame<D>,
    collision_tol: Option<f64>,
) -> Result<FlippedCloud<D>> {
    if points.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let dists: Vec<f64> = points.iter().map(|p| (p - frame.query).norm()).collect();
    let collision_tol = collision_tol
        .unwrap_or_else(|| COLLISION_TOL_REL * dists.iter().copied().fold(1.0, f64::max));
    let limit = 2.0 * frame.radius;

    let mut out = FlippedCloud {
        points: Vec::with_capacity(points.len()),
        source_index: Vec::with_capacity(points.len()),
        frame: *frame,
        dropped: 0,
    };
    for (i, (p, &r)) in points.iter().zip(&dists).enumerate() {
        if r < collision_tol {
            return Err(Error::QueryInsideObstacle {
                index: i,
                distance: r,
            });
        }
        if r >= limit {
            out.dropped += 1;
            continue;
        }
        let v = p - frame.query;
        out.points.push(frame.query + v * ((limit - r) / r));
        out.source_index.push(i);
    }
    Ok(out)
}

/// Inverse flip. The map is an involution, so this is `p' (2R - |p'|) / |p'|`.
pub fn unflip<const D: usize>(p_prime: &Point<D>, frame: &QueryFrame<D>) -> Result<Point<D>> {
    let v = p_prime - frame.query;
    let r = v.norm();
    let limit = 2.0 * frame.radius;
    if r >= limit {
        return Err(Error::Domain { distance: r, limit });
    }
    if r == 0.0 {
        return Err(Error::Domain { distance: r, limit });
    }
    Ok(frame.query + v * ((limit - r) / r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{vector, Vector3};
    use proptest::prelude::*;

    fn origin_frame(radius: f64) -> QueryFrame<3> {
        QueryFrame::new(Vector3::zeros(), radius, None).unwrap()
    }

    #[test]
    fn fixed_point_on_the_sphere() {
        let f = origin_frame(1.0);
        let p = flip_point(&vector![1.0, 0.0, 0.0], &f).unwrap();
        assert_eq!(p, vector![1.0, 0.0, 0.0]);
        assert_eq!(
            unflip(&vector![1.0, 0.0, 0.0], &f).unwrap(),
            vector![1.0, 0.0, 0.0]
        );
    }

    #[test]
    fn direct_evaluation() {
        let f = origin_frame(1.0);
        let p = flip_point(&vector![0.5, 0.0, 0.0], &f).unwrap();
        assert!((p - vector![1.5, 0.0, 0.0]).norm() < 1e-15);
        let back = unflip(&vector![1.5, 0.0, 0.0], &f).unwrap();
        assert!((back - vector![0.5, 0.0, 0.0]).norm() < 1e-15);

        let shifted = QueryFrame::new(vector![1.0, 1.0, 1.0], 2.0, None).unwrap();
        let p = flip_point(&vector![1.0, 1.0, 2.0], &shifted).unwrap();
        assert!((p - vector![1.0, 1.0, 4.0]).norm() < 1e-15);
    }

    #[test]
    fn far_points_are_dropped_and_near_points_rejected() {
        let f = origin_frame(1.0);
        let cloud = PointCloud::new(vec![
            vector![0.5, 0.0, 0.0],
            vector![2.0, 0.0, 0.0],
            vector![0.0, 3.0, 0.0],
        ])
        .unwrap();
        let out = flip(&cloud, &f).unwrap();
        assert_eq!(out.dropped, 2);
        assert_eq!(out.source_index, vec![0]);

        let blocked =
            PointCloud::new(vec![vector![0.5, 0.0, 0.0], vector![1e-9, 0.0, 0.0]]).unwrap();
        assert!(matches!(
            flip(&blocked, &f),
            Err(Error::QueryInsideObstacle { index: 1, .. })
        ));
        assert!(matches!(
            unflip(&vector![2.0, 0.0, 0.0], &f),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn auto_radius_examples() {
        let q = Vector3::zeros();
        let pts = [vector![1.0, 0.0, 0.0], vector![0.0, -3.0, 0.0]];
        assert_eq!(auto_radius(&pts, &q, 1.0).unwrap(), 3.0);
        let r = auto_radius(&pts, &q, 0.6).unwrap();
        assert!((r - 1.8).abs() < 1e-15);
        // The farthest point stays flippable: 3 < 2R = 3.6.
        let cloud = PointCloud::new(pts.to_vec()).unwrap();
        assert_eq!(
            flip(&cloud, &QueryFrame::new(q, r, None).unwrap())
                .unwrap()
                .dropped,
            0
        );
        assert_eq!(
            auto_radius(&[vector![0.0, 2.0, 0.0]], &q, 1.0).unwrap(),
            2.0
        );
        assert!(matches!(
            auto_radius::<3>(&[], &q, 1.0),
            Err(Error::EmptyCloud)
        ));
        assert!(matches!(
            auto_radius(&pts, &q, 0.5),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn frame_validation() {
        assert!(QueryFrame::new(Vector3::zeros(), 0.0, None).is_err());
        let b = Aabb::new(vector![0.0, 0.0, 0.0], vector![1.0, 1.0, 1.0]).unwrap();
        assert!(QueryFrame::new(vector![0.5, 0.5, 0.5], 1.0, Some(b)).is_ok());
        assert!(QueryFrame::new(vector![1.0, 0.5, 0.5], 1.0, Some(b)).is_err());
    }

    fn arb_point() -> impl Strategy<Value = Vector3<f64>> {
        (-50.0..50.0f64, -50.0..50.0f64, -50.0..50.0f64).prop_map(|(x, y, z)| vector![x, y, z])
    }

    proptest! {
        #[test]
        fn round_trip_and_norm_relation(q in arb_point(), p in arb_point(), gamma in 0.51..4.0f64) {
            let r = (p - q).norm();
            prop_assume!(r > 1e-3);
            let frame = QueryFrame::new(q, gamma * r, None).unwrap();
            let f = flip_point(&p, &frame).unwrap();
            let rf = (f - q).norm();
            prop_assert!((rf + r - 2.0 * frame.radius).abs() <= 1e-9 * 2.0 * frame.radius);
            // Ray preservation.
            prop_assert!((f - q).dot(&(p - q)) > 0.0);
            let back = unflip(&f, &frame).unwrap();
            prop_assert!((back - p).norm() <= 1e-9 * p.amax().max(q.amax()).max(1.0));
        }

        #[test]
        fn closer_points_map_farther(q in arb_point(), dir in arb_point(), a in 0.01..1.0f64, b in 0.01..1.0f64) {
            prop_assume!(dir.norm() > 1e-3 && (a - b).abs() > 1e-6);
            let u = dir.normalize();
            let frame = QueryFrame::new(q, 1.0, None).unwrap();
            let fa = (flip_point(&(q + u * a), &frame).unwrap() - q).norm();
            let fb = (flip_point(&(q + u * b), &frame).unwrap() - q).norm();
            prop_assert_eq!(a < b, fa > fb);
        }
    }
}
