//! H-representation `A x <= b` with unit rows.
//!
//! Vertex enumeration and redundancy removal both go through polar duality:
//! with the interior point moved to the origin, row `a . x <= b` becomes the
//! dual point `a / (b - a . c)`. Hull vertices of the dual points are exactly
//! the irredundant rows, and each dual hull facet `n . y <= h` is the primal
//! vertex `c + n / h`.

use super::{check_dim, convex_hull, tolerance, Aabb, Hull, Point};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct HalfSpaceSystem<const D: usize> {
    normals: Vec<Point<D>>,
    offsets: Vec<f64>,
}

impl<const D: usize> Default for HalfSpaceSystem<D> {
    fn default() -> Self {
        Self {
            normals: Vec::new(),
            offsets: Vec::new(),
        }
    }
}

impl<const D: usize> HalfSpaceSystem<D> {
    /// Builds a system from arbitrary rows, scaling each to a unit normal.
    pub fn new(rows: impl IntoIterator<Item = (Point<D>, f64)>) -> Result<Self> {
        check_dim::<D>()?;
        let mut system = Self::default();
        for (a, b) in rows {
            system.push(a, b)?;
        }
        Ok(system)
    }

    /// The six (3D) or four (2D) face constraints of a box.
    pub fn from_aabb(bbox: &Aabb<D>) -> Self {
        let mut system = Self::default();
        for k in 0..D {
            let mut n = Point::<D>::zeros();
            n[k] = 1.0;
            system.normals.push(n);
            system.offsets.push(bbox.max[k]);
            system.normals.push(-n);
            system.offsets.push(-bbox.min[k]);
        }
        system
    }

    /// Appends a row after normalizing it.
    pub fn push(&mut self, normal: Point<D>, offset: f64) -> Result<()> {
        let len = normal.norm();
        if !(len > 0.0) || !len.is_finite() || !offset.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "half-space row {:?} <= {offset} is not a finite nonzero constraint",
                normal.as_slice()
            )));
        }
        self.normals.push(normal / len);
        self.offsets.push(offset / len);
        Ok(())
    }

    /// Appends a row verbatim; `normal` is assumed to be unit length.
    pub fn push_raw(&mut self, normal: Point<D>, offset: f64) {
        self.normals.push(normal);
        self.offsets.push(offset);
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn normals(&self) -> &[Point<D>] {
        &self.normals
    }

    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    pub fn rows(&self) -> impl Iterator<Item = (&Point<D>, f64)> + '_ {
        self.normals.iter().zip(self.offsets.iter().copied())
    }

    pub fn set_offset(&mut self, row: usize, offset: f64) {
        self.offsets[row] = offset;
    }

    /// `b - A x`, one entry per row.
    pub fn slacks(&self, x: &Point<D>) -> Vec<f64> {
        self.rows().map(|(a, b)| b - a.dot(x)).collect()
    }

    /// Smallest slack `min_i (b_i - a_i . x)`; positive iff `x` is strictly inside.
    pub fn margin(&self, x: &Point<D>) -> f64 {
        self.rows()
            .map(|(a, b)| b - a.dot(x))
            .fold(f64::INFINITY, f64::min)
    }

    /// True iff `A x <= b + tol` in every row. Boundary points count as inside.
    pub fn contains(&self, x: &Point<D>, tol: f64) -> bool {
        self.rows().all(|(a, b)| a.dot(x) <= b + tol)
    }

    /// True iff `x` is strictly inside every row by more than `tol`.
    pub fn strictly_contains(&self, x: &Point<D>, tol: f64) -> bool {
        self.rows().all(|(a, b)| a.dot(x) < b - tol)
    }

    /// Rows at the given indices, in the given order.
    pub fn select(&self, rows: &[usize]) -> Self {
        Self {
            normals: rows.iter().map(|&i| self.normals[i]).collect(),
            offsets: rows.iter().map(|&i| self.offsets[i]).collect(),
        }
    }

    pub fn extend(&mut self, other: &Self) {
        self.normals.extend_from_slice(&other.normals);
        self.offsets.extend_from_slice(&other.offsets);
    }

    /// Coordinate scale used for tolerances: the largest offset or interior coordinate.
    pub fn scale(&self, interior: &Point<D>) -> f64 {
        self.offsets
            .iter()
            .map(|b| b.abs())
            .fold(interior.amax(), f64::max)
    }

    fn dual(&self, interior: &Point<D>) -> Result<(Hull<D>, Vec<Point<D>>, f64)> {
        check_dim::<D>()?;
        let tol = tolerance(self.scale(interior));
        let margin = self.margin(interior);
        if !(margin > tol) {
            return Err(Error::NotInterior { margin, tol });
        }
        let dual: Vec<Point<D>> = self
            .rows()
            .map(|(a, b)| a / (b - a.dot(interior)))
            .collect();
        let hull = convex_hull(&dual).map_err(|e| match e {
            Error::DegenerateInput(_) => Error::Unbounded,
            other => other,
        })?;
        let dual_scale = dual.iter().map(|d| d.amax()).fold(0.0, f64::max);
        if hull.facets.iter().any(|f| !(f.offset > 1e-12 * dual_scale)) {
            return Err(Error::Unbounded);
        }
        Ok((hull, dual, tol))
    }

    /// All vertices of `{x : A x <= b}`, given a strictly interior point.
    ///
    /// Vertices closer than the tolerance are merged; order follows the dual
    /// hull facets.
    pub fn enumerate_vertices(&self, interior: &Point<D>) -> Result<Vec<Point<D>>> {
        let (hull, _, tol) = self.dual(interior)?;
        let mut vertices: Vec<Point<D>> = Vec::with_capacity(hull.facets.len());
        for f in &hull.facets {
            vertices.push(interior + f.normal / f.offset);
        }
        Ok(dedup_points(vertices, tol))
    }

    /// The same feasible set with every redundant row dropped. Surviving rows
    /// keep their relative order; of exact duplicates the first is kept.
    pub fn remove_redundant(&self, interior: &Point<D>) -> Result<Self> {
        let (hull, dual, _) = self.dual(interior)?;
        let dual_scale = dual.iter().map(|d| d.amax()).fold(0.0, f64::max);
        let same = 1e-12 * dual_scale.max(f64::MIN_POSITIVE);
        let mut keep: Vec<usize> = hull
            .vertex_indices
            .iter()
            .map(|&s| {
                (0..s)
                    .find(|&j| (dual[j] - dual[s]).amax() <= same)
                    .unwrap_or(s)
            })
            .collect();
        keep.sort_unstable();
        keep.dedup();
        Ok(self.select(&keep))
    }

    /// Rigid motion `x -> R x + t` applied to the feasible set.
    pub fn transformed(
        &self,
        rotation: &nalgebra::SMatrix<f64, D, D>,
        translation: &Point<D>,
    ) -> Self {
        let normals: Vec<Point<D>> = self.normals.iter().map(|a| rotation * a).collect();
        let offsets = normals
            .iter()
            .zip(&self.offsets)
            .map(|(a, b)| b + a.dot(translation))
            .collect();
        Self { normals, offsets }
    }
}

/// Merges points closer than `tol` (max-norm), keeping the first of each cluster.
pub(crate) fn dedup_points<const D: usize>(points: Vec<Point<D>>, tol: f64) -> Vec<Point<D>> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a][0].total_cmp(&points[b][0]));
    let mut dropped = vec![false; points.len()];
    for (pos, &i) in order.iter().enumerate() {
        if dropped[i] {
            continue;
        }
        for &j in &order[pos + 1..] {
            if points[j][0] - points[i][0] > tol {
                break;
            }
            if !dropped[j] && (points[j] - points[i]).amax() <= tol {
                // Keep whichever came first in the input.
                if j < i {
                    dropped[i] = true;
                    break;
                }
                dropped[j] = true;
            }
        }
    }
    points
        .into_iter()
        .zip(dropped)
        .filter(|(_, d)| !d)
        .map(|(p, _)| p)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{vector, Vector2, Vector3};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn unit_box3() -> HalfSpaceSystem<3> {
        HalfSpaceSystem::from_aabb(
            &Aabb::new(vector![-1.0, -1.0, -1.0], vector![1.0, 1.0, 1.0]).unwrap(),
        )
    }

    fn unit_box2() -> HalfSpaceSystem<2> {
        HalfSpaceSystem::from_aabb(&Aabb::new(vector![-1.0, -1.0], vector![1.0, 1.0]).unwrap())
    }

    #[test]
    fn contains_conventions() {
        let sys = unit_box3();
        assert!(sys.contains(&Vector3::zeros(), 0.0));
        assert!(!sys.contains(&vector![1.0 + 1e-6, 0.0, 0.0], 1e-9));
        assert!(sys.contains(&vector![1.0, 0.0, 0.0], 1e-9));
    }

    #[test]
    fn rows_are_normalized() {
        let sys = HalfSpaceSystem::new([(vector![3.0, 4.0], 10.0)]).unwrap();
        assert!((sys.normals()[0].norm() - 1.0).abs() < 1e-15);
        assert!((sys.offsets()[0] - 2.0).abs() < 1e-15);
        assert!(HalfSpaceSystem::new([(vector![0.0, 0.0], 1.0)]).is_err());
    }

    #[test]
    fn box_vertices() {
        let mut v2 = unit_box2().enumerate_vertices(&Vector2::zeros()).unwrap();
        v2.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
        assert_eq!(v2.len(), 4);
        for (v, e) in v2
            .iter()
            .zip([[-1.0, -1.0], [-1.0, 1.0], [1.0, -1.0], [1.0, 1.0]])
        {
            assert!((v - Vector2::from(e)).norm() < 1e-12);
        }
        let v3 = unit_box3().enumerate_vertices(&Vector3::zeros()).unwrap();
        assert_eq!(v3.len(), 8);
        for v in v3 {
            assert!(v.iter().all(|c| (c.abs() - 1.0).abs() < 1e-12));
        }
    }

    #[test]
    fn interior_and_boundedness_errors() {
        let sys = unit_box2();
        assert!(matches!(
            sys.enumerate_vertices(&vector![1.0, 0.0]),
            Err(Error::NotInterior { .. })
        ));
        let half_plane_pair =
            HalfSpaceSystem::new([(vector![1.0, 0.0], 1.0), (vector![-1.0, 0.0], 1.0)]).unwrap();
        assert!(matches!(
            half_plane_pair.enumerate_vertices(&Vector2::zeros()),
            Err(Error::Unbounded)
        ));
        let open_wedge = HalfSpaceSystem::new([
            (vector![1.0, 0.0], 1.0),
            (vector![0.0, 1.0], 1.0),
            (vector![-1.0, -1.0], 1.0),
            (vector![1.0, 1.0], 3.0),
        ])
        .unwrap();
        // Bounded triangle plus one slack row: fine.
        assert_eq!(
            open_wedge
                .enumerate_vertices(&Vector2::zeros())
                .unwrap()
                .len(),
            3
        );
        let unbounded = HalfSpaceSystem::new([
            (vector![1.0, 0.0], 1.0),
            (vector![0.0, 1.0], 1.0),
            (vector![1.0, 1.0], 3.0),
        ])
        .unwrap();
        assert!(matches!(
            unbounded.enumerate_vertices(&Vector2::zeros()),
            Err(Error::Unbounded)
        ));
    }

    #[test]
    fn duplicate_and_slack_rows_removed() {
        let mut sys = unit_box2();
        sys.push(vector![1.0, 0.0], 1.0).unwrap();
        sys.push(vector![2.0, 0.0], 4.0).unwrap();
        let reduced = sys.remove_redundant(&Vector2::zeros()).unwrap();
        assert_eq!(reduced, unit_box2());

        let mut sys = unit_box3();
        sys.push(vector![1.0, 0.0, 0.0], 1.0).unwrap();
        sys.push(vector![1.0, 0.0, 0.0], 2.0).unwrap();
        let reduced = sys.remove_redundant(&Vector3::zeros()).unwrap();
        assert_eq!(reduced, unit_box3());
    }

    #[test]
    fn first_duplicate_survives() {
        let mut sys = HalfSpaceSystem::default();
        sys.push(vector![0.0, 1.0], 5.0).unwrap();
        sys.extend(&unit_box2());
        let reduced = sys.remove_redundant(&Vector2::zeros()).unwrap();
        assert_eq!(reduced.len(), 4);
        // Row 0 is slack; the box rows survive in order.
        assert_eq!(reduced, unit_box2());

        let mut sys = unit_box2();
        sys.push(vector![-1.0, 0.0], 1.0).unwrap();
        let reduced = sys.remove_redundant(&Vector2::zeros()).unwrap();
        assert_eq!(reduced, unit_box2());
    }

    /// Tangent planes to the unit sphere at random directions.
    fn tangent_system(m: usize, seed: u64) -> HalfSpaceSystem<3> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut sys = HalfSpaceSystem::default();
        while sys.len() < m {
            let v = Vector3::from_fn(|_, _| rng.random_range(-1.0..1.0));
            if v.norm() > 0.1 && v.norm() <= 1.0 {
                sys.push(v.normalize(), 1.0).unwrap();
            }
        }
        sys
    }

    /// O(m^3) oracle: intersect every triple of planes, keep feasible points.
    fn brute_force_vertices(sys: &HalfSpaceSystem<3>) -> Vec<(Vector3<f64>, Vec<usize>)> {
        let mut out: Vec<(Vector3<f64>, Vec<usize>)> = Vec::new();
        let m = sys.len();
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let a = nalgebra::Matrix3::from_rows(&[
                        sys.normals()[i].transpose(),
                        sys.normals()[j].transpose(),
                        sys.normals()[k].transpose(),
                    ]);
                    let b = vector![sys.offsets()[i], sys.offsets()[j], sys.offsets()[k]];
                    let Some(x) = a.lu().solve(&b) else { continue };
                    if !sys.contains(&x, 1e-9) {
                        continue;
                    }
                    if out.iter().all(|(v, _)| (v - x).norm() > 1e-7) {
                        let tight = (0..m)
                            .filter(|&r| {
                                (sys.offsets()[r] - sys.normals()[r].dot(&x)).abs() <= 1e-9
                            })
                            .collect();
                        out.push((x, tight));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn tangent_planes_match_triple_intersections() {
        let sys = tangent_system(20, 3);
        let fast = sys.enumerate_vertices(&Vector3::zeros()).unwrap();
        let oracle = brute_force_vertices(&sys);
        assert_eq!(fast.len(), oracle.len());
        for (v, _) in &oracle {
            assert!(fast.iter().any(|f| (f - v).norm() < 1e-7));
        }
    }

    #[test]
    fn survivors_are_planes_touched_by_vertices() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut sys = HalfSpaceSystem::<3>::default();
        for _ in 0..30 {
            let v = Vector3::from_fn(|_, _| rng.random_range(-1.0..1.0));
            sys.push(v, rng.random_range(0.5..2.0) * v.norm()).unwrap();
        }
        let reduced = sys.remove_redundant(&Vector3::zeros()).unwrap();
        let mut touched: Vec<usize> = brute_force_vertices(&sys)
            .into_iter()
            .flat_map(|(_, t)| t)
            .collect();
        touched.sort_unstable();
        touched.dedup();
        assert_eq!(reduced, sys.select(&touched));
    }

    #[test]
    fn dedup_keeps_first() {
        let pts = vec![
            vector![1.0, 0.0],
            vector![0.0, 0.0],
            vector![1.0 + 1e-12, 0.0],
        ];
        let out = dedup_points(pts, 1e-9);
        assert_eq!(out, vec![vector![1.0, 0.0], vector![0.0, 0.0]]);
    }
}
