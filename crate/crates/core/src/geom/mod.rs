//! Dimension-aware (2D/3D) geometric primitives.
//!
//! Points are fixed-size `nalgebra` vectors indexed by a const dimension `D`.
//! Only `D = 2` and `D = 3` are supported; constructors reject anything else.

mod halfspace;
mod hull;
mod hull2;
mod hull3;
mod simplex;
mod volume;

pub use halfspace::HalfSpaceSystem;
pub use hull::{convex_hull, Facet, Hull};
pub use simplex::{plane_through, signed_volume};
pub use volume::polytope_volume;

use nalgebra::SVector;

use crate::error::{Error, Result};

/// A point (or vector) in `D`-dimensional space, in meters.
pub type Point<const D: usize> = SVector<f64, D>;

/// Relative tolerance shared by every predicate in the crate.
pub const TOL_REL: f64 = 1e-9;

/// Absolute tolerance for a problem of the given coordinate scale.
pub fn tolerance(scale: f64) -> f64 {
    TOL_REL * scale.max(1.0)
}

pub(crate) fn check_dim<const D: usize>() -> Result<()> {
    if D == 2 || D == 3 {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(D))
    }
}

/// Largest absolute coordinate over a point set.
pub fn coordinate_scale<'a, const D: usize>(points: impl IntoIterator<Item = &'a Point<D>>) -> f64 {
    points.into_iter().map(|p| p.amax()).fold(0.0, f64::max)
}

/// An unordered set of obstacle samples. Indices are stable identities.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud<const D: usize> {
    points: Vec<Point<D>>,
}

impl<const D: usize> PointCloud<D> {
    pub fn new(points: Vec<Point<D>>) -> Result<Self> {
        check_dim::<D>()?;
        if let Some(index) = points.iter().position(|p| !p.iter().all(|c| c.is_finite())) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { points })
    }

    pub fn empty() -> Self {
        Self { points: Vec::new() }
    }

    pub fn points(&self) -> &[Point<D>] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Point<D>> {
        self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point<D>> {
        self.points.iter()
    }

    /// Largest absolute coordinate of any point.
    pub fn scale(&self) -> f64 {
        coordinate_scale(&self.points)
    }

    /// Points inside the closed box, together with their original indices.
    pub fn crop(&self, bbox: &Aabb<D>) -> (PointCloud<D>, Vec<usize>) {
        let (indices, points): (Vec<usize>, Vec<Point<D>>) = self
            .points
            .iter()
            .enumerate()
            .filter(|(_, p)| bbox.contains(p))
            .map(|(i, p)| (i, *p))
            .unzip();
        (PointCloud { points }, indices)
    }
}

impl<'a, const D: usize> IntoIterator for &'a PointCloud<D> {
    type Item = &'a Point<D>;
    type IntoIter = std::slice::Iter<'a, Point<D>>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// Axis-aligned box given by its min and max corners.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Aabb<const D: usize> {
    pub min: Point<D>,
    pub max: Point<D>,
}

impl<const D: usize> Aabb<D> {
    pub fn new(min: Point<D>, max: Point<D>) -> Result<Self> {
        check_dim::<D>()?;
        if (0..D).any(|k| !(min[k] < max[k]) || !min[k].is_finite() || !max[k].is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "box min {:?} must be strictly below max {:?}",
                min.as_slice(),
                max.as_slice()
            )));
        }
        Ok(Self { min, max })
    }

    /// Box of the given half-width centered on `center`.
    pub fn around(center: &Point<D>, half_width: f64) -> Result<Self> {
        let h = Point::<D>::repeat(half_width);
        Self::new(center - h, center + h)
    }

    pub fn contains(&self, p: &Point<D>) -> bool {
        (0..D).all(|k| p[k] >= self.min[k] && p[k] <= self.max[k])
    }

    pub fn contains_strictly(&self, p: &Point<D>) -> bool {
        (0..D).all(|k| p[k] > self.min[k] && p[k] < self.max[k])
    }

    pub fn intersection(&self, other: &Self) -> Option<Self> {
        let min = self.min.sup(&other.min);
        let max = self.max.inf(&other.max);
        Self::new(min, max).ok()
    }

    pub fn volume(&self) -> f64 {
        (self.max - self.min).product()
    }

    pub fn center(&self) -> Point<D> {
        (self.min + self.max) * 0.5
    }

    /// All `2^D` corners.
    pub fn corners(&self) -> Vec<Point<D>> {
        (0..1usize << D)
            .map(|mask| {
                Point::<D>::from_fn(|k, _| {
                    if mask & (1 << k) != 0 {
                        self.max[k]
                    } else {
                        self.min[k]
                    }
                })
            })
            .collect()
    }

    /// Nodes of a regular grid with `per_side` nodes per axis that lie on
    /// the boundary, corners and edges included, each listed once.
    pub fn boundary_samples(&self, per_side: usize) -> Vec<Point<D>> {
        let n = per_side.max(2);
        let mut out = Vec::new();
        for flat in 0..n.pow(D as u32) {
            let mut rem = flat;
            let idx: [usize; D] = std::array::from_fn(|_| {
                let i = rem % n;
                rem /= n;
                i
            });
            if idx.iter().any(|&i| i == 0 || i == n - 1) {
                out.push(Point::<D>::from_fn(|k, _| {
                    self.min[k] + (self.max[k] - self.min[k]) * idx[k] as f64 / (n - 1) as f64
                }));
            }
        }
        out
    }
}
