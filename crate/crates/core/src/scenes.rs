//! Seeded synthetic scenes: uniform points in a cube around a known free
//! region, a simulated spinning-Lidar frame, and a cluttered corridor map.
//!
//! Every generator draws from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`, and converts raw 64-bit outputs to floats by hand
//! (`(x >> 11) * 2^-53`) so that scenes are identical across platforms and
//! library versions.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::convexify::FreePolytope;
use crate::corridor::ReferencePath;
use crate::error::{Error, Result};
use crate::geom::{check_dim, Aabb, Point, PointCloud};

/// Deterministic uniform sampler.
#[derive(Clone, Debug)]
pub struct SceneRng(ChaCha8Rng);

impl SceneRng {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }
}

/// Shape of the obstacle-free region at the cube center.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "lowercase")]
pub enum FreeShape {
    Sphere {
        radius: f64,
    },
    Cuboid {
        half_extents: [f64; 3],
    },
    /// Union of two centered cuboids.
    Cross {
        first: [f64; 3],
        second: [f64; 3],
    },
}

fn in_box<const D: usize>(p: &Point<D>, half: &[f64; 3]) -> bool {
    (0..D).all(|k| p[k].abs() < half[k])
}

fn box_volume(half: &[f64; 3], dim: usize) -> f64 {
    half[..dim].iter().map(|h| 2.0 * h).product()
}

impl FreeShape {
    pub fn name(&self) -> &'static str {
        match self {
            FreeShape::Sphere { .. } => "sphere",
            FreeShape::Cuboid { .. } => "cuboid",
            FreeShape::Cross { .. } => "cross",
        }
    }

    /// Open-set membership; a point on the region's surface is not inside.
    pub fn contains<const D: usize>(&self, p: &Point<D>) -> bool {
        match self {
            FreeShape::Sphere { radius } => p.norm() < *radius,
            FreeShape::Cuboid { half_extents } => in_box(p, half_extents),
            FreeShape::Cross { first, second } => in_box(p, first) || in_box(p, second),
        }
    }

    /// Analytic volume (area in 2D).
    pub fn volume(&self, dim: usize) -> f64 {
        match self {
            FreeShape::Sphere { radius } => {
                if dim == 2 {
                    std::f64::consts::PI * radius * radius
                } else {
                    4.0 / 3.0 * std::f64::consts::PI * radius.powi(3)
                }
            }
            FreeShape::Cuboid { half_extents } => box_volume(half_extents, dim),
            FreeShape::Cross { first, second } => {
                let overlap: [f64; 3] = std::array::from_fn(|k| first[k].min(second[k]));
                box_volume(first, dim) + box_volume(second, dim) - box_volume(&overlap, dim)
            }
        }
    }

    /// Largest coordinate reached by the region.
    fn reach(&self, dim: usize) -> f64 {
        let amax = |h: &[f64; 3]| h[..dim].iter().copied().fold(0.0, f64::max);
        match self {
            FreeShape::Sphere { radius } => *radius,
            FreeShape::Cuboid { half_extents } => amax(half_extents),
            FreeShape::Cross { first, second } => amax(first).max(amax(second)),
        }
    }

    fn params(&self) -> Vec<f64> {
        match self {
            FreeShape::Sphere { radius } => vec![*radius],
            FreeShape::Cuboid { half_extents } => half_extents.to_vec(),
            FreeShape::Cross { first, second } => first.iter().chain(second).copied().collect(),
        }
    }
}

fn default_extent() -> f64 {
    10.0
}

fn default_count() -> usize {
    3600
}

fn default_dim() -> usize {
    3
}

/// A cube of uniform random points with a free region carved out at its center.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SceneSpec {
    /// Label used in reports; defaults to the shape name.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(flatten)]
    pub shape: FreeShape,
    /// Half-width of the sampling cube in meters.
    #[serde(default = "default_extent")]
    pub cube_extent: f64,
    #[serde(default = "default_count")]
    pub point_count: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_dim")]
    pub dim: usize,
}

impl SceneSpec {
    fn with_shape(shape: FreeShape, seed: u64) -> Self {
        Self {
            name: None,
            shape,
            cube_extent: default_extent(),
            point_count: default_count(),
            seed,
            dim: default_dim(),
        }
    }

    /// Ball of radius 2 m in a 20 m cube.
    pub fn sphere(seed: u64) -> Self {
        Self::with_shape(FreeShape::Sphere { radius: 2.0 }, seed)
    }

    /// Box of half-extents (3, 2, 1) m.
    pub fn cuboid(seed: u64) -> Self {
        Self::with_shape(
            FreeShape::Cuboid {
                half_extents: [3.0, 2.0, 1.0],
            },
            seed,
        )
    }

    /// Boxes of half-extents (4, 1, 1) and (1, 4, 1) m.
    pub fn cross(seed: u64) -> Self {
        Self::with_shape(
            FreeShape::Cross {
                first: [4.0, 1.0, 1.0],
                second: [1.0, 4.0, 1.0],
            },
            seed,
        )
    }

    /// The three default shapes for one seed.
    pub fn standard_set(seed: u64) -> [Self; 3] {
        [Self::sphere(seed), Self::cuboid(seed), Self::cross(seed)]
    }

    pub fn id(&self) -> &str {
        self.name.as_deref().unwrap_or(self.shape.name())
    }

    pub fn cube_volume(&self) -> f64 {
        (2.0 * self.cube_extent).powi(self.dim as i32)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim != 2 && self.dim != 3 {
            return Err(Error::UnsupportedDimension(self.dim));
        }
        if self.point_count == 0 {
            return Err(Error::InvalidParameter(
                "point_count must be positive".into(),
            ));
        }
        if !(self.cube_extent > 0.0) || !self.cube_extent.is_finite() {
            return Err(Error::InvalidParameter(
                "cube_extent must be positive".into(),
            ));
        }
        if self
            .shape
            .params()
            .iter()
            .any(|&v| !(v >= 0.0) || !v.is_finite())
        {
            return Err(Error::InvalidParameter(
                "free region sizes must be finite and nonnegative".into(),
            ));
        }
        if !(self.shape.reach(self.dim) < self.cube_extent) {
            return Err(Error::InfeasibleSpec(
                "free region reaches the cube boundary".into(),
            ));
        }
        let fill = self.shape.volume(self.dim) / self.cube_volume();
        if fill >= 0.99 {
            return Err(Error::InfeasibleSpec(format!(
                "free region fills {:.1}% of the cube",
                fill * 100.0
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Scene<const D: usize> {
    pub cloud: PointCloud<D>,
    pub spec: SceneSpec,
    pub free_volume: f64,
}

impl<const D: usize> Scene<D> {
    /// Ground-truth free-region membership.
    pub fn free_contains(&self, p: &Point<D>) -> bool {
        self.spec.shape.contains(p)
    }

    /// The sampling cube.
    pub fn cube(&self) -> Aabb<D> {
        Aabb::around(&Point::<D>::zeros(), self.spec.cube_extent).expect("validated extent")
    }
}

/// Rejection-samples `spec.point_count` uniform points in the cube outside
/// the free region. Equal specs give bitwise equal clouds.
pub fn generate_scene<const D: usize>(spec: &SceneSpec) -> Result<Scene<D>> {
    check_dim::<D>()?;
    if spec.dim != D {
        return Err(Error::DimensionMismatch {
            expected: D,
            found: spec.dim,
        });
    }
    spec.validate()?;
    let mut rng = SceneRng::new(spec.seed);
    let e = spec.cube_extent;
    let mut points = Vec::with_capacity(spec.point_count);
    while points.len() < spec.point_count {
        let p = Point::<D>::from_fn(|_, _| rng.range(-e, e));
        if !spec.shape.contains(&p) {
            points.push(p);
        }
    }
    Ok(Scene {
        cloud: PointCloud::new(points)?,
        spec: spec.clone(),
        free_volume: spec.shape.volume(D),
    })
}

/// Polytope volume relative to the ground-truth free region.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VolumeRatio {
    pub ratio: f64,
    /// Fraction of uniform samples of the polytope that lie inside the free
    /// region or at least as far from the center as the nearest obstacle.
    pub consistent_fraction: f64,
    pub samples: usize,
}

/// Sample count of the consistency diagnostic.
pub const RATIO_SAMPLES: usize = 100_000;

/// `poly.volume / scene.free_volume`, plus a sampled consistency diagnostic.
pub fn scene_free_volume_ratio<const D: usize>(
    scene: &Scene<D>,
    poly: &FreePolytope<D>,
) -> VolumeRatio {
    let ratio = poly.volume / scene.free_volume;
    let shell = scene
        .cloud
        .iter()
        .map(|p| p.norm())
        .fold(f64::INFINITY, f64::min);
    let (mut lo, mut hi) = (poly.vertices[0], poly.vertices[0]);
    for v in &poly.vertices {
        lo = lo.inf(v);
        hi = hi.sup(v);
    }
    let mut rng = SceneRng::new(scene.spec.seed ^ 0x7261_7469_6f00);
    let (mut taken, mut good, mut tries) = (0usize, 0usize, 0usize);
    while taken < RATIO_SAMPLES && tries < 100 * RATIO_SAMPLES {
        tries += 1;
        let x = Point::<D>::from_fn(|k, _| rng.range(lo[k], hi[k]));
        if !poly.system.contains(&x, 0.0) {
            continue;
        }
        taken += 1;
        if scene.free_contains(&x) || x.norm() >= shell {
            good += 1;
        }
    }
    VolumeRatio {
        ratio,
        consistent_fraction: if taken == 0 {
            0.0
        } else {
            good as f64 / taken as f64
        },
        samples: taken,
    }
}

/// A simulated frame from a 16-beam spinning Lidar in a furnished room.
#[derive(Clone, Debug)]
pub struct LidarFrame {
    pub cloud: PointCloud<3>,
    /// The sensor origin.
    pub query: Point<3>,
    /// 20 x 20 x 3 m box around the sensor.
    pub bbox: Aabb<3>,
}

#[derive(Clone, Copy, Debug)]
enum Solid {
    Block {
        min: [f64; 3],
        max: [f64; 3],
    },
    Pillar {
        center: [f64; 2],
        radius: f64,
        z: [f64; 2],
    },
}

impl Solid {
    /// First positive ray parameter hitting the solid from outside.
    fn hit(&self, o: &Point<3>, d: &Point<3>) -> Option<f64> {
        match *self {
            Solid::Block { min, max } => {
                let (mut t0, mut t1) = (0.0f64, f64::INFINITY);
                for k in 0..3 {
                    if d[k].abs() < 1e-15 {
                        if o[k] < min[k] || o[k] > max[k] {
                            return None;
                        }
                        continue;
                    }
                    let (a, b) = ((min[k] - o[k]) / d[k], (max[k] - o[k]) / d[k]);
                    t0 = t0.max(a.min(b));
                    t1 = t1.min(a.max(b));
                }
                (t0 <= t1 && t0 > 0.0).then_some(t0)
            }
            Solid::Pillar { center, radius, z } => {
                let (px, py) = (o[0] - center[0], o[1] - center[1]);
                let a = d[0] * d[0] + d[1] * d[1];
                if a < 1e-15 {
                    return None;
                }
                let b = px * d[0] + py * d[1];
                let c = px * px + py * py - radius * radius;
                let disc = b * b - a * c;
                if disc < 0.0 {
                    return None;
                }
                let t = (-b - disc.sqrt()) / a;
                let h = o[2] + t * d[2];
                (t > 0.0 && h >= z[0] && h <= z[1]).then_some(t)
            }
        }
    }

    fn distance(&self, p: &Point<3>) -> f64 {
        match *self {
            Solid::Block { min, max } => {
                let q = Point::<3>::from_fn(|k, _| p[k].clamp(min[k], max[k]));
                (p - q).norm()
            }
            Solid::Pillar { center, radius, z } => {
                let r = ((p[0] - center[0]).powi(2) + (p[1] - center[1]).powi(2)).sqrt();
                let dr = (r - radius).max(0.0);
                let dz = (z[0] - p[2]).max(p[2] - z[1]).max(0.0);
                (dr * dr + dz * dz).sqrt()
            }
        }
    }
}

/// Lidar beam layout.
pub const LIDAR_BEAMS: usize = 16;
pub const LIDAR_AZIMUTH_STEPS: usize = 1600;

/// Ray-casts a frame: ground at 1 m below the sensor, walls of a 18 x 16 m
/// room, a few boxes and pillars placed by `seed`, 1 cm range noise, and a
/// 20 x 20 x 3 m crop.
pub fn lidar_frame(seed: u64) -> LidarFrame {
    let mut rng = SceneRng::new(seed);
    let query = Point::<3>::zeros();
    let ground = -1.0;
    let (hx, hy, wall_top) = (9.0, 8.0, 2.5);

    let mut solids = Vec::new();
    while solids.len() < 10 {
        let c = [
            rng.range(-hx + 1.0, hx - 1.0),
            rng.range(-hy + 1.0, hy - 1.0),
        ];
        if c[0].hypot(c[1]) < 3.0 {
            continue;
        }
        if solids.len() % 2 == 0 {
            let (sx, sy, top) = (
                rng.range(0.3, 1.0),
                rng.range(0.3, 1.0),
                rng.range(-0.5, 1.5),
            );
            solids.push(Solid::Block {
                min: [c[0] - sx, c[1] - sy, ground],
                max: [c[0] + sx, c[1] + sy, top],
            });
        } else {
            solids.push(Solid::Pillar {
                center: c,
                radius: rng.range(0.15, 0.5),
                z: [ground, wall_top],
            });
        }
    }

    let bbox = Aabb::new(
        Point::<3>::new(-10.0, -10.0, -1.2),
        Point::<3>::new(10.0, 10.0, 1.8),
    )
    .expect("fixed box");
    let mut points = Vec::with_capacity(LIDAR_BEAMS * LIDAR_AZIMUTH_STEPS);
    for beam in 0..LIDAR_BEAMS {
        let elev = (-15.0 + 30.0 * beam as f64 / (LIDAR_BEAMS - 1) as f64).to_radians();
        for step in 0..LIDAR_AZIMUTH_STEPS {
            let az = std::f64::consts::TAU * step as f64 / LIDAR_AZIMUTH_STEPS as f64;
            let d = Point::<3>::new(elev.cos() * az.cos(), elev.cos() * az.sin(), elev.sin());
            let mut t = f64::INFINITY;
            if d[2] < 0.0 {
                t = t.min((ground - query[2]) / d[2]);
            }
            for (k, h) in [(0, hx), (1, hy)] {
                if d[k] != 0.0 {
                    let tw = (h.copysign(d[k]) - query[k]) / d[k];
                    if query[2] + tw * d[2] <= wall_top {
                        t = t.min(tw);
                    }
                }
            }
            for s in &solids {
                if let Some(ts) = s.hit(&query, &d) {
                    t = t.min(ts);
                }
            }
            let noise = rng.range(-0.01, 0.01);
            if t.is_finite() {
                let p = query + d * (t + noise);
                if bbox.contains(&p) {
                    points.push(p);
                }
            }
        }
    }
    LidarFrame {
        cloud: PointCloud::new(points).expect("finite samples"),
        query,
        bbox,
    }
}

/// A 40 x 20 x 5 m map of pillars and boxes with a reference path that keeps
/// clear of every obstacle.
#[derive(Clone, Debug)]
pub struct CorridorMap {
    pub cloud: PointCloud<3>,
    pub path: ReferencePath<3>,
    pub workspace: Aabb<3>,
    pub obstacle_count: usize,
}

/// Clearance kept between the path and any obstacle surface.
pub const PATH_CLEARANCE: f64 = 1.0;
/// Surface sampling pitch of the corridor map obstacles.
pub const SURFACE_PITCH: f64 = 0.25;

fn sample_surface(solid: &Solid, out: &mut Vec<Point<3>>) {
    let steps = |len: f64| ((len / SURFACE_PITCH).ceil() as usize).max(1);
    match *solid {
        Solid::Block { min, max } => {
            for axis in 0..3 {
                let (u, v) = ((axis + 1) % 3, (axis + 2) % 3);
                let (nu, nv) = (steps(max[u] - min[u]), steps(max[v] - min[v]));
                for side in [min[axis], max[axis]] {
                    for i in 0..=nu {
                        for j in 0..=nv {
                            let mut p = Point::<3>::zeros();
                            p[axis] = side;
                            p[u] = min[u] + (max[u] - min[u]) * i as f64 / nu as f64;
                            p[v] = min[v] + (max[v] - min[v]) * j as f64 / nv as f64;
                            out.push(p);
                        }
                    }
                }
            }
        }
        Solid::Pillar { center, radius, z } => {
            let na = steps(std::f64::consts::TAU * radius);
            let nz = steps(z[1] - z[0]);
            for i in 0..na {
                let a = std::f64::consts::TAU * i as f64 / na as f64;
                for j in 0..=nz {
                    out.push(Point::<3>::new(
                        center[0] + radius * a.cos(),
                        center[1] + radius * a.sin(),
                        z[0] + (z[1] - z[0]) * j as f64 / nz as f64,
                    ));
                }
            }
        }
    }
}

/// Builds a seeded corridor map with `obstacles` pillars and boxes.
pub fn corridor_map(seed: u64, obstacles: usize) -> CorridorMap {
    let mut rng = SceneRng::new(seed);
    let workspace = Aabb::new(
        Point::<3>::new(-20.0, -10.0, 0.0),
        Point::<3>::new(20.0, 10.0, 5.0),
    )
    .expect("fixed box");

    let n = 10;
    let waypoints: Vec<Point<3>> = (0..n)
        .map(|i| {
            let x = -17.0 + 34.0 * i as f64 / (n - 1) as f64;
            Point::<3>::new(x, rng.range(-6.0, 6.0), rng.range(1.5, 3.5))
        })
        .collect();
    let mut times = vec![0.0];
    for w in waypoints.windows(2) {
        times.push(times.last().unwrap() + (w[1] - w[0]).norm());
    }
    let path = ReferencePath::new(waypoints, times).expect("increasing times");

    // Dense samples along the path for the clearance test.
    let mut probes = Vec::new();
    for w in path.waypoints.windows(2) {
        let k = ((w[1] - w[0]).norm() / 0.1).ceil() as usize;
        probes.extend((0..=k).map(|j| w[0] + (w[1] - w[0]) * (j as f64 / k as f64)));
    }

    let mut solids = Vec::with_capacity(obstacles);
    let mut attempts = 0;
    while solids.len() < obstacles && attempts < 100 * obstacles {
        attempts += 1;
        let c = [rng.range(-19.5, 19.5), rng.range(-9.5, 9.5)];
        let solid = if rng.unit() < 0.5 {
            Solid::Pillar {
                center: c,
                radius: rng.range(0.2, 0.6),
                z: [0.0, 5.0],
            }
        } else {
            let (sx, sy) = (rng.range(0.3, 1.2), rng.range(0.3, 1.2));
            let (z0, h) = (rng.range(0.0, 3.0), rng.range(0.5, 2.0));
            Solid::Block {
                min: [c[0] - sx, c[1] - sy, z0],
                max: [c[0] + sx, c[1] + sy, (z0 + h).min(5.0)],
            }
        };
        if probes.iter().all(|p| solid.distance(p) >= PATH_CLEARANCE) {
            solids.push(solid);
        }
    }
    let mut points = Vec::new();
    for s in &solids {
        sample_surface(s, &mut points);
    }
    CorridorMap {
        cloud: PointCloud::new(points).expect("finite samples"),
        path,
        workspace,
        obstacle_count: solids.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::HalfSpaceSystem;
    use nalgebra::Vector3;

    #[test]
    fn rng_is_reproducible() {
        let mut a = SceneRng::new(42);
        let mut b = SceneRng::new(42);
        for _ in 0..100 {
            let x = a.unit();
            assert_eq!(x, b.unit());
            assert!((0.0..1.0).contains(&x));
        }
    }

    #[test]
    fn zero_radius_sphere_rejects_nothing() {
        let mut spec = SceneSpec::sphere(1);
        spec.shape = FreeShape::Sphere { radius: 0.0 };
        let scene = generate_scene::<3>(&spec).unwrap();
        let mut rng = SceneRng::new(1);
        for p in scene.cloud.iter() {
            let expected = Vector3::from_fn(|_, _| rng.range(-10.0, 10.0));
            assert_eq!(*p, expected);
        }
    }

    #[test]
    fn sphere_scene_is_empty_inside() {
        let scene = generate_scene::<3>(&SceneSpec::sphere(9)).unwrap();
        assert_eq!(scene.cloud.len(), 3600);
        let closest = scene
            .cloud
            .iter()
            .map(|p| p.norm())
            .fold(f64::INFINITY, f64::min);
        assert!(closest >= 2.0);
        let again = generate_scene::<3>(&SceneSpec::sphere(9)).unwrap();
        assert_eq!(scene.cloud, again.cloud);
    }

    #[test]
    fn cross_volume_matches_monte_carlo() {
        let spec = SceneSpec::cross(0);
        let exact = spec.shape.volume(3);
        assert!((exact - (32.0 + 32.0 - 8.0)).abs() < 1e-12);
        let mut rng = SceneRng::new(77);
        let n = 2_000_000;
        let hits = (0..n)
            .filter(|_| {
                let p = Vector3::from_fn(|_, _| rng.range(-4.0, 4.0));
                spec.shape.contains(&p)
            })
            .count();
        let estimate = 512.0 * hits as f64 / n as f64;
        assert!(
            (estimate - exact).abs() / exact < 0.01,
            "{estimate} vs {exact}"
        );
        let scene = generate_scene::<3>(&spec).unwrap();
        assert!(scene.cloud.iter().all(|p| !spec.shape.contains(p)));
    }

    #[test]
    fn infeasible_and_invalid_specs() {
        let mut spec = SceneSpec::sphere(0);
        spec.shape = FreeShape::Cuboid {
            half_extents: [9.99, 9.99, 9.99],
        };
        assert!(matches!(
            generate_scene::<3>(&spec),
            Err(Error::InfeasibleSpec(_))
        ));
        spec.shape = FreeShape::Sphere { radius: 10.0 };
        assert!(matches!(
            generate_scene::<3>(&spec),
            Err(Error::InfeasibleSpec(_))
        ));
        let spec = SceneSpec::sphere(0);
        assert!(matches!(
            generate_scene::<2>(&spec),
            Err(Error::DimensionMismatch { .. })
        ));
        let mut spec = SceneSpec::sphere(0);
        spec.point_count = 0;
        assert!(generate_scene::<3>(&spec).is_err());
    }

    #[test]
    fn ratio_of_the_ground_truth_box() {
        let spec = SceneSpec::cuboid(4);
        let scene = generate_scene::<3>(&spec).unwrap();
        let half = Vector3::new(3.0, 2.0, 1.0);
        let truth = FreePolytope::from_system(
            HalfSpaceSystem::from_aabb(&Aabb::new(-half, half).unwrap()),
            Vector3::zeros(),
        )
        .unwrap();
        let r = scene_free_volume_ratio(&scene, &truth);
        assert!((r.ratio - 1.0).abs() < 1e-12);
        assert_eq!(r.consistent_fraction, 1.0);
        let halved = FreePolytope::from_system(
            HalfSpaceSystem::from_aabb(&Aabb::new(-half * 0.5, half * 0.5).unwrap()),
            Vector3::zeros(),
        )
        .unwrap();
        assert!((scene_free_volume_ratio(&scene, &halved).ratio - 0.125).abs() < 1e-12);
    }

    #[test]
    fn spec_round_trips_through_toml() {
        let spec = SceneSpec::cross(12);
        let text = toml::to_string(&spec).unwrap();
        let back: SceneSpec = toml::from_str(&text).unwrap();
        assert_eq!(back, spec);
        let minimal: SceneSpec = toml::from_str("shape = \"sphere\"\nradius = 1.5\n").unwrap();
        assert_eq!(minimal.point_count, 3600);
        assert_eq!(minimal.cube_extent, 10.0);
    }

    #[test]
    fn lidar_frame_shape() {
        let frame = lidar_frame(0);
        let n = frame.cloud.len();
        assert!((18_000..26_000).contains(&n), "{n} points");
        assert!(frame.cloud.iter().all(|p| frame.bbox.contains(p)));
        assert!(frame.cloud.iter().all(|p| p.norm() > 1.0));
    }

    #[test]
    fn corridor_map_keeps_the_path_clear() {
        let map = corridor_map(3, 120);
        assert!(map.obstacle_count > 60);
        for w in &map.path.waypoints {
            let nearest = map
                .cloud
                .iter()
                .map(|p| (p - w).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(nearest >= PATH_CLEARANCE - 1e-9);
            assert!(map.workspace.contains_strictly(w));
        }
    }
}
