//! Chains of overlapping free polytopes along a reference path.

use std::ops::Add;
use std::time::Instant;

use crate::convexify::{generate_free_polytope, FreePolytope};
use crate::error::{Error, Result};
use crate::flip::QueryFrame;
use crate::geom::{Aabb, Point, PointCloud};

/// Timestamped waypoints.
#[derive(Clone, Debug, PartialEq)]
pub struct ReferencePath<const D: usize> {
    pub waypoints: Vec<Point<D>>,
    /// Seconds, strictly increasing.
    pub times: Vec<f64>,
}

impl<const D: usize> ReferencePath<D> {
    pub fn new(waypoints: Vec<Point<D>>, times: Vec<f64>) -> Result<Self> {
        if waypoints.len() < 2 {
            return Err(Error::InvalidParameter(
                "a path needs at least two waypoints".into(),
            ));
        }
        if waypoints.len() != times.len() {
            return Err(Error::InvalidParameter(
                "one timestamp per waypoint is required".into(),
            ));
        }
        if times.iter().any(|t| !t.is_finite()) || times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParameter(
                "timestamps must be finite and strictly increasing".into(),
            ));
        }
        if let Some(index) = waypoints
            .iter()
            .position(|p| !p.iter().all(|c| c.is_finite()))
        {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { waypoints, times })
    }

    pub fn len(&self) -> usize {
        self.waypoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.waypoints.is_empty()
    }

    pub fn duration(&self) -> f64 {
        self.times[self.times.len() - 1] - self.times[0]
    }
}

/// How each polytope of a corridor is grown.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorridorSettings<const D: usize> {
    /// Workspace limits; every spawn box is clipped to it.
    pub workspace: Option<Aabb<D>>,
    /// Half-width of the box around each spawn point that limits the cloud
    /// and bounds the polytope.
    pub crop_half_width: f64,
    /// Flip radius factor, see [`QueryFrame::auto`].
    pub gamma: f64,
    /// Hard limit on spawned polytopes, as a multiple of the waypoint count.
    pub max_spawns_per_waypoint: usize,
}

impl<const D: usize> Default for CorridorSettings<D> {
    fn default() -> Self {
        Self {
            workspace: None,
            crop_half_width: 10.0,
            gamma: 1.0,
            max_spawns_per_waypoint: 20,
        }
    }
}

impl<const D: usize> CorridorSettings<D> {
    pub fn with_workspace(workspace: Aabb<D>) -> Self {
        Self {
            workspace: Some(workspace),
            ..Self::default()
        }
    }
}

/// Totals over a corridor.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CorridorStats {
    pub polytope_count: usize,
    pub hyperplane_count: usize,
    pub build_time_ms: f64,
}

impl Add for CorridorStats {
    type Output = Self;

    fn add(self, other: Self) -> Self {
        Self {
            polytope_count: self.polytope_count + other.polytope_count,
            hyperplane_count: self.hyperplane_count + other.hyperplane_count,
            build_time_ms: self.build_time_ms + other.build_time_ms,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Corridor<const D: usize> {
    pub polytopes: Vec<FreePolytope<D>>,
    /// Waypoint index being processed when each polytope was spawned.
    pub switch_indices: Vec<usize>,
    /// Query point of each polytope; usually a waypoint.
    pub spawn_points: Vec<Point<D>>,
    pub build_time_ms: f64,
}

impl<const D: usize> Corridor<D> {
    /// Indices of the polytopes containing `x` within `tol`.
    pub fn covering(&self, x: &Point<D>, tol: f64) -> Vec<usize> {
        (0..self.polytopes.len())
            .filter(|&k| self.polytopes[k].contains(x, tol))
            .collect()
    }
}

/// Summed polytope and hyperplane counts plus the build time.
pub fn corridor_stats<const D: usize>(corr: &Corridor<D>) -> CorridorStats {
    CorridorStats {
        polytope_count: corr.polytopes.len(),
        hyperplane_count: corr.polytopes.iter().map(|p| p.hyperplane_count()).sum(),
        build_time_ms: corr.build_time_ms,
    }
}

fn spawn<const D: usize>(
    cloud: &PointCloud<D>,
    query: Point<D>,
    settings: &CorridorSettings<D>,
    waypoint: usize,
) -> Result<FreePolytope<D>> {
    let blocked = |e: Error| match e {
        e @ Error::QueryInsideObstacle { .. } => Error::PathBlocked {
            waypoint,
            source: Box::new(e),
        },
        e => e,
    };
    let mut crop = Aabb::around(&query, settings.crop_half_width)?;
    if let Some(ws) = &settings.workspace {
        crop = crop.intersection(ws).ok_or_else(|| {
            Error::InvalidParameter(format!("waypoint {waypoint} is outside the workspace"))
        })?;
    }
    let (local, _) = cloud.crop(&crop);
    let frame = QueryFrame::auto(&local, query, settings.gamma, Some(crop))?;
    generate_free_polytope(&local, &frame).map_err(blocked)
}

/// Walks the path and spawns a new polytope whenever the next waypoint
/// leaves the current one or `time_threshold` seconds have passed since the
/// last spawn.
///
/// A new polytope is grown at the last waypoint still inside the current one.
/// When that waypoint is the current spawn point itself, the new query is
/// placed on the segment towards the outside waypoint, nine tenths of the
/// way to where the segment leaves the current polytope.
pub fn generate_corridor<const D: usize>(
    cloud: &PointCloud<D>,
    path: &ReferencePath<D>,
    settings: &CorridorSettings<D>,
    time_threshold: f64,
) -> Result<Corridor<D>> {
    if !(time_threshold > 0.0) {
        return Err(Error::InvalidParameter(
            "time threshold must be positive".into(),
        ));
    }
    if let Some(ws) = &settings.workspace {
        if let Some(i) = path.waypoints.iter().position(|w| !ws.contains_strictly(w)) {
            return Err(Error::InvalidParameter(format!(
                "waypoint {i} is outside the workspace"
            )));
        }
    }
    let start = Instant::now();
    let limit = settings.max_spawns_per_waypoint.max(1) * path.len();

    let first = spawn(cloud, path.waypoints[0], settings, 0)?;
    let mut corr = Corridor {
        polytopes: vec![first],
        switch_indices: vec![0],
        spawn_points: vec![path.waypoints[0]],
        build_time_ms: 0.0,
    };
    let mut spawn_time = path.times[0];
    // Last point known to be inside the current polytope, and its time.
    let mut anchor = (path.waypoints[0], path.times[0]);

    let mut i = 1;
    while i < path.len() {
        let w = path.waypoints[i];
        let cur = corr.polytopes.last().unwrap();
        let inside = cur.contains(&w, cur.tolerance());
        let timed_out = path.times[i] - spawn_time >= time_threshold;
        if inside && !timed_out {
            anchor = (w, path.times[i]);
            i += 1;
            continue;
        }
        if corr.polytopes.len() >= limit {
            return Err(Error::PathBlocked {
                waypoint: i,
                source: Box::new(Error::InvalidParameter(format!(
                    "gave up after {limit} polytopes"
                ))),
            });
        }
        let (query, time) = if inside {
            (w, path.times[i])
        } else if anchor.0 != *corr.spawn_points.last().unwrap() {
            anchor
        } else {
            let d = w - anchor.0;
            let exit = cur
                .system
                .rows()
                .filter(|(a, _)| a.dot(&d) > 0.0)
                .map(|(a, b)| (b - a.dot(&anchor.0)) / a.dot(&d))
                .fold(f64::INFINITY, f64::min)
                .min(1.0);
            let s = 0.9 * exit;
            (anchor.0 + d * s, anchor.1 + (path.times[i] - anchor.1) * s)
        };
        let poly = spawn(cloud, query, settings, i)?;
        corr.polytopes.push(poly);
        corr.switch_indices.push(i);
        corr.spawn_points.push(query);
        spawn_time = time;
        anchor = (query, time);
        if inside {
            i += 1;
        }
    }
    corr.build_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(corr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::vector;

    fn open_box() -> Aabb<3> {
        Aabb::new(vector![-5.0, -5.0, 0.0], vector![5.0, 5.0, 3.0]).unwrap()
    }

    /// With only the workspace box to flip, a large radius is needed for
    /// every box sample to be visible from the query.
    fn open_settings() -> CorridorSettings<3> {
        CorridorSettings {
            gamma: 100.0,
            ..CorridorSettings::with_workspace(open_box())
        }
    }

    fn straight() -> ReferencePath<3> {
        ReferencePath::new(
            vec![vector![-3.0, 0.0, 1.5], vector![3.0, 0.0, 1.5]],
            vec![0.0, 6.0],
        )
        .unwrap()
    }

    #[test]
    fn single_polytope_covers_an_open_box() {
        let corr = generate_corridor(
            &PointCloud::empty(),
            &straight(),
            &open_settings(),
            f64::INFINITY,
        )
        .unwrap();
        assert_eq!(corr.polytopes.len(), 1);
        assert!((corr.polytopes[0].volume - 300.0).abs() < 1e-6);
    }

    #[test]
    fn time_threshold_forces_spawns() {
        let settings = open_settings();
        let corr = generate_corridor(&PointCloud::empty(), &straight(), &settings, 4.0).unwrap();
        assert_eq!(corr.polytopes.len(), 2);
        assert_eq!(corr.switch_indices, vec![0, 1]);
        assert_eq!(corr.spawn_points[1], vector![3.0, 0.0, 1.5]);
    }

    #[test]
    fn wall_with_a_gap_needs_several_polytopes() {
        // A wall at x = 0 with a window around y = 0.
        let mut pts = Vec::new();
        for j in 0..=40 {
            for k in 0..=12 {
                let (y, z) = (-5.0 + 0.25 * j as f64, 0.25 * k as f64);
                if y.abs() > 1.0 || !(0.5..=2.5).contains(&z) {
                    pts.push(vector![0.0, y, z]);
                }
            }
        }
        let cloud = PointCloud::new(pts).unwrap();
        let path = ReferencePath::new(
            vec![
                vector![-3.0, 3.0, 1.5],
                vector![-1.0, 0.0, 1.5],
                vector![1.0, 0.0, 1.5],
                vector![3.0, -3.0, 1.5],
            ],
            vec![0.0, 1.0, 2.0, 3.0],
        )
        .unwrap();
        let corr = generate_corridor(
            &cloud,
            &path,
            &CorridorSettings::with_workspace(open_box()),
            f64::INFINITY,
        )
        .unwrap();
        assert!(corr.polytopes.len() >= 2);
        for w in &path.waypoints {
            assert!(!corr.covering(w, 1e-9).is_empty());
        }
        for k in 1..corr.polytopes.len() {
            let q = corr.spawn_points[k];
            assert!(corr.polytopes[k - 1].contains(&q, 1e-9));
            assert!(corr.polytopes[k].contains(&q, 1e-9));
        }
        let tol = 1e-7 * 5.0;
        for poly in &corr.polytopes {
            assert!(cloud.iter().all(|p| !poly.system.strictly_contains(p, tol)));
        }
    }

    #[test]
    fn blocked_waypoint_is_reported() {
        let cloud = PointCloud::new(vec![vector![-3.0, 0.0, 1.5], vector![2.0, 2.0, 2.0]]).unwrap();
        let err = generate_corridor(
            &cloud,
            &straight(),
            &CorridorSettings::with_workspace(open_box()),
            1.0,
        )
        .unwrap_err();
        assert!(matches!(err, Error::PathBlocked { waypoint: 0, .. }));
        assert_eq!(err.exit_code(), 4);
    }

    #[test]
    fn stats_add_up() {
        let settings = open_settings();
        let corr = generate_corridor(
            &PointCloud::<3>::empty(),
            &straight(),
            &settings,
            f64::INFINITY,
        )
        .unwrap();
        let one = corridor_stats(&corr);
        assert_eq!((one.polytope_count, one.hyperplane_count), (1, 6));
        let two = one + one;
        assert_eq!((two.polytope_count, two.hyperplane_count), (2, 12));
    }
}
