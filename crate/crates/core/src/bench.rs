//! Batch runs of the pipeline over seeded scenes, reported as CSV.

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;

use crate::convexify::{generate_free_polytope, FreePolytope};
use crate::error::{Error, Result};
use crate::flip::QueryFrame;
use crate::geom::Point;
use crate::io::read_scene_specs;
use crate::scenes::{generate_scene, scene_free_volume_ratio, SceneSpec};

/// Environment variable that replaces every spec seed when set.
pub const SEED_ENV: &str = "FREEHULL_SEED";

/// Column order of the report.
pub const CSV_HEADER: &str =
    "scene,seed,rep,point_count,volume,volume_ratio,polytope_vertex_count,\
hyperplane_count,star_build_ms,convexify_ms,total_ms,safety_repairs,error";

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BenchRow {
    pub scene: String,
    pub seed: u64,
    pub rep: usize,
    pub point_count: usize,
    pub volume: f64,
    pub volume_ratio: f64,
    pub polytope_vertex_count: usize,
    pub hyperplane_count: usize,
    pub star_build_ms: f64,
    pub convexify_ms: f64,
    pub total_ms: f64,
    pub safety_repairs: usize,
    /// Set when the row's scene or pipeline failed; metrics are then zero.
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BenchReport {
    /// Ordered by spec, then repetition.
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{:.4},{:.4},{:.4},{},{}",
                r.scene,
                r.seed,
                r.rep,
                r.point_count,
                r.volume,
                r.volume_ratio,
                r.polytope_vertex_count,
                r.hyperplane_count,
                r.star_build_ms,
                r.convexify_ms,
                r.total_ms,
                r.safety_repairs,
                r.error.as_deref().unwrap_or("").replace([',', '\n'], ";"),
            );
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }

    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.error.is_some()).count()
    }
}

/// The seed override from [`SEED_ENV`], if set.
pub fn seed_override() -> Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| {
            Error::InvalidParameter(format!("{SEED_ENV}={v} is not an unsigned integer"))
        }),
        Err(_) => Ok(None),
    }
}

fn pipeline<const D: usize>(spec: &SceneSpec) -> Result<(FreePolytope<D>, f64, usize)> {
    let scene = generate_scene::<D>(spec)?;
    let frame = QueryFrame::auto(&scene.cloud, Point::<D>::zeros(), 1.0, None)?;
    let poly = generate_free_polytope(&scene.cloud, &frame)?;
    let ratio = poly.volume / scene.free_volume;
    debug_assert_eq!(ratio, scene_free_volume_ratio(&scene, &poly).ratio);
    Ok((poly, ratio, scene.cloud.len()))
}

fn fill<const D: usize>(row: &mut BenchRow, spec: &SceneSpec) {
    match pipeline::<D>(spec) {
        Ok((poly, ratio, n)) => {
            row.point_count = n;
            row.volume = poly.volume;
            row.volume_ratio = ratio;
            row.polytope_vertex_count = poly.vertices.len();
            row.hyperplane_count = poly.hyperplane_count();
            row.star_build_ms = poly.stats.star_build_ms;
            row.convexify_ms = poly.stats.convexify_ms;
            row.total_ms = poly.stats.total_ms;
            row.safety_repairs = poly.stats.safety_repairs;
        }
        Err(e) => row.error = Some(e.to_string()),
    }
}

/// Runs every spec `reps` times with the query at the scene center, on a
/// pool of `jobs` worker threads. Failing rows carry their error and the
/// batch continues.
pub fn run_benchmark(specs: &[SceneSpec], reps: usize, jobs: usize) -> Result<BenchReport> {
    let tasks: Vec<(usize, usize)> = (0..specs.len())
        .flat_map(|s| (0..reps).map(move |r| (s, r)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let rows = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(s, rep)| {
                let spec = &specs[s];
                let mut row = BenchRow {
                    scene: spec.id().to_string(),
                    seed: spec.seed,
                    rep,
                    ..Default::default()
                };
                match spec.dim {
                    2 => fill::<2>(&mut row, spec),
                    3 => fill::<3>(&mut row, spec),
                    d => row.error = Some(Error::UnsupportedDimension(d).to_string()),
                }
                row
            })
            .collect()
    });
    Ok(BenchReport { rows })
}

/// [`run_benchmark`] over the specs in a TOML file, honoring [`SEED_ENV`].
pub fn run_benchmark_file(spec_file: &Path, reps: usize, jobs: usize) -> Result<BenchReport> {
    let mut specs = read_scene_specs(spec_file)?;
    if let Some(seed) = seed_override()? {
        for s in &mut specs {
            s.seed = seed;
        }
    }
    run_benchmark(&specs, reps, jobs)
}
