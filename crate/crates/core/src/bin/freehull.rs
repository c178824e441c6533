use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use freehull::bench::{run_benchmark_file, seed_override};
use freehull::io::{
    read_cloud, read_path, read_polytope, read_scene_specs, write_cloud_csv, write_polytope,
    DynCloud, DynPath,
};
use freehull::{
    corridor_stats, generate_corridor, generate_free_polytope, generate_scene, Aabb,
    CorridorSettings, Error, Point, PointCloud, QueryFrame, ReferencePath, Result,
};

#[derive(Parser)]
#[command(
    name = "freehull",
    version,
    about = "Obstacle-free convex polytopes from point clouds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Grow one polytope around a query point.
    Gen {
        #[arg(long)]
        cloud: PathBuf,
        /// Comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        query: String,
        #[arg(long, conflicts_with = "gamma")]
        radius: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        /// Min corner then max corner, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        bbox: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate a scene cloud from a TOML spec.
    Scene {
        #[arg(long)]
        spec: PathBuf,
        /// Which `[[scene]]` entry to use.
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Chain polytopes along a reference path.
    Corridor {
        #[arg(long)]
        cloud: PathBuf,
        #[arg(long)]
        path: PathBuf,
        #[arg(long, default_value_t = f64::INFINITY)]
        time_threshold: f64,
        #[arg(long, allow_hyphen_values = true)]
        bbox: Option<String>,
        #[arg(long, default_value_t = 10.0)]
        crop: f64,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run every scene in a spec file and write a CSV report.
    Bench {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 1)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Count cloud points strictly inside a written polytope.
    Check {
        #[arg(long)]
        cloud: PathBuf,
        #[arg(long)]
        polytope: PathBuf,
        /// Relative tolerance of the strict-interior test.
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
}

fn parse_list(text: &str, what: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|f| {
            f.trim().parse::<f64>().map_err(|_| Error::Parse {
                line: 0,
                message: format!("{what}: '{f}' is not a number"),
            })
        })
        .collect()
}

fn point<const D: usize>(v: &[f64], what: &str) -> Result<Point<D>> {
    if v.len() != D {
        return Err(Error::Parse {
            line: 0,
            message: format!("{what} needs {D} coordinates, got {}", v.len()),
        });
    }
    Ok(Point::<D>::from_column_slice(v))
}

fn bbox<const D: usize>(text: Option<&str>) -> Result<Option<Aabb<D>>> {
    let Some(text) = text else { return Ok(None) };
    let v = parse_list(text, "bbox")?;
    if v.len() != 2 * D {
        return Err(Error::Parse {
            line: 0,
            message: format!("bbox needs {} numbers, got {}", 2 * D, v.len()),
        });
    }
    Ok(Some(Aabb::new(
        point(&v[..D], "bbox")?,
        point(&v[D..], "bbox")?,
    )?))
}

fn gen<const D: usize>(
    cloud: &PointCloud<D>,
    query: &[f64],
    radius: Option<f64>,
    gamma: f64,
    bbox_text: Option<&str>,
    out: &Path,
) -> Result<()> {
    let q = point::<D>(query, "query")?;
    let bbox = bbox::<D>(bbox_text)?;
    let frame = match radius {
        Some(r) => QueryFrame::new(q, r, bbox)?,
        None => QueryFrame::auto(cloud, q, gamma, bbox)?,
    };
    let poly = generate_free_polytope(cloud, &frame)?;
    write_polytope(&poly, out)?;
    println!(
        "{} half-spaces, {} vertices, volume {:.6}, {:.3} ms, {} safety repairs",
        poly.hyperplane_count(),
        poly.vertices.len(),
        poly.volume,
        poly.stats.total_ms,
        poly.stats.safety_repairs
    );
    Ok(())
}

fn corridor<const D: usize>(
    cloud: &PointCloud<D>,
    path: &ReferencePath<D>,
    threshold: f64,
    bbox_text: Option<&str>,
    crop: f64,
    gamma: f64,
    out: &Path,
) -> Result<()> {
    let settings = CorridorSettings {
        workspace: bbox::<D>(bbox_text)?,
        crop_half_width: crop,
        gamma,
        ..CorridorSettings::default()
    };
    let corr = generate_corridor(cloud, path, &settings, threshold)?;
    std::fs::create_dir_all(out)?;
    for (k, poly) in corr.polytopes.iter().enumerate() {
        write_polytope(poly, &out.join(format!("polytope_{k:03}.json")))?;
    }
    let stats = corridor_stats(&corr);
    let summary = serde_json::json!({
        "polytope_count": stats.polytope_count,
        "hyperplane_count": stats.hyperplane_count,
        "build_time_ms": stats.build_time_ms,
        "switch_indices": corr.switch_indices,
        "spawn_points": corr.spawn_points.iter().map(|p| p.as_slice().to_vec()).collect::<Vec<_>>(),
    });
    std::fs::write(
        out.join("corridor.json"),
        serde_json::to_string_pretty(&summary).unwrap(),
    )?;
    println!(
        "{} polytopes, {} half-spaces, {:.1} ms",
        stats.polytope_count, stats.hyperplane_count, stats.build_time_ms
    );
    Ok(())
}

fn check<const D: usize>(cloud: &PointCloud<D>, polytope: &Path, tol_rel: f64) -> Result<usize> {
    let poly = read_polytope::<D>(polytope)?;
    let scale = poly
        .system
        .scale(&poly.interior)
        .max(cloud.scale())
        .max(1.0);
    let inside = cloud
        .iter()
        .filter(|p| poly.system.strictly_contains(p, tol_rel * scale))
        .count();
    println!("{inside} of {} cloud points strictly inside", cloud.len());
    Ok(inside)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen {
            cloud,
            query,
            radius,
            gamma,
            bbox,
            out,
        } => {
            let q = parse_list(&query, "query")?;
            match read_cloud(&cloud, None)? {
                DynCloud::Planar(c) => gen(&c, &q, radius, gamma, bbox.as_deref(), &out)?,
                DynCloud::Spatial(c) => gen(&c, &q, radius, gamma, bbox.as_deref(), &out)?,
            }
        }
        Command::Scene { spec, index, out } => {
            let specs = read_scene_specs(&spec)?;
            let mut spec = specs.get(index).cloned().ok_or_else(|| {
                Error::InvalidParameter(format!("spec file has {} scenes", specs.len()))
            })?;
            if let Some(seed) = seed_override()? {
                spec.seed = seed;
            }
            match spec.dim {
                2 => write_cloud_csv(&generate_scene::<2>(&spec)?.cloud, &out)?,
                3 => write_cloud_csv(&generate_scene::<3>(&spec)?.cloud, &out)?,
                d => return Err(Error::UnsupportedDimension(d)),
            }
            println!("{} points written", spec.point_count);
        }
        Command::Corridor {
            cloud,
            path,
            time_threshold,
            bbox,
            crop,
            gamma,
            out,
        } => match (read_cloud(&cloud, None)?, read_path(&path)?) {
            (DynCloud::Planar(c), DynPath::Planar(p)) => {
                corridor(&c, &p, time_threshold, bbox.as_deref(), crop, gamma, &out)?
            }
            (DynCloud::Spatial(c), DynPath::Spatial(p)) => {
                corridor(&c, &p, time_threshold, bbox.as_deref(), crop, gamma, &out)?
            }
            (c, p) => {
                return Err(Error::DimensionMismatch {
                    expected: c.dim(),
                    found: p.dim(),
                })
            }
        },
        Command::Bench {
            spec,
            reps,
            jobs,
            out,
        } => {
            let report = run_benchmark_file(&spec, reps, jobs)?;
            report.write_csv(&out)?;
            println!("{} rows, {} failed", report.rows.len(), report.failures());
        }
        Command::Check {
            cloud,
            polytope,
            tol,
        } => {
            let inside = match read_cloud(&cloud, None)? {
                DynCloud::Planar(c) => check(&c, &polytope, tol)?,
                DynCloud::Spatial(c) => check(&c, &polytope, tol)?,
            };
            if inside > 0 {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
