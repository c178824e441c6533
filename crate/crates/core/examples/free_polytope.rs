//! Full pipeline on a hollow cuboid scene: star polytope, push step,
//! redundancy removal, emptiness recheck.

use freehull::{build_star, generate_free_polytope, generate_scene, QueryFrame, SceneSpec};
use nalgebra::Vector3;

fn main() -> freehull::Result<()> {
    let scene = generate_scene::<3>(&SceneSpec::cuboid(1))?;
    let frame = QueryFrame::auto(&scene.cloud, Vector3::zeros(), 1.0, None)?;

    let star = build_star(&scene.cloud, &frame)?;
    println!(
        "star: {} vertices, {} facets",
        star.vertices.len(),
        star.facets.len()
    );

    let poly = generate_free_polytope(&scene.cloud, &frame)?;
    let s = &poly.stats;
    println!(
        "polytope: {} half-spaces, {} vertices, volume {:.3} (free region {:.3})",
        poly.hyperplane_count(),
        poly.vertices.len(),
        poly.volume,
        scene.free_volume
    );
    println!(
        "timing: star {:.3} ms, convexify {:.3} ms, total {:.3} ms, {} safety repairs",
        s.star_build_ms, s.convexify_ms, s.total_ms, s.safety_repairs
    );
    for (n, b) in poly.system.rows().take(4) {
        println!("  {:+.4} x {:+.4} y {:+.4} z <= {:.4}", n.x, n.y, n.z, b);
    }
    Ok(())
}
