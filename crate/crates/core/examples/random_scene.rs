//! The three benchmark scene shapes, their polytopes and volume ratios.
//!
//! ```text
//! cargo run --example random_scene -- 5
//! ```

use freehull::{
    generate_free_polytope, generate_scene, scene_free_volume_ratio, QueryFrame, SceneSpec,
};
use nalgebra::Vector3;

fn main() -> freehull::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    for spec in SceneSpec::standard_set(seed) {
        let scene = generate_scene::<3>(&spec)?;
        let frame = QueryFrame::auto(&scene.cloud, Vector3::zeros(), 1.0, None)?;
        let poly = generate_free_polytope(&scene.cloud, &frame)?;
        let r = scene_free_volume_ratio(&scene, &poly);
        println!(
            "{:<8} seed {seed}: {} points, volume {:8.3}, ratio {:.3}, {:.1}% of samples consistent, {:.2} ms",
            spec.id(),
            scene.cloud.len(),
            poly.volume,
            r.ratio,
            100.0 * r.consistent_fraction,
            poly.stats.total_ms
        );
    }
    Ok(())
}
