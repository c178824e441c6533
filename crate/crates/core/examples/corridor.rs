//! A chain of overlapping free polytopes along a path through a cluttered map.
//!
//! ```text
//! cargo run --example corridor -- 3 120 8.0
//! ```
//! Arguments: map seed, obstacle count, time threshold in seconds.

use freehull::scenes::corridor_map;
use freehull::{corridor_stats, generate_corridor, CorridorSettings};

fn main() -> freehull::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    let obstacles = args.next().and_then(|s| s.parse().ok()).unwrap_or(120);
    let threshold = args
        .next()
        .and_then(|s| s.parse().ok())
        .unwrap_or(f64::INFINITY);

    let map = corridor_map(seed, obstacles);
    println!(
        "{} obstacles, {} points, {} waypoints",
        map.obstacle_count,
        map.cloud.len(),
        map.path.len()
    );
    let settings = CorridorSettings::with_workspace(map.workspace);
    let corr = generate_corridor(&map.cloud, &map.path, &settings, threshold)?;
    for (k, (poly, s)) in corr.polytopes.iter().zip(&corr.spawn_points).enumerate() {
        println!(
            "  #{k:<2} waypoint {:>2}  at ({:6.2}, {:6.2}, {:4.2})  {:2} half-spaces  {:7.2} m^3",
            corr.switch_indices[k],
            s.x,
            s.y,
            s.z,
            poly.hyperplane_count(),
            poly.volume
        );
    }
    let st = corridor_stats(&corr);
    println!(
        "{} polytopes, {} half-spaces, {:.1} ms",
        st.polytope_count, st.hyperplane_count, st.build_time_ms
    );
    Ok(())
}
