//! A simulated 16-beam scan of a furnished room. The scan is open above and
//! below, so a bounding box closes the polytope.

use freehull::scenes::lidar_frame;
use freehull::{generate_free_polytope, QueryFrame};

fn main() -> freehull::Result<()> {
    let frame_data = lidar_frame(0);
    let frame = QueryFrame::auto(
        &frame_data.cloud,
        frame_data.query,
        1.0,
        Some(frame_data.bbox),
    )?;
    let poly = generate_free_polytope(&frame_data.cloud, &frame)?;
    let s = &poly.stats;
    println!("{} returns", frame_data.cloud.len());
    println!(
        "star: {} vertices ({} from the box); polytope: {} half-spaces, volume {:.2} m^3",
        s.star_vertices,
        s.injected_vertices,
        poly.hyperplane_count(),
        poly.volume
    );
    println!(
        "{:.2} ms total ({:.2} ms star, {:.2} ms convexify)",
        s.total_ms, s.star_build_ms, s.convexify_ms
    );
    Ok(())
}
