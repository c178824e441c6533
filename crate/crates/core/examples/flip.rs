//! Sphere flipping of a small cloud: near points land far away.
//!
//! ```text
//! cargo run --example flip
//! ```

use freehull::{flip, unflip, PointCloud, QueryFrame};
use nalgebra::vector;

fn main() -> freehull::Result<()> {
    let cloud = PointCloud::new(vec![
        vector![1.0, 0.0, 0.0],
        vector![3.0, 0.0, 0.0],
        vector![0.0, 2.0, 0.0],
        vector![0.0, 0.0, -0.5],
    ])?;
    let frame = QueryFrame::auto(&cloud, vector![0.0, 0.0, 0.0], 1.0, None)?;
    println!("radius R = {}", frame.radius);

    let flipped = flip(&cloud, &frame)?;
    for (img, &src) in flipped.points.iter().zip(&flipped.source_index) {
        let p = cloud.points()[src];
        let back = unflip(img, &frame)?;
        println!(
            "|p| = {:.2} -> |p'| = {:.2}   (round trip error {:.1e})",
            p.norm(),
            img.norm(),
            (back - p).norm()
        );
    }
    Ok(())
}
