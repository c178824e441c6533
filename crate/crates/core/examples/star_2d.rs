//! The star-shaped region seen from a query inside a planar point ring.
//!
//! The ring has one dent, so the star has a reflex vertex. Prints the star
//! boundary and a few membership queries.

use freehull::{build_star, PointCloud, QueryFrame};
use nalgebra::vector;

fn main() -> freehull::Result<()> {
    let mut pts = Vec::new();
    for k in 0..12 {
        let a = std::f64::consts::TAU * k as f64 / 12.0;
        let r = if k == 3 { 0.8 } else { 2.0 };
        pts.push(vector![r * a.cos(), r * a.sin()]);
    }
    let cloud = PointCloud::new(pts)?;
    let frame = QueryFrame::auto(&cloud, vector![0.0, 0.0], 1.0, None)?;
    let star = build_star(&cloud, &frame)?;

    println!(
        "{} vertices, {} facets, area {:.4}",
        star.vertices.len(),
        star.facets.len(),
        star.volume()
    );
    for f in &star.facets {
        let (a, b) = (star.vertices[f[0]], star.vertices[f[1]]);
        println!("  ({:+.3}, {:+.3}) -> ({:+.3}, {:+.3})", a.x, a.y, b.x, b.y);
    }
    for x in [vector![0.5, 0.5], vector![0.0, 1.5], vector![0.0, 2.5]] {
        println!("contains ({}, {}): {}", x.x, x.y, star.contains(&x, 0.0));
    }
    Ok(())
}
