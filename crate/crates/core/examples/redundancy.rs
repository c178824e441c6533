//! Redundant half-space removal and vertex enumeration by polar duality.

use freehull::HalfSpaceSystem;
use nalgebra::vector;

fn main() -> freehull::Result<()> {
    // A unit square, a cut through one corner, and two rows that never bind.
    let system = HalfSpaceSystem::new([
        (vector![1.0, 0.0], 1.0),
        (vector![-1.0, 0.0], 1.0),
        (vector![0.0, 1.0], 1.0),
        (vector![0.0, -1.0], 1.0),
        (vector![1.0, 1.0], 1.5),
        (vector![1.0, 0.0], 3.0),
        (vector![-1.0, -1.0], 5.0),
    ])?;
    let interior = vector![0.0, 0.0];
    let reduced = system.remove_redundant(&interior)?;
    println!("{} rows -> {} rows", system.len(), reduced.len());
    for (n, b) in reduced.rows() {
        println!("  {:+.3} x {:+.3} y <= {:.3}", n.x, n.y, b);
    }
    for v in reduced.enumerate_vertices(&interior)? {
        println!("vertex ({:+.3}, {:+.3})", v.x, v.y);
    }
    Ok(())
}
