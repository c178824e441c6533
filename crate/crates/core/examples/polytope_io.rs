//! Writes a polytope as JSON with a PLY mesh next to it, reads it back, and
//! checks a cloud against it.

use freehull::io::{mesh_path, read_polytope, write_polytope};
use freehull::{generate_free_polytope, generate_scene, QueryFrame, SceneSpec};
use nalgebra::Vector3;

fn main() -> freehull::Result<()> {
    let scene = generate_scene::<3>(&SceneSpec::cross(2))?;
    let frame = QueryFrame::auto(&scene.cloud, Vector3::zeros(), 1.0, None)?;
    let poly = generate_free_polytope(&scene.cloud, &frame)?;

    let dir = std::env::temp_dir().join("freehull-example");
    std::fs::create_dir_all(&dir)?;
    let file = dir.join("cross.json");
    write_polytope(&poly, &file)?;
    println!(
        "wrote {} and {}",
        file.display(),
        mesh_path(&file).display()
    );

    let back = read_polytope::<3>(&file)?;
    assert_eq!(back.system, poly.system);
    let tol = 1e-7 * back.system.scale(&back.interior);
    let inside = scene
        .cloud
        .iter()
        .filter(|p| back.system.strictly_contains(p, tol))
        .count();
    println!(
        "read back {} rows; {inside} of {} cloud points inside",
        back.hyperplane_count(),
        scene.cloud.len()
    );
    Ok(())
}
