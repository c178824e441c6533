//! Obstacle-free convex polytopes around query points in 2D and 3D point
//! clouds, grown by sphere flipping and convexified half-space trimming.

// `!(x > y)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod convexify;
pub mod corridor;
pub mod error;
pub mod flip;
pub mod geom;
pub mod io;
pub mod scenes;
pub mod star;

pub use convexify::{
    generate_free_polytope, modify_to_convex, transform_polytope, FreePolytope, GenerationStats,
};
pub use corridor::{
    corridor_stats, generate_corridor, Corridor, CorridorSettings, CorridorStats, ReferencePath,
};
pub use error::{Error, Result};
pub use flip::{auto_radius, flip, unflip, QueryFrame};
pub use geom::{Aabb, HalfSpaceSystem, Point, PointCloud};
pub use scenes::{generate_scene, scene_free_volume_ratio, Scene, SceneSpec};
pub use star::{build_star, star_contains, StarPolytope, VertexSource};
