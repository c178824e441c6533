mod common;

use common::*;
use freehull::geom::convex_hull;
use freehull::scenes::{corridor_map, SceneRng};
use freehull::{
    build_star, corridor_stats, generate_corridor, generate_free_polytope, generate_scene,
    modify_to_convex, Aabb, CorridorSettings, Point, PointCloud, QueryFrame, SceneSpec,
};
use nalgebra::{vector, Vector3};

fn sphere_frame(seed: u64) -> (PointCloud<3>, QueryFrame<3>) {
    let scene = generate_scene::<3>(&SceneSpec::sphere(seed)).unwrap();
    let frame = QueryFrame::auto(&scene.cloud, Vector3::zeros(), 1.0, None).unwrap();
    (scene.cloud, frame)
}

#[test]
fn star_is_empty_and_star_shaped() {
    for seed in 0..3 {
        let (cloud, frame) = sphere_frame(seed);
        let star = build_star(&cloud, &frame).unwrap();
        let tol = 1e-9 * star.scale();
        assert_eq!(cloud.iter().filter(|p| star.contains(p, -tol)).count(), 0);
        let mut rng = SceneRng::new(seed + 100);
        assert_eq!(star_segment_failures(&star, &mut rng, 200, 50), 0);
    }
}

#[test]
fn star_vertices_come_from_the_cloud() {
    let (cloud, frame) = sphere_frame(4);
    let star = build_star(&cloud, &frame).unwrap();
    for (v, src) in star.vertices.iter().zip(&star.vertex_source) {
        let freehull::VertexSource::Cloud(i) = *src else {
            panic!("no box was given");
        };
        assert_eq!(cloud.points()[i], *v);
    }
}

#[test]
fn doubling_the_radius_rarely_loses_vertices() {
    let mut grew = 0;
    for seed in 0..50 {
        let mut rng = SceneRng::new(seed);
        let pts: Vec<Point<3>> = (0..400)
            .map(|_| direction::<3>(&mut rng) * rng.range(1.0, 4.0))
            .collect();
        let cloud = PointCloud::new(pts).unwrap();
        let f1 = QueryFrame::auto(&cloud, Vector3::zeros(), 1.0, None).unwrap();
        let f2 = QueryFrame::new(Vector3::zeros(), 2.0 * f1.radius, None).unwrap();
        let n1 = build_star(&cloud, &f1).unwrap().vertices.len();
        let n2 = build_star(&cloud, &f2).unwrap().vertices.len();
        grew += (n2 >= n1) as usize;
    }
    assert!(grew >= 45, "{grew} of 50");
}

#[test]
fn polytopes_are_empty_convex_and_inside_the_star_hull() {
    for spec in SceneSpec::standard_set(7) {
        let scene = generate_scene::<3>(&spec).unwrap();
        let frame = QueryFrame::auto(&scene.cloud, Vector3::zeros(), 1.0, None).unwrap();
        let poly = generate_free_polytope(&scene.cloud, &frame).unwrap();
        assert_eq!(points_inside(&poly, &scene.cloud), 0, "{}", spec.id());
        assert!(query_margin(&poly) > 0.0);

        let tol = 1e-7 * poly.system.scale(&poly.interior);
        assert!(poly.vertices.iter().all(|v| poly.contains(v, tol)));

        let star = build_star(&scene.cloud, &frame).unwrap();
        let hull = convex_hull(&star.vertices).unwrap();
        assert!(poly.vertices.iter().all(|v| hull.contains(v, tol)));
    }
}

#[test]
fn convex_stars_keep_their_facets() {
    for seed in 0..10 {
        let mut rng = SceneRng::new(seed);
        let radius = rng.range(0.5, 5.0);
        let n = 20 + (rng.unit() * 150.0) as usize;
        let pts: Vec<Point<3>> = (0..n).map(|_| direction::<3>(&mut rng) * radius).collect();
        let cloud = PointCloud::new(pts).unwrap();
        let frame = QueryFrame::auto(&cloud, Vector3::zeros(), 1.0, None).unwrap();
        let star = build_star(&cloud, &frame).unwrap();
        let rows = rows(&modify_to_convex(&star).unwrap());
        assert!(same_planes(
            &rows,
            &star_facet_planes(&star),
            1e-9 * radius.max(1.0)
        ));
    }
}

#[test]
fn redundancy_removal_keeps_only_needed_rows() {
    let mut rng = SceneRng::new(11);
    for _ in 0..5 {
        let system = random_system::<3>(&mut rng, 40);
        let check = check_redundancy(&system, &Vector3::zeros());
        assert!(check.dropped > 0);
        assert_eq!(check.without_witness, 0);
        assert_eq!(check.wrongly_dropped, 0);
        assert!(check.idempotent);
    }
}

#[test]
fn scene_ratio_is_stable_across_seeds() {
    let ratios: Vec<f64> = (0..20)
        .map(|seed| {
            let (cloud, frame) = sphere_frame(seed);
            let poly = generate_free_polytope(&cloud, &frame).unwrap();
            poly.volume / SceneSpec::sphere(seed).shape.volume(3)
        })
        .collect();
    let mean = ratios.iter().sum::<f64>() / 20.0;
    let var = ratios.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / 20.0;
    assert!(var.sqrt() / mean < 0.25);
}

#[test]
fn planar_pipeline() {
    let mut spec = SceneSpec::cross(3);
    spec.dim = 2;
    spec.point_count = 800;
    let scene = generate_scene::<2>(&spec).unwrap();
    let bbox = scene.cube();
    let frame = QueryFrame::auto(&scene.cloud, vector![0.0, 0.0], 1.0, Some(bbox)).unwrap();
    let poly = generate_free_polytope(&scene.cloud, &frame).unwrap();
    assert_eq!(points_inside(&poly, &scene.cloud), 0);
    assert!(query_margin(&poly) > 0.0);
    assert!(poly.volume > 0.0 && poly.volume <= bbox.volume());
}

#[test]
fn cube_corners_and_face_points() {
    // Face centers pushed out slightly so the star is not convex.
    let mut pts: Vec<Point<3>> = Aabb::around(&Vector3::zeros(), 1.0).unwrap().corners();
    for k in 0..3 {
        for s in [-1.2, 1.2] {
            let mut p = Vector3::zeros();
            p[k] = s;
            pts.push(p);
        }
    }
    let cloud = PointCloud::new(pts).unwrap();
    let frame = QueryFrame::auto(&cloud, Vector3::zeros(), 1.0, None).unwrap();
    let poly = generate_free_polytope(&cloud, &frame).unwrap();
    assert_eq!(points_inside(&poly, &cloud), 0);
    assert!(poly.volume >= 8.0 - 1e-9 && poly.volume < 8.0 * 1.2f64.powi(3));
}

#[test]
fn corridors_cover_and_overlap() {
    for seed in 0..3 {
        let map = corridor_map(seed, 120);
        let settings = CorridorSettings::with_workspace(map.workspace);
        let corr = generate_corridor(&map.cloud, &map.path, &settings, f64::INFINITY).unwrap();
        for w in &map.path.waypoints {
            assert!(!corr.covering(w, 1e-9 * 20.0).is_empty());
        }
        for k in 1..corr.polytopes.len() {
            let s = &corr.spawn_points[k];
            for p in &corr.polytopes[k - 1..=k] {
                assert!(p.contains(s, p.tolerance()));
            }
        }
        for p in &corr.polytopes {
            assert_eq!(points_inside(p, &map.cloud), 0);
        }
    }
}

#[test]
fn lowering_the_time_threshold_never_removes_polytopes() {
    let map = corridor_map(5, 120);
    let settings = CorridorSettings::with_workspace(map.workspace);
    let counts: Vec<usize> = [f64::INFINITY, 40.0, 20.0, 10.0, 5.0]
        .iter()
        .map(|&t| {
            corridor_stats(&generate_corridor(&map.cloud, &map.path, &settings, t).unwrap())
                .polytope_count
        })
        .collect();
    assert!(counts.windows(2).all(|w| w[0] <= w[1]), "{counts:?}");
}
