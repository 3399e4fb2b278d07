#![allow(dead_code)]

use hilbert_core::{Point, Polytope};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Random convex combination of the vertices; weights span two orders of
/// magnitude so some points sit close to the boundary.
pub fn random_interior(rng: &mut ChaCha8Rng, domain: &Polytope) -> Point {
    let w: Vec<f64> = domain
        .vertices()
        .iter()
        .map(|_| (-4.0 * rng.gen::<f64>()).exp())
        .collect();
    let total: f64 = w.iter().sum();
    let n = domain.dim();
    let mut c = vec![0.0; n];
    for (v, wi) in domain.vertices().iter().zip(&w) {
        for (ci, vi) in c.iter_mut().zip(v.to_f64()) {
            *ci += wi / total * vi;
        }
    }
    Point::new(c)
}

pub fn random_direction(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let r: f64 = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if r > 1e-2 && r <= 1.0 {
            return v;
        }
    }
}

/// Convex hexagon with jittered angles and radii.
pub fn random_hexagon(rng: &mut ChaCha8Rng) -> Polytope {
    loop {
        let v: Vec<Point> = (0..6)
            .map(|i| {
                let a = std::f64::consts::TAU * (i as f64 + rng.gen_range(-0.3..0.3)) / 6.0;
                let r = rng.gen_range(0.7..1.3);
                Point::from([r * a.cos(), r * a.sin()])
            })
            .collect();
        if let Ok(p) = Polytope::from_vertices(v) {
            if p.vertices().len() >= 4 {
                return p;
            }
        }
    }
}

pub fn planar_and_solid(rng: &mut ChaCha8Rng) -> Vec<(&'static str, Polytope)> {
    vec![
        ("triangle", Polytope::unit_triangle()),
        ("square", Polytope::unit_square()),
        ("pentagon", Polytope::regular_polygon(5, 1.0).unwrap()),
        ("3-simplex", Polytope::standard_simplex(3)),
        ("random hexagon", random_hexagon(rng)),
    ]
}
