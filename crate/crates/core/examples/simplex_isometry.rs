//! The open simplex is isometric to a normed space: barycentric weights go to
//! their logarithms, measured in the variation norm `max - min`.

use hilbert_core::simplex::{
    isometry_defect, log_map, to_standard_simplex, unit_ball_vertices, variation_norm, SimplexPoint,
};
use hilbert_core::{hilbert_distance, Point, Polytope, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Result<SimplexPoint> {
    let w: Vec<f64> = (0..=n).map(|_| rng.gen_range(0.01..1.0)).collect();
    SimplexPoint::normalized(&w)
}

fn main() -> Result<()> {
    let x = SimplexPoint::barycenter(2);
    let y = SimplexPoint::new(vec![0.5, 0.25, 0.25])?;
    println!("log_map(y) = {:?}", log_map(&y).comps());
    println!(
        "||log x - log y||_var = {:.12}",
        variation_norm(&log_map(&x).sub(&log_map(&y)))
    );
    let simplex = Polytope::standard_simplex(2);
    let h = hilbert_distance(&simplex, &x.to_chart(), &y.to_chart())?;
    println!("h(x, y)               = {:.12}", h.value());

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=3 {
        let mut worst: f64 = 0.0;
        for _ in 0..1000 {
            let (a, b) = (random_point(&mut rng, n)?, random_point(&mut rng, n)?);
            worst = worst.max(isometry_defect(&a, &b)?);
        }
        println!(
            "n = {n}: worst defect over 1000 pairs {worst:.2e}; unit ball has {} vertices",
            unit_ball_vertices(n).len()
        );
    }

    // Any triangle is projectively a simplex: read weights off its vertices.
    let t = Polytope::unit_triangle();
    let w = to_standard_simplex(&t, &Point::from([0.5, 0.25]))?;
    println!(
        "barycentric weights of (0.5, 0.25) in the unit triangle: {:?}",
        w.weights()
    );
    Ok(())
}
