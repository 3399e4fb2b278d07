//! Birkhoff contraction of positive matrices and Sinkhorn scaling measured in
//! the cone metric.

use hilbert_core::cone::{
    birkhoff_diameter, cone_distance, contraction_ratio, sinkhorn_monitor, PositiveMatrix,
    PositiveVector,
};
use hilbert_core::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let a = PositiveMatrix::new(vec![vec![2.0, 1.0], vec![1.0, 2.0]])?;
    println!(
        "diameter {:.12} (ln 4 = {:.12}), contraction {:.12}",
        birkhoff_diameter(&a),
        4f64.ln(),
        contraction_ratio(&a)
    );

    let u = PositiveVector::new(vec![1.0, 5.0])?;
    let v = PositiveVector::new(vec![3.0, 0.5])?;
    let before = cone_distance(&u, &v)?;
    let after = cone_distance(&a.apply(&u)?, &a.apply(&v)?)?;
    println!(
        "d(u, v) = {before:.6}, d(Au, Av) = {after:.6}, ratio {:.6}",
        after / before
    );

    let r = sinkhorn_monitor(
        &a,
        &PositiveVector::new(vec![0.3, 0.7])?,
        &PositiveVector::new(vec![0.6, 0.4])?,
        500,
        1e-14,
    )?;
    println!("sinkhorn 2x2: {} {:?}", r.verdict, r.metadata.outputs);

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let m: Vec<Vec<f64>> = (0..5)
        .map(|_| (0..5).map(|_| rng.gen_range(0.1..1.0)).collect())
        .collect();
    let m = PositiveMatrix::new(m)?;
    let ones = PositiveVector::new(vec![1.0; 5])?;
    let r = sinkhorn_monitor(&m, &ones, &ones, 500, 1e-12)?;
    println!("sinkhorn 5x5: {} {:?}", r.verdict, r.metadata.outputs);
    Ok(())
}
