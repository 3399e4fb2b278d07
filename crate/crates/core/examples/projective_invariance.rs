//! Hilbert distances do not change under projective maps of the domain.

use hilbert_core::{hilbert_distance, Point, Polytope, Result};

fn main() -> Result<()> {
    let square = Polytope::unit_square();
    let x = Point::from([0.2, 0.3]);
    let y = Point::from([0.7, 0.8]);
    let m = vec![
        vec![1.0, 0.2, 0.1],
        vec![-0.1, 0.9, 0.3],
        vec![0.3, 0.2, 1.0],
    ];
    let (image, pts) = square.apply_projective(&m, &[x.clone(), y.clone()])?;
    println!("image vertices:");
    for v in image.vertices() {
        println!("  {:?}", v.to_f64());
    }
    let before = hilbert_distance(&square, &x, &y)?.value();
    let after = hilbert_distance(&image, &pts[0], &pts[1])?.value();
    println!("h before {before:.15}\nh after  {after:.15}");
    Ok(())
}
