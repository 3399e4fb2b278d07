//! Where the straight segment is the only geodesic.

use hilbert_core::geodesics::is_unique_geodesic;
use hilbert_core::{Point, Polytope, Result};

fn main() -> Result<()> {
    let square = Polytope::unit_square();
    let cases = [
        ("square, horizontal", [0.25, 0.5], [0.75, 0.5]),
        ("square, through a corner", [0.25, 0.25], [0.75, 0.75]),
        ("square, generic", [0.2, 0.3], [0.7, 0.6]),
    ];
    for (name, x, y) in cases {
        let u = is_unique_geodesic(&square, &Point::from(x), &Point::from(y))?;
        println!("{name:28} unique = {u}");
    }
    let triangle = Polytope::unit_triangle();
    let u = is_unique_geodesic(
        &triangle,
        &Point::from([0.2, 0.2]),
        &Point::from([0.4, 0.3]),
    )?;
    println!("{:28} unique = {u}", "triangle, generic");

    let cube = Polytope::unit_cube();
    let pairs = [
        ("cube, along an axis", [0.2, 0.5, 0.5], [0.8, 0.5, 0.5]),
        ("cube, face diagonal", [0.3, 0.3, 0.5], [0.6, 0.6, 0.5]),
        ("cube, generic", [0.2, 0.3, 0.4], [0.7, 0.5, 0.6]),
        ("cube, main diagonal", [0.2, 0.2, 0.2], [0.6, 0.6, 0.6]),
    ];
    for (name, x, y) in pairs {
        let u = is_unique_geodesic(&cube, &Point::from(x), &Point::from(y))?;
        println!("{name:28} unique = {u}");
    }
    Ok(())
}
