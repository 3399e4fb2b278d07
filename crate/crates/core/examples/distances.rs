//! Hilbert and Funk distances, Gromov products, and loading a domain from JSON.

use hilbert_core::{funk_distance, gromov_product, hilbert_distance, Point, Polytope, Result};

fn main() -> Result<()> {
    let square = Polytope::from_json(include_str!("../assets/square.json"))?;
    let x = Point::from([0.25, 0.5]);
    let y = Point::from([0.75, 0.5]);
    let h = hilbert_distance(&square, &x, &y)?;
    println!(
        "square: h(x, y) = {:.12}  (ln 9 = {:.12})",
        h.value(),
        9f64.ln()
    );

    let chord = square.chord(&x, &y)?;
    println!(
        "chord endpoints {:?} and {:?}, parameters {} .. {}",
        chord.x_bar.to_f64(),
        chord.y_bar.to_f64(),
        chord.t_minus_f64(),
        chord.t_plus_f64()
    );

    let f_xy = funk_distance(&square, &x, &y)?;
    let f_yx = funk_distance(&square, &y, &x)?;
    println!(
        "funk(x, y) = {f_xy:.12}, funk(y, x) = {f_yx:.12}, sum = {:.12}",
        f_xy + f_yx
    );

    let center = Point::from([0.5, 0.5]);
    let corner = Point::from([0.9, 0.9]);
    let g = gromov_product(&square, &x, &corner, &center)?;
    println!("(x | corner)_center = {:.12}", g.value);

    let triangle = Polytope::unit_triangle();
    for (a, b) in [
        ([0.2, 0.2], [0.6, 0.2]),
        ([0.1, 0.1], [0.1, 0.8]),
        ([0.3, 0.3], [0.34, 0.33]),
    ] {
        let d = hilbert_distance(&triangle, &Point::from(a), &Point::from(b))?;
        println!("triangle: h({a:?}, {b:?}) = {:.12}", d.value());
    }

    match hilbert_distance(&square, &Point::from([1.0, 0.5]), &center) {
        Err(e) => println!("boundary input rejected: {e}"),
        Ok(d) => println!("unexpected distance {}", d.value()),
    }
    Ok(())
}
